//! Number rendering shared by every output table.

/// Significant digits kept in emitted values.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds to [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round_significant(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, v).parse().unwrap_or(v)
}

/// Shortest round-trip text of the rounded value: positional notation for
/// moderate magnitudes, exponent notation otherwise. Negative zero prints
/// as `0`.
pub fn format_number(v: f64) -> String {
    let r = round_significant(v);
    if r == 0.0 {
        return "0".to_string();
    }
    let mag = r.abs();
    if !r.is_finite() || (1e-4..1e15).contains(&mag) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_shortest_form() {
        assert_eq!(format_number(1.0), "1");
        assert_eq!(format_number(-0.0), "0");
        assert_eq!(format_number(0.25), "0.25");
        assert_eq!(format_number(2.375_474_497_334_5), "2.37547449733");
        assert_eq!(format_number(1e-5), "1e-5");
        assert_eq!(format_number(3.845_414_390_781e-4), "0.000384541439078");
        assert_eq!(format_number(1.234_567_890_123_456e-20), "1.23456789012e-20");
        assert_eq!(format_number(f64::NAN), "NaN");
    }

    #[test]
    fn round_trip_is_stable() {
        for v in [1.0 / 3.0, std::f64::consts::PI * 1e7, -2.5e-9, 0.1 + 0.2] {
            let s = format_number(v);
            assert_eq!(format_number(s.parse().unwrap()), s);
        }
    }
}
