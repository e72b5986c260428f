//! Derivative-free minimisation used by the discord oracle: golden-section
//! line searches combined into a bounded coordinate descent.

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for the minimum of `f` on `[lo, hi]`.
///
/// Returns `(x_min, f_min)`. Stops once the bracket is narrower than `xtol`.
pub fn golden_section<F>(mut f: F, mut lo: f64, mut hi: f64, xtol: f64) -> (f64, f64)
where
    F: FnMut(f64) -> f64,
{
    if lo > hi {
        std::mem::swap(&mut lo, &mut hi);
    }
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > xtol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    // interior probes never touch the end points
    [(x1, f1), (x2, f2), (lo, f(lo)), (hi, f(hi))]
        .into_iter()
        .fold(
            (f64::NAN, f64::INFINITY),
            |best, cand| if cand.1 < best.1 { cand } else { best },
        )
}

/// Bounds for one coordinate of [`coordinate_descent`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Axis {
    /// Hard box constraint.
    Bounded { lo: f64, hi: f64 },
    /// Periodic coordinate; values are wrapped into `[0, period)`.
    Periodic { period: f64 },
}

impl Axis {
    fn clamp(&self, x: f64) -> f64 {
        match *self {
            Axis::Bounded { lo, hi } => x.clamp(lo, hi),
            Axis::Periodic { period } => x.rem_euclid(period),
        }
    }

    fn bracket(&self, x: f64, half_width: f64) -> (f64, f64) {
        match *self {
            Axis::Bounded { lo, hi } => ((x - half_width).max(lo), (x + half_width).min(hi)),
            Axis::Periodic { .. } => (x - half_width, x + half_width),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub sweeps: usize,
}

/// Settings for [`coordinate_descent`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DescentOptions {
    /// Stop when a full sweep lowers the objective by less than this.
    pub ftol: f64,
    /// Bracket resolution of each line search.
    pub xtol: f64,
    pub max_sweeps: usize,
}

impl Default for DescentOptions {
    fn default() -> Self {
        Self {
            ftol: 1e-10,
            xtol: 1e-9,
            max_sweeps: 200,
        }
    }
}

/// Cyclic coordinate descent from `start`, one golden-section search per
/// coordinate per sweep.
///
/// `half_widths` sets the initial bracket half-width on each axis (typically
/// one grid step); brackets shrink by half whenever a sweep makes no
/// progress along that axis.
pub fn coordinate_descent<F>(f: F, start: &[f64], axes: &[Axis], half_widths: &[f64], opts: DescentOptions) -> Minimum
where
    F: Fn(&[f64]) -> f64,
{
    assert_eq!(start.len(), axes.len());
    assert_eq!(start.len(), half_widths.len());
    let mut x: Vec<f64> = start.iter().zip(axes).map(|(&v, ax)| ax.clamp(v)).collect();
    let mut widths = half_widths.to_vec();
    let mut value = f(&x);
    let mut sweeps = 0;
    while sweeps < opts.max_sweeps {
        sweeps += 1;
        let before = value;
        for k in 0..x.len() {
            let (lo, hi) = axes[k].bracket(x[k], widths[k]);
            let mut probe = x.clone();
            let (xk, fk) = golden_section(
                |t| {
                    probe[k] = t;
                    f(&probe)
                },
                lo,
                hi,
                opts.xtol,
            );
            if fk < value {
                let moved = (xk - x[k]).abs();
                x[k] = axes[k].clamp(xk);
                value = fk;
                // Minimum landed on the bracket edge: widen, else tighten.
                if moved > 0.99 * widths[k] {
                    widths[k] *= 2.0;
                } else {
                    widths[k] = (2.0 * moved).max(opts.xtol * 10.0);
                }
            } else {
                widths[k] = (widths[k] * 0.5).max(opts.xtol * 10.0);
            }
        }
        if before - value < opts.ftol {
            break;
        }
    }
    Minimum { x, value, sweeps }
}
