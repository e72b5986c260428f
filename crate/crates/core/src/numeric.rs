//! Small floating-point helpers shared across modules.

/// `a·b − c·d` with a single rounding error (Kahan's fma trick).
#[inline]
pub(crate) fn diff_of_products(a: f64, b: f64, c: f64, d: f64) -> f64 {
    let cd = c * d;
    let err = (-c).mul_add(d, cd);
    a.mul_add(b, -cd) + err
}

/// `-ln(1 - t)`, accurate for small `t`.
#[inline]
pub(crate) fn neg_ln_1m(t: f64) -> f64 {
    -(-t).ln_1p()
}
