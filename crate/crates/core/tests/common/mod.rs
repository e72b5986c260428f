//! Extended-precision reference evaluations, independent of the library's
//! floating-point code paths. Values are carried as fixed-point integers
//! scaled by 2^PREC.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

const PREC: u32 = 320;

fn one() -> BigInt {
    BigInt::from(1) << PREC
}

fn to_f64(x: &BigInt) -> f64 {
    // Keep the top 64 bits so the conversion stays in range.
    let bits = x.bits();
    if bits <= 1000 {
        x.to_f64().unwrap() / 2f64.powi(PREC as i32)
    } else {
        let shift = bits - 64;
        (x >> shift).to_f64().unwrap() * 2f64.powi(shift as i32 - PREC as i32)
    }
}

/// Exact `(mantissa, exponent)` with `v = m · 2^e`.
fn decompose(v: f64) -> (BigInt, i32) {
    let r = BigRational::from_float(v).expect("finite input");
    let (num, den) = (r.numer().clone(), r.denom().clone());
    // den is a power of two
    let e = -((den.bits() - 1) as i32);
    (num, e)
}

fn shift(x: BigInt, by: i32) -> BigInt {
    if by >= 0 {
        x << by as u32
    } else {
        x >> (-by) as u32
    }
}

/// `J₁(y)` from its Maclaurin series in fixed point.
pub fn j1_series(y: f64) -> f64 {
    let (m, e) = decompose(y);
    // term_0 = y/2
    let mut term = shift(m.clone() << PREC, e - 1);
    let m2 = &m * &m;
    let mut sum = term.clone();
    let mut k: u64 = 0;
    loop {
        // term_{k+1} = −term_k · (y/2)² / ((k+1)(k+2))
        term = shift(-(term * &m2), 2 * e - 2) / BigInt::from((k + 1) * (k + 2));
        sum += &term;
        k += 1;
        if term.is_zero() || (k > 10 && term.abs().bits() < 8) {
            break;
        }
    }
    to_f64(&sum)
}

/// `atanh(u/v)` in fixed point for `|u/v| < 1`.
fn atanh_fixed(u: &BigInt, v: &BigInt) -> BigInt {
    let mut pow = (u << PREC) / v;
    let u2 = u * u;
    let v2 = v * v;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !pow.is_zero() {
        sum += &pow / BigInt::from(2 * k + 1);
        pow = &pow * &u2 / &v2;
        k += 1;
    }
    sum
}

fn ln2_fixed() -> BigInt {
    atanh_fixed(&BigInt::from(1), &BigInt::from(3)) * 2
}

/// `ln(p/q)` for an exact positive rational.
pub fn ln_rational(r: &BigRational) -> f64 {
    assert!(r.is_positive());
    let (mut p, mut q) = (r.numer().clone(), r.denom().clone());
    // Bring p/q into [2/3, 4/3) by powers of two.
    let mut e: i64 = 0;
    while &p * 3 >= &q * 4 {
        q <<= 1;
        e += 1;
    }
    while &p * 3 < &q * 2 {
        p <<= 1;
        e -= 1;
    }
    let mant = atanh_fixed(&(&p - &q), &(&p + &q)) * 2;
    to_f64(&(mant + ln2_fixed() * BigInt::from(e)))
}

pub fn rat(v: f64) -> BigRational {
    BigRational::from_float(v).unwrap()
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Leading terms of the Hankel expansion of `J₁`, accurate to a few `1e-9`
/// for `y ≥ 50`.
pub fn j1_asymptotic_oracle(y: f64) -> f64 {
    let p = 1.0 + 15.0 / (128.0 * y * y);
    let q = 3.0 / (8.0 * y) - 105.0 / (1024.0 * y * y * y);
    let chi = y - 0.75 * std::f64::consts::PI;
    (2.0 / (std::f64::consts::PI * y)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// Taylor coefficients of `f` at 0 via central differences of high order,
/// evaluated in ordinary floating point. Independent from the rational
/// expansion used by the library; only meaningful for low orders.
pub fn taylor_fd<F: Fn(f64) -> f64>(f: F, order: usize, step: f64) -> f64 {
    // k-th derivative by the k-th central difference of width `step`, with
    // Richardson extrapolation over two step sizes.
    let diff = |h: f64| -> f64 {
        let mut acc = 0.0;
        for j in 0..=order {
            let binom = binomial(order, j) as f64;
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * binom * f((order as f64 / 2.0 - j as f64) * h);
        }
        acc / h.powi(order as i32)
    };
    let d1 = diff(step);
    let d2 = diff(step / 2.0);
    let derivative = (4.0 * d2 - d1) / 3.0;
    derivative / factorial(order)
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}
