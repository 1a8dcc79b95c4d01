//! Integer-order Bessel functions of the first kind.
//!
//! Three regimes: power series for small arguments, Miller backward
//! recurrence in the middle, and the Hankel asymptotic expansion of
//! J0/J1 followed by forward recurrence once the argument dominates
//! every requested order.

use crate::error::{invalid, Result};
use std::f64::consts::PI;

/// Largest supported order.
pub const MAX_ORDER: usize = 128;

const SERIES_X: f64 = 1.0;
const ASYMPTOTIC_X: f64 = 25.0;

/// J_n(x) for any integer `n` with |n| ≤ [`MAX_ORDER`] and finite `x`.
pub fn bessel_j(n: i32, x: f64) -> Result<f64> {
    let m = n.unsigned_abs() as usize;
    if m > MAX_ORDER {
        return invalid(format!("Bessel order {n} above {MAX_ORDER}"));
    }
    if !x.is_finite() {
        return invalid("Bessel argument must be finite");
    }
    let mut buf = vec![0.0; m + 1];
    bessel_j_orders(x.abs(), &mut buf);
    let mut v = buf[m];
    // J_{-m} = (-1)^m J_m and J_m(-x) = (-1)^m J_m(x)
    if n < 0 && m % 2 == 1 {
        v = -v;
    }
    if x < 0.0 && m % 2 == 1 {
        v = -v;
    }
    Ok(v)
}

/// Fills `out[k] = J_k(x)` for k = 0..out.len(), x ≥ 0.
pub fn bessel_j_orders(x: f64, out: &mut [f64]) {
    debug_assert!(x >= 0.0);
    let nmax = out.len().saturating_sub(1);
    if out.is_empty() {
        return;
    }
    if x == 0.0 {
        out.iter_mut().for_each(|v| *v = 0.0);
        out[0] = 1.0;
    } else if x < SERIES_X {
        for (k, o) in out.iter_mut().enumerate() {
            *o = series(k, x);
        }
    } else if x >= ASYMPTOTIC_X && (nmax as f64) < x {
        forward(x, out);
    } else {
        miller(x, out);
    }
}

fn series(n: usize, x: f64) -> f64 {
    let h = 0.5 * x;
    let mut term = 1.0;
    for k in 1..=n {
        term *= h / k as f64;
        if term == 0.0 {
            return 0.0;
        }
    }
    let q = -h * h;
    let mut sum = term;
    for k in 1..60 {
        term *= q / (k as f64 * (k + n) as f64);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// Hankel expansion of J_nu(x) for nu in {0, 1}.
pub(crate) fn hankel_asymptotic(nu: u32, x: f64) -> f64 {
    let mu = 4.0 * (nu * nu) as f64;
    let (mut p, mut q) = (0.0, 0.0);
    let mut term = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..200 {
        if k > 0 {
            let odd = (2 * k - 1) as f64;
            term *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        }
        if term.abs() > last {
            break;
        }
        last = term.abs();
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        if term.abs() < 1e-18 {
            break;
        }
    }
    let chi = x - (0.5 * nu as f64 + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

fn forward(x: f64, out: &mut [f64]) {
    out[0] = hankel_asymptotic(0, x);
    if out.len() > 1 {
        out[1] = hankel_asymptotic(1, x);
    }
    for k in 1..out.len().saturating_sub(1) {
        out[k + 1] = 2.0 * k as f64 / x * out[k] - out[k - 1];
    }
}

fn miller(x: f64, out: &mut [f64]) {
    let nmax = out.len() - 1;
    let top = nmax.max(x as usize) + 20 + (40.0 * (nmax.max(x as usize) as f64)).sqrt() as usize;
    let start = top + top % 2;
    let (mut jp, mut j) = (0.0f64, 1e-300f64);
    let mut norm = 0.0;
    out.iter_mut().for_each(|v| *v = 0.0);
    for k in (1..=start).rev() {
        let jm = 2.0 * k as f64 / x * j - jp;
        jp = j;
        j = jm;
        if j.abs() > 1e250 {
            j *= 1e-250;
            jp *= 1e-250;
            norm *= 1e-250;
            out.iter_mut().for_each(|v| *v *= 1e-250);
        }
        let order = k - 1;
        if order % 2 == 0 && order > 0 {
            norm += 2.0 * j;
        }
        if order <= nmax {
            out[order] = j;
        }
    }
    norm += j;
    out.iter_mut().for_each(|v| *v /= norm);
}

#[cfg(test)]
mod tests {
    use super::*;

    // Integral representation J_n(x) = (1/π) ∫_0^π cos(nτ - x sin τ) dτ,
    // evaluated with a fine composite Gauss rule.
    fn oracle(n: i32, x: f64) -> f64 {
        use crate::special_fn::quadrature::{panel_breaks, Integrator};
        let br = panel_breaks(0.0, PI, 8 + (x.abs() as usize) / 2 + n.unsigned_abs() as usize, &[]);
        Integrator::new(24, 1e-13)
            .integrate(|t| (n as f64 * t - x * t.sin()).cos(), &br)
            .unwrap()
            / PI
    }

    #[test]
    fn known_values() {
        assert!((bessel_j(0, 1.0).unwrap() - 0.765_197_686_557_966_6).abs() < 1e-15);
        assert!((bessel_j(1, 2.5).unwrap() - 0.497_094_102_464_274_3).abs() < 1e-15);
        assert!((bessel_j(5, 10.0).unwrap() + 0.234_061_528_186_793_5).abs() < 1e-14);
        assert_eq!(bessel_j(3, 0.0).unwrap(), 0.0);
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn matches_integral_representation() {
        for &x in &[0.3, 0.99, 1.01, 3.7, 12.0, 24.9, 25.1, 60.0, 140.0] {
            for n in [-7, -1, 0, 1, 2, 9, 30] {
                let a = bessel_j(n, x).unwrap();
                let b = oracle(n, x);
                assert!((a - b).abs() < 2e-13, "n={n} x={x}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn regimes_agree_on_overlap() {
        for i in 0..40 {
            let x = 25.0 + i as f64 * 0.5;
            let mut a = vec![0.0; 10];
            let mut b = vec![0.0; 10];
            forward(x, &mut a);
            miller(x, &mut b);
            for k in 0..10 {
                assert!((a[k] - b[k]).abs() < 1e-13, "x={x} k={k}");
            }
        }
        for i in 1..10 {
            let x = 0.5 + 0.1 * i as f64;
            let mut b = vec![0.0; 6];
            miller(x, &mut b);
            for (k, v) in b.iter().enumerate() {
                assert!((series(k, x) - v).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn reflection_and_order_cap() {
        assert!((bessel_j(-3, 4.0).unwrap() + bessel_j(3, 4.0).unwrap()).abs() < 1e-16);
        assert!((bessel_j(3, -4.0).unwrap() + bessel_j(3, 4.0).unwrap()).abs() < 1e-16);
        assert!(bessel_j(129, 1.0).is_err());
        assert!(bessel_j(128, 1.0).is_ok());
    }
}
