//! Spherical Bessel functions j_l.

use crate::error::{invalid, Result};

pub const MAX_DEGREE: usize = 128;

/// j_l(x) for 0 ≤ l ≤ [`MAX_DEGREE`], x ≥ 0.
pub fn sph_bessel_j(l: usize, x: f64) -> Result<f64> {
    if l > MAX_DEGREE {
        return invalid(format!("spherical Bessel degree {l} above {MAX_DEGREE}"));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return invalid("spherical Bessel argument must be finite and non-negative");
    }
    let mut out = vec![0.0; l + 1];
    sph_bessel_orders(x, &mut out);
    Ok(out[l])
}

/// Fills `out[l] = j_l(x)` for l = 0..out.len().
pub fn sph_bessel_orders(x: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    let lmax = out.len() - 1;
    if x < 0.5 {
        for (l, o) in out.iter_mut().enumerate() {
            *o = series(l, x);
        }
        return;
    }
    let j0 = x.sin() / x;
    let j1 = x.sin() / (x * x) - x.cos() / x;
    if (lmax as f64) <= x {
        out[0] = j0;
        if lmax >= 1 {
            out[1] = j1;
        }
        for l in 1..lmax {
            out[l + 1] = (2 * l + 1) as f64 / x * out[l] - out[l - 1];
        }
        return;
    }
    let top = lmax.max(x as usize);
    let start = top + 20 + (40.0 * top as f64).sqrt() as usize;
    let (mut jp, mut j) = (0.0f64, 1e-300f64);
    let mut keep = vec![0.0; lmax.max(1) + 1];
    for l in (1..=start).rev() {
        let jm = (2 * l + 1) as f64 / x * j - jp;
        jp = j;
        j = jm;
        if j.abs() > 1e250 {
            j *= 1e-250;
            jp *= 1e-250;
            keep.iter_mut().for_each(|v| *v *= 1e-250);
        }
        if l - 1 < keep.len() {
            keep[l - 1] = j;
        }
    }
    // normalise against whichever of j0, j1 is further from a zero
    let scale = if j0.abs() >= j1.abs() { j0 / keep[0] } else { j1 / keep[1] };
    for (o, k) in out.iter_mut().zip(&keep) {
        *o = k * scale;
    }
}

fn series(l: usize, x: f64) -> f64 {
    let mut pre = 1.0;
    for k in 1..=l {
        pre *= x / (2 * k + 1) as f64;
    }
    let q = -0.5 * x * x;
    let (mut term, mut sum) = (1.0, 1.0);
    for k in 1..40 {
        term *= q / (k as f64 * (2 * l + 2 * k + 1) as f64);
        sum += term;
        if term.abs() < 1e-17 {
            break;
        }
    }
    pre * sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fn::quadrature::{panel_breaks, Integrator};

    fn legendre(l: usize, t: f64) -> f64 {
        let (mut p0, mut p1) = (1.0, t);
        if l == 0 {
            return 1.0;
        }
        for k in 1..l {
            let p2 = ((2 * k + 1) as f64 * t * p1 - k as f64 * p0) / (k + 1) as f64;
            p0 = p1;
            p1 = p2;
        }
        p1
    }

    // j_l(x) = (1/2) i^{-l} ∫_{-1}^{1} e^{ixt} P_l(t) dt
    fn oracle(l: usize, x: f64) -> f64 {
        let br = panel_breaks(-1.0, 1.0, 8 + x as usize, &[]);
        let ig = Integrator::new(24, 1e-15);
        let v = if l % 2 == 0 {
            ig.integrate(|t| (x * t).cos() * legendre(l, t), &br).unwrap()
        } else {
            ig.integrate(|t| (x * t).sin() * legendre(l, t), &br).unwrap()
        };
        let sign = if (l / 2) % 2 == 0 { 1.0 } else { -1.0 };
        0.5 * sign * v
    }

    #[test]
    fn closed_forms() {
        for &x in &[0.1f64, 0.7, 2.0, 9.3, 40.0] {
            let j2 = (3.0 / (x * x) - 1.0) * x.sin() / x - 3.0 * x.cos() / (x * x);
            assert!((sph_bessel_j(2, x).unwrap() - j2).abs() < 1e-13, "x={x}");
        }
        assert_eq!(sph_bessel_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(sph_bessel_j(4, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn matches_integral_representation() {
        for &x in &[0.2, 0.49, 0.51, 3.0, 3.0 * std::f64::consts::PI, 15.0, 33.0] {
            for l in [0, 1, 2, 5, 9, 20] {
                let (a, b) = (sph_bessel_j(l, x).unwrap(), oracle(l, x));
                assert!((a - b).abs() < 1e-14, "l={l} x={x}: {a} {b}");
            }
        }
    }

    #[test]
    fn regimes_agree() {
        for &x in &[0.6, 3.0, 7.5, 15.0, 33.0] {
            let mut up = vec![0.0; 6];
            let mut down = vec![0.0; 40];
            sph_bessel_orders(x, &mut up);
            sph_bessel_orders(x, &mut down);
            for l in 0..6 {
                assert!((up[l] - down[l]).abs() < 1e-13, "x={x} l={l}");
            }
        }
    }

    #[test]
    fn degree_cap() {
        assert!(sph_bessel_j(129, 1.0).is_err());
        assert!(sph_bessel_j(2, -1.0).is_err());
    }
}
