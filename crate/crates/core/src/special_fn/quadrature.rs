//! Gauss–Legendre rules and an adaptive panel integrator.

use crate::error::{Error, Result};
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{OnceLock, RwLock};

/// Nodes and weights of the `n`-point Gauss–Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0, "rule needs at least one node");
    // P_n(z) and P_n'(z) by the three-term recurrence
    let legendre = |z: f64| {
        let (mut p0, mut p1) = (1.0, z);
        for k in 2..=n {
            let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
            p0 = p1;
            p1 = p2;
        }
        (p1, n as f64 * (z * p1 - p0) / (z * z - 1.0))
    };
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(z);
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        if 2 * i + 1 == n {
            z = 0.0;
        }
        let (_, dp) = legendre(z);
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

pub(crate) fn cached_rule(n: usize) -> std::sync::Arc<(Vec<f64>, Vec<f64>)> {
    static CACHE: OnceLock<RwLock<HashMap<usize, std::sync::Arc<(Vec<f64>, Vec<f64>)>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(r) = cache.read().unwrap().get(&n) {
        return r.clone();
    }
    let r = std::sync::Arc::new(gauss_legendre(n));
    cache.write().unwrap().insert(n, r.clone());
    r
}

/// Adaptive composite Gauss–Legendre integration.
#[derive(Clone, Debug)]
pub struct Integrator {
    /// Points per panel.
    pub order: usize,
    /// Absolute tolerance per integral.
    pub tol: f64,
    pub max_depth: u32,
}

impl Default for Integrator {
    fn default() -> Self {
        Integrator { order: 16, tol: 1e-13, max_depth: 40 }
    }
}

impl Integrator {
    pub fn new(order: usize, tol: f64) -> Self {
        Integrator { order, tol, ..Default::default() }
    }

    // Returns the largest ∫|f| over components, used as a roundoff floor.
    fn panel(&self, f: &dyn Fn(f64, &mut [f64]), a: f64, b: f64, out: &mut [f64], buf: &mut [f64]) -> f64 {
        let rule = cached_rule(self.order);
        let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
        out.iter_mut().for_each(|o| *o = 0.0);
        let mut mag = 0.0f64;
        for (x, w) in rule.0.iter().zip(&rule.1) {
            f(c + h * x, buf);
            for (o, v) in out.iter_mut().zip(buf.iter()) {
                *o += w * h * v;
                mag = mag.max(v.abs() * w * h.abs());
            }
        }
        mag * self.order as f64
    }

    /// Integrates a vector-valued integrand of width `width` over each of
    /// the consecutive intervals given by `breaks`. Breakpoints should sit
    /// on any kinks of the integrand.
    pub fn integrate_vec(
        &self,
        f: &dyn Fn(f64, &mut [f64]),
        breaks: &[f64],
        width: usize,
    ) -> Result<Vec<f64>> {
        let mut total = vec![0.0; width];
        let mut buf = vec![0.0; width];
        let mut whole = vec![0.0; width];
        let span = (breaks[breaks.len() - 1] - breaks[0]).abs().max(f64::MIN_POSITIVE);
        for s in breaks.windows(2) {
            self.panel(f, s[0], s[1], &mut whole, &mut buf);
            let tol = self.tol * (s[1] - s[0]).abs() / span;
            self.refine(f, s[0], s[1], &whole, tol, 0, &mut total, &mut buf)?;
        }
        Ok(total)
    }

    #[allow(clippy::too_many_arguments)]
    fn refine(
        &self,
        f: &dyn Fn(f64, &mut [f64]),
        a: f64,
        b: f64,
        whole: &[f64],
        tol: f64,
        depth: u32,
        acc: &mut [f64],
        buf: &mut [f64],
    ) -> Result<f64> {
        let m = 0.5 * (a + b);
        let mut left = vec![0.0; whole.len()];
        let mut right = vec![0.0; whole.len()];
        let mag = self.panel(f, a, m, &mut left, buf) + self.panel(f, m, b, &mut right, buf);
        let err = whole
            .iter()
            .zip(left.iter().zip(&right))
            .map(|(w, (l, r))| (w - l - r).abs())
            .fold(0.0, f64::max);
        if err <= tol.max(64.0 * f64::EPSILON * mag).max(1e-300) {
            for ((o, l), r) in acc.iter_mut().zip(&left).zip(&right) {
                *o += l + r;
            }
            return Ok(err);
        }
        if depth >= self.max_depth || (b - a) < 1e-14 * (a.abs() + b.abs()) {
            return Err(Error::Numerical {
                what: format!("quadrature on [{a}, {b}] did not converge"),
                achieved: err,
                wanted: tol,
            });
        }
        let e1 = self.refine(f, a, m, &left, 0.5 * tol, depth + 1, acc, buf)?;
        let e2 = self.refine(f, m, b, &right, 0.5 * tol, depth + 1, acc, buf)?;
        Ok(e1 + e2)
    }

    /// Scalar convenience wrapper.
    pub fn integrate(&self, f: impl Fn(f64) -> f64, breaks: &[f64]) -> Result<f64> {
        let g = |x: f64, out: &mut [f64]| out[0] = f(x);
        Ok(self.integrate_vec(&g, breaks, 1)?[0])
    }
}

/// Splits `[a, b]` into `n` equal pieces, keeping `extra` interior points.
pub fn panel_breaks(a: f64, b: f64, n: usize, extra: &[f64]) -> Vec<f64> {
    let mut v: Vec<f64> = (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect();
    v.extend(extra.iter().copied().filter(|&x| x > a && x < b));
    v.sort_by(|x, y| x.partial_cmp(y).unwrap());
    v.dedup_by(|x, y| (*x - *y).abs() < 1e-15 * (1.0 + y.abs()));
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        for n in [1, 2, 5, 16, 33] {
            let (x, w) = gauss_legendre(n);
            for deg in 0..(2 * n) {
                let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
                let exact = if deg % 2 == 0 { 2.0 / (deg as f64 + 1.0) } else { 0.0 };
                assert!((q - exact).abs() < 2e-15, "n={n} deg={deg} {q} {exact}");
            }
        }
    }

    #[test]
    fn kinked_integrand_with_breakpoint() {
        let ig = Integrator::default();
        let v = ig.integrate(|x| (x - 0.3).abs(), &[0.0, 0.3, 1.0]).unwrap();
        assert!((v - (0.045 + 0.245)).abs() < 1e-14);
    }

    #[test]
    fn oscillatory() {
        let ig = Integrator::default();
        let br = panel_breaks(0.0, PI, 40, &[]);
        let v = ig.integrate(|x| (100.0 * x).sin() * x, &br).unwrap();
        // ∫ x sin(100x) = -π cos(100π)/100
        assert!((v + PI / 100.0).abs() < 1e-13);
    }
}
