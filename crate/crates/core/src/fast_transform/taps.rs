//! Closed-form filter taps.
//!
//! Every tap is an inner product of two frame elements whose windows share
//! the tangential direction e_θ, so it reduces to a scalar integral
//!
//!   τ(m) = r/(2π) Σ_n c_n iⁿ e^{inθ_m} ∫ R(ν) J_n(ν|m|) ν dν,
//!
//! in level units: ν = s|ω| with s the finer lattice spacing, m the offset
//! in finer-lattice cells, r the ratio of the two spacings, R the product of
//! the radial windows and c_n the harmonics of the product of the angular
//! windows.

use crate::error::{invalid, Error, Result};
use crate::frame2d::FrameSpec2D;
use crate::special_fn::bessel::bessel_j_orders;
use crate::special_fn::quadrature::cached_rule;
use crate::windows::radial::{radial_window, scaling_window};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

/// Absolute accuracy of each radial integral.
pub const RADIAL_TOL: f64 = 1e-12;

/// Filter families of the pyramid.
///
/// * `Alpha`: finer scaling to coarser scaling, ⟨φ_{j+1}, φ_j⟩.
/// * `Beta`: finer scaling to wavelet t of level j, ⟨φ_{j+1}, ψ_{j,t}⟩.
/// * `Gamma`: wavelet t' of level j+1 to wavelet t of level j.
/// * `Delta`: wavelet t of level j to scaling of level j, ⟨ψ_{j,t}, φ_j⟩.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TapKind {
    Alpha,
    Beta { t: usize },
    Gamma { t: usize, t_prime: usize },
    Delta { t: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Radial {
    Alpha,
    Beta,
    Gamma,
    Delta,
}

impl Radial {
    pub(crate) const ALL: [Radial; 4] = [Radial::Alpha, Radial::Beta, Radial::Gamma, Radial::Delta];

    fn eval(self, nu: f64) -> f64 {
        match self {
            Radial::Alpha => scaling_window(0.5 * nu) * scaling_window(nu),
            Radial::Beta => scaling_window(0.5 * nu) * radial_window(nu),
            Radial::Gamma => radial_window(nu) * radial_window(2.0 * nu),
            Radial::Delta => radial_window(nu) * scaling_window(nu),
        }
    }

    /// Pieces of the support on which the integrand is smooth.
    fn segments(self) -> &'static [(f64, f64)] {
        match self {
            Radial::Alpha => &[(0.0, FRAC_PI_4), (FRAC_PI_4, FRAC_PI_2)],
            Radial::Beta => &[(FRAC_PI_4, FRAC_PI_2), (FRAC_PI_2, PI)],
            Radial::Gamma | Radial::Delta => &[(FRAC_PI_4, FRAC_PI_2)],
        }
    }

    /// Coarse-to-fine spacing ratio.
    fn ratio(self) -> f64 {
        match self {
            Radial::Beta => 1.0,
            _ => 2.0,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl TapKind {
    pub(crate) fn radial(self) -> Radial {
        match self {
            TapKind::Alpha => Radial::Alpha,
            TapKind::Beta { .. } => Radial::Beta,
            TapKind::Gamma { .. } => Radial::Gamma,
            TapKind::Delta { .. } => Radial::Delta,
        }
    }
}

/// Taps τ(m) for |m|∞ ≤ radius, row-major with m_y outer.
#[derive(Clone, Debug, PartialEq)]
pub struct Taps {
    pub radius: usize,
    pub values: Vec<Complex64>,
}

impl Taps {
    pub fn width(&self) -> usize {
        2 * self.radius + 1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// τ(m), or `None` outside the truncation window.
    pub fn get(&self, m: [i64; 2]) -> Option<Complex64> {
        let r = self.radius as i64;
        if m[0].abs() > r || m[1].abs() > r {
            return None;
        }
        Some(self.values[((m[1] + r) * (2 * r + 1) + m[0] + r) as usize])
    }

    /// Offsets and values, row-major.
    pub fn iter(&self) -> impl Iterator<Item = ([i64; 2], Complex64)> + '_ {
        let r = self.radius as i64;
        let w = 2 * r + 1;
        self.values.iter().enumerate().map(move |(i, v)| ([i as i64 % w - r, i as i64 / w - r], *v))
    }

    /// Taps restricted to a smaller window.
    pub fn truncated(&self, radius: usize) -> Result<Taps> {
        if radius > self.radius {
            return invalid(format!("cannot widen taps from radius {} to {radius}", self.radius));
        }
        let r = radius as i64;
        let mut values = Vec::with_capacity((2 * radius + 1).pow(2));
        for my in -r..=r {
            for mx in -r..=r {
                values.push(self.get([mx, my]).unwrap());
            }
        }
        Ok(Taps { radius, values })
    }

    /// conj τ(−m): the filter of the adjoint operation.
    pub fn adjoint(&self) -> Taps {
        let mut values = self.values.clone();
        values.reverse();
        values.iter_mut().for_each(|c| *c = c.conj());
        Taps { radius: self.radius, values }
    }
}

/// B_n(ρ) = ∫ R(ν) J_n(νρ) ν dν for every radius |m| of the truncation
/// window and every needed order, for all four radial profiles.
pub(crate) struct RadialTable {
    orders: [usize; 4],
    values: HashMap<u64, [Vec<f64>; 4]>,
}

// Gauss rule on one smooth piece, raising the order until two successive
// rules agree.
fn integrate_piece(a: f64, b: f64, rho: f64, profiles: &[(Radial, usize)], out: &mut [Vec<f64>; 4]) -> Result<()> {
    let nmax = profiles.iter().map(|p| p.1).max().unwrap_or(0);
    let mut n = 12 + (0.5 * rho * (b - a)).ceil() as usize;
    let mut buf = vec![0.0; nmax + 1];
    let rule = |n: usize, buf: &mut Vec<f64>| {
        let r = cached_rule(n);
        let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
        let mut acc: Vec<Vec<f64>> = profiles.iter().map(|p| vec![0.0; p.1 + 1]).collect();
        for (x, w) in r.0.iter().zip(&r.1) {
            let nu = c + h * x;
            bessel_j_orders(nu * rho, buf);
            for (k, (prof, ord)) in profiles.iter().enumerate() {
                let f = prof.eval(nu) * nu * w * h;
                for o in 0..=*ord {
                    acc[k][o] += f * buf[o];
                }
            }
        }
        acc
    };
    let mut prev = rule(n, &mut buf);
    loop {
        let m = n + n / 2 + 8;
        let next = rule(m, &mut buf);
        let diff = prev.iter().flatten().zip(next.iter().flatten()).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
        if diff <= 0.5 * RADIAL_TOL {
            for (k, (prof, _)) in profiles.iter().enumerate() {
                for (o, v) in next[k].iter().enumerate() {
                    out[prof.index()][o] += v;
                }
            }
            return Ok(());
        }
        if m > 8192 {
            return Err(Error::Numerical {
                what: format!("radial tap integral at offset radius {rho:.6}"),
                achieved: diff,
                wanted: RADIAL_TOL,
            });
        }
        prev = next;
        n = m;
    }
}

impl RadialTable {
    /// `orders[k]` is the highest Bessel order needed for profile k.
    pub(crate) fn new(radius: usize, orders: [usize; 4]) -> Result<Self> {
        let mut keys = Vec::new();
        for my in 0..=radius as u64 {
            for mx in my..=radius as u64 {
                keys.push(mx * mx + my * my);
            }
        }
        keys.sort_unstable();
        keys.dedup();
        let computed: Vec<(u64, [Vec<f64>; 4])> = keys
            .par_iter()
            .map(|&k| {
                let rho = (k as f64).sqrt();
                let mut out: [Vec<f64>; 4] = std::array::from_fn(|i| vec![0.0; orders[i] + 1]);
                let mut pieces: Vec<((f64, f64), Vec<(Radial, usize)>)> = Vec::new();
                for prof in Radial::ALL {
                    for &seg in prof.segments() {
                        match pieces.iter_mut().find(|p| p.0 == seg) {
                            Some(p) => p.1.push((prof, orders[prof.index()])),
                            None => pieces.push((seg, vec![(prof, orders[prof.index()])])),
                        }
                    }
                }
                for ((a, b), profs) in &pieces {
                    integrate_piece(*a, *b, rho, profs, &mut out)?;
                }
                Ok((k, out))
            })
            .collect::<Result<_>>()?;
        Ok(RadialTable { orders, values: computed.into_iter().collect() })
    }

    /// Assembles taps from angular harmonics c_n, n = −K..=K.
    pub(crate) fn taps(&self, radial: Radial, c: &[Complex64], radius: usize) -> Result<Taps> {
        let big_k = (c.len() - 1) / 2;
        if big_k > self.orders[radial.index()] {
            return invalid("radial table lacks the needed Bessel orders");
        }
        let r = radius as i64;
        let pre = radial.ratio() / (2.0 * PI);
        // iⁿ c_n
        let ic: Vec<Complex64> =
            c.iter().enumerate().map(|(k, v)| v * Complex64::i().powi(k as i32 - big_k as i32)).collect();
        let mut values = Vec::with_capacity((2 * radius + 1).pow(2));
        for my in -r..=r {
            for mx in -r..=r {
                let key = (mx * mx + my * my) as u64;
                let b = &self
                    .values
                    .get(&key)
                    .ok_or_else(|| Error::InvalidArgument("offset outside the radial table".into()))?[radial.index()];
                let theta = (my as f64).atan2(mx as f64);
                let mut v = ic[big_k] * b[0];
                for n in 1..=big_k {
                    let e = Complex64::from_polar(1.0, n as f64 * theta);
                    let bn = b[n];
                    let neg = if n % 2 == 1 { -bn } else { bn };
                    v += ic[big_k + n] * e * bn + ic[big_k - n] * e.conj() * neg;
                }
                values.push(v * pre);
            }
        }
        Ok(Taps { radius, values })
    }
}

/// c_n of conj(γ): conj(b_{−n}).
pub(crate) fn conj_reflect(b: &[Complex64]) -> Vec<Complex64> {
    b.iter().rev().map(|c| c.conj()).collect()
}

/// Harmonics of a product of two angular functions.
pub(crate) fn product(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (k, y) in b.iter().enumerate() {
            out[i + k] += x * y;
        }
    }
    out
}

/// Angular harmonics of the product window for one tap kind at level j.
pub(crate) fn angular(spec: &FrameSpec2D, j: i32, kind: TapKind) -> Result<Vec<Complex64>> {
    let check_t = |lvl: i32, t: usize| {
        if !spec.levels().contains(&lvl) {
            return invalid(format!("level {lvl} outside {}..={}", spec.j_min(), spec.j_max()));
        }
        if t >= spec.orientations(lvl) {
            return invalid(format!("orientation {t} out of range at level {lvl}"));
        }
        Ok(())
    };
    Ok(match kind {
        TapKind::Alpha => vec![Complex64::new(1.0, 0.0)],
        TapKind::Beta { t } => {
            check_t(j, t)?;
            conj_reflect(&spec.window(j).rotated(t))
        }
        TapKind::Gamma { t, t_prime } => {
            check_t(j, t)?;
            check_t(j + 1, t_prime)?;
            product(&spec.window(j + 1).rotated(t_prime), &conj_reflect(&spec.window(j).rotated(t)))
        }
        TapKind::Delta { t } => {
            check_t(j, t)?;
            spec.window(j).rotated(t)
        }
    })
}

/// Taps of one filter at level j, truncated to |m|∞ ≤ radius.
pub fn compute_taps(spec: &FrameSpec2D, j: i32, kind: TapKind, radius: usize) -> Result<Taps> {
    if radius == 0 {
        return invalid("truncation radius must be positive");
    }
    if !spec.levels().contains(&j) {
        return invalid(format!("level {j} outside {}..={}", spec.j_min(), spec.j_max()));
    }
    let c = angular(spec, j, kind)?;
    let mut orders = [0; 4];
    orders[kind.radial().index()] = (c.len() - 1) / 2;
    RadialTable::new(radius, orders)?.taps(kind.radial(), &c, radius)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_center_is_inner_product() {
        // ⟨φ_{j+1,0}, φ_{j,0}⟩ = 2/(2π)·∫ ĝ(ν/2) ĝ(ν) ν dν·... with the
        // angular integral done: (2/4π²)·2π ∫ ĝ(ν)ν dν since ĝ(ν/2) = 1 there.
        let spec = FrameSpec2D::isotropic(64, 0, 2).unwrap();
        let t = compute_taps(&spec, 1, TapKind::Alpha, 3).unwrap();
        let ig = crate::special_fn::quadrature::Integrator::default();
        let b = ig.integrate(|nu| scaling_window(nu) * nu, &[0.0, FRAC_PI_4, FRAC_PI_2]).unwrap();
        assert!((t.get([0, 0]).unwrap().re - b / PI).abs() < 1e-13);
        assert!(t.get([4, 0]).is_none());
        let m = t.get([2, 1]).unwrap();
        assert!((m - t.get([-1, -2]).unwrap()).norm() < 1e-15);
        assert!(m.im.abs() < 1e-15);
    }

    #[test]
    fn adjoint_and_truncation() {
        let spec = FrameSpec2D::from_config(&crate::windows::FrameConfig::default_2d()).unwrap();
        let t = compute_taps(&spec, 2, TapKind::Beta { t: 3 }, 4).unwrap();
        let a = t.adjoint();
        assert_eq!(a.get([1, -2]).unwrap(), t.get([-1, 2]).unwrap().conj());
        let s = t.truncated(2).unwrap();
        assert_eq!(s.len(), 25);
        assert_eq!(s.get([2, -1]), t.get([2, -1]));
        assert!(compute_taps(&spec, 2, TapKind::Alpha, 0).is_err());
        assert!(compute_taps(&spec, spec.j_max(), TapKind::Gamma { t: 0, t_prime: 0 }, 2).is_err());
    }
}
