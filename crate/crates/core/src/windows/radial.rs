//! Radial windows and the Hankel-type kernels of the mother wavelets.

use crate::error::Result;
use crate::special_fn::bessel::bessel_j_orders;
use crate::special_fn::quadrature::{panel_breaks, Integrator};
use crate::special_fn::sph_bessel::sph_bessel_orders;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::RwLock;

/// Lower and upper edge of the wavelet window support.
pub const RHO_LO: f64 = PI / 4.0;
pub const RHO_HI: f64 = PI;

/// Wavelet window ĥ, supported on (π/4, π].
#[inline]
pub fn radial_window(rho: f64) -> f64 {
    if rho > RHO_LO && rho <= RHO_HI {
        (0.5 * PI * (2.0 * rho / PI).log2()).cos()
    } else {
        0.0
    }
}

/// Scaling window ĝ: one up to π/4, zero from π/2 on.
#[inline]
pub fn scaling_window(rho: f64) -> f64 {
    let rho = rho.abs();
    if rho <= RHO_LO {
        1.0
    } else if rho < 0.5 * PI {
        (0.5 * PI * (4.0 * rho / PI).log2()).cos()
    } else {
        0.0
    }
}

/// Radial window plus cached kernels
/// h_m(r) = ∫ ĥ(ρ) J_m(ρr) ρ dρ (2D) and h_l(r) = ∫ ĥ(ρ) j_l(ρr) ρ² dρ (3D).
#[derive(Debug)]
pub struct RadialProfile {
    integrator: Integrator,
    cache_2d: RwLock<HashMap<(usize, u64), f64>>,
    cache_3d: RwLock<HashMap<(usize, u64), f64>>,
}

impl Default for RadialProfile {
    fn default() -> Self {
        Self::new(Integrator::new(16, 1e-13))
    }
}

impl Clone for RadialProfile {
    fn clone(&self) -> Self {
        Self::new(self.integrator.clone())
    }
}

#[derive(Clone, Copy)]
enum Dim {
    Two,
    Three,
}

impl RadialProfile {
    pub fn new(integrator: Integrator) -> Self {
        RadialProfile {
            integrator,
            cache_2d: RwLock::new(HashMap::new()),
            cache_3d: RwLock::new(HashMap::new()),
        }
    }

    pub fn support(&self) -> (f64, f64) {
        (RHO_LO, RHO_HI)
    }

    pub fn integrator(&self) -> &Integrator {
        &self.integrator
    }

    /// h_m(r) for any integer m; h_{-m} = (-1)^m h_m.
    pub fn kernel_2d(&self, m: i32, r: f64) -> Result<f64> {
        let k = m.unsigned_abs() as usize;
        let v = self.kernels(Dim::Two, k, r)?[k];
        Ok(if m < 0 && k % 2 == 1 { -v } else { v })
    }

    /// h_l(r), l ≥ 0.
    pub fn kernel_3d(&self, l: usize, r: f64) -> Result<f64> {
        Ok(self.kernels(Dim::Three, l, r)?[l])
    }

    /// h_0(r) .. h_max(r) in one pass (2D kernels).
    pub fn kernels_2d(&self, max_order: usize, r: f64) -> Result<Vec<f64>> {
        self.kernels(Dim::Two, max_order, r)
    }

    pub fn kernels_3d(&self, max_order: usize, r: f64) -> Result<Vec<f64>> {
        self.kernels(Dim::Three, max_order, r)
    }

    fn kernels(&self, dim: Dim, max_order: usize, r: f64) -> Result<Vec<f64>> {
        let r = r.abs();
        let cache = match dim {
            Dim::Two => &self.cache_2d,
            Dim::Three => &self.cache_3d,
        };
        let key = r.to_bits();
        {
            let c = cache.read().unwrap();
            let hit: Option<Vec<f64>> = (0..=max_order).map(|k| c.get(&(k, key)).copied()).collect();
            if let Some(v) = hit {
                return Ok(v);
            }
        }
        let v = self.kernels_uncached(dim, max_order, r)?;
        let mut c = cache.write().unwrap();
        for (k, x) in v.iter().enumerate() {
            c.insert((k, key), *x);
        }
        Ok(v)
    }

    fn kernels_uncached(&self, dim: Dim, max_order: usize, r: f64) -> Result<Vec<f64>> {
        let width = max_order + 1;
        let f = |rho: f64, out: &mut [f64]| {
            let w = radial_window(rho);
            match dim {
                Dim::Two => {
                    bessel_j_orders(rho * r, out);
                    out.iter_mut().for_each(|v| *v *= w * rho);
                }
                Dim::Three => {
                    sph_bessel_orders(rho * r, out);
                    out.iter_mut().for_each(|v| *v *= w * rho * rho);
                }
            }
        };
        let panels = 2 + (0.75 * r).ceil() as usize;
        let breaks = panel_breaks(RHO_LO, RHO_HI, panels, &[]);
        self.integrator.integrate_vec(&f, &breaks, width)
    }

    /// Largest |ĝ(2^-j_min ρ)² + Σ_j ĥ(2^-j ρ)² − 1| over a log-spaced sample of
    /// [rho_lo, rho_hi]. Without the scaling term the sum covers only the
    /// wavelet bands.
    pub fn calderon_deviation(
        &self,
        j_min: i32,
        j_max: i32,
        rho_lo: f64,
        rho_hi: f64,
        samples: usize,
        with_scaling: bool,
    ) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..samples {
            let t = if samples > 1 { i as f64 / (samples - 1) as f64 } else { 0.0 };
            let rho = rho_lo * (rho_hi / rho_lo).powf(t);
            worst = worst.max((partition_sum(j_min, j_max, rho, with_scaling) - 1.0).abs());
        }
        worst
    }
}

/// ĝ(2^-j_min ρ)² (optional) + Σ_{j=j_min}^{j_max} ĥ(2^-j ρ)².
pub fn partition_sum(j_min: i32, j_max: i32, rho: f64, with_scaling: bool) -> f64 {
    let mut s = if with_scaling { scaling_window(rho * 2f64.powi(-j_min)).powi(2) } else { 0.0 };
    for j in j_min..=j_max {
        s += radial_window(rho * 2f64.powi(-j)).powi(2);
    }
    s
}

/// Band where the scaling window plus levels j_min..=j_max sum to one.
pub fn resolved_band(j_max: i32) -> f64 {
    2f64.powi(j_max) * 0.5 * PI
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_scale_identity() {
        for i in 1..2000 {
            let x = i as f64 * 0.002;
            let lhs = scaling_window(0.5 * x).powi(2);
            let rhs = scaling_window(x).powi(2) + radial_window(x).powi(2);
            assert!((lhs - rhs).abs() < 1e-15, "x={x}");
        }
    }

    #[test]
    fn partition_of_unity_below_resolved_edge() {
        let p = RadialProfile::default();
        let d = p.calderon_deviation(-1, 3, 1e-3, resolved_band(3), 4001, true);
        assert!(d < 1e-14, "{d}");
        // above the resolved edge the top window rolls off
        assert!(partition_sum(-1, 3, 0.75 * PI * 8.0, true) < 0.99);
        let single = p.calderon_deviation(0, 0, 0.1, 0.7, 50, false);
        assert!((single - 1.0).abs() < 1e-15);
    }

    #[test]
    fn kernel_matches_direct_integral() {
        let p = RadialProfile::default();
        let ig = Integrator::new(32, 1e-14);
        for &r in &[0.0, 0.5, 3.0, 17.0, 80.0] {
            for m in [0, 1, 3, 6] {
                let direct = ig
                    .integrate(
                        |rho| radial_window(rho) * crate::special_fn::bessel_j(m, rho * r).unwrap() * rho,
                        &panel_breaks(RHO_LO, RHO_HI, 200, &[]),
                    )
                    .unwrap();
                assert!((p.kernel_2d(m, r).unwrap() - direct).abs() < 1e-13);
            }
        }
        assert_eq!(p.kernel_2d(-3, 2.0).unwrap(), -p.kernel_2d(3, 2.0).unwrap());
        assert_eq!(p.kernel_2d(2, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn kernel_3d_small_r() {
        let p = RadialProfile::default();
        // h_0(0) = ∫ ĥ ρ² dρ
        let ig = Integrator::new(32, 1e-14);
        let h00 = ig.integrate(|rho| radial_window(rho) * rho * rho, &[RHO_LO, RHO_HI]).unwrap();
        assert!((p.kernel_3d(0, 0.0).unwrap() - h00).abs() < 1e-13);
        assert_eq!(p.kernel_3d(1, 0.0).unwrap(), 0.0);
    }
}
