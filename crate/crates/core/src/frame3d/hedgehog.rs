//! Tangent frame τ_a = e_a × ω on the sphere.

use crate::special_fn::sph_harm::SphericalDirection;

/// τ_1, τ_2, τ_3 at a direction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HedgehogVectors {
    pub tau: [[f64; 3]; 3],
}

/// e_a × v for axis a ∈ {0, 1, 2} (τ_1, τ_2, τ_3 when v is a unit vector).
#[inline]
pub fn tau(a: usize, v: [f64; 3]) -> [f64; 3] {
    match a {
        0 => [0.0, -v[2], v[1]],
        1 => [v[2], 0.0, -v[0]],
        _ => [-v[1], v[0], 0.0],
    }
}

pub fn hedgehog(omega: SphericalDirection) -> HedgehogVectors {
    let w = omega.to_vector();
    HedgehogVectors { tau: [tau(0, w), tau(1, w), tau(2, w)] }
}

impl HedgehogVectors {
    /// Σ_a (v·τ_a) τ_a.
    pub fn reproduce(&self, v: [f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for t in &self.tau {
            let d = t[0] * v[0] + t[1] * v[1] + t[2] * v[2];
            for i in 0..3 {
                out[i] += d * t[i];
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poles_and_identity() {
        let h = hedgehog(SphericalDirection::north());
        assert_eq!(h.tau[2], [0.0, 0.0, 0.0]);
        assert_eq!(h.tau[0], [0.0, -1.0, 0.0]);
        let hx = hedgehog(SphericalDirection::from_vector([1.0, 0.0, 0.0]));
        assert!(hx.tau[0].iter().all(|x| x.abs() < 1e-16));
        let w = SphericalDirection::new(2.0, 4.0).unwrap();
        let wv = w.to_vector();
        let v = [0.3, -1.2, 0.7];
        let r = hedgehog(w).reproduce(v);
        let d = v[0] * wv[0] + v[1] * wv[1] + v[2] * wv[2];
        for i in 0..3 {
            assert!((r[i] - (v[i] - d * wv[i])).abs() < 1e-15);
        }
    }
}
