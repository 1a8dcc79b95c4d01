//! Clebsch–Gordan and Gaunt coefficients for integer angular momenta.
//!
//! The Racah sum is evaluated in exact rational arithmetic; only the final
//! square root goes through floating point.

use crate::error::{invalid, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;
use std::f64::consts::PI;

/// Largest degree accepted by the exact evaluators.
pub const MAX_DEGREE: i64 = 16;

fn fact(n: i64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * k)
}

/// <l1 m1; l2 m2 | l m>.
pub fn clebsch_gordan(l1: i64, m1: i64, l2: i64, m2: i64, l: i64, m: i64) -> Result<f64> {
    for &d in &[l1, l2, l] {
        if !(0..=MAX_DEGREE).contains(&d) {
            return invalid(format!("degree {d} outside 0..={MAX_DEGREE}"));
        }
    }
    if m1.abs() > l1 || m2.abs() > l2 || m.abs() > l {
        return invalid("order exceeds degree");
    }
    if m1 + m2 != m || l < (l1 - l2).abs() || l > l1 + l2 {
        return Ok(0.0);
    }
    let pre = BigRational::new(
        BigInt::from(2 * l + 1) * fact(l + l1 - l2) * fact(l - l1 + l2) * fact(l1 + l2 - l),
        fact(l1 + l2 + l + 1),
    ) * BigRational::from_integer(
        fact(l + m) * fact(l - m) * fact(l1 - m1) * fact(l1 + m1) * fact(l2 - m2) * fact(l2 + m2),
    );
    let mut sum = BigRational::zero();
    let kmin = 0.max(l2 - l - m1).max(l1 + m2 - l);
    let kmax = (l1 + l2 - l).min(l1 - m1).min(l2 + m2);
    for k in kmin..=kmax {
        let den = fact(k)
            * fact(l1 + l2 - l - k)
            * fact(l1 - m1 - k)
            * fact(l2 + m2 - k)
            * fact(l - l2 + m1 + k)
            * fact(l - l1 - m2 + k);
        let t = BigRational::new(BigInt::one(), den);
        if k % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
    }
    if sum.is_zero() {
        return Ok(0.0);
    }
    let sq = (&pre * &sum * &sum).to_f64().unwrap_or(f64::NAN);
    Ok(if sum.is_negative() { -sq.sqrt() } else { sq.sqrt() })
}

/// ∫ y_{l1 m1} y_{l2 m2} conj(y_{l m}) over the sphere.
pub fn gaunt(l1: i64, m1: i64, l2: i64, m2: i64, l: i64, m: i64) -> Result<f64> {
    let c0 = clebsch_gordan(l1, 0, l2, 0, l, 0)?;
    if c0 == 0.0 {
        clebsch_gordan(l1, m1, l2, m2, l, m)?;
        return Ok(0.0);
    }
    let c = clebsch_gordan(l1, m1, l2, m2, l, m)?;
    let norm = (((2 * l1 + 1) * (2 * l2 + 1)) as f64 / (4.0 * PI * (2 * l + 1) as f64)).sqrt();
    Ok(norm * c0 * c)
}

/// Precomputed Gaunt coefficients for l1, l2 ≤ `max_degree`, any
/// admissible l ≤ l1 + l2. Immutable once built.
#[derive(Clone, Debug)]
pub struct GauntTable {
    max_degree: i64,
    entries: HashMap<(i64, i64, i64, i64, i64), f64>,
}

impl GauntTable {
    pub fn new(max_degree: usize) -> Result<Self> {
        let lmax = max_degree as i64;
        if 2 * lmax > MAX_DEGREE {
            return invalid(format!("Gaunt table degree {lmax} needs products up to {}", 2 * lmax));
        }
        let mut entries = HashMap::new();
        for l1 in 0..=lmax {
            for l2 in 0..=lmax {
                for l in (l1 - l2).abs()..=(l1 + l2) {
                    if (l1 + l2 + l) % 2 == 1 {
                        continue;
                    }
                    for m1 in -l1..=l1 {
                        for m2 in -l2..=l2 {
                            if (m1 + m2).abs() > l {
                                continue;
                            }
                            let g = gaunt(l1, m1, l2, m2, l, m1 + m2)?;
                            if g != 0.0 {
                                entries.insert((l1, m1, l2, m2, l), g);
                            }
                        }
                    }
                }
            }
        }
        Ok(GauntTable { max_degree: lmax, entries })
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree as usize
    }

    /// ∫ y_{l1 m1} y_{l2 m2} conj(y_{l m}); zero unless m = m1 + m2.
    pub fn get(&self, l1: i64, m1: i64, l2: i64, m2: i64, l: i64, m: i64) -> f64 {
        if m != m1 + m2 {
            return 0.0;
        }
        debug_assert!(l1 <= self.max_degree && l2 <= self.max_degree);
        *self.entries.get(&(l1, m1, l2, m2, l)).unwrap_or(&0.0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fn::quadrature::gauss_legendre;
    use crate::special_fn::sph_harm::{lm_index, sph_harm_all};

    #[test]
    fn tabulated_values() {
        // <1 1; 1 -1 | 1 0> = 1/sqrt(2), <1 0; 1 0 | 2 0> = sqrt(2/3)
        assert!((clebsch_gordan(1, 1, 1, -1, 1, 0).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((clebsch_gordan(1, 0, 1, 0, 2, 0).unwrap() - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!(clebsch_gordan(1, 0, 1, 0, 1, 0).unwrap(), 0.0);
        assert!((clebsch_gordan(2, -1, 1, 1, 1, 0).unwrap() - 0.3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn orthogonality() {
        let (l1, l2) = (3, 2);
        for l in 1..=5 {
            for lp in 1..=5 {
                let m = 1;
                let mut s = 0.0;
                for m1 in -l1..=l1 {
                    let m2 = m - m1;
                    if m2.abs() > l2 {
                        continue;
                    }
                    s += clebsch_gordan(l1, m1, l2, m2, l, m).unwrap()
                        * clebsch_gordan(l1, m1, l2, m2, lp, m).unwrap();
                }
                let e = if l == lp { 1.0 } else { 0.0 };
                assert!((s - e).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn gaunt_against_quadrature() {
        let (x, w) = gauss_legendre(16);
        let nphi = 24;
        let table = GauntTable::new(3).unwrap();
        for &(l1, m1, l2, m2, l) in &[(1, 1, 1, 0, 2), (2, -1, 3, 2, 3), (3, 3, 3, -2, 4), (2, 0, 2, 0, 0)] {
            let m = m1 + m2;
            let mut q = num_complex::Complex64::new(0.0, 0.0);
            for (ct, wt) in x.iter().zip(&w) {
                for k in 0..nphi {
                    let phi = 2.0 * PI * k as f64 / nphi as f64;
                    let y = sph_harm_all(6, *ct, (1.0 - ct * ct).sqrt(), phi);
                    q += y[lm_index(l1 as usize, m1)] * y[lm_index(l2 as usize, m2)]
                        * y[lm_index(l as usize, m)].conj()
                        * (wt * 2.0 * PI / nphi as f64);
                }
            }
            let g = table.get(l1, m1, l2, m2, l, m);
            assert!((q.re - g).abs() < 1e-14 && q.im.abs() < 1e-14, "{q} {g}");
        }
    }

    #[test]
    fn degree_limit() {
        assert!(clebsch_gordan(17, 0, 1, 0, 16, 0).is_err());
        assert!(GauntTable::new(9).is_err());
        assert!(clebsch_gordan(16, 3, 16, -3, 16, 0).unwrap().is_finite());
    }
}
