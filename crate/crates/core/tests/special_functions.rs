use divfree::special_fn::wigner::{apply, euler_matrix, transpose};
use divfree::special_fn::{
    bessel_j, gauss_legendre, gaunt, lm_index, sph_bessel_j, sph_harm, sph_harm_all_vec, wigner_d, SphericalDirection,
};
use divfree::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

// J_0 by its power series Σ (−x²/4)^k / (k!)², accurate for small x
fn j0_series(x: f64) -> f64 {
    let q = -x * x / 4.0;
    let (mut term, mut sum) = (1.0, 1.0);
    for k in 1..60 {
        term *= q / (k * k) as f64;
        sum += term;
    }
    sum
}

#[test]
fn bessel_values() {
    assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
    assert_eq!(bessel_j(3, 0.0).unwrap(), 0.0);
    let (mut lo, mut hi) = (2.0, 3.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if j0_series(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let zero = 0.5 * (lo + hi);
    assert!((zero - 2.404825557695773).abs() < 1e-12);
    assert!(bessel_j(0, zero).unwrap().abs() < 1e-10);
    for x in [0.1, 1.5, 4.0, 7.7] {
        assert!((bessel_j(0, x).unwrap() - j0_series(x)).abs() < 1e-12);
        for n in 1..10 {
            let s = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(bessel_j(-n, x).unwrap(), s * bessel_j(n, x).unwrap());
        }
    }
    assert!(bessel_j(1000, 1.0).is_err());
}

#[test]
fn spherical_bessel_values() {
    assert_eq!(sph_bessel_j(0, 0.0).unwrap(), 1.0);
    assert_eq!(sph_bessel_j(1, 0.0).unwrap(), 0.0);
    assert!(sph_bessel_j(0, PI).unwrap().abs() < 1e-14);
    for x in [0.5f64, 3.0, 20.0] {
        let j1 = x.sin() / (x * x) - x.cos() / x;
        assert!((sph_bessel_j(1, x).unwrap() - j1).abs() < 1e-14);
    }
    // large degree at small argument stays finite and tiny
    let v = sph_bessel_j(30, 2.0).unwrap();
    assert!(v > 0.0 && v < 1e-25);
}

fn sphere_quadrature(n: usize, f: impl Fn(SphericalDirection) -> Complex64) -> Complex64 {
    let (nodes, weights) = gauss_legendre(n);
    let nphi = 2 * n;
    let mut s = Complex64::new(0.0, 0.0);
    for (ct, w) in nodes.iter().zip(&weights) {
        for k in 0..nphi {
            let d = SphericalDirection::new(ct.acos(), 2.0 * PI * k as f64 / nphi as f64).unwrap();
            s += f(d) * *w;
        }
    }
    s * (2.0 * PI / nphi as f64)
}

#[test]
fn spherical_harmonic_values() {
    let d = SphericalDirection::new(1.1, 0.3).unwrap();
    assert!((sph_harm(0, 0, d).unwrap() - 0.5 / PI.sqrt()).norm() < 1e-15);
    let v = sph_harm(1, 0, SphericalDirection::north()).unwrap();
    assert!((v.norm_sqr() - 3.0 / (4.0 * PI)).abs() < 1e-14);
    let norm = sphere_quadrature(48, |d| sph_harm(1, 0, d).unwrap().norm_sqr().into());
    assert!((norm.re - 1.0).abs() < 1e-12);
    let n11 = sphere_quadrature(48, |d| sph_harm(1, 1, d).unwrap().norm_sqr().into());
    assert!((n11.re - 1.0).abs() < 1e-12);
    for l in 0..6usize {
        for m in 1..=l as i64 {
            let s = if m % 2 == 0 { 1.0 } else { -1.0 };
            assert!((sph_harm(l, -m, d).unwrap() - s * sph_harm(l, m, d).unwrap().conj()).norm() < 1e-15);
        }
    }
    assert!(sph_harm(2, 3, d).is_err());
}

#[test]
fn gaunt_values() {
    assert!((gaunt(0, 0, 1, 1, 1, 1).unwrap() - 0.5 / PI.sqrt()).abs() < 1e-15);
    assert_eq!(gaunt(1, 1, 1, 1, 2, 1).unwrap(), 0.0);
    let q = sphere_quadrature(16, |d| {
        let y = sph_harm(1, 0, d).unwrap();
        y * y * sph_harm(2, 0, d).unwrap().conj()
    });
    assert!((gaunt(1, 0, 1, 0, 2, 0).unwrap() - q.re).abs() < 1e-10);
    assert!(gaunt(20, 0, 1, 0, 20, 0).is_err());
}

#[test]
fn wigner_values() {
    let id = wigner_d(SphericalDirection::north(), 1).unwrap();
    for a in 0..3 {
        for b in 0..3 {
            assert!((id[a * 3 + b] - if a == b { 1.0 } else { 0.0 }).norm() < 1e-15);
        }
    }
    let d = SphericalDirection::new(0.8, 4.0).unwrap();
    assert!((wigner_d(d, 0).unwrap()[0] - 1.0).norm() < 1e-15);

    // rotated y_10 equals y_10 at the back-rotated point
    let lam = SphericalDirection::new(PI / 2.0, 0.0).unwrap();
    let w = wigner_d(lam, 1).unwrap();
    let rt = transpose(&euler_matrix(lam.phi, lam.theta, 0.0));
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let z: f64 = rng.gen_range(-1.0..1.0);
        let p: f64 = rng.gen_range(0.0..2.0 * PI);
        let s = (1.0 - z * z).sqrt();
        let om = [s * p.cos(), s * p.sin(), z];
        let y = sph_harm_all_vec(1, om);
        let lhs: Complex64 = (-1i64..=1).map(|mp| w[(3 + mp + 1) as usize] * y[lm_index(1, mp)]).sum();
        let rhs = sph_harm_all_vec(1, apply(&rt, om))[lm_index(1, 0)];
        assert!((lhs - rhs).norm() < 1e-12);
    }
    assert!(wigner_d(d, 40).is_err());
}
