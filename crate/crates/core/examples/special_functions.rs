//! Bessel functions, spherical harmonics, Gaunt coefficients and Wigner
//! rotations that the 2D and 3D frames are built on.
//!
//! cargo run --release --example special_functions

use divfree::special_fn::{
    bessel_j, gaunt, gauss_legendre, rotate_coefficients, sph_bessel_j, sph_harm, sph_harm_all_vec, SphericalDirection,
};
use divfree::special_fn::wigner::euler_matrix;
use divfree::Complex64;

fn main() -> divfree::Result<()> {
    // Jacobi-Anger: e^{i x cos θ} = Σ_n iⁿ J_n(x) e^{inθ}
    let (x, theta) = (7.3, 0.4);
    let mut sum = Complex64::new(0.0, 0.0);
    for n in -40..=40 {
        sum += Complex64::i().powi(n) * bessel_j(n, x)? * Complex64::from_polar(1.0, n as f64 * theta);
    }
    println!("Jacobi-Anger residual      {:.2e}", (sum - Complex64::from_polar(1.0, x * theta.cos())).norm());

    println!("j_3(5.0) = {:.15}", sph_bessel_j(3, 5.0)?);

    // Gaunt coefficient against Gauss-Legendre × trapezoid quadrature
    let (l1, m1, l2, m2, l, m) = (2, 1, 3, -1, 3, 0);
    let (nodes, weights) = gauss_legendre(40);
    let nphi = 64;
    let mut quad = Complex64::new(0.0, 0.0);
    for (ct, w) in nodes.iter().zip(&weights) {
        for k in 0..nphi {
            let phi = 2.0 * std::f64::consts::PI * k as f64 / nphi as f64;
            let d = SphericalDirection::new(ct.acos(), phi)?;
            quad += sph_harm(l1, m1, d)? * sph_harm(l2, m2, d)? * sph_harm(l, m, d)?.conj() * *w;
        }
    }
    quad *= 2.0 * std::f64::consts::PI / nphi as f64;
    let g = gaunt(l1 as i64, m1, l2 as i64, m2, l as i64, m)?;
    println!("Gaunt exact {g:.15}  quadrature {:.15}", quad.re);

    // rotating a band-limited expansion matches evaluating at the rotated point
    let lmax = 4;
    let coeffs: Vec<Complex64> = (0..(lmax + 1) * (lmax + 1)).map(|i| Complex64::new(1.0 / (1.0 + i as f64), 0.1 * i as f64)).collect();
    let r = euler_matrix(0.3, 1.1, -0.7);
    let rotated = rotate_coefficients(&coeffs, &r)?;
    let v = [0.2, -0.5, 0.84];
    let rv = divfree::special_fn::wigner::apply(&r, v);
    let eval = |c: &[Complex64], p: [f64; 3]| -> Complex64 { c.iter().zip(sph_harm_all_vec(lmax, p)).map(|(a, b)| a * b).sum() };
    println!("rotation residual          {:.2e}", (eval(&rotated, rv) - eval(&coeffs, v)).norm());
    Ok(())
}
