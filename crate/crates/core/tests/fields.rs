use divfree::fields::{
    divergence_spectral, error_metrics, leray_project, make_eigenfield, make_random_field, make_vortices,
    EigenfieldRecipe, VectorField2D, Vortex,
};
use divfree::Error;
use std::f64::consts::PI;

fn scaled(f: &VectorField2D, a: f64) -> VectorField2D {
    let mut out = VectorField2D::zeros(f.n);
    out.domain_length = f.domain_length;
    out.add_scaled(f, a);
    out
}

fn unit_energy(f: &VectorField2D) -> VectorField2D {
    scaled(f, 1.0 / f.energy().sqrt())
}

// ∇ of a smooth periodic potential
fn gradient_field(n: usize) -> VectorField2D {
    VectorField2D::from_fn(n, 2.0 * PI, |x, y| {
        [
            3.0 * (3.0 * x).cos() * (2.0 * y).sin() - 5.0 * (5.0 * x + y).sin(),
            2.0 * (3.0 * x).sin() * (2.0 * y).cos() - (5.0 * x + y).sin(),
        ]
    })
}

#[test]
fn gradient_noise_is_removed() {
    let u = unit_energy(&make_eigenfield(&EigenfieldRecipe::canonical(), 128).unwrap());
    let g = unit_energy(&gradient_field(128));
    let mut noisy = u.clone();
    noisy.add_scaled(&g, 0.01);
    let (p, removed) = leray_project(&noisy);
    // 1% amplitude noise carries 1e-4 of the energy
    assert!(removed > 0.5e-4 && removed < 2e-4, "{removed}");
    assert!(error_metrics(&u, &p, 0).l2_relative < 1e-12);
    assert!(divergence_spectral(&p) < 1e-12);
    let (_, all) = leray_project(&g);
    assert!((all - 1.0).abs() < 1e-12);
}

#[test]
fn projection_is_idempotent() {
    let mut f = make_random_field(64, 8.0, 3).unwrap();
    f.add_scaled(&gradient_field(64), 0.3);
    let (once, _) = leray_project(&f);
    let (twice, removed) = leray_project(&once);
    assert!(removed < 1e-24);
    assert!(error_metrics(&once, &twice, 0).l2_relative < 1e-14);
}

#[test]
fn known_perturbation_metric() {
    let a = unit_energy(&make_eigenfield(&EigenfieldRecipe::canonical(), 128).unwrap());
    let e = unit_energy(&make_random_field(128, 10.0, 1).unwrap());
    for eps in [1e-6, 1e-3, 0.25] {
        let mut b = a.clone();
        b.add_scaled(&e, eps);
        let m = error_metrics(&a, &b, 0);
        assert!((m.l2_relative - eps).abs() < 1e-12, "{eps} {}", m.l2_relative);
    }
    let m = error_metrics(&a, &a, 0);
    assert_eq!((m.l2_relative, m.linf), (0.0, 0.0));
    let m = error_metrics(&a, &VectorField2D::zeros(128), 0);
    let peak = a.u.iter().zip(&a.v).map(|(x, y)| x.hypot(*y)).fold(0.0, f64::max);
    assert!((m.l2_relative - 1.0).abs() < 1e-15 && (m.linf - peak).abs() < 1e-15);
}

#[test]
fn single_vortex_is_azimuthal() {
    let l = 2.0 * PI;
    let c = [PI, PI];
    let (f, overlap) = make_vortices(&[Vortex { center: c, radius: 1.2, strength: 1.0 }], 128, l).unwrap();
    assert!(!overlap);
    let (p, _) = leray_project(&f);
    assert!(divergence_spectral(&p) < 1e-10);
    let h = f.spacing();
    for i in 0..128 * 128 {
        let (x, y) = ((i % 128) as f64 * h - c[0], (i / 128) as f64 * h - c[1]);
        assert!((f.u[i] * x + f.v[i] * y).abs() < 1e-12);
    }
}

// trapezoid line integral of u·dl counterclockwise along grid lines
fn circulation(f: &VectorField2D, x0: usize, x1: usize, y0: usize, y1: usize) -> f64 {
    let n = f.n;
    let h = f.spacing();
    let at = |ix: usize, iy: usize| (f.u[(iy % n) * n + ix % n], f.v[(iy % n) * n + ix % n]);
    let mut s = 0.0;
    for ix in x0..x1 {
        s += 0.5 * h * (at(ix, y0).0 + at(ix + 1, y0).0);
        s -= 0.5 * h * (at(ix, y1).0 + at(ix + 1, y1).0);
    }
    for iy in y0..y1 {
        s += 0.5 * h * (at(x1, iy).1 + at(x1, iy + 1).1);
        s -= 0.5 * h * (at(x0, iy).1 + at(x0, iy + 1).1);
    }
    s
}

#[test]
fn opposite_vortices_have_no_net_circulation() {
    let l = 2.0 * PI;
    let h = l / 128.0;
    let pair = [
        Vortex { center: [40.0 * h, 48.0 * h], radius: 0.9, strength: 1.0 },
        Vortex { center: [88.0 * h, 48.0 * h], radius: 0.9, strength: -1.0 },
    ];
    let (f, overlap) = make_vortices(&pair, 128, l).unwrap();
    assert!(!overlap);
    assert!(circulation(&f, 0, 128, 0, 128).abs() < 1e-12);
    // a loop inside one core catches part of its vorticity, with opposite signs
    let a = circulation(&f, 35, 45, 43, 53);
    let b = circulation(&f, 83, 93, 43, 53);
    assert!(a.abs() > 1e-3 && (a + b).abs() < 1e-12, "{a} {b}");
    assert!(divergence_spectral(&f) < 1e-3);
}

#[test]
fn field_errors() {
    assert!(matches!(make_eigenfield(&EigenfieldRecipe { modes: vec![], domain_length: 1.0 }, 16), Err(Error::InvalidArgument(_))));
    assert!(make_eigenfield(&EigenfieldRecipe::single(9, 1, 1.0), 16).is_err());
    assert!(make_vortices(&[Vortex { center: [1.0, 1.0], radius: 4.0, strength: 1.0 }], 16, 2.0 * PI).is_err());
    assert!(VectorField2D::new(4, 1.0, vec![0.0; 15], vec![0.0; 16]).is_err());
}
