//! Three-dimensional frame: hedgehog tangent frame, icosahedral window,
//! Parseval and reconstruction on a 32³ grid.
//!
//! cargo run --release --example frame3d_roundtrip

use divfree::fields::{divergence_spectral_3d, error_metrics_3d, make_eigenfield_3d};
use divfree::frame3d::{analyze_3d, hedgehog, synthesize_3d, FrameSpec3D};
use divfree::special_fn::SphericalDirection;
use divfree::windows::{FrameConfig, OrientationSet, WindowConfig3D};

fn main() -> divfree::Result<()> {
    // the three vectors e_a × ω reproduce any tangent vector at ω
    let d = SphericalDirection::new(0.9, 2.1)?;
    let h = hedgehog(d);
    let w = d.to_vector();
    let v = [0.3, -1.0, 0.5];
    let dot = v[0] * w[0] + v[1] * w[1] + v[2] * w[2];
    let tangent = [v[0] - dot * w[0], v[1] - dot * w[1], v[2] - dot * w[2]];
    let back = h.reproduce(tangent);
    let err = (0..3).map(|i| (back[i] - tangent[i]).abs()).fold(0.0, f64::max);
    println!("hedgehog reproduction error {err:.1e}");

    let config = FrameConfig {
        dimension: 3,
        grid_size: 32,
        j_min: 0,
        j_max: 2,
        window3d: WindowConfig3D { zonal: vec![1.0, 0.8, 0.3], orientation_set: OrientationSet::Icosahedron },
        ..FrameConfig::default_2d()
    };
    let spec = FrameSpec3D::from_config(&config)?;
    println!("{} orientations, tightness residual {:.1e}", spec.orientations(), spec.tightness().max_residual);

    let mut u = make_eigenfield_3d(32, [2, 1, 3], 1.0)?;
    u.add_scaled(&make_eigenfield_3d(32, [5, 4, 2], 1.0)?, 0.3);
    let pyr = analyze_3d(&u, &spec)?;
    println!("{} coefficients, Parseval deviation {:.1e}", pyr.len(), (pyr.energy() + pyr.mean_energy()) / u.energy() - 1.0);
    let (rec, _) = synthesize_3d(&pyr, &spec)?;
    let m = error_metrics_3d(&u, &rec);
    println!("round trip L2 {:.1e}, divergence {:.1e}", m.l2_relative, divergence_spectral_3d(&rec));
    Ok(())
}
