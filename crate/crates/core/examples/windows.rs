//! Radial partition of unity and angular tightness, in 2D and on the
//! sphere.
//!
//! cargo run --release --example windows

use divfree::special_fn::GauntTable;
use divfree::windows::radial::{partition_sum, resolved_band};
use divfree::windows::{
    make_angular_window_2d, radial_window, scaling_window, validate_tightness_2d, validate_tightness_3d, zonal_window,
    OrientationSet, Parity,
};

fn main() -> divfree::Result<()> {
    println!("rho      g(rho)    h(rho)    partition (levels 0..4)");
    for rho in [0.1, 0.7, 1.2, 2.0, 5.0, 20.0] {
        println!("{rho:5.2}  {:8.5}  {:8.5}  {:.15}", scaling_window(rho), radial_window(rho), partition_sum(0, 4, rho, true));
    }
    println!("resolved band for j_max = 4: {:.4}", resolved_band(4));

    for (parity, n, m) in [(Parity::Even, 4, 9), (Parity::Odd, 3, 7)] {
        let w = make_angular_window_2d(parity, n, m, 2.0)?;
        let r = validate_tightness_2d(&w);
        println!("{parity:?} N={n} M={m}: trace {:.15} off-diagonal {:.1e}", r.trace, r.max_offdiag);
    }

    let table = GauntTable::new(2)?;
    for (set, profile) in [
        (OrientationSet::Octahedron, vec![1.0, 0.7]),
        (OrientationSet::Icosahedron, vec![1.0, 0.8, 0.3]),
        (OrientationSet::Octahedron, vec![1.0, 0.8, 0.3]),
    ] {
        let w = zonal_window(&profile, set)?;
        let r = validate_tightness_3d(&w, &table)?;
        println!("{set:?} degree {}: max residual {:.2e}", w.degree(), r.max_residual);
    }
    Ok(())
}
