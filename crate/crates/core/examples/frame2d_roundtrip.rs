//! Analysis and synthesis with the 2D frame: Parseval identity, exact
//! reconstruction and divergence of the output.
//!
//! cargo run --release --example frame2d_roundtrip

use divfree::fields::{divergence_spectral, error_metrics, make_eigenfield, EigenfieldRecipe};
use divfree::frame2d::{analyze_2d, synthesize_2d, FrameSpec2D};
use divfree::windows::FrameConfig;

fn main() -> divfree::Result<()> {
    let spec = FrameSpec2D::from_config(&FrameConfig::default_2d())?;
    let u = make_eigenfield(&EigenfieldRecipe::canonical(), spec.grid_size())?;
    let pyr = analyze_2d(&u, &spec)?;
    println!("coefficients: {} complex", pyr.len());
    for j in spec.levels() {
        let e: f64 = pyr.level_energy(j).iter().sum();
        println!("level {j}: {} orientations on {}² lattice, energy {e:.4e}", spec.orientations(j), pyr.wavelet(j, 0).size);
    }
    let parseval = (pyr.energy() + pyr.mean_energy()) / u.energy() - 1.0;
    println!("Parseval deviation {parseval:.2e}");
    let (back, rep) = synthesize_2d(&pyr, &spec)?;
    let m = error_metrics(&u, &back, 0);
    println!("round trip L2 {:.2e}  Linf {:.2e}  dropped imaginary {:.1e}", m.l2_relative, m.linf, rep.imag_residual);
    println!("divergence of output {:.2e}", divergence_spectral(&back));
    Ok(())
}
