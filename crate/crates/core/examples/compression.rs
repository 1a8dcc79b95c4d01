//! Keep only the largest coefficients and measure what is lost.
//!
//! cargo run --release --example compression

use divfree::fields::{divergence_spectral, error_metrics, make_eigenfield, EigenfieldRecipe};
use divfree::frame2d::{analyze_2d, synthesize_2d, FrameSpec2D};
use divfree::windows::FrameConfig;

fn main() -> divfree::Result<()> {
    let spec = FrameSpec2D::from_config(&FrameConfig { j_min: 1, ..FrameConfig::default_2d() })?;
    let u = make_eigenfield(&EigenfieldRecipe::canonical(), spec.grid_size())?;
    let pyr = analyze_2d(&u, &spec)?;
    println!("4 levels, {} coefficients", pyr.len());
    println!("kept    L2 error   divergence");
    for f in [0.02, 0.05, 0.1, 0.2, 0.4] {
        let (p, _) = pyr.keep_largest(f);
        let (back, _) = synthesize_2d(&p, &spec)?;
        // every frame element is divergence free, so any truncation is too
        println!("{:4.0}%   {:8.4}   {:.1e}", 100.0 * f, error_metrics(&u, &back, 0).l2_relative, divergence_spectral(&back));
    }
    Ok(())
}
