//! FFT-free pyramid: build a filter bank, inspect taps, and compare the
//! truncated transform against the DFT transform at several radii.
//!
//! cargo run --release --example fast_transform
//!
//! Set DIVFREE_CACHE_DIR to keep built banks between runs.

use divfree::fast_transform::{compute_taps, fwt_analyze, fwt_synthesize, FilterBank, TapKind};
use divfree::fields::{error_metrics, make_eigenfield, EigenfieldRecipe};
use divfree::frame2d::{analyze_2d, FrameSpec2D};
use divfree::windows::FrameConfig;
use std::time::Instant;

fn main() -> divfree::Result<()> {
    let spec = FrameSpec2D::from_config(&FrameConfig::default_2d())?;

    let beta = compute_taps(&spec, 4, TapKind::Beta { t: 0 }, 3)?;
    println!("beta taps, level 4, orientation 0, row m_y = 0:");
    for mx in -3..=3 {
        let v = beta.get([mx, 0]).unwrap();
        println!("  m_x = {mx:2}: {:+.6e} {:+.6e}i", v.re, v.im);
    }

    let t = Instant::now();
    let bank = FilterBank::cached(&spec, 75)?;
    println!("bank: radius {}, {} distinct filters, {:.2?}", bank.radius(), bank.template_count(), t.elapsed());

    let u = make_eigenfield(&EigenfieldRecipe::canonical(), spec.grid_size())?;
    let exact = analyze_2d(&u, &spec)?;
    let scale = exact.bands().flat_map(|b| b.data.iter()).map(|c| c.norm()).fold(0.0, f64::max);
    println!("radius  coef error   round-trip L2   Linf/max|u|");
    for r in [10, 20, 40, 75] {
        let b = bank.truncated(r)?;
        let fast = fwt_analyze(&u, &spec, &b)?;
        let d = fast
            .bands()
            .zip(exact.bands())
            .flat_map(|(a, e)| a.data.iter().zip(&e.data).map(|(x, y)| (x - y).norm()))
            .fold(0.0, f64::max);
        let (back, _) = fwt_synthesize(&fast, &spec, &b)?;
        let m = error_metrics(&u, &back, 0);
        println!("{r:6}  {:10.2e}   {:13.2e}   {:11.2e}", d / scale, m.l2_relative, m.linf_relative);
    }
    Ok(())
}
