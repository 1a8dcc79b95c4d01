//! Closed-form spatial wavelets against the inverse DFT of their Fourier
//! transforms on a large periodic grid.
//!
//! cargo run --release --example spatial_wavelets

use divfree::frame2d::{wavelet_hat_2d, wavelet_spatial_2d, FrameSpec2D};
use divfree::grid::{fft_nd, omega_2d};
use divfree::windows::FrameConfig;
use divfree::Complex64;
use std::f64::consts::PI;

const P: usize = 1024;
const HALF: i64 = 32;

fn main() -> divfree::Result<()> {
    let spec = FrameSpec2D::from_config(&FrameConfig { grid_size: 256, ..FrameConfig::default_2d() })?;
    println!("level orientation  max|psi|   max error (relative)");
    for (j, t) in [(4, 0), (4, 3), (3, 7)] {
        // ψ(x) = (1/2π) ∫ ψ̂(ω) e^{iω·x} dω, sampled on the P-periodic grid
        let mut comps = [vec![Complex64::new(0.0, 0.0); P * P], vec![Complex64::new(0.0, 0.0); P * P]];
        for idx in 0..P * P {
            let h = wavelet_hat_2d(&spec, j, [0, 0], t, omega_2d(idx, P));
            comps[0][idx] = h[0];
            comps[1][idx] = h[1];
        }
        let w = (2.0 * PI / P as f64).powi(2) / (2.0 * PI);
        for c in comps.iter_mut() {
            fft_nd(c, &[P, P], true);
            c.iter_mut().for_each(|z| *z *= w);
        }
        let (mut err, mut peak) = (0.0f64, 0.0f64);
        for y in -HALF..HALF {
            for x in -HALF..HALF {
                let idx = (y.rem_euclid(P as i64) as usize) * P + x.rem_euclid(P as i64) as usize;
                let closed = wavelet_spatial_2d(&spec, j, [0, 0], t, [x as f64, y as f64])?;
                for c in 0..2 {
                    err = err.max((closed[c] - comps[c][idx]).norm());
                    peak = peak.max(closed[c].norm());
                }
            }
        }
        println!("{j:5} {t:11} {peak:10.3e} {:12.3e}", err / peak);
    }
    Ok(())
}
