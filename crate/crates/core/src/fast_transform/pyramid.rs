//! Forward and inverse pyramid recursions.
//!
//! Forward, from the scaling coefficients one level above j_max:
//!   w_j,t = β_t(s_{j+1}) + Σ_t' γ_{t,t'}(w_{j+1,t'})   (γ term for j < j_max)
//!   s_j   = α(s_{j+1})
//! Inverse:
//!   s_{j+1} = α*(s_j) + Σ_t β_t*(w_j,t) + Σ_t δ_t(w_{j+1,t})   (δ term for j < j_max)
//! where * is the adjoint filter.

use super::bank::FilterBank;
use super::conv::{accumulate_sparse, accumulate_spectral, filter_spectrum, from_spectrum, prefer_sparse, spectrum, Mode};
use super::taps::{TapKind, Taps};
use crate::error::{invalid, Result};
use crate::fields::field::VectorField2D;
use crate::frame2d::{finest_scaling_2d, synthesize_finest_2d, Band, CoefficientPyramid2D, FrameSpec2D, SynthesisReport};
use num_complex::Complex64;
use rayon::prelude::*;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

fn spacing(bank: &FilterBank, j: i32) -> usize {
    1 << (bank.j_max() - j)
}

/// Wavelet and coarse scaling coefficients from the finest scaling
/// coefficients (unit lattice, grid size of the bank). The mean is zero.
pub fn fwt_forward(finest: &Band, bank: &FilterBank) -> Result<CoefficientPyramid2D> {
    let n = bank.grid_size();
    if finest.size != n || finest.spacing != 1 || finest.data.len() != n * n {
        return invalid(format!("finest band must be {n}×{n} on the unit lattice"));
    }
    let mut s_hat = spectrum(&finest.data, n);
    let mut prev: Vec<Vec<Complex64>> = Vec::new();
    let mut levels: Vec<Vec<Vec<Complex64>>> = Vec::new();
    for j in (bank.j_min()..=bank.j_max()).rev() {
        let nl = n / spacing(bank, j);
        let m = bank.orientations(j);
        let w_hat: Vec<Vec<Complex64>> = (0..m)
            .into_par_iter()
            .map(|t| {
                let mut acc = vec![ZERO; nl * nl];
                let f = filter_spectrum(bank.taps(j, TapKind::Beta { t }), nl);
                accumulate_spectral(Mode::Same, &s_hat, nl, &f, &mut acc);
                for (t_prime, w) in prev.iter().enumerate() {
                    let f = filter_spectrum(bank.taps(j, TapKind::Gamma { t, t_prime }), 2 * nl);
                    accumulate_spectral(Mode::Down, w, 2 * nl, &f, &mut acc);
                }
                acc
            })
            .collect();
        let f = filter_spectrum(bank.taps(j, TapKind::Alpha), nl);
        let mut next = vec![ZERO; nl * nl / 4];
        accumulate_spectral(Mode::Down, &s_hat, nl, &f, &mut next);
        s_hat = next;
        levels.push(w_hat.clone());
        prev = w_hat;
    }
    levels.reverse();
    let wavelets = levels
        .into_iter()
        .zip(bank.j_min()..=bank.j_max())
        .map(|(lv, j)| {
            let s = spacing(bank, j);
            lv.into_par_iter().map(|w| Band { size: n / s, spacing: s, data: from_spectrum(w, n / s) }).collect()
        })
        .collect();
    let s = 2 * spacing(bank, bank.j_min());
    Ok(CoefficientPyramid2D {
        grid_size: n,
        j_min: bank.j_min(),
        j_max: bank.j_max(),
        scaling: Band { size: n / s, spacing: s, data: from_spectrum(s_hat, n / s) },
        wavelets,
        mean: [0.0; 2],
    })
}

// One output lattice worth of contributions, each routed through either the
// FFT path or the direct scatter over nonzero inputs.
struct Accumulator {
    n: usize,
    spectral: Vec<Complex64>,
    spatial: Vec<Complex64>,
    touched_spectral: bool,
}

impl Accumulator {
    fn new(n: usize) -> Self {
        Accumulator { n, spectral: vec![ZERO; n * n], spatial: vec![ZERO; n * n], touched_spectral: false }
    }

    fn add(&mut self, mode: Mode, input: &[Complex64], n_in: usize, taps: &Taps) {
        if input.iter().all(|c| c.norm_sqr() == 0.0) {
            return;
        }
        if prefer_sparse(mode, input, n_in, taps) {
            accumulate_sparse(mode, input, n_in, taps, &mut self.spatial);
        } else {
            let conv_n = if mode == Mode::Up { 2 * n_in } else { n_in };
            let f = filter_spectrum(taps, conv_n);
            accumulate_spectral(mode, &spectrum(input, n_in), n_in, &f, &mut self.spectral);
            self.touched_spectral = true;
        }
    }

    fn finish(self) -> Vec<Complex64> {
        let mut out = self.spatial;
        if self.touched_spectral {
            for (o, v) in out.iter_mut().zip(from_spectrum(self.spectral, self.n)) {
                *o += v;
            }
        }
        out
    }
}

fn check_pyramid(pyr: &CoefficientPyramid2D, bank: &FilterBank) -> Result<()> {
    let n = bank.grid_size();
    let ok = pyr.grid_size == n
        && pyr.j_min == bank.j_min()
        && pyr.j_max == bank.j_max()
        && pyr.scaling.size * 2 * spacing(bank, bank.j_min()) == n
        && pyr.wavelets.len() == (bank.j_max() - bank.j_min() + 1) as usize
        && (bank.j_min()..=bank.j_max()).all(|j| {
            let l = &pyr.wavelets[(j - bank.j_min()) as usize];
            l.len() == bank.orientations(j) && l.iter().all(|b| b.size * spacing(bank, j) == n && b.data.len() == b.size * b.size)
        });
    if ok {
        Ok(())
    } else {
        invalid("pyramid layout does not match the filter bank")
    }
}

/// Finest scaling coefficients from a pyramid. Zero inputs are skipped and
/// sparse bands are scattered directly.
pub fn fwt_inverse(pyr: &CoefficientPyramid2D, bank: &FilterBank) -> Result<Band> {
    check_pyramid(pyr, bank)?;
    let n = bank.grid_size();
    let mut s = pyr.scaling.data.clone();
    for j in bank.j_min()..=bank.j_max() {
        let nl = n / spacing(bank, j);
        let mut acc = Accumulator::new(nl);
        acc.add(Mode::Up, &s, nl / 2, &bank.taps(j, TapKind::Alpha).adjoint());
        for (t, w) in pyr.wavelet_level(j).iter().enumerate() {
            acc.add(Mode::Same, &w.data, nl, &bank.taps(j, TapKind::Beta { t }).adjoint());
        }
        if j < bank.j_max() {
            for (t, w) in pyr.wavelet_level(j + 1).iter().enumerate() {
                acc.add(Mode::Down, &w.data, 2 * nl, bank.taps(j + 1, TapKind::Delta { t }));
            }
        }
        s = acc.finish();
    }
    Ok(Band { size: n, spacing: 1, data: s })
}

/// Field → finest coefficients (DFT path, once) → pyramid.
pub fn fwt_analyze(field: &VectorField2D, spec: &FrameSpec2D, bank: &FilterBank) -> Result<CoefficientPyramid2D> {
    if !bank.matches(spec) {
        return invalid("filter bank was built for a different frame");
    }
    let mut p = fwt_forward(&finest_scaling_2d(field, spec)?, bank)?;
    p.mean = field.mean();
    Ok(p)
}

/// Pyramid → finest coefficients → field.
pub fn fwt_synthesize(pyr: &CoefficientPyramid2D, spec: &FrameSpec2D, bank: &FilterBank) -> Result<(VectorField2D, SynthesisReport)> {
    if !bank.matches(spec) {
        return invalid("filter bank was built for a different frame");
    }
    synthesize_finest_2d(&fwt_inverse(pyr, bank)?, pyr.mean, spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{error_metrics, make_eigenfield, EigenfieldRecipe};
    use crate::frame2d::analyze_2d;

    fn discrepancy(radius: usize) -> (f64, f64) {
        let spec = FrameSpec2D::isotropic(64, 0, 3).unwrap();
        let bank = FilterBank::build(&spec, radius).unwrap();
        let u = make_eigenfield(&EigenfieldRecipe::single(3, 2, 1.0), 64).unwrap();
        let fast = fwt_analyze(&u, &spec, &bank).unwrap();
        let dft = analyze_2d(&u, &spec).unwrap();
        let scale = dft.bands().flat_map(|b| b.data.iter()).map(|c| c.norm()).fold(0.0, f64::max);
        let diff = fast
            .bands()
            .zip(dft.bands())
            .flat_map(|(a, b)| a.data.iter().zip(&b.data).map(|(x, y)| (x - y).norm()))
            .fold(0.0, f64::max);
        let (back, _) = fwt_synthesize(&fast, &spec, &bank).unwrap();
        (diff / scale, error_metrics(&u, &back, 0).l2_relative)
    }

    #[test]
    fn converges_to_dft_path() {
        let (c16, r16) = discrepancy(16);
        let (c48, r48) = discrepancy(48);
        assert!(c48 < c16 && r48 < r16);
        assert!(c48 < 5e-3 && r48 < 2e-3, "{c48} {r48}");
    }

    #[test]
    fn zero_in_zero_out() {
        let spec = FrameSpec2D::isotropic(16, 0, 1).unwrap();
        let bank = FilterBank::build(&spec, 4).unwrap();
        let p = fwt_forward(&Band::zeros(16, 1, 2), &bank).unwrap();
        assert_eq!(p.energy(), 0.0);
        assert_eq!(fwt_inverse(&p, &bank).unwrap().energy(), 0.0);
        assert!(fwt_forward(&Band::zeros(8, 1, 2), &bank).is_err());
    }
}
