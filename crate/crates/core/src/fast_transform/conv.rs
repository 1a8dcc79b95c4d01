//! Periodic lattice convolutions used by the pyramid.
//!
//! Same: out[k] = Σ in[k'] τ[k − k']
//! Down: out[k] = Σ in[k'] τ[2k − k']   (output lattice half as fine)
//! Up:   out[k] = Σ in[k'] τ[k − 2k']   (output lattice twice as fine)

use super::taps::Taps;
use crate::grid::fft_nd;
use num_complex::Complex64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Same,
    Down,
    Up,
}

impl Mode {
    pub fn output_size(self, n_in: usize) -> usize {
        match self {
            Mode::Same => n_in,
            Mode::Down => n_in / 2,
            Mode::Up => 2 * n_in,
        }
    }

    /// Lattice on which the filter acts.
    fn conv_size(self, n_in: usize) -> usize {
        match self {
            Mode::Up => 2 * n_in,
            _ => n_in,
        }
    }
}

/// DFT of the taps wrapped onto an n×n periodic lattice.
pub(crate) fn filter_spectrum(taps: &Taps, n: usize) -> Vec<Complex64> {
    let mut w = vec![Complex64::new(0.0, 0.0); n * n];
    let ni = n as i64;
    for (m, v) in taps.iter() {
        let x = m[0].rem_euclid(ni) as usize;
        let y = m[1].rem_euclid(ni) as usize;
        w[y * n + x] += v;
    }
    fft_nd(&mut w, &[n, n], false);
    w
}

pub(crate) fn spectrum(data: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut a = data.to_vec();
    fft_nd(&mut a, &[n, n], false);
    a
}

/// Inverse of [`spectrum`].
pub(crate) fn from_spectrum(mut a: Vec<Complex64>, n: usize) -> Vec<Complex64> {
    fft_nd(&mut a, &[n, n], true);
    let s = 1.0 / (n * n) as f64;
    a.iter_mut().for_each(|c| *c *= s);
    a
}

/// Accumulates the spectrum of the convolution into `out` (output lattice).
/// `filt` is the filter spectrum on the convolution lattice.
pub(crate) fn accumulate_spectral(mode: Mode, input: &[Complex64], n_in: usize, filt: &[Complex64], out: &mut [Complex64]) {
    match mode {
        Mode::Same => {
            for ((o, a), f) in out.iter_mut().zip(input).zip(filt) {
                *o += a * f;
            }
        }
        Mode::Down => {
            let h = n_in / 2;
            for qy in 0..h {
                for qx in 0..h {
                    let mut s = Complex64::new(0.0, 0.0);
                    for py in [qy, qy + h] {
                        for px in [qx, qx + h] {
                            let p = py * n_in + px;
                            s += input[p] * filt[p];
                        }
                    }
                    out[qy * h + qx] += 0.25 * s;
                }
            }
        }
        Mode::Up => {
            let n = 2 * n_in;
            for py in 0..n {
                for px in 0..n {
                    let p = py * n + px;
                    out[p] += input[(py % n_in) * n_in + px % n_in] * filt[p];
                }
            }
        }
    }
}

/// Direct scatter of the nonzero inputs; accumulates in the spatial domain.
pub(crate) fn accumulate_sparse(mode: Mode, input: &[Complex64], n_in: usize, taps: &Taps, out: &mut [Complex64]) {
    let n_out = mode.output_size(n_in);
    let (ni, no) = (n_in as i64, n_out as i64);
    for (idx, a) in input.iter().enumerate() {
        if a.norm_sqr() == 0.0 {
            continue;
        }
        let k = [(idx % n_in) as i64, (idx / n_in) as i64];
        for (m, v) in taps.iter() {
            let target = match mode {
                Mode::Same => [(k[0] + m[0]).rem_euclid(no), (k[1] + m[1]).rem_euclid(no)],
                Mode::Up => [(2 * k[0] + m[0]).rem_euclid(no), (2 * k[1] + m[1]).rem_euclid(no)],
                Mode::Down => {
                    let s = [(k[0] + m[0]).rem_euclid(ni), (k[1] + m[1]).rem_euclid(ni)];
                    if s[0] % 2 == 1 || s[1] % 2 == 1 {
                        continue;
                    }
                    [s[0] / 2, s[1] / 2]
                }
            };
            out[(target[1] * no + target[0]) as usize] += a * v;
        }
    }
}

/// Whether the scatter path is cheaper than the FFT path for this input.
pub(crate) fn prefer_sparse(mode: Mode, input: &[Complex64], n_in: usize, taps: &Taps) -> bool {
    let nnz = input.iter().filter(|c| c.norm_sqr() != 0.0).count();
    let n = mode.conv_size(n_in);
    let fft_cost = (n * n) as f64 * (2.0 * (n as f64).log2() + 4.0) * 4.0;
    let mut scatter = (nnz * taps.len()) as f64;
    if mode == Mode::Down {
        scatter *= 0.5;
    }
    scatter < fft_cost
}

/// Convolution of a single n_in×n_in array (FFT path).
pub fn convolve(mode: Mode, input: &[Complex64], n_in: usize, taps: &Taps) -> Vec<Complex64> {
    let n_out = mode.output_size(n_in);
    let f = filter_spectrum(taps, mode.conv_size(n_in));
    let mut acc = vec![Complex64::new(0.0, 0.0); n_out * n_out];
    accumulate_spectral(mode, &spectrum(input, n_in), n_in, &f, &mut acc);
    from_spectrum(acc, n_out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn taps(radius: usize, seed: u64) -> Taps {
        let w = 2 * radius + 1;
        let values = (0..w * w)
            .map(|i| {
                let x = ((i as u64 * 2654435761 + seed) % 1000) as f64 / 1000.0 - 0.5;
                Complex64::new(x, 0.3 * x * x)
            })
            .collect();
        Taps { radius, values }
    }

    fn brute(mode: Mode, input: &[Complex64], n_in: usize, t: &Taps) -> Vec<Complex64> {
        let n_out = mode.output_size(n_in);
        let mut out = vec![Complex64::new(0.0, 0.0); n_out * n_out];
        for ky in 0..n_out as i64 {
            for kx in 0..n_out as i64 {
                for (idx, a) in input.iter().enumerate() {
                    let kp = [(idx % n_in) as i64, (idx / n_in) as i64];
                    let (m, per) = match mode {
                        Mode::Same => ([kx - kp[0], ky - kp[1]], n_in as i64),
                        Mode::Down => ([2 * kx - kp[0], 2 * ky - kp[1]], n_in as i64),
                        Mode::Up => ([kx - 2 * kp[0], ky - 2 * kp[1]], n_out as i64),
                    };
                    // periodic: sum over all images of the offset
                    for (mm, v) in t.iter() {
                        if (mm[0] - m[0]).rem_euclid(per) == 0 && (mm[1] - m[1]).rem_euclid(per) == 0 {
                            out[(ky * n_out as i64 + kx) as usize] += a * v;
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn fft_and_scatter_match_direct_sums() {
        let n = 8;
        let input: Vec<Complex64> =
            (0..n * n).map(|i| if i % 3 == 0 { Complex64::new(i as f64 * 0.1, -0.2) } else { Complex64::new(0.0, 0.0) }).collect();
        for mode in [Mode::Same, Mode::Down, Mode::Up] {
            // radius wider than the lattice exercises the wrap-around
            let t = taps(5, 17);
            let want = brute(mode, &input, n, &t);
            let got = convolve(mode, &input, n, &t);
            let mut sp = vec![Complex64::new(0.0, 0.0); want.len()];
            accumulate_sparse(mode, &input, n, &t, &mut sp);
            for i in 0..want.len() {
                assert!((want[i] - got[i]).norm() < 1e-12, "{mode:?}");
                assert!((want[i] - sp[i]).norm() < 1e-12, "{mode:?}");
            }
        }
    }
}
