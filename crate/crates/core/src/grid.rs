//! Periodic-grid FFT helpers (unnormalised, row-major, x fastest).

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use std::sync::{Arc, Mutex, OnceLock};

fn plan(n: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    static PLANNER: OnceLock<Mutex<FftPlanner<f64>>> = OnceLock::new();
    let mut p = PLANNER.get_or_init(|| Mutex::new(FftPlanner::new())).lock().unwrap();
    if inverse {
        p.plan_fft_inverse(n)
    } else {
        p.plan_fft_forward(n)
    }
}

/// Signed frequency index of bin `k` on an `n`-point grid.
#[inline]
pub fn fftfreq(k: usize, n: usize) -> i64 {
    if k < n.div_ceil(2) {
        k as i64
    } else {
        k as i64 - n as i64
    }
}

/// In-place transform along one axis of a row-major array with `shape`
/// (last axis contiguous).
pub fn fft_axis(data: &mut [Complex64], shape: &[usize], axis: usize, inverse: bool) {
    let n = shape[axis];
    if n <= 1 {
        return;
    }
    let fft = plan(n, inverse);
    let stride: usize = shape[axis + 1..].iter().product();
    if stride == 1 {
        data.par_chunks_mut(n).for_each(|row| fft.process(row));
        return;
    }
    let block = n * stride;
    data.par_chunks_mut(block).for_each(|chunk| {
        let mut line = vec![Complex64::new(0.0, 0.0); n];
        for off in 0..stride {
            for k in 0..n {
                line[k] = chunk[off + k * stride];
            }
            fft.process(&mut line);
            for k in 0..n {
                chunk[off + k * stride] = line[k];
            }
        }
    });
}

/// Unnormalised forward (`inverse = false`) or backward multidimensional FFT.
pub fn fft_nd(data: &mut [Complex64], shape: &[usize], inverse: bool) {
    debug_assert_eq!(data.len(), shape.iter().product::<usize>());
    for axis in 0..shape.len() {
        fft_axis(data, shape, axis, inverse);
    }
}

pub fn to_complex(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

/// Angular frequency vector (rad per grid cell) of a flat bin index.
#[inline]
pub fn omega_2d(idx: usize, n: usize) -> [f64; 2] {
    let s = 2.0 * std::f64::consts::PI / n as f64;
    [fftfreq(idx % n, n) as f64 * s, fftfreq(idx / n, n) as f64 * s]
}

#[inline]
pub fn omega_3d(idx: usize, n: usize) -> [f64; 3] {
    let s = 2.0 * std::f64::consts::PI / n as f64;
    [
        fftfreq(idx % n, n) as f64 * s,
        fftfreq((idx / n) % n, n) as f64 * s,
        fftfreq(idx / (n * n), n) as f64 * s,
    ]
}

/// Flat index on an `nl`-point lattice of the bin `idx` of an `n`-point
/// grid in `dim` dimensions (frequency folded modulo `nl`).
#[inline]
pub fn lattice_index(idx: usize, n: usize, dim: usize, nl: usize) -> usize {
    let (mut out, mut mul, mut rem) = (0, 1, idx);
    for _ in 0..dim {
        out += (rem % n % nl) * mul;
        rem /= n;
        mul *= nl;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_direct_dft_3d() {
        let shape = [3, 4, 5];
        let len = 60;
        let x: Vec<Complex64> = (0..len).map(|i| Complex64::new((i as f64).sin(), (i * i % 7) as f64)).collect();
        let mut y = x.clone();
        fft_nd(&mut y, &shape, false);
        for (k, yk) in y.iter().enumerate() {
            let (k0, k1, k2) = (k / 20, (k / 5) % 4, k % 5);
            let mut s = Complex64::new(0.0, 0.0);
            for (i, xi) in x.iter().enumerate() {
                let (i0, i1, i2) = (i / 20, (i / 5) % 4, i % 5);
                let ph = -2.0 * std::f64::consts::PI
                    * ((k0 * i0) as f64 / 3.0 + (k1 * i1) as f64 / 4.0 + (k2 * i2) as f64 / 5.0);
                s += xi * Complex64::from_polar(1.0, ph);
            }
            assert!((s - yk).norm() < 1e-11);
        }
        fft_nd(&mut y, &shape, true);
        for (a, b) in x.iter().zip(&y) {
            assert!((a * len as f64 - b).norm() < 1e-11);
        }
    }

    #[test]
    fn freq_indices() {
        assert_eq!((0..4).map(|k| fftfreq(k, 4)).collect::<Vec<_>>(), vec![0, 1, -2, -1]);
        assert_eq!((0..5).map(|k| fftfreq(k, 5)).collect::<Vec<_>>(), vec![0, 1, 2, -2, -1]);
    }
}
