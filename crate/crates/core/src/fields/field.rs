//! Sampled vector fields on periodic grids.

use crate::error::{invalid, Result};
use crate::grid::{fft_nd, to_complex};
use num_complex::Complex64;

/// Two-component field on an n×n periodic grid, row-major with x fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField2D {
    pub n: usize,
    pub domain_length: f64,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

/// Three-component field on an n³ periodic grid, x fastest then y then z.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField3D {
    pub n: usize,
    pub domain_length: f64,
    pub comps: [Vec<f64>; 3],
}

impl VectorField2D {
    pub fn zeros(n: usize) -> Self {
        VectorField2D { n, domain_length: 2.0 * std::f64::consts::PI, u: vec![0.0; n * n], v: vec![0.0; n * n] }
    }

    pub fn new(n: usize, domain_length: f64, u: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        if u.len() != n * n || v.len() != n * n {
            return invalid(format!("component length does not match {n}x{n} grid"));
        }
        if u.iter().chain(&v).any(|x| !x.is_finite()) {
            return invalid("field contains non-finite samples");
        }
        Ok(VectorField2D { n, domain_length, u, v })
    }

    /// Builds a field by sampling `f` at physical positions.
    pub fn from_fn(n: usize, domain_length: f64, f: impl Fn(f64, f64) -> [f64; 2]) -> Self {
        let h = domain_length / n as f64;
        let mut out = VectorField2D { domain_length, ..Self::zeros(n) };
        for iy in 0..n {
            for ix in 0..n {
                let [a, b] = f(ix as f64 * h, iy as f64 * h);
                out.u[iy * n + ix] = a;
                out.v[iy * n + ix] = b;
            }
        }
        out
    }

    pub fn spacing(&self) -> f64 {
        self.domain_length / self.n as f64
    }

    /// Σ over nodes of |u|².
    pub fn energy(&self) -> f64 {
        self.u.iter().chain(&self.v).map(|x| x * x).sum()
    }

    pub fn mean(&self) -> [f64; 2] {
        let k = (self.n * self.n) as f64;
        [self.u.iter().sum::<f64>() / k, self.v.iter().sum::<f64>() / k]
    }

    /// Unnormalised DFTs of both components.
    pub fn spectra(&self) -> [Vec<Complex64>; 2] {
        let shape = [self.n, self.n];
        let mut a = to_complex(&self.u);
        let mut b = to_complex(&self.v);
        fft_nd(&mut a, &shape, false);
        fft_nd(&mut b, &shape, false);
        [a, b]
    }

    /// Inverse of [`spectra`](Self::spectra); returns the field and the largest
    /// imaginary part discarded.
    pub fn from_spectra(n: usize, domain_length: f64, mut spec: [Vec<Complex64>; 2]) -> (Self, f64) {
        let shape = [n, n];
        let scale = 1.0 / (n * n) as f64;
        let mut imag = 0.0f64;
        let mut comps = [Vec::new(), Vec::new()];
        for (c, s) in comps.iter_mut().zip(spec.iter_mut()) {
            fft_nd(s, &shape, true);
            *c = s.iter().map(|z| z.re * scale).collect();
            imag = imag.max(s.iter().map(|z| (z.im * scale).abs()).fold(0.0, f64::max));
        }
        let [u, v] = comps;
        (VectorField2D { n, domain_length, u, v }, imag)
    }

    pub fn add_scaled(&mut self, other: &Self, a: f64) {
        for (x, y) in self.u.iter_mut().zip(&other.u) {
            *x += a * y;
        }
        for (x, y) in self.v.iter_mut().zip(&other.v) {
            *x += a * y;
        }
    }
}

impl VectorField3D {
    pub fn zeros(n: usize) -> Self {
        let z = vec![0.0; n * n * n];
        VectorField3D { n, domain_length: 2.0 * std::f64::consts::PI, comps: [z.clone(), z.clone(), z] }
    }

    pub fn from_fn(n: usize, domain_length: f64, f: impl Fn(f64, f64, f64) -> [f64; 3]) -> Self {
        let h = domain_length / n as f64;
        let mut out = VectorField3D { domain_length, ..Self::zeros(n) };
        for iz in 0..n {
            for iy in 0..n {
                for ix in 0..n {
                    let val = f(ix as f64 * h, iy as f64 * h, iz as f64 * h);
                    let i = (iz * n + iy) * n + ix;
                    for c in 0..3 {
                        out.comps[c][i] = val[c];
                    }
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, other: &Self, a: f64) {
        for (x, y) in self.comps.iter_mut().zip(&other.comps) {
            x.iter_mut().zip(y).for_each(|(p, q)| *p += a * q);
        }
    }

    pub fn energy(&self) -> f64 {
        self.comps.iter().flatten().map(|x| x * x).sum()
    }

    pub fn mean(&self) -> [f64; 3] {
        let k = self.comps[0].len() as f64;
        [0, 1, 2].map(|c| self.comps[c].iter().sum::<f64>() / k)
    }

    pub fn spectra(&self) -> [Vec<Complex64>; 3] {
        let shape = [self.n; 3];
        [0, 1, 2].map(|c| {
            let mut a = to_complex(&self.comps[c]);
            fft_nd(&mut a, &shape, false);
            a
        })
    }

    pub fn from_spectra(n: usize, domain_length: f64, mut spec: [Vec<Complex64>; 3]) -> (Self, f64) {
        let shape = [n; 3];
        let scale = 1.0 / (n * n * n) as f64;
        let mut imag = 0.0f64;
        let mut out = Self::zeros(n);
        out.domain_length = domain_length;
        for (c, s) in spec.iter_mut().enumerate() {
            fft_nd(s, &shape, true);
            out.comps[c] = s.iter().map(|z| z.re * scale).collect();
            imag = imag.max(s.iter().map(|z| (z.im * scale).abs()).fold(0.0, f64::max));
        }
        (out, imag)
    }
}
