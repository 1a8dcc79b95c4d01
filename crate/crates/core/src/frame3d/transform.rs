//! DFT-based analysis and synthesis in 3D.
//!
//! A field is split into its three hedgehog components S_a = û·τ_a(ω̄),
//! each carried by its own copy of the scalar frame.

use super::hedgehog::tau;
use super::spec::FrameSpec3D;
use crate::error::{invalid, Result};
use crate::fields::field::VectorField3D;
use crate::frame2d::{Band, SynthesisReport};
use crate::grid::{fft_nd, lattice_index, omega_3d};
use crate::special_fn::sph_harm::sph_harm_all_vec;
use crate::windows::radial::{radial_window, scaling_window};
use num_complex::Complex64;
use rayon::prelude::*;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Coefficients indexed by axis, then level (j − j_min), then orientation.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientPyramid3D {
    pub grid_size: usize,
    pub j_min: i32,
    pub j_max: i32,
    pub scaling: [Band; 3],
    pub wavelets: [Vec<Vec<Band>>; 3],
    pub mean: [f64; 3],
}

impl CoefficientPyramid3D {
    pub fn wavelet(&self, axis: usize, j: i32, t: usize) -> &Band {
        &self.wavelets[axis][(j - self.j_min) as usize][t]
    }

    pub fn bands(&self) -> impl Iterator<Item = &Band> {
        self.scaling.iter().chain(self.wavelets.iter().flatten().flatten())
    }

    pub fn energy(&self) -> f64 {
        self.bands().map(Band::energy).sum()
    }

    /// Energy of the mean in the same units as the coefficients.
    pub fn mean_energy(&self) -> f64 {
        let n3 = self.grid_size.pow(3) as f64;
        self.mean.iter().map(|m| m * m).sum::<f64>() * n3
    }

    pub fn len(&self) -> usize {
        self.bands().map(|b| b.data.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Hedgehog components of the spectrum.
pub fn hedgehog_spectra(field: &VectorField3D) -> [Vec<Complex64>; 3] {
    let n = field.n;
    let u = field.spectra();
    let mut out: [Vec<Complex64>; 3] = std::array::from_fn(|_| vec![ZERO; n * n * n]);
    for i in 1..n * n * n {
        let w = omega_3d(i, n);
        let r = (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sqrt();
        let v = [u[0][i], u[1][i], u[2][i]];
        for (a, o) in out.iter_mut().enumerate() {
            let t = tau(a, w);
            o[i] = (v[0] * t[0] + v[1] * t[1] + v[2] * t[2]) / r;
        }
    }
    out
}

// Per-bin data shared by every family: |ω| and the harmonics of ω̄.
struct Bins {
    rho: Vec<f64>,
    ylm: Vec<Vec<Complex64>>,
}

fn bins(spec: &FrameSpec3D) -> Bins {
    let n = spec.grid_size();
    let deg = spec.window().degree();
    let (rho, ylm) = (0..n * n * n)
        .into_par_iter()
        .map(|i| {
            let w = omega_3d(i, n);
            let r = (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sqrt();
            let y = if deg == 0 || r == 0.0 { Vec::new() } else { sph_harm_all_vec(deg, w) };
            (r, y)
        })
        .unzip();
    Bins { rho, ylm }
}

impl Bins {
    fn gamma(&self, spec: &FrameSpec3D, t: usize, i: usize) -> Complex64 {
        let w = spec.window().rotated(t);
        if self.ylm[i].is_empty() {
            // degree 0: γ = κ_00 y_00
            return w[0] * (0.25 / std::f64::consts::PI).sqrt();
        }
        w.iter().zip(&self.ylm[i]).map(|(a, b)| a * b).sum()
    }
}

#[derive(Clone, Copy, Debug)]
enum Family {
    Scaling(usize),
    Wavelet(usize, i32, usize),
}

impl Family {
    fn all(spec: &FrameSpec3D) -> Vec<Family> {
        let mut v = Vec::new();
        for a in 0..3 {
            v.push(Family::Scaling(a));
            for j in spec.levels() {
                for t in 0..spec.orientations() {
                    v.push(Family::Wavelet(a, j, t));
                }
            }
        }
        v
    }

    fn axis(self) -> usize {
        match self {
            Family::Scaling(a) | Family::Wavelet(a, _, _) => a,
        }
    }

    fn spacing(self, spec: &FrameSpec3D) -> usize {
        match self {
            Family::Scaling(_) => spec.scaling_spacing(),
            Family::Wavelet(_, j, _) => spec.spacing(j),
        }
    }

    fn window(self, spec: &FrameSpec3D, b: &Bins, i: usize) -> Complex64 {
        let rho = b.rho[i];
        match self {
            Family::Scaling(_) => Complex64::new(scaling_window(spec.spacing(spec.j_min()) as f64 * rho), 0.0),
            Family::Wavelet(_, j, t) => {
                let r = radial_window(spec.spacing(j) as f64 * rho);
                if r == 0.0 {
                    ZERO
                } else {
                    b.gamma(spec, t, i) * r
                }
            }
        }
    }
}

fn analyze_family(spec: &FrameSpec3D, fam: Family, b: &Bins, s_hat: &[Complex64]) -> Band {
    let n = spec.grid_size();
    let s = fam.spacing(spec);
    let nl = n / s;
    let mut fold = vec![ZERO; nl * nl * nl];
    for (i, sv) in s_hat.iter().enumerate() {
        if sv.norm_sqr() == 0.0 {
            continue;
        }
        let w = fam.window(spec, b, i);
        if w.norm_sqr() != 0.0 {
            fold[lattice_index(i, n, 3, nl)] += I * sv * w.conj();
        }
    }
    fft_nd(&mut fold, &[nl, nl, nl], true);
    let scale = (s as f64).powf(1.5) / (n * n * n) as f64;
    fold.iter_mut().for_each(|c| *c *= scale);
    Band { size: nl, spacing: s, data: fold }
}

fn synthesize_family(spec: &FrameSpec3D, fam: Family, b: &Bins, band: &Band, acc: &mut [Complex64]) {
    let n = spec.grid_size();
    let nl = band.size;
    if band.data.iter().all(|c| c.norm_sqr() == 0.0) {
        return;
    }
    let mut a = band.data.clone();
    fft_nd(&mut a, &[nl, nl, nl], false);
    let s = (band.spacing as f64).powf(1.5);
    for (i, o) in acc.iter_mut().enumerate() {
        if b.rho[i] == 0.0 {
            continue;
        }
        let w = fam.window(spec, b, i);
        if w.norm_sqr() != 0.0 {
            *o += -I * s * w * a[lattice_index(i, n, 3, nl)];
        }
    }
}

/// Frame coefficients of `field`.
pub fn analyze_3d(field: &VectorField3D, spec: &FrameSpec3D) -> Result<CoefficientPyramid3D> {
    if field.n != spec.grid_size() {
        return invalid(format!("field grid {} does not match frame grid {}", field.n, spec.grid_size()));
    }
    let s_hat = hedgehog_spectra(field);
    let b = bins(spec);
    let fams = Family::all(spec);
    let bands: Vec<Band> = fams.par_iter().map(|f| analyze_family(spec, *f, &b, &s_hat[f.axis()])).collect();
    let mut it = bands.into_iter();
    let mut scaling = Vec::new();
    let mut wavelets = Vec::new();
    for _ in 0..3 {
        scaling.push(it.next().unwrap());
        let mut per_axis = Vec::new();
        for _ in spec.levels() {
            per_axis.push((0..spec.orientations()).map(|_| it.next().unwrap()).collect());
        }
        wavelets.push(per_axis);
    }
    Ok(CoefficientPyramid3D {
        grid_size: spec.grid_size(),
        j_min: spec.j_min(),
        j_max: spec.j_max(),
        scaling: scaling.try_into().unwrap(),
        wavelets: wavelets.try_into().unwrap(),
        mean: field.mean(),
    })
}

fn check_layout(pyr: &CoefficientPyramid3D, spec: &FrameSpec3D) -> Result<()> {
    let ok = pyr.grid_size == spec.grid_size()
        && pyr.j_min == spec.j_min()
        && pyr.j_max == spec.j_max()
        && pyr.scaling.iter().all(|b| b.spacing == spec.scaling_spacing() && b.data.len() == b.size.pow(3))
        && pyr.wavelets.iter().all(|ax| {
            ax.len() == spec.levels().count()
                && ax.iter().zip(spec.levels()).all(|(lv, j)| {
                    lv.len() == spec.orientations()
                        && lv.iter().all(|b| b.spacing == spec.spacing(j) && b.size * b.spacing == spec.grid_size() && b.data.len() == b.size.pow(3))
                })
        });
    if ok {
        Ok(())
    } else {
        invalid("coefficient pyramid does not match the frame layout")
    }
}

/// Field from frame coefficients.
pub fn synthesize_3d(pyr: &CoefficientPyramid3D, spec: &FrameSpec3D) -> Result<(VectorField3D, SynthesisReport)> {
    check_layout(pyr, spec)?;
    let n = spec.grid_size();
    let n3 = n * n * n;
    let b = bins(spec);
    let fams = Family::all(spec);
    let band = |f: Family| match f {
        Family::Scaling(a) => &pyr.scaling[a],
        Family::Wavelet(a, j, t) => pyr.wavelet(a, j, t),
    };
    let acc = fams
        .par_iter()
        .fold(
            || vec![vec![ZERO; n3]; 3],
            |mut acc, f| {
                synthesize_family(spec, *f, &b, band(*f), &mut acc[f.axis()]);
                acc
            },
        )
        .reduce(
            || vec![vec![ZERO; n3]; 3],
            |mut x, y| {
                for (p, q) in x.iter_mut().zip(&y) {
                    p.iter_mut().zip(q).for_each(|(a, b)| *a += b);
                }
                x
            },
        );
    let mut u: [Vec<Complex64>; 3] = std::array::from_fn(|_| vec![ZERO; n3]);
    for i in 1..n3 {
        let w = omega_3d(i, n);
        let r = b.rho[i];
        for (a, s) in acc.iter().enumerate() {
            let t = tau(a, w);
            for c in 0..3 {
                u[c][i] += s[i] * (t[c] / r);
            }
        }
    }
    for c in 0..3 {
        u[c][0] = Complex64::new(pyr.mean[c] * n3 as f64, 0.0);
    }
    let (f, imag) = VectorField3D::from_spectra(n, std::f64::consts::TAU, u);
    Ok((f, SynthesisReport { imag_residual: imag }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::generators::make_eigenfield_3d;
    use crate::fields::leray::divergence_spectral_3d;
    use crate::windows::angular3d::{zonal_window, OrientationSet};

    fn check(spec: &FrameSpec3D) {
        let n = spec.grid_size();
        let mut u = make_eigenfield_3d(n, [1, 2, 1], 1.0).unwrap();
        u.add_scaled(&make_eigenfield_3d(n, [2, 1, 3], 0.4).unwrap(), 1.0);
        for c in &mut u.comps[0] {
            *c += 0.25;
        }
        let pyr = analyze_3d(&u, spec).unwrap();
        let e = u.energy();
        assert!(((pyr.energy() + pyr.mean_energy()) - e).abs() < 1e-12 * e, "{} {}", pyr.energy() + pyr.mean_energy(), e);
        let (back, rep) = synthesize_3d(&pyr, spec).unwrap();
        assert!(rep.imag_residual < 1e-12);
        let err: f64 = (0..3)
            .flat_map(|c| u.comps[c].iter().zip(&back.comps[c]).map(|(a, b)| (a - b).powi(2)))
            .sum::<f64>();
        assert!(err.sqrt() < 1e-12 * e.sqrt());
        assert!(divergence_spectral_3d(&back) < 1e-12);
    }

    #[test]
    fn isotropic_round_trip() {
        check(&FrameSpec3D::isotropic(16, 0, 2).unwrap());
    }

    #[test]
    fn icosahedral_round_trip() {
        let w = zonal_window(&[1.0, 0.8, 0.3], OrientationSet::Icosahedron).unwrap();
        check(&FrameSpec3D::new(16, 0, 2, w).unwrap());
    }

    #[test]
    fn non_tight_window_rejected() {
        let w = zonal_window(&[1.0, 0.8, 0.3], OrientationSet::Octahedron).unwrap();
        assert!(FrameSpec3D::new(16, 0, 2, w).is_err());
    }
}
