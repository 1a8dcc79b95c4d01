use crate::error::{invalid, Error, Result};
use crate::windows::angular2d::{make_angular_window_2d, validate_tightness_2d, AngularWindow2D, Parity};
use crate::windows::config::{short_hash, FrameConfig};
use crate::windows::radial::RadialProfile;
use std::sync::Arc;

/// Tightness residual above which a window is rejected.
pub const TIGHTNESS_TOL: f64 = 1e-12;

/// A validated 2D frame on an N×N periodic grid.
///
/// Level j ∈ [j_min, j_max] samples its wavelets on a lattice of spacing
/// 2^(j_max − j) grid cells, so the finest level lives on the grid itself.
/// The scaling functions sit on a lattice twice as coarse as level j_min.
#[derive(Clone, Debug)]
pub struct FrameSpec2D {
    grid_size: usize,
    domain_length: f64,
    j_min: i32,
    j_max: i32,
    windows: Vec<AngularWindow2D>,
    profile: Arc<RadialProfile>,
    hash: String,
}

impl FrameSpec2D {
    pub fn new(grid_size: usize, j_min: i32, j_max: i32, windows: Vec<AngularWindow2D>) -> Result<Self> {
        if grid_size < 2 || !grid_size.is_power_of_two() {
            return invalid(format!("grid size {grid_size} is not a power of two"));
        }
        if j_max < j_min {
            return invalid("j_max below j_min");
        }
        let levels = (j_max - j_min + 1) as usize;
        if grid_size >> levels == 0 {
            return invalid(format!("{levels} levels leave no scaling lattice on a {grid_size} grid"));
        }
        if windows.len() != levels {
            return invalid(format!("{} windows for {levels} levels", windows.len()));
        }
        for (i, w) in windows.iter().enumerate() {
            let r = validate_tightness_2d(w);
            if r.residual > TIGHTNESS_TOL {
                return Err(Error::Validation(format!(
                    "window at level {} is not tight (residual {:.3e})",
                    j_min + i as i32,
                    r.residual
                )));
            }
        }
        let mut key = format!("{grid_size}:{j_min}:{j_max}");
        for w in &windows {
            key.push_str(&format!(":{}:", w.orientations()));
            for c in w.coefficients() {
                key.push_str(&format!("{:x},{:x};", c.re.to_bits(), c.im.to_bits()));
            }
        }
        Ok(FrameSpec2D {
            grid_size,
            domain_length: 2.0 * std::f64::consts::PI,
            j_min,
            j_max,
            windows,
            profile: Arc::new(RadialProfile::default()),
            hash: short_hash(key.as_bytes()),
        })
    }

    pub fn isotropic(grid_size: usize, j_min: i32, j_max: i32) -> Result<Self> {
        let n = (j_max - j_min + 1).max(0) as usize;
        Self::new(grid_size, j_min, j_max, vec![AngularWindow2D::isotropic(); n])
    }

    /// Same window at every level.
    pub fn uniform(grid_size: usize, j_min: i32, j_max: i32, window: AngularWindow2D) -> Result<Self> {
        let n = (j_max - j_min + 1).max(0) as usize;
        Self::new(grid_size, j_min, j_max, vec![window; n])
    }

    pub fn from_config(c: &FrameConfig) -> Result<Self> {
        if c.dimension != 2 {
            return invalid("configuration is not two-dimensional");
        }
        let mut windows = Vec::new();
        for j in c.j_min..=c.j_max {
            let w = &c.window;
            let win = if w.parity == Parity::Isotropic {
                AngularWindow2D::isotropic()
            } else {
                let conc = if w.parabolic {
                    w.concentration * 2f64.powf(0.5 * j as f64)
                } else {
                    w.concentration
                };
                make_angular_window_2d(w.parity, w.order, w.orientations, conc)?
            };
            windows.push(win);
        }
        let mut s = Self::new(c.grid_size, c.j_min, c.j_max, windows)?;
        s.domain_length = c.domain_length;
        s.hash = c.hash();
        Ok(s)
    }

    pub fn grid_size(&self) -> usize {
        self.grid_size
    }

    pub fn domain_length(&self) -> f64 {
        self.domain_length
    }

    pub fn j_min(&self) -> i32 {
        self.j_min
    }

    pub fn j_max(&self) -> i32 {
        self.j_max
    }

    pub fn levels(&self) -> std::ops::RangeInclusive<i32> {
        self.j_min..=self.j_max
    }

    pub fn window(&self, j: i32) -> &AngularWindow2D {
        &self.windows[(j - self.j_min) as usize]
    }

    pub fn orientations(&self, j: i32) -> usize {
        self.window(j).orientations()
    }

    pub fn profile(&self) -> &RadialProfile {
        &self.profile
    }

    /// Wavelet lattice spacing of level j, in grid cells.
    pub fn spacing(&self, j: i32) -> usize {
        1usize << (self.j_max - j)
    }

    pub fn scaling_spacing(&self) -> usize {
        2 * self.spacing(self.j_min)
    }

    pub fn hash(&self) -> &str {
        &self.hash
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn rejects_bad_specs() {
        assert!(FrameSpec2D::isotropic(48, 0, 2).is_err());
        assert!(FrameSpec2D::isotropic(8, 0, 3).is_err());
        assert!(FrameSpec2D::isotropic(8, 0, 2).is_ok());
        let c: Vec<Complex64> = (0..9).map(|_| Complex64::new(1.0 / 24f64.sqrt(), 0.0)).collect();
        let broken = AngularWindow2D::from_coefficients(c, 8).unwrap();
        assert!(matches!(FrameSpec2D::uniform(64, 0, 1, broken), Err(Error::Validation(_))));
    }

    #[test]
    fn lattice_geometry() {
        let s = FrameSpec2D::from_config(&FrameConfig::default_2d()).unwrap();
        assert_eq!(s.spacing(4), 1);
        assert_eq!(s.spacing(0), 16);
        assert_eq!(s.scaling_spacing(), 32);
        assert_eq!(s.orientations(2), 9);
    }
}
