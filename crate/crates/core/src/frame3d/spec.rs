use crate::error::{invalid, Error, Result};
use crate::special_fn::clebsch::GauntTable;
use crate::windows::angular3d::{validate_tightness_3d, zonal_window, AngularWindow3D, TightnessReport3D};
use crate::windows::config::{short_hash, FrameConfig};
use crate::windows::radial::RadialProfile;
use std::sync::Arc;

pub const TIGHTNESS_TOL_3D: f64 = 1e-10;

/// A validated 3D frame on an N³ periodic grid; same lattice layout as the
/// 2D frame, one window shared by all levels.
#[derive(Clone, Debug)]
pub struct FrameSpec3D {
    grid_size: usize,
    j_min: i32,
    j_max: i32,
    window: AngularWindow3D,
    profile: Arc<RadialProfile>,
    gaunt: Arc<GauntTable>,
    tightness: TightnessReport3D,
    hash: String,
}

impl FrameSpec3D {
    pub fn new(grid_size: usize, j_min: i32, j_max: i32, window: AngularWindow3D) -> Result<Self> {
        if grid_size < 2 || !grid_size.is_power_of_two() {
            return invalid(format!("grid size {grid_size} is not a power of two"));
        }
        if j_max < j_min {
            return invalid("j_max below j_min");
        }
        if grid_size >> (j_max - j_min + 1) as usize == 0 {
            return invalid("too many levels for the grid");
        }
        let gaunt = Arc::new(GauntTable::new(window.degree().max(1))?);
        let tightness = validate_tightness_3d(&window, &gaunt)?;
        if tightness.max_residual > TIGHTNESS_TOL_3D {
            return Err(Error::Validation(format!(
                "3D window is not tight (max residual {:.3e})",
                tightness.max_residual
            )));
        }
        let mut key = format!("3d:{grid_size}:{j_min}:{j_max}");
        for d in window.orientations() {
            key.push_str(&format!(":{:x},{:x}", d.theta.to_bits(), d.phi.to_bits()));
        }
        for c in window.kappa() {
            key.push_str(&format!(";{:x},{:x}", c.re.to_bits(), c.im.to_bits()));
        }
        Ok(FrameSpec3D {
            grid_size,
            j_min,
            j_max,
            window,
            profile: Arc::new(RadialProfile::default()),
            gaunt,
            tightness,
            hash: short_hash(key.as_bytes()),
        })
    }

    pub fn isotropic(grid_size: usize, j_min: i32, j_max: i32) -> Result<Self> {
        Self::new(grid_size, j_min, j_max, AngularWindow3D::isotropic())
    }

    pub fn from_config(c: &FrameConfig) -> Result<Self> {
        if c.dimension != 3 {
            return invalid("configuration is not three-dimensional");
        }
        let w = zonal_window(&c.window3d.zonal, c.window3d.orientation_set)?;
        let mut s = Self::new(c.grid_size, c.j_min, c.j_max, w)?;
        s.hash = c.hash();
        Ok(s)
    }

    pub fn grid_size(&self) -> usize {
        self.grid_size
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

    pub fn window(&self) -> &AngularWindow3D {
        &self.window
    }

    pub fn orientations(&self) -> usize {
        self.window.count()
    }

    pub fn profile(&self) -> &RadialProfile {
        &self.profile
    }

    pub fn gaunt(&self) -> &GauntTable {
        &self.gaunt
    }

    pub fn tightness(&self) -> &TightnessReport3D {
        &self.tightness
    }

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
