//! JSON frame configuration.

use crate::error::{invalid, Result};
use crate::windows::angular2d::Parity;
use crate::windows::angular3d::OrientationSet;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::Path;

fn two() -> usize {
    2
}
fn two_pi() -> f64 {
    2.0 * std::f64::consts::PI
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowConfig2D {
    #[serde(default = "default_parity")]
    pub parity: Parity,
    #[serde(default = "default_order")]
    pub order: usize,
    #[serde(default = "default_orientations")]
    pub orientations: usize,
    #[serde(default = "default_concentration")]
    pub concentration: f64,
    /// Sharpen the angular profile by √2 per finer level.
    #[serde(default)]
    pub parabolic: bool,
}

fn default_parity() -> Parity {
    Parity::Even
}
fn default_order() -> usize {
    4
}
fn default_orientations() -> usize {
    9
}
fn default_concentration() -> f64 {
    2.0
}

impl Default for WindowConfig2D {
    fn default() -> Self {
        WindowConfig2D {
            parity: default_parity(),
            order: default_order(),
            orientations: default_orientations(),
            concentration: default_concentration(),
            parabolic: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowConfig3D {
    /// Zonal coefficients κ_l0, l = 0..=L.
    #[serde(default = "default_zonal")]
    pub zonal: Vec<f64>,
    #[serde(default = "default_set")]
    pub orientation_set: OrientationSet,
}

fn default_zonal() -> Vec<f64> {
    vec![1.0]
}
fn default_set() -> OrientationSet {
    OrientationSet::Pole
}

impl Default for WindowConfig3D {
    fn default() -> Self {
        WindowConfig3D { zonal: default_zonal(), orientation_set: default_set() }
    }
}

/// Everything needed to build a frame.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameConfig {
    #[serde(default = "two")]
    pub dimension: usize,
    pub grid_size: usize,
    #[serde(default)]
    pub j_min: i32,
    pub j_max: i32,
    #[serde(default = "two_pi")]
    pub domain_length: f64,
    #[serde(default)]
    pub window: WindowConfig2D,
    #[serde(default)]
    pub window3d: WindowConfig3D,
}

impl FrameConfig {
    pub fn default_2d() -> Self {
        FrameConfig {
            dimension: 2,
            grid_size: 256,
            j_min: 0,
            j_max: 4,
            domain_length: two_pi(),
            window: WindowConfig2D::default(),
            window3d: WindowConfig3D::default(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: FrameConfig = serde_json::from_str(text)?;
        if c.dimension != 2 && c.dimension != 3 {
            return invalid(format!("dimension {} is neither 2 nor 3", c.dimension));
        }
        Ok(c)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialises")
    }

    /// Short content hash used to key caches and tag containers.
    pub fn hash(&self) -> String {
        short_hash(serde_json::to_string(self).expect("config serialises").as_bytes())
    }
}

pub fn short_hash(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().take(8).map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_defaults() {
        let c = FrameConfig::from_json(r#"{"grid_size": 64, "j_max": 2, "window": {"parity": "odd"}}"#).unwrap();
        assert_eq!(c.window.order, 4);
        assert_eq!(c.window.parity, Parity::Odd);
        let back = FrameConfig::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.hash(), c.hash());
        assert_ne!(FrameConfig::default_2d().hash(), c.hash());
        assert!(FrameConfig::from_json(r#"{"grid_size": 64, "j_max": 2, "bogus": 1}"#).is_err());
        assert!(FrameConfig::from_json(r#"{"dimension": 4, "grid_size": 64, "j_max": 2}"#).is_err());
    }
}
