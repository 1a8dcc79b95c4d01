//! Filter banks: every tap set the pyramid needs for one frame.

use super::taps::{angular, RadialTable, Radial, TapKind, Taps};
use crate::error::{invalid, Error, Result};
use crate::fields::container::{complex_to_f64, decode, encode, f64_to_complex, write_file};
use crate::frame2d::FrameSpec2D;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::path::PathBuf;

/// Directory for cached filter banks; unset disables the disk cache.
pub const CACHE_ENV: &str = "DIVFREE_CACHE_DIR";

/// Default truncation radius (151 taps per axis).
pub const DEFAULT_RADIUS: usize = 75;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct Layout {
    spec_hash: String,
    grid_size: usize,
    j_min: i32,
    j_max: i32,
    radius: usize,
    alpha: usize,
    /// [j − j_min][t]
    beta: Vec<Vec<usize>>,
    /// [j − j_min][t][t'], j < j_max
    gamma: Vec<Vec<Vec<usize>>>,
    /// [j − j_min][t]; empty at j_min, which never needs it
    delta: Vec<Vec<usize>>,
}

/// Truncated taps α, β_t, γ_{t,t'}, δ_t for every level of a frame.
/// Filters that coincide across levels are stored once.
#[derive(Clone, Debug, PartialEq)]
pub struct FilterBank {
    layout: Layout,
    templates: Vec<Taps>,
}

impl FilterBank {
    pub fn build(spec: &FrameSpec2D, radius: usize) -> Result<Self> {
        if radius == 0 {
            return invalid("truncation radius must be positive");
        }
        let mut keys: HashMap<(Radial, Vec<u64>), usize> = HashMap::new();
        let mut requests: Vec<(Radial, Vec<Complex64>)> = Vec::new();
        let mut intern = |kind: TapKind, j: i32| -> Result<usize> {
            let c = angular(spec, j, kind)?;
            let key = (kind.radial(), c.iter().flat_map(|z| [z.re.to_bits(), z.im.to_bits()]).collect());
            Ok(*keys.entry(key).or_insert_with(|| {
                requests.push((kind.radial(), c));
                requests.len() - 1
            }))
        };
        let alpha = intern(TapKind::Alpha, spec.j_min())?;
        let (mut beta, mut gamma, mut delta) = (Vec::new(), Vec::new(), Vec::new());
        for j in spec.levels() {
            let m = spec.orientations(j);
            beta.push((0..m).map(|t| intern(TapKind::Beta { t }, j)).collect::<Result<Vec<_>>>()?);
            if j < spec.j_max() {
                let m1 = spec.orientations(j + 1);
                gamma.push(
                    (0..m)
                        .map(|t| (0..m1).map(|t_prime| intern(TapKind::Gamma { t, t_prime }, j)).collect())
                        .collect::<Result<Vec<_>>>()?,
                );
            }
            delta.push(if j > spec.j_min() {
                (0..m).map(|t| intern(TapKind::Delta { t }, j)).collect::<Result<Vec<_>>>()?
            } else {
                Vec::new()
            });
        }
        let mut orders = [0usize; 4];
        for (r, c) in &requests {
            let o = &mut orders[*r as usize];
            *o = (*o).max((c.len() - 1) / 2);
        }
        let table = RadialTable::new(radius, orders)?;
        let templates = requests.iter().map(|(r, c)| table.taps(*r, c, radius)).collect::<Result<Vec<_>>>()?;
        Ok(FilterBank {
            layout: Layout {
                spec_hash: spec.hash().to_string(),
                grid_size: spec.grid_size(),
                j_min: spec.j_min(),
                j_max: spec.j_max(),
                radius,
                alpha,
                beta,
                gamma,
                delta,
            },
            templates,
        })
    }

    /// Loads the bank from the cache directory named by [`CACHE_ENV`], or
    /// builds it and stores it there.
    pub fn cached(spec: &FrameSpec2D, radius: usize) -> Result<Self> {
        let Some(dir) = std::env::var_os(CACHE_ENV) else {
            return Self::build(spec, radius);
        };
        let path = PathBuf::from(dir).join(format!("bank-{}-{}-r{radius}.bin", spec.hash(), spec.grid_size()));
        if let Ok(bytes) = std::fs::read(&path) {
            if let Ok(b) = Self::from_bytes(&bytes) {
                if b.matches(spec) && b.radius() == radius {
                    return Ok(b);
                }
            }
        }
        let b = Self::build(spec, radius)?;
        write_file(&path, &b.to_bytes())?;
        Ok(b)
    }

    pub fn radius(&self) -> usize {
        self.layout.radius
    }

    pub fn spec_hash(&self) -> &str {
        &self.layout.spec_hash
    }

    pub fn grid_size(&self) -> usize {
        self.layout.grid_size
    }

    pub fn j_min(&self) -> i32 {
        self.layout.j_min
    }

    pub fn j_max(&self) -> i32 {
        self.layout.j_max
    }

    pub fn orientations(&self, j: i32) -> usize {
        self.layout.beta[(j - self.layout.j_min) as usize].len()
    }

    /// Taps per filter.
    pub fn tap_count(&self) -> usize {
        (2 * self.radius() + 1).pow(2)
    }

    /// Number of distinct filters stored.
    pub fn template_count(&self) -> usize {
        self.templates.len()
    }

    pub fn matches(&self, spec: &FrameSpec2D) -> bool {
        self.layout.spec_hash == spec.hash()
            && self.layout.grid_size == spec.grid_size()
            && self.layout.j_min == spec.j_min()
            && self.layout.j_max == spec.j_max()
    }

    fn lvl(&self, j: i32) -> usize {
        (j - self.layout.j_min) as usize
    }

    fn index(&self, j: i32, kind: TapKind) -> usize {
        let l = self.lvl(j);
        match kind {
            TapKind::Alpha => self.layout.alpha,
            TapKind::Beta { t } => self.layout.beta[l][t],
            TapKind::Gamma { t, t_prime } => self.layout.gamma[l][t][t_prime],
            TapKind::Delta { t } => self.layout.delta[l][t],
        }
    }

    /// Taps of one filter; panics on indices outside the bank.
    pub fn taps(&self, j: i32, kind: TapKind) -> &Taps {
        &self.templates[self.index(j, kind)]
    }

    /// The same bank with a smaller truncation radius.
    pub fn truncated(&self, radius: usize) -> Result<Self> {
        if radius == 0 {
            return invalid("truncation radius must be positive");
        }
        let templates = self.templates.iter().map(|t| t.truncated(radius)).collect::<Result<Vec<_>>>()?;
        Ok(FilterBank { layout: Layout { radius, ..self.layout.clone() }, templates })
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut data = Vec::with_capacity(2 * self.templates.len() * self.tap_count());
        for t in &self.templates {
            complex_to_f64(&t.values, &mut data);
        }
        let meta = serde_json::json!({
            "layout": self.layout,
            "templates": self.templates.len(),
        });
        let shape = [self.templates.len(), self.tap_count(), 2];
        encode("filterbank", &shape, Some(&self.layout.spec_hash), meta, &data)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let (meta, data) = decode(bytes, "filterbank")?;
        let layout: Layout = serde_json::from_value(meta.get("layout").cloned().unwrap_or_default())
            .map_err(|e| Error::Container(format!("bad filter bank layout: {e}")))?;
        let count = meta.get("templates").and_then(|v| v.as_u64()).unwrap_or(0) as usize;
        let per = 2 * (2 * layout.radius + 1).pow(2);
        if data.len() != count * per {
            return Err(Error::Container("filter bank payload does not match its layout".into()));
        }
        let templates = data.chunks_exact(per).map(|c| Taps { radius: layout.radius, values: f64_to_complex(c) }).collect();
        Ok(FilterBank { layout, templates })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fast_transform::compute_taps;

    #[test]
    fn shares_templates_and_serializes() {
        let spec = FrameSpec2D::from_config(&crate::windows::FrameConfig { grid_size: 64, j_max: 2, ..crate::windows::FrameConfig::default_2d() }).unwrap();
        let b = FilterBank::build(&spec, 3).unwrap();
        // uniform windows: one α, M β, M² γ, M δ
        let m = spec.orientations(0);
        assert!(b.template_count() <= 1 + m + m * m + m && b.template_count() > m * m);
        assert_eq!(b.taps(1, TapKind::Gamma { t: 2, t_prime: 7 }), &compute_taps(&spec, 1, TapKind::Gamma { t: 2, t_prime: 7 }, 3).unwrap());
        let back = FilterBank::from_bytes(&b.to_bytes()).unwrap();
        assert_eq!(back, b);
        assert!(back.matches(&spec));
        let small = b.truncated(1).unwrap();
        assert_eq!(small.taps(0, TapKind::Alpha).len(), 9);
    }
}
