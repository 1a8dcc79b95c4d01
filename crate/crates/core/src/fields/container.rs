//! Binary container: one JSON header line followed by little-endian f64s.

use super::field::{VectorField2D, VectorField3D};
use crate::error::{Error, Result};
use crate::frame2d::{Band, CoefficientPyramid2D};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::path::Path;

pub const MAGIC: &str = "divfree";
pub const VERSION: u32 = 1;
pub const DTYPE: &str = "f64le";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Header {
    pub magic: String,
    pub version: u32,
    pub kind: String,
    /// always "f64le"
    pub dtype: String,
    /// number of f64 values in the payload
    pub values: usize,
    /// row-major payload shape; its product equals `values`
    pub shape: Vec<usize>,
    /// hash of the frame spec the payload was computed with, if any
    #[serde(default)]
    pub spec_hash: Option<String>,
    #[serde(default)]
    pub meta: Value,
}

pub fn encode(kind: &str, shape: &[usize], spec_hash: Option<&str>, meta: Value, data: &[f64]) -> Vec<u8> {
    assert_eq!(shape.iter().product::<usize>(), data.len(), "shape does not cover the payload");
    let h = Header {
        magic: MAGIC.into(),
        version: VERSION,
        kind: kind.into(),
        dtype: DTYPE.into(),
        values: data.len(),
        shape: shape.to_vec(),
        spec_hash: spec_hash.map(str::to_string),
        meta,
    };
    let mut out = serde_json::to_vec(&h).expect("header serializes");
    out.push(b'\n');
    out.reserve(8 * data.len());
    for x in data {
        out.extend_from_slice(&x.to_le_bytes());
    }
    out
}

/// Parses a container, checking magic, version, kind and payload length.
pub fn decode(bytes: &[u8], kind: &str) -> Result<(Value, Vec<f64>)> {
    decode_header(bytes, kind).map(|(h, d)| (h.meta, d))
}

/// As [`decode`], returning the whole header.
pub fn decode_header(bytes: &[u8], kind: &str) -> Result<(Header, Vec<f64>)> {
    let nl = bytes
        .iter()
        .position(|&b| b == b'\n')
        .ok_or_else(|| Error::Container("missing header line".into()))?;
    let h: Header = serde_json::from_slice(&bytes[..nl])
        .map_err(|e| Error::Container(format!("bad header: {e}")))?;
    if h.magic != MAGIC {
        return Err(Error::Container(format!("not a {MAGIC} container")));
    }
    if h.version != VERSION {
        return Err(Error::Container(format!("unsupported version {} (expected {VERSION})", h.version)));
    }
    if h.dtype != DTYPE {
        return Err(Error::Container(format!("unsupported dtype '{}'", h.dtype)));
    }
    if h.kind != kind {
        return Err(Error::Container(format!("expected kind '{kind}', found '{}'", h.kind)));
    }
    if h.shape.iter().product::<usize>() != h.values {
        return Err(Error::Container(format!("shape {:?} does not match {} values", h.shape, h.values)));
    }
    let body = &bytes[nl + 1..];
    let want = 8 * h.values;
    if body.len() < want {
        return Err(Error::Container(format!("truncated payload: missing {} bytes", want - body.len())));
    }
    if body.len() > want {
        return Err(Error::Container(format!("{} trailing bytes after payload", body.len() - want)));
    }
    let data = body.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().unwrap())).collect();
    Ok((h, data))
}

/// Reads just the header of a container.
pub fn peek_header(bytes: &[u8]) -> Result<Header> {
    let nl = bytes.iter().position(|&b| b == b'\n').unwrap_or(bytes.len());
    serde_json::from_slice(&bytes[..nl]).map_err(|e| Error::Container(format!("bad header: {e}")))
}

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    std::fs::write(path, bytes)?;
    Ok(())
}

fn meta_get<T: serde::de::DeserializeOwned>(meta: &Value, key: &str) -> Result<T> {
    let v = meta.get(key).ok_or_else(|| Error::Container(format!("header lacks '{key}'")))?;
    serde_json::from_value(v.clone()).map_err(|e| Error::Container(format!("bad '{key}': {e}")))
}

pub(crate) fn complex_to_f64(src: &[Complex64], out: &mut Vec<f64>) {
    for c in src {
        out.push(c.re);
        out.push(c.im);
    }
}

pub(crate) fn f64_to_complex(src: &[f64]) -> Vec<Complex64> {
    src.chunks_exact(2).map(|p| Complex64::new(p[0], p[1])).collect()
}

impl VectorField2D {
    pub fn to_bytes(&self) -> Vec<u8> {
        let meta = serde_json::json!({"dim": 2, "n": self.n, "domain_length": self.domain_length});
        encode("field", &[2, self.n, self.n], None, meta, &[self.u.as_slice(), self.v.as_slice()].concat())
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let (meta, data) = decode(bytes, "field")?;
        let dim: usize = meta_get(&meta, "dim")?;
        if dim != 2 {
            return Err(Error::Container(format!("field has dimension {dim}, expected 2")));
        }
        let n: usize = meta_get(&meta, "n")?;
        if data.len() != 2 * n * n {
            return Err(Error::Container("field payload does not match its size".into()));
        }
        let (u, v) = data.split_at(n * n);
        VectorField2D::new(n, meta_get(&meta, "domain_length")?, u.to_vec(), v.to_vec())
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_file(path, &self.to_bytes())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_bytes(&std::fs::read(path)?)
    }
}

impl VectorField3D {
    pub fn to_bytes(&self) -> Vec<u8> {
        let meta = serde_json::json!({"dim": 3, "n": self.n, "domain_length": self.domain_length});
        encode("field", &[3, self.n, self.n, self.n], None, meta, &self.comps.concat())
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let (meta, data) = decode(bytes, "field")?;
        let dim: usize = meta_get(&meta, "dim")?;
        if dim != 3 {
            return Err(Error::Container(format!("field has dimension {dim}, expected 3")));
        }
        let n: usize = meta_get(&meta, "n")?;
        let k = n * n * n;
        if data.len() != 3 * k {
            return Err(Error::Container("field payload does not match its size".into()));
        }
        let mut f = VectorField3D::zeros(n);
        f.domain_length = meta_get(&meta, "domain_length")?;
        for c in 0..3 {
            f.comps[c] = data[c * k..(c + 1) * k].to_vec();
        }
        Ok(f)
    }
}

impl CoefficientPyramid2D {
    pub fn to_bytes(&self) -> Vec<u8> {
        self.to_bytes_tagged(None)
    }

    /// Serializes with the hash of the spec that produced the coefficients.
    pub fn to_bytes_tagged(&self, spec_hash: Option<&str>) -> Vec<u8> {
        let mut data = Vec::with_capacity(2 * self.len());
        for b in self.bands() {
            complex_to_f64(&b.data, &mut data);
        }
        let meta = serde_json::json!({
            "grid_size": self.grid_size,
            "j_min": self.j_min,
            "j_max": self.j_max,
            "mean": self.mean,
            "scaling": [self.scaling.size, self.scaling.spacing],
            "levels": self.wavelets.iter().map(|l| {
                let b = &l[0];
                [l.len(), b.size, b.spacing]
            }).collect::<Vec<_>>(),
        });
        encode("pyramid", &[self.len(), 2], spec_hash, meta, &data)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let (meta, data) = decode(bytes, "pyramid")?;
        let [size, spacing]: [usize; 2] = meta_get(&meta, "scaling")?;
        let levels: Vec<[usize; 3]> = meta_get(&meta, "levels")?;
        let need = 2 * (size * size + levels.iter().map(|l| l[0] * l[1] * l[1]).sum::<usize>());
        if data.len() != need {
            return Err(Error::Container("pyramid payload does not match its layout".into()));
        }
        let mut pos = 0;
        let mut take = |size: usize, spacing: usize| {
            let k = 2 * size * size;
            let b = Band { size, spacing, data: f64_to_complex(&data[pos..pos + k]) };
            pos += k;
            b
        };
        let scaling = take(size, spacing);
        let wavelets = levels.iter().map(|l| (0..l[0]).map(|_| take(l[1], l[2])).collect()).collect();
        Ok(CoefficientPyramid2D {
            grid_size: meta_get(&meta, "grid_size")?,
            j_min: meta_get(&meta, "j_min")?,
            j_max: meta_get(&meta, "j_max")?,
            scaling,
            wavelets,
            mean: meta_get(&meta, "mean")?,
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_file(path, &self.to_bytes())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_bytes(&std::fs::read(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_round_trip_and_errors() {
        let f = VectorField2D::from_fn(8, 2.0, |x, y| [x.sin() * 1e-300, y.cos() + 0.1]);
        let b = f.to_bytes();
        let g = VectorField2D::from_bytes(&b).unwrap();
        assert!(f.u.iter().zip(&g.u).all(|(a, b)| a.to_bits() == b.to_bits()));
        assert_eq!(f, g);
        let e = VectorField2D::from_bytes(&b[..b.len() - 11]).unwrap_err().to_string();
        assert!(e.contains("missing 11 bytes"), "{e}");
        let bumped = String::from_utf8_lossy(&b).replacen("\"version\":1", "\"version\":7", 1).into_bytes();
        assert!(VectorField2D::from_bytes(&bumped).unwrap_err().to_string().contains("version 7"));
        assert!(CoefficientPyramid2D::from_bytes(&b).unwrap_err().to_string().contains("expected kind"));
    }
}
