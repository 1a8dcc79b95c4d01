//! CSV ingestion of sampled velocity data.
//!
//! Rows (x, y, u, v) with a header, sampled on a rectilinear grid (every
//! combination of the distinct x and y values present). Values are
//! resampled bilinearly onto the periodic grid nodes, clamping outside the
//! sampled hull, and Leray-projected.

use super::field::VectorField2D;
use super::leray::leray_project;
use crate::error::{invalid, Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::io::Read;

#[derive(Debug, Deserialize)]
struct Row {
    x: f64,
    y: f64,
    u: f64,
    v: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IngestReport {
    pub source_nx: usize,
    pub source_ny: usize,
    /// ‖removed‖² / ‖resampled‖² from the projection
    pub removed_fraction: f64,
}

/// Sorted distinct values and a lookup from bit pattern to index.
fn axis(values: impl Iterator<Item = f64>) -> (Vec<f64>, HashMap<u64, usize>) {
    let mut v: Vec<f64> = values.collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v.dedup();
    let idx = v.iter().enumerate().map(|(i, x)| (x.to_bits(), i)).collect();
    (v, idx)
}

// Cell index and weight of `x` on the sorted axis, clamped to the ends.
fn locate(ax: &[f64], x: f64) -> (usize, f64) {
    if ax.len() == 1 || x <= ax[0] {
        return (0, 0.0);
    }
    if x >= ax[ax.len() - 1] {
        return (ax.len() - 2, 1.0);
    }
    let i = ax.partition_point(|&a| a <= x) - 1;
    (i, (x - ax[i]) / (ax[i + 1] - ax[i]))
}

/// Reads CSV data and returns the projected field on an `n`×`n` grid over
/// [0, domain_length)².
pub fn ingest_csv<R: Read>(reader: R, n: usize, domain_length: f64) -> Result<(VectorField2D, IngestReport)> {
    if n < 2 {
        return invalid("target grid too small");
    }
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let rows: Vec<Row> = rdr.deserialize().collect::<std::result::Result<_, _>>()?;
    if rows.iter().any(|r| ![r.x, r.y, r.u, r.v].iter().all(|v| v.is_finite())) {
        return invalid("non-finite value in CSV input");
    }
    let (xs, xi) = axis(rows.iter().map(|r| r.x));
    let (ys, yi) = axis(rows.iter().map(|r| r.y));
    if xs.len() < 2 || ys.len() < 2 {
        return invalid("CSV samples must span at least a 2×2 grid");
    }
    let (nx, ny) = (xs.len(), ys.len());
    let mut u = vec![f64::NAN; nx * ny];
    let mut v = vec![f64::NAN; nx * ny];
    for r in &rows {
        let k = yi[&r.y.to_bits()] * nx + xi[&r.x.to_bits()];
        u[k] = r.u;
        v[k] = r.v;
    }
    if u.iter().any(|x| x.is_nan()) {
        return Err(Error::InvalidArgument(format!(
            "CSV samples do not form a full {nx}×{ny} rectilinear grid"
        )));
    }
    let sample = |data: &[f64], x: f64, y: f64| {
        let (i, a) = locate(&xs, x);
        let (j, b) = locate(&ys, y);
        let at = |ii: usize, jj: usize| data[jj * nx + ii];
        (1.0 - a) * (1.0 - b) * at(i, j) + a * (1.0 - b) * at(i + 1, j) + (1.0 - a) * b * at(i, j + 1) + a * b * at(i + 1, j + 1)
    };
    let raw = VectorField2D::from_fn(n, domain_length, |x, y| [sample(&u, x, y), sample(&v, x, y)]);
    let (field, removed_fraction) = leray_project(&raw);
    Ok((field, IngestReport { source_nx: nx, source_ny: ny, removed_fraction }))
}

pub fn ingest_csv_path(path: &std::path::Path, n: usize, domain_length: f64) -> Result<(VectorField2D, IngestReport)> {
    ingest_csv(std::fs::File::open(path)?, n, domain_length)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::leray::divergence_spectral;
    use std::f64::consts::PI;

    #[test]
    fn resamples_and_projects() {
        let mut s = String::from("x,y,u,v\n");
        let m = 65;
        for j in 0..m {
            for i in 0..m {
                let (x, y) = (2.0 * PI * i as f64 / (m - 1) as f64, 2.0 * PI * j as f64 / (m - 1) as f64);
                s += &format!("{x},{y},{},{}\n", x.sin() * y.cos(), -x.cos() * y.sin());
            }
        }
        let (f, rep) = ingest_csv(s.as_bytes(), 32, 2.0 * PI).unwrap();
        assert_eq!((rep.source_nx, rep.source_ny), (65, 65));
        assert!(divergence_spectral(&f) < 1e-12);
        let want = VectorField2D::from_fn(32, 2.0 * PI, |x, y| [x.sin() * y.cos(), -x.cos() * y.sin()]);
        assert!(crate::fields::error_metrics(&want, &f, 0).l2_relative < 5e-3);
        assert!(ingest_csv("x,y,u,v\n0,0,1,1\n1,0,1,1\n0,1,1,1\n".as_bytes(), 8, 1.0).is_err());
        assert!(ingest_csv("a,b\n1,2\n".as_bytes(), 8, 1.0).is_err());
    }
}
