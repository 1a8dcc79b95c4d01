//! Bring external samples in through CSV, project them onto divergence-free
//! fields, and store fields and pyramids in the binary container.
//!
//! cargo run --release --example ingest_and_containers

use divfree::fields::container::peek_header;
use divfree::fields::{divergence_spectral, ingest_csv, leray_project, VectorField2D};
use divfree::frame2d::{analyze_2d, CoefficientPyramid2D, FrameSpec2D};
use std::f64::consts::PI;

fn main() -> divfree::Result<()> {
    // a cellular flow plus a gradient, sampled on a coarse non-periodic grid
    let mut csv = String::from("x,y,u,v\n");
    for j in 0..41 {
        for i in 0..41 {
            let (x, y) = (2.0 * PI * i as f64 / 40.0, 2.0 * PI * j as f64 / 40.0);
            let (u, v) = (x.sin() * y.cos() + 0.2 * x.cos(), -x.cos() * y.sin() + 0.2 * y.cos());
            csv += &format!("{x},{y},{u},{v}\n");
        }
    }
    let (field, report) = ingest_csv(csv.as_bytes(), 64, 2.0 * PI)?;
    println!("source {}×{}, removed energy fraction {:.3}", report.source_nx, report.source_ny, report.removed_fraction);
    println!("divergence after projection {:.1e}", divergence_spectral(&field));
    let (_, again) = leray_project(&field);
    println!("projecting again removes {again:.1e}");

    let dir = std::env::temp_dir().join("divfree-container-example");
    let path = dir.join("field.bin");
    field.save(&path)?;
    let bytes = std::fs::read(&path)?;
    println!("header: {}", serde_json::to_string(&peek_header(&bytes)?)?);
    assert_eq!(VectorField2D::load(&path)?, field);

    let spec = FrameSpec2D::isotropic(64, 0, 3)?;
    let pyr = analyze_2d(&field, &spec)?;
    let bytes = pyr.to_bytes_tagged(Some(spec.hash()));
    println!("pyramid container: {} bytes, spec {}", bytes.len(), peek_header(&bytes)?.spec_hash.unwrap());
    assert_eq!(CoefficientPyramid2D::from_bytes(&bytes)?, pyr);

    let truncated = &bytes[..bytes.len() - 100];
    println!("truncated read: {}", CoefficientPyramid2D::from_bytes(truncated).unwrap_err());
    Ok(())
}
