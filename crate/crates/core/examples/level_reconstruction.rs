//! Reconstruction error as wavelet levels are added, through the batch
//! driver's library interface.
//!
//! cargo run --release --example level_reconstruction

use divfree::cli::{cmd_levels, Options};

fn main() -> divfree::Result<()> {
    for field in ["builtin:canonical", "builtin:street"] {
        let report = cmd_levels(&Options::default().with_field(field))?;
        println!("{field}");
        print!("{}", report.table("levels").to_csv());
    }
    Ok(())
}
