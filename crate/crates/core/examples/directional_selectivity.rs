//! Orientation energies for a shear layer, a vortex street and a single
//! vortex.
//!
//! cargo run --release --example directional_selectivity

use divfree::cli::{cmd_orient, Options};
use std::io::Write;

fn main() -> divfree::Result<()> {
    let dir = std::env::temp_dir().join("divfree-orient-example");
    std::fs::create_dir_all(&dir)?;
    let small = dir.join("spec32.json");
    std::fs::File::create(&small)?.write_all(br#"{"grid_size": 32, "j_max": 4}"#)?;

    for (field, spec) in [("builtin:shear", None), ("builtin:street", Some(small.clone())), ("builtin:vortex", None)] {
        let opts = Options { spec, ..Options::default().with_field(field) };
        let r = cmd_orient(&opts, false)?;
        println!("{field}");
        print!("{}", r.table("selectivity").to_csv());
    }
    Ok(())
}
