//! Batch driver behind the `divfree` binary.
//!
//! Each command takes a frame configuration and usually a field, computes
//! one or more tables and returns them in a [`RunReport`]. Tables are
//! written as CSV (no timings, so reruns are byte-identical) and the report
//! as JSON.

mod commands;

pub use commands::{
    cmd_compress, cmd_fwt, cmd_levels, cmd_orient, cmd_validate, orthogonal_orientation, CALDERON_TOL, DEFAULT_FRACTIONS,
    DEFAULT_RADII,
};

use crate::error::{invalid, Error, Result};
use crate::fields::{
    ingest_csv_path, make_eigenfield, make_random_field, make_shear_layer, make_vortex_street, make_vortices,
    EigenfieldRecipe, VectorField2D, Vortex, VortexStreet,
};
use crate::frame2d::FrameSpec2D;
use crate::windows::config::short_hash;
use crate::windows::FrameConfig;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Process exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Validation(_) => EXIT_VALIDATION,
        Error::Numerical { .. } => EXIT_NUMERICAL,
        Error::InvalidArgument(_) | Error::Container(_) | Error::Io(_) | Error::Json(_) | Error::Csv(_) => EXIT_IO,
    }
}

/// Named columns of real values.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    /// Integral-valued cells print without exponent, the rest with 12
    /// significant digits.
    pub fn to_csv(&self) -> String {
        let mut s = self.columns.join(",");
        s.push('\n');
        for r in &self.rows {
            for (i, v) in r.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                if v.fract() == 0.0 && v.abs() < 1e15 {
                    let _ = write!(s, "{}", *v as i64);
                } else {
                    let _ = write!(s, "{v:.11e}");
                }
            }
            s.push('\n');
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub spec_hash: String,
    pub config: FrameConfig,
    /// input name → content hash (or generator description)
    pub inputs: BTreeMap<String, String>,
    pub seed: u64,
    pub tables: BTreeMap<String, Table>,
    pub timings: BTreeMap<String, f64>,
    pub notes: Vec<String>,
    pub passed: bool,
}

impl RunReport {
    pub fn new(command: &str, config: &FrameConfig, spec_hash: &str, opts: &Options) -> Self {
        RunReport {
            command: command.into(),
            spec_hash: spec_hash.into(),
            config: config.clone(),
            inputs: BTreeMap::new(),
            seed: opts.seed,
            tables: BTreeMap::new(),
            timings: BTreeMap::new(),
            notes: Vec::new(),
            passed: true,
        }
    }

    pub fn table(&self, name: &str) -> &Table {
        &self.tables[name]
    }

    /// Runs `f` and records its wall time under `name`.
    pub fn timed<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        self.timings.insert(name.into(), t.elapsed().as_secs_f64());
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Writes `<command>_<table>.csv` for every table and
    /// `<command>_report.json` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)?;
        let mut out = Vec::new();
        for (name, t) in &self.tables {
            let p = dir.join(format!("{}_{name}.csv", self.command));
            std::fs::write(&p, t.to_csv())?;
            out.push(p);
        }
        let p = dir.join(format!("{}_report.json", self.command));
        std::fs::write(&p, self.to_json())?;
        out.push(p);
        Ok(out)
    }
}

/// Settings shared by every command.
#[derive(Clone, Debug)]
pub struct Options {
    /// Frame configuration file; the shipped default when absent.
    pub spec: Option<PathBuf>,
    /// Container file, CSV file or `builtin:<name>`; see [`load_field`].
    pub field: Option<String>,
    /// Override the number of levels, keeping j_max.
    pub levels: Option<usize>,
    pub mask_border: usize,
    pub seed: u64,
    /// Where [`cmd_fwt`] writes its pyramid; nothing is written when absent.
    pub out: Option<PathBuf>,
}

impl Default for Options {
    fn default() -> Self {
        Options { spec: None, field: None, levels: None, mask_border: 8, seed: 0, out: None }
    }
}

impl Options {
    pub fn with_field(mut self, field: &str) -> Self {
        self.field = Some(field.into());
        self
    }

    pub fn with_levels(mut self, levels: usize) -> Self {
        self.levels = Some(levels);
        self
    }
}

pub fn load_config(opts: &Options) -> Result<FrameConfig> {
    let mut c = match &opts.spec {
        Some(p) => FrameConfig::from_path(p)?,
        None => FrameConfig::default_2d(),
    };
    if let Some(l) = opts.levels {
        if l == 0 {
            return invalid("--levels must be at least 1");
        }
        c.j_min = c.j_max - l as i32 + 1;
    }
    Ok(c)
}

pub fn load_spec_2d(c: &FrameConfig) -> Result<FrameSpec2D> {
    if c.dimension != 2 {
        return invalid("this command needs a two-dimensional spec");
    }
    FrameSpec2D::from_config(c)
}

/// Names accepted after `builtin:`.
pub const BUILTIN_FIELDS: [&str; 6] = ["canonical", "street", "shear", "vortex", "random", "zero"];

/// Resolves a field argument on an `n`×`n` grid. Returns the field and a
/// description for the report.
///
/// * `builtin:canonical` four-mode eigenfield (the default)
/// * `builtin:street` 2×4 vortex street
/// * `builtin:shear` horizontal jet of width 0.3
/// * `builtin:vortex` one centred vortex
/// * `builtin:random` band-limited random field, |k| ≤ n/8, from the seed
/// * `builtin:zero`
/// * `*.csv` resampled and projected
/// * anything else is read as a field container
pub fn load_field(arg: Option<&str>, n: usize, seed: u64) -> Result<(VectorField2D, String)> {
    let arg = arg.unwrap_or("builtin:canonical");
    if let Some(name) = arg.strip_prefix("builtin:") {
        let two_pi = 2.0 * std::f64::consts::PI;
        let f = match name {
            "canonical" => make_eigenfield(&EigenfieldRecipe::canonical(), n)?,
            "street" => make_vortex_street(&VortexStreet::default(), n)?.0,
            "shear" => make_shear_layer(n, 0.3),
            "vortex" => make_vortices(&[Vortex { center: [0.5 * two_pi; 2], radius: 1.0, strength: 1.0 }], n, two_pi)?.0,
            "random" => make_random_field(n, n as f64 / 8.0, seed)?,
            "zero" => VectorField2D::zeros(n),
            _ => return invalid(format!("unknown builtin field '{name}' (known: {})", BUILTIN_FIELDS.join(", "))),
        };
        let desc = if name == "random" { format!("{arg}:seed={seed}") } else { arg.to_string() };
        return Ok((f, desc));
    }
    let path = Path::new(arg);
    let bytes = std::fs::read(path)?;
    let hash = short_hash(&bytes);
    let f = if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
        ingest_csv_path(path, n, 2.0 * std::f64::consts::PI)?.0
    } else {
        VectorField2D::from_bytes(&bytes)?
    };
    if f.n != n {
        return invalid(format!("field has {} points per axis, spec expects {n}", f.n));
    }
    Ok((f, hash))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_is_stable() {
        let mut t = Table::new(&["level", "err"]);
        t.push(vec![3.0, 0.125]);
        t.push(vec![4.0, 1.0 / 3.0]);
        assert_eq!(t.to_csv(), "level,err\n3,1.25000000000e-1\n4,3.33333333333e-1\n");
        assert_eq!(t.column("err").unwrap()[0], 0.125);
    }

    #[test]
    fn exit_codes_follow_error_kind() {
        assert_eq!(exit_code(&Error::Validation("x".into())), EXIT_VALIDATION);
        assert_eq!(exit_code(&Error::InvalidArgument("x".into())), EXIT_IO);
        assert_eq!(exit_code(&Error::Numerical { what: "x".into(), achieved: 1.0, wanted: 0.0 }), EXIT_NUMERICAL);
        assert!(load_field(Some("builtin:nope"), 16, 0).is_err());
        assert!(load_field(Some("/nonexistent/file.bin"), 16, 0).is_err());
    }
}
