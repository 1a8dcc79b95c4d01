use clap::{Args, Parser, Subcommand};
use divfree::cli::{self, Options, RunReport, DEFAULT_FRACTIONS, DEFAULT_RADII};
use std::path::PathBuf;
use std::process::ExitCode;

/// Divergence-free wavelet frames: batch experiments.
///
/// Tables go to stdout as CSV, or with --out to <out>/<command>_<table>.csv
/// next to <command>_report.json (which alone carries timings).
/// Exit codes: 0 success, 1 validation failure, 2 I/O or argument error,
/// 3 numerical failure. Filter banks are cached in $DIVFREE_CACHE_DIR.
#[derive(Parser)]
#[command(name = "divfree", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Frame configuration (JSON); the shipped default when omitted
    #[arg(long, global = true)]
    spec: Option<PathBuf>,
    /// Field container, CSV (x,y,u,v) or builtin:{canonical,street,shear,vortex,random,zero}
    #[arg(long, global = true)]
    field: Option<String>,
    /// Output directory for tables, report and artifacts
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Number of wavelet levels, counted down from j_max
    #[arg(long, global = true)]
    levels: Option<usize>,
    /// Cells excluded along each edge for the interior error columns
    #[arg(long, global = true, default_value_t = 8)]
    mask_border: usize,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for builtin:random
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Check the radial partition and angular tightness.
    /// CSV: calderon(j_min,j_max,band,deviation);
    /// tightness(level,orientations,trace,max_offdiag,residual) or (l,m,residual) in 3D
    Validate,
    /// Error after adding each level.
    /// CSV: levels(level,l2,linf,l2_interior,linf_interior,divergence)
    Levels,
    /// Error when keeping only the largest coefficients.
    /// CSV: compress(fraction,kept,l2,linf)
    Compress {
        /// Kept fractions, comma separated
        #[arg(long, value_delimiter = ',')]
        keep: Vec<f64>,
    },
    /// Coefficient energy by orientation.
    /// CSV: orientation(level,orientation,angle,energy,fraction); selectivity(level,dominant,orthogonal,ratio)
    Orient {
        /// Also write |coefficient| grids to <out>/orient_maps/
        #[arg(long)]
        maps: bool,
    },
    /// Filter-pyramid transform against the DFT transform.
    /// CSV: fwt(radius,taps,coef_rel,l2,linf,linf_relative)
    Fwt {
        /// Truncation radii, comma separated
        #[arg(long, value_delimiter = ',')]
        radius: Vec<usize>,
    },
}

fn run(cli: &Cli) -> divfree::Result<RunReport> {
    let c = &cli.common;
    let opts = Options {
        spec: c.spec.clone(),
        field: c.field.clone(),
        levels: c.levels,
        mask_border: c.mask_border,
        seed: c.seed,
        out: c.out.clone(),
    };
    match &cli.command {
        Command::Validate => cli::cmd_validate(&opts),
        Command::Levels => cli::cmd_levels(&opts),
        Command::Compress { keep } => {
            cli::cmd_compress(&opts, if keep.is_empty() { &DEFAULT_FRACTIONS } else { keep })
        }
        Command::Orient { maps } => cli::cmd_orient(&opts, *maps),
        Command::Fwt { radius } => cli::cmd_fwt(&opts, if radius.is_empty() { &DEFAULT_RADII } else { radius }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.common.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(cli::EXIT_IO as u8);
        }
    }
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(cli::exit_code(&e) as u8);
        }
    };
    match &cli.common.out {
        Some(dir) => match report.write(dir) {
            Ok(files) => files.iter().for_each(|f| eprintln!("wrote {}", f.display())),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(cli::exit_code(&e) as u8);
            }
        },
        None => {
            for (name, t) in &report.tables {
                println!("# {name}");
                print!("{}", t.to_csv());
            }
        }
    }
    for n in &report.notes {
        eprintln!("note: {n}");
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(cli::EXIT_VALIDATION as u8)
    }
}
