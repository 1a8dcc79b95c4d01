use super::{load_config, load_field, load_spec_2d, Options, RunReport, Table};
use crate::error::{invalid, Error, Result};
use crate::fast_transform::{fwt_analyze, fwt_synthesize, FilterBank};
use crate::fields::container::write_file;
use crate::fields::{divergence_spectral, error_metrics, ErrorMetrics, VectorField2D};
use crate::frame2d::spec::TIGHTNESS_TOL;
use crate::frame2d::{analyze_2d, synthesize_2d, CoefficientPyramid2D, FrameSpec2D};
use crate::frame3d::spec::TIGHTNESS_TOL_3D;
use crate::special_fn::clebsch::GauntTable;
use crate::windows::radial::resolved_band;
use crate::windows::{
    gaussian_profile, validate_tightness_3d, zonal_window, AngularWindow2D, FrameConfig, Parity, RadialProfile,
};
use std::f64::consts::PI;

/// Largest admissible deviation of the radial partition of unity.
pub const CALDERON_TOL: f64 = 1e-12;
pub const DEFAULT_RADII: [usize; 4] = [20, 40, 75, 150];
pub const DEFAULT_FRACTIONS: [f64; 9] = [0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.5, 0.75, 1.0];

fn setup(command: &str, opts: &Options) -> Result<(FrameConfig, FrameSpec2D, VectorField2D, RunReport)> {
    let config = load_config(opts)?;
    let spec = load_spec_2d(&config)?;
    let (field, desc) = load_field(opts.field.as_deref(), spec.grid_size(), opts.seed)?;
    let mut report = RunReport::new(command, &config, spec.hash(), opts);
    report.inputs.insert("field".into(), desc);
    if let Some(p) = &opts.spec {
        report.inputs.insert("spec".into(), crate::windows::config::short_hash(&std::fs::read(p)?));
    }
    Ok((config, spec, field, report))
}

fn check_finite(what: &str, m: &ErrorMetrics) -> Result<()> {
    if m.l2_relative.is_nan() || m.linf.is_nan() {
        return Err(Error::Numerical { what: what.into(), achieved: f64::NAN, wanted: 0.0 });
    }
    Ok(())
}

/// Checks the radial partition of unity over the resolved band and the
/// tightness of every angular window, building windows without the
/// constructor checks so that defective configurations can be reported.
///
/// Tables: `calderon` (j_min, j_max, band, deviation), and `tightness`
/// with columns (level, orientations, trace, max_offdiag, residual) in 2D
/// or (l, m, residual) in 3D. `passed` is false when any value exceeds its
/// tolerance.
pub fn cmd_validate(opts: &Options) -> Result<RunReport> {
    let config = load_config(opts)?;
    let mut report = RunReport::new("validate", &config, &config.hash(), opts);
    if let Some(p) = &opts.spec {
        report.inputs.insert("spec".into(), crate::windows::config::short_hash(&std::fs::read(p)?));
    }
    if config.j_max < config.j_min {
        return invalid("j_max below j_min");
    }
    let band = resolved_band(config.j_max);
    let dev = report.timed("calderon", || {
        RadialProfile::default().calderon_deviation(config.j_min, config.j_max, 1e-3, band, 4001, true)
    });
    let mut cal = Table::new(&["j_min", "j_max", "band", "deviation"]);
    cal.push(vec![config.j_min as f64, config.j_max as f64, band, dev]);
    report.tables.insert("calderon".into(), cal);
    let mut ok = dev <= CALDERON_TOL;
    if dev > CALDERON_TOL {
        report.notes.push(format!("radial partition deviates by {dev:.3e}"));
    }

    if config.dimension == 2 {
        let mut t = Table::new(&["level", "orientations", "trace", "max_offdiag", "residual"]);
        let w = &config.window;
        for j in config.j_min..=config.j_max {
            let win = if w.parity == Parity::Isotropic {
                AngularWindow2D::isotropic()
            } else {
                let conc = if w.parabolic { w.concentration * 2f64.powf(0.5 * j as f64) } else { w.concentration };
                AngularWindow2D::from_coefficients(gaussian_profile(w.parity, w.order, w.orientations, conc)?, w.orientations)?
            };
            let r = crate::windows::validate_tightness_2d(&win);
            if r.residual > TIGHTNESS_TOL {
                ok = false;
                report.notes.push(format!("level {j}: window not tight, off-diagonal {:.3e}", r.max_offdiag));
            }
            t.push(vec![j as f64, win.orientations() as f64, r.trace, r.max_offdiag, r.residual]);
        }
        report.tables.insert("tightness".into(), t);
    } else {
        let w = &config.window3d;
        let win = zonal_window(&w.zonal, w.orientation_set)?;
        let table = GauntTable::new(win.degree().max(1))?;
        let r = report.timed("tightness", || validate_tightness_3d(&win, &table))?;
        let mut t = Table::new(&["l", "m", "residual"]);
        for (l, m, v) in &r.residuals {
            t.push(vec![*l as f64, *m as f64, *v]);
        }
        report.tables.insert("tightness".into(), t);
        if r.max_residual > TIGHTNESS_TOL_3D {
            ok = false;
            report.notes.push(format!("window not tight on the sphere, residual {:.3e}", r.max_residual));
        }
    }
    report.passed = ok;
    Ok(report)
}

/// Reconstructs from the coefficients up through each level in turn.
///
/// Table `levels`: level, l2, linf, l2_interior, linf_interior, divergence.
/// The interior columns ignore `mask_border` cells along each edge.
pub fn cmd_levels(opts: &Options) -> Result<RunReport> {
    let (_, spec, u, mut report) = setup("levels", opts)?;
    let pyr = report.timed("analyze", || analyze_2d(&u, &spec))?;
    let mut t = Table::new(&["level", "l2", "linf", "l2_interior", "linf_interior", "divergence"]);
    let start = std::time::Instant::now();
    for j in spec.levels() {
        let (back, _) = synthesize_2d(&pyr.truncated(j), &spec)?;
        let full = error_metrics(&u, &back, 0);
        let inner = error_metrics(&u, &back, opts.mask_border);
        check_finite("level reconstruction", &full)?;
        t.push(vec![j as f64, full.l2_relative, full.linf, inner.l2_relative, inner.linf, divergence_spectral(&back)]);
    }
    report.timings.insert("synthesize".into(), start.elapsed().as_secs_f64());
    report.tables.insert("levels".into(), t);
    Ok(report)
}

/// Keeps the largest coefficients by modulus at each fraction.
///
/// Table `compress`: fraction, kept, l2, linf.
pub fn cmd_compress(opts: &Options, fractions: &[f64]) -> Result<RunReport> {
    if fractions.is_empty() || fractions.iter().any(|f| !(*f > 0.0 && *f <= 1.0)) {
        return invalid("keep fractions must lie in (0, 1]");
    }
    let mut fr = fractions.to_vec();
    fr.sort_by(|a, b| a.partial_cmp(b).unwrap());
    fr.dedup();
    let (_, spec, u, mut report) = setup("compress", opts)?;
    let pyr = report.timed("analyze", || analyze_2d(&u, &spec))?;
    let mut t = Table::new(&["fraction", "kept", "l2", "linf"]);
    let start = std::time::Instant::now();
    for f in fr {
        let (p, kept) = pyr.keep_largest(f);
        let (back, _) = synthesize_2d(&p, &spec)?;
        let m = error_metrics(&u, &back, 0);
        check_finite("compressed reconstruction", &m)?;
        t.push(vec![f, kept as f64, m.l2_relative, m.linf]);
    }
    report.timings.insert("synthesize".into(), start.elapsed().as_secs_f64());
    report.tables.insert("compress".into(), t);
    Ok(report)
}

/// Orientation whose frequency angle is closest to angle(t) + π/2. Even
/// windows repeat every π, others every 2π.
pub fn orthogonal_orientation(w: &AngularWindow2D, t: usize) -> usize {
    let period = if matches!(w.parity(), Parity::Even | Parity::Isotropic) { PI } else { 2.0 * PI };
    let target = w.angle(t) + 0.5 * PI;
    let dist = |s: usize| {
        let d = (w.angle(s) - target).rem_euclid(period);
        d.min(period - d)
    };
    (0..w.orientations()).min_by(|a, b| dist(*a).partial_cmp(&dist(*b)).unwrap()).unwrap_or(0)
}

/// Coefficient energy per level and orientation.
///
/// Tables `orientation` (level, orientation, angle, energy, fraction) and
/// `selectivity` (level, dominant, orthogonal, ratio), where the ratio is
/// the dominant orientation's energy over that of the orientation at right
/// angles to it. With `maps`, writes |coefficient| grids per level and
/// orientation as CSV under `<out>/orient_maps/`.
pub fn cmd_orient(opts: &Options, maps: bool) -> Result<RunReport> {
    let (_, spec, u, mut report) = setup("orient", opts)?;
    let pyr = report.timed("analyze", || analyze_2d(&u, &spec))?;
    let mut t = Table::new(&["level", "orientation", "angle", "energy", "fraction"]);
    let mut sel = Table::new(&["level", "dominant", "orthogonal", "ratio"]);
    for j in spec.levels() {
        let e = pyr.level_energy(j);
        let total: f64 = e.iter().sum();
        let w = spec.window(j);
        for (k, v) in e.iter().enumerate() {
            t.push(vec![j as f64, k as f64, w.angle(k), *v, if total > 0.0 { v / total } else { 0.0 }]);
        }
        let dom = (0..e.len()).max_by(|a, b| e[*a].partial_cmp(&e[*b]).unwrap().then(b.cmp(a))).unwrap_or(0);
        let orth = orthogonal_orientation(w, dom);
        let ratio = if e[orth] > 0.0 { e[dom] / e[orth] } else if e[dom] > 0.0 { f64::INFINITY } else { 1.0 };
        sel.push(vec![j as f64, dom as f64, orth as f64, ratio]);
    }
    report.tables.insert("orientation".into(), t);
    report.tables.insert("selectivity".into(), sel);
    if maps {
        let Some(out) = &opts.out else {
            return invalid("coefficient maps need an output directory");
        };
        write_maps(&pyr, &out.join("orient_maps"))?;
    }
    Ok(report)
}

fn write_maps(pyr: &CoefficientPyramid2D, dir: &std::path::Path) -> Result<()> {
    for (k, level) in pyr.wavelets.iter().enumerate() {
        let j = pyr.j_min + k as i32;
        for (t, b) in level.iter().enumerate() {
            let mut s = String::new();
            for row in b.data.chunks(b.size) {
                let line: Vec<String> = row.iter().map(|c| format!("{:.6e}", c.norm())).collect();
                s.push_str(&line.join(","));
                s.push('\n');
            }
            write_file(&dir.join(format!("level{j}_orient{t}.csv")), s.as_bytes())?;
        }
    }
    Ok(())
}

/// Runs the filter pyramid at each truncation radius and compares it with
/// the DFT transform.
///
/// Table `fwt`: radius, taps (per axis), coef_rel (largest coefficient
/// discrepancy over the largest coefficient), l2, linf, linf_relative of
/// the fast round trip. The bank is built once at the largest radius
/// (cached under `DIVFREE_CACHE_DIR` when set) and truncated for the rest.
/// With an output directory the pyramid at the largest radius is written
/// to `<out>/fwt_pyramid.bin`.
pub fn cmd_fwt(opts: &Options, radii: &[usize]) -> Result<RunReport> {
    if radii.is_empty() || radii.contains(&0) {
        return invalid("truncation radii must be positive");
    }
    let mut radii = radii.to_vec();
    radii.sort_unstable();
    radii.dedup();
    let (_, spec, u, mut report) = setup("fwt", opts)?;
    let dft = report.timed("dft_analyze", || analyze_2d(&u, &spec))?;
    let r_max = *radii.last().unwrap();
    let bank = report.timed("bank", || FilterBank::cached(&spec, r_max))?;
    let scale = dft.bands().flat_map(|b| b.data.iter()).map(|c| c.norm()).fold(0.0, f64::max);
    let mut t = Table::new(&["radius", "taps", "coef_rel", "l2", "linf", "linf_relative"]);
    let mut last = None;
    for &r in &radii {
        let b = if r == r_max { bank.clone() } else { bank.truncated(r)? };
        let fast = report.timed(&format!("forward_r{r}"), || fwt_analyze(&u, &spec, &b))?;
        let (back, _) = report.timed(&format!("inverse_r{r}"), || fwt_synthesize(&fast, &spec, &b))?;
        let d = fast
            .bands()
            .zip(dft.bands())
            .flat_map(|(a, b)| a.data.iter().zip(&b.data).map(|(x, y)| (x - y).norm()))
            .fold(0.0, f64::max);
        let coef_rel = if scale > 0.0 { d / scale } else { d };
        let m = error_metrics(&u, &back, 0);
        check_finite("fast round trip", &m)?;
        t.push(vec![r as f64, (2 * r + 1) as f64, coef_rel, m.l2_relative, m.linf, m.linf_relative]);
        last = Some(fast);
    }
    report.tables.insert("fwt".into(), t);
    if let (Some(out), Some(p)) = (&opts.out, last) {
        write_file(&out.join("fwt_pyramid.bin"), &p.to_bytes_tagged(Some(spec.hash())))?;
    }
    Ok(report)
}
