use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use serde_json::{json, Map, Value};

use qrc_core::catastrophe::{alc_delta, relocalization_scan, sextic, AlcQuery, Backend};
use qrc_core::parallel::{self, with_jobs, Execution};
use qrc_core::spectrum::{auto_config, SolverConfig};

use super::{usage, CliResult};
use crate::config::{BackendChoice, ScanKind, SweepConfig};
use crate::output::{float, Table};

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Configuration file of `key = value` lines.
    pub config: PathBuf,
    /// Directory for the CSV files and manifest.json.
    #[arg(long, short, default_value = ".")]
    pub output: PathBuf,
    /// Worker threads for the lattice points; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

struct ScanOutput {
    table: Table,
    results: Vec<Value>,
    summary: Map<String, Value>,
}

/// Grid for one α: fixed half-width if configured, otherwise the larger of
/// the domains needed at both ends of the δ range.
fn solver_config(cfg: &SweepConfig, alpha: f64, levels: usize) -> CliResult<SolverConfig> {
    if let Some(l) = cfg.half_width {
        return Ok(SolverConfig::with_step(cfg.lambda, l, cfg.step, levels));
    }
    let mut best: Option<SolverConfig> = None;
    for d in [cfg.delta_min, cfg.delta_max] {
        let c = auto_config(&sextic(alpha, d)?, levels, cfg.lambda, cfg.step)?;
        if best.is_none_or(|b| c.half_width > b.half_width) {
            best = Some(c);
        }
    }
    Ok(best.expect("two candidates"))
}

fn relocalization(cfg: &SweepConfig, alpha: f64, exec: Execution) -> CliResult<ScanOutput> {
    let solver = solver_config(cfg, alpha, 1)?;
    let scan = relocalization_scan(alpha, (cfg.delta_min, cfg.delta_max), cfg.steps, &solver, exec)?;
    let mut table = Table::new(&["delta", "E0", "w_central", "w_outer", "label"]);
    let mut results = Vec::new();
    for r in &scan.rows {
        table.push(vec![r.delta.into(), r.e0.into(), r.w_central.into(), r.w_outer.into(), r.label.to_string().into()]);
        results.push(json!({
            "alpha": float(alpha),
            "delta": float(r.delta),
            "e0": float(r.e0),
            "w_central": float(r.w_central),
            "w_outer": float(r.w_outer),
            "label": r.label.to_string(),
        }));
    }
    let mut summary = Map::new();
    summary.insert("crossing".into(), scan.crossing.map_or(Value::Null, float));
    summary.insert("half_width".into(), float(solver.half_width));
    summary.insert("grid_points".into(), Value::from(solver.grid_points));
    Ok(ScanOutput { table, results, summary })
}

fn alc_grid(cfg: &SweepConfig, alpha: f64, exec: Execution) -> CliResult<ScanOutput> {
    let backend = match cfg.backend {
        BackendChoice::Harmonic => Backend::Harmonic { lambda: cfg.lambda },
        BackendChoice::Numerical => {
            let top = cfg.m.iter().max().copied().unwrap_or(0) * 2 + cfg.n.iter().max().copied().unwrap_or(0);
            Backend::Numerical(solver_config(cfg, alpha, top + 8)?)
        }
    };
    let pairs: Vec<(usize, usize)> = cfg.m.iter().flat_map(|&m| cfg.n.iter().map(move |&n| (m, n))).collect();
    let solutions = parallel::map(&pairs, exec, |&(m, n)| {
        alc_delta(&AlcQuery {
            m,
            n,
            alpha,
            bracket: (cfg.delta_min, cfg.delta_max),
            backend,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    let mut table = Table::new(&["m", "n", "delta", "residual"]);
    let mut results = Vec::new();
    for s in &solutions {
        table.push(vec![s.m.into(), s.n.into(), s.delta.into(), s.residual.into()]);
        results.push(json!({
            "alpha": float(alpha),
            "m": s.m,
            "n": s.n,
            "delta": float(s.delta),
            "residual": float(s.residual),
        }));
    }
    let mut summary = Map::new();
    summary.insert("backend".into(), Value::from(format!("{:?}", backend.kind()).to_lowercase()));
    Ok(ScanOutput { table, results, summary })
}

pub fn run(args: &SweepArgs) -> CliResult {
    let path = args.config.display().to_string();
    let text = fs::read_to_string(&args.config).map_err(|e| usage(format!("cannot read {path}: {e}")))?;
    let cfg: SweepConfig = text.parse().map_err(|d| usage(format!("{path}:\n{d}")))?;
    let started = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true);
    fs::create_dir_all(&args.output)
        .map_err(|e| usage(format!("cannot create {}: {e}", args.output.display())))?;
    let exec = if args.jobs == 1 { Execution::Sequential } else { Execution::Parallel };

    let clock = Instant::now();
    let mut results = Vec::new();
    let mut scans = Vec::new();
    for &alpha in &cfg.alphas {
        let t = Instant::now();
        let out = with_jobs(args.jobs, || match cfg.scan {
            ScanKind::Relocalization => relocalization(&cfg, alpha, exec),
            ScanKind::Alc => alc_grid(&cfg, alpha, exec),
        })?;
        let file = format!("{}_alpha{}.csv", cfg.name, alpha);
        let target = args.output.join(&file);
        fs::write(&target, out.table.to_csv())
            .map_err(|e| usage(format!("cannot write {}: {e}", target.display())))?;
        let mut summary = out.summary;
        summary.insert("alpha".into(), float(alpha));
        summary.insert("file".into(), Value::from(file));
        summary.insert("points".into(), Value::from(out.results.len()));
        summary.insert("elapsed_ms".into(), float(t.elapsed().as_secs_f64() * 1e3));
        scans.push(Value::Object(summary));
        results.extend(out.results);
    }

    let manifest = json!({
        "command": "sweep",
        "params": {
            "config": path,
            "jobs": args.jobs,
            "scan": match cfg.scan { ScanKind::Relocalization => "relocalization", ScanKind::Alc => "alc" },
            "entries": cfg.raw,
        },
        "started": started,
        "elapsed_ms": float(clock.elapsed().as_secs_f64() * 1e3),
        "results": results,
        "scans": scans,
        "tool_version": concat!("qrc ", env!("CARGO_PKG_VERSION")),
    });
    let target = args.output.join("manifest.json");
    let mut body = serde_json::to_string_pretty(&manifest).expect("serializable");
    body.push('\n');
    fs::write(&target, body).map_err(|e| usage(format!("cannot write {}: {e}", target.display())))?;
    eprintln!("wrote {} scan(s) and {}", scans.len(), target.display());
    Ok(())
}
