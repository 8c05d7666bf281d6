use clap::{Args, ValueEnum};

use qrc_core::spectrum::{classify_levels, harmonic_spectrum, solve_numerical, HarmonicSpectrum, Label};
use qrc_core::Polynomial;

use super::{stationary_window, usage, CliResult, GridArgs, OutputArgs, PotentialArgs};
use crate::output::{Cell, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Harmonic,
    Numerical,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, value_enum, default_value = "harmonic")]
    pub backend: BackendArg,
    /// Numerical: lowest states to compute. Harmonic: levels per family.
    #[arg(long, default_value_t = 6)]
    pub levels: usize,
    /// Solve numerically and add the harmonic estimate and the difference.
    #[arg(long)]
    pub compare: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn harmonic(p: &Polynomial, levels: usize, lambda: f64) -> CliResult<HarmonicSpectrum> {
    let top = levels.saturating_sub(1);
    Ok(harmonic_spectrum(p, stationary_window(p)?, top, top, lambda)?)
}

fn estimate(h: &HarmonicSpectrum, label: Label) -> Option<f64> {
    match label {
        Label::Central(n) => h.central_levels.get(n).copied(),
        Label::OffCentral(m) => h.off_central_doublets.get(m).copied(),
        Label::Mixed => None,
    }
}

pub fn run(args: &SpectrumArgs) -> CliResult {
    args.out.tabular()?;
    if args.levels == 0 {
        return Err(usage("--levels must be at least 1"));
    }
    let p = args.potential.build()?;
    let lambda = super::positive("lambda", args.grid.lambda)?;

    if args.backend == BackendArg::Harmonic && !args.compare {
        let h = harmonic(&p, args.levels, lambda)?;
        let mut rows: Vec<(f64, Label)> = h
            .central_levels
            .iter()
            .enumerate()
            .map(|(n, e)| (*e, Label::Central(n)))
            .chain(h.off_central_doublets.iter().enumerate().map(|(m, e)| (*e, Label::OffCentral(m))))
            .collect();
        rows.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut table = Table::new(&["index", "energy", "label"]);
        for (i, (e, label)) in rows.into_iter().enumerate() {
            table.push(vec![i.into(), e.into(), label.to_string().into()]);
        }
        return args.out.write_table(&table);
    }

    let cfg = args.grid.config(&p, args.levels)?;
    let pairs = solve_numerical(&p, &cfg)?;
    let labels = classify_levels(&pairs, &p)?;
    let reference = if args.compare { Some(harmonic(&p, args.levels, lambda)?) } else { None };
    let columns: &[&str] = if args.compare {
        &["index", "energy", "label", "w_central", "region_weights", "harmonic", "diff"]
    } else {
        &["index", "energy", "label", "w_central", "region_weights"]
    };
    let mut table = Table::new(columns);
    for (i, l) in labels.iter().enumerate() {
        let mut row = vec![
            i.into(),
            l.energy.into(),
            l.label.to_string().into(),
            l.central_weight.into(),
            Cell::List(l.regions.iter().map(|r| r.weight).collect()),
        ];
        if let Some(h) = &reference {
            let est = estimate(h, l.label);
            row.push(est.into());
            row.push(est.map(|e| l.energy - e).into());
        }
        table.push(row);
    }
    args.out.write_table(&table)
}
