use clap::{Args, ValueEnum};

use qrc_core::catastrophe::{asym_locus_cubic, asym_locus_linearized, lattice};

use super::{positive, usage, CliResult, OutputArgs};
use crate::output::{Cell, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Both,
    Linearized,
    Cubic,
}

#[derive(Debug, Clone, Args)]
pub struct LocusArgs {
    #[arg(long, default_value_t = 4.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub eps_min: f64,
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    pub eps_max: f64,
    /// Number of ε values, endpoints included.
    #[arg(long, default_value_t = 11)]
    pub steps: usize,
    /// Which δ columns to fill; the gap needs both.
    #[arg(long, value_enum, default_value = "both")]
    pub method: Method,
    #[command(flatten)]
    pub out: OutputArgs,
}

pub fn run(args: &LocusArgs) -> CliResult {
    args.out.tabular()?;
    let alpha = positive("alpha", args.alpha)?;
    if !(args.eps_min <= args.eps_max) || !args.eps_min.is_finite() || !args.eps_max.is_finite() {
        return Err(usage("need finite --eps-min <= --eps-max"));
    }
    let eps: Vec<f64> = match args.steps {
        0 => return Err(usage("--steps must be at least 1")),
        1 => vec![args.eps_min],
        n => lattice(args.eps_min, args.eps_max, n),
    };
    let mut table = Table::new(&["epsilon", "delta_lin", "delta_cubic", "gap"]);
    for e in eps {
        let lin = match args.method {
            Method::Cubic => None,
            _ => Some(asym_locus_linearized(e, alpha)?.delta),
        };
        let cubic = match args.method {
            Method::Linearized => None,
            _ => Some(asym_locus_cubic(e, alpha)?.delta),
        };
        let gap = lin.zip(cubic).map(|(l, c)| (c - l).abs());
        table.push(vec![e.into(), lin.into(), cubic.into(), Cell::from(gap)]);
    }
    args.out.write_table(&table)
}
