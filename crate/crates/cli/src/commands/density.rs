use clap::Args;

use qrc_core::spectrum::{solve_numerical, well_weights};

use super::{CliResult, Format, GridArgs, OutputArgs, PotentialArgs};
use crate::output::Table;
use crate::svg::{DensityPlot, Region};

#[derive(Debug, Clone, Args)]
pub struct DensityArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Level index, 0 for the ground state.
    #[arg(long, default_value_t = 0)]
    pub level: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

pub fn run(args: &DensityArgs) -> CliResult {
    let p = args.potential.build()?;
    let cfg = args.grid.config(&p, args.level + 1)?;
    let pair = solve_numerical(&p, &cfg)?.swap_remove(args.level);
    let xs = pair.grid.xs();
    let rho = pair.density();

    if args.out.format != Format::Svg {
        let mut table = Table::new(&["x", "psi", "rho"]);
        for ((x, psi), r) in xs.iter().zip(&pair.psi).zip(&rho) {
            table.push(vec![(*x).into(), (*psi).into(), (*r).into()]);
        }
        return args.out.write_table(&table);
    }

    let regions = well_weights(&pair, &p)?
        .into_iter()
        .map(|r| Region {
            lo: r.lo,
            hi: r.hi,
            central: r.central,
            weight: r.weight,
        })
        .collect();
    let plot = DensityPlot {
        title: format!("level {}, E = {:.6}, {}", args.level, pair.energy, args.potential.describe()),
        xs,
        rho,
        regions,
    };
    args.out.write(&plot.render())
}
