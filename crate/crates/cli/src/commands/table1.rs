use clap::Args;

use qrc_core::catastrophe::{table1, TABLE1_REFERENCE_ALPHA4};

use super::{positive, usage, CliResult, OutputArgs};
use crate::output::Table;

#[derive(Debug, Clone, Args)]
pub struct Table1Args {
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Add the reference α = 4 values and the deviation from them.
    #[arg(long)]
    pub compare: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

pub fn run(args: &Table1Args) -> CliResult {
    args.out.tabular()?;
    let alpha = positive("alpha", args.alpha)?;
    if args.compare && alpha != 4.0 {
        return Err(usage("--compare needs --alpha 4: reference values exist only there"));
    }
    let t = table1(alpha)?;
    let columns: &[&str] = if args.compare {
        &["m", "n", "delta", "residual", "reference_delta", "deviation"]
    } else {
        &["m", "n", "delta", "residual"]
    };
    let mut table = Table::new(columns);
    let mut worst = 0.0f64;
    for row in &t.rows {
        let mut cells = vec![row.m.into(), row.n.into(), row.delta.into(), row.residual.into()];
        if args.compare {
            let reference = TABLE1_REFERENCE_ALPHA4
                .iter()
                .find(|r| r.0 == row.m && r.1 == row.n)
                .map(|r| r.2)
                .expect("every computed row has a reference value");
            let dev = row.delta - reference;
            worst = worst.max(dev.abs());
            cells.push(reference.into());
            cells.push(dev.into());
        }
        table.push(cells);
    }
    args.out.write_table(&table)?;
    if args.compare {
        eprintln!("max |delta - reference_delta| = {worst:.3e}");
        for g in &t.pair_gaps {
            eprintln!(
                "|delta{:?} - delta{:?}| = {:.3e}",
                g.upper, g.lower, g.gap
            );
        }
    }
    Ok(())
}
