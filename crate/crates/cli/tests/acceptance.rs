//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Runs as a plain program so the lines always reach the terminal.

use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qrc_core::arnold::{
    build_symmetric, couplings_n2, couplings_n3, cubic_minimum_shift, harmonic_wells, perturbed_extrema_n2,
    WellShape,
};
use qrc_core::catastrophe::{
    asym_locus_cubic, asym_locus_linearized, ground_state_row, relocalization_scan, sextic, table1,
};
use qrc_core::parallel::Execution;
use qrc_core::spectrum::{auto_config, central_levels, harmonic_spectrum, solve_numerical, SolverConfig};
use qrc_core::Polynomial;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok { Ok(detail) } else { Err(detail) }
}

fn sci_list(xs: &[f64]) -> String {
    xs.iter().map(|x| format!("{x:.4e}")).collect::<Vec<_>>().join(", ")
}

fn rel_close(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= 1e-12 * scale.max(b.abs())
}

fn table1_reproduction() -> Outcome {
    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_qrc"))
        .args(["table1", "--alpha", "4", "--compare"])
        .output()
        .map_err(|e| e.to_string())?;
    let secs = t.elapsed().as_secs_f64();
    if out.status.code() != Some(0) {
        return Err(format!("exit status {:?}", out.status.code()));
    }
    let csv = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap_or_default().split(',').collect();
    let k = header.iter().position(|h| *h == "deviation").ok_or("no deviation column")?;
    let devs: Vec<f64> = lines.filter_map(|l| l.split(',').nth(k)?.parse().ok()).collect();
    let worst = devs.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    check(
        devs.len() == 12 && worst <= 2e-5 && secs < 1.0,
        format!("{} rows, max |dev| = {worst:.2e}, {secs:.3} s", devs.len()),
    )
}

fn pairwise_degeneracy() -> Outcome {
    let t = table1(4.0).map_err(|e| e.to_string())?;
    let worst = t.pair_gaps.iter().fold(0.0f64, |m, g| m.max(g.gap));
    check(
        t.pair_gaps.len() == 6 && worst <= 1e-4,
        format!("6 pairs, largest gap {worst:.2e}"),
    )
}

fn commensurability() -> Outcome {
    let mut rng = StdRng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let alpha: f64 = rng.gen_range(0.5..20.0);
        let p = sextic(alpha, 0.0).map_err(|e| e.to_string())?;
        let window = 2.0 * 3f64.sqrt() * alpha + 1.0;
        let h = harmonic_spectrum(&p, window, 0, 0, 1.0).map_err(|e| e.to_string())?;
        worst = worst.max((h.spring_off_central / h.spring_central - 2.0).abs());
    }
    check(worst <= 1e-12, format!("max |Ω/√c − 2| = {worst:.1e} over 100 α"))
}

fn closed_forms() -> Outcome {
    let t = Instant::now();
    let mut rng = StdRng::seed_from_u64(5);
    for i in 0..1000 {
        let (a, b, g): (f64, f64, f64) = (rng.gen_range(0.1..6.0), rng.gen_range(0.1..6.0), rng.gen_range(0.1..6.0));
        let p = build_symmetric(&WellShape::from_widths(&[a, b]).map_err(|e| e.to_string())?);
        let (ca, cc) = couplings_n2(a, b);
        let q = build_symmetric(&WellShape::from_widths(&[a, b, g]).map_err(|e| e.to_string())?);
        let f = couplings_n3(a, b, g);
        let ok = rel_close(p.coeff(4), ca, 0.0)
            && rel_close(p.coeff(2), cc, 0.0)
            && rel_close(q.coeff(6), f.a, 0.0)
            && rel_close(q.coeff(4), f.c, 0.0)
            && rel_close(q.coeff(2), f.f, 0.0);
        if !ok {
            return Err(format!("shape {i}: ({a}, {b}, {g}) disagrees"));
        }
    }
    let f = couplings_n3(1.0, 1.0, 1.0);
    let q = build_symmetric(&WellShape::from_widths(&[1.0, 1.0, 1.0]).map_err(|e| e.to_string())?);
    let dd = q.derivative().derivative();
    let r3 = 3f64.sqrt();
    let diag = [
        (f.a, -8.0),
        (f.c, 22.0),
        (f.f, -24.0),
        (f.inner_min, -9.0),
        (q.eval(1.0), -9.0),
        (f.outer_min, -9.0),
        (q.eval(r3), -9.0),
        (f.inner_curvature, 32.0),
        (dd.eval(1.0), 32.0),
        (f.outer_curvature, 96.0),
        (dd.eval(r3), 96.0),
    ];
    let diag_ok = diag.iter().all(|(got, want)| (got - want).abs() <= 1e-10);
    let secs = t.elapsed().as_secs_f64();
    check(diag_ok && secs < 1.0, format!("1000 shapes agree, (1,1,1) diagnostics ok = {diag_ok}, {secs:.3} s"))
}

fn fitted_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.abs().ln()).collect();
    let n = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let num: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    num / lx.iter().map(|x| (x - mx).powi(2)).sum::<f64>()
}

fn well_scaling() -> Outcome {
    let lambdas = [2.0, 4.0, 8.0, 16.0];
    let mut details = Vec::new();
    let mut ok = true;
    for base in [vec![1.0, 2.5], vec![1.0, 2.5, 4.0]] {
        let n = base.len() as f64;
        let unit = WellShape::new(base).map_err(|e| e.to_string())?;
        let mut wells = Vec::new();
        for &l in &lambdas {
            let shape = unit.scaled(l).map_err(|e| e.to_string())?;
            let window = 2.0 * shape.increments().last().copied().unwrap_or(1.0).sqrt() + 1.0;
            let w = harmonic_wells(&build_symmetric(&shape), window).map_err(|e| e.to_string())?;
            wells.push(*w.last().ok_or("no wells")?);
        }
        let f = fitted_slope(&lambdas, &wells.iter().map(|w| w.depth).collect::<Vec<_>>());
        let g = fitted_slope(&lambdas, &wells.iter().map(|w| w.half_curvature).collect::<Vec<_>>());
        let x = fitted_slope(&lambdas, &wells.iter().map(|w| w.x).collect::<Vec<_>>());
        ok &= (f / (2.0 * n + 2.0) - 1.0).abs() < 0.01 && (g / (2.0 * n) - 1.0).abs() < 0.01 && (x - 1.0).abs() < 0.01;
        details.push(format!("N={n}: F {f:.4}, G {g:.4}, X {x:.4}"));
    }
    check(ok, details.join("; "))
}

fn grid_minimum(f: f64, g: f64, x: f64) -> f64 {
    let h = |t: f64| t * (f + g * (t - x) * (t - x));
    let (mut lo, mut hi) = (2.0 * x / 3.0, x + (-f / g).sqrt() + 1.0);
    for _ in 0..12 {
        let step = (hi - lo) / 200.0;
        let best = (0..=200)
            .map(|i| lo + i as f64 * step)
            .min_by(|a, b| h(*a).total_cmp(&h(*b)))
            .unwrap_or(lo);
        lo = (best - step).max(lo);
        hi = best + step;
    }
    0.5 * (lo + hi)
}

fn cubic_shift_oracle() -> Outcome {
    let mut rng = StdRng::seed_from_u64(9);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let (f, g, x) = (-rng.gen_range(0.01..10.0), rng.gen_range(0.1..10.0), rng.gen_range(0.5..5.0));
        let s = cubic_minimum_shift(f, g, x, 1.0).map_err(|e| e.to_string())?;
        worst = worst.max((s.delta - (grid_minimum(f, g, x) / x - 1.0)).abs());
    }
    let worked = cubic_minimum_shift(-1.0, 1.0, 2.0, 1.0).map_err(|e| e.to_string())?;
    let err = (worked.x0 - (8.0 + 28f64.sqrt()) / 6.0).abs();
    check(worst <= 1e-6 && err < 1e-12, format!("max |Δδ| = {worst:.1e} on 200 triples, worked x0 error {err:.1e}"))
}

fn perturbative_shifts() -> Outcome {
    let beta = 32f64.sqrt();
    let coef = perturbed_extrema_n2(4.0, beta, 0.0).map_err(|e| e.to_string())?.u2_correction;
    let mut ratios = Vec::new();
    let mut improved = true;
    for eps in [0.04, 0.02, 0.01] {
        let x = perturbed_extrema_n2(4.0, beta, eps).map_err(|e| e.to_string())?.stationary[3];
        let first = x - (4.0 + eps / 128.0);
        let second = x - (4.0 + eps / 128.0 + coef * eps * eps);
        improved &= second.abs() < 0.01 * first.abs();
        ratios.push(first / (eps * eps));
    }
    let (lo, hi) = ratios.iter().fold((f64::MAX, f64::MIN), |(l, h), r| (l.min(*r), h.max(*r)));
    let matches = ratios.iter().all(|r| (r / coef - 1.0).abs() < 0.01);
    check(
        hi / lo < 2.0 && matches && improved,
        format!("residual/ε² = [{}], band {:.3}, coefficient {coef:.4e}", sci_list(&ratios), hi / lo),
    )
}

fn locus_consistency() -> Outcome {
    let mut worst_rel = 0.0f64;
    let mut worst_trip = 0.0f64;
    let mut signs = true;
    for alpha in [2.0, 3.0, 4.0, 5.0, 8.0] {
        let a3 = alpha * alpha * alpha;
        let eps = 1e-3 * a3;
        let lin = asym_locus_linearized(eps, alpha).map_err(|e| e.to_string())?.delta;
        let cub = asym_locus_cubic(eps, alpha).map_err(|e| e.to_string())?.delta;
        worst_rel = worst_rel.max(((cub - lin) / lin).abs());
        for e in [1e-6, 1e-3, 0.1, 1.0, 0.5 * a3] {
            let d = asym_locus_cubic(e, alpha).map_err(|e| e.to_string())?.delta;
            signs &= d < 0.0;
            let back = -0.5 * a3 * d * (3.0 + d).sqrt();
            worst_trip = worst_trip.max(((back - e) / e).abs());
        }
    }
    check(
        worst_rel <= 0.01 && worst_trip <= 1e-9 && signs,
        format!("max rel gap {worst_rel:.2e}, round trip {worst_trip:.1e}, ε>0 ⇒ δ<0: {signs}"),
    )
}

fn eigensolver_calibration() -> Outcome {
    let osc = Polynomial::monomial(2, 1.0);
    let solve = |h: f64| -> Result<f64, String> {
        let cfg = SolverConfig::with_step(1.0, 12.0, h, 1);
        Ok(solve_numerical(&osc, &cfg).map_err(|e| e.to_string())?[0].energy)
    };
    let e = solve(0.01)?;
    let (a, b, c) = (solve(0.04)?, solve(0.02)?, e);
    let order = ((a - b) / (b - c)).log2();
    check(
        (e - 1.0).abs() < 2e-4 && (order - 2.0).abs() <= 0.2,
        format!("E0 = {e:.8}, observed order {order:.3}"),
    )
}

fn relocalization_sharpness() -> Outcome {
    let t = Instant::now();
    let cfg = SolverConfig::default();
    let scan = relocalization_scan(4.0, (0.0, 0.005), 11, &cfg, Execution::Parallel).map_err(|e| e.to_string())?;
    let star = scan.crossing.ok_or("no crossing in [0, 0.005]")?;
    let below = ground_state_row(4.0, star - 0.002, &cfg).map_err(|e| e.to_string())?.w_central;
    let above = ground_state_row(4.0, star + 0.002, &cfg).map_err(|e| e.to_string())?.w_central;
    let secs = t.elapsed().as_secs_f64();
    check(
        (0.001..=0.005).contains(&star) && below > 0.9 && above < 0.1 && secs < 120.0,
        format!("δ* = {star:.5}, w_c(δ*−0.002) = {below:.4}, w_c(δ*+0.002) = {above:.4}, {secs:.2} s"),
    )
}

fn harmonic_gap_shrinks() -> Outcome {
    let mut gaps = Vec::new();
    for alpha in [3.0, 4.0, 5.0] {
        let p = sextic(alpha, 0.0).map_err(|e| e.to_string())?;
        let harm = central_levels(&p, 0, 1.0).map_err(|e| e.to_string())?[0];
        let cfg = auto_config(&p, 1, 1.0, 0.005).map_err(|e| e.to_string())?;
        let num = solve_numerical(&p, &cfg).map_err(|e| e.to_string())?[0].energy;
        gaps.push((num - harm).abs() / harm);
    }
    check(
        gaps[0] > gaps[1] && gaps[1] > gaps[2],
        format!("relative gaps at α = 3, 4, 5: [{}]", sci_list(&gaps)),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("crossing table reproduction", table1_reproduction),
        ("pairwise degeneracy", pairwise_degeneracy),
        ("commensurability", commensurability),
        ("closed-form cross-checks", closed_forms),
        ("well scaling exponents", well_scaling),
        ("cubic minimum shift oracle", cubic_shift_oracle),
        ("perturbative shifts", perturbative_shifts),
        ("asymmetric locus consistency", locus_consistency),
        ("eigensolver calibration", eigensolver_calibration),
        ("relocalization sharpness", relocalization_sharpness),
        ("harmonic/numerical gap shrinks", harmonic_gap_shrinks),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
