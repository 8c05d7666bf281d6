//! Bound states of `−Λ² ψ'' + V ψ = E ψ`.
//!
//! Two routes: harmonic estimates per well ([`harmonic`]) and a second-order
//! finite-difference discretization on `[−L, L]` with Dirichlet walls solved
//! as a symmetric tridiagonal eigenproblem ([`tridiag`]). Even potentials are
//! split into parity blocks first, which keeps exponentially-degenerate
//! doublets apart and makes every eigenfunction exactly even or odd.

pub mod harmonic;
pub mod tridiag;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arnold::{critical_points, harmonic_wells, CriticalKind};
use crate::error::{Error, Result};
use crate::polynomial::Polynomial;

pub use harmonic::{central_levels, harmonic_spectrum, off_central_levels, HarmonicSpectrum};
use tridiag::SymTridiagonal;

pub const MIN_GRID_POINTS: usize = 201;
const MAX_INVERSE_ITERATIONS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Λ, with Λ² = ħ²/2m.
    pub lambda: f64,
    /// L: the grid spans [−L, L].
    pub half_width: f64,
    /// Odd, so that x = 0 is a grid point. Includes both walls.
    pub grid_points: usize,
    pub num_levels: usize,
}

impl Default for SolverConfig {
    /// Λ = 1, L = 9, h = 0.005, six levels.
    fn default() -> Self {
        Self {
            lambda: 1.0,
            half_width: 9.0,
            grid_points: 3601,
            num_levels: 6,
        }
    }
}

impl SolverConfig {
    /// Config with grid spacing as close to `step` as an odd point count allows.
    pub fn with_step(lambda: f64, half_width: f64, step: f64, num_levels: usize) -> Self {
        let intervals = (2.0 * half_width / step).round() as usize;
        let intervals = intervals + intervals % 2;
        Self {
            lambda,
            half_width,
            grid_points: (intervals + 1).max(MIN_GRID_POINTS),
            num_levels,
        }
    }

    pub fn grid(&self) -> Grid {
        Grid {
            half_width: self.half_width,
            points: self.grid_points,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda > 0.0) || !self.lambda.is_finite() {
            return Err(Error::InvalidConfig(format!("lambda must be positive, got {}", self.lambda)));
        }
        if !(self.half_width > 0.0) || !self.half_width.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "half_width must be positive, got {}",
                self.half_width
            )));
        }
        if self.grid_points < MIN_GRID_POINTS || self.grid_points % 2 == 0 {
            return Err(Error::InvalidConfig(format!(
                "grid_points must be odd and >= {MIN_GRID_POINTS}, got {}",
                self.grid_points
            )));
        }
        if self.num_levels == 0 {
            return Err(Error::InvalidConfig("num_levels must be >= 1".into()));
        }
        Ok(())
    }
}

/// Uniform symmetric grid `x_i = (i − c)·h`, `c = (points − 1)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub half_width: f64,
    pub points: usize,
}

impl Grid {
    pub fn step(&self) -> f64 {
        2.0 * self.half_width / (self.points - 1) as f64
    }

    pub fn center(&self) -> usize {
        (self.points - 1) / 2
    }

    pub fn x(&self, i: usize) -> f64 {
        (i as f64 - self.center() as f64) * self.step()
    }

    pub fn xs(&self) -> Vec<f64> {
        (0..self.points).map(|i| self.x(i)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eigenpair {
    pub energy: f64,
    /// ψ on every grid point (zero at both walls), with Σ ψ² h = 1.
    pub psi: Vec<f64>,
    pub grid: Grid,
}

impl Eigenpair {
    pub fn norm(&self) -> f64 {
        self.psi.iter().map(|p| p * p).sum::<f64>() * self.grid.step()
    }

    /// ρ(x) = ψ² on the grid.
    pub fn density(&self) -> Vec<f64> {
        self.psi.iter().map(|p| p * p).collect()
    }

    /// Sign changes of ψ, ignoring samples too small to carry a sign.
    pub fn nodes(&self) -> usize {
        let peak = self.psi.iter().fold(0.0f64, |m, p| m.max(p.abs()));
        let floor = 1e-8 * peak;
        let mut last = 0.0f64;
        let mut count = 0;
        for &p in &self.psi {
            if p.abs() <= floor {
                continue;
            }
            if last != 0.0 && (p > 0.0) != (last > 0.0) {
                count += 1;
            }
            last = p;
        }
        count
    }
}

/// Lowest `cfg.num_levels` eigenpairs, ascending in energy.
pub fn solve_numerical(p: &Polynomial, cfg: &SolverConfig) -> Result<Vec<Eigenpair>> {
    cfg.validate()?;
    let grid = cfg.grid();
    let unknowns = grid.points - 2;
    if cfg.num_levels >= unknowns {
        return Err(Error::TooManyLevels {
            requested: cfg.num_levels,
            available: unknowns,
        });
    }
    let h = grid.step();
    let kinetic = cfg.lambda * cfg.lambda / (h * h);
    let potential: Vec<f64> = (0..grid.points).map(|i| p.eval(grid.x(i))).collect();

    let mut pairs = if p.is_even() {
        solve_by_parity(&potential, kinetic, grid, cfg.num_levels)?
    } else {
        let diag = (1..grid.points - 1).map(|i| potential[i] + 2.0 * kinetic).collect();
        let t = SymTridiagonal::new(diag, vec![-kinetic; unknowns - 1]);
        solve_block(&t, cfg.num_levels)?
            .into_iter()
            .map(|(energy, v)| {
                let mut psi = Vec::with_capacity(grid.points);
                psi.push(0.0);
                psi.extend(v);
                psi.push(0.0);
                finish(energy, psi, grid)
            })
            .collect()
    };
    order_levels(&mut pairs);
    pairs.truncate(cfg.num_levels);

    if let Some(top) = pairs.last() {
        let wall = p.eval(grid.half_width).min(p.eval(-grid.half_width));
        let required = 2.0 * top.energy;
        if wall < required {
            return Err(Error::DomainTooSmall {
                half_width: grid.half_width,
                boundary_value: wall,
                required,
            });
        }
    }
    Ok(pairs)
}

fn solve_block(t: &SymTridiagonal, count: usize) -> Result<Vec<(f64, Vec<f64>)>> {
    let energies = t.lowest_eigenvalues(count);
    let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(energies.len());
    for (level, &energy) in energies.iter().enumerate() {
        let v = t
            .inverse_iteration(energy, &vectors, MAX_INVERSE_ITERATIONS)
            .map_err(|f| Error::NoConvergence {
                level,
                energy,
                iterations: f.iterations,
                residual: f.residual,
            })?;
        vectors.push(v);
    }
    Ok(energies.into_iter().zip(vectors).collect())
}

/// Even states: unknowns ψ_c, ψ_{c+1}, …; the centre row couples to its
/// mirror image, symmetrized by scaling ψ_c by 1/√2. Odd states: ψ_c = 0.
fn solve_by_parity(
    potential: &[f64],
    kinetic: f64,
    grid: Grid,
    count: usize,
) -> Result<Vec<Eigenpair>> {
    let c = grid.center();
    let last = grid.points - 2;

    let even_diag: Vec<f64> = (c..=last).map(|i| potential[i] + 2.0 * kinetic).collect();
    let mut even_off = vec![-kinetic; even_diag.len() - 1];
    even_off[0] = -std::f64::consts::SQRT_2 * kinetic;
    let even = SymTridiagonal::new(even_diag, even_off);

    let odd_diag: Vec<f64> = (c + 1..=last).map(|i| potential[i] + 2.0 * kinetic).collect();
    let odd = SymTridiagonal::new(odd_diag.clone(), vec![-kinetic; odd_diag.len() - 1]);

    let mut pairs = Vec::with_capacity(2 * count);
    for (energy, v) in solve_block(&even, count.min(even.len()))? {
        let mut psi = vec![0.0; grid.points];
        psi[c] = std::f64::consts::SQRT_2 * v[0];
        for (j, &x) in v.iter().enumerate().skip(1) {
            psi[c + j] = x;
            psi[c - j] = x;
        }
        pairs.push(finish(energy, psi, grid));
    }
    for (energy, v) in solve_block(&odd, count.min(odd.len()))? {
        let mut psi = vec![0.0; grid.points];
        for (j, &x) in v.iter().enumerate() {
            psi[c + 1 + j] = x;
            psi[c - 1 - j] = -x;
        }
        pairs.push(finish(energy, psi, grid));
    }
    Ok(pairs)
}

fn finish(energy: f64, mut psi: Vec<f64>, grid: Grid) -> Eigenpair {
    let norm = (psi.iter().map(|p| p * p).sum::<f64>() * grid.step()).sqrt();
    psi.iter_mut().for_each(|p| *p /= norm);
    // Fix the overall sign: first significant sample positive.
    let peak = psi.iter().fold(0.0f64, |m, p| m.max(p.abs()));
    if let Some(&first) = psi.iter().find(|p| p.abs() > 1e-3 * peak) {
        if first < 0.0 {
            psi.iter_mut().for_each(|p| *p = -*p);
        }
    }
    Eigenpair { energy, psi, grid }
}

/// Energies closer than this are indistinguishable at solver resolution.
fn tie_width(pairs: &[Eigenpair]) -> f64 {
    1e-9 * pairs.iter().fold(1.0f64, |m, p| m.max(p.energy.abs()))
}

/// Ascending energy; levels equal to rounding are ordered by node count so
/// that unresolvable doublets still list the even member first.
fn order_levels(pairs: &mut [Eigenpair]) {
    pairs.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    let tie = tie_width(pairs);
    for i in 1..pairs.len() {
        let mut j = i;
        while j > 0
            && (pairs[j].energy - pairs[j - 1].energy).abs() <= tie
            && pairs[j].nodes() < pairs[j - 1].nodes()
        {
            pairs.swap(j, j - 1);
            j -= 1;
        }
    }
}

/// Radius beyond which a polynomial has no real roots (Cauchy bound).
fn root_bound(p: &Polynomial) -> f64 {
    let lead = p.leading().abs();
    1.0 + p.coeffs()[..p.degree()]
        .iter()
        .fold(0.0f64, |m, c| m.max(c.abs() / lead))
}

fn outermost_stationary(p: &Polynomial) -> Result<f64> {
    let dp = p.derivative();
    if dp.degree() == 0 {
        return Ok(0.0);
    }
    let bound = root_bound(&dp);
    let roots = dp.real_roots(-bound, bound, 1e-12 * bound)?;
    Ok(roots.iter().fold(0.0f64, |m, r| m.max(r.x.abs())))
}

pub const DOMAIN_LATTICE: f64 = 0.5;
pub const DOMAIN_BUFFER: f64 = 2.0;

/// Smallest L on the 0.5 lattice with V(±L) >= 2·e_max and L at least 2 past
/// the outermost stationary point.
pub fn choose_domain(p: &Polynomial, e_max: f64) -> Result<f64> {
    if p.degree() < 2 || p.degree() % 2 != 0 || p.leading() <= 0.0 {
        return Err(Error::InvalidParameter(
            "potential must be confining (even degree, positive leading coefficient)".into(),
        ));
    }
    let start = outermost_stationary(p)? + DOMAIN_BUFFER;
    let mut k = (start / DOMAIN_LATTICE - 1e-9).ceil().max(1.0);
    loop {
        let l = k * DOMAIN_LATTICE;
        if p.eval(l) >= 2.0 * e_max && p.eval(-l) >= 2.0 * e_max {
            return Ok(l);
        }
        k += 1.0;
    }
}

/// Rough energy of the `count`-th level from the harmonic ladders of every
/// well, used to size the domain. Falls back to the deepest value plus a
/// margin when a well is flat.
pub fn level_ceiling(p: &Polynomial, count: usize, lambda: f64) -> Result<f64> {
    let window = outermost_stationary(p)? + 1.0;
    match harmonic_wells(p, window) {
        Ok(wells) if !wells.is_empty() => {
            let mut levels: Vec<f64> = wells
                .iter()
                .flat_map(|w| (0..count).map(move |m| w.level(m, lambda)))
                .collect();
            levels.sort_by(f64::total_cmp);
            Ok(levels[count.max(1) - 1].max(levels[0] + 1.0))
        }
        _ => {
            let floor = critical_points(p, window)?
                .iter()
                .fold(0.0f64, |m, c| m.min(c.value));
            Ok(floor + 10.0 * count as f64 * lambda)
        }
    }
}

/// Config sized for the lowest `num_levels` states at grid spacing `step`.
pub fn auto_config(p: &Polynomial, num_levels: usize, lambda: f64, step: f64) -> Result<SolverConfig> {
    let e_max = level_ceiling(p, num_levels, lambda)?;
    let l = choose_domain(p, e_max.max(1.0))?;
    Ok(SolverConfig::with_step(lambda, l, step, num_levels))
}

/// Interval between consecutive maxima of V together with the probability
/// carried there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionWeight {
    /// Left edge (−∞ for the leftmost region).
    pub lo: f64,
    /// Right edge (+∞ for the rightmost region).
    pub hi: f64,
    /// The minimum of V inside the region, if any.
    pub minimum: Option<f64>,
    /// The region's well sits at the origin.
    pub central: bool,
    pub weight: f64,
}

/// Probability per well region, splitting the grid at the maxima of V.
pub fn well_weights(pair: &Eigenpair, p: &Polynomial) -> Result<Vec<RegionWeight>> {
    let grid = pair.grid;
    let points = critical_points(p, grid.half_width)?;
    let mut edges = vec![f64::NEG_INFINITY];
    edges.extend(
        points
            .iter()
            .filter(|c| c.kind == CriticalKind::Maximum)
            .map(|c| c.x),
    );
    edges.push(f64::INFINITY);
    let origin_tol = 1e-9 * grid.half_width.max(1.0);

    let mut regions: Vec<RegionWeight> = edges
        .windows(2)
        .map(|w| {
            let minimum = points
                .iter()
                .filter(|c| c.kind != CriticalKind::Maximum && c.x > w[0] && c.x < w[1])
                .min_by(|a, b| a.value.total_cmp(&b.value))
                .map(|c| c.x);
            RegionWeight {
                lo: w[0],
                hi: w[1],
                minimum,
                central: minimum.is_some_and(|x| x.abs() <= origin_tol),
                weight: 0.0,
            }
        })
        .collect();

    let h = grid.step();
    let on_edge = 1e-9 * h;
    let mut r = 0;
    for (i, psi) in pair.psi.iter().enumerate() {
        let x = grid.x(i);
        let w = psi * psi * h;
        while x >= regions[r].hi + on_edge {
            r += 1;
        }
        // A sample sitting on a maximum is shared by both neighbours.
        if r + 1 < regions.len() && (x - regions[r].hi).abs() <= on_edge {
            regions[r].weight += 0.5 * w;
            regions[r + 1].weight += 0.5 * w;
        } else {
            regions[r].weight += w;
        }
    }
    Ok(regions)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "index")]
pub enum Label {
    Central(usize),
    OffCentral(usize),
    Mixed,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Central(n) => write!(f, "central-{n}"),
            Label::OffCentral(m) => write!(f, "offcentral-{m}"),
            Label::Mixed => write!(f, "mixed"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledLevel {
    pub energy: f64,
    pub label: Label,
    pub central_weight: f64,
    pub regions: Vec<RegionWeight>,
}

/// Off-central levels closer than this fraction of the mean spacing share
/// one doublet index. Levels tied at solver resolution always do.
pub const DOUBLET_GROUPING: f64 = 1e-3;

/// Labels each state central-n / offcentral-m by where most of its
/// probability sits; neither side above 1/2 gives `Mixed`.
pub fn classify_levels(pairs: &[Eigenpair], p: &Polynomial) -> Result<Vec<LabeledLevel>> {
    let spacing = match pairs {
        [first, .., last] => (last.energy - first.energy) / (pairs.len() - 1) as f64,
        _ => 0.0,
    };
    let threshold = (DOUBLET_GROUPING * spacing).max(tie_width(pairs));
    let mut next_central = 0;
    let mut next_off = 0;
    let mut last_off: Option<f64> = None;
    let mut out = Vec::with_capacity(pairs.len());
    for pair in pairs {
        let regions = well_weights(pair, p)?;
        let central_weight = regions.iter().filter(|r| r.central).fold(0.0, |s, r| s + r.weight);
        let off_weight = 1.0 - central_weight;
        let label = if central_weight > 0.5 {
            next_central += 1;
            Label::Central(next_central - 1)
        } else if off_weight > 0.5 {
            let grouped = last_off
                .is_some_and(|e| (pair.energy - e).abs() <= threshold);
            if !grouped {
                next_off += 1;
            }
            last_off = Some(pair.energy);
            Label::OffCentral(next_off - 1)
        } else {
            Label::Mixed
        };
        out.push(LabeledLevel {
            energy: pair.energy,
            label,
            central_weight,
            regions,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arnold::{build_symmetric, WellShape};

    fn oscillator(step: f64) -> Vec<Eigenpair> {
        let cfg = SolverConfig::with_step(1.0, 12.0, step, 3);
        solve_numerical(&Polynomial::monomial(2, 1.0), &cfg).unwrap()
    }

    #[test]
    fn config_validation() {
        let mut cfg = SolverConfig::default();
        assert!(cfg.validate().is_ok());
        assert!((cfg.grid().step() - 0.005).abs() < 1e-15);
        cfg.grid_points = 3600;
        assert!(cfg.validate().is_err());
        cfg.grid_points = 101;
        assert!(cfg.validate().is_err());
        let cfg = SolverConfig { num_levels: 500, grid_points: 201, ..Default::default() };
        assert!(matches!(
            solve_numerical(&Polynomial::monomial(2, 1.0), &cfg),
            Err(Error::TooManyLevels { .. })
        ));
    }

    #[test]
    fn grid_is_symmetric() {
        let g = SolverConfig::default().grid();
        for i in 0..g.points {
            assert_eq!(g.x(i), -g.x(g.points - 1 - i));
        }
        assert_eq!(g.x(g.center()), 0.0);
        assert_eq!(g.x(g.points - 1), 9.0);
    }

    #[test]
    fn harmonic_oscillator_levels() {
        let pairs = oscillator(0.01);
        assert_eq!(pairs[0].grid.points, 2401);
        assert!((pairs[0].energy - 1.0).abs() < 2e-4);
        assert!((pairs[1].energy - 3.0).abs() < 5e-4);
        for (k, pair) in pairs.iter().enumerate() {
            assert!((pair.norm() - 1.0).abs() < 1e-10);
            assert_eq!(pair.nodes(), k);
        }
    }

    #[test]
    fn general_path_matches_parity_path() {
        // x² + tiny odd term forces the unsplit solver.
        let even = Polynomial::monomial(2, 1.0);
        let odd = Polynomial::new(vec![0.0, 1e-300, 1.0]).unwrap();
        assert!(!odd.is_even());
        let cfg = SolverConfig::with_step(1.0, 10.0, 0.02, 4);
        let a = solve_numerical(&even, &cfg).unwrap();
        let b = solve_numerical(&odd, &cfg).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x.energy - y.energy).abs() < 1e-9);
            for (p, q) in x.psi.iter().zip(&y.psi) {
                assert!((p - q).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn domain_choice() {
        assert_eq!(choose_domain(&Polynomial::monomial(2, 1.0), 10.0).unwrap(), 4.5);
        assert_eq!(choose_domain(&Polynomial::monomial(6, 1.0), 2.0).unwrap(), 2.0);
        let p = build_symmetric(&WellShape::new(vec![16.0, 48.0]).unwrap());
        assert_eq!(choose_domain(&p, 300.0).unwrap(), 9.0);
        assert!(choose_domain(&Polynomial::monomial(3, 1.0), 1.0).is_err());
    }

    #[test]
    fn single_well_weight() {
        let p = Polynomial::new(vec![0.0, 0.0, 1.0, 0.0, 1.0]).unwrap();
        let cfg = SolverConfig::with_step(1.0, 5.0, 0.01, 1);
        let pair = &solve_numerical(&p, &cfg).unwrap()[0];
        let w = well_weights(pair, &p).unwrap();
        assert_eq!(w.len(), 1);
        assert!(w[0].central);
        assert!((w[0].weight - 1.0).abs() < 1e-12);
    }

    #[test]
    fn double_well_doublet_is_grouped() {
        // x⁴ − 16x²: barrier 64, two off-central wells, no central one.
        let p = Polynomial::new(vec![0.0, 0.0, -16.0, 0.0, 1.0]).unwrap();
        let cfg = auto_config(&p, 4, 1.0, 0.01).unwrap();
        let pairs = solve_numerical(&p, &cfg).unwrap();
        let labels = classify_levels(&pairs, &p).unwrap();
        assert_eq!(labels[0].label, Label::OffCentral(0));
        assert_eq!(labels[1].label, Label::OffCentral(0));
        assert_eq!(labels[2].label, Label::OffCentral(1));
        assert_eq!(labels[3].label, Label::OffCentral(1));
        for (k, pair) in pairs.iter().enumerate() {
            assert_eq!(pair.nodes(), k);
        }
    }

    #[test]
    fn label_display() {
        assert_eq!(Label::Central(2).to_string(), "central-2");
        assert_eq!(Label::OffCentral(0).to_string(), "offcentral-0");
        assert_eq!(Label::Mixed.to_string(), "mixed");
    }
}
