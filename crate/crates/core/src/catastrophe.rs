//! Locating relocalization catastrophes.
//!
//! For the symmetric sextic `x⁶ + a x⁴ + c x²` the shape is parameterized as
//! β = μα with μ² = 2 + δ. The crossing condition between the m-th
//! off-central doublet and the n-th central level is solved for δ either
//! with the harmonic ladders or with full numerical spectra. Also here: the
//! maximal-degeneracy domain for general N, the asymmetric locus of the
//! ε x³ tilted sextic, and density-weight scans.

use serde::{Deserialize, Serialize};

use crate::arnold::{build_symmetric, harmonic_wells, WellShape, PERTURBATIVE_LIMIT};
use crate::error::{Error, Result};
use crate::parallel::{self, Execution};
use crate::polynomial::Polynomial;
use crate::spectrum::{
    classify_levels, solve_numerical, well_weights, Label, SolverConfig,
};

pub const DEFAULT_BRACKET: (f64, f64) = (-0.05, 0.05);
pub const DELTA_TOLERANCE: f64 = 1e-8;

/// Reference crossing values δ(m, n) at α = 4, transcribed for comparison
/// runs only; nothing in the solver reads them.
pub const TABLE1_REFERENCE_ALPHA4: [(usize, usize, f64); 12] = [
    (1, 3, -0.00262),
    (0, 1, -0.00261),
    (0, 0, 0.00260),
    (1, 2, 0.00261),
    (1, 1, 0.00781),
    (2, 3, 0.00783),
    (1, 0, 0.01299),
    (2, 2, 0.01302),
    (2, 1, 0.01818),
    (3, 3, 0.01823),
    (2, 0, 0.02332),
    (3, 2, 0.02338),
];

/// Shape (α², α²(3+δ)), i.e. β² = (2+δ)α².
pub fn sextic_shape(alpha: f64, delta: f64) -> Result<WellShape> {
    let a2 = alpha * alpha;
    WellShape::new(vec![a2, a2 * (3.0 + delta)])
}

pub fn sextic(alpha: f64, delta: f64) -> Result<Polynomial> {
    Ok(build_symmetric(&sextic_shape(alpha, delta)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Backend {
    Harmonic { lambda: f64 },
    Numerical(SolverConfig),
}

impl Backend {
    pub fn kind(&self) -> BackendKind {
        match self {
            Backend::Harmonic { .. } => BackendKind::Harmonic,
            Backend::Numerical(_) => BackendKind::Numerical,
        }
    }
}

impl Default for Backend {
    fn default() -> Self {
        Backend::Harmonic { lambda: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BackendKind {
    Harmonic,
    Numerical,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlcQuery {
    /// Off-central doublet index.
    pub m: usize,
    /// Central level index.
    pub n: usize,
    pub alpha: f64,
    pub bracket: (f64, f64),
    pub backend: Backend,
}

impl AlcQuery {
    pub fn harmonic(m: usize, n: usize, alpha: f64) -> Self {
        Self {
            m,
            n,
            alpha,
            bracket: DEFAULT_BRACKET,
            backend: Backend::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlcSolution {
    pub m: usize,
    pub n: usize,
    pub delta: f64,
    pub mu: f64,
    pub beta: f64,
    pub residual: f64,
    pub backend: BackendKind,
    /// Sign changes seen when sampling the bracket (harmonic backend only;
    /// more than one means the root nearest δ = 0 was taken).
    pub sign_changes: usize,
}

/// Off-central minus central harmonic energy,
/// `V(√(α²+β²)) + (2m+1)ΛΩ − (2n+1)Λ√c` with β² = (2+δ)α².
pub fn harmonic_residual(alpha: f64, delta: f64, m: usize, n: usize, lambda: f64) -> f64 {
    let a2 = alpha * alpha;
    let b2 = a2 * (2.0 + delta);
    let bottom = a2 * a2 * a2 + 1.5 * a2 * a2 * b2 - 0.5 * b2 * b2 * b2;
    let omega = (6.0 * a2 * b2 + 6.0 * b2 * b2).sqrt();
    let spring = (3.0 * a2 * (a2 + b2)).sqrt();
    bottom + (2 * m + 1) as f64 * lambda * omega - (2 * n + 1) as f64 * lambda * spring
}

/// How many numerical levels to request so that both offcentral-m and
/// central-n are included, counted from the harmonic ladders plus a margin.
fn levels_needed(alpha: f64, delta: f64, m: usize, n: usize, lambda: f64) -> usize {
    let a2 = alpha * alpha;
    let b2 = a2 * (2.0 + delta);
    let bottom = a2 * a2 * a2 + 1.5 * a2 * a2 * b2 - 0.5 * b2 * b2 * b2;
    let omega = lambda * (6.0 * a2 * b2 + 6.0 * b2 * b2).sqrt();
    let spring = lambda * (3.0 * a2 * (a2 + b2)).sqrt();
    let top = (bottom + (2 * m + 1) as f64 * omega).max((2 * n + 1) as f64 * spring);
    let central = ((top / spring - 1.0) / 2.0).floor().max(0.0) as usize + 1;
    let off = if top >= bottom + omega {
        ((top - bottom) / omega - 1.0) / 2.0
    } else {
        0.0
    };
    central + 2 * (off.floor() as usize + 1) + 4
}

/// Same quantity from the numerical spectrum: E(offcentral-m) − E(central-n).
pub fn numerical_residual(alpha: f64, delta: f64, m: usize, n: usize, cfg: &SolverConfig) -> Result<f64> {
    let p = sextic(alpha, delta)?;
    let mut cfg = *cfg;
    cfg.num_levels = cfg.num_levels.max(levels_needed(alpha, delta, m, n, cfg.lambda));
    let pairs = solve_numerical(&p, &cfg)?;
    let labels = classify_levels(&pairs, &p)?;
    let off = labels.iter().find(|l| l.label == Label::OffCentral(m));
    let central = labels.iter().find(|l| l.label == Label::Central(n));
    match (off, central) {
        (Some(o), Some(c)) => Ok(o.energy - c.energy),
        _ => Err(Error::LabelsUnresolved { m, n, delta }),
    }
}

fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, mut f_lo: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if f_lo == 0.0 {
        return Ok(lo);
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

const BRACKET_SAMPLES: usize = 40;

/// δ(m, n) at which the m-th off-central doublet meets the n-th central level.
pub fn alc_delta(q: &AlcQuery) -> Result<AlcSolution> {
    let (lo, hi) = q.bracket;
    if !(q.alpha > 0.0) || !(lo < hi) || lo <= -2.0 {
        return Err(Error::InvalidParameter(format!(
            "need alpha > 0 and -2 < lo < hi (alpha = {}, bracket = [{lo}, {hi}])",
            q.alpha
        )));
    }
    let (m, n, alpha) = (q.m, q.n, q.alpha);
    let (delta, residual, sign_changes) = match q.backend {
        Backend::Harmonic { lambda } => {
            let r = |d: f64| harmonic_residual(alpha, d, m, n, lambda);
            let grid: Vec<f64> = (0..=BRACKET_SAMPLES)
                .map(|i| lo + (hi - lo) * i as f64 / BRACKET_SAMPLES as f64)
                .collect();
            let changes: Vec<(f64, f64)> = grid
                .windows(2)
                .filter(|w| (r(w[0]) < 0.0) != (r(w[1]) < 0.0))
                .map(|w| (w[0], w[1]))
                .collect();
            let Some(&(a, b)) = changes
                .iter()
                .min_by(|x, y| (0.5 * (x.0 + x.1)).abs().total_cmp(&(0.5 * (y.0 + y.1)).abs()))
            else {
                return Err(Error::NoCrossing {
                    lo,
                    hi,
                    r_lo: r(lo),
                    r_hi: r(hi),
                });
            };
            let d = bisect(|d| Ok(r(d)), a, b, r(a), DELTA_TOLERANCE)?;
            (d, r(d), changes.len())
        }
        Backend::Numerical(cfg) => {
            let r = |d: f64| numerical_residual(alpha, d, m, n, &cfg);
            let (r_lo, r_hi) = (r(lo)?, r(hi)?);
            if (r_lo < 0.0) == (r_hi < 0.0) && r_lo != 0.0 && r_hi != 0.0 {
                return Err(Error::NoCrossing { lo, hi, r_lo, r_hi });
            }
            let d = bisect(r, lo, hi, r_lo, DELTA_TOLERANCE)?;
            (d, numerical_residual(alpha, d, m, n, &cfg)?, 1)
        }
    };
    let mu = (2.0 + delta).sqrt();
    Ok(AlcSolution {
        m,
        n,
        delta,
        mu,
        beta: mu * alpha,
        residual,
        backend: q.backend.kind(),
        sign_changes,
    })
}

/// Pairs (m, n) and (m+1, n+2) whose crossings nearly coincide because
/// Ω ≈ 2√c near μ² = 2.
pub const TABLE1_PAIRS: [((usize, usize), (usize, usize)); 6] = [
    ((0, 1), (1, 3)),
    ((0, 0), (1, 2)),
    ((1, 1), (2, 3)),
    ((1, 0), (2, 2)),
    ((2, 1), (3, 3)),
    ((2, 0), (3, 2)),
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairGap {
    pub lower: (usize, usize),
    pub upper: (usize, usize),
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table1 {
    pub alpha: f64,
    /// Sorted by δ.
    pub rows: Vec<AlcSolution>,
    pub pair_gaps: Vec<PairGap>,
}

impl Table1 {
    pub fn delta(&self, m: usize, n: usize) -> Option<f64> {
        self.rows.iter().find(|r| r.m == m && r.n == n).map(|r| r.delta)
    }
}

/// The twelve crossings (m ≤ 3, n ≤ 3) of the reference table, harmonic backend.
pub fn table1(alpha: f64) -> Result<Table1> {
    let mut rows = TABLE1_REFERENCE_ALPHA4
        .iter()
        .map(|&(m, n, _)| alc_delta(&AlcQuery::harmonic(m, n, alpha)))
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| a.delta.total_cmp(&b.delta));
    let find = |(m, n): (usize, usize)| rows.iter().find(|r| r.m == m && r.n == n).map(|r| r.delta);
    let pair_gaps = TABLE1_PAIRS
        .iter()
        .filter_map(|&(lower, upper)| {
            Some(PairGap {
                lower,
                upper,
                gap: (find(upper)? - find(lower)?).abs(),
            })
        })
        .collect();
    Ok(Table1 {
        alpha,
        rows,
        pair_gaps,
    })
}

/// Ground-level energy F + √G of one inequivalent well (X >= 0).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WellGround {
    pub x: f64,
    pub energy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegeneracyDomain {
    pub shape: WellShape,
    pub wells: Vec<WellGround>,
    /// max |E_i − E_j| over all inequivalent well pairs.
    pub max_residual: f64,
    pub iterations: usize,
    /// Number of trailing increments that were free.
    pub free_parameters: usize,
    pub deep_well: bool,
    /// Some pair misses by more than 10·tol even though the solved
    /// constraints are met.
    pub sufficiency_violated: bool,
}

fn well_grounds(shape: &WellShape) -> Result<Vec<WellGround>> {
    let p = build_symmetric(shape);
    let outer = shape.increments().last().copied().unwrap_or(0.0).sqrt();
    let window = 1.5 * outer + 1.0;
    let tiny = 1e-9 * window;
    Ok(harmonic_wells(&p, window)?
        .into_iter()
        .filter(|w| w.x >= -tiny)
        .map(|w| WellGround {
            x: w.x,
            energy: w.depth + w.half_curvature.sqrt(),
        })
        .collect())
}

fn shape_from_gaps(gaps: &[f64]) -> Result<WellShape> {
    let mut acc = 0.0;
    WellShape::new(
        gaps.iter()
            .map(|g| {
                acc += g;
                acc
            })
            .collect(),
    )
}

fn constraint_residuals(gaps: &[f64]) -> Result<Vec<f64>> {
    let wells = well_grounds(&shape_from_gaps(gaps)?)?;
    Ok(wells.iter().skip(1).map(|w| w.energy - wells[0].energy).collect())
}

/// Solves `A x = b` (square, small) by Gaussian elimination with partial
/// pivoting. `None` when singular.
fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Some(x)
}

/// Minimum-norm (or least-squares) solution of `J Δ = rhs` for a
/// rows × cols Jacobian.
fn newton_step(jac: &[Vec<f64>], rhs: &[f64]) -> Option<Vec<f64>> {
    let rows = jac.len();
    let cols = jac[0].len();
    if rows <= cols {
        let jjt: Vec<Vec<f64>> = (0..rows)
            .map(|i| (0..rows).map(|j| (0..cols).map(|k| jac[i][k] * jac[j][k]).sum()).collect())
            .collect();
        let y = solve_dense(jjt, rhs.to_vec())?;
        Some((0..cols).map(|k| (0..rows).map(|i| jac[i][k] * y[i]).sum()).collect())
    } else {
        let jtj: Vec<Vec<f64>> = (0..cols)
            .map(|i| (0..cols).map(|j| (0..rows).map(|k| jac[k][i] * jac[k][j]).sum()).collect())
            .collect();
        let jtr: Vec<f64> = (0..cols).map(|i| (0..rows).map(|k| jac[k][i] * rhs[k]).sum()).collect();
        solve_dense(jtj, jtr)
    }
}

const NEWTON_ITERATIONS: usize = 50;

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// Adjusts the last ⌊(N+1)/2⌋ increments so that the harmonic ground levels
/// of all inequivalent wells coincide within `tol`.
pub fn maximal_degeneracy_domain(shape: &WellShape, tol: f64) -> Result<DegeneracyDomain> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tol must be positive, got {tol}")));
    }
    if !shape.is_strict() {
        return Err(Error::InvalidShape("increments must be strictly increasing and positive".into()));
    }
    let n = shape.order();
    let free = (n + 1) / 2;
    let mut gaps: Vec<f64> = shape
        .increments()
        .iter()
        .scan(0.0, |prev, &s| {
            let g = s - *prev;
            *prev = s;
            Some(g)
        })
        .collect();
    let first_free = n - free;

    let mut residuals = constraint_residuals(&gaps)?;
    let mut iterations = 0;
    while !residuals.is_empty() && max_abs(&residuals) > tol {
        if iterations == NEWTON_ITERATIONS {
            return Err(Error::NewtonFailed {
                iterations,
                residuals,
            });
        }
        iterations += 1;
        let mut jac = vec![vec![0.0; free]; residuals.len()];
        for j in 0..free {
            let k = first_free + j;
            let step = 1e-6 * gaps[k].max(1.0);
            let mut plus = gaps.clone();
            let mut minus = gaps.clone();
            plus[k] += step;
            minus[k] = (minus[k] - step).max(0.5 * gaps[k]);
            let dk = plus[k] - minus[k];
            let rp = constraint_residuals(&plus)?;
            let rm = constraint_residuals(&minus)?;
            for (i, row) in jac.iter_mut().enumerate() {
                row[j] = (rp[i] - rm[i]) / dk;
            }
        }
        let rhs: Vec<f64> = residuals.iter().map(|r| -r).collect();
        let Some(step) = newton_step(&jac, &rhs) else {
            return Err(Error::NewtonFailed {
                iterations,
                residuals,
            });
        };
        let current = max_abs(&residuals);
        let mut scale = 1.0;
        let mut accepted = None;
        for _ in 0..40 {
            let mut trial = gaps.clone();
            for (j, d) in step.iter().enumerate() {
                trial[first_free + j] += scale * d;
            }
            if trial.iter().all(|g| *g > 0.0) {
                if let Ok(r) = constraint_residuals(&trial) {
                    if r.len() == residuals.len() && max_abs(&r) < current {
                        accepted = Some((trial, r));
                        break;
                    }
                }
            }
            scale *= 0.5;
        }
        match accepted {
            Some((g, r)) => {
                gaps = g;
                residuals = r;
            }
            None => {
                return Err(Error::NewtonFailed {
                    iterations,
                    residuals,
                })
            }
        }
    }

    let shape = shape_from_gaps(&gaps)?;
    let wells = well_grounds(&shape)?;
    let mut max_residual: f64 = 0.0;
    for (i, a) in wells.iter().enumerate() {
        for b in &wells[i + 1..] {
            max_residual = max_residual.max((a.energy - b.energy).abs());
        }
    }
    Ok(DegeneracyDomain {
        deep_well: shape.is_deep(),
        shape,
        wells,
        max_residual,
        iterations,
        free_parameters: free,
        sufficiency_violated: max_residual > 10.0 * tol,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocusMethod {
    Linearized,
    Cubic,
}

/// Critical δ at which the left off-central well of `V + ε x³` takes over
/// from the central one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymLocusPoint {
    pub epsilon: f64,
    pub alpha: f64,
    pub delta: f64,
    pub method: LocusMethod,
}

/// `δ = −2ε / (√3 α³)`, valid for |ε| <= 0.1 α³.
pub fn asym_locus_linearized(epsilon: f64, alpha: f64) -> Result<AsymLocusPoint> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidParameter(format!("alpha must be positive, got {alpha}")));
    }
    let a3 = alpha.powi(3);
    let limit = PERTURBATIVE_LIMIT * a3;
    if epsilon.abs() > limit {
        return Err(Error::PerturbationTooLarge { epsilon, limit });
    }
    Ok(AsymLocusPoint {
        epsilon,
        alpha,
        delta: -2.0 * epsilon / (3f64.sqrt() * a3),
        method: LocusMethod::Linearized,
    })
}

/// `α⁶ + 3/2 α⁴β² − 1/2 β⁶ − (α²+β²)^{3/2} ε`, scaled by α⁻⁶, with
/// β² = (2+δ)α².
pub fn locus_residual(epsilon: f64, alpha: f64, delta: f64) -> f64 {
    let a2 = alpha * alpha;
    let b2 = a2 * (2.0 + delta);
    let a6 = a2 * a2 * a2;
    (a6 + 1.5 * a2 * a2 * b2 - 0.5 * b2 * b2 * b2 - (a2 + b2).powf(1.5) * epsilon) / a6
}

/// The ε implied by a given δ: `ε = −½ α³ δ √(3+δ)`.
pub fn locus_epsilon(alpha: f64, delta: f64) -> f64 {
    -0.5 * alpha.powi(3) * delta * (3.0 + delta).sqrt()
}

/// Lower end of the branch connected to δ = 0; below it a second, unphysical
/// root with β → 0 exists.
pub const LOCUS_BRANCH_LO: f64 = -2.0;
pub const LOCUS_BRANCH_HI: f64 = 1.0;

/// Solves the full locus equation for δ on the branch through δ = 0.
pub fn asym_locus_cubic(epsilon: f64, alpha: f64) -> Result<AsymLocusPoint> {
    if !(alpha > 0.0) || !epsilon.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "alpha must be positive and epsilon finite (alpha = {alpha}, epsilon = {epsilon})"
        )));
    }
    let point = |delta| AsymLocusPoint {
        epsilon,
        alpha,
        delta,
        method: LocusMethod::Cubic,
    };
    if epsilon == 0.0 {
        return Ok(point(0.0));
    }
    // Factored form of locus_residual, −(3+δ)^{3/2}·[½δ√(3+δ) + ε/α³].
    // Solving the bracket avoids cancelling O(1) terms near δ = 0.
    let tilt = epsilon / alpha.powi(3);
    let f = |d: f64| 0.5 * d * (3.0 + d).sqrt() + tilt;
    let (lo, hi) = (LOCUS_BRANCH_LO, LOCUS_BRANCH_HI);
    let (f_lo, f_hi) = (f(lo), f(hi));
    if (f_lo < 0.0) == (f_hi < 0.0) {
        return Err(Error::NoLocusRoot { epsilon, alpha });
    }
    let delta = bisect(|d| Ok(f(d)), lo, hi, f_lo, 0.0)?;
    Ok(point(delta))
}

/// First-order changes of the leftmost well under `+ ε x³`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WellPerturbation {
    /// Change of V at the left minimum: −ε (α²+β²)^{3/2}.
    pub depth_shift: f64,
    /// Change of V'' at the left minimum: 3√(α²+β²)(4α²+5β²)/β² · ε.
    pub curvature_shift: f64,
}

pub fn left_well_perturbation(alpha: f64, beta: f64, epsilon: f64) -> Result<WellPerturbation> {
    if !(alpha > 0.0) || !(beta > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha and beta must be positive (got {alpha}, {beta})"
        )));
    }
    let (a2, b2) = (alpha * alpha, beta * beta);
    let r = (a2 + b2).sqrt();
    Ok(WellPerturbation {
        depth_shift: -epsilon * r * r * r,
        curvature_shift: 3.0 * r * (4.0 * a2 + 5.0 * b2) / b2 * epsilon,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub delta: f64,
    /// Ground-state energy.
    pub e0: f64,
    pub w_central: f64,
    pub w_outer: f64,
    pub label: Label,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanTable {
    pub alpha: f64,
    pub rows: Vec<ScanRow>,
    /// δ where the ground-state central weight first drops through 1/2,
    /// linearly interpolated; `None` when it never does in range.
    pub crossing: Option<f64>,
}

pub fn lattice(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
        .collect()
}

/// Ground-state central weight of the symmetric sextic at one δ.
pub fn ground_state_row(alpha: f64, delta: f64, cfg: &SolverConfig) -> Result<ScanRow> {
    let p = sextic(alpha, delta)?;
    let mut cfg = *cfg;
    cfg.num_levels = cfg.num_levels.max(1);
    let pairs = solve_numerical(&p, &cfg)?;
    let labels = classify_levels(&pairs[..1], &p)?;
    let ground = &labels[0];
    Ok(ScanRow {
        delta,
        e0: ground.energy,
        w_central: ground.central_weight,
        w_outer: ground.regions.iter().filter(|r| !r.central).fold(0.0, |s, r| s + r.weight),
        label: ground.label,
    })
}

/// First downward passage of `w` through 1/2 along `xs`, interpolated.
pub fn half_crossing(xs: &[f64], w: &[f64]) -> Option<f64> {
    xs.windows(2).zip(w.windows(2)).find_map(|(x, w)| {
        (w[0] >= 0.5 && w[1] < 0.5).then(|| x[0] + (w[0] - 0.5) / (w[0] - w[1]) * (x[1] - x[0]))
    })
}

/// Numerical relocalization scan over `steps` lattice points of δ.
pub fn relocalization_scan(
    alpha: f64,
    range: (f64, f64),
    steps: usize,
    cfg: &SolverConfig,
    exec: Execution,
) -> Result<ScanTable> {
    if steps < 3 || !(range.0 < range.1) {
        return Err(Error::InvalidParameter(format!(
            "need steps >= 3 and lo < hi (steps = {steps}, range = {range:?})"
        )));
    }
    let deltas = lattice(range.0, range.1, steps);
    let rows = parallel::map(&deltas, exec, |&d| ground_state_row(alpha, d, cfg))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let w: Vec<f64> = rows.iter().map(|r| r.w_central).collect();
    Ok(ScanTable {
        alpha,
        crossing: half_crossing(&deltas, &w),
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TiltRow {
    pub tilt: f64,
    pub e0: f64,
    /// Ground-state probability left of the barrier.
    pub w_left: f64,
}

/// Ground-state left-well weight of `x⁴ + a x² + b x` for each tilt b.
pub fn tilt_scan(a: f64, tilts: &[f64], cfg: &SolverConfig, exec: Execution) -> Result<Vec<TiltRow>> {
    parallel::map(tilts, exec, |&b| {
        let p = Polynomial::new(vec![0.0, b, a, 0.0, 1.0])?;
        let mut cfg = *cfg;
        cfg.num_levels = 1;
        let ground = solve_numerical(&p, &cfg)?.swap_remove(0);
        let regions = well_weights(&ground, &p)?;
        let w_left = if regions.len() > 1 { regions[0].weight } else {
            // Single well: count the part left of the origin.
            let g = ground.grid;
            ground
                .psi
                .iter()
                .enumerate()
                .filter(|(i, _)| g.x(*i) < 0.0)
                .map(|(_, p)| p * p * g.step())
                .sum()
        };
        Ok(TiltRow {
            tilt: b,
            e0: ground.energy,
            w_left,
        })
    })
    .into_iter()
    .collect()
}
