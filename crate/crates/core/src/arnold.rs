//! Symmetric Arnold potentials built from well shapes, their critical points,
//! the local harmonic model of each well, and the closed-form shifts produced
//! by small odd perturbations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polynomial::Polynomial;

/// Squared radii `s_1 <= s_2 <= ... <= s_N` of the non-zero stationary
/// points of a symmetric potential. With widths (α, β, γ, …) these are the
/// running sums α², α²+β², α²+β²+γ², ….
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WellShape {
    increments: Vec<f64>,
}

impl WellShape {
    /// From cumulative squared radii.
    pub fn new(increments: Vec<f64>) -> Result<Self> {
        if increments.is_empty() {
            return Err(Error::InvalidShape("at least one increment is required".into()));
        }
        if let Some(s) = increments.iter().find(|s| !s.is_finite() || **s < 0.0) {
            return Err(Error::InvalidShape(format!(
                "increments must be finite and non-negative, got {s}"
            )));
        }
        if increments.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidShape(format!(
                "increments must be non-decreasing: {increments:?}"
            )));
        }
        Ok(Self { increments })
    }

    /// From the widths (α, β, γ, …); the squared radii are their running sums
    /// of squares.
    pub fn from_widths(widths: &[f64]) -> Result<Self> {
        let mut acc = 0.0;
        let increments = widths
            .iter()
            .map(|w| {
                acc += w * w;
                acc
            })
            .collect();
        Self::new(increments)
    }

    pub fn increments(&self) -> &[f64] {
        &self.increments
    }

    /// Number of increments N; the potential has degree 2N + 2.
    pub fn order(&self) -> usize {
        self.increments.len()
    }

    /// Widths (α, β, …) recovered from the increments.
    pub fn widths(&self) -> Vec<f64> {
        let mut prev = 0.0;
        self.increments
            .iter()
            .map(|&s| {
                let w = (s - prev).max(0.0).sqrt();
                prev = s;
                w
            })
            .collect()
    }

    /// Strictly positive and strictly increasing.
    pub fn is_strict(&self) -> bool {
        self.increments[0] > 0.0 && self.increments.windows(2).all(|w| w[1] > w[0])
    }

    /// Pronounced-well regime in Λ = 1 units: s_1 >= 1 and every gap >= 1.
    /// Operations that rely on deep wells warn, not fail, when this is false.
    pub fn is_deep(&self) -> bool {
        self.increments[0] >= 1.0 && self.increments.windows(2).all(|w| w[1] - w[0] >= 1.0)
    }

    /// Every length multiplied by `lambda` (squared radii by λ²).
    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        Self::new(self.increments.iter().map(|s| s * lambda * lambda).collect())
    }
}

/// Local model V ≈ depth + half_curvature·(x − x)² of one well.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HarmonicWell {
    pub x: f64,
    pub depth: f64,
    pub half_curvature: f64,
}

impl HarmonicWell {
    /// `depth + (2m+1)·Λ·√G`
    pub fn level(&self, m: usize, lambda: f64) -> f64 {
        self.depth + (2 * m + 1) as f64 * lambda * self.half_curvature.sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriticalKind {
    Minimum,
    Maximum,
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub x: f64,
    pub value: f64,
    pub curvature: f64,
    pub kind: CriticalKind,
}

/// The symmetric potential whose derivative is `(2N+2)·x·∏(x² − s_k)`,
/// normalized to V(0) = 0. Monic and even, of degree 2N + 2.
pub fn build_symmetric(shape: &WellShape) -> Polynomial {
    let n = shape.order();
    let mut dv = Polynomial::monomial(1, (2 * n + 2) as f64);
    for &s in shape.increments() {
        let factor = Polynomial::new(vec![-s, 0.0, 1.0]).expect("finite shape");
        dv = &dv * &factor;
    }
    dv.antiderivative()
}

/// Couplings (a, c) of `x⁶ + a x⁴ + c x²` with stationary points at 0, ±α and
/// ±√(α²+β²).
pub fn couplings_n2(alpha: f64, beta: f64) -> (f64, f64) {
    let (a2, b2) = (alpha * alpha, beta * beta);
    (-3.0 * (a2 + 0.5 * b2), 3.0 * a2 * (a2 + b2))
}

/// Couplings of `x⁸ + a x⁶ + c x⁴ + f x²` plus the values and second
/// derivatives at the inner (x = α) and outer (x = √(α²+β²+γ²)) minima.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OcticForms {
    pub a: f64,
    pub c: f64,
    pub f: f64,
    pub inner_min: f64,
    pub inner_curvature: f64,
    pub outer_min: f64,
    pub outer_curvature: f64,
}

impl OcticForms {
    /// The inner well is flat when β = 0 or when β and γ both vanish.
    pub fn inner_degenerate(&self) -> bool {
        self.inner_curvature == 0.0
    }
}

pub fn couplings_n3(alpha: f64, beta: f64, gamma: f64) -> OcticForms {
    let (a2, b2, g2) = (alpha * alpha, beta * beta, gamma * gamma);
    let (a4, b4, g4) = (a2 * a2, b2 * b2, g2 * g2);
    let (a6, b6, g6) = (a4 * a2, b4 * b2, g4 * g2);
    let (a8, b8, g8) = (a4 * a4, b4 * b4, g4 * g4);
    OcticForms {
        a: -4.0 * a2 - 8.0 / 3.0 * b2 - 4.0 / 3.0 * g2,
        c: 8.0 * a2 * b2 + 4.0 * a2 * g2 + 2.0 * b4 + 6.0 * a4 + 2.0 * b2 * g2,
        f: -4.0 * a2 * b2 * g2 - 4.0 * a6 - 8.0 * a4 * b2 - 4.0 * a4 * g2 - 4.0 * a2 * b4,
        inner_min: -a8 - 8.0 / 3.0 * a6 * b2 - 4.0 / 3.0 * a6 * g2 - 2.0 * a4 * b4
            - 2.0 * a4 * b2 * g2,
        inner_curvature: 16.0 * a2 * b4 + 16.0 * a2 * b2 * g2,
        outer_min: -a8 - 2.0 * a4 * b2 * g2 + b8 / 3.0 - 2.0 / 3.0 * b2 * g6
            - 8.0 / 3.0 * a6 * b2
            - 4.0 / 3.0 * a6 * g2
            - 2.0 * a4 * b4
            + 2.0 / 3.0 * b6 * g2
            - g8 / 3.0,
        outer_curvature: 16.0 * b4 * g2 + 16.0 * a2 * b2 * g2 + 32.0 * b2 * g4 + 16.0 * g6
            + 16.0 * a2 * g4,
    }
}

/// Magnitude of V'' terms at the edge of the window; degeneracy is judged
/// relative to it.
fn curvature_scale(p: &Polynomial, window: f64) -> f64 {
    p.coeffs()
        .iter()
        .enumerate()
        .skip(2)
        .map(|(k, c)| c.abs() * (k * (k - 1)) as f64 * window.powi(k as i32 - 2))
        .sum::<f64>()
        .max(f64::MIN_POSITIVE)
}

/// Relative threshold below which |V''| counts as zero.
pub const DEGENERACY_TOLERANCE: f64 = 1e-9;

/// All stationary points of `p` in `[-window, window]`, ascending in x.
///
/// The window must be wide enough that V' keeps one sign on the probe bands
/// `window < |x| <= 2·window`.
pub fn critical_points(p: &Polynomial, window: f64) -> Result<Vec<CriticalPoint>> {
    if !(window > 0.0) || !window.is_finite() {
        return Err(Error::InvalidParameter(format!("window must be positive, got {window}")));
    }
    let dp = p.derivative();
    if dp.is_zero() {
        return Ok(Vec::new());
    }
    let tol = 1e-12 * window.max(1.0);
    for (lo, hi) in [(window, 2.0 * window), (-2.0 * window, -window)] {
        if let Some(r) = dp.real_roots(lo, hi, tol)?.into_iter().find(|r| r.x.abs() > window) {
            return Err(Error::WindowTooSmall { window, x: r.x });
        }
    }
    let ddp = dp.derivative();
    let scale = curvature_scale(p, window);
    let points = dp
        .real_roots(-window, window, tol)?
        .into_iter()
        .map(|r| {
            let curvature = ddp.eval(r.x);
            let kind = if r.near_multiple || curvature.abs() < DEGENERACY_TOLERANCE * scale {
                CriticalKind::Degenerate
            } else if curvature > 0.0 {
                CriticalKind::Minimum
            } else {
                CriticalKind::Maximum
            };
            CriticalPoint {
                x: r.x,
                value: p.eval(r.x),
                curvature,
                kind,
            }
        })
        .collect();
    Ok(points)
}

fn is_local_min(p: &Polynomial, points: &[CriticalPoint], i: usize, window: f64) -> bool {
    let x = points[i].x;
    let left = if i > 0 { points[i - 1].x } else { -2.0 * window };
    let right = points.get(i + 1).map_or(2.0 * window, |c| c.x);
    let v = p.eval(x);
    p.eval(0.5 * (left + x)) > v && p.eval(0.5 * (x + right)) > v
}

/// One [`HarmonicWell`] per local minimum, ascending in x.
pub fn harmonic_wells(p: &Polynomial, window: f64) -> Result<Vec<HarmonicWell>> {
    let points = critical_points(p, window)?;
    let mut wells = Vec::new();
    for (i, cp) in points.iter().enumerate() {
        match cp.kind {
            CriticalKind::Minimum => wells.push(HarmonicWell {
                x: cp.x,
                depth: cp.value,
                half_curvature: 0.5 * cp.curvature,
            }),
            CriticalKind::Degenerate if is_local_min(p, &points, i, window) => {
                return Err(Error::DegenerateMinimum { x: cp.x });
            }
            _ => {}
        }
    }
    Ok(wells)
}

/// Location of the local minimum of `x·W(x)` for a harmonic well
/// `W(x) = λ^{2M+2}F + λ^{2M}G(x − λX)²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubicShift {
    pub x0: f64,
    /// Relative shift: `x0 = λ(1 + delta)X`. Independent of λ.
    pub delta: f64,
}

pub fn cubic_minimum_shift(depth: f64, half_curvature: f64, x: f64, lambda: f64) -> Result<CubicShift> {
    if !(half_curvature > 0.0) || !(x > 0.0) || !(lambda > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "need G > 0, X > 0, lambda > 0 (got G = {half_curvature}, X = {x}, lambda = {lambda})"
        )));
    }
    let g = half_curvature;
    let discriminant = g * g * x * x - 3.0 * depth * g;
    if discriminant < 0.0 {
        return Err(Error::NoRealExtremum { discriminant });
    }
    let delta = -depth / (g * x * x + x * discriminant.sqrt());
    Ok(CubicShift {
        x0: lambda * (1.0 + delta) * x,
        delta,
    })
}

/// Largest |ε| / α³ for which the first-order shift formulas are used.
pub const PERTURBATIVE_LIMIT: f64 = 0.1;

/// Shifts of the five stationary points of `x⁶ + a x⁴ + ε x³ + c x²`.
///
/// With ε > 0 the set `{−√(α²+β²), −α, 0, α, √(α²+β²)}` moves to
/// `{−√(α²+β²) − εp², −α + εq², 0, α + εu², √(α²+β²) − εv²}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerturbedExtrema {
    pub epsilon: f64,
    /// Leading-order p², q², u², v²; all equal 1/(4β²).
    pub p2: f64,
    pub q2: f64,
    pub u2: f64,
    pub v2: f64,
    /// Coefficient of ε in u²(ε).
    pub u2_correction: f64,
    /// Stationary points of the perturbed potential, ascending.
    pub stationary: Vec<f64>,
    /// p², q², u², v² read off the numeric stationary points; equal to the
    /// leading values when ε = 0.
    pub numeric_shifts: [f64; 4],
}

pub fn perturbed_extrema_n2(alpha: f64, beta: f64, epsilon: f64) -> Result<PerturbedExtrema> {
    if !(alpha > 0.0) || !(beta > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha and beta must be positive (got {alpha}, {beta})"
        )));
    }
    let limit = PERTURBATIVE_LIMIT * alpha.powi(3);
    if epsilon.abs() > limit {
        return Err(Error::PerturbationTooLarge { epsilon, limit });
    }
    let (a2, b2) = (alpha * alpha, beta * beta);
    let outer = (a2 + b2).sqrt();
    let leading = 1.0 / (4.0 * b2);
    let u2_correction = (b2 + 4.0 * a2) / (32.0 * alpha * b2 * b2 * b2);

    let shape = WellShape::new(vec![a2, a2 + b2])?;
    let v = &build_symmetric(&shape) + &Polynomial::monomial(3, epsilon);
    let window = 2.0 * outer + 1.0;
    let tol = 1e-14 * window;
    let stationary: Vec<f64> = v
        .derivative()
        .real_roots(-window, window, tol)?
        .into_iter()
        .map(|r| r.x)
        .collect();
    if stationary.len() != 5 {
        return Err(Error::InvalidParameter(format!(
            "expected five stationary points, found {}",
            stationary.len()
        )));
    }
    let numeric_shifts = if epsilon == 0.0 {
        [leading; 4]
    } else {
        [
            (-outer - stationary[0]) / epsilon,
            (stationary[1] + alpha) / epsilon,
            (stationary[3] - alpha) / epsilon,
            (outer - stationary[4]) / epsilon,
        ]
    };
    Ok(PerturbedExtrema {
        epsilon,
        p2: leading,
        q2: leading,
        u2: leading,
        v2: leading,
        u2_correction,
        stationary,
        numeric_shifts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(s: &[f64]) -> WellShape {
        WellShape::new(s.to_vec()).unwrap()
    }

    #[test]
    fn shape_validation() {
        assert!(WellShape::new(vec![]).is_err());
        assert!(WellShape::new(vec![2.0, 1.0]).is_err());
        assert!(WellShape::new(vec![-1.0]).is_err());
        let s = WellShape::from_widths(&[4.0, 32f64.sqrt()]).unwrap();
        assert!((s.increments()[1] - 48.0).abs() < 1e-12);
        assert!(s.is_strict() && s.is_deep());
        assert!(!shape(&[0.5, 1.0]).is_deep());
        let w = s.widths();
        assert!((w[0] - 4.0).abs() < 1e-12 && (w[1] - 32f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn builds_sextic_and_octic() {
        let p = build_symmetric(&shape(&[16.0, 48.0]));
        assert_eq!(p.coeffs(), &[0.0, 0.0, 2304.0, 0.0, -96.0, 0.0, 1.0]);
        let (a, c) = couplings_n2(4.0, 32f64.sqrt());
        assert!((a + 96.0).abs() < 1e-12 && (c - 2304.0).abs() < 1e-9);

        let q = build_symmetric(&shape(&[1.0, 2.0, 3.0]));
        assert_eq!(q.coeffs(), &[0.0, 0.0, -24.0, 0.0, 22.0, 0.0, -8.0, 0.0, 1.0]);

        assert_eq!(build_symmetric(&shape(&[0.0])), Polynomial::monomial(4, 1.0));
        assert_eq!(couplings_n2(0.0, 0.0), (-0.0, 0.0));
    }

    #[test]
    fn octic_forms_at_unit_widths() {
        let f = couplings_n3(1.0, 1.0, 1.0);
        assert!((f.a + 8.0).abs() < 1e-12);
        assert!((f.c - 22.0).abs() < 1e-12);
        assert!((f.f + 24.0).abs() < 1e-12);
        assert!((f.inner_min + 9.0).abs() < 1e-12);
        assert!((f.outer_min + 9.0).abs() < 1e-12);
        assert_eq!(f.inner_curvature, 32.0);
        assert_eq!(f.outer_curvature, 96.0);
        let p = build_symmetric(&shape(&[1.0, 2.0, 3.0]));
        let dd = p.derivative().derivative();
        assert!((p.eval(1.0) - f.inner_min).abs() < 1e-12);
        assert!((p.eval(3f64.sqrt()) - f.outer_min).abs() < 1e-12);
        assert!((dd.eval(1.0) - f.inner_curvature).abs() < 1e-12);
        assert!((dd.eval(3f64.sqrt()) - f.outer_curvature).abs() < 1e-9);
    }

    #[test]
    fn octic_single_well_degeneracy() {
        let f = couplings_n3(2.0, 0.0, 0.0);
        assert!(f.inner_degenerate());
        assert_eq!(f.inner_min, -256.0);
    }

    #[test]
    fn classifies_sextic() {
        let p = build_symmetric(&shape(&[16.0, 48.0]));
        let cps = critical_points(&p, 10.0).unwrap();
        let kinds: Vec<_> = cps.iter().map(|c| c.kind).collect();
        use CriticalKind::*;
        assert_eq!(kinds, [Minimum, Maximum, Minimum, Maximum, Minimum]);
        assert!((cps[1].x + 4.0).abs() < 1e-12);
        assert!((cps[4].x - 48f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn quartic_origin_is_degenerate() {
        let p = Polynomial::monomial(4, 1.0);
        let cps = critical_points(&p, 1.0).unwrap();
        assert_eq!(cps.len(), 1);
        assert_eq!(cps[0].kind, CriticalKind::Degenerate);
        assert_eq!(cps[0].value, 0.0);
        assert!(matches!(harmonic_wells(&p, 1.0), Err(Error::DegenerateMinimum { .. })));
    }

    #[test]
    fn window_must_cover_all_extrema() {
        let p = build_symmetric(&shape(&[16.0, 48.0]));
        assert!(matches!(critical_points(&p, 5.0), Err(Error::WindowTooSmall { .. })));
    }

    #[test]
    fn sextic_wells() {
        let p = build_symmetric(&shape(&[16.0, 48.0]));
        let wells = harmonic_wells(&p, 10.0).unwrap();
        assert_eq!(wells.len(), 3);
        assert!(wells[1].x.abs() < 1e-12);
        assert_eq!(wells[1].depth, 0.0);
        assert!((wells[1].half_curvature - 2304.0).abs() < 1e-9);
        for w in [wells[0], wells[2]] {
            assert!((w.x.abs() - 48f64.sqrt()).abs() < 1e-12);
            assert!(w.depth.abs() < 1e-9);
            assert!((w.half_curvature - 9216.0).abs() < 1e-8);
        }
        let single = Polynomial::new(vec![0.0, 0.0, 1.0, 0.0, 1.0]).unwrap();
        let w = harmonic_wells(&single, 2.0).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!((w[0].x, w[0].depth, w[0].half_curvature), (0.0, 0.0, 1.0));
    }

    #[test]
    fn cubic_shift_examples() {
        let s = cubic_minimum_shift(0.0, 3.0, 2.0, 5.0).unwrap();
        assert_eq!(s.delta, 0.0);
        assert_eq!(s.x0, 10.0);

        let s = cubic_minimum_shift(-1.0, 1.0, 2.0, 1.0).unwrap();
        let root = (8.0 + 28f64.sqrt()) / 6.0;
        assert!((s.x0 - root).abs() < 1e-14);
        assert!((s.delta - 0.107625).abs() < 1e-6);

        let big = cubic_minimum_shift(-1.0, 1.0, 2.0, 10.0).unwrap();
        assert_eq!(big.delta, s.delta);

        assert!(matches!(
            cubic_minimum_shift(10.0, 1.0, 1.0, 1.0),
            Err(Error::NoRealExtremum { .. })
        ));
    }

    #[test]
    fn perturbed_extrema_examples() {
        let beta = 32f64.sqrt();
        let z = perturbed_extrema_n2(4.0, beta, 0.0).unwrap();
        let want = [-48f64.sqrt(), -4.0, 0.0, 4.0, 48f64.sqrt()];
        for (x, w) in z.stationary.iter().zip(want) {
            assert!((x - w).abs() < 1e-12);
        }
        assert!((z.u2 - 0.0078125).abs() < 1e-17);
        assert!((z.u2_correction - 96.0 / 4194304.0).abs() < 1e-18);

        let e = perturbed_extrema_n2(4.0, beta, 0.01).unwrap();
        for s in e.numeric_shifts {
            assert!(s > 0.0);
            assert!((s - 1.0 / 128.0).abs() < 1e-4);
        }
        assert!(e.stationary[2].abs() < 1e-12);

        assert!(matches!(
            perturbed_extrema_n2(4.0, beta, 7.0),
            Err(Error::PerturbationTooLarge { .. })
        ));
    }
}
