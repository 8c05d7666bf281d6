//! Dense real polynomials with ascending coefficient storage.
//!
//! This is the carrier for every potential in the crate: V(x), V'(x) and
//! V''(x) are all `Polynomial`s. Real roots are isolated by recursing on the
//! derivative: between two consecutive real roots of p' the polynomial is
//! monotone, so each such interval holds at most one root and a sign change
//! brackets it exactly. Refinement is plain bisection.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on bisection steps per bracketed root.
pub const DEFAULT_MAX_BISECTIONS: usize = 2000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

/// A real root located by [`Polynomial::real_roots`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealRoot {
    pub x: f64,
    /// Set when a critical point of the polynomial lies within the root
    /// tolerance, i.e. the root may be (nearly) multiple.
    pub near_multiple: bool,
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients (`coeffs[k]` multiplies
    /// `x^k`). Trailing zeros are dropped; an empty vector is the zero
    /// polynomial.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if let Some((index, &value)) = coeffs.iter().enumerate().find(|(_, c)| !c.is_finite()) {
            return Err(Error::NonFiniteCoefficient { index, value });
        }
        Ok(Self::from_finite(coeffs))
    }

    fn from_finite(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs[coeffs.len() - 1] == 0.0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![0.0] }
    }

    /// `c * x^k`
    pub fn monomial(k: usize, c: f64) -> Self {
        let mut coeffs = vec![0.0; k + 1];
        coeffs[k] = c;
        Self::from_finite(coeffs)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 0.0
    }

    pub fn leading(&self) -> f64 {
        self.coeffs[self.coeffs.len() - 1]
    }

    /// True when every odd-power coefficient is exactly zero.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(|&c| c == 0.0)
    }

    /// Horner evaluation, highest power first.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Bound on the absolute rounding error of [`eval`](Self::eval) at `x`.
    pub fn eval_error_bound(&self, x: f64) -> f64 {
        let ax = x.abs();
        let magnitude = self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * ax + c.abs());
        4.0 * (self.coeffs.len() as f64) * f64::EPSILON * magnitude
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| k as f64 * c)
            .collect();
        Self::from_finite(coeffs)
    }

    /// Antiderivative with the integration constant chosen so that the result
    /// vanishes at the origin.
    pub fn antiderivative(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(0.0);
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| c / (k as f64 + 1.0)),
        );
        Self::from_finite(coeffs)
    }

    /// Splits into (even part, odd part). The parts sum back to `self`
    /// exactly since every coefficient lands in exactly one of them.
    pub fn even_odd_split(&self) -> (Self, Self) {
        let mut even = vec![0.0; self.coeffs.len()];
        let mut odd = vec![0.0; self.coeffs.len()];
        for (k, &c) in self.coeffs.iter().enumerate() {
            if k % 2 == 0 {
                even[k] = c;
            } else {
                odd[k] = c;
            }
        }
        (Self::from_finite(even), Self::from_finite(odd))
    }

    /// Multiplies every coefficient by `factor`.
    pub fn scale(&self, factor: f64) -> Self {
        Self::from_finite(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// All real roots in `[lo, hi]`, ascending.
    pub fn real_roots(&self, lo: f64, hi: f64, tol: f64) -> Result<Vec<RealRoot>> {
        self.real_roots_with_limit(lo, hi, tol, DEFAULT_MAX_BISECTIONS)
    }

    /// As [`real_roots`](Self::real_roots) with an explicit bisection budget
    /// per bracketed root. Exceeding the budget is an error.
    pub fn real_roots_with_limit(
        &self,
        lo: f64,
        hi: f64,
        tol: f64,
        max_bisections: usize,
    ) -> Result<Vec<RealRoot>> {
        if !(lo < hi) || !(tol > 0.0) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidInterval { lo, hi, tol });
        }
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        roots_in(self, lo, hi, tol, max_bisections)
    }
}

fn roots_in(p: &Polynomial, lo: f64, hi: f64, tol: f64, limit: usize) -> Result<Vec<RealRoot>> {
    match p.degree() {
        0 => return Ok(Vec::new()),
        1 => {
            let x = -p.coeffs[0] / p.coeffs[1];
            return Ok(if (lo..=hi).contains(&x) {
                vec![RealRoot {
                    x,
                    near_multiple: false,
                }]
            } else {
                Vec::new()
            });
        }
        _ => {}
    }

    let dp = p.derivative();
    let critical: Vec<f64> = roots_in(&dp, lo, hi, tol, limit)?
        .into_iter()
        .map(|r| r.x)
        .collect();

    let mut breaks = Vec::with_capacity(critical.len() + 2);
    breaks.push(lo);
    breaks.extend(critical.iter().copied().filter(|&c| c > lo && c < hi));
    breaks.push(hi);

    let mut roots: Vec<RealRoot> = Vec::new();
    let values: Vec<f64> = breaks.iter().map(|&b| p.eval(b)).collect();

    for (&b, &v) in breaks.iter().zip(&values) {
        if v == 0.0 {
            roots.push(RealRoot {
                x: b,
                near_multiple: false,
            });
        }
    }
    for i in 0..breaks.len() - 1 {
        let (a, b) = (breaks[i], breaks[i + 1]);
        let (fa, fb) = (values[i], values[i + 1]);
        if fa != 0.0 && fb != 0.0 && (fa < 0.0) != (fb < 0.0) {
            let x = bisect(p, a, b, fa, tol, limit)?;
            roots.push(RealRoot {
                x,
                near_multiple: false,
            });
        }
    }
    // A root that touches zero without crossing sits on a critical point.
    let ddp = dp.derivative();
    for &c in &critical {
        let v = p.eval(c);
        let threshold = p
            .eval_error_bound(c)
            .max(0.5 * ddp.eval(c).abs() * tol * tol);
        if v.abs() <= threshold {
            roots.push(RealRoot {
                x: c,
                near_multiple: true,
            });
        }
    }

    roots.sort_by(|a, b| a.x.total_cmp(&b.x));
    let mut merged: Vec<RealRoot> = Vec::with_capacity(roots.len());
    for r in roots {
        match merged.last_mut() {
            Some(last) if (r.x - last.x).abs() <= tol => {
                if r.near_multiple && !last.near_multiple {
                    last.x = r.x;
                }
                last.near_multiple = true;
            }
            _ => merged.push(r),
        }
    }
    for r in &mut merged {
        if critical.iter().any(|&c| (c - r.x).abs() <= tol) {
            r.near_multiple = true;
        }
    }
    Ok(merged)
}

fn bisect(p: &Polynomial, mut a: f64, mut b: f64, fa: f64, tol: f64, limit: usize) -> Result<f64> {
    let negative_at_a = fa < 0.0;
    let target = 1e-6 * tol;
    for _ in 0..limit {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b || b - a <= target {
            return Ok(mid);
        }
        let fm = p.eval(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == negative_at_a {
            a = mid;
        } else {
            b = mid;
        }
    }
    Err(Error::RootIsolation {
        limit,
        near: 0.5 * (a + b),
    })
}

impl TryFrom<Vec<f64>> for Polynomial {
    type Error = Error;

    fn try_from(coeffs: Vec<f64>) -> Result<Self> {
        Self::new(coeffs)
    }
}

impl From<Polynomial> for Vec<f64> {
    fn from(p: Polynomial) -> Self {
        p.coeffs
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_finite((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_finite((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::from_finite(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(-1.0)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0.0 {
                continue;
            }
            let sign = if c < 0.0 { "-" } else { "+" };
            if first {
                if c < 0.0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            match (k, mag == 1.0) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag} x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag} x^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[f64]) -> Polynomial {
        Polynomial::new(c.to_vec()).unwrap()
    }

    // x^6 - 96 x^4 + 2304 x^2
    fn sextic() -> Polynomial {
        poly(&[0.0, 0.0, 2304.0, 0.0, -96.0, 0.0, 1.0])
    }

    #[test]
    fn normalizes_trailing_zeros() {
        let p = poly(&[1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.coeffs(), &[1.0, 2.0]);
        assert_eq!(p.degree(), 1);
        assert!(poly(&[]).is_zero());
        assert!(poly(&[0.0, 0.0]).is_zero());
    }

    #[test]
    fn rejects_non_finite() {
        assert!(matches!(
            Polynomial::new(vec![1.0, f64::NAN]),
            Err(Error::NonFiniteCoefficient { index: 1, .. })
        ));
    }

    #[test]
    fn evaluates_sextic() {
        assert_eq!(Polynomial::zero().eval(5.0), 0.0);
        let p = sextic();
        assert_eq!(p.eval(0.0), 0.0);
        assert!(p.eval(48f64.sqrt()).abs() < 1e-9);
        assert_eq!(p.eval(4.0), 16384.0);
    }

    #[test]
    fn derivative_examples() {
        assert!(Polynomial::zero().derivative().is_zero());
        assert_eq!(
            sextic().derivative().coeffs(),
            &[0.0, 4608.0, 0.0, -384.0, 0.0, 6.0]
        );
        let octic = poly(&[0.0, 0.0, -24.0, 0.0, 22.0, 0.0, -8.0, 0.0, 1.0]);
        assert_eq!(
            octic.derivative().coeffs(),
            &[0.0, -48.0, 0.0, 88.0, 0.0, -48.0, 0.0, 8.0]
        );
    }

    #[test]
    fn antiderivative_examples() {
        assert!(Polynomial::zero().antiderivative().is_zero());
        // 6x(x^2-16)(x^2-48)
        let dv = poly(&[0.0, 4608.0, 0.0, -384.0, 0.0, 6.0]);
        assert_eq!(dv.antiderivative(), sextic());
        let q = poly(&[0.0, -48.0, 0.0, 88.0, 0.0, -48.0, 0.0, 8.0]);
        assert_eq!(q.antiderivative().derivative(), q);
        assert_eq!(q.antiderivative().eval(0.0), 0.0);
    }

    #[test]
    fn even_odd_split_sorts_powers() {
        let p = poly(&[0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0]);
        let (e, o) = p.even_odd_split();
        assert_eq!(e, Polynomial::monomial(6, 1.0));
        assert_eq!(o, Polynomial::monomial(3, 1.0));
        let (e, o) = sextic().even_odd_split();
        assert_eq!(e, sextic());
        assert!(o.is_zero());
    }

    #[test]
    fn roots_of_factored_quintic() {
        let roots = sextic().derivative().real_roots(-10.0, 10.0, 1e-12).unwrap();
        let want = [-48f64.sqrt(), -4.0, 0.0, 4.0, 48f64.sqrt()];
        assert_eq!(roots.len(), 5);
        for (r, w) in roots.iter().zip(want) {
            assert!((r.x - w).abs() < 1e-12, "{} vs {}", r.x, w);
            assert!(!r.near_multiple);
        }
    }

    #[test]
    fn no_real_roots() {
        let p = poly(&[1.0, 0.0, 1.0]);
        assert!(p.real_roots(-10.0, 10.0, 1e-10).unwrap().is_empty());
    }

    #[test]
    fn double_root_is_flagged() {
        // (x-1)^2 (x+2)
        let p = poly(&[2.0, -3.0, 0.0, 1.0]);
        let roots = p.real_roots(-5.0, 5.0, 1e-9).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0].x + 2.0).abs() < 1e-12 && !roots[0].near_multiple);
        assert!((roots[1].x - 1.0).abs() < 1e-9 && roots[1].near_multiple);
        // x^4: single degenerate root at the origin
        let roots = Polynomial::monomial(4, 1.0).real_roots(-1.0, 1.0, 1e-9).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(roots[0].x.abs() < 1e-9 && roots[0].near_multiple);
    }

    #[test]
    fn perturbed_root_near_four() {
        // 6x(x^2-16)(x^2-48) + 3 eps x^2
        let eps = 0.01;
        let p = &sextic().derivative() + &Polynomial::monomial(2, 3.0 * eps);
        let roots = p.real_roots(-10.0, 10.0, 1e-13).unwrap();
        let near = roots.iter().find(|r| (r.x - 4.0).abs() < 0.1).unwrap();
        assert!((near.x - (4.0 + eps / 128.0)).abs() < 1e-6);
    }

    #[test]
    fn bisection_budget_is_enforced() {
        let p = poly(&[-2.0, 0.0, 1.0]);
        assert!(matches!(
            p.real_roots_with_limit(0.0, 10.0, 1e-12, 3),
            Err(Error::RootIsolation { limit: 3, .. })
        ));
    }

    #[test]
    fn invalid_interval() {
        let p = poly(&[1.0, 1.0]);
        assert!(p.real_roots(1.0, 1.0, 1e-6).is_err());
        assert!(p.real_roots(0.0, 1.0, 0.0).is_err());
        assert_eq!(Polynomial::zero().real_roots(0.0, 1.0, 1e-6), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn display_reads_naturally() {
        assert_eq!(sextic().to_string(), "x^6 - 96 x^4 + 2304 x^2");
        assert_eq!(poly(&[-1.0, 1.0]).to_string(), "x - 1");
    }
}
