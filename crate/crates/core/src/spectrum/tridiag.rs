//! Symmetric tridiagonal eigenproblems: eigenvalues by Sturm-count bisection,
//! eigenvectors by inverse iteration with a pivoted tridiagonal LU.

#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

/// Outcome of a failed inverse iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseIterationFailure {
    pub iterations: usize,
    pub residual: f64,
}

impl SymTridiagonal {
    /// `off[i]` couples rows `i` and `i + 1`.
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert!(!diag.is_empty(), "empty matrix");
        assert_eq!(off.len() + 1, diag.len(), "off-diagonal length mismatch");
        Self { diag, off }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &[f64] {
        &self.off
    }

    /// Gershgorin interval containing every eigenvalue.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.off[i - 1].abs() } else { 0.0 }
                + if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// Infinity norm.
    pub fn norm(&self) -> f64 {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs())
    }

    fn pivot_floor(&self) -> f64 {
        let max_off = self.off.iter().fold(0.0f64, |m, e| m.max(e * e));
        f64::MIN_POSITIVE.max(max_off * f64::EPSILON * f64::EPSILON)
    }

    /// Number of eigenvalues strictly below `x` (negative pivots of the
    /// LDLᵀ factorization of `T − x`).
    pub fn sturm_count(&self, x: f64) -> usize {
        let floor = self.pivot_floor();
        let mut count = 0;
        let mut q = self.diag[0] - x;
        for i in 0..self.len() {
            if i > 0 {
                let e = self.off[i - 1];
                q = self.diag[i] - x - e * e / q;
            }
            if q.abs() < floor {
                q = -floor;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `k`-th smallest eigenvalue (0-based), bisected to roughly machine
    /// precision relative to the matrix norm.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        assert!(k < self.len(), "eigenvalue index out of range");
        let (mut lo, mut hi) = self.gershgorin();
        let pad = f64::EPSILON * self.norm().max(1.0);
        lo -= pad;
        hi += pad;
        let tol = 2.0 * f64::EPSILON * self.norm().max(f64::MIN_POSITIVE);
        for _ in 0..256 {
            if hi - lo <= tol {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.sturm_count(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    pub fn lowest_eigenvalues(&self, count: usize) -> Vec<f64> {
        (0..count.min(self.len())).map(|k| self.eigenvalue(k)).collect()
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * v[i];
                if i > 0 {
                    s += self.off[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s += self.off[i] * v[i + 1];
                }
                s
            })
            .collect()
    }

    /// ‖T v − λ v‖₂ for a unit vector `v`.
    pub fn residual(&self, lambda: f64, v: &[f64]) -> f64 {
        self.apply(v)
            .iter()
            .zip(v)
            .map(|(tv, x)| (tv - lambda * x).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// Unit eigenvector for the eigenvalue estimate `lambda`, kept orthogonal
    /// to every vector in `against` (needed inside near-degenerate clusters).
    pub fn inverse_iteration(
        &self,
        lambda: f64,
        against: &[Vec<f64>],
        max_iterations: usize,
    ) -> Result<Vec<f64>, InverseIterationFailure> {
        let n = self.len();
        let lu = ShiftedLu::factor(self, lambda);
        let mut v: Vec<f64> = (0..n)
            .map(|i| {
                // Deterministic, non-symmetric start so both parities are seeded.
                let t = (i as f64 + 1.0) * 0.618_033_988_749_895;
                1.0 + 0.5 * (t - t.floor())
            })
            .collect();
        normalize(&mut v);
        let tol = 1e-10 * self.norm().max(1.0);
        let mut residual = f64::INFINITY;
        for it in 1..=max_iterations {
            lu.solve(&mut v);
            for u in against {
                let d = dot(u, &v);
                v.iter_mut().zip(u).for_each(|(x, y)| *x -= d * y);
            }
            if !normalize(&mut v) {
                return Err(InverseIterationFailure {
                    iterations: it,
                    residual,
                });
            }
            residual = self.residual(lambda, &v);
            if it >= 2 && residual <= tol {
                return Ok(v);
            }
        }
        Err(InverseIterationFailure {
            iterations: max_iterations,
            residual,
        })
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) -> bool {
    let norm = dot(v, v).sqrt();
    if !(norm > 0.0) || !norm.is_finite() {
        return false;
    }
    v.iter_mut().for_each(|x| *x /= norm);
    true
}

/// LU of `T − σI` with partial pivoting; U has two super-diagonals.
struct ShiftedLu {
    dl: Vec<f64>,
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn factor(t: &SymTridiagonal, sigma: f64) -> Self {
        let n = t.len();
        let mut dl = t.off.clone();
        let mut du = t.off.clone();
        let mut d: Vec<f64> = t.diag.iter().map(|x| x - sigma).collect();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i] != 0.0 {
                    let fact = dl[i] / d[i];
                    dl[i] = fact;
                    d[i + 1] -= fact * du[i];
                }
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
                swapped[i] = true;
            }
        }
        // A singular U means σ hit an eigenvalue exactly; nudge the pivot.
        let tiny = f64::EPSILON * t.norm().max(f64::MIN_POSITIVE);
        for p in &mut d {
            if p.abs() < tiny {
                *p = if *p < 0.0 { -tiny } else { tiny };
            }
        }
        Self {
            dl,
            d,
            du,
            du2,
            swapped,
        }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = b.len();
        for i in 0..n - 1 {
            if self.swapped[i] {
                let temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - self.dl[i] * b[i];
            } else {
                b[i + 1] -= self.dl[i] * b[i];
            }
        }
        b[n - 1] /= self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
        // Rescale to avoid overflow when σ is extremely close to an eigenvalue.
        let m = b.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if m > 1e150 {
            b.iter_mut().for_each(|x| *x /= m);
        }
    }
}
