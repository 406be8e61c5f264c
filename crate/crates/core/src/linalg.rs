//! LU factorization, the Hermitian Jacobi eigensolver, and the matrix
//! functions built on them.
//!
//! Every threshold here is relative to the Frobenius norm of the input.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64};

/// Pivot magnitudes below `PIVOT_TOL · ‖A‖_F` mark the matrix singular.
pub const PIVOT_TOL: f64 = 1e-13;
/// Jacobi stops once the off-diagonal mass is below `OFFDIAG_TOL · ‖H‖_F`.
pub const OFFDIAG_TOL: f64 = 1e-13;
pub const MAX_SWEEPS: usize = 100;
/// Admissible Hermitian defect of eigensolver input, relative to `‖H‖_F`.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// LU factorization with partial pivoting, `P·A = L·U`, L unit lower.
#[derive(Clone, Debug)]
pub struct Lu {
    lu: ComplexMatrix,
    perm: Vec<usize>,
    swaps_odd: bool,
    min_pivot: f64,
    norm: f64,
}

impl Lu {
    /// Factors without rejecting small pivots.
    pub fn factor(a: &ComplexMatrix) -> Result<Self> {
        let n = a.require_square()?;
        let norm = a.frobenius_norm();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps_odd = false;
        let mut min_pivot = f64::INFINITY;

        for k in 0..n {
            let (p, pmag) = (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold(
                    (k, -1.0),
                    |best, cur| if cur.1 > best.1 { cur } else { best },
                );
            min_pivot = min_pivot.min(pmag);
            if p != k {
                for j in 0..n {
                    let t = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = t;
                }
                perm.swap(k, p);
                swaps_odd = !swaps_odd;
            }
            if pmag == 0.0 {
                continue;
            }
            let pivot = lu[(k, k)];
            for i in (k + 1)..n {
                let l = lu[(i, k)] / pivot;
                lu[(i, k)] = l;
                if l == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in (k + 1)..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= l * u;
                }
            }
        }
        Ok(Self {
            lu,
            perm,
            swaps_odd,
            min_pivot,
            norm,
        })
    }

    /// Factors and rejects the matrix if any pivot is below the relative threshold.
    pub fn factor_checked(a: &ComplexMatrix) -> Result<Self> {
        let lu = Self::factor(a)?;
        if lu.is_singular() {
            Err(Error::Singular)
        } else {
            Ok(lu)
        }
    }

    pub fn is_singular(&self) -> bool {
        !(self.min_pivot > PIVOT_TOL * self.norm) || self.norm == 0.0
    }

    pub fn min_pivot(&self) -> f64 {
        self.min_pivot
    }

    pub fn determinant(&self) -> C64 {
        let n = self.lu.n();
        let mut det = C64::new(if self.swaps_odd { -1.0 } else { 1.0 }, 0.0);
        for i in 0..n {
            det *= self.lu[(i, i)];
        }
        det
    }

    /// Solves `A·X = B` for a rectangular right-hand side.
    pub fn solve(&self, b: &ComplexMatrix) -> Result<ComplexMatrix> {
        let n = self.lu.n();
        if b.rows() != n {
            return Err(Error::DimensionMismatch {
                expected: (n, b.cols()),
                found: (b.rows(), b.cols()),
            });
        }
        if self.is_singular() {
            return Err(Error::Singular);
        }
        let m = b.cols();
        let mut x = ComplexMatrix::from_fn(n, m, |i, j| b[(self.perm[i], j)]);
        for col in 0..m {
            for i in 0..n {
                let mut s = x[(i, col)];
                for k in 0..i {
                    s -= self.lu[(i, k)] * x[(k, col)];
                }
                x[(i, col)] = s;
            }
            for i in (0..n).rev() {
                let mut s = x[(i, col)];
                for k in (i + 1)..n {
                    s -= self.lu[(i, k)] * x[(k, col)];
                }
                x[(i, col)] = s / self.lu[(i, i)];
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<ComplexMatrix> {
        self.solve(&ComplexMatrix::identity(self.lu.n()))
    }
}

/// `A⁻¹` via LU with partial pivoting.
pub fn inverse(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    Lu::factor_checked(a)?.inverse()
}

/// Product of the LU pivots with the permutation sign; singular input gives
/// a value near zero rather than an error.
pub fn determinant(a: &ComplexMatrix) -> Result<C64> {
    Ok(Lu::factor(a)?.determinant())
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct HermitianEigenResult {
    pub eigenvalues: Vec<f64>,
    /// Column `j` is the unit eigenvector for `eigenvalues[j]`.
    pub eigenvectors: ComplexMatrix,
    pub sweeps: usize,
}

impl HermitianEigenResult {
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        *self.eigenvalues.last().unwrap()
    }

    /// `V·diag(f(λ))·V*`.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.n();
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut s = C64::new(0.0, 0.0);
                for k in 0..n {
                    s += v[(i, k)] * v[(j, k)].conj() * fl[k];
                }
                out[(i, j)] = s;
                out[(j, i)] = s.conj();
            }
            out[(i, i)] = C64::new(out[(i, i)].re, 0.0);
        }
        out
    }
}

/// Cyclic Jacobi on a Hermitian matrix.
///
/// Each rotation first multiplies row/column `q` by a phase so that the
/// `(p, q)` entry is real and non-negative, then applies a real Givens
/// rotation that annihilates it.
pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<HermitianEigenResult> {
    let n = h.require_square()?;
    if !h.is_finite() {
        return Err(Error::NonFinite);
    }
    let norm = h.frobenius_norm();
    if h.hermitian_defect() > HERMITIAN_TOL * norm {
        return Err(Error::NotHermitian);
    }
    let mut a = h.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let target = OFFDIAG_TOL * norm;

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= target || norm == 0.0 {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NotConverged { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                // D = diag(.., e^{-iφ} at q, ..); A ← D* A D makes a_pq = |a_pq|.
                let phase = apq / mag;
                let conj_phase = phase.conj();
                for k in 0..n {
                    a[(k, q)] *= conj_phase;
                    v[(k, q)] *= conj_phase;
                }
                for k in 0..n {
                    a[(q, k)] *= phase;
                }
                a[(p, q)] = C64::new(mag, 0.0);
                a[(q, p)] = C64::new(mag, 0.0);

                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + libm::sqrt(1.0 + tau * tau))
                } else {
                    -1.0 / (-tau + libm::sqrt(1.0 + tau * tau))
                };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = t * c;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c - akq * s;
                    a[(k, q)] = akp * s + akq * c;
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c - vkq * s;
                    v[(k, q)] = vkp * s + vkq * c;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c - aqk * s;
                    a[(q, k)] = apk * s + aqk * c;
                }
                a[(p, p)] = C64::new(app - t * mag, 0.0);
                a[(q, q)] = C64::new(aqq + t * mag, 0.0);
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(HermitianEigenResult {
        eigenvalues,
        eigenvectors,
        sweeps,
    })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.n();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    libm::sqrt(s)
}

/// Eigenvalues only, ascending.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(h)?.eigenvalues)
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(h: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigen(h)?.min())
}

/// Hermitian positive definite test: Hermitian to [`HERMITIAN_TOL`] and
/// smallest eigenvalue above `rel_tol · ‖H‖_F`.
pub fn is_positive_definite(h: &ComplexMatrix, rel_tol: f64) -> Result<bool> {
    h.require_square()?;
    if !h.is_hermitian(HERMITIAN_TOL) {
        return Ok(false);
    }
    Ok(min_eigenvalue(h)? > rel_tol * h.frobenius_norm())
}

/// Principal square root `V·diag(√λ)·V*` of a Hermitian positive definite matrix.
pub fn hermitian_sqrt(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eigen(h)?;
    if !(eig.min() > 0.0) {
        return Err(Error::NotPositiveDefinite);
    }
    Ok(eig.apply(libm::sqrt))
}

/// Singular values, descending, as square roots of the eigenvalues of `A*A`.
pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>> {
    a.require_square()?;
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    // one-sided Jacobi on the columns; keeps small singular values to
    // relative accuracy instead of squaring the condition number
    let n = a.n();
    let mut cols: Vec<Vec<C64>> = (0..n).map(|j| a.column(j)).collect();
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: C64 = cols[p]
                    .iter()
                    .zip(&cols[q])
                    .map(|(x, y)| x.conj() * y)
                    .sum();
                let g = gamma.norm();
                if g <= f64::EPSILON * libm::sqrt(alpha * beta) || g == 0.0 {
                    continue;
                }
                rotated = true;
                let phase = gamma.conj() / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + libm::sqrt(1.0 + zeta * zeta));
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = c * t;
                let (left, right) = cols.split_at_mut(q);
                for (x, y) in left[p].iter_mut().zip(right[0].iter_mut()) {
                    let (u, v) = (*x, *y * phase);
                    *x = u.scale(c) - v.scale(s);
                    *y = u.scale(s) + v.scale(c);
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NotConverged { sweeps: MAX_SWEEPS });
    }
    let mut s: Vec<f64> = cols
        .iter()
        .map(|c| libm::sqrt(c.iter().map(|z| z.norm_sqr()).sum::<f64>()))
        .collect();
    s.sort_by(|x, y| y.total_cmp(x));
    Ok(s)
}
