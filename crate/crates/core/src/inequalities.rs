//! One checker per determinant or Loewner-order inequality, each returning
//! an [`InequalityReport`], plus a randomized search that falsifies the
//! naive sectorial extension of the Schur complement superadditivity.
//!
//! Checkers taking an explicit `alpha` first verify that both operands lie in
//! `S_α` (to [`MEMBERSHIP_TOL`]) and fail with [`Error::NotSectorial`]
//! otherwise. Checkers without one use the operand's own sector angle.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_4;

use crate::error::{Error, Result};
use crate::generators::{self, TrialConfig};
use crate::linalg;
use crate::matrix::{ComplexMatrix, C64};
use crate::report::{scalar_slack, InequalityReport};
use crate::schur::{schur_complement, BlockPartition};
use crate::sector::{self, in_sector, SectorAngle};

pub const DEFAULT_TOL: f64 = 1e-8;
/// Relative tolerance of the sector membership precondition.
pub const MEMBERSHIP_TOL: f64 = 1e-9;
/// The falsifier reports a counterexample once the slack is at or below
/// minus this value.
pub const FALSIFICATION_THRESHOLD: f64 = 1e-6;

fn same_shape(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<usize> {
    let n = a.require_square()?;
    if b.rows() != n || b.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: (n, n),
            found: (b.rows(), b.cols()),
        });
    }
    Ok(n)
}

fn require_pd(a: &ComplexMatrix) -> Result<()> {
    if linalg::is_positive_definite(a, 0.0)? {
        Ok(())
    } else {
        Err(Error::NotPositiveDefinite)
    }
}

fn require_accretive(a: &ComplexMatrix) -> Result<()> {
    let re = a.hermitian_part();
    if linalg::min_eigenvalue(&re)? > sector::STRICT_TOL * a.frobenius_norm() {
        Ok(())
    } else {
        Err(Error::NotAccretive)
    }
}

fn require_sector(a: &ComplexMatrix, alpha: SectorAngle) -> Result<()> {
    if in_sector(a, alpha, MEMBERSHIP_TOL)?.inside {
        Ok(())
    } else {
        Err(Error::NotSectorial)
    }
}

fn own_angle(a: &ComplexMatrix) -> Result<SectorAngle> {
    sector::sector_angle(a).map_err(|e| match e {
        Error::NotAccretive | Error::NotPositiveDefinite => Error::NotSectorial,
        e => e,
    })
}

/// `det A_k` for `k = 1..=n`.
pub fn leading_minors(a: &ComplexMatrix) -> Result<Vec<C64>> {
    let n = a.require_square()?;
    (1..=n)
        .map(|k| linalg::determinant(&a.leading_principal_submatrix(k)?))
        .collect()
}

/// `2ⁿ − 2n`, the number of subsets outside the chain family.
pub fn non_chain_count(n: usize) -> f64 {
    libm::pow(2.0, n as f64) - 2.0 * n as f64
}

/// Right-hand side shared by the Haynsworth, Hartfiel and sectorial
/// extensions, from positive minors `a_k`, `b_k` (`k = 1..=n`):
/// `(1 + Σ b_k/a_k)·a_n + (1 + Σ a_k/b_k)·b_n [+ (2ⁿ − 2n)·√(a_n b_n)]`,
/// sums over `k = 1..n−1`.
pub fn refined_rhs(a: &[f64], b: &[f64], with_root_term: bool) -> f64 {
    let n = a.len();
    let (an, bn) = (a[n - 1], b[n - 1]);
    let sum_ba: f64 = (0..n - 1).map(|k| b[k] / a[k]).sum();
    let sum_ab: f64 = (0..n - 1).map(|k| a[k] / b[k]).sum();
    let mut rhs = (1.0 + sum_ba) * an + (1.0 + sum_ab) * bn;
    if with_root_term {
        rhs += non_chain_count(n) * libm::sqrt(an * bn);
    }
    rhs
}

fn real_minors(a: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(leading_minors(a)?.into_iter().map(|z| z.re).collect())
}

fn abs_minors(a: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(leading_minors(a)?.into_iter().map(|z| z.norm()).collect())
}

/// `det(A+B) ≥ det A + det B` for positive definite `A`, `B`.
pub fn check_det_superadditivity(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    tol: f64,
) -> Result<InequalityReport> {
    same_shape(a, b)?;
    require_pd(a)?;
    require_pd(b)?;
    let lhs = linalg::determinant(&(a + b))?.re;
    let rhs = linalg::determinant(a)?.re + linalg::determinant(b)?.re;
    Ok(InequalityReport::scalar(
        "det-superadditivity",
        lhs,
        rhs,
        tol,
    ))
}

/// Haynsworth's refinement for positive definite `A`, `B`. The detail line
/// carries the slack of `RHS ≥ det A + det B` as `refinement=`.
pub fn check_haynsworth(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    tol: f64,
) -> Result<InequalityReport> {
    same_shape(a, b)?;
    require_pd(a)?;
    require_pd(b)?;
    let (ma, mb) = (real_minors(a)?, real_minors(b)?);
    let lhs = linalg::determinant(&(a + b))?.re;
    let rhs = refined_rhs(&ma, &mb, false);
    let n = ma.len();
    let refinement = scalar_slack(rhs, ma[n - 1] + mb[n - 1]);
    Ok(InequalityReport::scalar("haynsworth", lhs, rhs, tol)
        .with_detail(&format!("refinement={refinement:e}")))
}

/// Hartfiel's refinement for positive definite `A`, `B`. The detail line
/// carries the slack of `RHS ≥ Haynsworth RHS` as `refinement=`.
pub fn check_hartfiel(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> Result<InequalityReport> {
    same_shape(a, b)?;
    require_pd(a)?;
    require_pd(b)?;
    let (ma, mb) = (real_minors(a)?, real_minors(b)?);
    let lhs = linalg::determinant(&(a + b))?.re;
    let rhs = refined_rhs(&ma, &mb, true);
    let refinement = scalar_slack(rhs, refined_rhs(&ma, &mb, false));
    Ok(InequalityReport::scalar("hartfiel", lhs, rhs, tol)
        .with_detail(&format!("refinement={refinement:e}")))
}

/// Normalized slacks of each link in
/// `det(A+B) ≥ Hartfiel RHS ≥ Haynsworth RHS ≥ det A + det B`.
#[derive(Clone, Copy, Debug)]
pub struct RefinementChain {
    pub lhs_over_hartfiel: f64,
    pub hartfiel_over_haynsworth: f64,
    pub haynsworth_over_superadditive: f64,
}

impl RefinementChain {
    pub fn min_slack(&self) -> f64 {
        self.lhs_over_hartfiel
            .min(self.hartfiel_over_haynsworth)
            .min(self.haynsworth_over_superadditive)
    }
}

pub fn refinement_chain(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<RefinementChain> {
    same_shape(a, b)?;
    require_pd(a)?;
    require_pd(b)?;
    let (ma, mb) = (real_minors(a)?, real_minors(b)?);
    let n = ma.len();
    let lhs = linalg::determinant(&(a + b))?.re;
    let hartfiel = refined_rhs(&ma, &mb, true);
    let haynsworth = refined_rhs(&ma, &mb, false);
    Ok(RefinementChain {
        lhs_over_hartfiel: scalar_slack(lhs, hartfiel),
        hartfiel_over_haynsworth: scalar_slack(hartfiel, haynsworth),
        haynsworth_over_superadditive: scalar_slack(haynsworth, ma[n - 1] + mb[n - 1]),
    })
}

/// `(A+B)/(A₁₁+B₁₁) ≥ A/A₁₁ + B/B₁₁` for positive definite `A`, `B`.
pub fn check_schur_pd(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    part: BlockPartition,
    tol: f64,
) -> Result<InequalityReport> {
    same_shape(a, b)?;
    require_pd(a)?;
    require_pd(b)?;
    let lhs = schur_complement(&(a + b), part)?;
    let rhs = &schur_complement(a, part)? + &schur_complement(b, part)?;
    InequalityReport::loewner("schur-pd", &lhs, &rhs, tol)
}

/// `(Re A)⁻¹ ≥ Re(A⁻¹)` when `Re A` is positive definite.
pub fn check_inverse_real_part(a: &ComplexMatrix, tol: f64) -> Result<InequalityReport> {
    a.require_square()?;
    require_accretive(a)?;
    let lhs = linalg::inverse(&a.hermitian_part())?;
    let rhs = linalg::inverse(a)?.hermitian_part();
    InequalityReport::loewner("lemma-2-4", &lhs, &rhs, tol)
}

/// `Re(A/A₁₁) ≥ (Re A)/(Re A₁₁)` when `Re A` is positive definite.
pub fn check_schur_real_part(
    a: &ComplexMatrix,
    part: BlockPartition,
    tol: f64,
) -> Result<InequalityReport> {
    a.require_square()?;
    require_accretive(a)?;
    let lhs = schur_complement(a, part)?.hermitian_part();
    let rhs = schur_complement(&a.hermitian_part(), part)?;
    InequalityReport::loewner("lemma-2-5", &lhs, &rhs, tol)
}

/// `secⁿ(α)·det(Re A) ≥ |det A|` at the operand's own sector angle.
pub fn check_ostrowski_taussky_complement(a: &ComplexMatrix, tol: f64) -> Result<InequalityReport> {
    let alpha = own_angle(a)?;
    ostrowski_taussky_complement(a, alpha, tol)
}

/// Same inequality at a supplied `α ⊇` the operand's sector.
pub fn check_ostrowski_taussky_complement_at(
    a: &ComplexMatrix,
    alpha: SectorAngle,
    tol: f64,
) -> Result<InequalityReport> {
    a.require_square()?;
    require_sector(a, alpha)?;
    ostrowski_taussky_complement(a, alpha, tol)
}

fn ostrowski_taussky_complement(
    a: &ComplexMatrix,
    alpha: SectorAngle,
    tol: f64,
) -> Result<InequalityReport> {
    let n = a.n() as u32;
    let lhs = alpha.sec_power(n) * linalg::determinant(&a.hermitian_part())?.re;
    let rhs = linalg::determinant(a)?.norm();
    Ok(InequalityReport::scalar("lemma-2-6", lhs, rhs, tol)
        .with_detail(&format!("alpha={:e}", alpha.radians())))
}

/// Weak log-majorization of the singular values of `A` by the eigenvalues
/// of `sec(α)·Re A`: for every `k`,
/// `∏_{j≤k} s_j(A) ≤ ∏_{j≤k} sec(α)·λ_j(Re A)`, both sorted descending.
/// The report carries the smallest per-`k` slack.
pub fn check_weak_log_majorization(a: &ComplexMatrix, tol: f64) -> Result<InequalityReport> {
    let alpha = own_angle(a)?;
    weak_log_majorization(a, alpha, tol)
}

pub fn check_weak_log_majorization_at(
    a: &ComplexMatrix,
    alpha: SectorAngle,
    tol: f64,
) -> Result<InequalityReport> {
    a.require_square()?;
    require_sector(a, alpha)?;
    weak_log_majorization(a, alpha, tol)
}

/// `(k, ∏_{j≤k} sec(α)λ_j, ∏_{j≤k} s_j)` for `k = 1..=n`.
pub fn majorization_partial_products(
    a: &ComplexMatrix,
    alpha: SectorAngle,
) -> Result<Vec<(usize, f64, f64)>> {
    let sec = alpha.sec();
    let mut eig = linalg::hermitian_eigenvalues(&a.hermitian_part())?;
    eig.reverse();
    let sv = linalg::singular_values(a)?;
    let mut out = Vec::with_capacity(sv.len());
    let (mut lp, mut sp) = (1.0, 1.0);
    for (k, (l, s)) in eig.iter().zip(&sv).enumerate() {
        lp *= sec * l;
        sp *= s;
        out.push((k + 1, lp, sp));
    }
    Ok(out)
}

fn weak_log_majorization(
    a: &ComplexMatrix,
    alpha: SectorAngle,
    tol: f64,
) -> Result<InequalityReport> {
    let products = majorization_partial_products(a, alpha)?;
    let (k, lhs, rhs) = products
        .iter()
        .copied()
        .min_by(|x, y| scalar_slack(x.1, x.2).total_cmp(&scalar_slack(y.1, y.2)))
        .expect("n >= 1");
    let report = InequalityReport::scalar("weak-log-major", lhs, rhs, tol);
    Ok(report.with_detail(&format!("worst_k={k} alpha={:e}", alpha.radians())))
}

/// `sec²(α)·(Re A)/(Re A₁₁) ≥ Re(A/A₁₁)` at the operand's own sector angle.
pub fn check_claim1(a: &ComplexMatrix, part: BlockPartition, tol: f64) -> Result<InequalityReport> {
    let alpha = own_angle(a)?;
    claim1(a, alpha, part, tol)
}

pub fn check_claim1_at(
    a: &ComplexMatrix,
    alpha: SectorAngle,
    part: BlockPartition,
    tol: f64,
) -> Result<InequalityReport> {
    a.require_square()?;
    require_sector(a, alpha)?;
    claim1(a, alpha, part, tol)
}

fn claim1(
    a: &ComplexMatrix,
    alpha: SectorAngle,
    part: BlockPartition,
    tol: f64,
) -> Result<InequalityReport> {
    let lhs = schur_complement(&a.hermitian_part(), part)?.scale_real(alpha.sec_power(2));
    let rhs = schur_complement(a, part)?.hermitian_part();
    Ok(InequalityReport::loewner("claim1", &lhs, &rhs, tol)?
        .with_detail(&format!("alpha={:e}", alpha.radians())))
}

/// `sec²(α)·Re((A+B)/(A₁₁+B₁₁)) ≥ Re(A/A₁₁) + Re(B/B₁₁)` for `W(A), W(B) ⊂ S_α`.
pub fn check_main1(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    alpha: SectorAngle,
    part: BlockPartition,
    tol: f64,
) -> Result<InequalityReport> {
    same_shape(a, b)?;
    require_sector(a, alpha)?;
    require_sector(b, alpha)?;
    let lhs = schur_complement(&(a + b), part)?
        .hermitian_part()
        .scale_real(alpha.sec_power(2));
    let rhs =
        &schur_complement(a, part)?.hermitian_part() + &schur_complement(b, part)?.hermitian_part();
    InequalityReport::loewner("main1", &lhs, &rhs, tol)
}

/// The naive extension `Re((A+B)/(A₁₁+B₁₁)) ≥ Re(A/A₁₁) + Re(B/B₁₁)`,
/// which is false in general. Requires accretive operands.
pub fn check_schur_wrongsec(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    part: BlockPartition,
    tol: f64,
) -> Result<InequalityReport> {
    same_shape(a, b)?;
    require_accretive(a)?;
    require_accretive(b)?;
    let lhs = schur_complement(&(a + b), part)?.hermitian_part();
    let rhs =
        &schur_complement(a, part)?.hermitian_part() + &schur_complement(b, part)?.hermitian_part();
    InequalityReport::loewner("schur-wrongsec", &lhs, &rhs, tol)
}

/// Outcome of the counterexample search.
#[derive(Clone, Debug)]
pub struct Falsification {
    /// Report with the most negative slack; lowest trial index on ties.
    pub worst: InequalityReport,
    pub trial: usize,
    /// Whether `worst.slack ≤ −FALSIFICATION_THRESHOLD`.
    pub found: bool,
}

/// Default split for suites that do not fix one.
pub fn default_partition(n: usize) -> usize {
    (n / 2).max(1)
}

/// Trial `index` of the search: a sectorial `A` from stream `index` and
/// `B = A*`.
pub fn schur_wrongsec_trial(cfg: &TrialConfig, index: usize) -> Result<InequalityReport> {
    let mut rng = cfg.rng(index);
    let a = generators::sectorial(cfg.n, cfg.alpha, &mut rng)?;
    let part = BlockPartition::new(cfg.partition.unwrap_or(default_partition(cfg.n)), cfg.n)?;
    check_schur_wrongsec(&a, &a.adjoint(), part, FALSIFICATION_THRESHOLD)
}

/// Most negative slack, ties to the lowest index. Order of the input does
/// not matter.
pub fn pick_worst(
    reports: impl IntoIterator<Item = (usize, InequalityReport)>,
) -> Option<(usize, InequalityReport)> {
    reports.into_iter().fold(None, |best, (i, r)| match best {
        None => Some((i, r)),
        Some((bi, br)) => {
            let better = r.slack < br.slack || (r.slack == br.slack && i < bi);
            if better {
                Some((i, r))
            } else {
                Some((bi, br))
            }
        }
    })
}

pub fn falsification_from(worst: (usize, InequalityReport)) -> Falsification {
    let (trial, worst) = worst;
    Falsification {
        found: worst.slack <= -FALSIFICATION_THRESHOLD,
        worst,
        trial,
    }
}

/// Searches `cfg.trials` sectorial matrices for a violation of the naive
/// extension with `B = A*`.
pub fn falsify_schur_wrongsec(cfg: &TrialConfig) -> Result<Falsification> {
    cfg.validate()?;
    if cfg.n < 2 {
        return Err(Error::InvalidConfig("n must be at least 2 to partition"));
    }
    let reports = (0..cfg.trials)
        .map(|i| schur_wrongsec_trial(cfg, i).map(|r| (i, r)))
        .collect::<Result<Vec<_>>>()?;
    Ok(falsification_from(
        pick_worst(reports).expect("trials >= 1"),
    ))
}

/// `sec³(α)·|det(A_{k+1}+B_{k+1}) / det(A_k+B_k)| ≥
/// |det A_{k+1} / det A_k| + |det B_{k+1} / det B_k|`, `1 ≤ k ≤ n−1`.
pub fn check_det_step(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    alpha: SectorAngle,
    k: usize,
    tol: f64,
) -> Result<InequalityReport> {
    let n = same_shape(a, b)?;
    if k == 0 || k >= n {
        return Err(Error::IndexOutOfRange {
            index: k,
            min: 1,
            max: n - 1,
        });
    }
    require_sector(a, alpha)?;
    require_sector(b, alpha)?;
    det_step(a, b, alpha, k, tol)
}

fn det_step(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    alpha: SectorAngle,
    k: usize,
    tol: f64,
) -> Result<InequalityReport> {
    let det = |m: &ComplexMatrix, order: usize| -> Result<C64> {
        linalg::determinant(&m.leading_principal_submatrix(order)?)
    };
    let sum = a + b;
    let lhs = alpha.sec_power(3) * (det(&sum, k + 1)? / det(&sum, k)?).norm();
    let rhs = (det(a, k + 1)? / det(a, k)?).norm() + (det(b, k + 1)? / det(b, k)?).norm();
    Ok(InequalityReport::scalar("det-step", lhs, rhs, tol).with_detail(&format!("k={k}")))
}

/// [`check_det_step`] for every `k`.
pub fn check_det_steps(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    alpha: SectorAngle,
    tol: f64,
) -> Result<Vec<InequalityReport>> {
    let n = same_shape(a, b)?;
    require_sector(a, alpha)?;
    require_sector(b, alpha)?;
    (1..n).map(|k| det_step(a, b, alpha, k, tol)).collect()
}

/// Sectorial extension of Hartfiel's inequality:
/// `sec^{3n−2}(α)·|det(A+B)| ≥ (1 + Σ|det B_k/det A_k|)·|det A| +
/// (1 + Σ|det A_k/det B_k|)·|det B| + (2ⁿ − 2n)·√|det A·det B|`.
pub fn check_main2(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    alpha: SectorAngle,
    tol: f64,
) -> Result<InequalityReport> {
    let n = same_shape(a, b)?;
    require_sector(a, alpha)?;
    require_sector(b, alpha)?;
    let constant = alpha.sec_power(3 * n as u32 - 2);
    refined_determinant_report("main2", a, b, constant, tol)
}

fn refined_determinant_report(
    name: &str,
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    constant: f64,
    tol: f64,
) -> Result<InequalityReport> {
    let (ma, mb) = (abs_minors(a)?, abs_minors(b)?);
    let lhs = constant * linalg::determinant(&(a + b))?.norm();
    let rhs = refined_rhs(&ma, &mb, true);
    Ok(
        InequalityReport::scalar(name, lhs, rhs, tol)
            .with_detail(&format!("constant={constant:e}")),
    )
}

/// `2^{3n/2 − 1}`.
pub fn corollary_constant(n: usize) -> f64 {
    libm::pow(2.0, 1.5 * n as f64 - 1.0)
}

/// `sec^{3n−2}(π/4)`, which equals [`corollary_constant`].
pub fn quarter_sector_constant(n: usize) -> f64 {
    libm::pow(1.0 / libm::cos(FRAC_PI_4), (3 * n - 2) as f64)
}

fn is_accretive_dissipative(a: &ComplexMatrix) -> Result<bool> {
    let parts = a.cartesian_split();
    Ok(linalg::is_positive_definite(&parts.real_part, 0.0)?
        && linalg::is_positive_definite(&parts.imag_part, 0.0)?)
}

/// Hartfiel-type inequality with constant `2^{3n/2−1}` for
/// accretive-dissipative `A`, `B`.
pub fn check_corollary_ad(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    tol: f64,
) -> Result<InequalityReport> {
    let n = same_shape(a, b)?;
    if !is_accretive_dissipative(a)? || !is_accretive_dissipative(b)? {
        return Err(Error::NotAccretiveDissipative);
    }
    refined_determinant_report("corollary-ad", a, b, corollary_constant(n), tol)
}
