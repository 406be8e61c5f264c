use alloc::format;
use alloc::string::String;
use core::fmt;

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::ComplexMatrix;

/// Hermitian defect allowed in a Loewner difference, relative to the larger
/// side's Frobenius norm.
pub const LOEWNER_HERMITIAN_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum ReportKind {
    /// `LHS − RHS` is a Hermitian matrix; slack is its smallest eigenvalue
    /// over `‖LHS‖_F`.
    Loewner,
    /// `LHS − RHS` is a real number; slack is it over `max(|LHS|, |RHS|, 1)`.
    Scalar,
}

impl fmt::Display for ReportKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportKind::Loewner => "loewner",
            ReportKind::Scalar => "scalar",
        })
    }
}

/// Signed-slack verdict on one inequality instance. `holds ⇔ slack ≥ −tol`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct InequalityReport {
    pub name: String,
    pub kind: ReportKind,
    pub slack: f64,
    pub holds: bool,
    pub tol: f64,
    pub detail: String,
}

impl InequalityReport {
    pub fn from_slack(name: &str, kind: ReportKind, slack: f64, tol: f64, detail: String) -> Self {
        Self {
            name: name.into(),
            kind,
            slack,
            holds: slack >= -tol,
            tol,
            detail,
        }
    }

    pub fn scalar(name: &str, lhs: f64, rhs: f64, tol: f64) -> Self {
        let slack = scalar_slack(lhs, rhs);
        Self::from_slack(
            name,
            ReportKind::Scalar,
            slack,
            tol,
            format!("lhs={lhs:e} rhs={rhs:e}"),
        )
    }

    pub fn loewner(name: &str, lhs: &ComplexMatrix, rhs: &ComplexMatrix, tol: f64) -> Result<Self> {
        let (slack, min_eig) = loewner_slack(lhs, rhs)?;
        Ok(Self::from_slack(
            name,
            ReportKind::Loewner,
            slack,
            tol,
            format!(
                "min_eig={min_eig:e} lhs_norm={:e} rhs_norm={:e}",
                lhs.frobenius_norm(),
                rhs.frobenius_norm()
            ),
        ))
    }

    pub fn with_detail(mut self, extra: &str) -> Self {
        self.detail.push_str("; ");
        self.detail.push_str(extra);
        self
    }
}

impl fmt::Display for InequalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} slack={:e} tol={:e} {} [{}]",
            self.name,
            self.kind,
            self.slack,
            self.tol,
            if self.holds { "HOLDS" } else { "VIOLATED" },
            self.detail
        )
    }
}

pub fn scalar_slack(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs) / lhs.abs().max(rhs.abs()).max(1.0)
}

/// `(λ_min(LHS − RHS) / ‖LHS‖_F, λ_min)`, after checking the difference
/// is Hermitian.
pub fn loewner_slack(lhs: &ComplexMatrix, rhs: &ComplexMatrix) -> Result<(f64, f64)> {
    if (lhs.rows(), lhs.cols()) != (rhs.rows(), rhs.cols()) {
        return Err(Error::DimensionMismatch {
            expected: (lhs.rows(), lhs.cols()),
            found: (rhs.rows(), rhs.cols()),
        });
    }
    let diff = lhs - rhs;
    let scale = lhs.frobenius_norm().max(rhs.frobenius_norm());
    if diff.hermitian_defect() > LOEWNER_HERMITIAN_TOL * scale {
        return Err(Error::NotHermitian);
    }
    let min_eig = linalg::min_eigenvalue(&diff.hermitian_part())?;
    let norm = match lhs.frobenius_norm() {
        x if x > 0.0 => x,
        _ => scale.max(1.0),
    };
    Ok((min_eig / norm, min_eig))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn scalar_normalization() {
        let r = InequalityReport::scalar("t", 4.0, 2.0, 1e-8);
        assert_eq!(r.slack, 0.5);
        assert!(r.holds);
        let r = InequalityReport::scalar("t", 0.1, 0.3, 1e-8);
        assert!((r.slack + 0.2).abs() < 1e-15);
        assert!(!r.holds);
    }

    #[test]
    fn loewner_rejects_non_hermitian_difference() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]);
        let z = ComplexMatrix::zeros(2, 2);
        assert_eq!(
            InequalityReport::loewner("t", &a, &z, 1e-8).unwrap_err(),
            Error::NotHermitian
        );
    }

    #[test]
    fn loewner_slack_is_min_eig_over_lhs_norm() {
        let l = ComplexMatrix::from_real_diagonal(&[3.0, 4.0]);
        let r = ComplexMatrix::from_real_diagonal(&[1.0, 5.0]);
        let rep = InequalityReport::loewner("t", &l, &r, 1e-8).unwrap();
        assert!((rep.slack + 1.0 / 5.0).abs() < 1e-15);
        assert!(!rep.holds);
        assert!(rep.to_string().starts_with("t loewner slack="));
    }
}
