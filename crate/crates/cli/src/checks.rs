//! Named checks and their single-instance dispatch.

use clap::ValueEnum;

use sectoria_core::inequalities as ineq;
use sectoria_core::sector;
use sectoria_core::{BlockPartition, ComplexMatrix, InequalityReport, SectorAngle};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckName {
    Main1,
    Main2,
    Hartfiel,
    Haynsworth,
    DetSuperadditivity,
    SchurPd,
    #[value(name = "lemma-2-4")]
    Lemma24,
    #[value(name = "lemma-2-5")]
    Lemma25,
    #[value(name = "lemma-2-6")]
    Lemma26,
    Claim1,
    Claim2,
    DetStep,
    CorollaryAd,
    SchurWrongsec,
    WeakLogMajor,
}

/// Which operands a check consumes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operands {
    PositiveDefinitePair,
    SectorialSingle,
    SectorialPair,
    AccretiveDissipativePair,
    Sequences,
    /// A sectorial `A`; `B` defaults to `A*`.
    AdjointPair,
}

impl CheckName {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::Main1 => "main1",
            CheckName::Main2 => "main2",
            CheckName::Hartfiel => "hartfiel",
            CheckName::Haynsworth => "haynsworth",
            CheckName::DetSuperadditivity => "det-superadditivity",
            CheckName::SchurPd => "schur-pd",
            CheckName::Lemma24 => "lemma-2-4",
            CheckName::Lemma25 => "lemma-2-5",
            CheckName::Lemma26 => "lemma-2-6",
            CheckName::Claim1 => "claim1",
            CheckName::Claim2 => "claim2",
            CheckName::DetStep => "det-step",
            CheckName::CorollaryAd => "corollary-ad",
            CheckName::SchurWrongsec => "schur-wrongsec",
            CheckName::WeakLogMajor => "weak-log-major",
        }
    }

    pub fn operands(self) -> Operands {
        use CheckName::*;
        match self {
            Hartfiel | Haynsworth | DetSuperadditivity | SchurPd => Operands::PositiveDefinitePair,
            Lemma24 | Lemma25 | Lemma26 | Claim1 | WeakLogMajor => Operands::SectorialSingle,
            Main1 | Main2 | DetStep => Operands::SectorialPair,
            CorollaryAd => Operands::AccretiveDissipativePair,
            Claim2 => Operands::Sequences,
            SchurWrongsec => Operands::AdjointPair,
        }
    }

    pub fn uses_partition(self) -> bool {
        matches!(
            self,
            CheckName::Main1
                | CheckName::SchurPd
                | CheckName::Lemma25
                | CheckName::Claim1
                | CheckName::SchurWrongsec
                | CheckName::DetStep
        )
    }
}

/// Flags shared by the single-check and suite commands.
#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    /// `None` lets single-matrix checks use the operand's own angle and
    /// pair checks the larger of the two.
    pub alpha: Option<SectorAngle>,
    pub partition: Option<usize>,
    pub tol: f64,
}

pub fn partition_for(n: usize, requested: Option<usize>) -> CliResult<BlockPartition> {
    if n < 2 {
        return Err(CliError::usage("a block partition needs n >= 2"));
    }
    Ok(BlockPartition::new(
        requested.unwrap_or(ineq::default_partition(n)),
        n,
    )?)
}

fn pair_angle(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    alpha: Option<SectorAngle>,
) -> CliResult<SectorAngle> {
    match alpha {
        Some(alpha) => Ok(alpha),
        None => {
            let (x, y) = (sector::sector_angle(a)?, sector::sector_angle(b)?);
            Ok(if x.radians() >= y.radians() { x } else { y })
        }
    }
}

/// Lowest slack, first on ties.
fn worst(reports: Vec<InequalityReport>) -> Option<InequalityReport> {
    reports
        .into_iter()
        .reduce(|w, r| if r.slack < w.slack { r } else { w })
}

fn det_step(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    opts: &CheckOptions,
) -> CliResult<InequalityReport> {
    let alpha = pair_angle(a, b, opts.alpha)?;
    if a.n() < 2 {
        return Err(CliError::usage("det-step needs n >= 2"));
    }
    match opts.partition {
        Some(k) => Ok(ineq::check_det_step(a, b, alpha, k, opts.tol)?),
        None => Ok(worst(ineq::check_det_steps(a, b, alpha, opts.tol)?).expect("n >= 2")),
    }
}

/// Runs a matrix check. `b` must be present exactly when the check takes a
/// pair, except `schur-wrongsec`, where it defaults to `A*`.
pub fn check_matrices(
    name: CheckName,
    a: &ComplexMatrix,
    b: Option<&ComplexMatrix>,
    opts: &CheckOptions,
) -> CliResult<InequalityReport> {
    let tol = opts.tol;
    let needs_pair = matches!(
        name.operands(),
        Operands::PositiveDefinitePair
            | Operands::SectorialPair
            | Operands::AccretiveDissipativePair
    );
    let adjoint;
    let b = match (name.operands(), b) {
        (Operands::Sequences, _) => {
            return Err(CliError::usage(
                "claim2 reads a sequence file, not matrices",
            ))
        }
        (Operands::SectorialSingle, Some(_)) => {
            return Err(CliError::usage(format!(
                "{} takes one matrix file",
                name.as_str()
            )))
        }
        (Operands::AdjointPair, None) => {
            adjoint = a.adjoint();
            Some(&adjoint)
        }
        (_, None) if needs_pair => {
            return Err(CliError::usage(format!(
                "{} takes two matrix files",
                name.as_str()
            )))
        }
        (_, b) => b,
    };
    let pair = || b.expect("pair checks have two operands");
    let part = |m: &ComplexMatrix| partition_for(m.n(), opts.partition);

    use CheckName::*;
    let report = match name {
        Main1 => {
            let alpha = pair_angle(a, pair(), opts.alpha)?;
            ineq::check_main1(a, pair(), alpha, part(a)?, tol)?
        }
        Main2 => {
            let alpha = pair_angle(a, pair(), opts.alpha)?;
            ineq::check_main2(a, pair(), alpha, tol)?
        }
        DetStep => det_step(a, pair(), opts)?,
        Hartfiel => ineq::check_hartfiel(a, pair(), tol)?,
        Haynsworth => ineq::check_haynsworth(a, pair(), tol)?,
        DetSuperadditivity => ineq::check_det_superadditivity(a, pair(), tol)?,
        SchurPd => ineq::check_schur_pd(a, pair(), part(a)?, tol)?,
        Lemma24 => ineq::check_inverse_real_part(a, tol)?,
        Lemma25 => ineq::check_schur_real_part(a, part(a)?, tol)?,
        Lemma26 => match opts.alpha {
            Some(alpha) => ineq::check_ostrowski_taussky_complement_at(a, alpha, tol)?,
            None => ineq::check_ostrowski_taussky_complement(a, tol)?,
        },
        Claim1 => match opts.alpha {
            Some(alpha) => ineq::check_claim1_at(a, alpha, part(a)?, tol)?,
            None => ineq::check_claim1(a, part(a)?, tol)?,
        },
        WeakLogMajor => match opts.alpha {
            Some(alpha) => ineq::check_weak_log_majorization_at(a, alpha, tol)?,
            None => ineq::check_weak_log_majorization(a, tol)?,
        },
        CorollaryAd => ineq::check_corollary_ad(a, pair(), tol)?,
        SchurWrongsec => ineq::check_schur_wrongsec(a, pair(), part(a)?, tol)?,
        Claim2 => unreachable!("handled above"),
    };
    Ok(report)
}
