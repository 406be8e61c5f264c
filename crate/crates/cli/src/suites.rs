//! Randomized suites: generate operands per trial, run a check, aggregate.

use rayon::prelude::*;
use serde::Serialize;

use sectoria_core::claim2::{self, PositiveSequencePair, MAX_SUBSET_N};
use sectoria_core::generators::{self, TrialConfig};
use sectoria_core::inequalities::{self as ineq, FALSIFICATION_THRESHOLD};
use sectoria_core::{Error, InequalityReport};

use crate::checks::{check_matrices, partition_for, CheckName, CheckOptions, Operands};
use crate::error::{CliError, CliResult};

/// Range of the log-uniform sequence entries for `claim2` suites.
pub const SEQUENCE_RANGE: (f64, f64) = (1e-3, 1e3);

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub seed: u64,
    pub n: usize,
    pub alpha: f64,
    pub partition: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteSummary {
    pub check: String,
    pub trials: usize,
    /// Reports with `holds = false`.
    pub failures: usize,
    /// Trials whose operands failed a precondition; they carry no slack.
    pub errors: usize,
    pub min_slack: Option<f64>,
    pub median_slack: Option<f64>,
    pub worst_trial: Option<usize>,
    pub tol: f64,
    /// Only for `schur-wrongsec`: whether a slack at or below
    /// `-FALSIFICATION_THRESHOLD` turned up.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample_found: Option<bool>,
    pub config: ConfigEcho,
}

impl SuiteSummary {
    /// `true` when the suite met its goal: no failures and no errors, or for
    /// the falsifier, a counterexample.
    pub fn succeeded(&self) -> bool {
        match self.counterexample_found {
            Some(found) => found && self.errors == 0,
            None => self.failures == 0 && self.errors == 0,
        }
    }
}

fn preflight(name: CheckName, cfg: &TrialConfig) -> CliResult<()> {
    cfg.validate()?;
    if name.uses_partition() && !(name == CheckName::DetStep && cfg.partition.is_none()) {
        partition_for(cfg.n, cfg.partition)?;
    }
    if name == CheckName::DetStep && cfg.n < 2 {
        return Err(CliError::usage("det-step needs n >= 2"));
    }
    if name == CheckName::Claim2 && cfg.n > MAX_SUBSET_N {
        return Err(Error::TooLarge {
            n: cfg.n,
            max: MAX_SUBSET_N,
        }
        .into());
    }
    Ok(())
}

/// Trial `index`: draws operands from stream `index` and runs the check at
/// the configured angle.
pub fn run_trial(
    name: CheckName,
    cfg: &TrialConfig,
    index: usize,
    tol: f64,
) -> CliResult<InequalityReport> {
    let mut rng = cfg.rng(index);
    let n = cfg.n;
    let opts = CheckOptions {
        alpha: Some(cfg.sector_angle()?),
        partition: cfg.partition,
        tol,
    };
    match name.operands() {
        Operands::PositiveDefinitePair => {
            let a = generators::positive_definite(n, &mut rng);
            let b = generators::positive_definite(n, &mut rng);
            check_matrices(name, &a, Some(&b), &opts)
        }
        Operands::SectorialSingle => {
            let a = generators::sectorial(n, cfg.alpha, &mut rng)?;
            check_matrices(name, &a, None, &opts)
        }
        Operands::SectorialPair => {
            let a = generators::sectorial(n, cfg.alpha, &mut rng)?;
            let b = generators::sectorial(n, cfg.alpha, &mut rng)?;
            check_matrices(name, &a, Some(&b), &opts)
        }
        Operands::AccretiveDissipativePair => {
            let a = generators::accretive_dissipative(n, &mut rng);
            let b = generators::accretive_dissipative(n, &mut rng);
            check_matrices(name, &a, Some(&b), &opts)
        }
        Operands::Sequences => {
            let (lo, hi) = SEQUENCE_RANGE;
            let (a, b) = generators::log_uniform_sequences(n, lo, hi, &mut rng);
            Ok(claim2::check_claim2(&PositiveSequencePair::new(a, b)?, tol))
        }
        Operands::AdjointPair => Ok(ineq::schur_wrongsec_trial(cfg, index)?),
    }
}

fn median(sorted: &[f64]) -> Option<f64> {
    let len = sorted.len();
    match len {
        0 => None,
        _ if len % 2 == 1 => Some(sorted[len / 2]),
        _ => Some(0.5 * (sorted[len / 2 - 1] + sorted[len / 2])),
    }
}

/// Runs every trial in parallel; the summary depends only on the config.
pub fn run_suite(name: CheckName, cfg: &TrialConfig, tol: f64) -> CliResult<SuiteSummary> {
    preflight(name, cfg)?;
    let falsifier = name == CheckName::SchurWrongsec;
    let tol = if falsifier {
        FALSIFICATION_THRESHOLD
    } else {
        tol
    };
    let outcomes: Vec<CliResult<InequalityReport>> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| run_trial(name, cfg, i, tol))
        .collect();

    let mut errors = 0;
    let mut reports = Vec::with_capacity(outcomes.len());
    for (i, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Ok(r) => reports.push((i, r)),
            // a usage error would hit every trial alike; surface it
            Err(e @ CliError::Usage(_)) => return Err(e),
            Err(CliError::Precondition(_)) => errors += 1,
        }
    }
    let failures = reports.iter().filter(|(_, r)| !r.holds).count();
    let mut slacks: Vec<f64> = reports.iter().map(|(_, r)| r.slack).collect();
    slacks.sort_by(f64::total_cmp);
    let worst = ineq::pick_worst(reports);
    let counterexample_found = falsifier.then(|| {
        worst
            .clone()
            .map(|w| ineq::falsification_from(w).found)
            .unwrap_or(false)
    });
    Ok(SuiteSummary {
        check: name.as_str().into(),
        trials: cfg.trials,
        failures,
        errors,
        min_slack: slacks.first().copied(),
        median_slack: median(&slacks),
        worst_trial: worst.map(|(i, _)| i),
        tol,
        counterexample_found,
        config: ConfigEcho {
            seed: cfg.seed,
            n: cfg.n,
            alpha: cfg.alpha,
            partition: cfg.partition,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_of_odd_and_even() {
        assert_eq!(median(&[]), None);
        assert_eq!(median(&[1.0, 2.0, 5.0]), Some(2.0));
        assert_eq!(median(&[1.0, 2.0, 4.0, 5.0]), Some(3.0));
    }
}
