//! Checking sieve measurements against predicted biases.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::classify::{BiasClassification, Verdict};
use crate::error::{Error, Result};
use crate::sieve::SieveReport;

/// Checkpoints with `x >= N / MEDIAN_WINDOW` enter the median tests.
pub const MEDIAN_WINDOW: u64 = 100;

/// Decades whose deviations must shrink in the persistent test.
pub const DECADES: [u64; 5] = [10_000, 100_000, 1_000_000, 10_000_000, 100_000_000];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Allowed `|normalized(N) - b|` for persistent bias.
    pub persistent: f64,
    /// Allowed growth between consecutive decade deviations.
    pub decade_slack: f64,
    /// Half-width of the interval the median deviation must fall in.
    pub median: f64,
    /// Sign changes required for apparent bias.
    pub min_sign_changes: u64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { persistent: 0.1, decade_slack: 0.02, median: 0.5, min_sign_changes: 1 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CheckKind {
    PersistentConvergence,
    ApparentOscillation,
    NoBiasCentering,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ValidationDetails {
    /// Predicted bias `b`.
    pub predicted: f64,
    /// `normalized(N) - b` for persistent bias, the median deviation otherwise.
    pub measured: f64,
    /// The bound `measured` was held to.
    pub tolerance: f64,
    /// `(x, |normalized - b|)` at the decade checkpoints reached.
    pub decade_deviations: Vec<(u64, f64)>,
    pub sign_changes: u64,
    /// Why the check failed, empty on success.
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationVerdict {
    pub kind: CheckKind,
    pub passed: bool,
    pub details: ValidationDetails,
}

impl std::fmt::Display for ValidationVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let d = &self.details;
        write!(
            f,
            "{:?} {}: measured {:.6} vs predicted {:.6} (tolerance {}), {} sign changes",
            self.kind,
            if self.passed { "PASS" } else { "FAIL" },
            d.measured,
            d.predicted,
            d.tolerance,
            d.sign_changes
        )?;
        for why in &d.failures {
            write!(f, "\n  {why}")?;
        }
        Ok(())
    }
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2.0
    }
}

pub fn validate(report: &SieveReport, classification: &BiasClassification, tol: &Tolerances) -> Result<ValidationVerdict> {
    if report.spec != classification.spec_id {
        return Err(Error::SpecMismatch);
    }
    let last = report.checkpoints.last().ok_or(Error::EmptyReport)?;
    let b = classification.b.value;
    let deviation = |normalized: f64| normalized - b;
    let decade_deviations: Vec<(u64, f64)> = DECADES
        .iter()
        .filter_map(|&x| report.checkpoint_at(x))
        .map(|c| (c.x, deviation(c.normalized).abs()))
        .collect();
    let mut failures = Vec::new();

    let (kind, measured, tolerance) = match classification.verdict {
        Verdict::PersistentBias => {
            let measured = deviation(last.normalized);
            if measured.abs() > tol.persistent {
                failures.push(format!("|normalized(N) - b| = {:.6} exceeds {}", measured.abs(), tol.persistent));
            }
            for w in decade_deviations.windows(2) {
                if w[1].1 > w[0].1 + tol.decade_slack {
                    failures.push(format!(
                        "deviation grows from {:.6} at x={} to {:.6} at x={}",
                        w[0].1, w[0].0, w[1].1, w[1].0
                    ));
                }
            }
            (CheckKind::PersistentConvergence, measured, tol.persistent)
        }
        Verdict::ApparentBias | Verdict::NoBias => {
            let from = report.limit / MEDIAN_WINDOW;
            let window: Vec<f64> =
                report.checkpoints.iter().filter(|c| c.x >= from).map(|c| deviation(c.normalized)).collect();
            let measured = median(window);
            if measured.abs() > tol.median {
                failures.push(format!("median deviation {measured:.6} is outside [-{0}, {0}]", tol.median));
            }
            let kind = if classification.verdict == Verdict::ApparentBias {
                if report.sign_changes < tol.min_sign_changes {
                    failures.push(format!(
                        "{} sign changes, need at least {}",
                        report.sign_changes, tol.min_sign_changes
                    ));
                }
                CheckKind::ApparentOscillation
            } else {
                CheckKind::NoBiasCentering
            };
            (kind, measured, tol.median)
        }
    };
    Ok(ValidationVerdict {
        kind,
        passed: failures.is_empty(),
        details: ValidationDetails {
            predicted: b,
            measured,
            tolerance,
            decade_deviations,
            sign_changes: report.sign_changes,
            failures,
        },
    })
}

/// Writes the checkpoint CSV; an empty report is an error.
pub fn export_figure_data(report: &SieveReport, path: impl AsRef<Path>) -> Result<()> {
    if report.checkpoints.is_empty() {
        return Err(Error::EmptyReport);
    }
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    report.write_csv(&mut file)?;
    std::io::Write::flush(&mut file)?;
    Ok(())
}
