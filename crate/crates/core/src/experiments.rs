//! Empirical probes: success rate of the transform as a function of `r`, and
//! whether dimension reduction survives the construction.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{SpgError, TransformError};
use crate::spg::Spg;
use crate::spindle;
use crate::transform::{self, Strategy, TransformConfig, DEFAULT_MAX_ROUNDS};
use crate::verify::{self, PropertyReport};

/// Seed for trial `trial`: the first word of stream `trial` of the ChaCha
/// generator keyed by `seed`.
pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng.next_u64()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSettings {
    pub max_rounds: usize,
    pub strategy: Strategy,
}

impl Default for SweepSettings {
    fn default() -> Self {
        Self {
            max_rounds: DEFAULT_MAX_ROUNDS,
            strategy: Strategy::Resample,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub r: usize,
    pub trials: usize,
    pub successes: usize,
    pub success_rate: f64,
    pub mean_rounds: f64,
    pub mean_initial_bad_events: f64,
    /// Whether `r` satisfies the local lemma condition for this template.
    pub lll_condition: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub template: String,
    pub max_degree: usize,
    pub min_multiplier: usize,
    pub rows: Vec<SweepRow>,
}

pub fn describe_template(spg: &Spg) -> String {
    format!(
        "vertices={} edges={} d={} n={} max_degree={}",
        spg.vertex_count(),
        spg.edges().len(),
        spg.dimension(),
        spg.symbols().len(),
        spg.max_degree()
    )
}

/// Runs the resampling construction `trials` times for each `r`.
pub fn sweep_r(
    template: &Spg,
    r_values: &[usize],
    trials: usize,
    seed: u64,
    settings: &SweepSettings,
) -> Result<SweepReport, TransformError> {
    if r_values.is_empty() {
        return Err(SpgError::InvalidArgument("no r values given".into()).into());
    }
    if trials == 0 {
        return Err(TransformError::NoTrials);
    }
    if let Some(&r) = r_values.iter().find(|&&r| r < 2) {
        return Err(TransformError::MultiplierTooSmall(r));
    }
    let delta = template.max_degree();
    let mut rows = Vec::with_capacity(r_values.len());
    for &r in r_values {
        let (mut successes, mut rounds, mut initial) = (0, 0, 0);
        for trial in 0..trials {
            let config = TransformConfig {
                r,
                seed: trial_seed(seed, trial as u64),
                max_rounds: settings.max_rounds,
                strategy: settings.strategy,
            };
            let attempt = transform::attempt(template, &config)?;
            rounds += attempt.rounds;
            initial += attempt.initial_bad_events;
            match attempt.outcome {
                Ok(_) => successes += 1,
                Err(TransformError::BudgetExhausted { .. } | TransformError::Verification(_)) => {}
                Err(e) => return Err(e),
            }
        }
        rows.push(SweepRow {
            r,
            trials,
            successes,
            success_rate: successes as f64 / trials as f64,
            mean_rounds: rounds as f64 / trials as f64,
            mean_initial_bad_events: initial as f64 / trials as f64,
            lll_condition: transform::lll_condition_holds(delta, r),
        });
    }
    Ok(SweepReport {
        template: describe_template(template),
        max_degree: delta,
        min_multiplier: transform::min_multiplier(delta),
        rows,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DimensionReductionSummary {
    pub trials: usize,
    pub constructed: usize,
    pub holds: usize,
    /// `(trial, report)` for every constructed result that fails.
    pub failures: Vec<(usize, PropertyReport)>,
}

/// Builds the transform of `template` for `trials` seeds and checks
/// dimension reduction on each successful result.
pub fn verify_dimension_reduction(
    template: &Spg,
    r: usize,
    trials: usize,
    seed: u64,
    budget: u64,
) -> Result<DimensionReductionSummary, TransformError> {
    if trials == 0 {
        return Err(TransformError::NoTrials);
    }
    let mut summary = DimensionReductionSummary {
        trials,
        constructed: 0,
        holds: 0,
        failures: Vec::new(),
    };
    for trial in 0..trials {
        let config = TransformConfig::new(r, trial_seed(seed, trial as u64));
        let result = match transform::construct_with_resampling(template, &config) {
            Ok(result) => result,
            Err(TransformError::BudgetExhausted { .. } | TransformError::Verification(_)) => continue,
            Err(e) => return Err(e),
        };
        summary.constructed += 1;
        let report = verify::check_dimension_reduction(&result.spg, budget)?;
        if report.holds() {
            summary.holds += 1;
        } else {
            summary.failures.push((trial, report));
        }
    }
    Ok(summary)
}

/// [`verify_dimension_reduction`] on the sliding-window path of dimension
/// `d` (`d + 1` vertices, consecutive sets sharing `d - 1` symbols).
pub fn verify_dimension_reduction_on_paths(
    d: usize,
    r: usize,
    trials: usize,
    seed: u64,
) -> Result<DimensionReductionSummary, TransformError> {
    let template = spindle::sliding_window_path(d)?;
    verify_dimension_reduction(&template, r, trials, seed, verify::DEFAULT_RESTRICTION_BUDGET)
}
