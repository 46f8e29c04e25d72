//! Monte-Carlo checks of Greedy under random arrival timestamps.
//!
//! For an edge `(w, v)`, the critical value `t^c_w` is the timestamp at which
//! `w` enters the span in the run with `v` deleted (1 if it never does). The
//! checks are: `v` is matched whenever `t_v < t^c_w`; in the run with `v`,
//! `y_w ≥ (1+α)(1 − g(t^c_w))`; and `E[y_w + z_v] ≥ 1`.

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::algorithms::{greedy_on_schedule, Preferences};
use crate::error::{Error, Result};
use crate::instances::{draw_timestamps, Instance, Schedule};
use crate::submodular::SubmodularFn;
use crate::subset::Subset;
use crate::{greedy_schedule, rng, ONE_PLUS_ALPHA};

use super::opt::offline_opt;

fn require_matroid(instance: &Instance) -> Result<SubmodularFn> {
    let f = instance.function()?;
    if !f.is_matroid_rank()? {
        return Err(Error::precondition(format!(
            "{:?} does not carry a matroid rank function",
            instance.name
        )));
    }
    Ok(f)
}

fn critical_values_unchecked(
    instance: &Instance,
    f: &SubmodularFn,
    skip: usize,
    schedule: &Schedule,
    prefs: &Preferences,
) -> Result<Vec<f64>> {
    let out = greedy_on_schedule(instance, f, schedule, prefs, Some(skip), false)?;
    Ok(out.spanned_at.iter().map(|t| t.unwrap_or(1.0)).collect())
}

/// `t^c_w` for every offline `w`, from the run without online vertex `v`.
///
/// `times[i]` is the timestamp of arrival `i`; the entry for `v` is ignored.
pub fn critical_value(
    instance: &Instance,
    v: usize,
    times: &[f64],
    prefs: &Preferences,
) -> Result<Vec<f64>> {
    let f = require_matroid(instance)?;
    prefs.validate(instance)?;
    let i = instance
        .position(v)
        .ok_or_else(|| Error::input(format!("no online vertex with id {v}")))?;
    let schedule = Schedule::from_times(instance, times)?;
    critical_values_unchecked(instance, &f, i, &schedule, prefs)
}

/// Empirical `E[y_w + z_v]` on one edge.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeEstimate {
    pub w: usize,
    pub v: usize,
    pub mean: f64,
    pub std_error: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomArrivalReport {
    pub trials: usize,
    pub seed: u64,
    /// Edge observations with `t_v < t^c_w`.
    pub dominance_checked: usize,
    pub dominance_violations: usize,
    pub monotonicity_violations: usize,
    /// Largest `(1+α)(1 − g(t^c_w)) − y_w` seen.
    pub monotonicity_worst: f64,
    pub edges: Vec<EdgeEstimate>,
    /// Edges to loops of the matroid, excluded from the checks: a loop is
    /// spanned from the start and never receives a potential.
    pub loop_edges: usize,
    pub mean_matching: f64,
    pub offline_opt: f64,
}

impl RandomArrivalReport {
    pub fn feasibility_passed(&self) -> bool {
        self.edges.iter().all(|e| e.passed)
    }

    pub fn passed(&self) -> bool {
        self.dominance_violations == 0
            && self.monotonicity_violations == 0
            && self.feasibility_passed()
    }

    /// `E[|M|] / OPT`, or 1 when the optimum is zero.
    pub fn ratio(&self) -> f64 {
        if self.offline_opt > 0.0 {
            self.mean_matching / self.offline_opt
        } else {
            1.0
        }
    }
}

/// Runs `trials` independent timestamp draws and checks the three lemmas.
///
/// Feasibility on an edge passes when `mean ≥ 1 − 3·SE − tol`; `tol` only
/// absorbs rounding when every draw gives exactly 1.
pub fn verify_random_arrival_lemmas(
    instance: &Instance,
    trials: usize,
    seed: u64,
    prefs: &Preferences,
    tol: f64,
) -> Result<RandomArrivalReport> {
    if trials < 2 {
        return Err(Error::input(
            "random-arrival checks need at least two trials",
        ));
    }
    let f = require_matroid(instance)?;
    prefs.validate(instance)?;
    let loops: Subset = f.span(Subset::EMPTY);
    let edges: Vec<(usize, usize)> = instance
        .edges()
        .filter(|&(w, _)| !loops.contains(w))
        .collect();
    let loop_edges = instance.n_edges() - edges.len();
    let m = instance.n_online();

    let mut sum = vec![0.0; edges.len()];
    let mut sum_sq = vec![0.0; edges.len()];
    let mut report = RandomArrivalReport {
        trials,
        seed,
        dominance_checked: 0,
        dominance_violations: 0,
        monotonicity_violations: 0,
        monotonicity_worst: f64::NEG_INFINITY,
        edges: Vec::new(),
        loop_edges,
        mean_matching: 0.0,
        offline_opt: offline_opt(instance)?.value,
    };
    let mut matched_total = 0usize;
    let mut master = rng::seeded(seed);

    for _ in 0..trials {
        let times = draw_timestamps(m, master.next_u64());
        let schedule = Schedule::from_times(instance, &times)?;
        let run = greedy_on_schedule(instance, &f, &schedule, prefs, None, false)?;
        matched_total += run.matching_size();

        let mut critical: Vec<Option<Vec<f64>>> = vec![None; m];
        for (k, &(w, i)) in edges.iter().enumerate() {
            if critical[i].is_none() {
                critical[i] = Some(critical_values_unchecked(
                    instance, &f, i, &schedule, prefs,
                )?);
            }
            let tc = critical[i].as_ref().expect("filled above")[w];
            if times[i] < tc {
                report.dominance_checked += 1;
                if run.matched_to[i].is_none() {
                    report.dominance_violations += 1;
                }
            }
            let floor = ONE_PLUS_ALPHA * (1.0 - greedy_schedule(tc));
            report.monotonicity_worst = report.monotonicity_worst.max(floor - run.y[w]);
            if run.y[w] < floor - tol {
                report.monotonicity_violations += 1;
            }
            let s = run.y[w] + run.z[i];
            sum[k] += s;
            sum_sq[k] += s * s;
        }
    }

    let n = trials as f64;
    report.edges = edges
        .iter()
        .enumerate()
        .map(|(k, &(w, i))| {
            let mean = sum[k] / n;
            let var = ((sum_sq[k] - n * mean * mean) / (n - 1.0)).max(0.0);
            let std_error = (var / n).sqrt();
            EdgeEstimate {
                w,
                v: instance.arrivals[i].id,
                mean,
                std_error,
                passed: mean >= 1.0 - 3.0 * std_error - tol,
            }
        })
        .collect();
    report.mean_matching = matched_total as f64 / n;
    Ok(report)
}
