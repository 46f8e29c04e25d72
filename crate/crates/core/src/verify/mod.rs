//! Offline optima and checkers for every guarantee the algorithms claim.
//!
//! All checkers are pure and return serializable reports; none of them panic
//! or error on a violated guarantee, they record it.

mod audit;
mod feasibility;
mod opt;
mod random_arrival;

use serde::{Deserialize, Serialize};

pub use audit::{audit_charging, audit_greedy, AuditReport, Bound, RoundAudit};
pub use feasibility::{
    check_matching, check_matching_with, check_rounding, check_vc_feasibility, check_weak_duality,
    expected_rounded_cost, CoverReport, DualityReport, MatchingReport, RoundingReport, SetMode,
    Side, Violation, Violations, EXHAUSTIVE_MATCHING_LIMIT, MATCHING_SAMPLES, MAX_REPORTED,
};
pub use opt::{offline_opt, OptCertificate, OPT_LIMIT};
pub use random_arrival::{
    critical_value, verify_random_arrival_lemmas, EdgeEstimate, RandomArrivalReport,
};

use crate::algorithms::{Algorithm, RunTrace};
use crate::error::Result;
use crate::instances::Instance;
use crate::{ONE_MINUS_INV_E, ONE_PLUS_ALPHA, TOL};

/// Tolerance on competitive-ratio comparisons against the offline optimum.
pub const RATIO_TOL: f64 = 1e-6;
/// Grid size for the rounding check.
pub const ROUNDING_GRID: usize = 101;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Feasibility, duality gap and rounding comparisons.
    pub tol: f64,
    /// Ratios against the offline optimum.
    pub ratio: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            tol: TOL,
            ratio: RATIO_TOL,
        }
    }
}

/// One named pass/fail line of a [`TraceReport`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_owned(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceReport {
    pub algorithm: Algorithm,
    pub instance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offline_opt: Option<f64>,
    pub checks: Vec<Check>,
}

impl TraceReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

fn first_violation(v: &Violations) -> String {
    match v.reported.first() {
        None => "no violations".to_owned(),
        Some(first) => format!("{} violation(s); first: {first}", v.count),
    }
}

/// Every check that applies to the trace's algorithm.
///
/// Fails with an input error when the trace was not produced on `instance`.
/// Ratio checks are skipped when the offline side exceeds [`OPT_LIMIT`].
pub fn verify_trace(trace: &RunTrace, instance: &Instance, tol: Tolerances) -> Result<TraceReport> {
    trace.check_instance(instance)?;
    let f = instance.function()?;
    let state = &trace.state;
    let mut checks = Vec::new();

    let primal = state.primal_value();
    let dual = state.dual_value(&f)?;
    let sum_dp: f64 = trace.rounds.iter().map(|r| r.dp).sum();
    let sum_dd: f64 = trace.rounds.iter().map(|r| r.dd).sum();
    checks.push(Check::new(
        "recorded totals",
        close(primal, trace.primal, tol.tol) && close(dual, trace.dual, tol.tol),
        format!(
            "primal {primal} (recorded {}), dual {dual} (recorded {})",
            trace.primal, trace.dual
        ),
    ));
    checks.push(Check::new(
        "round increments sum to totals",
        close(sum_dp, primal, tol.tol) && close(sum_dd, dual, tol.tol),
        format!("sum dP {sum_dp}, sum dD {sum_dd}"),
    ));
    let rises = trace.rounds.iter().all(|r| {
        let level = r.a.unwrap_or(1.0);
        r.prior.len() == r.raised.len() && r.prior.iter().all(|&p| p <= level + tol.tol)
    });
    checks.push(Check::new(
        "potentials only rise",
        rises && trace.rounds.len() == instance.n_online(),
        format!(
            "{} rounds for {} arrivals",
            trace.rounds.len(),
            instance.n_online()
        ),
    ));

    if trace.algorithm.has_primal() {
        let m = check_matching(&state.x, instance, tol.tol)?;
        checks.push(Check::new(
            "matching feasible",
            m.passed(),
            format!(
                "{} sets checked; {}",
                m.sets_checked,
                first_violation(&m.violations)
            ),
        ));
        let worst = trace
            .rounds
            .iter()
            .enumerate()
            .map(|(k, r)| {
                (
                    k,
                    (r.dd - ONE_PLUS_ALPHA * r.dp).abs() / r.dd.abs().max(1.0),
                )
            })
            .fold(
                (0, 0.0),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            );
        checks.push(Check::new(
            "per-round gap dD = (1+alpha) dP",
            worst.1 <= tol.tol,
            format!("worst relative gap {:e} in round {}", worst.1, worst.0),
        ));
    }

    if trace.algorithm.is_waterfilling() {
        let c = check_vc_feasibility(&state.y, &state.z, instance, tol.tol)?;
        checks.push(Check::new(
            "cover feasible",
            c.passed(),
            format!(
                "min edge slack {}; {}",
                c.min_edge_slack,
                first_violation(&c.violations)
            ),
        ));
        if c.passed() {
            let r = check_rounding(&state.y, &state.z, instance, ROUNDING_GRID)?;
            checks.push(Check::new(
                "threshold rounding",
                r.passed(tol.tol),
                format!(
                    "{} of {} grid points uncovered; expected cost {} vs fractional {}",
                    r.uncovered_at.len(),
                    r.grid_points,
                    r.expected_cost,
                    r.fractional_cost
                ),
            ));
        }
    }
    if trace.algorithm == Algorithm::MobmPd {
        let d = check_weak_duality(&state.x, &state.y, &state.z, instance, tol.tol)?;
        checks.push(Check::new(
            "weak duality",
            d.passed(tol.tol),
            format!("primal {} <= dual {}", d.primal, d.dual),
        ));
    }

    let mut opt_value = None;
    if instance.n_offline <= OPT_LIMIT {
        let cert = offline_opt(instance)?;
        opt_value = Some(cert.value);
        let opt = cert.value;
        if trace.algorithm.is_waterfilling() {
            checks.push(Check::new(
                "cost <= (1+alpha) OPT",
                dual <= ONE_PLUS_ALPHA * opt + tol.ratio,
                format!("cost {dual}, OPT {opt}"),
            ));
        }
        if trace.algorithm == Algorithm::MobmPd {
            checks.push(Check::new(
                "matching >= (1-1/e) OPT",
                primal >= ONE_MINUS_INV_E * opt - tol.ratio,
                format!("matching {primal}, OPT {opt}"),
            ));
        }
        if trace.algorithm.has_primal() {
            checks.push(Check::new(
                "matching <= OPT",
                primal <= opt + tol.ratio,
                format!("matching {primal}, OPT {opt}"),
            ));
        }
    }

    Ok(TraceReport {
        algorithm: trace.algorithm,
        instance: instance.name.clone(),
        offline_opt: opt_value,
        checks,
    })
}
