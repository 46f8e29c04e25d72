//! Charging audits for waterfilling traces and gap audits for Greedy traces.
//!
//! A waterfilling round whose online vertex lies outside the optimal cover
//! `C*` must pay its `1 − a` from the charge density `(1 − x)/(x + α)` over
//! the area it adds to the bar chart. Summed over those rounds the charge is at
//! most `α·f(L ∩ C*)`.

use serde::{Deserialize, Serialize};

use crate::algorithms::{Algorithm, RunTrace};
use crate::barchart::charge_integral;
use crate::error::{Error, Result};
use crate::instances::Instance;
use crate::{charge_primitive, ALPHA, ONE_PLUS_ALPHA};

use super::opt::OptCertificate;

/// Outcome of one per-round inequality `lhs ≥ rhs`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundAudit {
    pub round: usize,
    pub v: usize,
    pub lhs: f64,
    pub rhs: f64,
    /// OBVC only: `Σ_{u∈X} F(a) − F(y_u^old) − (1 − a)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_slack: Option<f64>,
    pub passed: bool,
}

impl RoundAudit {
    pub fn slack(&self) -> f64 {
        self.lhs - self.rhs
    }
}

/// `lhs ≤ rhs + tol`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bound {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub passed: bool,
}

impl Bound {
    fn new(name: &str, lhs: f64, rhs: f64, tol: f64) -> Self {
        Bound {
            name: name.to_owned(),
            lhs,
            rhs,
            passed: lhs <= rhs + tol,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub algorithm: Algorithm,
    /// What each [`RoundAudit`] compares.
    pub round_check: String,
    pub rounds: Vec<RoundAudit>,
    pub bounds: Vec<Bound>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.rounds.iter().all(|r| r.passed) && self.bounds.iter().all(|b| b.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RoundAudit> {
        self.rounds.iter().filter(|r| !r.passed)
    }
}

/// Audits a waterfilling trace against an optimal cover.
///
/// Per round with `v ∉ C*`: `charge ≥ 1 − a − tol`, and for OBVC also the
/// per-vertex form through `F`. Globally: total charge `≤ α·f(S*)`, the dual
/// raised by those rounds `≤ (1+α)·f(S*)`, and the cost `≤ (1+α)·OPT`.
pub fn audit_charging(
    trace: &RunTrace,
    cert: &OptCertificate,
    instance: &Instance,
    tol: f64,
) -> Result<AuditReport> {
    trace.check_instance(instance)?;
    cert.check_instance(instance)?;
    if !trace.algorithm.is_waterfilling() {
        return Err(Error::input(format!(
            "charging audit needs a waterfilling trace, got {}",
            trace.algorithm
        )));
    }
    let f = instance.function()?;
    let fs = f.value(cert.argmin_s);

    let mut rounds = Vec::new();
    let mut charged = 0.0;
    let mut outside_dual = 0.0;
    for (k, r) in trace.rounds.iter().enumerate() {
        if cert.covers_online(r.v) {
            continue;
        }
        let a = r.a.ok_or_else(|| {
            Error::input(format!("round {k} of a waterfilling trace has no level"))
        })?;
        let charge = charge_integral(&r.regions, ALPHA);
        let need = 1.0 - a;
        let vertex_slack = (trace.algorithm == Algorithm::Obvc).then(|| {
            r.prior
                .iter()
                .map(|&p| charge_primitive(a) - charge_primitive(p))
                .sum::<f64>()
                - need
        });
        charged += charge;
        outside_dual += r.dd;
        rounds.push(RoundAudit {
            round: k,
            v: r.v,
            lhs: charge,
            rhs: need,
            vertex_slack,
            passed: charge >= need - tol && vertex_slack.is_none_or(|s| s >= -tol),
        });
    }

    let bounds = vec![
        Bound::new("charge received <= alpha * f(S*)", charged, ALPHA * fs, tol),
        Bound::new(
            "dual outside C* <= (1+alpha) * f(S*)",
            outside_dual,
            ONE_PLUS_ALPHA * fs,
            tol,
        ),
        Bound::new(
            "cost <= (1+alpha) * OPT",
            trace.dual,
            ONE_PLUS_ALPHA * cert.value,
            tol,
        ),
    ];
    Ok(AuditReport {
        algorithm: trace.algorithm,
        round_check: "charge >= 1 - a".to_owned(),
        rounds,
        bounds,
    })
}

/// Audits a Greedy trace: every round has `dD = (1+α)·dP` with `dP ∈ {0, 1}`,
/// and the matched offline set is independent.
pub fn audit_greedy(trace: &RunTrace, instance: &Instance, tol: f64) -> Result<AuditReport> {
    trace.check_instance(instance)?;
    if trace.algorithm != Algorithm::GreedyRa {
        return Err(Error::input(format!(
            "expected a greedy-ra trace, got {}",
            trace.algorithm
        )));
    }
    let f = instance.function()?;
    let rounds = trace
        .rounds
        .iter()
        .enumerate()
        .map(|(k, r)| {
            let want = ONE_PLUS_ALPHA * r.dp;
            let integral = r.dp == 0.0 || r.dp == 1.0;
            RoundAudit {
                round: k,
                v: r.v,
                lhs: r.dd,
                rhs: want,
                vertex_slack: None,
                passed: integral && (r.dd - want).abs() <= tol * r.dd.abs().max(1.0),
            }
        })
        .collect();
    let matched: crate::Subset = trace.state.matched.iter().flatten().copied().collect();
    let size = matched.len() as f64;
    let bounds = vec![
        Bound::new("|M_L| <= f(M_L)", size, f.value(matched), tol),
        Bound::new(
            "matching size <= |M_L|",
            trace.state.primal_value(),
            size,
            tol,
        ),
    ];
    Ok(AuditReport {
        algorithm: trace.algorithm,
        round_check: "dD = (1+alpha) dP".to_owned(),
        rounds,
        bounds,
    })
}
