//! Online algorithms and the traces they emit.
//!
//! All runs are pure functions of their inputs and return a [`RunTrace`]: one
//! [`RoundRecord`] per processed online vertex plus the final [`OnlineState`].
//! Traces serialize to JSON and are what the `verify` module audits.

mod greedy;
mod rounding;
mod waterfill;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use greedy::{greedy_on_schedule, run_random_arrival_greedy, GreedyOutcome, Preferences};
pub use rounding::{round_cover, round_cover_seeded, Cover};
pub use waterfill::{run_mobm_pd, run_mobvc, run_obvc, water_level};

use crate::barchart::{Interval, NewRegion};
use crate::error::{Error, Result};
use crate::instances::{ArrivalModel, Instance};
use crate::submodular::SubmodularFn;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Algorithm {
    /// Waterfilling with modular cost `Σ y_u`.
    #[serde(rename = "obvc")]
    Obvc,
    /// Waterfilling against the Lovász extension.
    #[serde(rename = "mobvc")]
    Mobvc,
    /// Waterfilling plus the bar-chart primal update.
    #[serde(rename = "mobm-pd")]
    MobmPd,
    /// Greedy under random arrivals.
    #[serde(rename = "greedy-ra")]
    GreedyRa,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Obvc,
        Algorithm::Mobvc,
        Algorithm::MobmPd,
        Algorithm::GreedyRa,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Obvc => "obvc",
            Algorithm::Mobvc => "mobvc",
            Algorithm::MobmPd => "mobm-pd",
            Algorithm::GreedyRa => "greedy-ra",
        }
    }

    /// Waterfilling algorithms whose `(y, z)` is a pointwise-feasible cover.
    pub fn is_waterfilling(self) -> bool {
        !matches!(self, Algorithm::GreedyRa)
    }

    /// Algorithms that emit a primal matching `x`.
    pub fn has_primal(self) -> bool {
        matches!(self, Algorithm::MobmPd | Algorithm::GreedyRa)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| {
                Error::input(format!(
                    "unknown algorithm {s:?}; expected one of obvc, mobvc, mobm-pd, greedy-ra"
                ))
            })
    }
}

/// Fractional value on edge `(u, v)`; `v` is the online id.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeValue {
    pub u: usize,
    pub v: usize,
    pub x: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OnlineState {
    /// Offline potentials.
    pub y: Vec<f64>,
    /// Online potentials, indexed like `instance.arrivals`.
    pub z: Vec<f64>,
    /// Nonzero matching values in the order they were set.
    pub x: Vec<EdgeValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chart: Option<Vec<Interval>>,
    /// Matched offline set `M_L` (Greedy only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matched: Option<Vec<usize>>,
}

impl OnlineState {
    fn new(n: usize, m: usize) -> Self {
        OnlineState {
            y: vec![0.0; n],
            z: vec![0.0; m],
            x: Vec::new(),
            chart: None,
            matched: None,
        }
    }

    pub fn primal_value(&self) -> f64 {
        self.x.iter().fold(0.0, |acc, e| acc + e.x)
    }

    pub fn dual_value(&self, f: &SubmodularFn) -> Result<f64> {
        Ok(f.lovasz(&self.y)? + self.z.iter().fold(0.0, |acc, z| acc + z))
    }

    /// Total `x` per offline vertex.
    pub fn offline_load(&self, n: usize) -> Vec<f64> {
        let mut load = vec![0.0; n];
        for e in &self.x {
            load[e.u] += e.x;
        }
        load
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundRecord {
    /// Online id.
    pub v: usize,
    /// Water level (waterfilling rounds only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    /// Offline vertices whose potential changed this round.
    #[serde(rename = "X")]
    pub raised: Vec<usize>,
    /// Potentials of `raised` before the round.
    pub prior: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub regions: Vec<NewRegion>,
    #[serde(rename = "dP")]
    pub dp: f64,
    #[serde(rename = "dD")]
    pub dd: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_v: Option<f64>,
    /// Greedy only: the offline vertex `v` was matched to.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matched: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunTrace {
    pub algorithm: Algorithm,
    pub instance: String,
    /// [`Instance::digest`] of the input.
    pub digest: String,
    pub arrival: ArrivalModel,
    pub rounds: Vec<RoundRecord>,
    pub state: OnlineState,
    /// `Σ x_e`.
    pub primal: f64,
    /// `f̂(y) + Σ z_v`.
    pub dual: f64,
}

impl RunTrace {
    fn finish(
        algorithm: Algorithm,
        instance: &Instance,
        arrival: ArrivalModel,
        f: &SubmodularFn,
        rounds: Vec<RoundRecord>,
        state: OnlineState,
    ) -> Result<Self> {
        let primal = state.primal_value();
        let dual = state.dual_value(f)?;
        Ok(RunTrace {
            algorithm,
            instance: instance.name.clone(),
            digest: instance.digest(),
            arrival,
            rounds,
            state,
            primal,
            dual,
        })
    }

    /// Fails unless the trace was produced on `instance`.
    pub fn check_instance(&self, instance: &Instance) -> Result<()> {
        if self.digest != instance.digest() {
            return Err(Error::input(format!(
                "trace of {:?} does not belong to instance {:?} (digest mismatch)",
                self.instance, instance.name
            )));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            Error::parse(
                format!("line {} column {}", e.line(), e.column()),
                e.to_string(),
            )
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("trace serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
            assert_eq!(
                serde_json::to_string(&a).unwrap(),
                format!("\"{}\"", a.name())
            );
        }
        assert!("ranking".parse::<Algorithm>().is_err());
    }
}
