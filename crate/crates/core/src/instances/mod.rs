//! Instance data model, arrival orders and JSON persistence.
//!
//! On disk an instance is
//!
//! ```json
//! {"name": "...", "n_offline": 3, "f": {"family": "cardinality"},
//!  "arrivals": [{"id": 0, "nbrs": [0, 1]}, ...]}
//! ```

mod generate;

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use generate::{
    matroid_suite, random, random_coverage_table, random_graphic_rank, random_matroid_spec,
    upper_triangular, vc_suite,
};

use crate::error::{Error, Result};
use crate::rng;
use crate::submodular::{FnSpec, SubmodularFn};
use crate::subset::{Subset, MAX_GROUND};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Arrival {
    pub id: usize,
    pub nbrs: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub name: String,
    pub n_offline: usize,
    pub f: FnSpec,
    /// Online vertices in adversarial arrival order.
    pub arrivals: Vec<Arrival>,
}

impl Instance {
    /// Builds and validates an instance.
    pub fn new(
        name: impl Into<String>,
        n_offline: usize,
        f: FnSpec,
        arrivals: Vec<Arrival>,
    ) -> Result<Self> {
        let inst = Instance {
            name: name.into(),
            n_offline,
            f,
            arrivals,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_offline > MAX_GROUND {
            return Err(Error::parse(
                "n_offline",
                format!(
                    "{} offline vertices exceed the limit of {MAX_GROUND}",
                    self.n_offline
                ),
            ));
        }
        SubmodularFn::from_spec(self.n_offline, &self.f)
            .map_err(|e| Error::parse("f", e.to_string()))?;
        let mut ids = HashSet::new();
        for (i, arr) in self.arrivals.iter().enumerate() {
            if !ids.insert(arr.id) {
                return Err(Error::parse(
                    format!("arrivals[{i}].id"),
                    format!("duplicate online id {}", arr.id),
                ));
            }
            let mut seen = Subset::EMPTY;
            for (j, &u) in arr.nbrs.iter().enumerate() {
                if u >= self.n_offline {
                    return Err(Error::parse(
                        format!("arrivals[{i}].nbrs[{j}]"),
                        format!("neighbor out of range: {u} >= n_offline {}", self.n_offline),
                    ));
                }
                if seen.contains(u) {
                    return Err(Error::parse(
                        format!("arrivals[{i}].nbrs[{j}]"),
                        format!("duplicate neighbor {u}"),
                    ));
                }
                seen.insert(u);
            }
        }
        Ok(())
    }

    pub fn function(&self) -> Result<SubmodularFn> {
        SubmodularFn::from_spec(self.n_offline, &self.f)
    }

    pub fn n_online(&self) -> usize {
        self.arrivals.len()
    }

    /// Neighborhood of the `i`-th arrival as a bitmask.
    pub fn nbr_set(&self, i: usize) -> Subset {
        Subset::from_elems(self.arrivals[i].nbrs.iter().copied())
    }

    /// Every edge as `(offline u, arrival index)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arrivals
            .iter()
            .enumerate()
            .flat_map(|(i, a)| a.nbrs.iter().map(move |&u| (u, i)))
    }

    pub fn n_edges(&self) -> usize {
        self.arrivals.iter().map(|a| a.nbrs.len()).sum()
    }

    /// Arrival index of an online id.
    pub fn position(&self, id: usize) -> Option<usize> {
        self.arrivals.iter().position(|a| a.id == id)
    }

    /// Same graph and function with the arrivals listed in `order`.
    pub fn reordered(&self, order: &[usize]) -> Instance {
        Instance {
            arrivals: order.iter().map(|&i| self.arrivals[i].clone()).collect(),
            ..self.clone()
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let inst: Instance = serde_json::from_str(text).map_err(|e| {
            Error::parse(
                format!("line {} column {}", e.line(), e.column()),
                e.to_string(),
            )
        })?;
        inst.validate()?;
        Ok(inst)
    }

    /// Pretty JSON with LF line endings and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance serializes");
        s.push('\n');
        s
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    /// SHA-256 of the compact JSON form; ties traces to the instance they ran on.
    pub fn digest(&self) -> String {
        let json = serde_json::to_vec(self).expect("instance serializes");
        Sha256::digest(&json)
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

/// How the online vertices are ordered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ArrivalModel {
    /// The instance's listed order.
    Adversarial,
    /// A uniformly random permutation of the listed order.
    RandomPermutation { seed: u64 },
    /// i.i.d. `t_v ~ U[0,1]`, arrivals sorted ascending, ties by online id.
    RandomTimestamps { seed: u64 },
}

/// Realized arrival order with a timestamp per arrival.
#[derive(Clone, Debug, PartialEq)]
pub struct Schedule {
    /// Arrival indices in processing order.
    pub order: Vec<usize>,
    /// `times[k]` belongs to `order[k]`; nondecreasing.
    pub times: Vec<f64>,
}

impl Schedule {
    /// Orders arrivals by explicit timestamps (`times[i]` for arrival `i`),
    /// ties broken by online id.
    pub fn from_times(instance: &Instance, times: &[f64]) -> Result<Schedule> {
        if times.len() != instance.n_online() {
            return Err(Error::input(format!(
                "{} timestamps for {} online vertices",
                times.len(),
                instance.n_online()
            )));
        }
        if let Some(t) = times.iter().find(|t| !(0.0..=1.0).contains(*t)) {
            return Err(Error::input(format!("timestamp {t} is outside [0, 1]")));
        }
        let mut order: Vec<usize> = (0..times.len()).collect();
        order.sort_by(|&i, &j| {
            times[i]
                .total_cmp(&times[j])
                .then(instance.arrivals[i].id.cmp(&instance.arrivals[j].id))
        });
        let times = order.iter().map(|&i| times[i]).collect();
        Ok(Schedule { order, times })
    }

    /// Rank-based timestamps `t = k/|R|` for the `k`-th arrival (1-based).
    pub fn ranked(order: Vec<usize>) -> Schedule {
        let m = order.len() as f64;
        let times = (1..=order.len()).map(|k| k as f64 / m).collect();
        Schedule { order, times }
    }
}

impl ArrivalModel {
    pub fn schedule(&self, instance: &Instance) -> Schedule {
        let m = instance.n_online();
        match *self {
            ArrivalModel::Adversarial => Schedule::ranked((0..m).collect()),
            ArrivalModel::RandomPermutation { seed } => {
                let mut r = rng::seeded(seed);
                let mut order: Vec<usize> = (0..m).collect();
                for i in (1..m).rev() {
                    let j = ((rng::unit_f64(&mut r) * (i + 1) as f64) as usize).min(i);
                    order.swap(i, j);
                }
                Schedule::ranked(order)
            }
            ArrivalModel::RandomTimestamps { seed } => {
                let times = draw_timestamps(m, seed);
                Schedule::from_times(instance, &times).expect("draws lie in [0, 1)")
            }
        }
    }
}

/// One uniform timestamp per arrival, each from its own split stream.
pub fn draw_timestamps(m: usize, seed: u64) -> Vec<f64> {
    let mut master = rng::seeded(seed);
    (0..m)
        .map(|_| rng::unit_f64(&mut rng::split(&mut master)))
        .collect()
}
