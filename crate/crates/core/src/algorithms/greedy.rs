//! Greedy for integral matroid matching under random arrivals.
//!
//! Arrivals are processed in ascending timestamp order. An arrival whose
//! neighborhood lies in `span(M_L)` passes; otherwise it is matched to its
//! first preferred neighbor outside the span, gets `z_v = (1+α)·g(t_v)`, and
//! every offline vertex newly spanned gets `y_w = (1+α)·(1 − g(t_v))`.

use crate::error::{Error, Result};
use crate::instances::{ArrivalModel, Instance, Schedule};
use crate::submodular::SubmodularFn;
use crate::subset::Subset;
use crate::{greedy_schedule, ONE_PLUS_ALPHA};

use super::{Algorithm, EdgeValue, OnlineState, RoundRecord, RunTrace};

/// Per-arrival preference orders over the offline side.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum Preferences {
    /// Ascending offline id.
    #[default]
    Canonical,
    /// `lists[i]` ranks offline vertices for arrival `i`. Neighbors missing
    /// from a list rank after the listed ones, in id order.
    Explicit(Vec<Vec<usize>>),
}

impl Preferences {
    pub fn validate(&self, instance: &Instance) -> Result<()> {
        if let Preferences::Explicit(lists) = self {
            if lists.len() != instance.n_online() {
                return Err(Error::input(format!(
                    "{} preference lists for {} online vertices",
                    lists.len(),
                    instance.n_online()
                )));
            }
            for (i, list) in lists.iter().enumerate() {
                if let Some(&u) = list.iter().find(|&&u| u >= instance.n_offline) {
                    return Err(Error::input(format!(
                        "preference list {i} names offline vertex {u} >= {}",
                        instance.n_offline
                    )));
                }
            }
        }
        Ok(())
    }

    fn choose(&self, arrival: usize, available: Subset) -> Option<usize> {
        let listed = match self {
            Preferences::Canonical => None,
            Preferences::Explicit(lists) => lists[arrival]
                .iter()
                .copied()
                .find(|&u| available.contains(u)),
        };
        listed.or_else(|| available.iter().next())
    }
}

/// Raw result of one Greedy pass.
#[derive(Clone, Debug, PartialEq)]
pub struct GreedyOutcome {
    pub y: Vec<f64>,
    /// Indexed by arrival.
    pub z: Vec<f64>,
    /// Offline partner per arrival.
    pub matched_to: Vec<Option<usize>>,
    /// Timestamp of the round in which each offline vertex entered the span.
    pub spanned_at: Vec<Option<f64>>,
    pub matched_set: Subset,
    /// Empty unless recording was requested.
    pub rounds: Vec<RoundRecord>,
}

impl GreedyOutcome {
    pub fn matching_size(&self) -> usize {
        self.matched_to.iter().flatten().count()
    }
}

/// Runs Greedy over `schedule`, optionally deleting arrival `skip`.
///
/// `f` must be a matroid rank function; this entry point does not re-check it.
/// With `record`, every round stores `dD = z_v + f̂(y') − f̂(y)` and `dP`.
pub fn greedy_on_schedule(
    instance: &Instance,
    f: &SubmodularFn,
    schedule: &Schedule,
    prefs: &Preferences,
    skip: Option<usize>,
    record: bool,
) -> Result<GreedyOutcome> {
    let n = f.n();
    let m = instance.n_online();
    let mut out = GreedyOutcome {
        y: vec![0.0; n],
        z: vec![0.0; m],
        matched_to: vec![None; m],
        spanned_at: vec![None; n],
        matched_set: Subset::EMPTY,
        rounds: Vec::new(),
    };
    let mut span = f.span(Subset::EMPTY);

    for (&i, &t) in schedule.order.iter().zip(&schedule.times) {
        if Some(i) == skip {
            continue;
        }
        let v = instance.arrivals[i].id;
        let available = instance.nbr_set(i).difference(span);
        let Some(u) = prefs.choose(i, available) else {
            if record {
                out.rounds.push(RoundRecord {
                    v,
                    a: None,
                    raised: Vec::new(),
                    prior: Vec::new(),
                    regions: Vec::new(),
                    dp: 0.0,
                    dd: 0.0,
                    t_v: Some(t),
                    matched: None,
                });
            }
            continue;
        };

        let g = greedy_schedule(t);
        let new_span = f.span(out.matched_set.with(u));
        let newly = new_span.difference(span);
        // (1+α)(1 − 1/e) = 1 up to rounding.
        let level = (ONE_PLUS_ALPHA * (1.0 - g)).min(1.0);
        let before = record.then(|| out.y.clone());

        out.z[i] = ONE_PLUS_ALPHA * g;
        for w in newly {
            out.y[w] = level;
            out.spanned_at[w] = Some(t);
        }
        out.matched_set.insert(u);
        out.matched_to[i] = Some(u);
        span = new_span;

        if let Some(before) = before {
            let gain = f.lovasz(&out.y)? - f.lovasz(&before)?;
            out.rounds.push(RoundRecord {
                v,
                a: None,
                raised: newly.to_vec(),
                prior: newly.iter().map(|w| before[w]).collect(),
                regions: Vec::new(),
                dp: 1.0,
                dd: out.z[i] + gain,
                t_v: Some(t),
                matched: Some(u),
            });
        }
    }
    Ok(out)
}

/// Greedy with arrival order and timestamps drawn from `model`.
///
/// Under [`ArrivalModel::Adversarial`] and [`ArrivalModel::RandomPermutation`]
/// the `k`-th arrival uses `t = k/|R|`.
pub fn run_random_arrival_greedy(
    instance: &Instance,
    model: ArrivalModel,
    prefs: &Preferences,
) -> Result<RunTrace> {
    let f = instance.function()?;
    if !f.is_matroid_rank()? {
        return Err(Error::precondition(format!(
            "greedy-ra needs a matroid rank function; {:?} ({}) is not one",
            instance.name,
            instance.f.family_name()
        )));
    }
    prefs.validate(instance)?;
    let schedule = model.schedule(instance);
    let out = greedy_on_schedule(instance, &f, &schedule, prefs, None, true)?;

    let mut state = OnlineState::new(f.n(), instance.n_online());
    state.x = schedule
        .order
        .iter()
        .filter_map(|&i| {
            out.matched_to[i].map(|u| EdgeValue {
                u,
                v: instance.arrivals[i].id,
                x: 1.0,
            })
        })
        .collect();
    state.y = out.y;
    state.z = out.z;
    state.matched = Some(out.matched_set.to_vec());
    RunTrace::finish(Algorithm::GreedyRa, instance, model, &f, out.rounds, state)
}
