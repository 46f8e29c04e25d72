//! Waterfilling: each arrival raises its unsaturated neighbors to the highest
//! common level `a` such that `(1 − a) + f̂(y') − f̂(y) ≤ 1 + α`.

use crate::barchart::{BarChart, NewRegion, SNAP_TOL};
use crate::error::{Error, Result};
use crate::instances::{ArrivalModel, Instance};
use crate::submodular::{AxiomMode, SubmodularFn, EXHAUSTIVE_LIMIT};
use crate::subset::Subset;
use crate::{ALPHA, ONE_PLUS_ALPHA};

use super::{Algorithm, EdgeValue, OnlineState, RoundRecord, RunTrace};

// Slack when comparing the resource curve against the budget.
const BUDGET_EPS: f64 = 1e-12;

/// Largest `x` with `h(x) ≤ budget` for the continuous piecewise-linear `h`
/// through `points` (ascending `x`, starting at `(0, h(0) ≤ budget)`).
/// Scans segments right to left and solves the crossing segment exactly.
fn sup_within(points: &[(f64, f64)], budget: f64) -> f64 {
    let (x_last, h_last) = points[points.len() - 1];
    if h_last <= budget + BUDGET_EPS {
        return x_last;
    }
    for k in (0..points.len() - 1).rev() {
        let (x0, h0) = points[k];
        if h0 <= budget + BUDGET_EPS {
            let (x1, h1) = points[k + 1];
            // h1 > budget, so the segment is strictly increasing.
            let a = x0 + (budget - h0) * (x1 - x0) / (h1 - h0);
            return a.clamp(x0, x1);
        }
    }
    // h(0) ≤ budget always holds for waterfilling curves.
    points[0].0
}

/// Water level for an arrival with neighborhood `nbrs` on the current chart.
///
/// The resource curve `h(a) = (1 − a) + f̂(y'(a)) − f̂(y)` has slope
/// `−1 + f(L(t) ∪ N) − f(L(t))` on each bar, so it is evaluated exactly at the
/// chart's boundaries and the crossing with `1 + α` is solved in closed form.
/// When the result is below 1 the budget is exhausted: `h(a) = 1 + α`.
pub fn water_level(chart: &BarChart<'_>, y: &[f64], nbrs: Subset, alpha: f64) -> Result<f64> {
    let cy = chart.potentials();
    if cy.len() != y.len() || cy.iter().zip(y).any(|(a, b)| (a - b).abs() > SNAP_TOL) {
        return Err(Error::Invariant(
            "potentials disagree with the bar chart they are paired with".into(),
        ));
    }
    let f = chart.function();
    if nbrs.bound() > f.n() {
        return Err(Error::input(format!(
            "neighborhood {nbrs} is not contained in the ground set of {}",
            f.n()
        )));
    }
    let mut points = Vec::with_capacity(chart.intervals().len() + 1);
    let mut h = 1.0;
    points.push((0.0, h));
    for iv in chart.intervals() {
        let gain = f.value(iv.member_set().union(nbrs)) - iv.height;
        h += iv.width() * (gain - 1.0);
        points.push((iv.hi, h));
    }
    Ok(sup_within(&points, 1.0 + alpha))
}

/// Modular special case: `h(a) = (1 − a) + Σ_{u∈N} max(a − y_u, 0)`.
fn modular_level(y: &[f64], nbrs: &[usize], budget: f64) -> f64 {
    let mut xs: Vec<f64> = nbrs
        .iter()
        .map(|&u| y[u])
        .filter(|&v| v > 0.0 && v < 1.0)
        .collect();
    xs.push(0.0);
    xs.push(1.0);
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let points: Vec<(f64, f64)> = xs
        .into_iter()
        .map(|x| {
            let used: f64 = nbrs.iter().map(|&u| (x - y[u]).max(0.0)).sum();
            (x, 1.0 - x + used)
        })
        .collect();
    sup_within(&points, budget)
}

/// New regions of the cardinality bar chart when `raised` moves to `a`;
/// bars are cut at every potential below `a`.
fn modular_regions(y: &[f64], raised: &[usize], a: f64) -> Vec<NewRegion> {
    let mut cuts: Vec<f64> = y.iter().copied().filter(|&v| v > 0.0 && v < a).collect();
    cuts.push(0.0);
    cuts.push(a);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    cuts.windows(2)
        .filter_map(|w| {
            let (lo, hi) = (w[0], w[1]);
            let appended: Vec<usize> = raised.iter().copied().filter(|&u| y[u] <= lo).collect();
            if appended.is_empty() {
                return None;
            }
            let old_height = y.iter().filter(|&&v| v >= hi).count() as f64;
            Some(NewRegion {
                lo,
                hi,
                old_height,
                new_height: old_height + appended.len() as f64,
                marginals: vec![1.0; appended.len()],
                appended,
            })
        })
        .collect()
}

/// Waterfilling for online bipartite vertex cover (`f = |S|`).
///
/// Works directly on the potentials without a bar chart; the regions in the
/// trace are those of the cardinality chart and feed the charging audit.
pub fn run_obvc(instance: &Instance) -> Result<RunTrace> {
    let f = instance.function()?;
    if !f.is_cardinality() {
        return Err(Error::precondition(format!(
            "obvc needs the cardinality function, instance {:?} uses {}",
            instance.name,
            instance.f.family_name()
        )));
    }
    let mut state = OnlineState::new(f.n(), instance.n_online());
    let mut rounds = Vec::with_capacity(instance.n_online());
    for (i, arr) in instance.arrivals.iter().enumerate() {
        let nbrs = instance.nbr_set(i).to_vec();
        let a = modular_level(&state.y, &nbrs, ONE_PLUS_ALPHA);
        let raised: Vec<usize> = nbrs.into_iter().filter(|&u| state.y[u] < a).collect();
        let prior: Vec<f64> = raised.iter().map(|&u| state.y[u]).collect();
        let regions = modular_regions(&state.y, &raised, a);
        let used: f64 = prior.iter().map(|p| a - p).sum();
        for &u in &raised {
            state.y[u] = a;
        }
        state.z[i] = 1.0 - a;
        rounds.push(RoundRecord {
            v: arr.id,
            a: Some(a),
            raised,
            prior,
            regions,
            dp: 0.0,
            dd: (1.0 - a) + used,
            t_v: None,
            matched: None,
        });
    }
    RunTrace::finish(
        Algorithm::Obvc,
        instance,
        ArrivalModel::Adversarial,
        &f,
        rounds,
        state,
    )
}

/// Waterfilling against the Lovász extension (fractional MOBVC).
pub fn run_mobvc(instance: &Instance) -> Result<RunTrace> {
    waterfill(instance, Algorithm::Mobvc)
}

/// Waterfilling with the primal update: on every new region, the `k`-th
/// appended vertex of `σ_t` receives `width · marginal_k / (a + α)`, and
/// `x_uv` is the round's total increment of `x_u`.
pub fn run_mobm_pd(instance: &Instance) -> Result<RunTrace> {
    waterfill(instance, Algorithm::MobmPd)
}

pub(crate) fn require_submodular(f: &SubmodularFn) -> Result<()> {
    let mode = if f.n() <= EXHAUSTIVE_LIMIT {
        AxiomMode::Exhaustive
    } else {
        AxiomMode::Sampled {
            trials: 10_000,
            seed: 0,
        }
    };
    let report = f.verify_axioms(mode)?;
    if !report.passed() {
        return Err(Error::precondition(format!(
            "function is not monotone submodular: {:?}",
            report.witness
        )));
    }
    Ok(())
}

fn waterfill(instance: &Instance, algorithm: Algorithm) -> Result<RunTrace> {
    let f = instance.function()?;
    require_submodular(&f)?;
    let n = f.n();
    let primal = algorithm == Algorithm::MobmPd;
    let mut chart = BarChart::new(&f);
    let mut state = OnlineState::new(n, instance.n_online());
    let mut rounds = Vec::with_capacity(instance.n_online());

    for (i, arr) in instance.arrivals.iter().enumerate() {
        let nbrs = instance.nbr_set(i);
        let before = chart.potentials().to_vec();
        let a = water_level(&chart, &before, nbrs, ALPHA)?;
        let x: Subset = nbrs.iter().filter(|&u| before[u] < a).collect();
        let raise = chart.raise(x, a)?;
        let level = raise.level;
        let prior = raise.raised.iter().map(|u| before[u]).collect();
        state.z[i] = 1.0 - level;

        let mut dp = 0.0;
        if primal {
            let mut inc = vec![0.0; n];
            for r in &raise.regions {
                for (&u, &gain) in r.appended.iter().zip(&r.marginals) {
                    inc[u] += (r.hi - r.lo) * gain / (level + ALPHA);
                }
            }
            for u in raise.raised {
                if inc[u] > 0.0 {
                    state.x.push(EdgeValue {
                        u,
                        v: arr.id,
                        x: inc[u],
                    });
                    dp += inc[u];
                }
            }
        }

        rounds.push(RoundRecord {
            v: arr.id,
            a: Some(level),
            raised: raise.raised.to_vec(),
            prior,
            dd: (1.0 - level) + raise.added_area(),
            regions: raise.regions,
            dp,
            t_v: None,
            matched: None,
        });
    }
    state.y = chart.potentials().to_vec();
    state.chart = Some(chart.intervals().to_vec());
    RunTrace::finish(
        algorithm,
        instance,
        ArrivalModel::Adversarial,
        &f,
        rounds,
        state,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{upper_triangular, Arrival};
    use crate::submodular::FnSpec;
    use crate::ONE_MINUS_INV_E;

    fn inst(n: usize, f: FnSpec, nbrs: &[&[usize]]) -> Instance {
        let arrivals = nbrs
            .iter()
            .enumerate()
            .map(|(id, ns)| Arrival {
                id,
                nbrs: ns.to_vec(),
            })
            .collect();
        Instance::new("t", n, f, arrivals).unwrap()
    }

    #[test]
    fn water_level_examples() {
        let card = SubmodularFn::cardinality(2).unwrap();
        let chart = BarChart::new(&card);
        let one = water_level(&chart, &[0.0, 0.0], Subset::singleton(0), ALPHA).unwrap();
        assert_eq!(one, 1.0);
        let two = water_level(&chart, &[0.0, 0.0], Subset::full(2), ALPHA).unwrap();
        assert!((two - ALPHA).abs() < 1e-12);
        let rank1 = SubmodularFn::uniform_rank(2, 1).unwrap();
        let chart = BarChart::new(&rank1);
        assert_eq!(
            water_level(&chart, &[0.0, 0.0], Subset::full(2), ALPHA).unwrap(),
            1.0
        );
        assert_eq!(
            water_level(&chart, &[0.0, 0.0], Subset::EMPTY, ALPHA).unwrap(),
            1.0
        );
    }

    #[test]
    fn water_level_rejects_stale_potentials() {
        let card = SubmodularFn::cardinality(2).unwrap();
        let chart = BarChart::new(&card);
        assert!(matches!(
            water_level(&chart, &[0.5, 0.0], Subset::full(2), ALPHA),
            Err(Error::Invariant(_))
        ));
    }

    #[test]
    fn water_level_sees_non_neighbor_breakpoints() {
        // Rank-1 on {0, 1}; vertex 0 already at 0.5. For t < 0.5 the
        // neighbor 1 adds nothing, above 0.5 it adds 1.
        let f = SubmodularFn::uniform_rank(3, 1).unwrap();
        let mut chart = BarChart::new(&f);
        chart.raise(Subset::singleton(0), 0.5).unwrap();
        let y = chart.potentials().to_vec();
        let nbrs = Subset::from_elems([1, 2]);
        let a = water_level(&chart, &y, nbrs, ALPHA).unwrap();
        // h(a) = 1 − a + max(a − 0.5, 0) stays ≤ 1.
        assert_eq!(a, 1.0);
    }

    #[test]
    fn obvc_single_edge_and_star() {
        let t = run_obvc(&inst(1, FnSpec::Cardinality, &[&[0]])).unwrap();
        assert_eq!(t.state.y, vec![1.0]);
        assert_eq!(t.state.z, vec![0.0]);
        assert_eq!(t.dual, 1.0);

        let t = run_obvc(&inst(2, FnSpec::Cardinality, &[&[0, 1]])).unwrap();
        assert!((t.state.y[0] - ALPHA).abs() < 1e-12);
        assert!((t.state.z[0] - (1.0 - ALPHA)).abs() < 1e-12);
        assert!((t.state.z[0] - 0.418_023_293_130_673_6).abs() < 1e-12);
        assert!((t.dual - ONE_PLUS_ALPHA).abs() < 1e-12);
    }

    #[test]
    fn obvc_repeated_neighbor() {
        let t = run_obvc(&inst(1, FnSpec::Cardinality, &[&[0], &[0]])).unwrap();
        assert_eq!(t.state.y, vec![1.0]);
        assert_eq!(t.state.z, vec![0.0, 0.0]);
        assert_eq!(t.rounds[1].a, Some(1.0));
        assert!(t.rounds[1].raised.is_empty());
        assert_eq!(t.dual, 1.0);
    }

    #[test]
    fn obvc_requires_cardinality() {
        let i = inst(2, FnSpec::UniformRank { k: 1 }, &[&[0, 1]]);
        assert!(matches!(run_obvc(&i), Err(Error::Precondition(_))));
    }

    #[test]
    fn mobvc_uniform_rank_star() {
        let t = run_mobvc(&inst(2, FnSpec::UniformRank { k: 1 }, &[&[0, 1]])).unwrap();
        assert_eq!(t.rounds[0].a, Some(1.0));
        assert_eq!(t.state.z, vec![0.0]);
        assert!((t.dual - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mobvc_rejects_non_submodular() {
        let f = FnSpec::ExplicitTable {
            values: vec![0.0, 1.0, 1.0, 3.0],
        };
        let i = inst(2, f, &[&[0, 1]]);
        assert!(matches!(run_mobvc(&i), Err(Error::Precondition(_))));
    }

    #[test]
    fn mobvc_matches_obvc_on_cardinality() {
        let i = upper_triangular(6);
        let a = run_obvc(&i).unwrap();
        let b = run_mobvc(&i).unwrap();
        for (p, q) in a.state.y.iter().zip(&b.state.y) {
            assert!((p - q).abs() <= 1e-12);
        }
        for (p, q) in a.state.z.iter().zip(&b.state.z) {
            assert!((p - q).abs() <= 1e-12);
        }
        assert!((a.dual - b.dual).abs() <= 1e-12);
    }

    #[test]
    fn pd_star() {
        let t = run_mobm_pd(&inst(2, FnSpec::Cardinality, &[&[0, 1]])).unwrap();
        let r = &t.rounds[0];
        assert!((r.a.unwrap() - ALPHA).abs() < 1e-12);
        assert_eq!(r.regions.len(), 1);
        assert_eq!(r.regions[0].delta(), 2.0);
        for e in &t.state.x {
            assert!((e.x - 0.5).abs() < 1e-12);
        }
        assert!((r.dp - 1.0).abs() < 1e-12);
        assert!((r.dd - ONE_PLUS_ALPHA).abs() < 1e-12);
    }

    #[test]
    fn pd_single_edge() {
        let t = run_mobm_pd(&inst(1, FnSpec::Cardinality, &[&[0]])).unwrap();
        assert_eq!(t.state.x.len(), 1);
        let x = t.state.x[0].x;
        assert!((x - 1.0 / ONE_PLUS_ALPHA).abs() < 1e-12);
        assert!((x - ONE_MINUS_INV_E).abs() < 1e-12);
        assert!((t.dual - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pd_gap_on_triangular() {
        let t = run_mobm_pd(&upper_triangular(5)).unwrap();
        for r in &t.rounds {
            assert!((r.dd - ONE_PLUS_ALPHA * r.dp).abs() <= 1e-9 * r.dd.max(1.0));
        }
        assert!((t.dual - ONE_PLUS_ALPHA * t.primal).abs() < 1e-9);
    }

    #[test]
    fn empty_neighborhood_round() {
        let t = run_mobvc(&inst(2, FnSpec::Cardinality, &[&[]])).unwrap();
        assert_eq!(t.rounds[0].a, Some(1.0));
        assert_eq!(t.state.z, vec![0.0]);
        assert_eq!(t.dual, 0.0);
    }

    #[test]
    fn sup_within_on_convex_curve() {
        // h: (0,1) → (0.5,1.2) → (1,2.2); budget 1.5 crosses in the second segment.
        let a = sup_within(&[(0.0, 1.0), (0.5, 1.2), (1.0, 2.2)], 1.5);
        assert!((a - 0.65).abs() < 1e-12);
    }
}
