//! Pointwise checks on matchings, covers and their rounding.

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::algorithms::{round_cover, EdgeValue};
use crate::error::{Error, Result};
use crate::instances::Instance;
use crate::rng;
use crate::submodular::SubmodularFn;
use crate::subset::Subset;

/// Largest offline side checked exhaustively by [`check_matching`].
pub const EXHAUSTIVE_MATCHING_LIMIT: usize = 20;
/// Random sets drawn by the sampled matching check.
pub const MATCHING_SAMPLES: usize = 10_000;
/// Violations kept verbatim in a report; the rest are only counted.
pub const MAX_REPORTED: usize = 32;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "constraint", rename_all = "snake_case")]
pub enum Violation {
    /// `x_uv < 0`.
    Negative { u: usize, v: usize, x: f64 },
    /// `x` on a pair that is not an edge of the instance.
    NotAnEdge { u: usize, v: usize },
    /// `Σ_u x_uv > 1`.
    OnlineLoad { v: usize, load: f64 },
    /// `x_S > f(S)`.
    SetLoad { set: Subset, load: f64, budget: f64 },
    /// `y_u + z_v < 1` on an edge.
    Uncovered { u: usize, v: usize, sum: f64 },
    /// A potential outside `[0, 1]`.
    OutOfRange {
        side: Side,
        index: usize,
        value: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Offline,
    Online,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Negative { u, v, x } => write!(f, "x[{u},{v}] = {x} < 0"),
            Violation::NotAnEdge { u, v } => {
                write!(f, "x[{u},{v}] is set but ({u},{v}) is not an edge")
            }
            Violation::OnlineLoad { v, load } => write!(f, "x_v for v={v} is {load} > 1"),
            Violation::SetLoad { set, load, budget } => {
                write!(f, "x_S for S={set} is {load} > f(S) = {budget}")
            }
            Violation::Uncovered { u, v, sum } => {
                write!(f, "edge ({u},{v}) has y_u + z_v = {sum} < 1")
            }
            Violation::OutOfRange { side, index, value } => {
                let name = if *side == Side::Offline { "y" } else { "z" };
                write!(f, "{name}[{index}] = {value} is outside [0, 1]")
            }
        }
    }
}

/// Collects violations, keeping the first [`MAX_REPORTED`].
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Violations {
    pub count: usize,
    pub reported: Vec<Violation>,
}

impl Violations {
    fn push(&mut self, v: Violation) {
        self.count += 1;
        if self.reported.len() < MAX_REPORTED {
            self.reported.push(v);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum SetMode {
    /// Exhaustive up to [`EXHAUSTIVE_MATCHING_LIMIT`], sampled beyond.
    Auto,
    Exhaustive,
    /// `samples` random sets plus every singleton and the full set.
    Sampled {
        samples: usize,
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchingReport {
    pub mode: SetMode,
    pub sets_checked: usize,
    /// Smallest `f(S) − x_S` seen.
    pub min_set_slack: f64,
    pub violations: Violations,
}

impl MatchingReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `x ≥ 0`, `x_v ≤ 1 + tol` and `x_S ≤ f(S) + tol`, with the set constraints
/// enumerated or sampled according to [`SetMode::Auto`].
pub fn check_matching(x: &[EdgeValue], instance: &Instance, tol: f64) -> Result<MatchingReport> {
    check_matching_with(x, instance, tol, SetMode::Auto)
}

pub fn check_matching_with(
    x: &[EdgeValue],
    instance: &Instance,
    tol: f64,
    mode: SetMode,
) -> Result<MatchingReport> {
    let f = instance.function()?;
    let n = f.n();
    let mode = match mode {
        SetMode::Auto if n <= EXHAUSTIVE_MATCHING_LIMIT => SetMode::Exhaustive,
        SetMode::Auto => SetMode::Sampled {
            samples: MATCHING_SAMPLES,
            seed: 0,
        },
        SetMode::Exhaustive if n > EXHAUSTIVE_MATCHING_LIMIT => {
            return Err(Error::Size {
                what: "exhaustive matching check",
                size: n,
                limit: EXHAUSTIVE_MATCHING_LIMIT,
            })
        }
        m => m,
    };

    let mut violations = Violations::default();
    let mut online = vec![0.0; instance.n_online()];
    let mut load = vec![0.0; n];
    for e in x {
        let Some(i) = instance
            .position(e.v)
            .filter(|&i| instance.nbr_set(i).contains(e.u))
        else {
            violations.push(Violation::NotAnEdge { u: e.u, v: e.v });
            continue;
        };
        if e.x < 0.0 {
            violations.push(Violation::Negative {
                u: e.u,
                v: e.v,
                x: e.x,
            });
        }
        online[i] += e.x;
        load[e.u] += e.x;
    }
    for (i, &l) in online.iter().enumerate() {
        if l > 1.0 + tol {
            violations.push(Violation::OnlineLoad {
                v: instance.arrivals[i].id,
                load: l,
            });
        }
    }

    let mut sets_checked = 0;
    let mut min_set_slack = f64::INFINITY;
    let mut check = |s: Subset, violations: &mut Violations| {
        let xs: f64 = s.iter().map(|u| load[u]).sum();
        let budget = f.value(s);
        sets_checked += 1;
        min_set_slack = min_set_slack.min(budget - xs);
        if xs > budget + tol {
            violations.push(Violation::SetLoad {
                set: s,
                load: xs,
                budget,
            });
        }
    };
    match mode {
        SetMode::Exhaustive => {
            for mask in 0..(1u64 << n) {
                check(Subset(mask), &mut violations);
            }
        }
        SetMode::Sampled { samples, seed } => {
            let full = Subset::full(n);
            let mut r = rng::seeded(seed);
            for _ in 0..samples {
                check(Subset(r.next_u64()).intersection(full), &mut violations);
            }
            for u in 0..n {
                check(Subset::singleton(u), &mut violations);
            }
            check(full, &mut violations);
        }
        SetMode::Auto => unreachable!("resolved above"),
    }

    Ok(MatchingReport {
        mode,
        sets_checked,
        min_set_slack,
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverReport {
    /// Smallest `y_u + z_v − 1` over edges.
    pub min_edge_slack: f64,
    pub violations: Violations,
}

impl CoverReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_lengths(instance: &Instance, y: &[f64], z: &[f64]) -> Result<()> {
    if y.len() != instance.n_offline || z.len() != instance.n_online() {
        return Err(Error::input(format!(
            "potentials have lengths {}/{} but the instance has {}/{} vertices",
            y.len(),
            z.len(),
            instance.n_offline,
            instance.n_online()
        )));
    }
    Ok(())
}

/// Potentials in `[0, 1]` and `y_u + z_v ≥ 1 − tol` on every edge.
pub fn check_vc_feasibility(
    y: &[f64],
    z: &[f64],
    instance: &Instance,
    tol: f64,
) -> Result<CoverReport> {
    check_lengths(instance, y, z)?;
    let mut violations = Violations::default();
    for (side, values) in [(Side::Offline, y), (Side::Online, z)] {
        for (index, &value) in values.iter().enumerate() {
            if !(-tol..=1.0 + tol).contains(&value) {
                violations.push(Violation::OutOfRange { side, index, value });
            }
        }
    }
    let mut min_edge_slack = f64::INFINITY;
    for (u, i) in instance.edges() {
        let sum = y[u] + z[i];
        min_edge_slack = min_edge_slack.min(sum - 1.0);
        if sum < 1.0 - tol {
            violations.push(Violation::Uncovered {
                u,
                v: instance.arrivals[i].id,
                sum,
            });
        }
    }
    Ok(CoverReport {
        min_edge_slack,
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualityReport {
    pub primal: f64,
    pub dual: f64,
    pub matching: MatchingReport,
    pub cover: CoverReport,
}

impl DualityReport {
    /// Both sides feasible and `primal ≤ dual + tol`.
    pub fn passed(&self, tol: f64) -> bool {
        self.matching.passed() && self.cover.passed() && self.primal <= self.dual + tol
    }
}

/// Weak duality `Σ x_e ≤ f̂(y) + Σ z_v`, after checking both sides.
pub fn check_weak_duality(
    x: &[EdgeValue],
    y: &[f64],
    z: &[f64],
    instance: &Instance,
    tol: f64,
) -> Result<DualityReport> {
    let matching = check_matching(x, instance, tol)?;
    let cover = check_vc_feasibility(y, z, instance, tol)?;
    let f = instance.function()?;
    let clamped: Vec<f64> = y.iter().map(|v| v.clamp(0.0, 1.0)).collect();
    Ok(DualityReport {
        primal: x.iter().fold(0.0, |acc, e| acc + e.x),
        dual: f.lovasz(&clamped)? + z.iter().sum::<f64>(),
        matching,
        cover,
    })
}

/// `E_γ[f(S_γ) + |T_γ|]` for threshold rounding, integrated exactly.
///
/// The rounded cost is constant between consecutive values of
/// `{0, 1} ∪ {y_u} ∪ {1 − z_v}`, so each segment is evaluated at its midpoint.
pub fn expected_rounded_cost(f: &SubmodularFn, y: &[f64], z: &[f64]) -> f64 {
    let mut cuts: Vec<f64> = [0.0, 1.0]
        .into_iter()
        .chain(y.iter().copied())
        .chain(z.iter().map(|v| 1.0 - v))
        .map(|c| c.clamp(0.0, 1.0))
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    cuts.windows(2)
        .map(|w| {
            let g = 0.5 * (w[0] + w[1]);
            let s: Subset = (0..y.len()).filter(|&u| y[u] >= g).collect();
            let t = z.iter().filter(|&&v| v >= 1.0 - g).count();
            (w[1] - w[0]) * (f.value(s) + t as f64)
        })
        .sum()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundingReport {
    pub grid_points: usize,
    /// Grid values of `γ` whose rounded cover misses an edge.
    pub uncovered_at: Vec<f64>,
    pub expected_cost: f64,
    /// `f̂(y) + Σ z_v`.
    pub fractional_cost: f64,
}

impl RoundingReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.uncovered_at.is_empty() && (self.expected_cost - self.fractional_cost).abs() <= tol
    }
}

/// Rounds `(y, z)` at `γ = k/(points − 1)` for every `k` and compares the
/// exact expected rounded cost with the fractional cost.
pub fn check_rounding(
    y: &[f64],
    z: &[f64],
    instance: &Instance,
    points: usize,
) -> Result<RoundingReport> {
    if points < 2 {
        return Err(Error::input("rounding grid needs at least two points"));
    }
    let f = instance.function()?;
    let mut uncovered_at = Vec::new();
    for k in 0..points {
        let gamma = k as f64 / (points - 1) as f64;
        if !round_cover(instance, y, z, gamma)?.covers(instance) {
            uncovered_at.push(gamma);
        }
    }
    Ok(RoundingReport {
        grid_points: points,
        uncovered_at,
        expected_cost: expected_rounded_cost(&f, y, z),
        fractional_cost: f.lovasz(y)? + z.iter().sum::<f64>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::run_mobm_pd;
    use crate::instances::{upper_triangular, Arrival};
    use crate::submodular::FnSpec;

    fn complete(n: usize, m: usize, f: FnSpec) -> Instance {
        let arrivals = (0..m)
            .map(|id| Arrival {
                id,
                nbrs: (0..n).collect(),
            })
            .collect();
        Instance::new("k", n, f, arrivals).unwrap()
    }

    fn ev(u: usize, v: usize, x: f64) -> EdgeValue {
        EdgeValue { u, v, x }
    }

    #[test]
    fn pd_output_is_a_matching() {
        let i = upper_triangular(6);
        let t = run_mobm_pd(&i).unwrap();
        let r = check_matching(&t.state.x, &i, 1e-9).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.sets_checked, 64);
    }

    #[test]
    fn online_overload() {
        let i = complete(2, 1, FnSpec::Cardinality);
        let r = check_matching(&[ev(0, 0, 1.5)], &i, 1e-9).unwrap();
        assert!(r
            .violations
            .reported
            .iter()
            .any(|v| matches!(v, Violation::OnlineLoad { v: 0, .. })));
    }

    #[test]
    fn set_overload_has_witness() {
        let i = complete(2, 2, FnSpec::UniformRank { k: 1 });
        let x = [ev(0, 0, 1.0), ev(1, 1, 1.0)];
        let r = check_matching(&x, &i, 1e-9).unwrap();
        assert_eq!(r.violations.count, 1);
        assert_eq!(
            r.violations.reported[0],
            Violation::SetLoad {
                set: Subset::full(2),
                load: 2.0,
                budget: 1.0
            }
        );
        let s = check_matching_with(
            &x,
            &i,
            1e-9,
            SetMode::Sampled {
                samples: 100,
                seed: 1,
            },
        )
        .unwrap();
        assert!(!s.passed());
    }

    #[test]
    fn negative_and_non_edges() {
        let i = Instance::new(
            "e",
            2,
            FnSpec::Cardinality,
            vec![Arrival {
                id: 0,
                nbrs: vec![0],
            }],
        )
        .unwrap();
        let r = check_matching(&[ev(0, 0, -0.1), ev(1, 0, 0.2), ev(0, 9, 0.1)], &i, 1e-9).unwrap();
        assert_eq!(r.violations.count, 3);
    }

    #[test]
    fn weak_duality_on_pd_edge() {
        let i = complete(1, 1, FnSpec::Cardinality);
        let t = run_mobm_pd(&i).unwrap();
        let d = check_weak_duality(&t.state.x, &t.state.y, &t.state.z, &i, 1e-9).unwrap();
        assert!(d.passed(1e-9));
        assert!((d.primal - 1.0 / crate::ONE_PLUS_ALPHA).abs() < 1e-12);
        assert!((d.dual - 1.0).abs() < 1e-12);
        let zero = check_weak_duality(&[], &t.state.y, &t.state.z, &i, 1e-9).unwrap();
        assert!(zero.passed(1e-9));
    }

    #[test]
    fn cover_checks() {
        let i = complete(1, 1, FnSpec::Cardinality);
        assert!(check_vc_feasibility(&[0.5], &[0.5], &i, 1e-9)
            .unwrap()
            .passed());
        let r = check_vc_feasibility(&[0.5], &[0.4], &i, 1e-9).unwrap();
        assert_eq!(r.violations.count, 1);
        assert!((r.min_edge_slack + 0.1).abs() < 1e-12);
        assert_eq!(
            check_vc_feasibility(&[1.5], &[0.0], &i, 1e-9)
                .unwrap()
                .violations
                .count,
            1
        );
        assert!(check_vc_feasibility(&[0.5], &[], &i, 1e-9).is_err());
    }

    #[test]
    fn expected_cost_matches_lovasz() {
        let f = SubmodularFn::uniform_rank(3, 2).unwrap();
        let y = [0.2, 0.7, 0.7];
        let z = [0.3, 1.0, 0.0];
        let want = f.lovasz(&y).unwrap() + 1.3;
        assert!((expected_rounded_cost(&f, &y, &z) - want).abs() < 1e-12);
    }

    #[test]
    fn rounding_report() {
        let i = upper_triangular(4);
        let t = run_mobm_pd(&i).unwrap();
        let r = check_rounding(&t.state.y, &t.state.z, &i, 101).unwrap();
        assert!(r.passed(1e-9), "{r:?}");
    }
}
