//! Monotone submodular set functions on the offline vertex set.
//!
//! A [`SubmodularFn`] is an immutable evaluation oracle over a dense ground set
//! `0..n`. Besides evaluation it offers the axiom checker, the Lovász extension
//! (exact and Monte-Carlo), and the matroid helpers used by random-arrival Greedy.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;
use crate::subset::{Subset, MAX_GROUND};
use crate::TOL;

/// Largest ground set for exhaustive enumeration (axioms, tables, rank tests).
pub const EXHAUSTIVE_LIMIT: usize = 16;

/// Dense ground set `0..n`; ascending id is the canonical tie-break order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroundSet {
    n: usize,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::Size {
                what: "bitmask subsets",
                size: n,
                limit: MAX_GROUND,
            });
        }
        Ok(GroundSet { n })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.n)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn contains(&self, s: Subset) -> bool {
        s.bound() <= self.n
    }
}

/// Serialized form of a function, the `"f"` object of the instance schema.
/// The ground-set size is supplied by the surrounding instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum FnSpec {
    Cardinality,
    UniformRank {
        k: u32,
    },
    PartitionBudget {
        blocks: Vec<Vec<usize>>,
        caps: Vec<f64>,
    },
    WeightedThreshold {
        weights: Vec<f64>,
        cap: f64,
    },
    /// All `2^n` values in bitmask order.
    ExplicitTable {
        values: Vec<f64>,
    },
}

impl FnSpec {
    pub fn family_name(&self) -> &'static str {
        match self {
            FnSpec::Cardinality => "cardinality",
            FnSpec::UniformRank { .. } => "uniform_rank",
            FnSpec::PartitionBudget { .. } => "partition_budget",
            FnSpec::WeightedThreshold { .. } => "weighted_threshold",
            FnSpec::ExplicitTable { .. } => "explicit_table",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Family {
    Cardinality,
    UniformRank(u32),
    PartitionBudget(Vec<(Subset, f64)>),
    WeightedThreshold { weights: Vec<f64>, cap: f64 },
    ExplicitTable(Vec<f64>),
}

/// Evaluation oracle for a nonnegative set function on `0..n`.
///
/// Construction rejects negative values. Monotonicity and submodularity are
/// guaranteed for the closed-form families and checked by
/// [`SubmodularFn::verify_axioms`] for tables.
#[derive(Clone, Debug, PartialEq)]
pub struct SubmodularFn {
    ground: GroundSet,
    family: Family,
}

fn check_real(what: &str, x: f64) -> Result<()> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::input(format!(
            "{what} must be a finite nonnegative real, got {x}"
        )));
    }
    Ok(())
}

impl SubmodularFn {
    pub fn from_spec(n: usize, spec: &FnSpec) -> Result<Self> {
        match spec {
            FnSpec::Cardinality => Self::cardinality(n),
            FnSpec::UniformRank { k } => Self::uniform_rank(n, *k),
            FnSpec::PartitionBudget { blocks, caps } => Self::partition_budget(n, blocks, caps),
            FnSpec::WeightedThreshold { weights, cap } => {
                if weights.len() != n {
                    return Err(Error::input(format!(
                        "weighted_threshold has {} weights for a ground set of {n}",
                        weights.len()
                    )));
                }
                Self::weighted_threshold(weights.clone(), *cap)
            }
            FnSpec::ExplicitTable { values } => Self::explicit_table(n, values.clone()),
        }
    }

    pub fn cardinality(n: usize) -> Result<Self> {
        Ok(SubmodularFn {
            ground: GroundSet::new(n)?,
            family: Family::Cardinality,
        })
    }

    pub fn uniform_rank(n: usize, k: u32) -> Result<Self> {
        Ok(SubmodularFn {
            ground: GroundSet::new(n)?,
            family: Family::UniformRank(k),
        })
    }

    /// `f(S) = Σ_blocks min(|S ∩ block|, cap_block)`; `blocks` must partition `0..n`.
    pub fn partition_budget(n: usize, blocks: &[Vec<usize>], caps: &[f64]) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        if blocks.len() != caps.len() {
            return Err(Error::input(format!(
                "partition_budget has {} blocks but {} caps",
                blocks.len(),
                caps.len()
            )));
        }
        let mut seen = Subset::EMPTY;
        let mut parts = Vec::with_capacity(blocks.len());
        for (i, (block, &cap)) in blocks.iter().zip(caps).enumerate() {
            check_real(&format!("caps[{i}]"), cap)?;
            let mut mask = Subset::EMPTY;
            for &u in block {
                if u >= n {
                    return Err(Error::input(format!(
                        "blocks[{i}] contains {u}, outside the ground set of {n}"
                    )));
                }
                if seen.contains(u) {
                    return Err(Error::input(format!(
                        "element {u} appears in more than one block"
                    )));
                }
                seen.insert(u);
                mask.insert(u);
            }
            parts.push((mask, cap));
        }
        if seen != ground.full() {
            let missing = ground.full().difference(seen);
            return Err(Error::input(format!(
                "blocks do not cover the ground set; missing {missing}"
            )));
        }
        Ok(SubmodularFn {
            ground,
            family: Family::PartitionBudget(parts),
        })
    }

    /// `f(S) = min(Σ_{u∈S} w_u, cap)`.
    pub fn weighted_threshold(weights: Vec<f64>, cap: f64) -> Result<Self> {
        let ground = GroundSet::new(weights.len())?;
        for (i, &w) in weights.iter().enumerate() {
            check_real(&format!("weights[{i}]"), w)?;
        }
        check_real("cap", cap)?;
        Ok(SubmodularFn {
            ground,
            family: Family::WeightedThreshold { weights, cap },
        })
    }

    /// Dense table of all `2^n` values indexed by bitmask.
    pub fn explicit_table(n: usize, values: Vec<f64>) -> Result<Self> {
        if n > EXHAUSTIVE_LIMIT {
            return Err(Error::Size {
                what: "explicit tables",
                size: n,
                limit: EXHAUSTIVE_LIMIT,
            });
        }
        if values.len() != 1usize << n {
            return Err(Error::input(format!(
                "explicit_table needs 2^{n} = {} values, got {}",
                1usize << n,
                values.len()
            )));
        }
        for (mask, &v) in values.iter().enumerate() {
            check_real(&format!("values[{mask}]"), v)?;
        }
        Ok(SubmodularFn {
            ground: GroundSet::new(n)?,
            family: Family::ExplicitTable(values),
        })
    }

    /// Evaluates every subset into an [`FnSpec::ExplicitTable`] function.
    pub fn tabulate(&self) -> Result<Self> {
        let n = self.n();
        let table = self.table()?;
        Self::explicit_table(n, table)
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn is_cardinality(&self) -> bool {
        matches!(self.family, Family::Cardinality)
    }

    pub fn spec(&self) -> FnSpec {
        match &self.family {
            Family::Cardinality => FnSpec::Cardinality,
            Family::UniformRank(k) => FnSpec::UniformRank { k: *k },
            Family::PartitionBudget(parts) => FnSpec::PartitionBudget {
                blocks: parts.iter().map(|(m, _)| m.to_vec()).collect(),
                caps: parts.iter().map(|&(_, c)| c).collect(),
            },
            Family::WeightedThreshold { weights, cap } => FnSpec::WeightedThreshold {
                weights: weights.clone(),
                cap: *cap,
            },
            Family::ExplicitTable(values) => FnSpec::ExplicitTable {
                values: values.clone(),
            },
        }
    }

    /// `f(S)`, rejecting elements outside the ground set.
    pub fn evaluate(&self, s: Subset) -> Result<f64> {
        if !self.ground.contains(s) {
            return Err(Error::input(format!(
                "subset {s} is not contained in the ground set of {}",
                self.n()
            )));
        }
        Ok(self.value(s))
    }

    /// `f(S)` without the ground-set check; callers guarantee `S ⊆ ground`.
    #[inline]
    pub fn value(&self, s: Subset) -> f64 {
        debug_assert!(self.ground.contains(s));
        match &self.family {
            Family::Cardinality => s.len() as f64,
            Family::UniformRank(k) => s.len().min(*k as usize) as f64,
            Family::PartitionBudget(parts) => parts
                .iter()
                .map(|&(block, cap)| (s.intersection(block).len() as f64).min(cap))
                .sum(),
            Family::WeightedThreshold { weights, cap } => {
                s.iter().fold(0.0, |acc, u| acc + weights[u]).min(*cap)
            }
            Family::ExplicitTable(values) => values[s.bits() as usize],
        }
    }

    /// `f(S + u) − f(S)`; zero when `u ∈ S`.
    pub fn marginal(&self, s: Subset, u: usize) -> Result<f64> {
        if u >= self.n() {
            return Err(Error::input(format!(
                "element {u} is outside the ground set of {}",
                self.n()
            )));
        }
        self.evaluate(s)?;
        Ok(self.gain(s, u))
    }

    #[inline]
    pub(crate) fn gain(&self, s: Subset, u: usize) -> f64 {
        if s.contains(u) {
            0.0
        } else {
            self.value(s.with(u)) - self.value(s)
        }
    }

    fn table(&self) -> Result<Vec<f64>> {
        let n = self.n();
        if n > EXHAUSTIVE_LIMIT {
            return Err(Error::Size {
                what: "exhaustive enumeration",
                size: n,
                limit: EXHAUSTIVE_LIMIT,
            });
        }
        Ok((0..1u64 << n).map(|m| self.value(Subset(m))).collect())
    }

    /// Checks nonnegativity, monotonicity and diminishing returns.
    ///
    /// Exhaustive mode uses the local forms `f(S+e) ≥ f(S)` and
    /// `f(S+a) + f(S+b) ≥ f(S+a+b) + f(S)`, which are equivalent to the global
    /// inclusion and `A ⊆ B` statements. A submodularity witness `(A, B, e)`
    /// then has `B = A + b`.
    pub fn verify_axioms(&self, mode: AxiomMode) -> Result<AxiomReport> {
        match mode {
            AxiomMode::Exhaustive => self.verify_exhaustive(),
            AxiomMode::Sampled { trials, seed } => Ok(self.verify_sampled(trials, seed)),
        }
    }

    fn verify_exhaustive(&self) -> Result<AxiomReport> {
        let n = self.n();
        let table = self.table()?;
        let mut report = AxiomReport::passing();

        if let Some(m) = (0..table.len()).find(|&m| table[m] < -TOL) {
            report.fail(Witness::Negative {
                set: Subset(m as u64),
            });
        }

        'mono: for m in 0..table.len() {
            let s = Subset(m as u64);
            for e in 0..n {
                if !s.contains(e) && table[s.with(e).bits() as usize] < table[m] - TOL {
                    report.fail(Witness::NotMonotone { set: s, element: e });
                    break 'mono;
                }
            }
        }

        'sub: for m in 0..table.len() {
            let s = Subset(m as u64);
            for a in 0..n {
                if s.contains(a) {
                    continue;
                }
                let fa = table[s.with(a).bits() as usize];
                for b in a + 1..n {
                    if s.contains(b) {
                        continue;
                    }
                    let fb = table[s.with(b).bits() as usize];
                    let fab = table[s.with(a).with(b).bits() as usize];
                    if fa + fb < fab + table[m] - TOL {
                        report.fail(Witness::NotSubmodular {
                            a: s,
                            b: s.with(b),
                            element: a,
                        });
                        break 'sub;
                    }
                }
            }
        }
        Ok(report)
    }

    fn verify_sampled(&self, trials: usize, seed: u64) -> AxiomReport {
        let full = self.ground.full();
        let mut rng = rng::seeded(seed);
        let mut report = AxiomReport::passing();
        for _ in 0..trials {
            let b = Subset(rand::RngCore::next_u64(&mut rng) & full.bits());
            let a = Subset(rand::RngCore::next_u64(&mut rng) & b.bits());
            let (fa, fb) = (self.value(a), self.value(b));
            if report.nonnegative && (fa < -TOL || fb < -TOL) {
                let set = if fa < -TOL { a } else { b };
                report.fail(Witness::Negative { set });
            }
            if report.monotone && fa > fb + TOL {
                // Some single-element step on the chain from A to B must descend.
                let mut cur = a;
                for e in b.difference(a) {
                    if self.value(cur.with(e)) < self.value(cur) - TOL {
                        report.fail(Witness::NotMonotone {
                            set: cur,
                            element: e,
                        });
                        break;
                    }
                    cur.insert(e);
                }
            }
            let outside = full.difference(b);
            if report.submodular && !outside.is_empty() {
                let k = (rng::unit_f64(&mut rng) * outside.len() as f64) as usize;
                let e = outside.iter().nth(k.min(outside.len() - 1)).unwrap_or(0);
                if self.value(a.with(e)) - fa < self.value(b.with(e)) - fb - TOL {
                    report.fail(Witness::NotSubmodular { a, b, element: e });
                }
            }
            if !report.nonnegative && !report.monotone && !report.submodular {
                break;
            }
        }
        report
    }

    /// Lovász extension: sort `y` ascending (ties by id) and sum
    /// `(y_i − y_{i−1})·f(Y_i)` over the suffix sets, closing with `(1 − y_n)·f(∅)`.
    pub fn lovasz(&self, y: &[f64]) -> Result<f64> {
        self.check_point(y)?;
        let mut order: Vec<usize> = (0..y.len()).collect();
        order.sort_by(|&i, &j| y[i].total_cmp(&y[j]).then(i.cmp(&j)));
        let mut suffix = self.ground.full();
        let mut prev = 0.0;
        let mut total = 0.0;
        for u in order {
            total += (y[u] - prev) * self.value(suffix);
            suffix.remove(u);
            prev = y[u];
        }
        total += (1.0 - prev) * self.value(Subset::EMPTY);
        Ok(total)
    }

    /// Monte-Carlo estimate of `E_t[f(L(t))]`, `L(t) = {u : y_u ≥ t}`, `t ~ U[0,1]`.
    ///
    /// Sample `k` is drawn uniformly from `[k/N, (k+1)/N)`. Every draw is still
    /// marginally uniform, but the error shrinks like `1/N` instead of `1/√N`.
    pub fn lovasz_mc(&self, y: &[f64], samples: usize, seed: u64) -> Result<f64> {
        self.check_point(y)?;
        if samples == 0 {
            return Err(Error::input("lovasz_mc needs at least one sample"));
        }
        let mut rng = rng::seeded(seed);
        let mut total = 0.0;
        for k in 0..samples {
            let t = (k as f64 + rng::unit_f64(&mut rng)) / samples as f64;
            let level: Subset = (0..y.len()).filter(|&u| y[u] >= t).collect();
            total += self.value(level);
        }
        Ok(total / samples as f64)
    }

    fn check_point(&self, y: &[f64]) -> Result<()> {
        if y.len() != self.n() {
            return Err(Error::input(format!(
                "potential vector has {} coordinates for a ground set of {}",
                y.len(),
                self.n()
            )));
        }
        if let Some((u, &v)) = y
            .iter()
            .enumerate()
            .find(|(_, v)| !(0.0..=1.0).contains(*v))
        {
            return Err(Error::input(format!("y[{u}] = {v} is outside [0, 1]")));
        }
        Ok(())
    }

    /// True iff `f` is the rank function of a matroid: `f(∅) = 0`, unit
    /// marginals, and the submodular axioms.
    ///
    /// Closed-form families are decided from their parameters; other
    /// functions are checked exhaustively, which needs `n ≤ 16`.
    pub fn is_matroid_rank(&self) -> Result<bool> {
        let integral = |c: f64| c == c.round();
        match &self.family {
            Family::Cardinality | Family::UniformRank(_) => return Ok(true),
            Family::PartitionBudget(parts) if parts.iter().all(|&(_, c)| integral(c)) => {
                return Ok(true)
            }
            Family::WeightedThreshold { weights, cap }
                if integral(*cap) && weights.iter().all(|&w| w == 0.0 || w == 1.0) =>
            {
                return Ok(true)
            }
            _ => {}
        }
        let n = self.n();
        let table = self.table()?;
        if table[0].abs() > TOL {
            return Ok(false);
        }
        if table.iter().any(|v| (v - v.round()).abs() > TOL) {
            return Ok(false);
        }
        for (m, &fm) in table.iter().enumerate() {
            let s = Subset(m as u64);
            for e in (0..n).filter(|&e| !s.contains(e)) {
                let d = table[s.with(e).bits() as usize] - fm;
                if d.abs() > TOL && (d - 1.0).abs() > TOL {
                    return Ok(false);
                }
            }
        }
        Ok(self.verify_axioms(AxiomMode::Exhaustive)?.passed())
    }

    /// `{u : f(M + u) = f(M)}`; meaningful for matroid rank functions.
    pub fn span(&self, m: Subset) -> Subset {
        self.ground
            .elements()
            .filter(|&u| self.gain(m, u).abs() <= TOL)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomMode {
    /// Every subset; requires `n ≤ 16`.
    Exhaustive,
    /// Random triples `A ⊆ B`, `e ∉ B`.
    Sampled { trials: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Negative {
        set: Subset,
    },
    NotMonotone {
        set: Subset,
        element: usize,
    },
    /// `f(A+e) − f(A) < f(B+e) − f(B)` with `A ⊆ B`, `e ∉ B`.
    NotSubmodular {
        a: Subset,
        b: Subset,
        element: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomReport {
    pub nonnegative: bool,
    pub monotone: bool,
    pub submodular: bool,
    /// First violation found, if any.
    pub witness: Option<Witness>,
}

impl AxiomReport {
    fn passing() -> Self {
        AxiomReport {
            nonnegative: true,
            monotone: true,
            submodular: true,
            witness: None,
        }
    }

    fn fail(&mut self, w: Witness) {
        match w {
            Witness::Negative { .. } => self.nonnegative = false,
            Witness::NotMonotone { .. } => self.monotone = false,
            Witness::NotSubmodular { .. } => self.submodular = false,
        }
        self.witness.get_or_insert(w);
    }

    pub fn passed(&self) -> bool {
        self.nonnegative && self.monotone && self.submodular
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(elems: &[usize]) -> Subset {
        Subset::from_elems(elems.iter().copied())
    }

    #[test]
    fn evaluate_examples() {
        let card = SubmodularFn::cardinality(4).unwrap();
        assert_eq!(card.evaluate(s(&[0, 2])).unwrap(), 2.0);
        let part = SubmodularFn::partition_budget(3, &[vec![0, 1], vec![2]], &[1.0, 1.0]).unwrap();
        assert_eq!(part.evaluate(s(&[0, 1])).unwrap(), 1.0);
        assert_eq!(part.evaluate(s(&[0, 1, 2])).unwrap(), 2.0);
        for f in [&card, &part] {
            assert_eq!(f.evaluate(Subset::EMPTY).unwrap(), 0.0);
        }
        assert!(matches!(card.evaluate(s(&[4])), Err(Error::Input(_))));
    }

    #[test]
    fn marginal_examples() {
        let card = SubmodularFn::cardinality(3).unwrap();
        assert_eq!(card.marginal(s(&[0]), 1).unwrap(), 1.0);
        assert_eq!(card.marginal(s(&[0]), 0).unwrap(), 0.0);
        let u1 = SubmodularFn::uniform_rank(3, 1).unwrap();
        assert_eq!(u1.marginal(s(&[0]), 1).unwrap(), 0.0);
        assert!(card.marginal(s(&[0]), 3).is_err());
    }

    #[test]
    fn construction_rejects_bad_families() {
        assert!(SubmodularFn::partition_budget(3, &[vec![0, 1]], &[1.0]).is_err());
        assert!(SubmodularFn::partition_budget(3, &[vec![0, 1], vec![1, 2]], &[1.0, 1.0]).is_err());
        assert!(SubmodularFn::partition_budget(2, &[vec![0, 1]], &[-1.0]).is_err());
        assert!(SubmodularFn::weighted_threshold(vec![1.0, -0.5], 1.0).is_err());
        assert!(SubmodularFn::explicit_table(2, vec![0.0; 3]).is_err());
        assert!(SubmodularFn::explicit_table(1, vec![0.0, f64::NAN]).is_err());
        assert!(matches!(
            SubmodularFn::explicit_table(17, vec![]),
            Err(Error::Size { .. })
        ));
        assert!(SubmodularFn::cardinality(65).is_err());
    }

    #[test]
    fn spec_round_trip() {
        let fns = [
            SubmodularFn::cardinality(3).unwrap(),
            SubmodularFn::uniform_rank(3, 2).unwrap(),
            SubmodularFn::partition_budget(3, &[vec![2, 0], vec![1]], &[1.5, 1.0]).unwrap(),
            SubmodularFn::weighted_threshold(vec![0.5, 1.0, 2.0], 2.5).unwrap(),
        ];
        for f in fns {
            let json = serde_json::to_string(&f.spec()).unwrap();
            let spec: FnSpec = serde_json::from_str(&json).unwrap();
            let g = SubmodularFn::from_spec(3, &spec).unwrap();
            for m in 0..8 {
                assert_eq!(f.value(Subset(m)), g.value(Subset(m)));
            }
        }
        let spec: FnSpec = serde_json::from_str(r#"{"family":"uniform_rank","k":2}"#).unwrap();
        assert_eq!(spec, FnSpec::UniformRank { k: 2 });
    }

    #[test]
    fn axioms_hold_for_builtin_families() {
        let card = SubmodularFn::cardinality(4).unwrap();
        assert!(card.verify_axioms(AxiomMode::Exhaustive).unwrap().passed());
        let part = SubmodularFn::partition_budget(6, &[vec![0, 1, 2], vec![3, 4, 5]], &[2.0, 1.0])
            .unwrap();
        let r = part.verify_axioms(AxiomMode::Exhaustive).unwrap();
        assert!(r.passed(), "{r:?}");
        let thr = SubmodularFn::weighted_threshold(vec![0.3, 1.2, 0.7, 2.0, 0.1], 2.2).unwrap();
        assert!(thr.verify_axioms(AxiomMode::Exhaustive).unwrap().passed());
    }

    #[test]
    fn supermodular_table_has_witness() {
        let f = SubmodularFn::explicit_table(2, vec![0.0, 1.0, 1.0, 3.0]).unwrap();
        let r = f.verify_axioms(AxiomMode::Exhaustive).unwrap();
        assert!(r.nonnegative && r.monotone && !r.submodular);
        assert_eq!(
            r.witness,
            Some(Witness::NotSubmodular {
                a: Subset::EMPTY,
                b: s(&[1]),
                element: 0
            })
        );
        let sampled = f
            .verify_axioms(AxiomMode::Sampled {
                trials: 200,
                seed: 1,
            })
            .unwrap();
        assert!(!sampled.submodular);
    }

    #[test]
    fn non_monotone_table_is_caught() {
        let f = SubmodularFn::explicit_table(2, vec![0.0, 2.0, 1.0, 1.5]).unwrap();
        let r = f.verify_axioms(AxiomMode::Exhaustive).unwrap();
        assert!(!r.monotone);
        assert!(matches!(r.witness, Some(Witness::NotMonotone { .. })));
        let sampled = f
            .verify_axioms(AxiomMode::Sampled {
                trials: 500,
                seed: 9,
            })
            .unwrap();
        assert!(!sampled.monotone);
    }

    #[test]
    fn exhaustive_axioms_limit() {
        let f = SubmodularFn::cardinality(17).unwrap();
        assert!(matches!(
            f.verify_axioms(AxiomMode::Exhaustive),
            Err(Error::Size { .. })
        ));
        assert!(f
            .verify_axioms(AxiomMode::Sampled {
                trials: 100,
                seed: 0
            })
            .unwrap()
            .passed());
    }

    #[test]
    fn lovasz_examples() {
        let card = SubmodularFn::cardinality(4).unwrap();
        assert_eq!(card.lovasz(&[0.0, 1.0, 0.0, 1.0]).unwrap(), 2.0);
        assert_eq!(card.lovasz(&[0.0; 4]).unwrap(), 0.0);
        let card2 = SubmodularFn::cardinality(2).unwrap();
        assert!((card2.lovasz(&[0.3, 0.7]).unwrap() - 1.0).abs() < 1e-12);
        assert!(card.lovasz(&[0.0, 1.2, 0.0, 0.0]).is_err());
        assert!(card.lovasz(&[0.0, -0.1, 0.0, 0.0]).is_err());
        assert!(card.lovasz(&[0.0, 0.0]).is_err());
    }

    #[test]
    fn lovasz_mc_examples() {
        let card2 = SubmodularFn::cardinality(2).unwrap();
        let est = card2.lovasz_mc(&[0.3, 0.7], 100_000, 42).unwrap();
        assert!((est - 1.0).abs() <= 0.01, "{est}");
        let u = SubmodularFn::uniform_rank(3, 2).unwrap();
        assert_eq!(u.lovasz_mc(&[1.0, 0.0, 1.0], 1000, 1).unwrap(), 2.0);
        assert_eq!(u.lovasz_mc(&[0.0; 3], 1000, 1).unwrap(), 0.0);
        assert!(u.lovasz_mc(&[0.0; 3], 0, 1).is_err());
    }

    #[test]
    fn matroid_rank_examples() {
        assert!(SubmodularFn::cardinality(5)
            .unwrap()
            .is_matroid_rank()
            .unwrap());
        let thr = SubmodularFn::weighted_threshold(vec![1.0; 3], 2.5).unwrap();
        assert_eq!(thr.value(s(&[0, 1, 2])), 2.5);
        assert!(!thr.is_matroid_rank().unwrap());
        let part =
            SubmodularFn::partition_budget(5, &[vec![0, 1], vec![2, 3, 4]], &[1.0, 2.0]).unwrap();
        assert!(part.is_matroid_rank().unwrap());
        let budget = SubmodularFn::partition_budget(2, &[vec![0, 1]], &[2.0]).unwrap();
        assert!(budget.is_matroid_rank().unwrap());
        // Integral but with a jump of 2.
        let jump = SubmodularFn::explicit_table(1, vec![0.0, 2.0]).unwrap();
        assert!(!jump.is_matroid_rank().unwrap());
        // Closed forms are decided without enumeration.
        assert!(SubmodularFn::uniform_rank(40, 3)
            .unwrap()
            .is_matroid_rank()
            .unwrap());
        let unit = SubmodularFn::weighted_threshold(vec![1.0, 0.0, 1.0], 1.0).unwrap();
        assert!(unit.is_matroid_rank().unwrap());
    }

    #[test]
    fn span_examples() {
        let card = SubmodularFn::cardinality(3).unwrap();
        assert_eq!(card.span(s(&[0])), s(&[0]));
        assert_eq!(card.span(Subset::EMPTY), Subset::EMPTY);
        let u1 = SubmodularFn::uniform_rank(3, 1).unwrap();
        assert_eq!(u1.span(s(&[0])), s(&[0, 1, 2]));
    }
}
