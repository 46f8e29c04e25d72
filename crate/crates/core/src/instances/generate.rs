//! Instance generators. Every generator is a pure function of its arguments.

use rand::RngCore;

use crate::error::{Error, Result};
use crate::rng::{self, SplitMix64};
use crate::submodular::{AxiomMode, FnSpec, SubmodularFn};
use crate::subset::Subset;

use super::{Arrival, Instance};

fn below(r: &mut SplitMix64, k: usize) -> usize {
    ((rng::unit_f64(r) * k as f64) as usize).min(k.saturating_sub(1))
}

fn uniform(r: &mut SplitMix64, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng::unit_f64(r)
}

/// `v_j ~ {u_j, …, u_{n−1}}` with `f = |S|`; the offline optimum is `n`.
pub fn upper_triangular(n: usize) -> Instance {
    let arrivals = (0..n)
        .map(|j| Arrival {
            id: j,
            nbrs: (j..n).collect(),
        })
        .collect();
    Instance {
        name: format!("upper_triangular_{n}"),
        n_offline: n,
        f: FnSpec::Cardinality,
        arrivals,
    }
}

/// `n` offline and `m` online vertices, each edge present independently with
/// probability `p`. Online vertex `j` draws from its own split stream.
pub fn random(n: usize, m: usize, p: f64, f: FnSpec, seed: u64) -> Result<Instance> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::input(format!(
            "edge probability {p} is outside [0, 1]"
        )));
    }
    let mut master = rng::seeded(seed);
    let arrivals = (0..m)
        .map(|j| {
            let mut r = rng::split(&mut master);
            let nbrs = (0..n).filter(|_| rng::unit_f64(&mut r) < p).collect();
            Arrival { id: j, nbrs }
        })
        .collect();
    Instance::new(format!("random_n{n}_m{m}_p{p}_s{seed}"), n, f, arrivals)
}

/// Random weighted-coverage function plus a concave-of-modular term,
/// tabulated as an explicit table. Always monotone submodular.
pub fn random_coverage_table(n: usize, seed: u64) -> FnSpec {
    let mut r = rng::seeded(seed);
    let items = n + 3;
    let item_weight: Vec<f64> = (0..items).map(|_| uniform(&mut r, 0.2, 1.2)).collect();
    let covers: Vec<Vec<usize>> = (0..n)
        .map(|_| {
            (0..items)
                .filter(|_| rng::unit_f64(&mut r) < 0.35)
                .collect()
        })
        .collect();
    let mass: Vec<f64> = (0..n).map(|_| rng::unit_f64(&mut r)).collect();
    let values = (0..1u64 << n)
        .map(|m| {
            let s = Subset(m);
            let mut covered = vec![false; items];
            for u in s {
                for &i in &covers[u] {
                    covered[i] = true;
                }
            }
            // Folding from +0.0 keeps f(∅) = +0.0; an empty `sum` gives -0.0.
            let cov = (0..items)
                .filter(|&i| covered[i])
                .fold(0.0, |acc, i| acc + item_weight[i]);
            let modular = s.iter().fold(0.0, |acc, u| acc + mass[u]);
            cov + 0.5 * modular.sqrt()
        })
        .collect();
    FnSpec::ExplicitTable { values }
}

/// Rank function of a random graphic matroid: element `u` is an edge between
/// two distinct vertices of a small multigraph, so there are no loops.
pub fn random_graphic_rank(n: usize, seed: u64) -> FnSpec {
    let mut r = rng::seeded(seed);
    let k = n / 2 + 2;
    let ends: Vec<(usize, usize)> = (0..n)
        .map(|_| {
            let a = below(&mut r, k);
            let b = (a + 1 + below(&mut r, k - 1)) % k;
            (a, b)
        })
        .collect();
    let values = (0..1u64 << n)
        .map(|m| {
            let mut parent: Vec<usize> = (0..k).collect();
            fn find(p: &mut [usize], x: usize) -> usize {
                let mut x = x;
                while p[x] != x {
                    p[x] = p[p[x]];
                    x = p[x];
                }
                x
            }
            let mut rank = 0;
            for u in Subset(m) {
                let (a, b) = (find(&mut parent, ends[u].0), find(&mut parent, ends[u].1));
                if a != b {
                    parent[a] = b;
                    rank += 1;
                }
            }
            rank as f64
        })
        .collect();
    FnSpec::ExplicitTable { values }
}

fn random_partition(r: &mut SplitMix64, n: usize, blocks: usize) -> Vec<Vec<usize>> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, below(r, i + 1));
    }
    let mut out = vec![Vec::new(); blocks];
    for (k, &u) in perm.iter().enumerate() {
        out[k % blocks].push(u);
    }
    for b in &mut out {
        b.sort();
    }
    out
}

/// A loop-free matroid rank function on `n ≥ 1` elements.
pub fn random_matroid_spec(n: usize, seed: u64) -> FnSpec {
    let mut r = rng::seeded(seed);
    match below(&mut r, 4) {
        0 => FnSpec::Cardinality,
        1 => FnSpec::UniformRank {
            k: 1 + below(&mut r, n) as u32,
        },
        2 => {
            let count = 1 + below(&mut r, n.min(3));
            let blocks = random_partition(&mut r, n, count);
            let caps = blocks
                .iter()
                .map(|b| (1 + below(&mut r, b.len())) as f64)
                .collect();
            FnSpec::PartitionBudget { blocks, caps }
        }
        _ => random_graphic_rank(n, r.next_u64()),
    }
}

fn suite_graph(r: &mut SplitMix64, i: usize, n: usize, m: usize, f: FnSpec, tag: &str) -> Instance {
    let mut inst = if i % 7 == 6 {
        let mut tri = upper_triangular(n);
        tri.f = f;
        tri
    } else {
        let p = uniform(r, 0.15, 0.75);
        random(n, m, p, f, r.next_u64()).expect("p lies in [0, 1]")
    };
    inst.name = format!("suite{i:03}_{tag}_n{}_m{}", inst.n_offline, inst.n_online());
    inst
}

/// Mixed benchmark suite with `n, m ≤ 12` cycling through cardinality,
/// uniform rank, real-capped partition budgets and random coverage tables.
pub fn vc_suite(count: usize, seed: u64) -> Vec<Instance> {
    let mut master = rng::seeded(seed);
    (0..count)
        .map(|i| {
            let mut r = rng::split(&mut master);
            let n = 1 + below(&mut r, 12);
            let m = 1 + below(&mut r, 12);
            let (f, tag) = match i % 4 {
                0 => (FnSpec::Cardinality, "card"),
                1 => (
                    FnSpec::UniformRank {
                        k: 1 + below(&mut r, n) as u32,
                    },
                    "unif",
                ),
                2 => {
                    let count = 1 + below(&mut r, n.min(4));
                    let blocks = random_partition(&mut r, n, count);
                    let caps = blocks
                        .iter()
                        .map(|_| 0.5 * (1 + below(&mut r, 6)) as f64)
                        .collect();
                    (FnSpec::PartitionBudget { blocks, caps }, "part")
                }
                _ => {
                    let spec = random_coverage_table(n, r.next_u64());
                    let f = SubmodularFn::from_spec(n, &spec).expect("table has 2^n entries");
                    debug_assert!(f.verify_axioms(AxiomMode::Exhaustive).unwrap().passed());
                    (spec, "table")
                }
            };
            suite_graph(&mut r, i, n, m, f, tag)
        })
        .collect()
}

/// Benchmark suite of loop-free matroid rank instances with `n, m ≤ 8`.
pub fn matroid_suite(count: usize, seed: u64) -> Vec<Instance> {
    let mut master = rng::seeded(seed);
    (0..count)
        .map(|i| {
            let mut r = rng::split(&mut master);
            let n = 1 + below(&mut r, 8);
            let m = 1 + below(&mut r, 8);
            let f = random_matroid_spec(n, r.next_u64());
            let tag = f.family_name();
            suite_graph(&mut r, i, n, m, f, tag)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangular_shape() {
        let one = upper_triangular(1);
        assert_eq!(one.arrivals.len(), 1);
        assert_eq!(one.arrivals[0].nbrs, vec![0]);
        let two = upper_triangular(2);
        assert_eq!(two.arrivals[0].nbrs, vec![0, 1]);
        assert_eq!(two.arrivals[1].nbrs, vec![1]);
        two.validate().unwrap();
    }

    #[test]
    fn random_extremes_and_determinism() {
        let none = random(5, 4, 0.0, FnSpec::Cardinality, 1).unwrap();
        assert_eq!(none.n_edges(), 0);
        let all = random(5, 4, 1.0, FnSpec::Cardinality, 1).unwrap();
        assert_eq!(all.n_edges(), 20);
        let a = random(6, 7, 0.4, FnSpec::Cardinality, 99).unwrap();
        let b = random(6, 7, 0.4, FnSpec::Cardinality, 99).unwrap();
        assert_eq!(a, b);
        assert!(random(3, 3, 1.5, FnSpec::Cardinality, 0).is_err());
        assert!(random(3, 3, -0.1, FnSpec::Cardinality, 0).is_err());
    }

    #[test]
    fn tables_are_submodular() {
        for seed in 0..5 {
            let n = 6;
            let cov = SubmodularFn::from_spec(n, &random_coverage_table(n, seed)).unwrap();
            assert!(cov.verify_axioms(AxiomMode::Exhaustive).unwrap().passed());
            let gr = SubmodularFn::from_spec(n, &random_graphic_rank(n, seed)).unwrap();
            assert!(gr.is_matroid_rank().unwrap());
            for u in 0..n {
                assert_eq!(gr.value(Subset::singleton(u)), 1.0);
            }
        }
    }

    #[test]
    fn matroid_specs_are_loop_free_ranks() {
        for seed in 0..40 {
            let n = 1 + (seed as usize % 8);
            let f = SubmodularFn::from_spec(n, &random_matroid_spec(n, seed)).unwrap();
            assert!(f.is_matroid_rank().unwrap(), "seed {seed}");
            assert!(f.span(Subset::EMPTY).is_empty(), "seed {seed}");
        }
    }

    #[test]
    fn suites_are_valid_and_reproducible() {
        let s = vc_suite(24, 3);
        assert_eq!(s, vc_suite(24, 3));
        for inst in &s {
            inst.validate().unwrap();
            assert!(inst.n_offline <= 12 && inst.n_online() <= 12);
            let f = inst.function().unwrap();
            assert!(
                f.verify_axioms(AxiomMode::Exhaustive).unwrap().passed(),
                "{}",
                inst.name
            );
        }
        for inst in matroid_suite(16, 3) {
            assert!(inst.n_offline <= 8 && inst.n_online() <= 8);
            assert!(
                inst.function().unwrap().is_matroid_rank().unwrap(),
                "{}",
                inst.name
            );
        }
    }
}
