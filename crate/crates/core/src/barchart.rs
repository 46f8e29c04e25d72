//! Bar-chart representation of the Lovász extension.
//!
//! The chart partitions `[0, 1]` into intervals. On each interval the level set
//! `L(t) = {u : y_u ≥ t}` is constant and is stored as an ordered member list
//! (the ordering `σ_t`); the bar height is `f(L(t))`, so the chart's area is
//! `f̂(y)`. Waterfilling rounds mutate the chart through [`BarChart::raise`],
//! which appends newly raised vertices to the end of each affected ordering and
//! reports the new rectangular regions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::submodular::SubmodularFn;
use crate::subset::Subset;
use crate::TOL;

/// Levels closer than this to an existing boundary are snapped onto it.
pub const SNAP_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    /// The ordering `σ_t` shared by every `t` in the interval.
    pub members: Vec<usize>,
    /// `f` of the member set.
    pub height: f64,
}

impl Interval {
    pub fn member_set(&self) -> Subset {
        Subset::from_elems(self.members.iter().copied())
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Rectangle `[lo, hi] × [old_height, new_height]` added on top of one bar.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NewRegion {
    pub lo: f64,
    pub hi: f64,
    pub old_height: f64,
    pub new_height: f64,
    /// Vertices appended to the interval's ordering, in append order.
    pub appended: Vec<usize>,
    /// Prefix marginal of each appended vertex along the extended ordering.
    pub marginals: Vec<f64>,
}

impl NewRegion {
    pub fn delta(&self) -> f64 {
        self.new_height - self.old_height
    }

    pub fn area(&self) -> f64 {
        (self.hi - self.lo) * self.delta()
    }
}

/// Result of one [`BarChart::raise`].
#[derive(Clone, Debug, PartialEq)]
pub struct Raise {
    /// Level actually applied, after snapping to an existing boundary.
    pub level: f64,
    /// Vertices whose potential moved to `level`.
    pub raised: Subset,
    /// Nonempty new regions in increasing `t`.
    pub regions: Vec<NewRegion>,
}

impl Raise {
    pub fn added_area(&self) -> f64 {
        self.regions.iter().fold(0.0, |acc, r| acc + r.area())
    }
}

#[derive(Clone, Debug)]
pub struct BarChart<'f> {
    f: &'f SubmodularFn,
    intervals: Vec<Interval>,
    y: Vec<f64>,
}

impl<'f> BarChart<'f> {
    /// Chart of the all-zero potentials: one empty bar of height `f(∅)`.
    pub fn new(f: &'f SubmodularFn) -> Self {
        BarChart {
            f,
            intervals: vec![Interval {
                lo: 0.0,
                hi: 1.0,
                members: Vec::new(),
                height: f.value(Subset::EMPTY),
            }],
            y: vec![0.0; f.n()],
        }
    }

    /// Builds the chart of `y` directly. Orderings list members by descending
    /// potential, ties by id.
    pub fn from_potentials(f: &'f SubmodularFn, y: &[f64]) -> Result<Self> {
        // Validates length and range.
        f.lovasz(y)?;
        let mut cuts: Vec<f64> = y.iter().copied().filter(|&v| v > 0.0 && v < 1.0).collect();
        cuts.push(0.0);
        cuts.push(1.0);
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();

        let mut by_desc: Vec<usize> = (0..y.len()).collect();
        by_desc.sort_by(|&i, &j| y[j].total_cmp(&y[i]).then(i.cmp(&j)));

        let intervals = cuts
            .windows(2)
            .map(|w| {
                let (lo, hi) = (w[0], w[1]);
                let members: Vec<usize> = by_desc.iter().copied().filter(|&u| y[u] >= hi).collect();
                let height = f.value(Subset::from_elems(members.iter().copied()));
                Interval {
                    lo,
                    hi,
                    members,
                    height,
                }
            })
            .collect();
        Ok(BarChart {
            f,
            intervals,
            y: y.to_vec(),
        })
    }

    pub fn function(&self) -> &'f SubmodularFn {
        self.f
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    /// Current potentials `y`, kept in lockstep with the intervals.
    pub fn potentials(&self) -> &[f64] {
        &self.y
    }

    /// `Σ (hi − lo)·height`, which equals `f̂(y)`.
    pub fn area(&self) -> f64 {
        self.intervals
            .iter()
            .fold(0.0, |acc, iv| acc + iv.width() * iv.height)
    }

    /// JSON dump of `{lo, hi, members, height}` records.
    pub fn dump(&self) -> serde_json::Value {
        serde_json::to_value(&self.intervals).expect("intervals serialize")
    }

    /// Raises every `u ∈ x` to level `a`.
    ///
    /// The bar containing `a` in its interior is split at `a`; every bar with
    /// `hi ≤ a` gets `x` minus its members appended in id order. Returns the
    /// new regions, whose total area is `f̂(y') − f̂(y)`.
    pub fn raise(&mut self, x: Subset, a: f64) -> Result<Raise> {
        if !(0.0..=1.0).contains(&a) {
            return Err(Error::input(format!("raise level {a} is outside [0, 1]")));
        }
        if x.bound() > self.f.n() {
            return Err(Error::input(format!(
                "raised set {x} is not contained in the ground set of {}",
                self.f.n()
            )));
        }
        if let Some(u) = x.iter().find(|&u| self.y[u] >= a) {
            return Err(Error::precondition(format!(
                "vertex {u} has potential {} which is not below the level {a}",
                self.y[u]
            )));
        }

        let a = self.snap(a);
        let raised: Subset = x.iter().filter(|&u| self.y[u] < a).collect();
        if raised.is_empty() {
            return Ok(Raise {
                level: a,
                raised,
                regions: Vec::new(),
            });
        }

        if let Some(k) = self.intervals.iter().position(|iv| iv.lo < a && a < iv.hi) {
            let right = Interval {
                lo: a,
                ..self.intervals[k].clone()
            };
            self.intervals[k].hi = a;
            self.intervals.insert(k + 1, right);
        }

        let f = self.f;
        let mut regions = Vec::new();
        for iv in self.intervals.iter_mut().take_while(|iv| iv.hi <= a) {
            let mut level_set = iv.member_set();
            let appended = raised.difference(level_set).to_vec();
            if appended.is_empty() {
                continue;
            }
            let old_height = iv.height;
            let mut prev = old_height;
            let mut marginals = Vec::with_capacity(appended.len());
            for &u in &appended {
                level_set.insert(u);
                let next = f.value(level_set);
                marginals.push(next - prev);
                prev = next;
            }
            iv.members.extend_from_slice(&appended);
            iv.height = prev;
            if prev > old_height {
                regions.push(NewRegion {
                    lo: iv.lo,
                    hi: iv.hi,
                    old_height,
                    new_height: prev,
                    appended,
                    marginals,
                });
            }
        }
        for u in raised {
            self.y[u] = a;
        }
        Ok(Raise {
            level: a,
            raised,
            regions,
        })
    }

    fn snap(&self, a: f64) -> f64 {
        self.intervals
            .iter()
            .flat_map(|iv| [iv.lo, iv.hi])
            .find(|b| (a - b).abs() <= SNAP_TOL)
            .unwrap_or(a)
    }

    /// Checks every structural invariant of the chart against `f` and `y`.
    pub fn check_invariants(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Invariant(msg));
        let ivs = &self.intervals;
        if ivs.is_empty() || ivs[0].lo != 0.0 || ivs[ivs.len() - 1].hi != 1.0 {
            return bad("intervals do not span [0, 1]".into());
        }
        let mut prev: Option<(&Interval, Subset)> = None;
        for (k, iv) in ivs.iter().enumerate() {
            // Also rejects NaN bounds.
            if iv.lo.partial_cmp(&iv.hi) != Some(std::cmp::Ordering::Less) {
                return bad(format!(
                    "interval {k} is degenerate: [{}, {}]",
                    iv.lo, iv.hi
                ));
            }
            let set = iv.member_set();
            if set.len() != iv.members.len() {
                return bad(format!("interval {k} repeats a member"));
            }
            if (self.f.value(set) - iv.height).abs() > TOL {
                return bad(format!("interval {k} caches a stale height"));
            }
            for u in 0..self.y.len() {
                if set.contains(u) != (iv.hi <= self.y[u]) {
                    return bad(format!(
                        "vertex {u} (y = {}) has wrong membership in interval {k} [{}, {}]",
                        self.y[u], iv.lo, iv.hi
                    ));
                }
            }
            if let Some((p, pset)) = prev {
                if p.hi != iv.lo {
                    return bad(format!("gap between intervals {} and {k}", k - 1));
                }
                if !set.is_subset_of(pset) {
                    return bad(format!("member sets not nested at interval {k}"));
                }
                if iv.height > p.height + TOL {
                    return bad(format!("height increases at interval {k}"));
                }
            }
            prev = Some((iv, set));
        }
        Ok(())
    }
}

/// `Σ_regions Δh·∫_lo^hi (1 − x)/(x + α) dx`, the charge collected by the regions.
pub fn charge_integral(regions: &[NewRegion], alpha: f64) -> f64 {
    regions.iter().fold(0.0, |acc, r| {
        acc + r.delta() * ((1.0 + alpha) * ((r.hi + alpha) / (r.lo + alpha)).ln() - (r.hi - r.lo))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ALPHA;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12
    }

    #[test]
    fn zero_chart() {
        let f = SubmodularFn::cardinality(3).unwrap();
        let c = BarChart::from_potentials(&f, &[0.0; 3]).unwrap();
        assert_eq!(c.intervals().len(), 1);
        assert!(c.intervals()[0].members.is_empty());
        assert_eq!(c.area(), 0.0);
        assert_eq!(c.intervals(), BarChart::new(&f).intervals());
    }

    #[test]
    fn chart_of_two_levels() {
        let f = SubmodularFn::cardinality(2).unwrap();
        let c = BarChart::from_potentials(&f, &[0.3, 0.7]).unwrap();
        let got: Vec<_> = c
            .intervals()
            .iter()
            .map(|i| (i.lo, i.hi, i.height))
            .collect();
        assert_eq!(got, vec![(0.0, 0.3, 2.0), (0.3, 0.7, 1.0), (0.7, 1.0, 0.0)]);
        assert_eq!(c.intervals()[0].members, vec![1, 0]);
        assert!(close(c.area(), 1.0));
        c.check_invariants().unwrap();
    }

    #[test]
    fn indicator_chart_is_single_bar() {
        let f = SubmodularFn::uniform_rank(4, 2).unwrap();
        let c = BarChart::from_potentials(&f, &[1.0, 0.0, 1.0, 1.0]).unwrap();
        assert_eq!(c.intervals().len(), 1);
        assert_eq!(c.intervals()[0].height, 2.0);
        assert_eq!(c.intervals()[0].members, vec![0, 2, 3]);
    }

    #[test]
    fn raise_from_zero() {
        let f = SubmodularFn::cardinality(2).unwrap();
        let mut c = BarChart::new(&f);
        let r = c.raise(Subset::from_elems([0, 1]), 0.5).unwrap();
        assert_eq!(r.regions.len(), 1);
        let reg = &r.regions[0];
        assert_eq!(
            (reg.lo, reg.hi, reg.old_height, reg.new_height),
            (0.0, 0.5, 0.0, 2.0)
        );
        assert_eq!(reg.marginals, vec![1.0, 1.0]);
        assert!(close(r.added_area(), 1.0));
        assert!(close(c.area(), 1.0));
        assert_eq!(c.potentials(), &[0.5, 0.5]);
        c.check_invariants().unwrap();
    }

    #[test]
    fn raise_empty_set_is_noop() {
        let f = SubmodularFn::cardinality(2).unwrap();
        let mut c = BarChart::from_potentials(&f, &[0.3, 0.0]).unwrap();
        let before = c.intervals().to_vec();
        let r = c.raise(Subset::EMPTY, 0.6).unwrap();
        assert!(r.regions.is_empty());
        assert_eq!(c.intervals(), &before[..]);
    }

    #[test]
    fn raise_across_existing_bar() {
        let f = SubmodularFn::cardinality(2).unwrap();
        let mut c = BarChart::from_potentials(&f, &[0.3, 0.0]).unwrap();
        let r = c.raise(Subset::singleton(1), 0.6).unwrap();
        let got: Vec<_> = r
            .regions
            .iter()
            .map(|g| (g.lo, g.hi, g.old_height, g.new_height))
            .collect();
        assert_eq!(got, vec![(0.0, 0.3, 1.0, 2.0), (0.3, 0.6, 0.0, 1.0)]);
        assert!(close(r.added_area(), 0.6));
        let direct = BarChart::from_potentials(&f, &[0.3, 0.6]).unwrap();
        assert!(close(c.area(), direct.area()));
        c.check_invariants().unwrap();
    }

    #[test]
    fn raise_rejects_bad_input() {
        let f = SubmodularFn::cardinality(2).unwrap();
        let mut c = BarChart::from_potentials(&f, &[0.3, 0.0]).unwrap();
        assert!(matches!(
            c.raise(Subset::singleton(1), 1.5),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            c.raise(Subset::singleton(0), 0.3),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            c.raise(Subset::singleton(2), 0.5),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn raise_snaps_to_nearby_boundary() {
        let f = SubmodularFn::cardinality(2).unwrap();
        let mut c = BarChart::from_potentials(&f, &[0.3, 0.0]).unwrap();
        let r = c.raise(Subset::singleton(1), 0.3 + 1e-13).unwrap();
        assert_eq!(r.level, 0.3);
        assert_eq!(c.intervals().len(), 2);
        assert_eq!(c.potentials(), &[0.3, 0.3]);
        c.check_invariants().unwrap();
    }

    #[test]
    fn saturated_bars_extend_order_without_region() {
        let f = SubmodularFn::uniform_rank(2, 1).unwrap();
        let mut c = BarChart::new(&f);
        c.raise(Subset::singleton(0), 0.4).unwrap();
        let r = c.raise(Subset::singleton(1), 0.8).unwrap();
        // On [0, 0.4] the rank is already 1; only [0.4, 0.8] grows.
        assert_eq!(r.regions.len(), 1);
        assert_eq!((r.regions[0].lo, r.regions[0].hi), (0.4, 0.8));
        assert_eq!(c.intervals()[0].members, vec![0, 1]);
        c.check_invariants().unwrap();
    }

    #[test]
    fn charge_integral_examples() {
        let full = NewRegion {
            lo: 0.0,
            hi: 1.0,
            old_height: 0.0,
            new_height: 1.0,
            appended: vec![0],
            marginals: vec![1.0],
        };
        assert!((charge_integral(&[full], ALPHA) - ALPHA).abs() <= 1e-12);
        assert_eq!(charge_integral(&[], ALPHA), 0.0);
    }

    #[test]
    fn dump_has_expected_fields() {
        let f = SubmodularFn::cardinality(2).unwrap();
        let c = BarChart::from_potentials(&f, &[0.3, 0.7]).unwrap();
        let d = c.dump();
        assert_eq!(d[0]["members"], serde_json::json!([1, 0]));
        assert_eq!(d[1]["height"], serde_json::json!(1.0));
        assert_eq!(d.as_array().unwrap().len(), 3);
    }
}
