//! Threshold rounding of a fractional cover: draw `γ ~ U[0,1]`, keep `u` when
//! `y_u ≥ γ` and `v` when `z_v ≥ 1 − γ`.

use crate::error::{Error, Result};
use crate::instances::Instance;
use crate::rng;
use crate::subset::Subset;
use crate::TOL;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub left: Subset,
    /// Arrival indices.
    pub right: Vec<usize>,
}

impl Cover {
    pub fn covers(&self, instance: &Instance) -> bool {
        let mut in_right = vec![false; instance.n_online()];
        for &i in &self.right {
            in_right[i] = true;
        }
        instance
            .edges()
            .all(|(u, i)| self.left.contains(u) || in_right[i])
    }
}

/// Rounds `(y, z)` at threshold `gamma`. Both comparisons are inclusive, so a
/// feasible cover rounds to a valid integral cover for every `γ ∈ [0, 1]`.
pub fn round_cover(instance: &Instance, y: &[f64], z: &[f64], gamma: f64) -> Result<Cover> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::input(format!("gamma {gamma} is outside [0, 1]")));
    }
    if y.len() != instance.n_offline || z.len() != instance.n_online() {
        return Err(Error::input("potential vectors do not match the instance"));
    }
    if let Some((u, i)) = instance.edges().find(|&(u, i)| y[u] + z[i] < 1.0 - TOL) {
        return Err(Error::precondition(format!(
            "edge ({u}, {}) is not covered: y + z = {}",
            instance.arrivals[i].id,
            y[u] + z[i]
        )));
    }
    let left = (0..y.len()).filter(|&u| y[u] >= gamma).collect();
    let right = (0..z.len()).filter(|&i| z[i] >= 1.0 - gamma).collect();
    Ok(Cover { left, right })
}

/// [`round_cover`] with `γ` drawn from a seeded stream.
pub fn round_cover_seeded(instance: &Instance, y: &[f64], z: &[f64], seed: u64) -> Result<Cover> {
    let gamma = rng::unit_f64(&mut rng::seeded(seed));
    round_cover(instance, y, z, gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::Arrival;
    use crate::submodular::FnSpec;

    fn edge() -> Instance {
        Instance::new(
            "e",
            1,
            FnSpec::Cardinality,
            vec![Arrival {
                id: 0,
                nbrs: vec![0],
            }],
        )
        .unwrap()
    }

    #[test]
    fn thresholds() {
        let i = edge();
        let c = round_cover(&i, &[1.0], &[0.0], 0.5).unwrap();
        assert_eq!(c.left, Subset::singleton(0));
        assert!(c.right.is_empty());
        let c = round_cover(&i, &[0.5], &[0.5], 0.5).unwrap();
        assert_eq!(c.left, Subset::singleton(0));
        assert_eq!(c.right, vec![0]);
        assert!(c.covers(&i));
    }

    #[test]
    fn rejects_infeasible() {
        let i = edge();
        assert!(matches!(
            round_cover(&i, &[0.3], &[0.3], 0.5),
            Err(Error::Precondition(_))
        ));
        assert!(round_cover(&i, &[1.0], &[0.0], 1.5).is_err());
    }

    #[test]
    fn seeded_is_deterministic() {
        let i = edge();
        let a = round_cover_seeded(&i, &[0.4], &[0.6], 3).unwrap();
        assert_eq!(a, round_cover_seeded(&i, &[0.4], &[0.6], 3).unwrap());
        assert!(a.covers(&i));
    }
}
