//! Brute-force offline optimum over the offline side.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instances::Instance;
use crate::subset::Subset;

/// Largest offline side [`offline_opt`] will enumerate.
pub const OPT_LIMIT: usize = 24;

/// Minimum vertex cover `C* = argmin_s ∪ cover_r` of cost `f(S) + |cover_r|`.
///
/// The value is also the maximum fractional matroid matching. That equality is
/// an assumption (strong duality for the intersection polytope plus lossless
/// threshold rounding); the acceptance suite checks it against algorithm
/// outputs rather than this module proving it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptCertificate {
    pub value: f64,
    pub argmin_s: Subset,
    /// Online ids `v` with `N(v) ⊄ argmin_s`, ascending.
    pub cover_r: Vec<usize>,
    /// [`Instance::digest`] of the instance this certificate is for.
    pub digest: String,
}

impl OptCertificate {
    pub fn covers_online(&self, id: usize) -> bool {
        self.cover_r.binary_search(&id).is_ok()
    }

    pub fn check_instance(&self, instance: &Instance) -> Result<()> {
        if self.digest != instance.digest() {
            return Err(Error::input(format!(
                "certificate does not belong to instance {:?}",
                instance.name
            )));
        }
        Ok(())
    }
}

/// `min_S f(S) + #{v : N(v) ⊄ S}` by enumerating every `S ⊆ L`.
///
/// Ties go to the smallest bitmask, so the certificate is deterministic and
/// independent of arrival order.
pub fn offline_opt(instance: &Instance) -> Result<OptCertificate> {
    let n = instance.n_offline;
    if n > OPT_LIMIT {
        return Err(Error::Size {
            what: "offline_opt",
            size: n,
            limit: OPT_LIMIT,
        });
    }
    let f = instance.function()?;
    let nbrs: Vec<u64> = (0..instance.n_online())
        .map(|i| instance.nbr_set(i).bits())
        .collect();

    let mut best = f64::INFINITY;
    let mut best_mask = 0u64;
    for mask in 0..(1u64 << n) {
        let fs = f.value(Subset(mask));
        if fs >= best - 1e-12 {
            continue;
        }
        let uncovered = nbrs.iter().filter(|&&b| b & !mask != 0).count();
        let value = fs + uncovered as f64;
        if value < best - 1e-12 {
            best = value;
            best_mask = mask;
        }
    }

    let mut cover_r: Vec<usize> = instance
        .arrivals
        .iter()
        .zip(&nbrs)
        .filter(|(_, &b)| b & !best_mask != 0)
        .map(|(a, _)| a.id)
        .collect();
    cover_r.sort_unstable();
    Ok(OptCertificate {
        value: best,
        argmin_s: Subset(best_mask),
        cover_r,
        digest: instance.digest(),
    })
}
