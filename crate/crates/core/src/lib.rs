//! Online algorithms for matroid online bipartite matching and vertex cover.
//!
//! The offline side `L` carries a monotone submodular budget `f`; online
//! vertices arrive one at a time with their neighbor lists. The crate provides
//!
//! * waterfilling over the Lovász extension of `f` ([`algorithms::run_mobvc`],
//!   with the modular special case [`algorithms::run_obvc`]),
//! * its primal-dual variant that also emits a fractional matroid matching
//!   ([`algorithms::run_mobm_pd`]),
//! * Greedy under random arrivals for matroid rank `f`
//!   ([`algorithms::run_random_arrival_greedy`]),
//!
//! together with brute-force offline optima and checkers for every guarantee
//! the algorithms are supposed to meet ([`verify`]).

pub mod algorithms;
pub mod barchart;
pub mod error;
pub mod instances;
pub mod rng;
pub mod submodular;
pub mod subset;
pub mod verify;

pub use error::{Error, Result};
pub use subset::Subset;

/// Absolute tolerance for floating-point comparisons.
pub const TOL: f64 = 1e-9;

/// `α = 1/(e − 1)`, so that `1 + α = 1/(1 − 1/e)`.
pub const ALPHA: f64 = 1.0 / (std::f64::consts::E - 1.0);

/// The vertex-cover competitive ratio `1 + α`.
pub const ONE_PLUS_ALPHA: f64 = 1.0 + ALPHA;

/// The matching competitive ratio `1 − 1/e`.
pub const ONE_MINUS_INV_E: f64 = 1.0 - 1.0 / std::f64::consts::E;

/// Charging density primitive `F(x) = ∫₀ˣ (1 − t)/(t + α) dt = (1+α)·ln((x+α)/α) − x`.
pub fn charge_primitive(x: f64) -> f64 {
    ONE_PLUS_ALPHA * ((x + ALPHA) / ALPHA).ln() - x
}

/// Exact `∫_lo^hi (1 − t)/(t + α) dt`.
pub fn charge_density_integral(lo: f64, hi: f64) -> f64 {
    ONE_PLUS_ALPHA * ((hi + ALPHA) / (lo + ALPHA)).ln() - (hi - lo)
}

/// Exact `∫_lo^hi 1/(t + α) dt`.
pub fn inverse_density_integral(lo: f64, hi: f64) -> f64 {
    ((hi + ALPHA) / (lo + ALPHA)).ln()
}

/// `g(t) = e^{t−1}`, the dual schedule of random-arrival Greedy.
pub fn greedy_schedule(t: f64) -> f64 {
    (t - 1.0).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_identities() {
        assert!((ONE_PLUS_ALPHA * ONE_MINUS_INV_E - 1.0).abs() <= 1e-12);
        assert!((ALPHA - 0.581_976_706_869_326_4).abs() < 1e-15);
        assert!((charge_density_integral(0.0, 1.0) - ALPHA).abs() <= 1e-12);
        assert!((inverse_density_integral(0.0, 1.0) - 1.0).abs() <= 1e-12);
        assert!((charge_primitive(1.0) - ALPHA).abs() <= 1e-12);
        assert_eq!(charge_primitive(0.0), 0.0);
        assert!((greedy_schedule(1.0) - 1.0).abs() < 1e-15);
    }
}
