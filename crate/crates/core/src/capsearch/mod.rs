//! Search for a principalizing prime and the cyclic field it defines.

mod hint;
mod period;
mod search;

pub use crate::kummerfrob::CandidateCertificate;
pub use hint::{power_adjustment_hint, PowerHint};
pub use period::{char_poly, gaussian_period_min_poly, CyclicFieldDesc};
pub use search::{coset_order, find_principalizing_prime, SearchOutcome, SearchStats};

#[cfg(test)]
mod tests;
