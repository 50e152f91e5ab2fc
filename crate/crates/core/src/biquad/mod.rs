//! Real biquadratic fields `Q(sqrt d, sqrt p)` and capitulation checks.

mod field;
mod units;
mod verify;

pub use field::{make_biquadratic, BiquadField, BqFactor, DEFAULT_BUDGET};
pub use units::{BqUnitGroup, UnitSummary};
pub use verify::{capitulates, recheck, VerificationReport, VerifyStatus};

#[cfg(test)]
mod tests;
