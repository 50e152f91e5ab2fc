//! Arithmetic in quadratic and biquadratic fields shared by the quadratic
//! and composite layers: integral bases, ideals in Hermite form, residue
//! fields, and lattice-based principal generator search.

pub mod field;
pub mod hnf;
pub mod ideal;
pub mod lattice;
pub mod principal;
pub mod ray;
pub mod residue;

pub use field::{Elem, NumberField};
pub use principal::{find_generator, unit_equivalent, unit_inverse, unit_pow, UnitGroup};
pub use residue::{ResidueField, UnitsMod};
pub use ideal::{factor_ideal, primes_above, Ideal, PrimeIdeal};
