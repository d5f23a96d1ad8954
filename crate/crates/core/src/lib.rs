//! Primary decomposition of submodules of Z[x_1..x_n]^m.
//!
//! The pipeline: strong Groebner bases over the integers drive submodule
//! arithmetic (quotient, saturation, intersection, annihilator); minimal
//! associated primes of the annihilator ideal are computed by splitting
//! through F_p and Q views; separators cut the module into pseudo-primary
//! pieces, and primary components are extracted over localizations chosen by
//! maximal independent sets.

pub mod coeff;
pub mod config;
pub mod error;
pub mod factor;
pub mod groebner;
pub mod module;
pub mod ops;
pub mod poly;
pub mod primes;

pub use coeff::{extended_gcd, factor_integer, CoeffRing, IntRing, IntegerFactorization, PrimeField, RatField};
pub use error::{Error, Result};
