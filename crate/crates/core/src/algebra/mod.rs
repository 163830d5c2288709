//! Exact graded-commutative algebra over `Z` and prime fields.

mod coeff;
pub mod linalg;
mod module;
mod ops;
mod ring;
pub mod snf;

pub use coeff::{is_prime, CoefficientRing, Prime};
pub use module::{canonical_divisors, iso_class, FinModule};
pub use ops::{direct_sum, reduce_coefficients, tensor_product};
pub use ring::{AxiomViolation, Combination, Generator, GradedRing};
pub use snf::{smith_normal_form, IntMatrix, SmithForm};
