//! Exact arithmetic over F_{2^k}: field elements, polynomials, rational
//! functions on P¹, their divisors, and roots in splitting fields.

pub mod divisor;
pub mod field;
pub mod gf2;
pub mod intpoly;
pub mod poly;
pub mod ratfun;

pub use divisor::{roots_in_splitting_field, Divisor, GeometricRoot, Place, PlaceP1};
pub use intpoly::IntPoly;
pub use field::{field_arith, Embedding, Fe, FeJson, Field, FieldOp};
pub use poly::Poly;
pub use ratfun::RationalFunction;
