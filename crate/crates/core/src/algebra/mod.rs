//! Exact arithmetic: rationals, quadratic extensions, polynomials in one
//! and two variables, rational functions and the quotient ring of `y² = g`.

pub mod bipoly;
pub mod intpoly;
pub mod json;
pub mod quadext;
pub mod quotient;
pub mod ratfunc;
pub mod rational;
pub mod unipoly;

pub use bipoly::{BiPoly, ShiftMode, Var};
pub use intpoly::IntPoly;
pub use quadext::QuadExt;
pub use quotient::QuotientElem;
pub use ratfunc::RatFunc;
pub use rational::Rational;
pub use unipoly::UniPoly;
