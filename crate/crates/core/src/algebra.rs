//! Finite-dimensional local algebras as truncated polynomial quotients.
//!
//! An algebra is `R[x1..xn]/I` where `I` is a monomial ideal containing every
//! monomial of total degree `k + 1`. Every element splits as
//! `constant * 1 + nilpotent part`, the constant-term projection is the unique
//! algebra epimorphism onto the reals, and every zero-constant element is
//! nilpotent with exponent at most `k + 1`.

mod element;
mod monomial;
mod morphism;
mod spec;

pub use element::AlgebraElement;
pub use monomial::Monomial;
pub use morphism::AlgebraMorphism;
pub use spec::AlgebraSpec;
