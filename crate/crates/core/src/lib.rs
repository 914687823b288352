//! Finite-dimensional local algebras and jets.
//!
//! The crate implements three layers:
//!
//! * [`algebra`] — truncated polynomial quotient rings `R[x1..xn]/I` with a
//!   monomial ideal `I` containing all monomials of degree `k + 1`, their
//!   elements and their morphisms;
//! * [`expr`] and [`jet`] — closed-form smooth expressions with Taylor
//!   extraction, and order-`k` jets of smooth maps as truncated Taylor data;
//! * [`alpha`] and [`bundle`] — jets represented as algebra morphisms
//!   (evaluation, pushforward along smooth maps, the jet/morphism bijection)
//!   together with fibrewise automorphism families and chart transitions of
//!   the resulting double bundle.
//!
//! The [`suite`] module packages the crate's property checks into seeded,
//! reproducible runs; [`sample`] provides the deterministic generators they
//! draw from.

pub mod algebra;
pub mod alpha;
pub mod bundle;
pub mod error;
pub mod expr;
pub mod jet;
mod numeric;
pub mod sample;
pub mod suite;
pub mod tol;

pub use algebra::{AlgebraElement, AlgebraMorphism, AlgebraSpec, Monomial};
pub use alpha::AlphaJet;
pub use bundle::{AutomorphismFamily, ChartTransition};
pub use error::{Error, Result};
pub use expr::{SmoothExpr, SmoothMap};
pub use jet::MapJet;
