//! Exact computer algebra for small quantum p-groups.
//!
//! Everything here works over an explicit finite field GF(p^m), which stands
//! in for the algebraically closed base field at desk scale: every subgroup
//! of roots of unity and every p-th root that the classification needs is
//! present once m is divisible by a small, known set of orders, and the
//! field can be escalated (m doubled) when a particular root extraction
//! falls outside it.
//!
//! Module layout:
//! - [`gf`]: arithmetic in GF(p^m), discrete logs, root extraction, subfield
//!   embeddings.
//! - [`linalg`]: dense exact linear algebra over GF(p^m) and over F_p.
//! - [`rla`]: restricted Lie algebras, algebraic representations, abelian
//!   types, semiproducts.
//! - [`uenv`]: restricted enveloping algebras and their deformations as
//!   normal-form rewriting algebras; coproducts, the omega map.
//! - [`cobar`]: the cobar complex of u(h) in low degrees, cohomology
//!   coordinates, and the operator Phi_z.
//! - [`hopf`]: structure-constant Hopf algebras, axiom checking, predicates.
//! - [`pd`]: primitive-deformation data, automorphism actions, orbit
//!   decisions.
//! - [`catalog`]: the rank-2 abelian type catalog.
//! - [`classify`]: table verification harness and the appendix constructors.
//! - [`report`]: machine-readable verification reports.
//! - [`cli`]: command-line front end.

pub mod gf;
pub mod linalg;
pub mod rla;
pub mod uenv;
pub mod cobar;
pub mod hopf;
pub mod pd;
pub mod orbit;
pub mod catalog;
pub mod classify;
// pub mod report;
// pub mod cli;

pub use gf::{Field, FieldParams, Scalar};
