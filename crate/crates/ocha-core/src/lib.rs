//! Exact-arithmetic engine for open-closed homotopy algebras (OCHAs).
//!
//! An OCHA, introduced by Kajiura and Stasheff, couples an L-infinity algebra
//! on a "closed-string" space `B` with a family of mixed operations
//! `q_{l,k}: B^{∧l} ⊗ A^{⊗k} → A` on an "open-string" space `A`.  This crate
//! provides the cochain calculus around such structures over the exact
//! rationals: Koszul signs, graded symmetric powers, open-closed brace
//! operations, the closed-string action, validators for A-infinity /
//! L-infinity / OCHA axioms, the open-closed Hochschild differential, and
//! cohomology of weight-truncated quotient complexes with the induced
//! Gerstenhaber operations.
//!
//! All arithmetic is rational and exact; the identities checked here are
//! sign-critical and a single rounding error would make the checks useless.
//!
//! # Sign conventions
//!
//! Every degree that enters a sign is a *shifted* degree: the raw degree of a
//! basis element minus the shift constant of its space.  A multilinear map
//! `φ: B^{∧l} ⊗ A^{⊗k} → A'` has shifted degree
//! `|φ| = deg(φ) + l·j_B + k·j_A − j_{A'}`, so that
//! `|φ(b_1,…,b_l; a_1,…,a_k)| = |φ| + Σ|b_i| + Σ|a_i|`.
//!
//! The Koszul sign of a permutation σ acting on elements `y_1, …, y_n` is
//! `(−1)^{ε(σ)}` with `ε(σ) = Σ_{i<j, σ(i)>σ(j)} |y_i|·|y_j|`, and
//! `y_{σ(1)} ∧ ⋯ ∧ y_{σ(n)}` differs from `y_1 ∧ ⋯ ∧ y_n` by exactly that
//! sign.  Other conventions exist in the literature; this crate fixes this
//! one and exposes it here rather than parameterizing over conventions.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI live in
//! the companion `ocha-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod brace;
pub mod cochain;
pub mod cohomology;
pub mod combinatorics;
pub mod error;
pub mod graded;
pub mod identities;
pub mod linalg;
pub mod scalar;
pub mod structures;

pub use brace::{
    brace, gerstenhaber_product, hat_action, sym_brace, sym_compose, ArityCap,
};
pub use cochain::{normalize_wedge, Normalized, OCCochain, OCKey, SymCochain, WedgeWord};
pub use error::CoreError;
pub use graded::{shifted_map_degree, GradedSpace, MapKind, Space, Vector};
pub use scalar::{Scalar, Sign};
pub use structures::OchaStructure;
