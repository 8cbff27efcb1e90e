//! Exact lattice geometry for affine toric varieties.
//!
//! Given a strongly convex rational polyhedral cone `σ ⊂ N_R`, this crate
//! computes, in exact arbitrary-precision arithmetic:
//!
//! * the Hilbert basis of `σ ∩ N` and the Newton polyhedron
//!   `Γ(σ) = conv(σ ∩ N ∖ {0})` with its compact boundary `∂_cΓ(σ)`;
//! * `Min(σ)`, the minimal singular lattice points under the order
//!   `v ≤_σ w ⇔ w ∈ v + σ`, which parametrize the Nash (= essential)
//!   valuations over `X(σ)`;
//! * `Ter(σ) = ∂_cΓ(σ) ∩ σ_sing ∩ N`, the terminal valuations;
//! * a simplicial fan `Δ` over `σ` obtained by fully triangulating the
//!   compact faces of `Γ(σ)`, together with wall-by-wall certificates that
//!   the canonical class of `X(Δ)` is relatively nef, i.e. that `X(Δ)` is a
//!   minimal model over `X(σ)`.
//!
//! Brute-force oracles (`oracles`) recompute the same sets from the
//! definitions so that every main-path algorithm can be cross-checked.
//!
//! Enumeration loops run in parallel by default; disable the `parallel`
//! feature (or call [`set_sequential_scans`]) for a fully sequential build.

pub mod error;
pub mod linalg;

mod exec;
pub use exec::set_sequential_scans;

pub(crate) mod enumerate;

pub mod polyhedra;

pub mod lattice_points;
pub mod toric;
pub mod valuations;

pub mod minimal_model;
pub mod oracles;

pub mod catalog;
pub mod report;
pub mod sampling;

pub use error::{Error, Result};
pub use linalg::{DualVector, IntMatrix, LatticeVector};
