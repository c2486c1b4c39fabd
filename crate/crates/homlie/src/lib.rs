//! Computing with regular Hom-Lie algebras and matrix Hom-Lie groups.
//!
//! A Hom-Lie algebra twists the Jacobi identity by a linear map φ; a Hom-group
//! twists associativity and the unit by a bijection Φ. This crate implements
//! the finite-dimensional, structure-constant side of that theory:
//!
//! * [`linalg`] — exact rational and `f64` scalars, matrices, rank/nullspace/
//!   inverse, and the scaled-Taylor matrix exponential;
//! * [`algebra`] — Hom-Lie algebras with axiom verification, the induced Lie
//!   bracket of a regular algebra, twisting a Lie algebra along an
//!   automorphism, centers and morphism checks;
//! * [`matgroup`] — gl(V) with the β-twisted bracket, the matrix Hom-group
//!   GL(V) with product A⋄B = βAβ⁻¹Bβ⁻¹, twisted exponentials, and
//!   finite-difference verification of the commutator and adjoint formulas;
//! * [`cohomology`] — representations, coboundary operators and cohomology
//!   dimensions over exact rationals;
//! * [`derivation`] — derivation spaces, automorphism checks, and integration
//!   of derivations to automorphisms;
//! * [`homgroup`] — finite Hom-groups given by multiplication tables, with
//!   exhaustive axiom sweeps and the twisted adjoint action;
//! * [`json`] — the on-disk JSON forms used by the CLI and fixtures.
//!
//! Exact mode is used wherever structure constants are manipulated, so axiom
//! verdicts there are equalities, not tolerance checks. Float work
//! (exponentials, finite differences) pins its tolerances as constants next
//! to the code that uses them.

pub mod algebra;
pub mod cohomology;
pub mod derivation;
pub mod error;
pub mod homgroup;
pub mod json;
pub mod linalg;
pub mod matgroup;

pub use error::Error;

/// Upper bound on worker threads for the exhaustive sweeps, from the
/// `HOMLIE_THREADS` environment variable; defaults to the machine
/// parallelism, capped at 8.
pub fn thread_cap() -> usize {
    std::env::var("HOMLIE_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .map(|n| n.max(1))
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
                .min(8)
        })
}
