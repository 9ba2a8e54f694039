//! Hamiltonian-path realizations of edge-length multisets in complete graphs.
//!
//! Label the vertices of the complete graph `K_v` with `0..v` and give the edge
//! between `p` and `q` the *length* `min(|p-q|, v-|p-q|)` — the circular distance.
//! A Hamiltonian path then induces a multiset of `v-1` lengths, and a multiset `L`
//! is *realized* by a path whose induced lengths are exactly `L`. The
//! Buratti–Horák–Rosa (BHR) conjecture asserts that `L` is realizable if and only
//! if it is *admissible*: for every divisor `d` of `v`, at most `v-d` elements of
//! `L` are multiples of `d`.
//!
//! This crate provides the machinery used to settle the conjecture for families of
//! three-element underlying sets:
//!
//! * [`core`] — lengths, multisets, realizations, admissibility, and the
//!   unit automorphisms of the label group.
//! * [`growth`] — *growable* realizations: a realization that is `x`-growable can
//!   be embedded in `K_{v+x}` to realize `L ∪ {x^x}`, so one small path certifies
//!   infinitely many multisets.
//! * [`coverage`] — congruence cases of exponent triples, the dominance order,
//!   coverage by growable realizations, and the closure checker that decides
//!   whether a finite basis settles an entire case.
//! * [`search`] — a backtracking engine for realizations with prescribed
//!   growability, an exhaustive small-`v` oracle, the case-closing algorithm and
//!   the `{1,2,x}` (even `x`) finite-check procedure.
//! * [`construct`] — closed-form builders: σ-block constructions for
//!   `{1^a, 2^b, x}` and automorphism reductions for `{3,6,x}` and `{2,4,6}`.
//! * [`certs`] — a bit-exact text interchange format for realization
//!   certificates, the bundled certificate sets for `{2,4,5}` and `{3,4,5}`, and
//!   the verification / coverage drivers behind the CLI.
//!
//! The `bhr` binary is a thin front-end over these modules, and each capability
//! has a runnable program under `examples/`.

pub mod core;
pub mod growth;

pub mod coverage;

pub mod search;

pub mod construct;

pub mod certs;

pub use crate::core::{
    check_admissibility, edge_length, induced_multiset, verify_realization, AdmissibilityReport,
    LengthMultiset, Order, Realization,
};
pub use crate::growth::{
    grow, grow_many, growability_profile, is_growable_at, GrowabilityProfile, GrowabilityWitness,
};

/// Errors shared by every module of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("inadmissible input: {0}")]
    InadmissibleInput(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("refused: {0}")]
    Refused(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
