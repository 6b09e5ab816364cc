//! Construction and verification of Steiner triple systems.
//!
//! The crate builds systems of order `2^n - 7` by doubling: a difference
//! 1-factorization of `Z_2^n` supplies the edges joining old points to new
//! ones, and the translates of one base block close the leftover
//! differences. Iterated from the order-9 seed, each step also extends a
//! maximal independent set of size `(v-1)/2` and a vertex coloring in which
//! every block sees exactly two colors, gaining one color class per level.
//!
//! Everything constructed can be re-checked from scratch: exact pair-degree
//! verification (two independent routes), 1-factorization checks, and
//! exhaustive oracles for maximum independent sets and the largest feasible
//! class count at small orders.
//!
//! Data-parallel inner loops (pair scans, block generation, search splits)
//! use rayon via the default `parallel` feature; disabling it falls back to
//! the equivalent sequential code paths.

pub mod construct;
pub mod design;
pub mod document;
pub mod error;
pub mod factorize;
pub mod verify;

pub use construct::{
    build_chain, build_chain_with, delta_translates, double_plus_one, double_plus_seven,
    extend_bicoloring, extend_independent_set, parity_split_bijection, seed_sts9, ChainOptions,
    ConstructionTrace, PhiBijection, PhiStrategy, SeedSystem,
};
pub use design::{
    relabel_union, sts_block_count, Block, Coloring, DifferenceTriple, Factor, FactorPart,
    FactorTag, Factorization, Side, TripleSystem, UnionRelabeling,
};
pub use document::{DesignDocument, FactorizationDocument};
pub use error::{Error, Result};
pub use factorize::{
    circle_method_factorization, difference_factorization, even_difference_factors, half_factor,
    odd_difference_factors, reduced_family,
};
pub use verify::{
    max_independent_brute, max_independent_upper_bound, upper_chromatic_brute, verify_bicoloring,
    verify_construction_trace, verify_factorization, verify_factorization_seq, verify_independent,
    verify_matching_family, verify_maximal_independent, verify_sts, verify_sts_merge,
    verify_sts_seq, BicoloringSearch, PairTable, VerificationReport, Violation,
    DEFAULT_CHROMATIC_LIMIT, DEFAULT_INDEPENDENT_LIMIT,
};

#[cfg(feature = "parallel")]
pub use verify::{max_independent_brute_par, upper_chromatic_brute_par};
