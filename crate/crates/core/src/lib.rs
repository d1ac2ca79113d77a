//! Exact decomposition of products of two ladder representations.
//!
//! The engine works on the combinatorial side of the Langlands
//! classification: irreducible representations are Zelevinsky multisegments,
//! and a product of two ladder multisegments decomposes multiplicity-free
//! into factors indexed by 321-avoiding permutations. The crate computes
//! that decomposition exactly, together with the quantum degree invariant of
//! every factor, the distinguished maximal factor, and the modified
//! Robinson-Schensted correspondence that inverts the construction.
//!
//! Module map:
//!
//! - [`multisegment`]: segments, multisegments, permutations, ranked tuples
//!   and the data of a regular pair of ladders.
//! - [`shuffle`](mod@shuffle): words, the commutative shuffle product, the
//!   quantum shuffle product over Laurent polynomials, and the degree
//!   exponent.
//! - [`character`]: word-valued characters of ladder representations and the
//!   membership oracle built on them.
//! - [`cmatrix`]: the integer feasibility certificate for membership, its
//!   increment statistics, and the degree invariant through two routes.
//! - [`gadgets`]: the sigma_K traces, the interval order, the map f, the
//!   permutations w^L and the maximal permutation.
//! - [`rs`]: two-row tableaux, the modified Robinson-Schensted map and its
//!   explicit inverse.
//! - [`engine`]: the top level decomposition API and the Catalan
//!   configuration generator.
//!
//! All values are immutable after construction and all operations are pure
//! functions; everything can be shared freely across threads.

pub mod character;
pub mod cmatrix;
pub mod engine;
pub mod error;
pub mod gadgets;
pub mod multisegment;
pub mod rs;
pub mod shuffle;

pub use character::{c_membership_oracle, ladder_character};
pub use cmatrix::{d_otimes, d_otimes_via_shuffle, solve_cmatrix, solve_cmatrix_all, CMatrix};
pub use engine::{catalan_config, decompose, pi_max, DecompositionResult, Factor};
pub use error::{Error, Result};
pub use gadgets::{
    enumerate_sets, f_map, prec, sigma_k, vee, vee_set, w_upper_l, x_max, FData, GadgetContext,
    GadgetSets, SigmaTrace,
};
pub use multisegment::{
    enumerate_321_avoiding, enumerate_321_avoiding_bounded, make_msegment, regular_pair_data,
    Multisegment, Permutation, RankedTuple, RegularPairData, Segment, DEFAULT_ENUM_BOUND,
};
pub use rs::{classical_rs, inverse_rs, modified_rs, wbar_and_rows, TwoRowTableau};
pub use shuffle::{
    bilinear_form, d_exponent, qshuffle, shuffle, shuffle_sums, word_of_multisegment,
    word_of_segment, DegreeVector, FormalSum, LaurentPoly, Word,
};
