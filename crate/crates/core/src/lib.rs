//! Finite-scale tools relating partial orders and polynomial rings.
//!
//! Variables of `Z[X]` are the elements of a finite poset `X`. A polynomial
//! is *dominated* by `x` when each of its monomials contains a variable
//! below `x`; it is *small* when some variable dominates it and *big*
//! otherwise. Big polynomials are closed under multiplication, maximal small
//! ideals are exactly the ideals generated by maximal compatible subsets of
//! `X`, and an upper bound of such a subset is a maximal element of `X`.
//!
//! * [`poset`]: partial orders, chains, upper bounds, compatibility.
//! * [`polyring`]: sparse integer polynomials, parsing and printing.
//! * [`smallness`]: domination, small/big classification.
//! * [`ideals`]: variable-generated ideals, maximal small ideals, big
//!   witnesses.
//! * [`zorn`]: the ideal → maximal element pipeline and the partial-choice
//!   and chain posets built on it.
//! * [`testkit`] and [`suites`]: seeded generators and property suites.

pub mod error;
pub mod ideals;
pub mod polyring;
pub mod poset;
pub mod smallness;
pub mod suites;
pub mod testkit;
pub mod zorn;

pub use error::{Error, Position, Result};
pub use ideals::{
    big_witness, certify_maximality, is_small_var_ideal, maximal_small_ideals, var_ideal_member,
    CertificateReport, VarIdeal,
};
pub use polyring::{format_poly, parse_poly, Degree, Monomial, Polynomial};
pub use poset::{parse_poset, Poset, VarId, VarSet};
pub use smallness::{degree_shift, dominated_by, dominating_witness, is_big, is_small, split_at};
pub use zorn::{
    chain_poset, choice_poset, extract_choice, extract_maximal_via_chains, parse_family,
    wzl_pipeline, ChoiceFamily, PartialChoice, PipelineTrace,
};
