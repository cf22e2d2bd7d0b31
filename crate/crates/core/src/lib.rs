//! A workbench for finite semigroups given by multiplication tables:
//! congruence lattices and index filtrations, endomorphism and automorphism
//! monoids, induced quotient endomorphisms and their kernels, and inverse
//! systems of quotients with their truncated limits.
//!
//! Everything is exact and deterministic: elements are indices, congruences
//! are canonical block assignments, enumerations are canonically ordered,
//! and every cap fails loudly instead of truncating.

pub mod congruence;
pub mod endo;
pub mod error;
pub mod io;
pub mod limits;
pub mod morphism;
pub mod semigroup;
pub mod tower;

pub use congruence::{
    all_congruences, congruences_of_index_at_most, count_index_two_congruences, join, meet,
    meet_of_index_at_most, principal_congruence, pullback_congruence, Congruence,
    CongruenceFamily,
};
pub use endo::{
    aut_group, brute_force_end, brute_force_end_maps, characteristic_witness, enumerate_end,
    enumerate_end_maps, extension_census, fully_invariant_witness, hopfian_report, induced_endo,
    is_characteristic, is_fully_invariant, restriction_to_quotient, EndCongruence, EndoMonoid,
    ExtensionCensus, HopfianReport, InvarianceWitness, QuotientRestriction,
};
pub use error::{Error, Result};
pub use limits::Limits;
pub use morphism::{check_morphism, Morphism};
pub use semigroup::FiniteSemigroup;
pub use tower::{
    build_tower_from_family, end_limit_comparison, left_zero_tower, limit_threads,
    shift_between_levels, sort_into_chain, verify_end_limit, EndLimitReport, InverseSystem,
    LeftZeroTower, Thread,
};
