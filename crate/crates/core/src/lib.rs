//! Graded Betti numbers of monomial ideals over a chosen field, maximal
//! shifts, and checkers for subadditivity-type inequalities.
//!
//! Two independent engines compute Betti tables: Hochster's formula on the
//! Stanley-Reisner complex of the polarization, and the multigraded
//! components of the Taylor complex. They serve as oracles for each other.

pub mod betti;
pub mod error;
pub mod field;
pub mod homology;
pub mod linalg;
pub mod monomial;
pub mod simplicial;
pub mod subadditivity;
pub mod taylor;
pub mod verify;

pub use betti::{
    betti_hochster, betti_hochster_memo, betti_hochster_of_ideal, betti_of_ideal, cross_check, max_shifts,
    BettiJson, BettiTable, Caps, MaxShifts, Method,
};
pub use error::{Error, Result};
pub use field::FieldSpec;
pub use homology::{reduced_homology, HomologyMemo, HomologyProfile};
pub use monomial::{parse_ideal, polarize, render_ideal, Monomial, MonomialIdeal};
pub use simplicial::{Dimension, SimplicialComplex, SubcomplexFamily};
pub use subadditivity::{
    check_eq1, check_first_step, check_subadditivity, check_thm_ab3, check_thm_ab3_all, check_thm_ab4,
    ConditionalOutcome, InequalityReport, Verdict,
};
pub use taylor::{betti_taylor, criterion_ab6, witness_ab5, LcmRatioCriterion, TaylorComplex, WitnessReport};
