//! Finitely presented groups of plane-curve complements.
//!
//! Starting from a presentation of the complement group of a plane curve
//! together with its degree and linking numbers, this crate builds
//! presentations of the complement of the pulled-back curve under a generic
//! covering of the plane, and of the affine complement. It certifies group
//! orders by coset enumeration, abelian invariants by Smith normal form, and
//! (non-)abelianness by homomorphisms into small finite groups.

pub mod catalog;
pub mod cli;
pub mod coset;
pub mod error;
pub mod intlinalg;
pub mod presentation;
pub mod quotient;
pub mod schreier;
pub mod tietze;
pub mod word;
pub mod zariski;

pub use coset::{
    enumerate_cosets, group_order, CosetTable, Enumeration, EnumerationLimits, GroupOrder,
};
pub use error::{Error, Result};
pub use intlinalg::{
    abelianization, hom_to_cyclic_consistent, smith_normal_form, AbelianInvariants, IntMatrix,
};
pub use presentation::{parse_presentation, Parsed, Presentation};
pub use quotient::{certify, count_homs, separation_report, Certificate, FiniteTarget, Verdict};
pub use schreier::{schreier_transversal, subgroup_presentation};
pub use tietze::tietze_simplify;
pub use word::{cyclic_reduce, free_reduce, Letter, Word};
pub use zariski::{
    affine_group, cokernel_of_central, extended_group, kernel_coset_table, pullback_group,
    torus_curve_group, validate_linking, CurveGroup, ExtendedGroup, LinkingReport,
};
