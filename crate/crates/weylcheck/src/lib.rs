//! Weyl groups of simple root systems as explicit finite groups.
//!
//! The crate enumerates Weyl groups either as signed permutations or as
//! exact integer matrices (stored doubled, so half-integral reflection
//! entries stay exact), and layers on the group-theoretic machinery —
//! normal subgroups, quotients, derived series, composition factors,
//! surjection search, Goursat subdirect products — needed to check
//! their structure theory mechanically, with brute-force fallbacks for
//! every closed-form claim.

pub mod finite_group;
pub mod quotient_obstruction;
pub mod root_weyl;
pub mod weyl_structure;
