//! Finite groups with explicit element lists.
//!
//! Everything downstream (root-system constructions, structure verifiers,
//! quotient obstructions) works over this one representation: a sorted
//! element vector with a generator list, plus machinery for closures, normal
//! subgroups, quotients, composition factors, and homomorphism search.

pub mod element;
pub mod factors;
pub mod group;
pub mod groupfile;
pub mod normal;
pub mod products;
pub mod search;

pub use element::{GroupElement, Mat, SignedPerm, MAX_SIGNED_RANK};
pub use factors::{composition_factors, jh_set, SimpleFactor, TieBreak};
pub use group::{FiniteGroup, GroupError};
pub use groupfile::{GroupFile, GroupFileError};
pub use products::{
    alternating_group, cyclic_group, dihedral_group, direct_product, klein_four_group,
    symmetric_group, trivial_group,
};
pub use search::{
    all_isomorphisms, explicit_isomorphism_holds, is_isomorphic, surjection_exists, Homomorphism,
    DEFAULT_SEARCH_BUDGET,
};
