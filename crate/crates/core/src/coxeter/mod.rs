//! Integer-matrix realizations of the symmetry groups, their enumeration,
//! relation checking and double-coset decomposition.

mod certify;
mod group;
pub mod matrices;

pub use certify::{
    certify_all_groups, verify_correspondences, verify_translation_periodicity,
    CorrespondenceReport, GroupCertification, GroupTable, RelationCheck,
};
pub use group::{
    double_cosets, generate_group, match_representatives, CosetDecomposition, Group, GroupElement,
    PresentationCheck,
};
