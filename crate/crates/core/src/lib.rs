//! Exact generalized earth mover's distance on integer histograms.
//!
//! Histograms over bins `1..=n` are turned into cumulative dot sets; a family
//! of `d + 1` dot sets spans an *earth mover's simplex* whose first
//! generalized volume is the minimum work needed to move every histogram to a
//! common one. The crate computes that volume along several independent
//! routes, checks the linear identities relating it to edge lengths and facet
//! volumes, and carries brute-force transport oracles for cross-validation.
//!
//! All arithmetic is on integers; overflow is reported as [`Error::Overflow`].

pub mod cli;
pub mod error;
pub mod face;
pub mod family;
pub mod histogram;
pub mod identities;
pub mod instance;
pub mod multiset;
pub mod oracle;
pub mod polynomial;
pub mod report;
pub mod simplex;
pub mod symmetric_difference;

pub use error::{Error, Result};
pub use face::Face;
pub use family::{Cell, VertexFamily, MAX_DIMENSION};
pub use histogram::{cumulate, decumulate, pairwise_emd, Dot, DotSet, Histogram};
pub use identities::{
    cayley_menger_check, corollary_cm_census, filtration_export, heron_facets_check,
    surface_area_check, IdentityReport,
};
pub use multiset::DotMultiset;
pub use oracle::{brute_force_emd, enumerate_compositions, sorted_matching_emd, Composition};
pub use polynomial::Polynomial;
pub use simplex::{
    build_labelings, edge_length, epsilon, face_volume, surface_area, v_polynomial,
    vol_via_falling_factorial, EmSimplex, FaceLabeling,
};
pub use symmetric_difference::{
    degree_profile, generalized_emd, generalized_symmetric_difference, min_med_maj, DegreeProfile,
};
