//! Exact hyperplane covers of subsets of the Boolean hypercube `{0,1}^n`.
//!
//! A family of hyperplanes is an *exact cover* of `B ⊆ {0,1}^n` when the
//! union of the hyperplanes meets the cube in exactly `B`. This crate
//! computes minimum exact covers, builds explicit covers for structured
//! families of sets, and verifies every cover it emits with exact rational
//! arithmetic.

pub mod affine;
pub mod catalog;
pub mod constructions;
pub mod cube;
pub mod error;
pub mod experiments;
pub mod io;
pub mod solver;

pub use affine::{
    affine_closure, hyperplane_trace, is_pattern, realize_hyperplane, transform_hyperplane, AffineHull,
    Hyperplane, Pattern, Rational,
};
pub use cube::{canonical_form, hamming_distance, sphere, weight, CubeAutomorphism, Dim, Point, PointSet};
pub use error::{Error, Result};
pub use catalog::{
    catalog, count_patterns, enumerate_patterns, maximal_patterns_within, maximal_patterns_within_limited,
    PatternCatalog,
};
pub use solver::{
    af_lower_bound, ec_n_k, find_cover_within_budget, min_exact_cover, three_covered_one_missed, verify_exact_cover,
    verify_layer_cover, CoverCertificate, CoverReport, EcNkReport, OrbitEntry, SolveResult,
};
pub use constructions::{
    cover_full_cube, cover_minus_four, cover_minus_one, cover_minus_three, cover_minus_two, cover_small,
    greedy_total_dominating_set, hamming_sphere_cover, layer_cover, merge_lift, reduce_fixed_k, sphere_subset_hyperplane,
    LayerEmbedding,
};
pub use experiments::{
    af_missing_property_test, g_axis_aligned, is_subcube, random_hitting_experiment, wagner_check,
    AfMissingReport, HittingExperimentReport, SubcubeHittingResult, WagnerReport,
};
