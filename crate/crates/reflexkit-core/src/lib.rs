//! Exact-arithmetic toolkit for lattice polytopes: reflexivity and
//! duality, the invariant δ_P, facet lattice volumes and the Minkowski
//! relation, toric wall relations with exact curve degrees, vertex-count
//! bound verification with equality-case decompositions, and exhaustive
//! enumeration of the 2-dimensional reflexive polytopes.
//!
//! Everything is computed over arbitrary-precision integers and
//! rationals; there is no floating point in this crate.

pub mod classifier;
pub mod enumerator;
pub mod error;
pub mod exact;
pub mod fano;
pub mod mori;
pub mod polytope;
pub mod reflexive;
pub mod standard;

pub use classifier::{
    classify_equality_variety, decompose_equality, free_sum_decompose, identify_factor,
    verify_bounds, BoundCheck, BoundsVerdict, Decomposition, DecompositionBlock, FactorKind,
    FreeSumFactor, VarietyClass,
};
pub use enumerator::{
    enumerate_reflexive_2d, seven_vertex_probe, verify_corpus, CorpusSummary, EqualityCase,
    PolytopeClass, VerifyOptions, Violation,
};
pub use error::{Error, Result};
pub use exact::{
    cone_multiplicity, determinant, dual_basis, hermite_normal_form, lattice_pairing, pairing,
    primitive, random_unimodular, smith_normal_form, Ambient, IntMatrix, LatticePoint,
    RationalPoint, SmithNormalForm,
};
pub use fano::{
    delta, facet_determinant, facet_lattice_volume, is_adjacent, is_smooth, level_counts,
    minkowski_relation, picard_number, FanoReport, PullRule,
};
pub use mori::{
    curve_class, curve_classes, pseudo_index_report, wall_relation, CurveClass,
    PseudoIndexReport, Relation,
};
pub use polytope::{free_sum, FacetData, Location, Polytope, Wall};
pub use reflexive::{
    are_isomorphic, canonical_form, dual, dual_vertex_of, facet_of, is_reflexive,
    vertex_facet_table, CanonicalForm, ReflexivityDiagnostic, VertexFacetTable,
};
pub use standard::{
    cross_polytope, dilated_triangle, dual_triangle, hexagon, p2_triangle, projective_simplex,
};
