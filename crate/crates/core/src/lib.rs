//! Exact rational toolkit for subsets S of the 0/1 cube: the notch and gap
//! parameters, rounding-closure iteration and rank, facet-shape
//! classification for notch <= 3 hulls, clique-subdivision order of the
//! forbidden-vertex graph, membership-oracle optimization, instance
//! generators, and deterministic verification suites over all of it.
//!
//! All geometry is exact: integer inequality data, arbitrary-precision
//! rational vertices, no floating point anywhere in a decision path.

pub mod closure;
pub mod error;
pub mod formats;
pub mod generate;
pub mod geom;
pub mod graph;
pub mod hull;
pub mod linalg;
pub mod lp;
pub mod notch3;
pub mod params;
pub mod polytope;
pub mod rat;
pub mod report;
pub mod suites;

pub use closure::{
    approx_closure_check, cg_rank, default_rank_cap, elementary_closure, validity_depth,
    ApproxFacetStatus, ApproxReport, ClosureConfig, ClosureEngine, ClosureRound, RankCertificate,
};
pub use error::{Error, Result};
pub use formats::{emit_hpolytope, emit_pointset, parse_hpolytope, parse_pointset};
pub use generate::{
    badfacet_instance, notch_p_example, random_pointset, support_at_least, unit_relaxation,
    worst_relaxation, BadFacetInstance, SplitMix64,
};
pub use geom::{
    enumerate_faces, face_intersects, primitive_form, spanned_by_01, switch_ineq, switch_points,
    CubeFace, CubePoint, LinIneq, PointSet, PrimitiveMode, Switching, MAX_DIM,
};
pub use graph::{forbidden_graph, has_clique_subdivision, max_subdivision_order, ForbiddenGraph};
pub use hull::{hull_facets, vertices, vpoly_to_hpoly, PolytopeDD};
pub use lp::{is_valid, lp_min, polytopes_equal, remove_redundancy, LpOutcome};
pub use notch3::{classify_notch3_facet, FacetShape, Notch3Form};
pub use params::{
    gap, gap_by_deepening, notch, oracle_optimize, GapCertificate, GAP_DELTA_CAP, GAP_MAX_DIM,
};
pub use polytope::{HPolytope, LinEq, VPolytope};
pub use rat::Rat;
pub use report::{AssertionRecord, Status, VerificationReport};
pub use suites::{orbit_representatives, run_suite, sampled_sets, SuiteConfig, SUITE_NAMES};
