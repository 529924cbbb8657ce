//! Exact constructions in the space of infinite binary sequences.
//!
//! The toolkit works at desk scale with three exactly representable
//! ingredients:
//!
//! * [`Point`]: eventually periodic binary sequences, with decidable
//!   equality, lexicographic order, exact rational values, and midpoints;
//! * [`CylinderComplex`]: canonical tries denoting finite Boolean
//!   combinations of cylinders, closed under the set algebra;
//! * [`FormalDistance`]: positional distance values `1_α` over bounded
//!   transfinite indices, combining with leftward carries.
//!
//! On top of these sit the branch-deletion constructions (plain,
//! witness-preserving, and segmented with limit stages), a category-style
//! witness search against nowhere-dense obstacles, interval bisection for
//! membership location, Cantor–Bendixson kernels, and a deletion-count
//! reading of cardinality. Everything is checkable against brute-force
//! oracles at small depth, and the [`suites`] module packages those
//! checks behind one seeded generator.

pub mod bisect;
pub mod cardinality;
pub mod construct;
pub mod dyadic;
pub mod error;
pub mod export;
pub mod metric;
pub mod ordinal;
pub mod point;
pub mod pointed;
pub mod suites;
pub mod transfinite;
pub mod trie;
pub mod word;

pub use bisect::{bisection_locate, BisectionReport, BisectionStep, Branch};
pub use cardinality::{
    classify_cardinality, naturals_demo, verify_p_definition, CardinalityClass,
    NaturalsFamily, NaturalsReport, PredicateReport,
};
pub use construct::{
    bct_witness, cntr_step, preserve_run, run_construction, run_transfinite,
    BctWitness, CntrOutcome, ConstructionState, DeletionSchedule, LimitRecord,
    ScheduleEntry, StepRecord, TransfiniteConstructionState,
};
pub use dyadic::Dyadic;
pub use error::{Error, Result};
pub use metric::{
    distance, distance_transfinite, fd_compare, oplus, triangle_case, FormalDistance,
    TriangleCase,
};
pub use ordinal::{OrdinalIndex, DEFAULT_ORDINAL_BOUND};
pub use point::Point;
pub use pointed::PointedSet;
pub use transfinite::TransfinitePoint;
pub use trie::{cover_check, CoverOutcome, CylinderComplex, CylinderWord};
pub use word::BitWord;
