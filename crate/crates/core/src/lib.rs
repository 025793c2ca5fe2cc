//! Linearly conjugate and dynamically equivalent realizations of polynomial
//! kinetic systems.
//!
//! A kinetic system `x' = M psi(x)` over complexes `Y` is realized by a
//! Kirchhoff matrix `A_k` and a positive diagonal `T` with `Y A_k = T^-1 M`.
//! Every structure is found from linear programs over the rates and `T^-1`:
//! [`max_support`] gives the structure with the most reactions inside a
//! given set, and [`enumerate_linconj`] lists all structures by repeatedly
//! excluding single reactions.
//!
//! All computation is generic over [`Scalar`]; `f64` is the workhorse and
//! [`Rational`] gives exact answers on small models.
//!
//! ```
//! use linconj::{enumerate_linconj, examples, ConstraintOptions, EnumerationOptions};
//!
//! let model = examples::example1::<f64>();
//! let mut count = 0;
//! let summary = enumerate_linconj(
//!     &model,
//!     &ConstraintOptions::default(),
//!     EnumerationOptions::default(),
//!     |_| count += 1,
//! )
//! .unwrap();
//! assert_eq!(summary.total, 18);
//! assert_eq!(count, 18);
//! ```

pub mod enumerate;
pub mod error;
pub mod examples;
pub mod lp;
pub mod matrix;
pub mod model;
pub mod realization;
pub mod scalar;

pub use enumerate::{
    brute_force_enumerate, build_ak, enumerate_dyneq, enumerate_linconj, BruteForce, ColumnExistStore, Emission,
    EnumerationOptions, EnumerationSummary, ExistStore, LevelStacks, Progress, ProgressHook, BRUTE_FORCE_CAP,
};
pub use error::{Error, Result};
pub use lp::{BoundedSimplex, LinearProgram, LpError, LpOutcome, LpSolver, LpTolerances};
pub use matrix::Matrix;
pub use model::{
    all_edges, build_network, decode, encode, linkage_classes, recover_rate_coefficients, simulate, structure_of,
    weakly_connected, BitSeq, CrnModel, Dynamics, Edge, EdgeOrdering, GraphStructure, Realization, Trajectory,
};
pub use realization::{
    assemble, column_core_edges, column_dense, column_max_support, core_edges, dense_realization,
    dyneq_column_without_edge, find_linconj_without_edge, max_support, max_support_with, AssembledLp, ColumnResult,
    ConstraintOptions, LinearRow, MaxSupportResult, Probe, Relation, Var, VariableMap,
};
pub use scalar::{ratio, Rational, Scalar};

pub type Model = CrnModel<f64>;
pub type ModelF32 = CrnModel<f32>;
pub type ExactModel = CrnModel<Rational>;
pub type Options = ConstraintOptions<f64>;
pub type ExactOptions = ConstraintOptions<Rational>;
pub type KineticRealization = Realization<f64>;
pub type ExactRealization = Realization<Rational>;
