//! Frobenius–Schur indicators of near-group and Haagerup–Izumi fusion
//! categories, computed from Drinfeld-center modular data, from closed
//! Gauss-sum formulas, and by brute force over `AGL_1(F_q)`.

pub mod abelian;
pub mod center;
pub mod error;
pub mod fusion;
pub mod indicators;
pub mod qforms;
pub mod tables;

pub use abelian::{FiniteAbelianGroup, GroupElement};
pub use center::{CategorySpec, CenterObject, CenterPresentation, Orientation};
pub use error::{Error, Result};
pub use fusion::{make_hi_ring, make_near_group_ring, verify_ring, FusionRing};
pub use indicators::{indicator_vector, indicator_vector_closed, rigidity_report, IndicatorVector, RigidityReport};
pub use qforms::{
    gauss_sum, jacobi_symbol, orthogonal_sum, scale_form, PreMetricGroup, QZValue, QuadraticForm, RootSum, TOLERANCE,
};
pub use tables::{builtin_rows, emit_report, verify_all, verify_row, ReportFormat, RowReport, TableRow};
