//! Numerical radius, Birkhoff–James orthogonality and smoothness of linear
//! operators on finite-dimensional real polyhedral Banach spaces.
//!
//! A polyhedral space is given by the extreme points of its unit ball and
//! the facet functionals (the extreme points of the dual ball). Both the
//! operator norm and the numerical radius `‖T‖_w = sup |x*(Tx)|` reduce to
//! finite maxima over this data, which makes every query here exact up to a
//! single absolute tolerance.
//!
//! ```
//! use nuradius_core::{fixtures, Operator};
//!
//! let prism = fixtures::hexagonal_prism();
//! let t = Operator::new(&prism, fixtures::prism_operator_matrix()).unwrap();
//! let w = t.numerical_radius();
//! assert!((w.value - 1.0).abs() < 1e-12);
//! assert_eq!(w.class_count(), 1);
//! ```

pub mod error;
pub mod fixtures;
pub mod io;
pub mod lp;
pub mod operator;
pub mod orthogonality;
pub mod smoothness;
pub mod space;

pub use error::{Error, Result};
pub use lp::{lp_numerical_radius_estimate, lp_support_functional, recover_entries, LpSpace};
pub use operator::{
    extreme_pairs, w_definiteness_check, AttainmentReport, ExtremePair, Operator, PairWitness,
    VertexWitness,
};
pub use orthogonality::{
    d_set, is_operator_orthogonal, is_w_orthogonal, lambda_profile_min, LambdaProfile, NormKind,
    OrthogonalityCertificate, ProfileMin, WOrthogonality,
};
pub use smoothness::{
    classify, is_nu_smooth, is_operator_smooth, nu_smooth_by_definition, SmoothnessReport,
};
pub use space::{
    dual_from_vertices, InvariantKind, PolyhedralSpace, ValidationReport, Violation,
    DEFAULT_TOLERANCE,
};
