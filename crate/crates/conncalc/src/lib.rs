//! Flat connections over a punctured affine line in characteristic p:
//! the connection operator and its Taylor cocycle, lambda-connections with
//! their rescaling action, gauge transformations, and p-curvature with the
//! horizontality and covariance identities.

pub mod connection;
pub mod error;
pub mod fuzz;
pub mod pcurv;
pub mod taylor;

pub use connection::{
    gauge_transform, lambda_rescale, nabla_apply, Connection, LambdaConnection, LambdaScale,
};
pub use error::ConnError;
pub use pcurv::{
    horizontality_check, p_curvature, rank1_jacobson_oracle, HorizontalityReport, PCurvature,
};
pub use taylor::{taylor_expand, taylor_multiplicativity_check, TaylorCocycle, TaylorReport};
