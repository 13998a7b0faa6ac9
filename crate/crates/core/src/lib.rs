//! Integer polynomials `f` for which a prescribed finite set `S` of integers
//! has `f(a) f(b)` a perfect square for all distinct `a, b` in `S`.
//!
//! The construction goes through two projective varieties over the nodes
//! `x_0, ..., x_n`:
//!
//! * `V`: points `(f_0, ..., f_d, z_1, ..., z_n)` with `z_i^2 = f(x_0) f(x_i)`;
//! * `W`: the intersection of the `n - d` diagonal quadrics obtained from the
//!   determinants with node-power rows and a row of squares `Y_j^2`.
//!
//! [`rationalmaps`] carries the explicit birational maps between them and two
//! rational parametrizations of `W`; [`forge`] turns parameters into verified
//! witnesses; [`twist`] emits the induced points on `f(x_0) y^2 = f(x)`.

pub mod error;
pub mod exactmath;
pub mod forge;
pub mod rationalmaps;
pub mod twist;
pub mod variety;

pub use error::{Error, Result};
pub use exactmath::{det, integer_sqrt, interpolate, minor, Matrix, RationalPoly};
pub use forge::{
    brute_force_search, classify_trivial, construct_witness, construct_witnesses, verify_witness, ConstructOptions, Flag, FlagStats,
    Method, Polynomial, SearchReport, VerifyReport, Witness, WitnessForge,
};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use rationalmaps::{
    build_a, param_plane, param_plane_inv, param_quadric, param_quadric_inv, phi_v_to_w, psi_w_to_v, PlaneBasis,
    VPoint, WPoint,
};
pub use twist::{twist_points, witness_twist, TwistCurve, TwistPointSet};
pub use variety::{DiagonalQuadric, PointConfig, ProjPoint};
