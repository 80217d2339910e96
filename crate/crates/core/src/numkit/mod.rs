//! Exact and floating scalar arithmetic, univariate polynomials, real-root isolation.

mod error;
mod poly;
mod roots;
mod scalar;

pub use error::NumError;
pub use poly::{poly_arith, AnyPoly, PolyOp, UniPoly, Var};
pub use roots::{companion_all_roots, sturm_real_roots, RealRoot, RootMethod, RootSet};
pub use scalar::{
    abs, parse_rational, rational_from_f64, rational_to_f64, Coeff, Mode, Rational, Scalar,
    STURM_TOL,
};
