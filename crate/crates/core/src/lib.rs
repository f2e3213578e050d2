//! Exact computer algebra for the W-algebra W(2,2).
//!
//! * [`algebra`]: basis, bracket, involution, Jacobi checks.
//! * [`pbw`]: the enveloping algebra in PBW normal form.
//! * [`identities`]: a corpus of commutator identities checked exactly.
//! * [`verma`]: Verma modules, contravariant forms, singular vectors.
//! * [`criterion`]: the closed-form irreducibility criterion.
//! * [`realizations`]: the Witt-module realization and intermediate series.
//!
//! All arithmetic is exact, over [`Rational`] or the polynomial ring [`Poly`].

pub mod algebra;
pub mod criterion;
pub mod error;
mod fmt_util;
pub mod identities;
pub mod linalg;
pub mod pbw;
pub mod poly;
pub mod realizations;
pub mod scalar;
pub mod verma;

pub use algebra::{bracket, Generator, LieElement};
pub use criterion::{is_reducible, Reducibility};
pub use error::{Error, ParseError, Result};
pub use linalg::Matrix;
pub use pbw::{normal_order, PbwMonomial, UEElement};
pub use poly::{Poly, Var};
pub use scalar::{parse_rational, Rational, Scalar};
pub use verma::{BasisMonomial, GramMatrix, HWParams, VermaModule, VermaVector};
