//! Polynomial arithmetic, Gröbner bases and graded matrices over quotient rings.

pub mod expr;
pub mod field;
pub mod groebner;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod ring;
pub mod syzygy;
pub mod vector;

pub use field::{Field, Scalar};
pub use matrix::PolyMatrix;
pub use poly::{Monomial, MonomialOrder, PolyRing, Polynomial};
pub use ring::{QuotientRing, Ring};

use crate::error::{Error, Result};

/// Parses polynomial text such as `x^2*y - 3*z + 1/2` in `ring`.
pub fn parse_polynomial(text: &str, ring: &PolyRing) -> Result<Polynomial> {
    let e = crate::cli::parser::parse_expr(text)?;
    let p = e
        .to_poly()
        .ok_or_else(|| Error::InvalidInput(format!("`{text}` is not a polynomial expression")))?;
    p.eval(ring)
}
