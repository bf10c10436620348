//! Ring-independent polynomial expressions, evaluated against a ring on demand.

use std::fmt;

use super::poly::{PolyRing, Polynomial};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyExpr {
    Num(String),
    Var(String),
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Div(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

impl PolyExpr {
    pub fn eval(&self, ring: &PolyRing) -> Result<Polynomial> {
        Ok(match self {
            PolyExpr::Num(n) => ring.constant(ring.field.parse_scalar(n)?),
            PolyExpr::Var(v) => match ring.var_index(v) {
                Some(i) => ring.var(i),
                None => {
                    return Err(Error::InvalidInput(format!("unknown variable `{v}`")));
                }
            },
            PolyExpr::Neg(a) => a.eval(ring)?.neg(),
            PolyExpr::Add(a, b) => a.eval(ring)?.add(&b.eval(ring)?, ring),
            PolyExpr::Sub(a, b) => a.eval(ring)?.sub(&b.eval(ring)?, ring),
            PolyExpr::Mul(a, b) => a.eval(ring)?.mul(&b.eval(ring)?, ring),
            PolyExpr::Div(a, b) => {
                let d = b.eval(ring)?;
                match d.as_constant() {
                    Some(c) => a.eval(ring)?.scale(&c.inv()),
                    None => {
                        return Err(Error::InvalidInput(
                            "division is only allowed by nonzero constants".into(),
                        ))
                    }
                }
            }
            PolyExpr::Pow(a, n) => a.eval(ring)?.pow(*n, ring),
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            PolyExpr::Add(..) | PolyExpr::Sub(..) => 1,
            PolyExpr::Mul(..) | PolyExpr::Div(..) => 2,
            PolyExpr::Neg(..) => 3,
            PolyExpr::Pow(..) => 4,
            PolyExpr::Num(..) | PolyExpr::Var(..) => 5,
        }
    }

    fn fmt_child(&self, child: &PolyExpr, min: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if child.precedence() < min {
            write!(f, "({child})")
        } else {
            write!(f, "{child}")
        }
    }
}

impl fmt::Display for PolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyExpr::Num(n) => write!(f, "{n}"),
            PolyExpr::Var(v) => write!(f, "{v}"),
            PolyExpr::Neg(a) => {
                f.write_str("-")?;
                self.fmt_child(a, 4, f)
            }
            PolyExpr::Add(a, b) => {
                self.fmt_child(a, 1, f)?;
                f.write_str(" + ")?;
                self.fmt_child(b, 2, f)
            }
            PolyExpr::Sub(a, b) => {
                self.fmt_child(a, 1, f)?;
                f.write_str(" - ")?;
                self.fmt_child(b, 2, f)
            }
            PolyExpr::Mul(a, b) => {
                self.fmt_child(a, 2, f)?;
                f.write_str("*")?;
                self.fmt_child(b, 3, f)
            }
            PolyExpr::Div(a, b) => {
                self.fmt_child(a, 2, f)?;
                f.write_str("/")?;
                self.fmt_child(b, 3, f)
            }
            PolyExpr::Pow(a, n) => {
                self.fmt_child(a, 5, f)?;
                write!(f, "^{n}")
            }
        }
    }
}
