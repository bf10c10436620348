//! Script syntax tree and its canonical printer (`qhom fmt`).

use std::fmt;

use crate::algebra::expr::PolyExpr;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Script {
    pub statements: Vec<Statement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Statement {
    pub kind: StmtKind,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingBase {
    Poly {
        field: FieldSpec,
        vars: Vec<String>,
        order: Option<String>,
        weights: Option<Vec<String>>,
    },
    Named(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StmtKind {
    Ring { name: String, base: RingBase, ideal: Vec<Expr> },
    Coker { name: String, ring: String, rows: Vec<Vec<Expr>> },
    Module { name: String, expr: Expr },
    Complex { name: String, expr: Expr },
    Print(Vec<Expr>),
    Check(Expr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(String),
    Ident(String),
    Call(String, Vec<Expr>),
    List(Vec<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// Reads the expression as a polynomial expression (identifiers become variables).
    pub fn to_poly(&self) -> Option<PolyExpr> {
        Some(match self {
            Expr::Int(n) => PolyExpr::Num(n.clone()),
            Expr::Ident(v) => PolyExpr::Var(v.clone()),
            Expr::Neg(a) => PolyExpr::Neg(Box::new(a.to_poly()?)),
            Expr::Add(a, b) => PolyExpr::Add(Box::new(a.to_poly()?), Box::new(b.to_poly()?)),
            Expr::Sub(a, b) => PolyExpr::Sub(Box::new(a.to_poly()?), Box::new(b.to_poly()?)),
            Expr::Mul(a, b) => PolyExpr::Mul(Box::new(a.to_poly()?), Box::new(b.to_poly()?)),
            Expr::Div(a, b) => PolyExpr::Div(Box::new(a.to_poly()?), Box::new(b.to_poly()?)),
            Expr::Pow(a, n) => PolyExpr::Pow(Box::new(a.to_poly()?), *n),
            Expr::Call(..) | Expr::List(..) => return None,
        })
    }

    /// Integer literal value, allowing a leading minus.
    pub fn as_int(&self) -> Option<i64> {
        match self {
            Expr::Int(n) => n.parse().ok(),
            Expr::Neg(a) => a.as_int().map(|v| -v),
            _ => None,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn child(&self, c: &Expr, min: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if c.precedence() < min {
            write!(f, "({c})")
        } else {
            write!(f, "{c}")
        }
    }
}

fn join(items: &[Expr]) -> String {
    items.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => f.write_str(n),
            Expr::Ident(s) => f.write_str(s),
            Expr::Call(name, args) => write!(f, "{name}({})", join(args)),
            Expr::List(items) => write!(f, "[{}]", join(items)),
            Expr::Neg(a) => {
                f.write_str("-")?;
                self.child(a, 4, f)
            }
            Expr::Add(a, b) => {
                self.child(a, 1, f)?;
                f.write_str(" + ")?;
                self.child(b, 2, f)
            }
            Expr::Sub(a, b) => {
                self.child(a, 1, f)?;
                f.write_str(" - ")?;
                self.child(b, 2, f)
            }
            Expr::Mul(a, b) => {
                self.child(a, 2, f)?;
                f.write_str("*")?;
                self.child(b, 3, f)
            }
            Expr::Div(a, b) => {
                self.child(a, 2, f)?;
                f.write_str("/")?;
                self.child(b, 3, f)
            }
            Expr::Pow(a, n) => {
                self.child(a, 5, f)?;
                write!(f, "^{n}")
            }
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            StmtKind::Ring { name, base, ideal } => {
                write!(f, "ring {name} = ")?;
                match base {
                    RingBase::Poly { field, vars, order, weights } => {
                        let field = match field {
                            FieldSpec::Rationals => "QQ".to_string(),
                            FieldSpec::Prime(p) => format!("GF({p})"),
                        };
                        write!(f, "poly({field}, [{}]", vars.join(", "))?;
                        if let Some(o) = order {
                            write!(f, ", {o}")?;
                        }
                        if let Some(w) = weights {
                            write!(f, ", [{}]", w.join(", "))?;
                        }
                        f.write_str(")")?;
                    }
                    RingBase::Named(n) => f.write_str(n)?,
                }
                if !ideal.is_empty() {
                    write!(f, " / ideal({})", join(ideal))?;
                }
                f.write_str(";")
            }
            StmtKind::Coker { name, ring, rows } => {
                let rows: Vec<String> = rows.iter().map(|r| format!("[{}]", join(r))).collect();
                write!(f, "module {name} = coker {ring} [{}];", rows.join(", "))
            }
            StmtKind::Module { name, expr } => write!(f, "module {name} = {expr};"),
            StmtKind::Complex { name, expr } => write!(f, "complex {name} = {expr};"),
            StmtKind::Print(items) => write!(f, "print {};", join(items)),
            StmtKind::Check(e) => write!(f, "check {e};"),
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
