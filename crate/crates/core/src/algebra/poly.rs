//! Graded polynomial rings, monomials and sparse polynomials.

use std::cmp::Ordering;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::field::{Field, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum MonomialOrder {
    #[default]
    GRevLex,
    Lex,
}

impl MonomialOrder {
    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::GRevLex => "grevlex",
            MonomialOrder::Lex => "lex",
        }
    }
}

/// Exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub SmallVec<[u16; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn from_exps(exps: &[u16]) -> Monomial {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self / other`; caller guarantees divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0
            .iter()
            .zip(other.0.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }
}

/// A polynomial ring over an exact field with a positive grading.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolyRing {
    pub field: Field,
    pub vars: Vec<String>,
    pub weights: Vec<u32>,
    pub order: MonomialOrder,
}

impl PolyRing {
    pub fn new(field: Field, vars: &[&str]) -> Result<PolyRing> {
        PolyRing::with_options(
            field,
            vars.iter().map(|s| s.to_string()).collect(),
            vec![1; vars.len()],
            MonomialOrder::GRevLex,
        )
    }

    pub fn with_options(
        field: Field,
        vars: Vec<String>,
        weights: Vec<u32>,
        order: MonomialOrder,
    ) -> Result<PolyRing> {
        if vars.is_empty() {
            return Err(Error::InvalidInput("a polynomial ring needs at least one variable".into()));
        }
        if weights.len() != vars.len() {
            return Err(Error::InvalidInput("one weight per variable required".into()));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::InvalidInput("variable weights must be positive".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::InvalidInput(format!("duplicate variable name `{v}`")));
            }
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::InvalidInput(format!("bad variable name `{v}`")));
            }
        }
        Ok(PolyRing { field, vars, weights, order })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn degree(&self, m: &Monomial) -> i32 {
        m.0.iter()
            .zip(self.weights.iter())
            .map(|(&e, &w)| e as i32 * w as i32)
            .sum()
    }

    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.order {
            MonomialOrder::Lex => {
                for (x, y) in a.0.iter().zip(b.0.iter()) {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::GRevLex => {
                match self.degree(a).cmp(&self.degree(b)) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for (x, y) in a.0.iter().zip(b.0.iter()).rev() {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial { terms: Vec::new() }
    }

    pub fn one(&self) -> Polynomial {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: Scalar) -> Polynomial {
        if c.is_zero() {
            return self.zero();
        }
        Polynomial { terms: vec![(Monomial::one(self.nvars()), c)] }
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial { terms: vec![(Monomial::var(self.nvars(), i), self.field.one())] }
    }

    pub fn monomial(&self, m: Monomial, c: Scalar) -> Polynomial {
        if c.is_zero() {
            return self.zero();
        }
        Polynomial { terms: vec![(m, c)] }
    }

    /// All monomials of weighted degree `d`, in descending order.
    pub fn monomials_of_degree(&self, d: i32) -> Vec<Monomial> {
        let mut out = Vec::new();
        if d < 0 {
            return out;
        }
        let mut cur = vec![0u16; self.nvars()];
        self.enum_monomials(0, d, &mut cur, &mut out);
        out.sort_by(|a, b| self.cmp_monomials(b, a));
        out
    }

    fn enum_monomials(&self, i: usize, left: i32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i == self.nvars() {
            if left == 0 {
                out.push(Monomial::from_exps(cur));
            }
            return;
        }
        let w = self.weights[i] as i32;
        let mut e = 0;
        while e * w <= left {
            cur[i] = e as u16;
            self.enum_monomials(i + 1, left - e * w, cur, out);
            e += 1;
        }
        cur[i] = 0;
    }

    /// Sum of the variable weights; the canonical module of the ring is `R(-sum)`.
    pub fn weight_sum(&self) -> i32 {
        self.weights.iter().map(|&w| w as i32).sum()
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut s = String::new();
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('*');
            }
            s.push_str(&self.vars[i]);
            if e > 1 {
                let _ = write!(s, "^{e}");
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }
}

/// Sparse polynomial, terms sorted in descending monomial order, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    pub terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn is_homogeneous(&self, ring: &PolyRing) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = ring.degree(m);
                self.terms.iter().all(|(n, _)| ring.degree(n) == d)
            }
        }
    }

    /// Degree of the leading term (the degree of a homogeneous polynomial).
    pub fn degree(&self, ring: &PolyRing) -> Option<i32> {
        self.terms.first().map(|(m, _)| ring.degree(m))
    }

    /// Constant coefficient, if the polynomial is a nonzero constant.
    pub fn as_constant(&self) -> Option<&Scalar> {
        match self.terms.as_slice() {
            [(m, c)] if m.is_one() => Some(c),
            _ => None,
        }
    }

    pub fn constant_term(&self, ring: &PolyRing) -> Scalar {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| ring.field.zero())
    }

    pub fn add(&self, other: &Polynomial, ring: &PolyRing) -> Polynomial {
        merge(&self.terms, &other.terms, ring, |c| c.clone())
    }

    pub fn sub(&self, other: &Polynomial, ring: &PolyRing) -> Polynomial {
        merge(&self.terms, &other.terms, ring, |c| -c)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial { terms: Vec::new() };
        }
        Polynomial { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial { terms: Vec::new() };
        }
        Polynomial { terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect() }
    }

    pub fn mul(&self, other: &Polynomial, ring: &PolyRing) -> Polynomial {
        let mut acc = Polynomial { terms: Vec::new() };
        for (m, c) in &other.terms {
            acc = acc.add(&self.mul_term(m, c), ring);
        }
        acc
    }

    pub fn pow(&self, n: u32, ring: &PolyRing) -> Polynomial {
        let mut acc = ring.one();
        for _ in 0..n {
            acc = acc.mul(self, ring);
        }
        acc
    }

    /// Divides out the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    /// Canonical text form, e.g. `x^2*y - 3*z + 1`.
    pub fn format(&self, ring: &PolyRing) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                let _ = write!(s, "{abs}");
            } else if abs.is_one() {
                s.push_str(&ring.format_monomial(m));
            } else {
                let _ = write!(s, "{abs}*{}", ring.format_monomial(m));
            }
        }
        s
    }

    /// Builds a polynomial from unsorted terms, combining duplicates.
    pub fn from_terms(mut terms: Vec<(Monomial, Scalar)>, ring: &PolyRing) -> Polynomial {
        terms.sort_by(|a, b| ring.cmp_monomials(&b.0, &a.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = &last.1 + &c;
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { terms: out }
    }
}

fn merge(
    a: &[(Monomial, Scalar)],
    b: &[(Monomial, Scalar)],
    ring: &PolyRing,
    f: impl Fn(&Scalar) -> Scalar,
) -> Polynomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match ring.cmp_monomials(&a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((b[j].0.clone(), f(&b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = &a[i].1 + &f(&b[j].1);
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|(m, c)| (m.clone(), f(c))));
    Polynomial { terms: out }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> PolyRing {
        PolyRing::new(Field::Rationals, &["x", "y", "z"]).unwrap()
    }

    #[test]
    fn grevlex_order() {
        let r = ring();
        let m = |e: [u16; 3]| Monomial::from_exps(&e);
        // x*z > y^2 in grevlex
        assert_eq!(r.cmp_monomials(&m([1, 0, 1]), &m([0, 2, 0])), Ordering::Less);
        assert_eq!(r.cmp_monomials(&m([0, 2, 0]), &m([1, 0, 1])), Ordering::Greater);
        assert_eq!(r.cmp_monomials(&m([2, 0, 0]), &m([1, 1, 0])), Ordering::Greater);
        assert_eq!(r.cmp_monomials(&m([0, 0, 3]), &m([1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn rejects_bad_rings() {
        assert!(PolyRing::new(Field::Rationals, &["x", "x"]).is_err());
        assert!(PolyRing::with_options(
            Field::Rationals,
            vec!["x".into()],
            vec![0],
            MonomialOrder::GRevLex
        )
        .is_err());
    }

    #[test]
    fn monomials_of_degree_counts() {
        let r = ring();
        assert_eq!(r.monomials_of_degree(2).len(), 6);
        assert_eq!(r.monomials_of_degree(0).len(), 1);
        let w = PolyRing::with_options(
            Field::Rationals,
            vec!["a".into(), "b".into()],
            vec![1, 2],
            MonomialOrder::GRevLex,
        )
        .unwrap();
        // a^4, a^2 b, b^2
        assert_eq!(w.monomials_of_degree(4).len(), 3);
    }

    #[test]
    fn arithmetic_and_format() {
        let r = ring();
        let x = r.var(0);
        let y = r.var(1);
        let p = x.add(&y, &r).mul(&x.sub(&y, &r), &r);
        assert_eq!(p.format(&r), "x^2 - y^2");
        assert_eq!(p.sub(&p, &r), r.zero());
        assert!(p.is_homogeneous(&r));
    }
}
