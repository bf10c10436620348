//! Quotients `P/I` of graded polynomial rings by homogeneous ideals.

use std::fmt;
use std::sync::{Arc, OnceLock};

use super::groebner::{groebner_basis, normal_form};
use super::poly::{PolyRing, Polynomial};
use super::vector::{ModuleOrder, Term, Vector};
use crate::error::{Error, Result};

/// Shared handle to a quotient ring.
pub type Ring = Arc<QuotientRing>;

pub struct QuotientRing {
    pub ambient: Arc<PolyRing>,
    pub ideal_gens: Vec<Polynomial>,
    gb: OnceLock<Vec<Polynomial>>,
}

impl fmt::Debug for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

impl QuotientRing {
    /// The polynomial ring itself.
    pub fn polynomial(ambient: Arc<PolyRing>) -> Ring {
        Arc::new(QuotientRing { ambient, ideal_gens: Vec::new(), gb: OnceLock::new() })
    }

    pub fn new(ambient: Arc<PolyRing>, ideal_gens: Vec<Polynomial>) -> Result<Ring> {
        for g in &ideal_gens {
            if !g.is_homogeneous(&ambient) {
                return Err(Error::NotHomogeneous(format!(
                    "ideal generator {} is not homogeneous",
                    g.format(&ambient)
                )));
            }
            if g.degree(&ambient) == Some(0) {
                return Err(Error::InvalidInput(format!(
                    "ideal generator {} is a unit; the ideal must lie in the irrelevant ideal",
                    g.format(&ambient)
                )));
            }
        }
        let ideal_gens: Vec<Polynomial> = ideal_gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Arc::new(QuotientRing { ambient, ideal_gens, gb: OnceLock::new() }))
    }

    pub fn poly(&self) -> &PolyRing {
        &self.ambient
    }

    pub fn nvars(&self) -> usize {
        self.ambient.nvars()
    }

    /// Reduced Gröbner basis of the defining ideal, computed on first use.
    pub fn gb(&self) -> &[Polynomial] {
        self.gb.get_or_init(|| groebner_basis(&self.ideal_gens, &self.ambient))
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.gb().is_empty()
    }

    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        if self.gb().is_empty() {
            return p.clone();
        }
        normal_form(p, self.gb(), &self.ambient)
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.reduce(&a.mul(b, &self.ambient))
    }

    /// Same ambient ring and same ideal.
    pub fn same_as(&self, other: &QuotientRing) -> bool {
        self.ambient == other.ambient && self.gb() == other.gb()
    }

    /// Whether `self = other / J` for some ideal `J`, i.e. the ideal of `other` lies in ours.
    pub fn is_quotient_of(&self, other: &QuotientRing) -> bool {
        self.ambient == other.ambient && other.gb().iter().all(|g| self.reduce(g).is_zero())
    }

    /// `self / (extra)`.
    pub fn quotient_by(&self, extra: &[Polynomial]) -> Result<Ring> {
        let mut gens = self.ideal_gens.clone();
        gens.extend(extra.iter().cloned());
        QuotientRing::new(self.ambient.clone(), gens)
    }

    /// The ambient polynomial ring as a quotient ring.
    pub fn ambient_ring(&self) -> Ring {
        QuotientRing::polynomial(self.ambient.clone())
    }

    /// Ideal Gröbner basis elements times every unit vector of a free module, as vectors.
    pub fn ideal_vectors(&self, ncomp: usize, ord: &ModuleOrder) -> Vec<Vector> {
        let mut out = Vec::with_capacity(ncomp * self.gb().len());
        for comp in 0..ncomp {
            for g in self.gb() {
                let terms = g
                    .terms
                    .iter()
                    .map(|(m, c)| Term { mon: m.clone(), comp, coef: c.clone() })
                    .collect();
                out.push(Vector::from_terms(terms, ord));
            }
        }
        out
    }

    pub fn variables(&self) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.ambient.var(i)).collect()
    }

    pub fn describe(&self) -> String {
        let a = &self.ambient;
        let mut s = format!("{}[{}]", a.field, a.vars.join(","));
        if !self.ideal_gens.is_empty() {
            let gens: Vec<String> = self.ideal_gens.iter().map(|g| g.format(a)).collect();
            s.push_str(&format!("/({})", gens.join(", ")));
        }
        s
    }
}

/// Rejects operations that mix rings.
pub fn ensure_same(a: &QuotientRing, b: &QuotientRing) -> Result<()> {
    if std::ptr::eq(a, b) || a.same_as(b) {
        Ok(())
    } else {
        Err(Error::RingMismatch(format!("{} vs {}", a.describe(), b.describe())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Field;
    use crate::algebra::parse_polynomial;

    #[test]
    fn rejects_inhomogeneous_and_unit_ideals() {
        let p = Arc::new(PolyRing::new(Field::Rationals, &["x", "y"]).unwrap());
        let bad = parse_polynomial("x^2 + y", &p).unwrap();
        assert!(QuotientRing::new(p.clone(), vec![bad]).is_err());
        assert!(QuotientRing::new(p.clone(), vec![p.one()]).is_err());
    }

    #[test]
    fn quotient_relation() {
        let p = Arc::new(PolyRing::new(Field::Rationals, &["x", "y"]).unwrap());
        let q = QuotientRing::polynomial(p.clone());
        let x2 = parse_polynomial("x^2", &p).unwrap();
        let r = q.quotient_by(&[x2.clone()]).unwrap();
        assert!(r.is_quotient_of(&q));
        assert!(!q.is_quotient_of(&r));
        assert!(r.reduce(&x2).is_zero());
    }
}
