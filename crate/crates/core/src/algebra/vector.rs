//! Elements of twisted free modules `⊕ P(-t_i)` over a polynomial ring `P`, with a module
//! monomial order that can eliminate a leading block of components.

use std::cmp::Ordering;

use super::field::Scalar;
use super::poly::{Monomial, PolyRing, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub mon: Monomial,
    pub comp: usize,
    pub coef: Scalar,
}

/// Module monomial order: components below `block` dominate, then total degree
/// (monomial degree plus component twist), then the ring order, then lower component index.
#[derive(Clone, Copy, Debug)]
pub struct ModuleOrder<'a> {
    pub ring: &'a PolyRing,
    pub twists: &'a [i32],
    pub block: usize,
}

impl<'a> ModuleOrder<'a> {
    pub fn new(ring: &'a PolyRing, twists: &'a [i32]) -> Self {
        ModuleOrder { ring, twists, block: 0 }
    }

    pub fn with_block(ring: &'a PolyRing, twists: &'a [i32], block: usize) -> Self {
        ModuleOrder { ring, twists, block }
    }

    pub fn degree(&self, mon: &Monomial, comp: usize) -> i32 {
        self.ring.degree(mon) + self.twists[comp]
    }

    pub fn cmp(&self, a: (&Monomial, usize), b: (&Monomial, usize)) -> Ordering {
        let ba = a.1 < self.block;
        let bb = b.1 < self.block;
        if ba != bb {
            return ba.cmp(&bb);
        }
        match self.degree(a.0, a.1).cmp(&self.degree(b.0, b.1)) {
            Ordering::Equal => {}
            o => return o,
        }
        match self.ring.cmp_monomials(a.0, b.0) {
            Ordering::Equal => {}
            o => return o,
        }
        b.1.cmp(&a.1)
    }
}

/// Sparse module element; terms sorted descending under the order it was built with.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Vector {
    pub terms: Vec<Term>,
}

impl Vector {
    pub fn zero() -> Vector {
        Vector { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn from_terms(mut terms: Vec<Term>, ord: &ModuleOrder) -> Vector {
        terms.sort_by(|a, b| ord.cmp((&b.mon, b.comp), (&a.mon, a.comp)));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            if let Some(last) = out.last_mut() {
                if last.mon == t.mon && last.comp == t.comp {
                    last.coef = &last.coef + &t.coef;
                    continue;
                }
            }
            out.push(t);
        }
        out.retain(|t| !t.coef.is_zero());
        Vector { terms: out }
    }

    /// Builds `Σ entries[i] e_{offset+i}`.
    pub fn from_polys<'p>(
        entries: impl IntoIterator<Item = &'p Polynomial>,
        offset: usize,
        ord: &ModuleOrder,
    ) -> Vector {
        let mut terms = Vec::new();
        for (i, p) in entries.into_iter().enumerate() {
            for (m, c) in &p.terms {
                terms.push(Term { mon: m.clone(), comp: offset + i, coef: c.clone() });
            }
        }
        Vector::from_terms(terms, ord)
    }

    pub fn unit(comp: usize, nvars: usize, one: Scalar) -> Vector {
        Vector { terms: vec![Term { mon: Monomial::one(nvars), comp, coef: one }] }
    }

    /// Splits into per-component polynomials for components `lo..hi` (shifted to start at 0).
    pub fn to_polys(&self, lo: usize, hi: usize, ring: &PolyRing) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); hi - lo];
        for t in &self.terms {
            if t.comp >= lo && t.comp < hi {
                buckets[t.comp - lo].push((t.mon.clone(), t.coef.clone()));
            }
        }
        buckets.into_iter().map(|b| Polynomial::from_terms(b, ring)).collect()
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term { mon: t.mon.clone(), comp: t.comp, coef: &t.coef * c })
                .collect(),
        }
    }

    pub fn monic(&self) -> Vector {
        match self.terms.first() {
            None => Vector::zero(),
            Some(t) => self.scale(&t.coef.inv()),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term { mon: t.mon.mul(m), comp: t.comp, coef: &t.coef * c })
                .collect(),
        }
    }

    pub fn add(&self, other: &Vector, ord: &ModuleOrder) -> Vector {
        self.axpy(&ord.ring.field.one(), None, other, ord)
    }

    pub fn sub(&self, other: &Vector, ord: &ModuleOrder) -> Vector {
        self.axpy(&-&ord.ring.field.one(), None, other, ord)
    }

    /// `self + c * m * other`.
    pub fn axpy(&self, c: &Scalar, m: Option<&Monomial>, other: &Vector, ord: &ModuleOrder) -> Vector {
        let a = &self.terms;
        let b = &other.terms;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let scaled = |t: &Term| Term {
            mon: match m {
                Some(m) => t.mon.mul(m),
                None => t.mon.clone(),
            },
            comp: t.comp,
            coef: &t.coef * c,
        };
        let (mut i, mut j) = (0, 0);
        let mut pending: Option<Term> = b.first().map(scaled);
        while i < a.len() {
            let Some(bt) = pending.as_ref() else { break };
            match ord.cmp((&a[i].mon, a[i].comp), (&bt.mon, bt.comp)) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(pending.take().unwrap());
                    j += 1;
                    pending = b.get(j).map(scaled);
                }
                Ordering::Equal => {
                    let s = &a[i].coef + &bt.coef;
                    if !s.is_zero() {
                        out.push(Term { mon: a[i].mon.clone(), comp: a[i].comp, coef: s });
                    }
                    i += 1;
                    j += 1;
                    pending = b.get(j).map(scaled);
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        if let Some(t) = pending {
            out.push(t);
            out.extend(b[j + 1..].iter().map(scaled));
        }
        Vector { terms: out }
    }

    /// Re-sorts under a different order (same component layout).
    pub fn reorder(&self, ord: &ModuleOrder) -> Vector {
        Vector::from_terms(self.terms.clone(), ord)
    }

    /// Shifts every component index by `delta` (which must keep indices nonnegative).
    pub fn shift_components(&self, delta: isize, ord: &ModuleOrder) -> Vector {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                mon: t.mon.clone(),
                comp: (t.comp as isize + delta) as usize,
                coef: t.coef.clone(),
            })
            .collect();
        Vector::from_terms(terms, ord)
    }

    /// Whether all terms share one total degree; returns it.
    pub fn homogeneous_degree(&self, ord: &ModuleOrder) -> Option<Option<i32>> {
        let mut deg = None;
        for t in &self.terms {
            let d = ord.degree(&t.mon, t.comp);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        Some(deg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Field;

    #[test]
    fn axpy_cancels() {
        let r = PolyRing::new(Field::Prime(101), &["x", "y"]).unwrap();
        let tw = [0, 1];
        let ord = ModuleOrder::new(&r, &tw);
        let v = Vector::from_polys([&r.var(0), &r.one()], 0, &ord);
        let w = v.sub(&v, &ord);
        assert!(w.is_zero());
        let two = v.add(&v, &ord);
        assert_eq!(two, v.scale(&r.field.from_i64(2)));
    }

    #[test]
    fn block_dominates() {
        let r = PolyRing::new(Field::Prime(101), &["x"]).unwrap();
        let tw = [0, 5];
        let ord = ModuleOrder::with_block(&r, &tw, 1);
        let m0 = Monomial::one(1);
        let m1 = Monomial::from_exps(&[9]);
        assert_eq!(ord.cmp((&m0, 0), (&m1, 1)), Ordering::Greater);
    }
}
