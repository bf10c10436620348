//! Buchberger's algorithm for submodules of twisted free modules over a polynomial ring.
//!
//! Ideals are the rank-one case. Pairs are processed by increasing degree of their lcm
//! (normal strategy; for homogeneous input the sugar degree equals the true degree), ties
//! broken by insertion indices so the result is reproducible bit for bit. Redundant pairs
//! are removed with the Gebauer-Möller criteria.

use std::collections::BTreeSet;

use super::poly::{Monomial, PolyRing, Polynomial};
use super::vector::{ModuleOrder, Term, Vector};

/// Leading data of a basis element.
fn lead_of(v: &Vector) -> (&Monomial, usize) {
    let t = v.lead().expect("nonzero basis element");
    (&t.mon, t.comp)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    degree: i32,
    j: usize,
    i: usize,
}

struct Basis<'a> {
    ord: ModuleOrder<'a>,
    elems: Vec<Vector>,
    /// Elements known to be part of a Gröbner basis of a fixed submodule (ideal relations
    /// times unit vectors); pairs among them are skipped.
    trusted: Vec<bool>,
    redundant: Vec<bool>,
    by_comp: Vec<Vec<usize>>,
    pairs: BTreeSet<Pair>,
    product_criterion: bool,
}

impl<'a> Basis<'a> {
    fn lcm_of(&self, i: usize, j: usize) -> Monomial {
        lead_of(&self.elems[i]).0.lcm(lead_of(&self.elems[j]).0)
    }

    /// Full reduction of `v` by the current basis.
    fn reduce(&self, v: &Vector) -> Vector {
        reduce_full(v, &self.elems, &self.by_comp, &self.ord)
    }

    fn insert(&mut self, h: Vector, trusted: bool) {
        let t = self.elems.len();
        let (hm, hc) = {
            let (m, c) = lead_of(&h);
            (m.clone(), c)
        };
        self.elems.push(h);
        self.trusted.push(trusted);
        self.redundant.push(false);

        // Gebauer-Möller update.
        let mut cands: Vec<(usize, Monomial, bool)> = Vec::new();
        for &i in &self.by_comp[hc] {
            if self.redundant[i] || (trusted && self.trusted[i]) {
                continue;
            }
            let gm = lead_of(&self.elems[i]).0;
            cands.push((i, gm.lcm(&hm), gm.is_coprime(&hm)));
        }
        // M criterion.
        let keep: Vec<bool> = cands
            .iter()
            .map(|(_, l, _)| {
                !cands
                    .iter()
                    .any(|(_, l2, _)| l2 != l && l2.divides(l))
            })
            .collect();
        let mut survivors: Vec<(usize, Monomial, bool)> = cands
            .into_iter()
            .zip(keep)
            .filter_map(|(c, k)| k.then_some(c))
            .collect();
        // F criterion (one pair per lcm) and product criterion.
        survivors.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
        let mut new_pairs = Vec::new();
        let mut k = 0;
        while k < survivors.len() {
            let mut e = k;
            while e < survivors.len() && survivors[e].1 == survivors[k].1 {
                e += 1;
            }
            let class = &survivors[k..e];
            let coprime = self.product_criterion && class.iter().any(|c| c.2);
            if !coprime {
                new_pairs.push(class[0].clone());
            }
            k = e;
        }
        // B criterion on old pairs.
        let old: Vec<Pair> = self.pairs.iter().cloned().collect();
        for p in old {
            if lead_of(&self.elems[p.i]).1 != hc {
                continue;
            }
            let l = self.lcm_of(p.i, p.j);
            if !hm.divides(&l) {
                continue;
            }
            let li = lead_of(&self.elems[p.i]).0.lcm(&hm);
            let lj = lead_of(&self.elems[p.j]).0.lcm(&hm);
            if li != l && lj != l {
                self.pairs.remove(&p);
            }
        }
        for (i, l, _) in new_pairs {
            let degree = self.ord.degree(&l, hc);
            self.pairs.insert(Pair { degree, j: t, i });
        }
        // Older elements whose leading term is a multiple of the new one stop generating pairs.
        for &i in &self.by_comp[hc] {
            if hm.divides(lead_of(&self.elems[i]).0) {
                self.redundant[i] = true;
            }
        }
        self.by_comp[hc].push(t);
    }

    fn spoly(&self, i: usize, j: usize) -> Vector {
        let gi = &self.elems[i];
        let gj = &self.elems[j];
        let l = self.lcm_of(i, j);
        let ti = gi.lead().unwrap();
        let tj = gj.lead().unwrap();
        let a = gi.mul_monomial(&l.div(&ti.mon), &tj.coef);
        a.axpy(&-&ti.coef, Some(&l.div(&tj.mon)), gj, &self.ord)
    }
}

/// Full normal form of `v` modulo `elems` (indexed by leading component in `by_comp`).
pub(crate) fn reduce_full(
    v: &Vector,
    elems: &[Vector],
    by_comp: &[Vec<usize>],
    ord: &ModuleOrder,
) -> Vector {
    let mut p = v.clone();
    let mut rem: Vec<Term> = Vec::new();
    while let Some(lt) = p.lead().cloned() {
        let reducer = by_comp
            .get(lt.comp)
            .and_then(|ids| ids.iter().copied().find(|&k| lead_of(&elems[k]).0.divides(&lt.mon)));
        match reducer {
            Some(k) => {
                let g = &elems[k];
                let gt = g.lead().unwrap();
                let c = -&(&lt.coef * &gt.coef.inv());
                let m = lt.mon.div(&gt.mon);
                p = p.axpy(&c, Some(&m), g, ord);
            }
            None => {
                rem.push(lt);
                p.terms.remove(0);
            }
        }
    }
    Vector { terms: rem }
}

/// Computes the reduced Gröbner basis of the submodule generated by `gens` together with
/// `trusted`, a set already known to be a Gröbner basis of its own span (typically ideal
/// generators times unit vectors). Output is monic, sorted by increasing leading term.
pub fn groebner_basis_module(gens: &[Vector], trusted: &[Vector], ord: &ModuleOrder) -> Vec<Vector> {
    let ncomp = ord.twists.len();
    let product_criterion = ncomp == 1;
    let mut basis = Basis {
        ord: *ord,
        elems: Vec::new(),
        trusted: Vec::new(),
        redundant: Vec::new(),
        by_comp: vec![Vec::new(); ncomp],
        pairs: BTreeSet::new(),
        product_criterion,
    };
    for t in trusted {
        if !t.is_zero() {
            basis.insert(t.monic(), true);
        }
    }
    // Input generators are queued with their degree and processed together with pairs.
    let mut pending: Vec<(i32, usize)> = gens
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(k, g)| {
            let t = g.lead().unwrap();
            (ord.degree(&t.mon, t.comp), k)
        })
        .collect();
    pending.sort();
    let mut next_gen = 0;
    loop {
        let pair_deg = basis.pairs.iter().next().map(|p| p.degree);
        let gen_deg = pending.get(next_gen).map(|g| g.0);
        let candidate = match (gen_deg, pair_deg) {
            (None, None) => break,
            (Some(g), Some(p)) if g <= p => {
                next_gen += 1;
                gens[pending[next_gen - 1].1].clone()
            }
            (Some(_), None) => {
                next_gen += 1;
                gens[pending[next_gen - 1].1].clone()
            }
            _ => {
                let p = basis.pairs.iter().next().cloned().unwrap();
                basis.pairs.remove(&p);
                basis.spoly(p.i, p.j)
            }
        };
        let h = basis.reduce(&candidate);
        if !h.is_zero() {
            basis.insert(h.monic(), false);
        }
    }
    interreduce(basis.elems, ord)
}

/// Turns a Gröbner basis into the reduced one.
pub fn interreduce(elems: Vec<Vector>, ord: &ModuleOrder) -> Vec<Vector> {
    let ncomp = ord.twists.len();
    // Drop elements whose leading term is divisible by another's (keep the first among equals).
    let mut minimal: Vec<Vector> = Vec::new();
    for (k, e) in elems.iter().enumerate() {
        let (m, c) = lead_of(e);
        let dominated = elems.iter().enumerate().any(|(l, f)| {
            if l == k {
                return false;
            }
            let (fm, fc) = lead_of(f);
            fc == c && fm.divides(m) && (fm != m || l < k)
        });
        if !dominated {
            minimal.push(e.clone());
        }
    }
    minimal.sort_by(|a, b| {
        let (am, ac) = lead_of(a);
        let (bm, bc) = lead_of(b);
        ord.cmp((am, ac), (bm, bc))
    });
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let g = &minimal[k];
        let others: Vec<Vector> = minimal
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != k)
            .map(|(_, v)| v.clone())
            .collect();
        let by_comp = index_by_comp(&others, ncomp);
        let lead = Vector { terms: vec![g.terms[0].clone()] };
        let tail = Vector { terms: g.terms[1..].to_vec() };
        let tail = reduce_full(&tail, &others, &by_comp, ord);
        out.push(lead.add(&tail, ord).monic());
    }
    out
}

pub(crate) fn index_by_comp(elems: &[Vector], ncomp: usize) -> Vec<Vec<usize>> {
    let mut by_comp = vec![Vec::new(); ncomp];
    for (k, e) in elems.iter().enumerate() {
        if let Some(t) = e.lead() {
            by_comp[t.comp].push(k);
        }
    }
    by_comp
}

/// A reduced Gröbner basis of a submodule together with its order context.
#[derive(Clone, Debug)]
pub struct SubmoduleGb {
    pub twists: Vec<i32>,
    pub block: usize,
    pub elems: Vec<Vector>,
    by_comp: Vec<Vec<usize>>,
}

impl SubmoduleGb {
    pub fn new(ring: &PolyRing, twists: Vec<i32>, block: usize, gens: &[Vector], trusted: &[Vector]) -> SubmoduleGb {
        let ord = ModuleOrder::with_block(ring, &twists, block);
        let elems = groebner_basis_module(gens, trusted, &ord);
        let by_comp = index_by_comp(&elems, twists.len());
        SubmoduleGb { twists, block, elems, by_comp }
    }

    pub fn order<'a>(&'a self, ring: &'a PolyRing) -> ModuleOrder<'a> {
        ModuleOrder::with_block(ring, &self.twists, self.block)
    }

    pub fn reduce(&self, v: &Vector, ring: &PolyRing) -> Vector {
        let ord = self.order(ring);
        reduce_full(v, &self.elems, &self.by_comp, &ord)
    }

    pub fn lead_monomials(&self, comp: usize) -> Vec<Monomial> {
        self.by_comp[comp]
            .iter()
            .map(|&k| self.elems[k].lead().unwrap().mon.clone())
            .collect()
    }

    pub fn is_standard(&self, mon: &Monomial, comp: usize) -> bool {
        !self.by_comp[comp]
            .iter()
            .any(|&k| self.elems[k].lead().unwrap().mon.divides(mon))
    }
}

/// Reduced Gröbner basis of an ideal, sorted by increasing leading monomial.
pub fn groebner_basis(gens: &[Polynomial], ring: &PolyRing) -> Vec<Polynomial> {
    let tw = [0];
    let ord = ModuleOrder::new(ring, &tw);
    let vecs: Vec<Vector> = gens
        .iter()
        .map(|p| Vector::from_polys([p], 0, &ord))
        .collect();
    groebner_basis_module(&vecs, &[], &ord)
        .into_iter()
        .map(|v| v.to_polys(0, 1, ring).pop().unwrap())
        .collect()
}

/// Remainder of `f` modulo the Gröbner basis `gb`.
pub fn normal_form(f: &Polynomial, gb: &[Polynomial], ring: &PolyRing) -> Polynomial {
    let tw = [0];
    let ord = ModuleOrder::new(ring, &tw);
    let elems: Vec<Vector> = gb.iter().map(|p| Vector::from_polys([p], 0, &ord)).collect();
    let by_comp = index_by_comp(&elems, 1);
    let v = Vector::from_polys([f], 0, &ord);
    reduce_full(&v, &elems, &by_comp, &ord)
        .to_polys(0, 1, ring)
        .pop()
        .unwrap()
}

/// S-polynomial of two polynomials.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, ring: &PolyRing) -> Polynomial {
    let (fm, fc) = f.leading().expect("nonzero");
    let (gm, gc) = g.leading().expect("nonzero");
    let l = fm.lcm(gm);
    let a = f.mul_term(&l.div(fm), gc);
    let b = g.mul_term(&l.div(gm), fc);
    a.sub(&b, ring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Field;

    fn parse(ring: &PolyRing, s: &str) -> Polynomial {
        crate::algebra::parse_polynomial(s, ring).unwrap()
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let r = PolyRing::new(Field::Rationals, &["x", "y", "z"]).unwrap();
        let gens: Vec<_> = ["y^2", "y*z", "z^2"].iter().map(|s| parse(&r, s)).collect();
        let gb = groebner_basis(&gens, &r);
        let mut want = gens.clone();
        want.sort_by(|a, b| r.cmp_monomials(&a.terms[0].0, &b.terms[0].0));
        assert_eq!(gb, want);
    }

    #[test]
    fn normal_form_examples() {
        let r = PolyRing::new(Field::Rationals, &["x", "y"]).unwrap();
        let gb = groebner_basis(&[parse(&r, "y")], &r);
        assert!(normal_form(&parse(&r, "y"), &gb, &r).is_zero());
        assert_eq!(normal_form(&parse(&r, "x^2 + y"), &gb, &r), parse(&r, "x^2"));
    }

    #[test]
    fn buchberger_criterion_holds() {
        let r = PolyRing::new(Field::Prime(101), &["x", "y"]).unwrap();
        let gb = groebner_basis(&[parse(&r, "x^2 - y^2"), parse(&r, "x*y")], &r);
        for a in &gb {
            for b in &gb {
                let s = s_polynomial(a, b, &r);
                assert!(normal_form(&s, &gb, &r).is_zero());
            }
        }
        // y^3 is in the ideal: y*(x^2-y^2) - x*(xy) = -y^3
        assert!(normal_form(&parse(&r, "y^3"), &gb, &r).is_zero());
    }

    #[test]
    fn generator_order_does_not_matter() {
        let r = PolyRing::new(Field::Prime(101), &["x", "y", "z"]).unwrap();
        let a = vec![parse(&r, "x^2 - y*z"), parse(&r, "x*y - z^2"), parse(&r, "y^2 - x*z")];
        let mut b = a.clone();
        b.reverse();
        assert_eq!(groebner_basis(&a, &r), groebner_basis(&b, &r));
    }
}
