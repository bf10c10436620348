//! Kernels, lifts and minimal generating sets for graded maps of free modules over `P/I`.

use super::groebner::{index_by_comp, reduce_full, SubmoduleGb};
use super::matrix::PolyMatrix;
use super::poly::Polynomial;
use super::ring::QuotientRing;
use super::vector::{ModuleOrder, Vector};

/// Gröbner basis of the graph of `A : F_s -> F_r` (block order eliminating the target),
/// reused for kernels and repeated lifting through `A`.
pub struct Lifter<'r> {
    ring: &'r QuotientRing,
    rows: usize,
    cols: usize,
    gb: SubmoduleGb,
}

impl<'r> Lifter<'r> {
    pub fn new(a: &PolyMatrix, ring: &'r QuotientRing) -> Lifter<'r> {
        let pr = ring.poly();
        let (r, s) = (a.rows(), a.cols());
        let mut twists = a.row_twists.clone();
        twists.extend_from_slice(&a.col_twists);
        let ord = ModuleOrder::with_block(pr, &twists, r);
        let one = pr.field.one();
        let gens: Vec<Vector> = (0..s)
            .map(|j| {
                let v = a.column_vector(j, 0, &ord);
                v.add(&Vector::unit(r + j, pr.nvars(), one.clone()), &ord)
            })
            .collect();
        let trusted = ring.ideal_vectors(r + s, &ord);
        let gb = SubmoduleGb::new(pr, twists.clone(), r, &gens, &trusted);
        Lifter { ring, rows: r, cols: s, gb }
    }

    /// Generators of `ker A` (not necessarily minimal), reduced modulo the ideal.
    pub fn kernel_vectors(&self) -> Vec<Vec<Polynomial>> {
        let pr = self.ring.poly();
        let mut out = Vec::new();
        for g in &self.gb.elems {
            if g.lead().unwrap().comp < self.rows {
                continue;
            }
            let x: Vec<Polynomial> = g
                .to_polys(self.rows, self.rows + self.cols, pr)
                .iter()
                .map(|p| self.ring.reduce(p))
                .collect();
            if x.iter().any(|p| !p.is_zero()) {
                out.push(x);
            }
        }
        out
    }

    /// Some `x` with `A x = b`, if one exists.
    pub fn solve(&self, b: &[Polynomial]) -> Option<Vec<Polynomial>> {
        assert_eq!(b.len(), self.rows);
        let pr = self.ring.poly();
        let ord = self.gb.order(pr);
        let v = Vector::from_polys(b.iter(), 0, &ord);
        let nf = self.gb.reduce(&v, pr);
        if nf.lead().is_some_and(|t| t.comp < self.rows) {
            return None;
        }
        Some(
            nf.to_polys(self.rows, self.rows + self.cols, pr)
                .iter()
                .map(|p| self.ring.reduce(&p.neg()))
                .collect(),
        )
    }

    /// Solves `A X = B` column by column; the result has `B`'s column twists.
    pub fn solve_matrix(&self, b: &PolyMatrix, source_twists: &[i32]) -> Option<PolyMatrix> {
        let mut out = PolyMatrix::zero(source_twists.to_vec(), b.col_twists.clone());
        for j in 0..b.cols() {
            let x = self.solve(&b.column(j))?;
            for (i, p) in x.into_iter().enumerate() {
                out.set(i, j, p);
            }
        }
        Some(out)
    }
}

/// Minimal homogeneous generators of `ker A`, as the columns of a matrix into `A`'s source.
pub fn syzygies(a: &PolyMatrix, ring: &QuotientRing) -> PolyMatrix {
    if a.cols() == 0 {
        return PolyMatrix::zero(Vec::new(), Vec::new());
    }
    let pr = ring.poly();
    let source = a.col_twists.clone();
    let cols: Vec<Vec<Polynomial>> = if a.rows() == 0 {
        (0..a.cols())
            .map(|j| (0..a.cols()).map(|i| if i == j { pr.one() } else { pr.zero() }).collect())
            .collect()
    } else {
        Lifter::new(a, ring).kernel_vectors()
    };
    let k = minimal_columns(ring, &source, &cols);
    debug_assert!(a.mul(&k, ring).is_zero());
    k
}

/// Selects a minimal generating set of the submodule of `⊕ R(-t)` spanned by `cols`, returned
/// as a matrix sorted by degree.
pub fn minimal_columns(ring: &QuotientRing, twists: &[i32], cols: &[Vec<Polynomial>]) -> PolyMatrix {
    let pr = ring.poly();
    let ord = ModuleOrder::new(pr, twists);
    let vecs: Vec<Vector> = cols
        .iter()
        .map(|c| {
            let red: Vec<Polynomial> = c.iter().map(|p| ring.reduce(p)).collect();
            Vector::from_polys(red.iter(), 0, &ord)
        })
        .collect();
    let keep = minimal_generators(ring, twists, &vecs);
    let degs: Vec<i32> = keep
        .iter()
        .map(|&k| vecs[k].homogeneous_degree(&ord).flatten().expect("homogeneous nonzero generator"))
        .collect();
    let kept: Vec<Vector> = keep.iter().map(|&k| vecs[k].clone()).collect();
    PolyMatrix::from_vectors(pr, twists.to_vec(), degs, &kept, 0)
}

/// A minimal generating set of the maximal homogeneous ideal, chosen among the variables.
pub fn maximal_ideal_generators(ring: &QuotientRing) -> Vec<Polynomial> {
    let ord = ModuleOrder::new(ring.poly(), &[0]);
    let vars = ring.variables();
    let vecs: Vec<Vector> = vars.iter().map(|v| Vector::from_polys(std::iter::once(v), 0, &ord)).collect();
    let mut keep = minimal_generators(ring, &[0], &vecs);
    keep.sort_unstable();
    keep.into_iter().map(|i| vars[i].clone()).collect()
}

/// Indices of a minimal generating subset of the homogeneous vectors `gens` (in the free
/// module with the given twists, modulo the ring's ideal), ordered by degree then index.
pub fn minimal_generators(ring: &QuotientRing, twists: &[i32], gens: &[Vector]) -> Vec<usize> {
    let pr = ring.poly();
    let ord = ModuleOrder::new(pr, twists);
    let trusted = ring.ideal_vectors(twists.len(), &ord);
    let mut cands: Vec<(i32, usize, Vector)> = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        let g = reduce_by(&g.reorder(&ord), &trusted, &ord);
        if let Some(Some(d)) = g.homogeneous_degree(&ord) {
            cands.push((d, k, g));
        } else if !g.is_zero() {
            panic!("minimal_generators: inhomogeneous generator");
        }
    }
    cands.sort_by_key(|c| (c.0, c.1));
    let mut kept: Vec<usize> = Vec::new();
    let mut kept_vecs: Vec<Vector> = Vec::new();
    let mut i = 0;
    while i < cands.len() {
        let d = cands[i].0;
        let mut e = i;
        while e < cands.len() && cands[e].0 == d {
            e += 1;
        }
        let gb = SubmoduleGb::new(pr, twists.to_vec(), 0, &kept_vecs, &trusted);
        // Linear echelon of normal forms in this degree, keyed by leading term.
        let mut echelon: Vec<Vector> = Vec::new();
        for c in &cands[i..e] {
            let mut nf = gb.reduce(&c.2, pr);
            loop {
                let Some(lt) = nf.lead().cloned() else { break };
                match echelon.iter().find(|r| {
                    let t = r.lead().unwrap();
                    t.mon == lt.mon && t.comp == lt.comp
                }) {
                    Some(r) => nf = nf.axpy(&-&lt.coef, None, r, &ord),
                    None => break,
                }
            }
            if !nf.is_zero() {
                echelon.push(nf.monic());
                kept.push(c.1);
                kept_vecs.push(c.2.clone());
            }
        }
        i = e;
    }
    kept
}

fn reduce_by(v: &Vector, basis: &[Vector], ord: &ModuleOrder) -> Vector {
    if basis.is_empty() {
        return v.clone();
    }
    let by = index_by_comp(basis, ord.twists.len());
    reduce_full(v, basis, &by, ord)
}

/// Whether `b` (a column over `A`'s target) lies in the image of `A`.
pub fn in_image(a: &PolyMatrix, b: &[Polynomial], ring: &QuotientRing) -> bool {
    if b.iter().all(|p| ring.reduce(p).is_zero()) {
        return true;
    }
    if a.cols() == 0 {
        return false;
    }
    Lifter::new(a, ring).solve(b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Field;
    use crate::algebra::parse_polynomial;
    use crate::algebra::poly::PolyRing;
    use std::sync::Arc;

    fn setup(vars: &[&str], ideal: &[&str]) -> crate::algebra::Ring {
        let p = Arc::new(PolyRing::new(Field::Rationals, vars).unwrap());
        let gens = ideal.iter().map(|s| parse_polynomial(s, &p).unwrap()).collect();
        QuotientRing::new(p, gens).unwrap()
    }

    #[test]
    fn koszul_syzygy_of_two_variables() {
        let r = setup(&["x", "y"], &[]);
        let e = |s: &str| parse_polynomial(s, r.poly()).unwrap();
        let a = PolyMatrix::from_rows(vec![0], vec![1, 1], vec![vec![e("x"), e("y")]]);
        let k = syzygies(&a, &r);
        assert_eq!(k.cols(), 1);
        assert_eq!(k.col_twists, vec![2]);
        assert!(a.mul(&k, &r).is_zero());
    }

    #[test]
    fn annihilator_of_x_in_dual_numbers() {
        let r = setup(&["x"], &["x^2"]);
        let e = |s: &str| parse_polynomial(s, r.poly()).unwrap();
        let a = PolyMatrix::from_rows(vec![0], vec![1], vec![vec![e("x")]]);
        let k = syzygies(&a, &r);
        assert_eq!(k.col_twists, vec![2]);
        assert_eq!(k.get(0, 0), &e("x"));
    }

    #[test]
    fn lift_and_membership() {
        let r = setup(&["x", "y"], &[]);
        let e = |s: &str| parse_polynomial(s, r.poly()).unwrap();
        let a = PolyMatrix::from_rows(vec![0], vec![1, 1], vec![vec![e("x"), e("y")]]);
        let l = Lifter::new(&a, &r);
        let x = l.solve(&[e("x^2 + 3*x*y")]).unwrap();
        let b = PolyMatrix::from_rows(vec![1, 1], vec![2], vec![vec![x[0].clone()], vec![x[1].clone()]]);
        assert_eq!(a.mul(&b, &r).get(0, 0), &e("x^2 + 3*x*y"));
        assert!(l.solve(&[e("1")]).is_none());
        assert!(!in_image(&a, &[e("1")], &r));
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let r = setup(&["x", "y"], &[]);
        let e = |s: &str| parse_polynomial(s, r.poly()).unwrap();
        let cols = vec![vec![e("x")], vec![e("x*y")], vec![e("y")], vec![e("x + y")]];
        let m = minimal_columns(&r, &[0], &cols);
        assert_eq!(m.cols(), 2);
        assert_eq!(m.col_twists, vec![1, 1]);
    }
}
