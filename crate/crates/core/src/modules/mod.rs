//! Finitely presented graded modules `coker(F_1 -> F_0)` over a quotient ring.

pub mod hilbert;
pub mod homology;
pub mod iso;
pub mod rep;
pub mod resolution;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::algebra::field::Scalar;
use crate::algebra::groebner::SubmoduleGb;
use crate::algebra::matrix::PolyMatrix;
use crate::algebra::poly::{Monomial, Polynomial};
use crate::algebra::ring::{ensure_same, Ring};
use crate::algebra::syzygy::{minimal_columns, syzygies};
use crate::algebra::vector::{ModuleOrder, Vector};
use crate::error::{Error, Result};

pub use hilbert::{HilbertSeries, LaurentPoly};

/// `coker(rels : ⊕ R(-c_j) -> ⊕ R(-gens_i))`.
#[derive(Clone)]
pub struct GradedModule {
    pub ring: Ring,
    gens: Vec<i32>,
    rels: PolyMatrix,
    gb: Arc<OnceLock<SubmoduleGb>>,
}

impl std::fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GradedModule(gens={:?}, rels={}x{})", self.gens, self.rels.rows(), self.rels.cols())
    }
}

/// A degree-0 homomorphism, given by the images of the source generators.
#[derive(Clone, Debug)]
pub struct Morphism {
    pub source: GradedModule,
    pub target: GradedModule,
    /// Target generators by source generators.
    pub matrix: PolyMatrix,
}

impl GradedModule {
    pub fn new(ring: Ring, rels: PolyMatrix) -> Result<GradedModule> {
        rels.check_homogeneous(ring.poly())?;
        let rels = rels.reduce_mod(&ring);
        Ok(GradedModule::from_parts(ring, rels.row_twists.clone(), rels))
    }

    fn from_parts(ring: Ring, gens: Vec<i32>, rels: PolyMatrix) -> GradedModule {
        debug_assert_eq!(gens, rels.row_twists);
        GradedModule { ring, gens, rels, gb: Arc::new(OnceLock::new()) }
    }

    /// Cokernel of a matrix given by rows of polynomials, inferring relation degrees.
    pub fn coker(ring: Ring, gens: Vec<i32>, rows: Vec<Vec<Polynomial>>) -> Result<GradedModule> {
        let m = PolyMatrix::from_rows_infer(ring.poly(), gens, rows)?;
        GradedModule::new(ring, m)
    }

    pub fn free(ring: Ring, twists: Vec<i32>) -> GradedModule {
        let rels = PolyMatrix::zero(twists.clone(), Vec::new());
        GradedModule::from_parts(ring, twists, rels)
    }

    pub fn zero(ring: Ring) -> GradedModule {
        GradedModule::free(ring, Vec::new())
    }

    /// `R / J` for homogeneous `J = (gens)`.
    pub fn cyclic(ring: Ring, ideal: &[Polynomial]) -> Result<GradedModule> {
        let row: Vec<Polynomial> = ideal.iter().map(|p| ring.reduce(p)).filter(|p| !p.is_zero()).collect();
        if row.is_empty() {
            return Ok(GradedModule::free(ring, vec![0]));
        }
        GradedModule::coker(ring, vec![0], vec![row])
    }

    /// The residue field `R / m`.
    pub fn residue_field(ring: Ring) -> GradedModule {
        let vars = ring.variables();
        GradedModule::cyclic(ring, &vars).expect("variables are homogeneous")
    }

    /// The ideal `J = (gens)` as a module, generated in the degrees of the `gens`.
    pub fn ideal(ring: Ring, ideal: &[Polynomial]) -> Result<GradedModule> {
        let pr = ring.poly();
        let gens: Vec<Polynomial> = ideal.iter().map(|p| ring.reduce(p)).filter(|p| !p.is_zero()).collect();
        for g in &gens {
            if !g.is_homogeneous(pr) {
                return Err(Error::NotHomogeneous(g.format(pr)));
            }
        }
        if gens.is_empty() {
            return Ok(GradedModule::zero(ring));
        }
        let twists: Vec<i32> = gens.iter().map(|g| g.degree(pr).unwrap()).collect();
        let a = PolyMatrix::from_rows(vec![0], twists, vec![gens]);
        let rels = syzygies(&a, &ring);
        GradedModule::new(ring, rels)
    }

    pub fn gens(&self) -> &[i32] {
        &self.gens
    }

    pub fn rels(&self) -> &PolyMatrix {
        &self.rels
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn is_free(&self) -> bool {
        self.rels.is_zero()
    }

    /// `M(s)`, with `M(s)_d = M_{s+d}`.
    pub fn twist(&self, s: i32) -> GradedModule {
        let rels = self.rels.twisted(-s);
        GradedModule::from_parts(self.ring.clone(), rels.row_twists.clone(), rels)
    }

    pub fn direct_sum(&self, other: &GradedModule) -> Result<GradedModule> {
        ensure_same(&self.ring, &other.ring)?;
        let rels = self.rels.block_diag(&other.rels);
        Ok(GradedModule::from_parts(self.ring.clone(), rels.row_twists.clone(), rels))
    }

    /// `M^n`.
    pub fn power(&self, n: usize) -> GradedModule {
        let mut out = GradedModule::zero(self.ring.clone());
        for _ in 0..n {
            out = out.direct_sum(self).unwrap();
        }
        out
    }

    /// `⊕_s M(-s)` over the given shifts.
    pub fn sum_of_shifts(&self, shifts: &[i32]) -> GradedModule {
        let mut out = GradedModule::zero(self.ring.clone());
        for &s in shifts {
            out = out.direct_sum(&self.twist(-s)).unwrap();
        }
        out
    }

    /// Presentation Gröbner basis of the relation module.
    pub fn gb(&self) -> &SubmoduleGb {
        self.gb.get_or_init(|| {
            let pr = self.ring.poly();
            let ord = ModuleOrder::new(pr, &self.gens);
            let cols: Vec<Vector> = (0..self.rels.cols()).map(|j| self.rels.column_vector(j, 0, &ord)).collect();
            let trusted = self.ring.ideal_vectors(self.gens.len(), &ord);
            SubmoduleGb::new(pr, self.gens.clone(), 0, &cols, &trusted)
        })
    }

    pub fn order(&self) -> ModuleOrder<'_> {
        ModuleOrder::new(self.ring.poly(), &self.gens)
    }

    pub fn vector(&self, coords: &[Polynomial]) -> Vector {
        Vector::from_polys(coords.iter(), 0, &self.order())
    }

    /// Normal form of an element of the free cover.
    pub fn normal_form(&self, v: &Vector) -> Vector {
        self.gb().reduce(v, self.ring.poly())
    }

    pub fn normal_form_polys(&self, coords: &[Polynomial]) -> Vec<Polynomial> {
        let nf = self.normal_form(&self.vector(coords));
        nf.to_polys(0, self.gens.len(), self.ring.poly())
    }

    pub fn is_zero_element(&self, coords: &[Polynomial]) -> bool {
        self.normal_form(&self.vector(coords)).is_zero()
    }

    /// Standard basis `(monomial, generator)` of the degree-`d` part.
    pub fn basis(&self, d: i32) -> Vec<(Monomial, usize)> {
        let pr = self.ring.poly();
        let gb = self.gb();
        let mut out = Vec::new();
        for (c, &t) in self.gens.iter().enumerate() {
            for m in pr.monomials_of_degree(d - t) {
                if gb.is_standard(&m, c) {
                    out.push((m, c));
                }
            }
        }
        out
    }

    pub fn dim(&self, d: i32) -> usize {
        self.basis(d).len()
    }

    /// Coordinates of an element of degree `d` in the standard basis of that degree.
    pub fn coordinates(&self, v: &Vector, index: &HashMap<(Monomial, usize), usize>, len: usize) -> Vec<Scalar> {
        let nf = self.normal_form(v);
        let mut out = vec![self.ring.poly().field.zero(); len];
        for t in nf.terms {
            let k = index[&(t.mon, t.comp)];
            out[k] = t.coef;
        }
        out
    }

    pub fn basis_index(basis: &[(Monomial, usize)]) -> HashMap<(Monomial, usize), usize> {
        basis.iter().cloned().enumerate().map(|(k, b)| (b, k)).collect()
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        let pr = self.ring.poly();
        let weights: Vec<i32> = pr.weights.iter().map(|&w| w as i32).collect();
        let gb = self.gb();
        let mut num = LaurentPoly::zero();
        for (c, &t) in self.gens.iter().enumerate() {
            let n = hilbert::monomial_quotient_numerator(&gb.lead_monomials(c), pr);
            num = num.add(&n.shift(t));
        }
        HilbertSeries { numerator: num, weights }
    }

    pub fn is_zero(&self) -> bool {
        self.hilbert_series().is_zero()
    }

    pub fn krull_dim(&self) -> i32 {
        self.hilbert_series().krull_dim()
    }

    pub fn is_finite_length(&self) -> bool {
        self.krull_dim() <= 0
    }

    /// Lowest and highest nonzero degree, for finite length modules.
    pub fn degree_range(&self) -> Option<(i32, i32)> {
        let p = self.hilbert_series().as_polynomial()?;
        if p.is_zero() {
            return None;
        }
        Some((p.low, p.high()))
    }

    /// Whether `m M = 0`.
    pub fn killed_by_maximal_ideal(&self) -> bool {
        let pr = self.ring.poly();
        (0..self.gens.len()).all(|c| {
            (0..pr.nvars()).all(|i| {
                let v = Vector::unit(c, pr.nvars(), pr.field.one()).mul_monomial(&Monomial::var(pr.nvars(), i), &pr.field.one());
                self.normal_form(&v).is_zero()
            })
        })
    }

    /// The same presentation read over a quotient ring `S` of `R` (`M ⊗_R S`).
    pub fn base_change(&self, s: &Ring) -> Result<GradedModule> {
        if !s.is_quotient_of(&self.ring) {
            return Err(Error::RingMismatch(format!(
                "{} is not a quotient of {}",
                s.describe(),
                self.ring.describe()
            )));
        }
        GradedModule::new(s.clone(), self.rels.clone())
    }

    /// `M` viewed as a module over `Q`, where `R` is a quotient of `Q`.
    pub fn restrict_to(&self, q: &Ring) -> Result<GradedModule> {
        if !self.ring.is_quotient_of(q) {
            return Err(Error::RingMismatch(format!(
                "{} is not a quotient of {}",
                self.ring.describe(),
                q.describe()
            )));
        }
        let pr = self.ring.poly();
        let n = self.gens.len();
        let mut rels = self.rels.clone();
        for g in self.ring.gb() {
            if q.reduce(g).is_zero() {
                continue;
            }
            let d = g.degree(pr).unwrap();
            for c in 0..n {
                let mut col = PolyMatrix::zero(self.gens.clone(), vec![self.gens[c] + d]);
                col.set(c, 0, g.clone());
                rels = rels.hconcat(&col);
            }
        }
        GradedModule::new(q.clone(), rels)
    }

    /// The same module over another quotient `S` of the ambient polynomial ring, which must be
    /// annihilated by the defining ideal of `S`.
    pub fn transport(&self, s: &Ring) -> Result<GradedModule> {
        if self.ring.same_as(s) {
            return Ok(self.clone());
        }
        let q = self.ring.ambient_ring();
        if !s.is_quotient_of(&q) {
            return Err(Error::RingMismatch(format!("{} and {} have different ambient rings", self.ring.describe(), s.describe())));
        }
        let pr = self.ring.poly();
        for g in s.gb() {
            for c in 0..self.gens.len() {
                let coords: Vec<Polynomial> =
                    (0..self.gens.len()).map(|k| if k == c { g.clone() } else { pr.zero() }).collect();
                if !self.is_zero_element(&coords) {
                    return Err(Error::Precondition(format!(
                        "{} does not annihilate the module",
                        g.format(pr)
                    )));
                }
            }
        }
        self.restrict_to(&q)?.base_change(s)
    }

    /// Minimal presentation with an isomorphism onto `self`.
    pub fn minimal_presentation(&self) -> (GradedModule, Morphism) {
        let ring = &self.ring;
        let pr = ring.poly();
        let mut rels = self.rels.clone();
        let mut kept: Vec<usize> = (0..self.gens.len()).collect();
        // Eliminate generators that appear with a unit coefficient in some relation.
        loop {
            let mut pivot = None;
            'search: for j in 0..rels.cols() {
                for i in 0..rels.rows() {
                    if let Some(c) = rels.get(i, j).as_constant() {
                        if !c.is_zero() {
                            pivot = Some((i, j, c.clone()));
                            break 'search;
                        }
                    }
                }
            }
            let Some((i, j, c)) = pivot else { break };
            let cinv = c.inv();
            let pivot_col = rels.column(j);
            let mut next = PolyMatrix::zero(
                rels.row_twists.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, &t)| t).collect(),
                rels.col_twists.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, &t)| t).collect(),
            );
            let mut jj = 0;
            for l in 0..rels.cols() {
                if l == j {
                    continue;
                }
                let factor = rels.get(i, l).scale(&cinv);
                let mut ii = 0;
                for k in 0..rels.rows() {
                    if k == i {
                        continue;
                    }
                    let v = rels.get(k, l).sub(&pivot_col[k].mul(&factor, pr), pr);
                    next.set(ii, jj, ring.reduce(&v));
                    ii += 1;
                }
                jj += 1;
            }
            rels = next;
            kept.remove(i);
        }
        let cols: Vec<Vec<Polynomial>> = (0..rels.cols()).map(|j| rels.column(j)).collect();
        let mut rels = minimal_columns(ring, &rels.row_twists.clone(), &cols);
        // Sort generators by degree.
        let mut perm: Vec<usize> = (0..kept.len()).collect();
        perm.sort_by_key(|&k| (rels.row_twists[k], k));
        rels = rels.select_rows(&perm);
        let kept: Vec<usize> = perm.iter().map(|&k| kept[k]).collect();
        let min = GradedModule::from_parts(ring.clone(), rels.row_twists.clone(), rels);
        let mut inc = PolyMatrix::zero(self.gens.clone(), min.gens.clone());
        for (k, &old) in kept.iter().enumerate() {
            inc.set(old, k, pr.one());
        }
        let witness = Morphism { source: min.clone(), target: self.clone(), matrix: inc };
        (min, witness)
    }

    pub fn minimize(&self) -> GradedModule {
        self.minimal_presentation().0
    }

    /// Number of minimal generators in each degree.
    pub fn generator_degrees(&self) -> Vec<i32> {
        self.minimize().gens
    }

    /// Multiplication by a homogeneous ring element, as a morphism `M(-deg f) -> M`.
    pub fn multiplication(&self, f: &Polynomial) -> Morphism {
        let pr = self.ring.poly();
        let d = f.degree(pr).unwrap_or(0);
        let mut m = PolyMatrix::zero(self.gens.clone(), self.gens.iter().map(|t| t + d).collect());
        for i in 0..self.gens.len() {
            m.set(i, i, self.ring.reduce(f));
        }
        Morphism { source: self.twist(-d), target: self.clone(), matrix: m }
    }
}

impl Morphism {
    /// Checks that relations of the source map into relations of the target.
    pub fn is_well_defined(&self) -> bool {
        let ring = &self.source.ring;
        let img = self.matrix.mul(self.source.rels(), ring);
        (0..img.cols()).all(|j| self.target.is_zero_element(&img.column(j)))
    }

    /// Whether the map is onto (every target generator is hit modulo relations).
    pub fn is_surjective(&self) -> bool {
        let ring = &self.source.ring;
        let a = self.matrix.hconcat(self.target.rels());
        let n = self.target.num_gens();
        (0..n).all(|i| {
            let e: Vec<Polynomial> = (0..n)
                .map(|k| if k == i { ring.poly().one() } else { ring.poly().zero() })
                .collect();
            crate::algebra::syzygy::in_image(&a, &e, ring)
        })
    }

    pub fn compose(&self, first: &Morphism) -> Morphism {
        Morphism {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&first.matrix, &self.source.ring),
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::field::Field;
    use crate::algebra::parse_polynomial;
    use crate::algebra::poly::PolyRing;
    use crate::algebra::ring::QuotientRing;

    pub(crate) fn ring(vars: &[&str], ideal: &[&str]) -> Ring {
        let p = Arc::new(PolyRing::new(Field::Rationals, vars).unwrap());
        let gens = ideal.iter().map(|s| parse_polynomial(s, &p).unwrap()).collect();
        QuotientRing::new(p, gens).unwrap()
    }

    #[test]
    fn residue_field_series() {
        let r = ring(&["x", "y"], &[]);
        let k = GradedModule::residue_field(r.clone());
        assert_eq!(k.hilbert_series().length(), Some(1));
        assert_eq!(k.krull_dim(), 0);
        assert!(k.killed_by_maximal_ideal());
        let free = GradedModule::free(r, vec![0]);
        assert_eq!(free.krull_dim(), 2);
        assert_eq!(free.dim(3), 4);
    }

    #[test]
    fn minimal_presentation_prunes_units() {
        let r = ring(&["x", "y"], &[]);
        let e = |s: &str| parse_polynomial(s, r.poly()).unwrap();
        // Two generators of degree 0 and 1, relation e1 - x e0 makes e1 redundant.
        let m = GradedModule::coker(r.clone(), vec![0, 1], vec![vec![e("-x"), e("y")], vec![e("1"), e("0")]]).unwrap();
        let (min, w) = m.minimal_presentation();
        assert_eq!(min.gens(), &[0]);
        assert_eq!(min.rels().cols(), 1);
        assert_eq!(min.hilbert_series(), m.hilbert_series());
        assert!(w.is_well_defined());
        assert!(w.is_surjective());
    }

    #[test]
    fn dims_agree_with_standard_basis() {
        let r = ring(&["x", "y", "z"], &["y^2", "y*z", "z^2"]);
        let m = GradedModule::ideal(r.clone(), &[parse_polynomial("x", r.poly()).unwrap(), parse_polynomial("y", r.poly()).unwrap()]).unwrap();
        let hs = m.hilbert_series();
        for d in 0..6 {
            assert_eq!(hs.dim_in_degree(d), m.dim(d) as i64);
        }
    }
}
