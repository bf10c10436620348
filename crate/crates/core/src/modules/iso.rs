//! Degree-0 homomorphisms, isomorphism tests with witnesses, and decompositions `H ≅ ⊕ M(-s)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{GradedModule, LaurentPoly, Morphism};
use crate::algebra::field::{Field, Scalar};
use crate::algebra::linalg::DenseMatrix;
use crate::algebra::matrix::PolyMatrix;
use crate::algebra::poly::Polynomial;
use crate::algebra::ring::ensure_same;
use crate::algebra::syzygy::Lifter;
use crate::algebra::vector::Vector;
use crate::error::Result;

/// Search controls for isomorphism tests.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct IsoOptions {
    /// Number of random combinations tried after the basis elements.
    pub budget: usize,
    pub seed: u64,
    /// Exhaustive search over a finite field is used when it needs at most this many maps.
    pub exhaustive_limit: u64,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions { budget: 64, seed: 0, exhaustive_limit: 20_000 }
    }
}

#[derive(Clone, Debug)]
pub enum IsoOutcome {
    /// A verified isomorphism from the first module to the second.
    Isomorphic(Morphism),
    NotIsomorphic(String),
    Undetermined(String),
}

impl IsoOutcome {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            IsoOutcome::Isomorphic(_) => "isomorphic",
            IsoOutcome::NotIsomorphic(_) => "not_isomorphic",
            IsoOutcome::Undetermined(_) => "undetermined",
        }
    }
}

/// A basis of the degree-0 homomorphisms `M -> N`, as matrices on generators.
pub fn hom_degree0(m: &GradedModule, n: &GradedModule) -> Vec<PolyMatrix> {
    let pr = m.ring.poly();
    let field = pr.field;
    let mut unknowns: Vec<(usize, Polynomial, usize)> = Vec::new();
    for (a, &t) in m.gens().iter().enumerate() {
        for (mon, c) in n.basis(t) {
            unknowns.push((a, pr.monomial(mon, field.one()), c));
        }
    }
    if unknowns.is_empty() {
        return Vec::new();
    }
    let rels = m.rels();
    let ord = n.order();
    let mut rows: Vec<Vec<Scalar>> = vec![Vec::new(); unknowns.len()];
    for j in 0..rels.cols() {
        let d = rels.col_twists[j];
        let basis = n.basis(d);
        if basis.is_empty() {
            continue;
        }
        let index = GradedModule::basis_index(&basis);
        for (k, (a, mon, c)) in unknowns.iter().enumerate() {
            let coef = rels.get(*a, j);
            let v = if coef.is_zero() {
                Vector::zero()
            } else {
                let mut entries = vec![pr.zero(); n.num_gens()];
                entries[*c] = coef.mul(mon, pr);
                Vector::from_polys(entries.iter(), 0, &ord)
            };
            rows[k].extend(n.coordinates(&v, &index, basis.len()));
        }
    }
    let height = rows[0].len();
    let mat = DenseMatrix::from_columns(field, height, &rows);
    mat.nullspace()
        .into_iter()
        .map(|sol| {
            let mut phi = PolyMatrix::zero(n.gens().to_vec(), m.gens().to_vec());
            for (k, (a, mon, c)) in unknowns.iter().enumerate() {
                if sol[k].is_zero() {
                    continue;
                }
                let cur = phi.get(*c, *a).add(&mon.scale(&sol[k]), pr);
                phi.set(*c, *a, cur);
            }
            phi
        })
        .collect()
}

/// Constant coefficients of a map between minimally presented modules: its effect on
/// minimal generators.
fn constant_part(phi: &PolyMatrix, field: Field) -> DenseMatrix {
    let mut out = DenseMatrix::zeros(field, phi.rows(), phi.cols());
    for i in 0..phi.rows() {
        for j in 0..phi.cols() {
            if let Some(c) = phi.get(i, j).as_constant() {
                out.set(i, j, c.clone());
            }
        }
    }
    out
}

fn combine(mats: &[DenseMatrix], coefs: &[Scalar]) -> DenseMatrix {
    let mut out = DenseMatrix::zeros(mats[0].field, mats[0].rows, mats[0].cols);
    for (m, c) in mats.iter().zip(coefs) {
        if c.is_zero() {
            continue;
        }
        for i in 0..m.rows {
            for j in 0..m.cols {
                let v = out.get(i, j) + &(m.get(i, j) * c);
                out.set(i, j, v);
            }
        }
    }
    out
}

fn combine_poly(basis: &[PolyMatrix], coefs: &[Scalar], m: &GradedModule) -> PolyMatrix {
    let pr = m.ring.poly();
    let mut out = PolyMatrix::zero(basis[0].row_twists.clone(), basis[0].col_twists.clone());
    for (b, c) in basis.iter().zip(coefs) {
        if c.is_zero() {
            continue;
        }
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                let v = out.get(i, j).add(&b.get(i, j).scale(c), pr);
                out.set(i, j, v);
            }
        }
    }
    out
}

/// First degree where the two Hilbert series differ.
fn first_difference(m: &GradedModule, n: &GradedModule) -> Option<i32> {
    let a = m.hilbert_series();
    let b = n.hilbert_series();
    if a == b {
        return None;
    }
    let diff = a.sub(&b);
    let lo = diff.numerator.low;
    (lo..lo + 200).find(|&d| a.dim_in_degree(d) != b.dim_in_degree(d))
}

/// Decides whether `M ≅ N` as graded modules (degree-0 isomorphism).
///
/// Equal Hilbert series plus a degree-0 map that is surjective on minimal generators is an
/// isomorphism; candidates are the basis maps, then seeded random combinations, and over a
/// small finite field every map.
pub fn is_isomorphic(m: &GradedModule, n: &GradedModule, opts: IsoOptions) -> Result<IsoOutcome> {
    ensure_same(&m.ring, &n.ring)?;
    let (mm, wm) = m.minimal_presentation();
    let (nm, wn) = n.minimal_presentation();
    let mut gm = mm.gens().to_vec();
    let mut gn = nm.gens().to_vec();
    gm.sort();
    gn.sort();
    if gm != gn {
        return Ok(IsoOutcome::NotIsomorphic(format!(
            "minimal generator degrees differ: {gm:?} vs {gn:?}"
        )));
    }
    if let Some(d) = first_difference(&mm, &nm) {
        return Ok(IsoOutcome::NotIsomorphic(format!("Hilbert functions differ in degree {d}")));
    }
    let field = m.ring.poly().field;
    let assemble = |phi: PolyMatrix| -> Result<IsoOutcome> {
        let core = Morphism { source: mm.clone(), target: nm.clone(), matrix: phi };
        let back = wm.inverse().expect("presentation witness is invertible");
        let full = wn.compose(&core.compose(&back));
        let full = Morphism { source: m.clone(), target: n.clone(), matrix: full.matrix };
        debug_assert!(full.is_well_defined());
        Ok(IsoOutcome::Isomorphic(full))
    };
    if gm.is_empty() {
        return assemble(PolyMatrix::zero(Vec::new(), Vec::new()));
    }
    let basis = hom_degree0(&mm, &nm);
    if basis.is_empty() {
        return Ok(IsoOutcome::NotIsomorphic("no nonzero degree-0 homomorphisms".into()));
    }
    let consts: Vec<DenseMatrix> = basis.iter().map(|b| constant_part(b, field)).collect();
    let full_rank = nm.num_gens();
    let try_coefs = |coefs: &[Scalar]| combine(&consts, coefs).rank() == full_rank;
    let k = basis.len();
    // Basis elements and the all-ones combination.
    for i in 0..k {
        let mut c = vec![field.zero(); k];
        c[i] = field.one();
        if try_coefs(&c) {
            return assemble(combine_poly(&basis, &c, &mm));
        }
    }
    let ones = vec![field.one(); k];
    if try_coefs(&ones) {
        return assemble(combine_poly(&basis, &ones, &mm));
    }
    if let Field::Prime(p) = field {
        let total = (p as u64).checked_pow(k as u32);
        if let Some(total) = total.filter(|&t| t <= opts.exhaustive_limit) {
            for code in 0..total {
                let mut x = code;
                let c: Vec<Scalar> = (0..k)
                    .map(|_| {
                        let v = x % p as u64;
                        x /= p as u64;
                        field.from_i64(v as i64)
                    })
                    .collect();
                if try_coefs(&c) {
                    return assemble(combine_poly(&basis, &c, &mm));
                }
            }
            return Ok(IsoOutcome::NotIsomorphic(
                "no degree-0 homomorphism is surjective (exhaustive search)".into(),
            ));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.budget {
        let c: Vec<Scalar> = (0..k).map(|_| field.from_i64(rng.gen_range(-1000..=1000))).collect();
        if try_coefs(&c) {
            return assemble(combine_poly(&basis, &c, &mm));
        }
    }
    Ok(IsoOutcome::Undetermined(format!(
        "equal Hilbert series and generator degrees, but none of {} candidate maps (seed {}) was surjective",
        k + 1 + opts.budget,
        opts.seed
    )))
}

/// `H ≅ ⊕_j M(-s_j)`.
#[derive(Clone, Debug)]
pub struct PowerDecomposition {
    pub multiplicity: usize,
    /// Sorted shifts `s_j`, one per summand.
    pub shifts: Vec<i32>,
    /// Isomorphism `⊕ M(-s_j) -> H`.
    pub witness: Morphism,
}

#[derive(Clone, Debug)]
pub enum DecomposeOutcome {
    Decomposed(PowerDecomposition),
    NotAPower(String),
    Undetermined(String),
}

impl DecomposeOutcome {
    pub fn decomposition(&self) -> Option<&PowerDecomposition> {
        match self {
            DecomposeOutcome::Decomposed(d) => Some(d),
            _ => None,
        }
    }
}

/// Shifts `s` with `HS(H) = Σ t^s HS(M)`, if the ratio is a polynomial with nonnegative
/// coefficients.
pub fn candidate_shifts(h: &GradedModule, m: &GradedModule) -> Option<Vec<i32>> {
    let hh = h.hilbert_series();
    let hm = m.hilbert_series();
    if hh.is_zero() {
        return Some(Vec::new());
    }
    if hm.is_zero() {
        return None;
    }
    let q: LaurentPoly = hh.ratio(&hm)?;
    if !q.is_nonnegative() {
        return None;
    }
    let mut shifts = Vec::new();
    for (e, c) in q.terms() {
        shifts.extend(std::iter::repeat(e).take(c as usize));
    }
    Some(shifts)
}

/// Decides whether `H` is a direct sum of shifted copies of `M`, with a witness.
pub fn power_decompose(h: &GradedModule, m: &GradedModule, opts: IsoOptions) -> Result<DecomposeOutcome> {
    ensure_same(&h.ring, &m.ring)?;
    let Some(shifts) = candidate_shifts(h, m) else {
        return Ok(DecomposeOutcome::NotAPower(
            "Hilbert series is not a nonnegative combination of shifts".into(),
        ));
    };
    let sum = m.sum_of_shifts(&shifts);
    Ok(match is_isomorphic(&sum, h, opts)? {
        IsoOutcome::Isomorphic(w) => DecomposeOutcome::Decomposed(PowerDecomposition {
            multiplicity: shifts.len(),
            shifts,
            witness: w,
        }),
        IsoOutcome::NotIsomorphic(why) => DecomposeOutcome::NotAPower(why),
        IsoOutcome::Undetermined(why) => DecomposeOutcome::Undetermined(why),
    })
}

impl Morphism {
    /// Inverse of an isomorphism, by lifting each target generator through the map.
    pub fn inverse(&self) -> Option<Morphism> {
        let ring = &self.source.ring;
        let pr = ring.poly();
        let n = self.target.num_gens();
        let s = self.source.num_gens();
        let a = self.matrix.hconcat(self.target.rels());
        let mut inv = PolyMatrix::zero(self.source.gens().to_vec(), self.target.gens().to_vec());
        if n == 0 {
            return Some(Morphism { source: self.target.clone(), target: self.source.clone(), matrix: inv });
        }
        let lifter = Lifter::new(&a, ring);
        for b in 0..n {
            let e: Vec<Polynomial> = (0..n).map(|k| if k == b { pr.one() } else { pr.zero() }).collect();
            let x = lifter.solve(&e)?;
            for i in 0..s {
                inv.set(i, b, x[i].clone());
            }
        }
        Some(Morphism { source: self.target.clone(), target: self.source.clone(), matrix: inv })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;
    use crate::modules::tests::ring;

    #[test]
    fn maximal_ideal_mod_x_times_maximal_ideal() {
        // m / x m over k[x,y,z]/(y^2,yz,z^2) is k(-1)^3.
        let r = ring(&["x", "y", "z"], &["y^2", "y*z", "z^2"]);
        let e = |s: &str| parse_polynomial(s, r.poly()).unwrap();
        let m = GradedModule::coker(
            r.clone(),
            vec![1, 1, 1],
            vec![
                vec![e("x"), e("y"), e("z"), e("0"), e("0"), e("0"), e("0"), e("0"), e("0")],
                vec![e("0"), e("0"), e("0"), e("x"), e("y"), e("z"), e("0"), e("0"), e("0")],
                vec![e("0"), e("0"), e("0"), e("0"), e("0"), e("0"), e("x"), e("y"), e("z")],
            ],
        )
        .unwrap();
        let k = GradedModule::residue_field(r.clone());
        match power_decompose(&m, &k, IsoOptions::default()).unwrap() {
            DecomposeOutcome::Decomposed(d) => {
                assert_eq!(d.multiplicity, 3);
                assert_eq!(d.shifts, vec![1, 1, 1]);
                assert!(d.witness.is_well_defined());
                assert!(d.witness.is_surjective());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_isomorphic_with_equal_series() {
        // Same Hilbert series, different annihilators.
        let r = ring(&["x", "y"], &[]);
        let e = |s: &str| parse_polynomial(s, r.poly()).unwrap();
        let a = GradedModule::cyclic(r.clone(), &[e("x^2")]).unwrap();
        let b = GradedModule::cyclic(r.clone(), &[e("x*y")]).unwrap();
        assert_eq!(a.hilbert_series(), b.hilbert_series());
        let out = is_isomorphic(&a, &b, IsoOptions::default()).unwrap();
        assert!(!out.is_iso());
    }

    #[test]
    fn twisted_copies_are_recognised() {
        let r = ring(&["x"], &["x^2"]);
        let free = GradedModule::free(r.clone(), vec![0]);
        let h = GradedModule::free(r.clone(), vec![2, 0]);
        let d = power_decompose(&h, &free, IsoOptions::default()).unwrap();
        assert_eq!(d.decomposition().unwrap().shifts, vec![0, 2]);
    }
}
