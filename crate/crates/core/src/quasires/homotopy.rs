//! Homotopies `β^n_i : F_i -> F_{i+1}` with `f^n = ∂β^n + β^n∂`, and the resulting splitting
//! `H_i(F ⊗ Q/(f^n)) ≅ H_i(F) ⊕ H_{i-1}(F)(-n deg f)` for `i < n`.

use serde::Serialize;

use super::{certify, CertKind, QuasiResolutionCertificate};
use crate::algebra::matrix::PolyMatrix;
use crate::algebra::poly::Polynomial;
use crate::algebra::syzygy::Lifter;
use crate::complexes::{is_regular_sequence, ChainComplex, HomologyTable};
use crate::error::{Error, Result};
use crate::modules::iso::{is_isomorphic, IsoOptions, IsoOutcome};
use crate::modules::GradedModule;

#[derive(Clone, Debug)]
pub struct HomotopySystem {
    pub f: Polynomial,
    pub n: u32,
    /// `betas[i] = β^n_i : F_i(-n deg f) -> F_{i+1}` for `0 <= i < n`.
    pub betas: Vec<PolyMatrix>,
}

impl HomotopySystem {
    pub fn beta(&self, f: &ChainComplex, i: i32) -> PolyMatrix {
        let d = self.f.degree(f.ring.poly()).unwrap_or(0) * self.n as i32;
        if i >= 0 && (i as usize) < self.betas.len() {
            self.betas[i as usize].clone()
        } else {
            PolyMatrix::zero(f.component(i + 1), f.component(i).iter().map(|t| t + d).collect())
        }
    }

    /// Checks `f^n Id_{F_i} = ∂_{i+1} β_i + β_{i-1} ∂_i` for `0 <= i < n`.
    pub fn verify(&self, f: &ChainComplex) -> Result<()> {
        let ring = &f.ring;
        let fnp = self.f.pow(self.n, ring.poly());
        let d = fnp.degree(ring.poly()).unwrap_or(0);
        for i in 0..self.n as i32 {
            let id = PolyMatrix::identity(ring.poly(), f.component(i));
            let lhs = id.scale_poly(&fnp, ring, d);
            let rhs = f
                .differential(i + 1)
                .mul(&self.beta(f, i), ring)
                .add(&self.beta(f, i - 1).mul(&f.differential(i).twisted(d), ring), ring);
            if lhs != rhs {
                return Err(Error::Unverified(format!("homotopy identity fails at index {i}")));
            }
        }
        Ok(())
    }
}

/// Lifts `b` through `∂_{i+1}`.
fn lift(f: &ChainComplex, i: i32, b: &PolyMatrix) -> Result<PolyMatrix> {
    let d = f.differential(i + 1);
    if b.is_zero() {
        return Ok(PolyMatrix::zero(d.col_twists.clone(), b.col_twists.clone()));
    }
    if d.cols() == 0 {
        return Err(Error::LiftFailed { index: i, reason: "nothing to lift through".into() });
    }
    Lifter::new(&d, &f.ring)
        .solve_matrix(b, &d.col_twists)
        .ok_or_else(|| Error::LiftFailed { index: i, reason: "not in the image of the differential".into() })
}

/// Builds `β^n` by induction on `n`: `β^1_0` lifts `f·Id` through `∂_1`; then `β^n_i = f β^{n-1}_i`
/// for `i < n-1` and `β^n_{n-1}` lifts `f^n Id - f β^{n-1}_{n-2} ∂_{n-1}` through `∂_n`.
pub fn build_homotopies(f: &ChainComplex, elem: &Polynomial, n: u32) -> Result<HomotopySystem> {
    if n == 0 {
        return Err(Error::InvalidInput("power must be positive".into()));
    }
    if f.lo < 0 {
        return Err(Error::Precondition("complex must live in nonnegative degrees".into()));
    }
    let ring = &f.ring;
    let pr = ring.poly();
    if !is_regular_sequence(std::slice::from_ref(elem), ring)? {
        return Err(Error::Precondition(format!("{} is a zero divisor", elem.format(pr))));
    }
    let d = elem.degree(pr).unwrap();
    let mut betas: Vec<PolyMatrix> = Vec::new();
    for m in 1..=n {
        let mut next: Vec<PolyMatrix> = betas.iter().map(|b| b.scale_poly(elem, ring, d)).collect();
        let i = m as i32 - 1;
        let fm = elem.pow(m, pr);
        let id = PolyMatrix::identity(pr, f.component(i)).scale_poly(&fm, ring, d * m as i32);
        let b = if m == 1 {
            id
        } else {
            let prev = next[i as usize - 1].clone();
            id.sub(&prev.mul(&f.differential(i).twisted(d * m as i32), ring), ring)
        };
        next.push(lift(f, i, &b)?);
        betas = next;
    }
    let sys = HomotopySystem { f: elem.clone(), n, betas };
    sys.verify(f)?;
    Ok(sys)
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SplitCheck {
    Verified,
    Failed { reason: String },
    Undetermined { reason: String },
    /// `i >= n`, outside the range where the splitting is claimed.
    NotCovered,
}

#[derive(Clone, Debug)]
pub struct PowerLift {
    /// `F ⊗_Q Q/(f^n)`.
    pub complex: ChainComplex,
    pub homology: HomologyTable,
    pub homotopies: HomotopySystem,
    pub splittings: Vec<(i32, SplitCheck)>,
    /// Present when `n > hsup F` and the homology is certified against the target module.
    pub certificate: Option<QuasiResolutionCertificate>,
}

impl PowerLift {
    pub fn all_verified(&self) -> bool {
        self.splittings.iter().all(|(_, s)| matches!(s, SplitCheck::Verified | SplitCheck::NotCovered))
    }
}

/// Base-changes `F` along `Q -> Q/(f^n)` and checks the splitting of homology in each index
/// `i < n`; `target` is the module `F` quasi-resolves, annihilated by `f`.
pub fn power_lift(
    f: &ChainComplex,
    elem: &Polynomial,
    n: u32,
    target: &GradedModule,
    opts: IsoOptions,
) -> Result<PowerLift> {
    let q = &f.ring;
    let pr = q.poly();
    let homotopies = build_homotopies(f, elem, n)?;
    let fnp = elem.pow(n, pr);
    let shift = fnp.degree(pr).unwrap();
    let qn = q.quotient_by(std::slice::from_ref(&fnp))?;
    let fn_complex = f.base_change(&qn)?;
    let table_n = fn_complex.homology_table();
    let table = f.homology_table();
    let zero = GradedModule::zero(q.clone());
    let h = |i: i32| table.get(i).cloned().unwrap_or_else(|| zero.clone());
    let mut splittings = Vec::new();
    let zero_n = GradedModule::zero(qn.clone());
    for i in f.lo..=f.hi() + 1 {
        if i >= n as i32 {
            splittings.push((i, SplitCheck::NotCovered));
            continue;
        }
        let lhs = table_n.get(i).unwrap_or(&zero_n).restrict_to(q)?;
        let rhs = h(i).direct_sum(&h(i - 1).twist(-shift))?;
        let status = match is_isomorphic(&lhs, &rhs, opts)? {
            IsoOutcome::Isomorphic(_) => SplitCheck::Verified,
            IsoOutcome::NotIsomorphic(reason) => SplitCheck::Failed { reason },
            IsoOutcome::Undetermined(reason) => SplitCheck::Undetermined { reason },
        };
        splittings.push((i, status));
    }
    let certificate = match table.hsup {
        Some(hs) if (n as i32) > hs => {
            let t = target.transport(&qn)?;
            Some(certify(fn_complex.clone(), &t, CertKind::QuasiProjective, opts)?)
        }
        _ => None,
    };
    Ok(PowerLift { complex: fn_complex, homology: table_n, homotopies, splittings, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;
    use crate::modules::tests::ring;

    #[test]
    fn homotopies_on_koszul_of_x() {
        let q = ring(&["x"], &[]);
        let x = parse_polynomial("x", q.poly()).unwrap();
        let k = GradedModule::residue_field(q.clone());
        let f = ChainComplex::free_resolution(&k, 3);
        let h1 = build_homotopies(&f, &x, 1).unwrap();
        assert_eq!(h1.betas[0].get(0, 0), &q.poly().one());
        let h2 = build_homotopies(&f, &x, 2).unwrap();
        assert_eq!(h2.betas[0].get(0, 0), &x);
        for n in 2..=4 {
            let p = power_lift(&f, &x, n, &k, IsoOptions::default()).unwrap();
            assert!(p.all_verified());
            let cert = p.certificate.unwrap();
            assert_eq!(cert.multiplicities(), vec![(0, 1), (1, 1)]);
            assert_eq!(cert.homology[1].shifts, vec![n as i32]);
        }
    }

    #[test]
    fn homotopies_on_a_two_variable_resolution() {
        let q = ring(&["x", "y"], &[]);
        let e = |s: &str| parse_polynomial(s, q.poly()).unwrap();
        let m = GradedModule::cyclic(q.clone(), &[e("x^2"), e("y")]).unwrap();
        let f = ChainComplex::free_resolution(&m, 3);
        for n in 1..=3 {
            build_homotopies(&f, &e("x^2"), n).unwrap();
        }
        assert!(matches!(build_homotopies(&f, &e("x"), 1), Err(Error::LiftFailed { index: 0, .. })));
    }
}
