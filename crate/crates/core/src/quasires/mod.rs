//! Quasi-projective and quasi-injective resolutions: complexes whose nonzero homology modules
//! are all finite direct sums of (shifted) copies of one module, with verified witnesses.

pub mod dimension;
pub mod homotopy;

use serde::Serialize;

use crate::algebra::poly::Polynomial;
use crate::algebra::syzygy::maximal_ideal_generators;
use crate::algebra::ring::Ring;
use crate::complexes::{is_regular_sequence, koszul_complex, ChainComplex};
use crate::duality::{graded_dual, matlis_dual};
use crate::error::{Error, Result};
use crate::modules::iso::{power_decompose, DecomposeOutcome, IsoOptions};
use crate::modules::{GradedModule, Morphism};

pub use dimension::{qid_certified, qpd_certified, DimensionValue, DimensionVerdict, Obstruction, TrailEntry};
pub use homotopy::{build_homotopies, power_lift, HomotopySystem, PowerLift};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertKind {
    QuasiProjective,
    /// Injective complex `I_i = Hom_R(P_{-i}, E)` for a stored free complex `P`, `E` the graded
    /// injective hull of `k`; the homology of `P` has finite length.
    QuasiInjectiveMatlisDual,
}

/// `H_i ≅ ⊕_j M(-s_j)` with its isomorphism.
#[derive(Clone, Debug)]
pub struct HomologyWitness {
    pub index: i32,
    pub multiplicity: usize,
    pub shifts: Vec<i32>,
    pub homology: GradedModule,
    /// `⊕_j M(-s_j) -> H_i`.
    pub witness: Morphism,
}

#[derive(Clone, Debug)]
pub struct QuasiResolutionCertificate {
    pub kind: CertKind,
    /// For the injective kind this is the free complex `P` whose Matlis dual is the resolution.
    pub complex: ChainComplex,
    pub target: GradedModule,
    pub homology: Vec<HomologyWitness>,
    /// `sup - hsup` (projective) or `hinf - inf` (injective) of the resolution.
    pub measure: i32,
    pub seed: u64,
}

impl QuasiResolutionCertificate {
    pub fn multiplicities(&self) -> Vec<(i32, usize)> {
        self.homology.iter().map(|h| (h.index, h.multiplicity)).collect()
    }

    /// `(inf, sup)` of the resolution itself.
    pub fn support(&self) -> (i32, i32) {
        let c = &self.complex;
        let (lo, hi) = (c.inf().unwrap_or(0), c.sup().unwrap_or(0));
        match self.kind {
            CertKind::QuasiProjective => (lo, hi),
            CertKind::QuasiInjectiveMatlisDual => (-hi, -lo),
        }
    }

    pub fn homology_support(&self) -> Option<(i32, i32)> {
        Some((self.homology.first()?.index, self.homology.last()?.index))
    }

    /// Recomputes homology and rechecks every witness and the measure.
    pub fn revalidate(&self) -> Result<()> {
        self.complex.validate()?;
        let fresh = resolution_homology(&self.complex, self.kind)?;
        let nonzero: Vec<&(i32, GradedModule)> = fresh.iter().filter(|(_, h)| !h.is_zero()).collect();
        if nonzero.len() != self.homology.len() {
            return Err(Error::Unverified("set of nonzero homology indices changed".into()));
        }
        for ((i, h), w) in nonzero.iter().zip(&self.homology) {
            if *i != w.index || h.gens() != w.homology.gens() || h.rels() != w.homology.rels() {
                return Err(Error::Unverified(format!("homology at index {i} differs from the recorded one")));
            }
            check_witness(&self.target, w)?;
        }
        if self.measure != measure(self.kind, &self.complex, &self.homology) {
            return Err(Error::Unverified("measure does not match the complex".into()));
        }
        Ok(())
    }
}

/// A witness is valid when it is a well-defined surjection between modules with equal Hilbert
/// series, which forces injectivity degree by degree.
fn check_witness(target: &GradedModule, w: &HomologyWitness) -> Result<()> {
    let sum = target.sum_of_shifts(&w.shifts);
    let ok = w.multiplicity == w.shifts.len()
        && w.witness.source.gens() == sum.gens()
        && w.witness.is_well_defined()
        && w.witness.is_surjective()
        && w.witness.source.hilbert_series() == w.homology.hilbert_series();
    if ok {
        Ok(())
    } else {
        Err(Error::Unverified(format!("witness at index {} does not verify", w.index)))
    }
}

fn measure(kind: CertKind, c: &ChainComplex, homology: &[HomologyWitness]) -> i32 {
    let Some(sup) = c.sup() else { return 0 };
    let (Some(first), Some(last)) = (homology.first(), homology.last()) else { return 0 };
    match kind {
        CertKind::QuasiProjective => sup - last.index,
        // I_i = D(P_{-i}): inf I = -sup P, so hinf I - inf I = hinf I + sup P.
        CertKind::QuasiInjectiveMatlisDual => first.index + sup,
    }
}

/// `(i, H_i)` over the support of the resolution, in increasing index order.
fn resolution_homology(c: &ChainComplex, kind: CertKind) -> Result<Vec<(i32, GradedModule)>> {
    let table = c.homology_table();
    match kind {
        CertKind::QuasiProjective => Ok(table.entries),
        CertKind::QuasiInjectiveMatlisDual => {
            let mut out = Vec::new();
            for (i, h) in table.entries.into_iter().rev() {
                out.push((-i, graded_dual(&h)?));
            }
            Ok(out)
        }
    }
}

/// Checks each nonzero homology module against `target` and assembles the certificate.
pub fn certify(c: ChainComplex, target: &GradedModule, kind: CertKind, opts: IsoOptions) -> Result<QuasiResolutionCertificate> {
    c.validate()?;
    let mut homology = Vec::new();
    for (i, h) in resolution_homology(&c, kind)? {
        if h.is_zero() {
            continue;
        }
        match power_decompose(&h, target, opts)? {
            DecomposeOutcome::Decomposed(d) => homology.push(HomologyWitness {
                index: i,
                multiplicity: d.multiplicity,
                shifts: d.shifts,
                homology: h,
                witness: d.witness,
            }),
            DecomposeOutcome::NotAPower(why) => {
                return Err(Error::Unverified(format!("H_{i} is not a sum of copies of the module: {why}")))
            }
            DecomposeOutcome::Undetermined(why) => {
                return Err(Error::Unverified(format!("H_{i} undetermined: {why}")))
            }
        }
    }
    if homology.is_empty() && !target.is_zero() {
        return Err(Error::Unverified("complex is exact".into()));
    }
    let measure = measure(kind, &c, &homology);
    Ok(QuasiResolutionCertificate { kind, complex: c, target: target.clone(), homology, measure, seed: opts.seed })
}

/// `F ⊗_Q R` for a `Q`-free resolution `F` of `M`, where `R = Q/(fs)` and `fs` is regular on `Q`.
pub fn qpres_tensor_down(m: &GradedModule, q: &Ring, fs: &[Polynomial], opts: IsoOptions) -> Result<QuasiResolutionCertificate> {
    let r = q.quotient_by(fs)?;
    if !r.same_as(&m.ring) {
        return Err(Error::RingMismatch(format!(
            "module lives over {}, not over {}",
            m.ring.describe(),
            r.describe()
        )));
    }
    if !is_regular_sequence(fs, q)? {
        return Err(Error::Precondition("the defining sequence is not regular".into()));
    }
    let mq = m.restrict_to(q)?;
    // Over a polynomial ring the minimal resolution has length at most #vars.
    let f = ChainComplex::free_resolution(&mq, q.nvars() + 1);
    if f.truncated_at.is_some() {
        return Err(Error::TruncationInsufficient("resolution over the polynomial ring did not terminate".into()));
    }
    certify(f.base_change(&m.ring)?, m, CertKind::QuasiProjective, opts)
}

/// `K(x_1..x_n; R)` on minimal generators of `m`, certified as a quasi-projective resolution of `k`.
pub fn koszul_qpres_residue_field(r: &Ring, opts: IsoOptions) -> Result<QuasiResolutionCertificate> {
    let k = koszul_complex(&maximal_ideal_generators(r), r)?;
    let table = k.homology_table();
    for (i, h) in &table.entries {
        if !h.killed_by_maximal_ideal() {
            return Err(Error::Unverified(format!("H_{i} of the Koszul complex is not killed by m")));
        }
    }
    certify(k, &GradedModule::residue_field(r.clone()), CertKind::QuasiProjective, opts)
}

/// The free complex concentrated in degree 0 covering a free module.
pub fn trivial_certificate(m: &GradedModule, opts: IsoOptions) -> Result<QuasiResolutionCertificate> {
    let min = m.minimize();
    if !min.is_free() {
        return Err(Error::Precondition("module is not free".into()));
    }
    let c = ChainComplex::concentrated(m.ring.clone(), min.gens().to_vec(), 0);
    certify(c, m, CertKind::QuasiProjective, opts)
}

/// For `M` killed by `m`, `M ≅ ⊕ k(-s)` and `⊕ K(-s)` is a quasi-projective resolution.
pub fn koszul_certificate_for_vector_space(m: &GradedModule, opts: IsoOptions) -> Result<QuasiResolutionCertificate> {
    if !m.killed_by_maximal_ideal() {
        return Err(Error::Precondition("module is not killed by the maximal ideal".into()));
    }
    let min = m.minimize();
    let k = koszul_complex(&maximal_ideal_generators(&m.ring), &m.ring)?;
    let mut sum: Option<ChainComplex> = None;
    for &s in min.gens() {
        let t = k.twist(-s);
        sum = Some(match sum {
            None => t,
            Some(c) => c.direct_sum(&t)?,
        });
    }
    let c = sum.ok_or_else(|| Error::Precondition("zero module".into()))?;
    certify(c, m, CertKind::QuasiProjective, opts)
}

/// Matlis-dualizes a certificate over an Artinian ring; projective becomes injective and back.
/// The new target is `D(target)`.
pub fn dualize_quasi_resolution(cert: &QuasiResolutionCertificate, opts: IsoOptions) -> Result<QuasiResolutionCertificate> {
    let target = matlis_dual(&cert.target)?.module;
    dualize_quasi_resolution_onto(cert, &target, opts)
}

/// As [`dualize_quasi_resolution`] with a given module isomorphic to `D(target)`.
pub fn dualize_quasi_resolution_onto(
    cert: &QuasiResolutionCertificate,
    target: &GradedModule,
    opts: IsoOptions,
) -> Result<QuasiResolutionCertificate> {
    let kind = match cert.kind {
        CertKind::QuasiProjective => CertKind::QuasiInjectiveMatlisDual,
        CertKind::QuasiInjectiveMatlisDual => CertKind::QuasiProjective,
    };
    certify(cert.complex.clone(), target, kind, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;
    use crate::modules::tests::ring;

    #[test]
    fn tensor_down_multiplicities() {
        let q = ring(&["x", "y"], &[]);
        let e = |s: &str| parse_polynomial(s, q.poly()).unwrap();
        let fs = [e("x^2"), e("y^2")];
        let r = q.quotient_by(&fs).unwrap();
        let k = GradedModule::residue_field(r.clone());
        let c = qpres_tensor_down(&k, &q, &fs, IsoOptions::default()).unwrap();
        assert_eq!(c.multiplicities(), vec![(0, 1), (1, 2), (2, 1)]);
        assert_eq!(c.measure, 0);
        assert!(c.revalidate().is_ok());
        let bad = [e("x*y"), e("x^2")];
        let r2 = q.quotient_by(&bad).unwrap();
        let k2 = GradedModule::residue_field(r2);
        assert!(qpres_tensor_down(&k2, &q, &bad, IsoOptions::default()).is_err());
    }

    #[test]
    fn koszul_certificates() {
        let p = ring(&["x", "y"], &[]);
        let c = koszul_qpres_residue_field(&p, IsoOptions::default()).unwrap();
        assert_eq!((c.multiplicities(), c.measure), (vec![(0, 1)], 2));
        let r = ring(&["x"], &["x^2"]);
        let c = koszul_qpres_residue_field(&r, IsoOptions::default()).unwrap();
        assert_eq!(c.multiplicities(), vec![(0, 1), (1, 1)]);
        let e = ring(&["x", "y", "z"], &["y^2", "y*z", "z^2"]);
        let c = koszul_qpres_residue_field(&e, IsoOptions::default()).unwrap();
        assert!(c.revalidate().is_ok());
    }

    #[test]
    fn dualized_certificate_keeps_multiplicities() {
        let r = ring(&["x"], &["x^2"]);
        let c = koszul_qpres_residue_field(&r, IsoOptions::default()).unwrap();
        let d = dualize_quasi_resolution(&c, IsoOptions::default()).unwrap();
        assert_eq!(d.kind, CertKind::QuasiInjectiveMatlisDual);
        let m: Vec<usize> = d.multiplicities().iter().map(|x| x.1).collect();
        assert_eq!(m, vec![1, 1]);
        assert_eq!(d.measure, c.measure);
        let back = dualize_quasi_resolution(&d, IsoOptions::default()).unwrap();
        assert_eq!(back.multiplicities(), c.multiplicities());
        assert!(d.revalidate().is_ok());
    }
}
