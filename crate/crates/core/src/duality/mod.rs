//! Graded Matlis duality over Artinian rings, canonical modules of Cohen-Macaulay quotients,
//! and the duality `Ext^{d-n}_R(-, ω)` on Cohen-Macaulay modules of dimension `n`.

use serde::Serialize;

use crate::algebra::ring::Ring;
use crate::error::{Error, Result};
use crate::invariants::{depth, is_cm, ring_dim};
use crate::modules::homology::ext;
use crate::modules::rep::FiniteRep;
use crate::modules::GradedModule;

/// Whether the ring has finite length.
pub fn is_artinian(r: &Ring) -> bool {
    ring_dim(r) <= 0
}

/// `D(M) = Hom_k(M, k)` graded by `D(M)_d = (M_{-d})^*`.
#[derive(Clone, Debug)]
pub struct MatlisDualModule {
    pub module: GradedModule,
    /// The module this is the dual of.
    pub dual_of: GradedModule,
}

pub fn matlis_dual(m: &GradedModule) -> Result<MatlisDualModule> {
    if !is_artinian(&m.ring) {
        return Err(Error::NotArtinian);
    }
    Ok(MatlisDualModule { module: graded_dual(m)?, dual_of: m.clone() })
}

/// `Hom_k(M, k)` for a finite length module over any ring; this is `Hom_R(M, E)` with `E` the
/// graded injective hull of `k`.
pub fn graded_dual(m: &GradedModule) -> Result<GradedModule> {
    if !m.is_finite_length() {
        return Err(Error::Precondition("module does not have finite length".into()));
    }
    let rep = FiniteRep::from_module(m)?;
    Ok(rep.dual().to_module(&m.ring))
}

/// `ω = Ext^c_Q(R, Q(-Σ w))` with `c` the codimension of `R` in its polynomial ring `Q`.
#[derive(Clone, Debug)]
pub struct DualizingModule {
    pub module: GradedModule,
    /// Twist applied to `Q` before taking Ext (`-Σ w`).
    pub twist: i32,
    pub codim: usize,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct DualizingConvention {
    pub formula: &'static str,
}

pub const OMEGA_CONVENTION: DualizingConvention =
    DualizingConvention { formula: "omega = Ext^c_Q(R, Q(-sum of variable weights)), c = #vars - dim R" };

pub fn dualizing_module(r: &Ring) -> Result<DualizingModule> {
    if !is_cm(r)? {
        return Err(Error::NotCohenMacaulay(format!("{} is not Cohen-Macaulay", r.describe())));
    }
    let q = r.ambient_ring();
    let c = r.nvars() - ring_dim(r) as usize;
    let twist = -r.poly().weight_sum();
    let rq = GradedModule::cyclic(q.clone(), r.gb())?;
    let target = GradedModule::free(q.clone(), vec![-twist]);
    let e = ext(c, &rq, &target)?;
    let module = e.base_change(r)?.minimize();
    Ok(DualizingModule { module, twist, codim: c })
}

/// `Ext^{d-n}_R(M, ω)` for `M` Cohen-Macaulay of dimension `n`.
pub fn cm_dual(m: &GradedModule, omega: &DualizingModule) -> Result<GradedModule> {
    if m.is_zero() {
        return Ok(m.clone());
    }
    let n = m.krull_dim();
    let dm = depth(m)?;
    if dm as i32 != n {
        return Err(Error::NotCohenMacaulay(format!("module has depth {dm} and dimension {n}")));
    }
    let d = ring_dim(&m.ring);
    ext((d - n) as usize, m, &omega.module)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::is_gorenstein;
    use crate::modules::iso::{is_isomorphic, IsoOptions};
    use crate::modules::tests::ring;

    fn iso(a: &GradedModule, b: &GradedModule) -> bool {
        is_isomorphic(a, b, IsoOptions::default()).unwrap().is_iso()
    }

    #[test]
    fn matlis_duals() {
        let r = ring(&["x"], &["x^2"]);
        let d = matlis_dual(&GradedModule::free(r.clone(), vec![0])).unwrap();
        assert!(iso(&d.module, &GradedModule::free(r.clone(), vec![-1])));
        let k = GradedModule::residue_field(r.clone());
        assert!(iso(&matlis_dual(&k).unwrap().module, &k));
        let s = ring(&["y", "z"], &["y^2", "y*z", "z^2"]);
        let d = matlis_dual(&GradedModule::free(s.clone(), vec![0])).unwrap();
        assert_eq!(d.module.num_gens(), 2);
        let p = ring(&["x"], &[]);
        assert!(matches!(matlis_dual(&GradedModule::free(p, vec![0])), Err(Error::NotArtinian)));
    }

    #[test]
    fn canonical_modules() {
        let p = ring(&["x", "y"], &[]);
        let w = dualizing_module(&p).unwrap();
        assert!(iso(&w.module, &GradedModule::free(p.clone(), vec![2])));
        let r = ring(&["x"], &["x^2"]);
        let w = dualizing_module(&r).unwrap();
        assert!(is_gorenstein(&r).unwrap());
        assert!(iso(&w.module, &GradedModule::free(r.clone(), vec![-1])));
        let e = ring(&["x", "y", "z"], &["y^2", "y*z", "z^2"]);
        let w = dualizing_module(&e).unwrap();
        assert_eq!(w.module.num_gens(), 2);
        let nc = ring(&["x", "y"], &["x^2", "x*y"]);
        assert!(matches!(dualizing_module(&nc), Err(Error::NotCohenMacaulay(_))));
    }

    #[test]
    fn cm_duality_round_trip() {
        let r = ring(&["x", "y"], &["x^2"]);
        let w = dualizing_module(&r).unwrap();
        let k = GradedModule::residue_field(r.clone());
        let dk = cm_dual(&k, &w).unwrap();
        assert_eq!(dk.hilbert_series().length(), Some(1));
        assert!(iso(&cm_dual(&dk, &w).unwrap(), &k));
        let rr = GradedModule::free(r.clone(), vec![0]);
        assert!(iso(&cm_dual(&rr, &w).unwrap(), &w.module));
    }
}
