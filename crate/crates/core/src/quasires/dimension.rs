//! Certified values of qpd and qid. A finite value is only reported with a certificate and an
//! infinite one only through an obstruction; otherwise the verdict is an interval.

use serde::Serialize;

use super::{
    dualize_quasi_resolution_onto, koszul_certificate_for_vector_space, qpres_tensor_down, trivial_certificate,
    QuasiResolutionCertificate,
};
use crate::algebra::syzygy::minimal_generators;
use crate::algebra::vector::{ModuleOrder, Vector};
use crate::duality::{cm_dual, dualizing_module, graded_dual, is_artinian, matlis_dual};
use crate::error::{Error, Result};
use crate::invariants::{depth, is_cm_module, is_gorenstein, module_type, pd_bound, projective_dimension, ring_depth, ring_dim};
use crate::modules::iso::IsoOptions;
use crate::modules::resolution::Resolution;
use crate::modules::GradedModule;

#[derive(Clone, Copy, Debug, Default)]
pub struct VerdictOptions {
    pub iso: IsoOptions,
    /// Resolution length used to detect finite projective dimension; defaults to
    /// `dim R + #vars + 2`.
    pub pd_bound: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DimensionValue {
    Finite { value: i32 },
    Infinite,
    /// Not decided; `upper = None` stands for infinity.
    Interval { lower: i32, upper: Option<i32> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrailEntry {
    pub id: &'static str,
    pub statement: &'static str,
}

pub const QPD_DEPTH_FORMULA: TrailEntry = TrailEntry {
    id: "qpd-depth-formula",
    statement: "finite quasi-projective dimension equals depth R - depth M",
};
pub const QID_DEPTH_FORMULA: TrailEntry = TrailEntry {
    id: "qid-depth-formula",
    statement: "finite quasi-injective dimension of a nonzero module equals depth R",
};
pub const MATLIS_DUALITY: TrailEntry = TrailEntry {
    id: "matlis-duality",
    statement: "over an Artinian ring the Matlis dual of a quasi-projective resolution of D(M) is a quasi-injective resolution of M",
};
pub const RESIDUE_DUALITY: TrailEntry = TrailEntry {
    id: "residue-field-duality",
    statement: "a Koszul complex on generators of m quasi-resolves any module killed by m, and its graded Matlis dual is a bounded quasi-injective resolution",
};
pub const CM_DUALITY: TrailEntry = TrailEntry {
    id: "cm-duality",
    statement: "for M Cohen-Macaulay of dimension n over a Cohen-Macaulay ring of dimension d, qid M is finite iff qpd Ext^{d-n}(M, omega) is finite",
};
pub const SYZYGY_TRANSFER: TrailEntry = TrailEntry {
    id: "syzygy-transfer",
    statement: "finite qpd passes to syzygies, and finite qid passes from a syzygy back to the module when the middle term has finite injective dimension",
};
pub const MAXIMAL_DIMENSION: TrailEntry = TrailEntry {
    id: "maximal-dimension-forces-cm",
    statement: "a module of dimension dim R with finite qid forces R to be Cohen-Macaulay",
};
pub const FINITE_PD_FORCES_GORENSTEIN: TrailEntry = TrailEntry {
    id: "finite-pd-and-qid-forces-gorenstein",
    statement: "a nonzero module with finite pd and finite qid forces R to be Gorenstein",
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    MaximalDimensionNotCm { module_dim: i32, ring_dim: i32, ring_depth: usize },
    FiniteProjectiveDimension { pd: usize, ring_type: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct RouteAttempt {
    pub route: String,
    pub outcome: String,
}

#[derive(Clone, Debug)]
pub struct DimensionVerdict {
    pub value: DimensionValue,
    pub route: Option<String>,
    pub certificate: Option<QuasiResolutionCertificate>,
    pub obstruction: Option<Obstruction>,
    pub trail: Vec<TrailEntry>,
    pub attempts: Vec<RouteAttempt>,
}

impl DimensionVerdict {
    pub fn finite_value(&self) -> Option<i32> {
        match self.value {
            DimensionValue::Finite { value } => Some(value),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.value == DimensionValue::Infinite
    }
}

fn attempt(attempts: &mut Vec<RouteAttempt>, route: &str, outcome: impl Into<String>) {
    attempts.push(RouteAttempt { route: route.into(), outcome: outcome.into() });
}

/// Tries the free, tensor-down and Koszul constructions in that order.
pub fn qpd_certificate(
    m: &GradedModule,
    opts: IsoOptions,
    attempts: &mut Vec<RouteAttempt>,
) -> Result<Option<(String, QuasiResolutionCertificate)>> {
    if m.minimize().is_free() {
        return Ok(Some(("free".into(), trivial_certificate(m, opts)?)));
    }
    attempt(attempts, "free", "module is not free");
    let r = &m.ring;
    let q = r.ambient_ring();
    let pr = r.poly();
    let gb = r.gb();
    let ord = ModuleOrder::new(pr, &[0]);
    let vecs: Vec<Vector> = gb.iter().map(|g| Vector::from_polys(std::iter::once(g), 0, &ord)).collect();
    let fs: Vec<_> = minimal_generators(&q, &[0], &vecs).into_iter().map(|i| gb[i].clone()).collect();
    match qpres_tensor_down(m, &q, &fs, opts) {
        Ok(c) => return Ok(Some(("tensor-down".into(), c))),
        Err(e @ (Error::Precondition(_) | Error::Unverified(_) | Error::TruncationInsufficient(_))) => {
            attempt(attempts, "tensor-down", e.to_string())
        }
        Err(e) => return Err(e),
    }
    if m.killed_by_maximal_ideal() {
        match koszul_certificate_for_vector_space(m, opts) {
            Ok(c) => return Ok(Some(("koszul".into(), c))),
            Err(e @ Error::Unverified(_)) => attempt(attempts, "koszul", e.to_string()),
            Err(e) => return Err(e),
        }
    } else {
        attempt(attempts, "koszul", "module is not killed by the maximal ideal");
    }
    Ok(None)
}

pub fn qpd_certified(m: &GradedModule, opts: VerdictOptions) -> Result<DimensionVerdict> {
    if m.is_zero() {
        return Err(Error::InvalidInput("quasi-projective dimension of the zero module".into()));
    }
    let value = ring_depth(&m.ring)? as i32 - depth(m)? as i32;
    let mut attempts = Vec::new();
    match qpd_certificate(m, opts.iso, &mut attempts)? {
        Some((route, cert)) => {
            if cert.measure < value {
                return Err(Error::Unverified(format!(
                    "certificate measure {} is below depth R - depth M = {value}",
                    cert.measure
                )));
            }
            Ok(DimensionVerdict {
                value: DimensionValue::Finite { value },
                route: Some(route),
                certificate: Some(cert),
                obstruction: None,
                trail: vec![QPD_DEPTH_FORMULA],
                attempts,
            })
        }
        None => Ok(DimensionVerdict {
            value: DimensionValue::Interval { lower: value.max(0), upper: None },
            route: None,
            certificate: None,
            obstruction: None,
            trail: Vec::new(),
            attempts,
        }),
    }
}

/// `Ω^j M`, presented by the `(j+1)`-st map of a minimal resolution.
pub fn syzygy_module(m: &GradedModule, j: usize) -> GradedModule {
    if j == 0 {
        return m.minimize();
    }
    let res = Resolution::compute(m, j + 1);
    let gens = res.twists(j);
    if gens.is_empty() {
        return GradedModule::zero(m.ring.clone());
    }
    let mut rels = res.differential(j + 1);
    rels.row_twists = gens;
    GradedModule::new(m.ring.clone(), rels).expect("homogeneous").minimize()
}

fn finite(value: i32, route: String, cert: QuasiResolutionCertificate, trail: Vec<TrailEntry>, attempts: Vec<RouteAttempt>) -> DimensionVerdict {
    DimensionVerdict {
        value: DimensionValue::Finite { value },
        route: Some(route),
        certificate: Some(cert),
        obstruction: None,
        trail,
        attempts,
    }
}

/// Searches the finiteness routes; `None` when none applies.
fn qid_routes(
    m: &GradedModule,
    depth_r: i32,
    cm_r: bool,
    opts: VerdictOptions,
    attempts: &mut Vec<RouteAttempt>,
) -> Result<Option<DimensionVerdict>> {
    if let Some(v) = qid_duality_routes(m, depth_r, cm_r, opts, attempts)? {
        return Ok(Some(v));
    }
    if !m.killed_by_maximal_ideal() {
        attempt(attempts, "residue-duality", "module is not killed by the maximal ideal");
        return Ok(None);
    }
    let dm = graded_dual(m)?;
    let cert = match koszul_certificate_for_vector_space(&dm, opts.iso) {
        Ok(c) => c,
        Err(e @ Error::Unverified(_)) => {
            attempt(attempts, "residue-duality", e.to_string());
            return Ok(None);
        }
        Err(e) => return Err(e),
    };
    let inj = dualize_quasi_resolution_onto(&cert, m, opts.iso)?;
    Ok(Some(finite(
        depth_r,
        "residue-duality/koszul".into(),
        inj,
        vec![RESIDUE_DUALITY, QID_DEPTH_FORMULA],
        std::mem::take(attempts),
    )))
}

fn qid_duality_routes(
    m: &GradedModule,
    depth_r: i32,
    cm_r: bool,
    opts: VerdictOptions,
    attempts: &mut Vec<RouteAttempt>,
) -> Result<Option<DimensionVerdict>> {
    let r = &m.ring;
    if is_artinian(r) {
        let dm = matlis_dual(m)?.module;
        let mut sub = Vec::new();
        if let Some((route, cert)) = qpd_certificate(&dm, opts.iso, &mut sub)? {
            let inj = dualize_quasi_resolution_onto(&cert, m, opts.iso)?;
            return Ok(Some(finite(
                depth_r,
                format!("artinian-duality/{route}"),
                inj,
                vec![MATLIS_DUALITY, QID_DEPTH_FORMULA],
                std::mem::take(attempts),
            )));
        }
        attempt(attempts, "artinian-duality", "no quasi-projective certificate for D(M)");
    } else {
        attempt(attempts, "artinian-duality", "ring is not Artinian");
    }
    if !cm_r {
        attempt(attempts, "cm-duality", "ring is not Cohen-Macaulay");
        return Ok(None);
    }
    let omega = dualizing_module(r)?;
    if is_cm_module(m)? {
        let n = cm_dual(m, &omega)?;
        let mut sub = Vec::new();
        if let Some((route, cert)) = qpd_certificate(&n, opts.iso, &mut sub)? {
            return Ok(Some(finite(
                depth_r,
                format!("cm-duality/{route}"),
                cert,
                vec![CM_DUALITY, QID_DEPTH_FORMULA],
                std::mem::take(attempts),
            )));
        }
        attempt(attempts, "cm-duality", "no quasi-projective certificate for the omega-dual");
        return Ok(None);
    }
    attempt(attempts, "cm-duality", "module is not Cohen-Macaulay");
    if !is_gorenstein(r)? {
        attempt(attempts, "syzygy-reduction", "ring is not Gorenstein");
        return Ok(None);
    }
    let mut sub = Vec::new();
    if qpd_certificate(m, opts.iso, &mut sub)?.is_none() {
        attempt(attempts, "syzygy-reduction", "no quasi-projective certificate for M");
        return Ok(None);
    }
    let j = (depth_r - depth(m)? as i32).max(0) as usize;
    let omega_j = syzygy_module(m, j);
    if omega_j.is_zero() || depth(&omega_j)? as i32 != depth_r {
        attempt(attempts, "syzygy-reduction", format!("syzygy {j} is not maximal Cohen-Macaulay"));
        return Ok(None);
    }
    let n = cm_dual(&omega_j, &omega)?;
    if let Some((route, cert)) = qpd_certificate(&n, opts.iso, &mut sub)? {
        return Ok(Some(finite(
            depth_r,
            format!("syzygy-reduction/{route}"),
            cert,
            vec![SYZYGY_TRANSFER, CM_DUALITY, QID_DEPTH_FORMULA],
            std::mem::take(attempts),
        )));
    }
    attempt(attempts, "syzygy-reduction", "no quasi-projective certificate for the omega-dual of the syzygy");
    Ok(None)
}

fn qid_obstruction(m: &GradedModule, depth_r: usize, cm_r: bool, opts: VerdictOptions) -> Result<Option<(Obstruction, TrailEntry)>> {
    let r = &m.ring;
    let dim_r = ring_dim(r);
    if m.krull_dim() == dim_r && !cm_r {
        return Ok(Some((
            Obstruction::MaximalDimensionNotCm { module_dim: m.krull_dim(), ring_dim: dim_r, ring_depth: depth_r },
            MAXIMAL_DIMENSION,
        )));
    }
    let bound = opts.pd_bound.unwrap_or_else(|| pd_bound(r));
    if let Some(pd) = projective_dimension(m, bound) {
        if !is_gorenstein(r)? {
            let ring_type = module_type(&GradedModule::free(r.clone(), vec![0]))?;
            return Ok(Some((Obstruction::FiniteProjectiveDimension { pd, ring_type }, FINITE_PD_FORCES_GORENSTEIN)));
        }
    }
    Ok(None)
}

pub fn qid_certified(m: &GradedModule, opts: VerdictOptions) -> Result<DimensionVerdict> {
    if m.is_zero() {
        return Err(Error::InvalidInput("quasi-injective dimension of the zero module".into()));
    }
    let r = &m.ring;
    let depth_r = ring_depth(r)?;
    let cm_r = depth_r as i32 == ring_dim(r);
    let mut attempts = Vec::new();
    let found = qid_routes(m, depth_r as i32, cm_r, opts, &mut attempts)?;
    let obstruction = qid_obstruction(m, depth_r, cm_r, opts)?;
    match (found, obstruction) {
        (Some(v), None) => Ok(v),
        (Some(_), Some((o, _))) => Err(Error::Unverified(format!(
            "a finiteness certificate and an obstruction ({o:?}) were both found"
        ))),
        (None, Some((o, t))) => Ok(DimensionVerdict {
            value: DimensionValue::Infinite,
            route: None,
            certificate: None,
            obstruction: Some(o),
            trail: vec![t],
            attempts,
        }),
        (None, None) => Ok(DimensionVerdict {
            value: DimensionValue::Interval { lower: depth_r as i32, upper: None },
            route: None,
            certificate: None,
            obstruction: None,
            trail: Vec::new(),
            attempts,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;
    use crate::modules::tests::ring;

    #[test]
    fn qpd_values() {
        let p = ring(&["x", "y"], &[]);
        let k = GradedModule::residue_field(p.clone());
        assert_eq!(qpd_certified(&k, VerdictOptions::default()).unwrap().finite_value(), Some(2));
        let e = ring(&["x", "y", "z"], &["y^2", "y*z", "z^2"]);
        let k = GradedModule::residue_field(e.clone());
        let v = qpd_certified(&k, VerdictOptions::default()).unwrap();
        assert_eq!((v.finite_value(), v.route.as_deref()), (Some(1), Some("koszul")));
        let free = GradedModule::free(e, vec![0, 1]);
        assert_eq!(qpd_certified(&free, VerdictOptions::default()).unwrap().finite_value(), Some(0));
    }

    #[test]
    fn qid_verdicts() {
        let e = ring(&["x", "y", "z"], &["y^2", "y*z", "z^2"]);
        let v = qid_certified(&GradedModule::free(e.clone(), vec![0]), VerdictOptions::default()).unwrap();
        assert!(v.is_infinite());
        assert_eq!(v.trail, vec![FINITE_PD_FORCES_GORENSTEIN]);
        let k = GradedModule::residue_field(e.clone());
        assert_eq!(qid_certified(&k, VerdictOptions::default()).unwrap().finite_value(), Some(1));
        for (vars, ideal) in [(&["x"][..], &["x^2"][..]), (&["x", "y"][..], &["x^2", "y^2"][..])] {
            let r = ring(vars, ideal);
            let v = qid_certified(&GradedModule::free(r, vec![0]), VerdictOptions::default()).unwrap();
            assert_eq!(v.finite_value(), Some(0));
        }
        let nc = ring(&["x", "y"], &["x^2", "x*y"]);
        let v = qid_certified(&GradedModule::free(nc, vec![0]), VerdictOptions::default()).unwrap();
        assert!(matches!(v.obstruction, Some(Obstruction::MaximalDimensionNotCm { .. })));
    }

    #[test]
    fn gorenstein_syzygy_reduction() {
        let r = ring(&["x", "y"], &["x^2"]);
        let e = |s: &str| parse_polynomial(s, r.poly()).unwrap();
        let k = GradedModule::residue_field(r.clone());
        let m = GradedModule::cyclic(r.clone(), &[e("x*y"), e("y^2")]).unwrap();
        assert!(!is_cm_module(&m).unwrap() || m.krull_dim() == 0);
        let mk = GradedModule::free(r.clone(), vec![0]).direct_sum(&k).unwrap();
        let v = qid_certified(&mk, VerdictOptions::default()).unwrap();
        assert_eq!(v.finite_value(), Some(1));
        assert!(v.route.unwrap().starts_with("syzygy-reduction"));
    }
}
