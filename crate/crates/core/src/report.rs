//! JSON renderings of rings, modules, complexes, certificates and verdicts.
//!
//! Maps are `serde_json::Map` (sorted keys), so equal values always serialize to equal bytes.

use serde_json::{json, Value};

use crate::algebra::matrix::PolyMatrix;
use crate::algebra::poly::PolyRing;
use crate::algebra::ring::Ring;
use crate::complexes::{ChainComplex, HomologyTable};
use crate::modules::resolution::BettiTable;
use crate::modules::GradedModule;
use crate::quasires::dimension::DimensionVerdict;
use crate::quasires::{CertKind, QuasiResolutionCertificate};

pub const SCHEMA_VERSION: u32 = 1;

/// Sign and normalization conventions every certificate carries.
pub fn conventions() -> Value {
    json!({
        "indexing": "homological; injective-side complexes live in degrees <= 0",
        "shift": "C[j]_i = C_(i-j), differential (-1)^j d_(i-j)",
        "cone": "Cone_i = F_(i-1) + G_i, differential [-dF, 0; phi, dG]",
        "koszul": "wedge basis in lex order, d(e_S) = sum_p (-1)^p f_S[p] e_(S minus S[p])",
        "ring_dual": "Hom(C,R)_i = Hom(C_(-i), R), differential (-1)^(i+1) transpose(d_(1-i))",
        "omega": crate::duality::OMEGA_CONVENTION.formula,
        "model": "graded-local",
    })
}

pub fn ring_json(r: &Ring) -> Value {
    let a: &PolyRing = r.poly();
    json!({
        "field": a.field.to_string(),
        "variables": a.vars,
        "weights": a.weights,
        "order": a.order.name(),
        "ideal": r.ideal_gens.iter().map(|g| g.format(a)).collect::<Vec<_>>(),
        "description": r.describe(),
    })
}

pub fn matrix_json(m: &PolyMatrix, pr: &PolyRing) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "row_twists": m.row_twists,
        "col_twists": m.col_twists,
        "entries": m.format_rows(pr),
    })
}

pub fn module_json(m: &GradedModule) -> Value {
    json!({
        "ring": m.ring.describe(),
        "generator_degrees": m.gens(),
        "relations": matrix_json(m.rels(), m.ring.poly()),
        "hilbert_series": m.hilbert_series().format(),
    })
}

pub fn complex_json(c: &ChainComplex) -> Value {
    let pr = c.ring.poly();
    json!({
        "ring": c.ring.describe(),
        "indices": [c.lo, c.hi()],
        "twists": (c.lo..=c.hi()).map(|i| json!({"index": i, "twists": c.component(i)})).collect::<Vec<_>>(),
        "differentials": (c.lo + 1..=c.hi())
            .map(|i| json!({"index": i, "matrix": matrix_json(&c.differential(i), pr)}))
            .collect::<Vec<_>>(),
        "truncated_at": c.truncated_at,
    })
}

pub fn homology_json(t: &HomologyTable) -> Value {
    json!({
        "hsup": t.hsup,
        "hinf": t.hinf,
        "modules": t.entries.iter().filter(|(_, h)| !h.is_zero()).map(|(i, h)| json!({
            "index": i,
            "generator_degrees": h.gens(),
            "hilbert_series": h.hilbert_series().format(),
        })).collect::<Vec<_>>(),
    })
}

pub fn betti_json(b: &BettiTable) -> Value {
    json!({
        "entries": b.entries.iter().map(|(i, d, c)| json!([i, d, c])).collect::<Vec<_>>(),
        "truncated_at": b.truncated_at,
    })
}

pub fn certificate_json(c: &QuasiResolutionCertificate) -> Value {
    let pr = c.complex.ring.poly();
    let (inf, sup) = c.support();
    let kind = match c.kind {
        CertKind::QuasiProjective => "quasi-projective",
        CertKind::QuasiInjectiveMatlisDual => "quasi-injective-matlis-dual",
    };
    json!({
        "kind": kind,
        "complex": complex_json(&c.complex),
        "complex_role": match c.kind {
            CertKind::QuasiProjective => "the resolution",
            CertKind::QuasiInjectiveMatlisDual => "free complex P; the resolution is I_i = D(P_(-i))",
        },
        "target": module_json(&c.target),
        "homology": c.homology.iter().map(|h| json!({
            "index": h.index,
            "a": h.multiplicity,
            "shifts": h.shifts,
            "witness": matrix_json(&h.witness.matrix, pr),
            "seed": c.seed,
        })).collect::<Vec<_>>(),
        "inf": inf,
        "sup": sup,
        "hinf": c.homology_support().map(|s| s.0),
        "hsup": c.homology_support().map(|s| s.1),
        "measure": c.measure,
        "conventions": conventions(),
    })
}

pub fn verdict_json(v: &DimensionVerdict) -> Value {
    json!({
        "value": v.value,
        "route": v.route,
        "certificate": v.certificate.as_ref().map(certificate_json),
        "obstruction": v.obstruction,
        "trail": v.trail,
        "attempts": v.attempts,
    })
}
