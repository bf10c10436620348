//! Checks theorem statements on every corpus instance satisfying their hypotheses.
//!
//! Instances run in parallel; findings are aggregated in corpus order so reports are
//! reproducible byte for byte.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value as Json};

use super::corpus::CorpusEntry;
use super::{depth, depth_via_koszul, is_cm_module, pd_bound, projective_dimension, ring_depth, ring_dim};
use crate::cli::runner::RunOptions;
use crate::complexes::ChainComplex;
use crate::duality::{cm_dual, dualizing_module, is_artinian, matlis_dual};
use crate::modules::homology::ExtComputer;
use crate::modules::GradedModule;
use crate::quasires::dimension::syzygy_module;
use crate::quasires::{
    koszul_qpres_residue_field, qid_certified, qpd_certified, CertKind, DimensionValue, DimensionVerdict,
};
use crate::algebra::ring::Ring;

#[derive(Clone, Copy, Debug)]
pub struct Theorem {
    pub id: &'static str,
    pub statement: &'static str,
}

pub const THEOREMS: &[Theorem] = &[
    Theorem { id: "qid-depth-formula", statement: "a finite qid verdict equals depth R" },
    Theorem { id: "qpd-depth-formula", statement: "a finite qpd verdict equals depth R - depth M" },
    Theorem { id: "qid-dimension-bound", statement: "finite qid implies dim M <= depth R" },
    Theorem {
        id: "maximal-dimension-forces-cm",
        statement: "finite qid for a module with dim M = dim R only occurs over Cohen-Macaulay rings",
    },
    Theorem {
        id: "finite-pd-and-qid-forces-gorenstein",
        statement: "finite pd together with finite qid only occurs over Gorenstein rings",
    },
    Theorem {
        id: "self-ext-vanishing",
        statement: "over an Artinian ring, vanishing self-Ext and finite qid give finite injective dimension (finite pd of D(M))",
    },
    Theorem {
        id: "gorenstein-qpd-iff-qid",
        statement: "over a Gorenstein ring qid M is finite iff qpd M is finite",
    },
    Theorem {
        id: "ext-vanishing-gap",
        statement: "if Ext^i(M,N) = 0 for n <= i <= n - inf I, with I a quasi-injective resolution of N, then Ext^(n - inf I + 1)(M,N) = 0",
    },
    Theorem { id: "syzygy-transfer", statement: "finite qpd passes from M to its first syzygy" },
    Theorem {
        id: "cm-duality-transfer",
        statement: "for CM M over a CM ring, finite qpd of M gives finite qid of its omega-dual",
    },
    Theorem { id: "direct-sum-invariance", statement: "qpd and qid of M + M agree with those of M" },
    Theorem { id: "auslander-buchsbaum", statement: "finite pd satisfies pd M + depth M = depth R" },
    Theorem {
        id: "depth-dimension-bounds",
        statement: "depth M <= dim M <= dim R, and Koszul depth equals Ext depth",
    },
    Theorem {
        id: "gorenstein-bass-numbers",
        statement: "a Gorenstein ring has Bass numbers 0 below its depth and 1 at its depth",
    },
    Theorem {
        id: "koszul-residue-field",
        statement: "the Koszul complex on generators of m is a quasi-projective resolution of k with homology killed by m",
    },
    Theorem { id: "certificates-revalidate", statement: "every emitted certificate revalidates from scratch" },
];

fn theorem_index(id: &str) -> usize {
    THEOREMS.iter().position(|t| t.id == id).expect("known theorem id")
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub ring: String,
    pub module: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub id: &'static str,
    pub statement: &'static str,
    pub instances_checked: usize,
    pub confirmed: usize,
    pub unresolved: usize,
    pub violations: Vec<Violation>,
    /// Why undecided instances stayed undecided.
    pub unresolved_notes: Vec<Violation>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceSummary {
    pub ring: String,
    pub module: String,
    pub depth: Option<usize>,
    pub dim: i32,
    pub pd: Option<usize>,
    pub qpd: Option<DimensionValue>,
    pub qpd_route: Option<String>,
    pub qid: Option<DimensionValue>,
    pub qid_route: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RingSummary {
    pub name: String,
    pub description: String,
    pub dim: i32,
    pub depth: usize,
    pub cohen_macaulay: bool,
    pub gorenstein: bool,
    pub artinian: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HarnessReport {
    pub rings: Vec<RingSummary>,
    pub instances: Vec<InstanceSummary>,
    pub theorems: Vec<TheoremReport>,
}

impl HarnessReport {
    pub fn violations(&self) -> usize {
        self.theorems.iter().map(|t| t.violations.len()).sum()
    }

    pub fn theorem(&self, id: &str) -> Option<&TheoremReport> {
        self.theorems.iter().find(|t| t.id == id)
    }

    pub fn to_json(&self, opts: &RunOptions) -> Json {
        let mut out = opts.header();
        out["conventions"] = crate::report::conventions();
        out["report"] = serde_json::to_value(self).expect("serializable");
        out["violations"] = json!(self.violations());
        out
    }
}

#[derive(Clone, Debug)]
enum Finding {
    Confirmed,
    Unresolved(String),
    Violation(String),
}

#[derive(Clone, Debug)]
struct Record {
    theorem: usize,
    ring: String,
    module: String,
    finding: Finding,
}

struct RingFacts {
    name: String,
    ring: Ring,
    dim: i32,
    depth: usize,
    cm: bool,
    gorenstein: bool,
    artinian: bool,
}

type Verdict = std::result::Result<DimensionVerdict, String>;

fn finite(v: &Verdict) -> Option<i32> {
    v.as_ref().ok().and_then(|v| v.finite_value())
}

fn infinite(v: &Verdict) -> bool {
    v.as_ref().map(|v| v.is_infinite()).unwrap_or(false)
}

fn determined(v: &Verdict) -> bool {
    finite(v).is_some() || infinite(v)
}

struct Checker<'a> {
    ring: &'a RingFacts,
    module: &'a str,
    out: Vec<Record>,
}

impl Checker<'_> {
    fn push(&mut self, id: &str, finding: Finding) {
        self.out.push(Record {
            theorem: theorem_index(id),
            ring: self.ring.name.clone(),
            module: self.module.to_string(),
            finding,
        });
    }

    fn expect(&mut self, id: &str, ok: bool, detail: impl FnOnce() -> String) {
        let f = if ok { Finding::Confirmed } else { Finding::Violation(detail()) };
        self.push(id, f);
    }

    fn revalidate(&mut self, v: &Verdict) {
        match v {
            Ok(v) => {
                if let Some(c) = &v.certificate {
                    let r = c.revalidate();
                    self.expect("certificates-revalidate", r.is_ok(), || format!("{r:?}"));
                }
            }
            Err(e) if e.contains("could not be verified") => {
                self.push("certificates-revalidate", Finding::Violation(e.clone()));
            }
            Err(_) => {}
        }
    }
}

fn ring_facts(e: &CorpusEntry) -> crate::Result<RingFacts> {
    let r = &e.ring;
    let dim = ring_dim(r);
    let depth = ring_depth(r)?;
    let cm = depth as i32 == dim;
    Ok(RingFacts {
        name: e.name.clone(),
        ring: r.clone(),
        dim,
        depth,
        cm,
        gorenstein: super::is_gorenstein(r)?,
        artinian: is_artinian(r),
    })
}

fn ring_checks(f: &RingFacts, opts: &RunOptions) -> Vec<Record> {
    let mut c = Checker { ring: f, module: &f.name, out: Vec::new() };
    if f.gorenstein {
        match super::bass_numbers(&GradedModule::free(f.ring.clone(), vec![0]), f.depth) {
            Ok(b) => {
                let mut expect = vec![0; f.depth];
                expect.push(1);
                c.expect("gorenstein-bass-numbers", b == expect, || format!("Bass numbers {b:?}"));
            }
            Err(e) => c.push("gorenstein-bass-numbers", Finding::Unresolved(e.to_string())),
        }
    }
    match koszul_qpres_residue_field(&f.ring, opts.iso()) {
        Ok(cert) => {
            let killed = cert.homology.iter().all(|w| w.homology.killed_by_maximal_ideal());
            c.expect("koszul-residue-field", killed, || "a homology module is not killed by m".into());
            let r = cert.revalidate();
            c.expect("certificates-revalidate", r.is_ok(), || format!("{r:?}"));
        }
        Err(e) => c.push("koszul-residue-field", Finding::Violation(e.to_string())),
    }
    c.out
}

fn verdict(r: crate::Result<DimensionVerdict>) -> Verdict {
    r.map_err(|e| e.to_string())
}

fn module_checks(f: &RingFacts, name: &str, m: &GradedModule, opts: &RunOptions, siblings: &[(String, GradedModule)]) -> (InstanceSummary, Vec<Record>) {
    let mut c = Checker { ring: f, module: name, out: Vec::new() };
    let vo = opts.verdict();
    let bound = opts.length_bound.unwrap_or_else(|| pd_bound(&f.ring));
    let dim = m.krull_dim();
    let depth_m = depth(m).ok();
    let pd = projective_dimension(m, bound);
    let qpd = verdict(qpd_certified(m, vo));
    let qid = verdict(qid_certified(m, vo));
    c.revalidate(&qpd);
    c.revalidate(&qid);
    for (id, v) in [("qpd-depth-formula", &qpd), ("qid-depth-formula", &qid)] {
        if let Err(e) = v {
            let finding = if e.contains("could not be verified") { Finding::Violation(e.clone()) } else { Finding::Unresolved(e.clone()) };
            c.push(id, finding);
        }
    }

    if let Some(v) = finite(&qid) {
        c.expect("qid-depth-formula", v == f.depth as i32, || format!("qid {v} but depth R = {}", f.depth));
        c.expect("qid-dimension-bound", dim <= f.depth as i32, || format!("dim M = {dim} > depth R = {}", f.depth));
        if dim == f.dim {
            c.expect("maximal-dimension-forces-cm", f.cm, || "finite qid at maximal dimension over a non-CM ring".into());
        }
        if let Some(p) = pd {
            c.expect("finite-pd-and-qid-forces-gorenstein", f.gorenstein, || format!("pd {p} and finite qid over a non-Gorenstein ring"));
        }
    }
    if let (Some(v), Some(d)) = (finite(&qpd), depth_m) {
        let expect = f.depth as i32 - d as i32;
        c.expect("qpd-depth-formula", v == expect, || format!("qpd {v} but depth R - depth M = {expect}"));
    }

    if let Some(d) = depth_m {
        let ok = d as i32 <= dim && dim <= f.dim;
        c.expect("depth-dimension-bounds", ok, || format!("depth {d}, dim {dim}, dim R {}", f.dim));
        match depth_via_koszul(m) {
            Ok(k) => c.expect("depth-dimension-bounds", k == d, || format!("Koszul depth {k}, Ext depth {d}")),
            Err(e) => c.push("depth-dimension-bounds", Finding::Unresolved(e.to_string())),
        }
        if let Some(p) = pd {
            c.expect("auslander-buchsbaum", p + d == f.depth, || format!("pd {p} + depth {d} != depth R {}", f.depth));
        }
    }

    if f.artinian {
        self_ext_check(&mut c, m, &qid, (f.dim.max(0) + 2) as usize, bound);
        if let Ok(v) = &qid {
            if let Some(cert) = v.certificate.as_ref().filter(|c| c.kind == CertKind::QuasiInjectiveMatlisDual) {
                let inf_i = cert.support().0;
                for (sname, s) in siblings {
                    ext_gap_check(&mut c, sname, s, m, inf_i);
                }
            }
        }
    }

    if f.gorenstein {
        let finding = match (determined(&qpd), determined(&qid)) {
            (true, true) if finite(&qpd).is_some() == finite(&qid).is_some() => Finding::Confirmed,
            (true, true) => Finding::Violation("qpd and qid disagree on finiteness".into()),
            (false, false) => Finding::Unresolved("neither verdict determined".into()),
            _ => {
                let j = depth_m.map(|d| f.depth.saturating_sub(d)).unwrap_or(0);
                let syz = syzygy_module(m, j);
                let mcm = !syz.is_zero() && depth(&syz).map(|d| d == f.depth).unwrap_or(false);
                if mcm && finite(&qpd).is_some() {
                    Finding::Violation(format!("qpd finite, syzygy {j} is MCM, but no qid verdict"))
                } else {
                    Finding::Unresolved("only one verdict determined".into())
                }
            }
        };
        c.push("gorenstein-qpd-iff-qid", finding);
    }

    if finite(&qpd).is_some() {
        let syz = syzygy_module(m, 1);
        if !syz.is_zero() {
            let v = verdict(qpd_certified(&syz, vo));
            c.revalidate(&v);
            let finding = if finite(&v).is_some() {
                Finding::Confirmed
            } else if infinite(&v) {
                Finding::Violation("first syzygy reported with infinite qpd".into())
            } else {
                Finding::Unresolved("no certificate for the syzygy".into())
            };
            c.push("syzygy-transfer", finding);
        }
        if f.cm && is_cm_module(m).unwrap_or(false) {
            let dual = dualizing_module(&f.ring).and_then(|w| cm_dual(m, &w));
            let finding = match dual.map(|n| verdict(qid_certified(&n, vo))) {
                Ok(v) if finite(&v).is_some() => Finding::Confirmed,
                Ok(v) if infinite(&v) => Finding::Violation("omega-dual reported with infinite qid".into()),
                Ok(_) => Finding::Unresolved("no qid certificate for the omega-dual".into()),
                Err(e) => Finding::Unresolved(e.to_string()),
            };
            c.push("cm-duality-transfer", finding);
        }
    }

    if determined(&qpd) || determined(&qid) {
        let sum = m.power(2);
        for (v, w) in [(&qpd, verdict(qpd_certified(&sum, vo))), (&qid, verdict(qid_certified(&sum, vo)))] {
            c.revalidate(&w);
            if determined(v) && determined(&w) {
                let same = v.as_ref().unwrap().value == w.as_ref().unwrap().value;
                c.expect("direct-sum-invariance", same, || "verdict of M + M differs from that of M".into());
            } else if determined(v) || determined(&w) {
                c.push("direct-sum-invariance", Finding::Unresolved("only one verdict determined".into()));
            }
        }
    }

    let summary = InstanceSummary {
        ring: f.name.clone(),
        module: name.to_string(),
        depth: depth_m,
        dim,
        pd,
        qpd: qpd.as_ref().ok().map(|v| v.value.clone()),
        qpd_route: qpd.as_ref().ok().and_then(|v| v.route.clone()),
        qid: qid.as_ref().ok().map(|v| v.value.clone()),
        qid_route: qid.as_ref().ok().and_then(|v| v.route.clone()),
    };
    (summary, c.out)
}

/// Vanishing is tested for `1 <= i <= ext_bound`; finite pd of `D(M)` within `pd_bound`.
fn self_ext_check(c: &mut Checker, m: &GradedModule, qid: &Verdict, ext_bound: usize, pd_bound: usize) {
    if finite(qid).is_none() {
        return;
    }
    let vanishes = ExtComputer::new(m, m, ext_bound)
        .and_then(|e| (1..=ext_bound).map(|i| e.ext(i).map(|x| x.is_zero())).collect::<crate::Result<Vec<bool>>>());
    match vanishes {
        Ok(v) if v.iter().all(|z| *z) => {
            let finding = match matlis_dual(m) {
                Ok(d) if projective_dimension(&d.module, pd_bound).is_some() => Finding::Confirmed,
                Ok(_) => Finding::Violation("D(M) has no finite pd within the bound".into()),
                Err(e) => Finding::Unresolved(e.to_string()),
            };
            c.push("self-ext-vanishing", finding);
        }
        Ok(_) => {}
        Err(e) => c.push("self-ext-vanishing", Finding::Unresolved(e.to_string())),
    }
}

/// Checks the gap statement for `Ext(s, n)` with `n` carrying an injective certificate with `inf I = inf_i`.
fn ext_gap_check(c: &mut Checker, sname: &str, s: &GradedModule, n: &GradedModule, inf_i: i32) {
    for start in 1..=2i32 {
        let top = start - inf_i + 1;
        let ext = match ExtComputer::new(s, n, top as usize) {
            Ok(e) => e,
            Err(e) => {
                c.push("ext-vanishing-gap", Finding::Unresolved(e.to_string()));
                return;
            }
        };
        let zero = |i: i32| ext.ext(i as usize).map(|e| e.is_zero());
        let hyp: crate::Result<bool> = (start..top).try_fold(true, |acc, i| Ok(acc && zero(i)?));
        match (hyp, zero(top)) {
            (Ok(true), Ok(concl)) => {
                c.expect("ext-vanishing-gap", concl, || format!("Ext^{top}({sname}, M) != 0 after vanishing from {start}"))
            }
            (Ok(false), _) => {}
            (Err(e), _) | (_, Err(e)) => c.push("ext-vanishing-gap", Finding::Unresolved(e.to_string())),
        }
    }
}

/// Runs every theorem check over the corpus.
pub fn theorem_harness(corpus: &[CorpusEntry], opts: &RunOptions) -> crate::Result<HarnessReport> {
    let facts: Vec<RingFacts> = corpus.par_iter().map(ring_facts).collect::<crate::Result<_>>()?;
    let jobs: Vec<(usize, usize)> = corpus
        .iter()
        .enumerate()
        .flat_map(|(r, e)| (0..e.modules.len()).map(move |k| (r, k)))
        .collect();
    let ring_records: Vec<Vec<Record>> = facts.par_iter().map(|f| ring_checks(f, opts)).collect();
    let module_results: Vec<(InstanceSummary, Vec<Record>)> = jobs
        .par_iter()
        .map(|&(r, k)| {
            let (name, m) = &corpus[r].modules[k];
            module_checks(&facts[r], name, m, opts, &corpus[r].modules)
        })
        .collect();

    let mut theorems: Vec<TheoremReport> = THEOREMS
        .iter()
        .map(|t| TheoremReport {
            id: t.id,
            statement: t.statement,
            instances_checked: 0,
            confirmed: 0,
            unresolved: 0,
            violations: Vec::new(),
            unresolved_notes: Vec::new(),
        })
        .collect();
    let records = ring_records.iter().flatten().chain(module_results.iter().flat_map(|(_, r)| r));
    for rec in records {
        let t = &mut theorems[rec.theorem];
        t.instances_checked += 1;
        match &rec.finding {
            Finding::Confirmed => t.confirmed += 1,
            Finding::Unresolved(detail) => {
                t.unresolved += 1;
                t.unresolved_notes.push(Violation {
                    ring: rec.ring.clone(),
                    module: rec.module.clone(),
                    detail: detail.clone(),
                });
            }
            Finding::Violation(detail) => t.violations.push(Violation {
                ring: rec.ring.clone(),
                module: rec.module.clone(),
                detail: detail.clone(),
            }),
        }
    }
    let rings = facts
        .iter()
        .map(|f| RingSummary {
            name: f.name.clone(),
            description: f.ring.describe(),
            dim: f.dim,
            depth: f.depth,
            cohen_macaulay: f.cm,
            gorenstein: f.gorenstein,
            artinian: f.artinian,
        })
        .collect();
    Ok(HarnessReport { rings, instances: module_results.into_iter().map(|(s, _)| s).collect(), theorems })
}

/// Builds the free resolution used to cross-check the Euler characteristic on every corpus module.
pub fn corpus_complexes(corpus: &[CorpusEntry], length: usize) -> Vec<(String, ChainComplex)> {
    corpus
        .iter()
        .flat_map(|e| e.modules.iter().map(move |(n, m)| (format!("{}/{n}", e.name), ChainComplex::free_resolution(m, length))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::corpus::load;

    #[test]
    fn harness_on_a_small_corpus() {
        let corpus = load(
            "ring R = poly(GF(101), [x]) / ideal(x^2);\nmodule K = residue(R);\n\
             ring E = poly(GF(101), [x, y, z]) / ideal(y^2, y*z, z^2);\n",
        )
        .unwrap();
        let rep = theorem_harness(&corpus, &RunOptions::default()).unwrap();
        assert_eq!(rep.violations(), 0, "{:#?}", rep.theorems);
        assert!(rep.theorem("qid-depth-formula").unwrap().confirmed >= 2);
        assert_eq!(rep.theorem("finite-pd-and-qid-forces-gorenstein").unwrap().violations.len(), 0);
        let e = rep.instances.iter().find(|i| i.module == "E").unwrap();
        assert_eq!(e.qid, Some(DimensionValue::Infinite));
    }
}
