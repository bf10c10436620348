//! Executes parsed scripts: definitions, `print` queries and `check` commands with JSON output.

use std::sync::Arc;

use serde_json::{json, Value as Json};

use super::ast::{Expr, FieldSpec, RingBase, Script, Statement, StmtKind};
use crate::algebra::field::Field;
use crate::algebra::matrix::PolyMatrix;
use crate::algebra::poly::{MonomialOrder, PolyRing, Polynomial};
use crate::algebra::ring::{QuotientRing, Ring};
use crate::complexes::{is_regular_sequence, koszul_complex, ChainComplex};
use crate::duality::{cm_dual, dualizing_module, matlis_dual};
use crate::error::{Error, Result};
use crate::invariants;
use crate::modules::homology::{ext, hom, tor};
use crate::modules::iso::{is_isomorphic, power_decompose, DecomposeOutcome, IsoOptions, IsoOutcome};
use crate::modules::resolution::Resolution;
use crate::modules::GradedModule;
use crate::quasires::dimension::{qpd_certificate, syzygy_module, VerdictOptions};
use crate::quasires::{
    build_homotopies, koszul_qpres_residue_field, power_lift, qid_certified, qpd_certified, qpres_tensor_down,
};
use crate::report;

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub seed: u64,
    /// Highest degree shown in Hilbert function tables.
    pub degree_bound: i32,
    /// Resolution length for Betti/Bass tables and projective-dimension detection.
    pub length_bound: Option<usize>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { seed: 0, degree_bound: 6, length_bound: None }
    }
}

impl RunOptions {
    pub fn iso(&self) -> IsoOptions {
        IsoOptions { seed: self.seed, ..IsoOptions::default() }
    }

    pub fn verdict(&self) -> VerdictOptions {
        VerdictOptions { iso: self.iso(), pd_bound: self.length_bound }
    }

    fn length_for(&self, r: &Ring) -> usize {
        self.length_bound.unwrap_or_else(|| invariants::pd_bound(r))
    }

    pub fn header(&self) -> Json {
        json!({
            "schema_version": report::SCHEMA_VERSION,
            "artifact": {"name": "qhom", "version": env!("CARGO_PKG_VERSION")},
            "model": "graded-local",
            "seed": self.seed,
            "bounds": {"degree_bound": self.degree_bound, "length_bound": self.length_bound},
        })
    }
}

#[derive(Clone, Debug)]
pub enum Value {
    Ring(Ring),
    Module(GradedModule),
    Complex(ChainComplex),
}

/// Result of one statement.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub index: usize,
    pub line: usize,
    pub statement: String,
    pub text: String,
    pub json: Json,
    pub error: Option<String>,
}

impl Outcome {
    pub fn to_json(&self) -> Json {
        json!({
            "index": self.index,
            "line": self.line,
            "statement": self.statement,
            "result": self.json,
            "error": self.error,
        })
    }
}

pub struct Session {
    pub opts: RunOptions,
    env: Vec<(String, Value)>,
    pub outcomes: Vec<Outcome>,
}

impl Session {
    pub fn new(opts: RunOptions) -> Session {
        Session { opts, env: Vec::new(), outcomes: Vec::new() }
    }

    pub fn failures(&self) -> usize {
        self.outcomes.iter().filter(|o| o.error.is_some()).count()
    }

    pub fn lookup(&self, name: &str) -> Option<&Value> {
        self.env.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    fn define(&mut self, name: &str, v: Value) {
        match self.env.iter_mut().find(|(n, _)| n == name) {
            Some(slot) => slot.1 = v,
            None => self.env.push((name.to_string(), v)),
        }
    }

    /// Ring definitions in order.
    pub fn rings(&self) -> Vec<(String, Ring)> {
        self.env
            .iter()
            .filter_map(|(n, v)| match v {
                Value::Ring(r) => Some((n.clone(), r.clone())),
                _ => None,
            })
            .collect()
    }

    pub fn modules(&self) -> Vec<(String, GradedModule)> {
        self.env
            .iter()
            .filter_map(|(n, v)| match v {
                Value::Module(m) => Some((n.clone(), m.clone())),
                _ => None,
            })
            .collect()
    }

    pub fn complexes(&self) -> Vec<(String, ChainComplex)> {
        self.env
            .iter()
            .filter_map(|(n, v)| match v {
                Value::Complex(c) => Some((n.clone(), c.clone())),
                _ => None,
            })
            .collect()
    }

    /// Executes every statement; failures are recorded and execution continues.
    pub fn run(&mut self, script: &Script) {
        for (k, st) in script.statements.iter().enumerate() {
            let index = k + 1;
            let outcome = match self.exec(st) {
                Ok((text, json)) => Outcome { index, line: st.line, statement: st.to_string(), text, json, error: None },
                Err(e) => {
                    let e = Error::Runtime { statement: index, line: st.line, message: e.to_string() };
                    Outcome {
                        index,
                        line: st.line,
                        statement: st.to_string(),
                        text: format!("error: {e}"),
                        json: Json::Null,
                        error: Some(e.to_string()),
                    }
                }
            };
            self.outcomes.push(outcome);
        }
    }

    pub fn to_json(&self) -> Json {
        let mut out = self.opts.header();
        out["results"] = Json::Array(self.outcomes.iter().map(Outcome::to_json).collect());
        out["failures"] = json!(self.failures());
        out
    }

    fn exec(&mut self, st: &Statement) -> Result<(String, Json)> {
        match &st.kind {
            StmtKind::Ring { name, base, ideal } => {
                let r = self.build_ring(base, ideal)?;
                let text = format!("{name} = {}", r.describe());
                let json = json!({"ring": report::ring_json(&r)});
                self.define(name, Value::Ring(r));
                Ok((text, json))
            }
            StmtKind::Coker { name, ring, rows } => {
                let r = self.ring_named(ring)?;
                let rows = rows
                    .iter()
                    .map(|row| row.iter().map(|e| poly(e, &r)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                let m = GradedModule::coker(r, vec![0; rows.len()], rows)?;
                let out = (format!("{name} = {}", describe_module(&m)), json!({"module": report::module_json(&m)}));
                self.define(name, Value::Module(m));
                Ok(out)
            }
            StmtKind::Module { name, expr } => {
                let m = self.module(expr)?;
                let out = (format!("{name} = {}", describe_module(&m)), json!({"module": report::module_json(&m)}));
                self.define(name, Value::Module(m));
                Ok(out)
            }
            StmtKind::Complex { name, expr } => {
                let c = self.complex(expr)?;
                c.validate()?;
                let out = (format!("{name} = {}", describe_complex(&c)), json!({"complex": report::complex_json(&c)}));
                self.define(name, Value::Complex(c));
                Ok(out)
            }
            StmtKind::Print(items) => {
                let mut texts = Vec::new();
                let mut jsons = Vec::new();
                for e in items {
                    let (t, j) = self.print_item(e)?;
                    texts.push(format!("{e} = {t}"));
                    jsons.push(json!({"expr": e.to_string(), "value": j}));
                }
                Ok((texts.join("\n"), Json::Array(jsons)))
            }
            StmtKind::Check(e) => self.check(e),
        }
    }

    fn build_ring(&self, base: &RingBase, ideal: &[Expr]) -> Result<Ring> {
        let r = match base {
            RingBase::Poly { field, vars, order, weights } => {
                let field = match field {
                    FieldSpec::Rationals => Field::Rationals,
                    FieldSpec::Prime(p) => {
                        Field::prime(p.parse().map_err(|_| Error::InvalidInput(format!("bad characteristic `{p}`")))?)?
                    }
                };
                let order = match order.as_deref() {
                    None | Some("grevlex") => MonomialOrder::GRevLex,
                    Some("lex") => MonomialOrder::Lex,
                    Some(o) => return Err(Error::InvalidInput(format!("unknown monomial order `{o}`"))),
                };
                let weights = match weights {
                    None => vec![1; vars.len()],
                    Some(w) => w
                        .iter()
                        .map(|s| s.parse().map_err(|_| Error::InvalidInput(format!("bad weight `{s}`"))))
                        .collect::<Result<Vec<u32>>>()?,
                };
                let pr = PolyRing::with_options(field, vars.clone(), weights, order)?;
                QuotientRing::polynomial(Arc::new(pr))
            }
            RingBase::Named(n) => self.ring_named(n)?,
        };
        if ideal.is_empty() {
            return Ok(r);
        }
        let gens = ideal.iter().map(|e| poly(e, &r)).collect::<Result<Vec<_>>>()?;
        r.quotient_by(&gens)
    }

    fn ring_named(&self, name: &str) -> Result<Ring> {
        match self.lookup(name) {
            Some(Value::Ring(r)) => Ok(r.clone()),
            Some(_) => Err(Error::InvalidInput(format!("`{name}` is not a ring"))),
            None => Err(Error::InvalidInput(format!("undefined name `{name}`"))),
        }
    }

    fn ring(&self, e: &Expr) -> Result<Ring> {
        match e {
            Expr::Ident(n) => match self.lookup(n) {
                Some(Value::Ring(r)) => Ok(r.clone()),
                Some(Value::Module(m)) => Ok(m.ring.clone()),
                Some(Value::Complex(c)) => Ok(c.ring.clone()),
                None => Err(Error::InvalidInput(format!("undefined name `{n}`"))),
            },
            _ => Err(Error::InvalidInput(format!("expected a ring name, found `{e}`"))),
        }
    }

    /// Module expressions; a ring name stands for the ring as a module over itself.
    fn module(&self, e: &Expr) -> Result<GradedModule> {
        match e {
            Expr::Ident(n) => match self.lookup(n) {
                Some(Value::Module(m)) => Ok(m.clone()),
                Some(Value::Ring(r)) => Ok(GradedModule::free(r.clone(), vec![0])),
                Some(Value::Complex(_)) => Err(Error::InvalidInput(format!("`{n}` is a complex, not a module"))),
                None => Err(Error::InvalidInput(format!("undefined name `{n}`"))),
            },
            Expr::Call(f, args) => self.module_call(f, args),
            _ => Err(Error::InvalidInput(format!("expected a module, found `{e}`"))),
        }
    }

    fn module_call(&self, f: &str, args: &[Expr]) -> Result<GradedModule> {
        let arity = |n: usize| arity(f, args, n);
        Ok(match f {
            "free" => {
                arity(2)?;
                GradedModule::free(self.ring(&args[0])?, int_list(&args[1])?)
            }
            "residue" => {
                arity(1)?;
                GradedModule::residue_field(self.ring(&args[0])?)
            }
            "cyclic" | "ideal" => {
                arity(2)?;
                let r = self.ring(&args[0])?;
                let gens = poly_list(&args[1], &r)?;
                if f == "cyclic" {
                    GradedModule::cyclic(r, &gens)?
                } else {
                    GradedModule::ideal(r, &gens)?
                }
            }
            "twist" => {
                arity(2)?;
                self.module(&args[0])?.twist(int(&args[1])? as i32)
            }
            "sum" => {
                let mut m = self.module(args.first().ok_or_else(|| bad_arity(f, 1))?)?;
                for a in &args[1..] {
                    m = m.direct_sum(&self.module(a)?)?;
                }
                m
            }
            "power" => {
                arity(2)?;
                self.module(&args[0])?.power(int(&args[1])? as usize)
            }
            "ext" | "tor" => {
                arity(3)?;
                let i = int(&args[0])? as usize;
                let (m, n) = (self.module(&args[1])?, self.module(&args[2])?);
                if f == "ext" {
                    ext(i, &m, &n)?
                } else {
                    tor(i, &m, &n)?
                }
            }
            "hom" => {
                arity(2)?;
                hom(&self.module(&args[0])?, &self.module(&args[1])?)?
            }
            "base_change" => {
                arity(2)?;
                self.module(&args[0])?.base_change(&self.ring(&args[1])?)?
            }
            "restrict" => {
                arity(2)?;
                self.module(&args[0])?.restrict_to(&self.ring(&args[1])?)?
            }
            "transport" => {
                arity(2)?;
                self.module(&args[0])?.transport(&self.ring(&args[1])?)?
            }
            "matlis" => {
                arity(1)?;
                matlis_dual(&self.module(&args[0])?)?.module
            }
            "omega" => {
                arity(1)?;
                dualizing_module(&self.ring(&args[0])?)?.module
            }
            "cm_dual" => {
                arity(1)?;
                let m = self.module(&args[0])?;
                cm_dual(&m, &dualizing_module(&m.ring)?)?
            }
            "syzygy" => {
                arity(2)?;
                syzygy_module(&self.module(&args[0])?, int(&args[1])? as usize)
            }
            "homology" => {
                arity(2)?;
                self.complex(&args[0])?.homology(int(&args[1])? as i32)
            }
            "minimize" => {
                arity(1)?;
                self.module(&args[0])?.minimize()
            }
            _ => return Err(Error::InvalidInput(format!("unknown module function `{f}`"))),
        })
    }

    fn complex(&self, e: &Expr) -> Result<ChainComplex> {
        match e {
            Expr::Ident(n) => match self.lookup(n) {
                Some(Value::Complex(c)) => Ok(c.clone()),
                Some(_) => Err(Error::InvalidInput(format!("`{n}` is not a complex"))),
                None => Err(Error::InvalidInput(format!("undefined name `{n}`"))),
            },
            Expr::Call(f, args) => {
                let arity = |n: usize| arity(f, args, n);
                match f.as_str() {
                    "koszul" => {
                        arity(2)?;
                        let r = self.ring(&args[0])?;
                        koszul_complex(&poly_list(&args[1], &r)?, &r)
                    }
                    "resolution" => {
                        let m = self.module(args.first().ok_or_else(|| bad_arity(f, 1))?)?;
                        let n = match args.get(1) {
                            Some(a) => int(a)? as usize,
                            None => self.opts.length_for(&m.ring),
                        };
                        Ok(ChainComplex::free_resolution(&m, n))
                    }
                    "shift" => {
                        arity(2)?;
                        Ok(self.complex(&args[0])?.shift(int(&args[1])? as i32))
                    }
                    "dual" => {
                        arity(1)?;
                        Ok(self.complex(&args[0])?.dual())
                    }
                    "base_change" => {
                        arity(2)?;
                        self.complex(&args[0])?.base_change(&self.ring(&args[1])?)
                    }
                    "cone" => {
                        arity(2)?;
                        let c = self.complex(&args[0])?;
                        let f = poly(&args[1], &c.ring)?;
                        c.multiplication_map(&f).cone()
                    }
                    _ => Err(Error::InvalidInput(format!("unknown complex function `{f}`"))),
                }
            }
            _ => Err(Error::InvalidInput(format!("expected a complex, found `{e}`"))),
        }
    }

    fn print_item(&self, e: &Expr) -> Result<(String, Json)> {
        if let Expr::Ident(n) = e {
            return Ok(match self.lookup(n) {
                Some(Value::Ring(r)) => (r.describe(), report::ring_json(r)),
                Some(Value::Module(m)) => (describe_module(m), report::module_json(m)),
                Some(Value::Complex(c)) => (describe_complex(c), report::complex_json(c)),
                None => return Err(Error::InvalidInput(format!("undefined name `{n}`"))),
            });
        }
        let Expr::Call(f, args) = e else {
            return Err(Error::InvalidInput(format!("cannot print `{e}`")));
        };
        let arity = |n: usize| arity(f, args, n);
        let bound = |m: &GradedModule, k: usize| -> Result<usize> {
            match args.get(k) {
                Some(a) => Ok(int(a)? as usize),
                None => Ok(self.opts.length_for(&m.ring)),
            }
        };
        Ok(match f.as_str() {
            "depth" => {
                arity(1)?;
                let d = invariants::depth(&self.module(&args[0])?)?;
                (d.to_string(), json!(d))
            }
            "koszul_depth" => {
                arity(1)?;
                let d = invariants::depth_via_koszul(&self.module(&args[0])?)?;
                (d.to_string(), json!(d))
            }
            "dim" => {
                arity(1)?;
                let d = self.module(&args[0])?.krull_dim();
                (d.to_string(), json!(d))
            }
            "is_cm" => {
                arity(1)?;
                let b = invariants::is_cm_module(&self.module(&args[0])?)?;
                (b.to_string(), json!(b))
            }
            "is_gorenstein" => {
                arity(1)?;
                let b = invariants::is_gorenstein(&self.ring(&args[0])?)?;
                (b.to_string(), json!(b))
            }
            "type" => {
                arity(1)?;
                let t = invariants::module_type(&self.module(&args[0])?)?;
                (t.to_string(), json!(t))
            }
            "pd" => {
                let m = self.module(&args[0])?;
                let b = bound(&m, 1)?;
                match invariants::projective_dimension(&m, b) {
                    Some(p) => (p.to_string(), json!(p)),
                    None => (format!("unknown (no termination within {b} steps)"), Json::Null),
                }
            }
            "betti" => {
                let m = self.module(&args[0])?;
                let b = invariants::betti_numbers(&m, bound(&m, 1)?);
                let mut t = format!("{:?}", b.values);
                if let Some(k) = b.truncated_at {
                    t.push_str(&format!(" (truncated at {k})"));
                }
                (t, json!(b))
            }
            "betti_table" => {
                let m = self.module(&args[0])?;
                let t = Resolution::compute(&m, bound(&m, 1)?).betti_table();
                (format_betti(&t), report::betti_json(&t))
            }
            "bass" => {
                let m = self.module(&args[0])?;
                let b = invariants::bass_numbers(&m, bound(&m, 1)?)?;
                (format!("{b:?}"), json!(b))
            }
            "hilbert" => {
                arity(1)?;
                let m = self.module(&args[0])?;
                let h = m.hilbert_series();
                let dims = h.dims(0, self.opts.degree_bound);
                (format!("{}  dims[0..={}] = {dims:?}", h.format(), self.opts.degree_bound), json!({"series": h.format(), "dims": dims}))
            }
            "gens" => {
                arity(1)?;
                let g = self.module(&args[0])?.generator_degrees();
                (format!("{g:?}"), json!(g))
            }
            "homology" => {
                arity(1)?;
                let c = self.complex(&args[0])?;
                let t = c.homology_table();
                let parts: Vec<String> = t
                    .entries
                    .iter()
                    .filter(|(_, h)| !h.is_zero())
                    .map(|(i, h)| format!("H_{i}: {}", h.hilbert_series().format()))
                    .collect();
                (if parts.is_empty() { "exact".into() } else { parts.join("; ") }, report::homology_json(&t))
            }
            "euler" => {
                arity(1)?;
                let c = self.complex(&args[0])?;
                let ok = c.euler_identity_holds(&c.homology_table());
                (ok.to_string(), json!(ok))
            }
            "regular" => {
                arity(2)?;
                let r = self.ring(&args[0])?;
                let b = is_regular_sequence(&poly_list(&args[1], &r)?, &r)?;
                (b.to_string(), json!(b))
            }
            "iso" => {
                arity(2)?;
                let o = is_isomorphic(&self.module(&args[0])?, &self.module(&args[1])?, self.opts.iso())?;
                (o.label().to_string(), json!(o.label()))
            }
            "invariants" => {
                arity(1)?;
                let m = self.module(&args[0])?;
                let is_ring = matches!(&args[0], Expr::Ident(n) if matches!(self.lookup(n), Some(Value::Ring(_))));
                let rep = invariants::report(&m, self.opts.length_for(&m.ring), is_ring)?;
                (format!("{rep:?}"), json!(rep))
            }
            _ => {
                if let Ok(m) = self.module(e) {
                    (describe_module(&m), report::module_json(&m))
                } else {
                    let c = self.complex(e)?;
                    (describe_complex(&c), report::complex_json(&c))
                }
            }
        })
    }

    fn check(&self, e: &Expr) -> Result<(String, Json)> {
        let Expr::Call(f, args) = e else {
            return Err(Error::InvalidInput(format!("`check` expects a command, found `{e}`")));
        };
        let arity = |n: usize| arity(f, args, n);
        let iso = self.opts.iso();
        match f.as_str() {
            "qpd" | "qid" => {
                arity(1)?;
                let m = self.module(&args[0])?;
                let v = if f == "qpd" {
                    qpd_certified(&m, self.opts.verdict())?
                } else {
                    qid_certified(&m, self.opts.verdict())?
                };
                let text = match (&v.value, &v.route) {
                    (crate::quasires::DimensionValue::Finite { value }, Some(route)) => {
                        format!("{f} = {value} (route {route}, measure {})", v.certificate.as_ref().map_or(0, |c| c.measure))
                    }
                    (crate::quasires::DimensionValue::Infinite, _) => {
                        format!("{f} = infinity ({})", v.trail.first().map_or("", |t| t.id))
                    }
                    (crate::quasires::DimensionValue::Interval { lower, .. }, _) => {
                        format!("{f} unknown: no witness; finite value would be {lower}")
                    }
                    _ => format!("{f}: {:?}", v.value),
                };
                Ok((text, report::verdict_json(&v)))
            }
            "tensor_down" => {
                arity(3)?;
                let m = self.module(&args[0])?;
                let q = self.ring(&args[1])?;
                let fs = poly_list(&args[2], &q)?;
                let c = qpres_tensor_down(&m, &q, &fs, iso)?;
                Ok((format!("multiplicities {:?}, measure {}", c.multiplicities(), c.measure), report::certificate_json(&c)))
            }
            "koszul_residue" => {
                arity(1)?;
                let c = koszul_qpres_residue_field(&self.ring(&args[0])?, iso)?;
                Ok((format!("multiplicities {:?}, measure {}", c.multiplicities(), c.measure), report::certificate_json(&c)))
            }
            "homotopies" => {
                arity(3)?;
                let c = self.complex(&args[0])?;
                let fp = poly(&args[1], &c.ring)?;
                let n = int(&args[2])? as u32;
                let h = build_homotopies(&c, &fp, n)?;
                let pr = c.ring.poly();
                let betas: Vec<Json> = h
                    .betas
                    .iter()
                    .enumerate()
                    .map(|(i, b)| json!({"index": i, "matrix": report::matrix_json(b, pr)}))
                    .collect();
                Ok((format!("identity verified at indices 0..{n}"), json!({"n": n, "betas": betas, "identity": "verified"})))
            }
            "power_lift" => {
                arity(4)?;
                let c = self.complex(&args[0])?;
                let fp = poly(&args[1], &c.ring)?;
                let n = int(&args[2])? as u32;
                let m = self.module(&args[3])?;
                let p = power_lift(&c, &fp, n, &m, iso)?;
                let text = format!(
                    "splitting {} ; certificate {}",
                    if p.all_verified() { "verified" } else { "NOT verified" },
                    p.certificate.as_ref().map_or("none".to_string(), |c| format!("{:?}", c.multiplicities()))
                );
                let json = json!({
                    "complex": report::complex_json(&p.complex),
                    "homology": report::homology_json(&p.homology),
                    "splittings": p.splittings.iter().map(|(i, s)| json!({"index": i, "check": s})).collect::<Vec<_>>(),
                    "certificate": p.certificate.as_ref().map(report::certificate_json),
                });
                if !p.all_verified() {
                    return Err(Error::Unverified(text));
                }
                Ok((text, json))
            }
            "iso" => {
                arity(2)?;
                let (m, n) = (self.module(&args[0])?, self.module(&args[1])?);
                let o = is_isomorphic(&m, &n, iso)?;
                let json = match &o {
                    IsoOutcome::Isomorphic(w) => {
                        json!({"outcome": o.label(), "witness": report::matrix_json(&w.matrix, m.ring.poly()), "seed": iso.seed})
                    }
                    IsoOutcome::NotIsomorphic(why) | IsoOutcome::Undetermined(why) => json!({"outcome": o.label(), "reason": why}),
                };
                Ok((o.label().to_string(), json))
            }
            "decompose" => {
                arity(2)?;
                let (h, m) = (self.module(&args[0])?, self.module(&args[1])?);
                match power_decompose(&h, &m, iso)? {
                    DecomposeOutcome::Decomposed(d) => Ok((
                        format!("{} copies, shifts {:?}", d.multiplicity, d.shifts),
                        json!({
                            "multiplicity": d.multiplicity,
                            "shifts": d.shifts,
                            "witness": report::matrix_json(&d.witness.matrix, h.ring.poly()),
                        }),
                    )),
                    DecomposeOutcome::NotAPower(why) => Ok((format!("not a sum of copies: {why}"), json!({"outcome": "not_a_power", "reason": why}))),
                    DecomposeOutcome::Undetermined(why) => Ok((format!("undetermined: {why}"), json!({"outcome": "undetermined", "reason": why}))),
                }
            }
            "complex" => {
                arity(1)?;
                let c = self.complex(&args[0])?;
                c.validate()?;
                let t = c.homology_table();
                let euler = c.euler_identity_holds(&t);
                if !euler {
                    return Err(Error::Unverified("Euler characteristic identity fails".into()));
                }
                Ok(("valid; Euler characteristic identity holds".into(), json!({"valid": true, "euler": euler, "homology": report::homology_json(&t)})))
            }
            "double_dual" => {
                arity(1)?;
                let m = self.module(&args[0])?;
                let dd = matlis_dual(&matlis_dual(&m)?.module)?.module;
                let o = is_isomorphic(&dd, &m, iso)?;
                if !o.is_iso() {
                    return Err(Error::Unverified(format!("D(D(M)) vs M: {}", o.label())));
                }
                Ok(("D(D(M)) isomorphic to M".into(), json!({"outcome": o.label()})))
            }
            "probe" => {
                arity(2)?;
                let m = self.module(&args[0])?;
                let q = self.ring(&args[1])?;
                let mq = m.restrict_to(&q)?;
                let mut a = Vec::new();
                let over_q = qpd_certificate(&mq, iso, &mut a)?.map(|(r, _)| r);
                let mut b = Vec::new();
                let over_r = qpd_certificate(&m, iso, &mut b)?.map(|(r, _)| r);
                let text = format!(
                    "probe only: qpd over Q {}, qpd over R {}",
                    over_q.as_deref().map_or("no witness".to_string(), |r| format!("finite ({r})")),
                    over_r.as_deref().map_or("no witness".to_string(), |r| format!("finite ({r})")),
                );
                Ok((text, json!({"probe": true, "qpd_over_q_route": over_q, "qpd_over_r_route": over_r, "asserted": false})))
            }
            _ => Err(Error::InvalidInput(format!("unknown check `{f}`"))),
        }
    }
}

fn bad_arity(f: &str, n: usize) -> Error {
    Error::InvalidInput(format!("`{f}` expects {n} argument(s)"))
}

fn arity(f: &str, args: &[Expr], n: usize) -> Result<()> {
    if args.len() == n {
        Ok(())
    } else {
        Err(bad_arity(f, n))
    }
}

fn int(e: &Expr) -> Result<i64> {
    e.as_int().ok_or_else(|| Error::InvalidInput(format!("expected an integer, found `{e}`")))
}

fn int_list(e: &Expr) -> Result<Vec<i32>> {
    match e {
        Expr::List(items) => items.iter().map(|i| int(i).map(|v| v as i32)).collect(),
        _ => Err(Error::InvalidInput(format!("expected a list of integers, found `{e}`"))),
    }
}

fn poly(e: &Expr, r: &Ring) -> Result<Polynomial> {
    let p = e.to_poly().ok_or_else(|| Error::InvalidInput(format!("expected a polynomial, found `{e}`")))?;
    Ok(r.reduce(&p.eval(r.poly())?))
}

fn poly_list(e: &Expr, r: &Ring) -> Result<Vec<Polynomial>> {
    match e {
        Expr::List(items) => items.iter().map(|i| poly(i, r)).collect(),
        _ => Err(Error::InvalidInput(format!("expected a list of polynomials, found `{e}`"))),
    }
}

fn describe_module(m: &GradedModule) -> String {
    let pr = m.ring.poly();
    let rels: &PolyMatrix = m.rels();
    format!(
        "module over {} with generator degrees {:?}, {} relation(s), Hilbert series {}{}",
        m.ring.describe(),
        m.gens(),
        rels.cols(),
        m.hilbert_series().format(),
        if rels.cols() > 0 && rels.cols() <= 6 {
            format!(", relations {:?}", rels.format_rows(pr))
        } else {
            String::new()
        }
    )
}

fn describe_complex(c: &ChainComplex) -> String {
    let ranks: Vec<String> = (c.lo..=c.hi()).map(|i| format!("{i}:{}", c.rank(i))).collect();
    let mut s = format!("complex over {} with ranks [{}]", c.ring.describe(), ranks.join(" "));
    if let Some(t) = c.truncated_at {
        s.push_str(&format!(" (truncated at {t})"));
    }
    s
}

fn format_betti(t: &crate::modules::resolution::BettiTable) -> String {
    let parts: Vec<String> = t.entries.iter().map(|(i, d, c)| format!("b[{i},{d}]={c}")).collect();
    parts.join(" ")
}

/// Parses and runs a script.
pub fn run_script(text: &str, opts: RunOptions) -> Result<Session> {
    let script = super::parser::parse(text)?;
    let mut s = Session::new(opts);
    s.run(&script);
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_ring_script() {
        let text = "ring R = poly(QQ, [x, y, z]) / ideal(y^2, y*z, z^2);\n\
                    print depth(R), dim(R), is_cm(R), is_gorenstein(R);\n\
                    ring S = R / ideal(x);\n\
                    module M = base_change(ideal(R, [x, y, z]), S);\n\
                    check qid(M);\n\
                    check qid(R);\n\
                    print depth(undefined);\n";
        let s = run_script(text, RunOptions::default()).unwrap();
        assert_eq!(s.outcomes[1].json[0]["value"], json!(1));
        assert_eq!(s.outcomes[1].json[1]["value"], json!(1));
        assert_eq!(s.outcomes[4].json["value"], json!({"kind": "finite", "value": 0}));
        assert_eq!(s.outcomes[5].json["value"], json!({"kind": "infinite"}));
        assert_eq!(s.failures(), 1);
        assert!(s.outcomes[6].error.as_ref().unwrap().contains("statement 7"));
    }
}
