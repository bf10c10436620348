//! Acceptance suite: each criterion prints one `PASS`/`FAIL` line; the process fails if any does.

mod common;

use std::process::{Command, ExitCode};
use std::time::Instant;

use qhom::algebra::syzygy::syzygies;
use qhom::algebra::{PolyMatrix, Polynomial, QuotientRing, Ring};
use qhom::cli::runner::RunOptions;
use qhom::complexes::ChainComplex;
use qhom::duality::{cm_dual, dualizing_module, is_artinian, matlis_dual};
use qhom::invariants::corpus::{self, CorpusEntry};
use qhom::invariants::harness::{corpus_complexes, theorem_harness};
use qhom::invariants::{depth_via_koszul, is_cm, is_cm_module, is_gorenstein, ring_depth, ring_dim};
use qhom::modules::iso::{is_isomorphic, IsoOptions};
use qhom::modules::GradedModule;
use qhom::quasires::dimension::VerdictOptions;
use qhom::quasires::{
    build_homotopies, dualize_quasi_resolution, koszul_qpres_residue_field, power_lift, qid_certified,
    qpd_certified, qpres_tensor_down, DimensionValue,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

type Outcome = Result<String, String>;

/// Complexes built along the way; criterion 9 checks the Euler identity on all of them.
struct Ctx {
    corpus: Vec<CorpusEntry>,
    complexes: Vec<(String, ChainComplex)>,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|x| x.to_string())
}

fn entry<'a>(ctx: &'a Ctx, name: &str) -> &'a CorpusEntry {
    ctx.corpus.iter().find(|c| c.name == name).expect("corpus ring")
}

fn module<'a>(ctx: &'a Ctx, ring: &str, name: &str) -> &'a GradedModule {
    &entry(ctx, ring).modules.iter().find(|m| m.0 == name).expect("corpus module").1
}

fn iso(a: &GradedModule, b: &GradedModule) -> Result<bool, String> {
    Ok(e(is_isomorphic(a, b, IsoOptions::default()))?.is_iso())
}

fn tensor_down(ctx: &mut Ctx) -> Outcome {
    let q = ring(&["x", "y"], &[]);
    let fs = [parse(&q, "x^2"), parse(&q, "y^2")];
    let r = e(q.quotient_by(&fs))?;
    let k = GradedModule::residue_field(r);
    let cert = e(qpres_tensor_down(&k, &q, &fs, IsoOptions::default()))?;
    let got = cert.multiplicities();
    ctx.complexes.push(("tensor-down".into(), cert.complex.clone()));
    ensure(got == vec![(0, 1), (1, 2), (2, 1)], || format!("multiplicities {got:?}"))?;
    Ok(format!("a_i = {:?}", got.iter().map(|p| p.1).collect::<Vec<_>>()))
}

fn power_lifting(ctx: &mut Ctx) -> Outcome {
    let q = ring(&["x"], &[]);
    let x = parse(&q, "x");
    let k = GradedModule::residue_field(q.clone());
    let f = ChainComplex::free_resolution(&k, 3);
    ctx.complexes.push(("resolution of k over k[x]".into(), f.clone()));
    for n in 2..=4u32 {
        let h = e(build_homotopies(&f, &x, n))?;
        e(h.verify(&f)).map_err(|m| format!("n = {n}: homotopy identity: {m}"))?;
        let p = e(power_lift(&f, &x, n, &k, IsoOptions::default()))?;
        ensure(p.all_verified(), || format!("n = {n}: splittings {:?}", p.splittings))?;
        let covered = p.splittings.iter().filter(|(i, _)| *i < n as i32).count();
        ensure(covered > 0, || format!("n = {n}: no index checked"))?;
        ctx.complexes.push((format!("F/(x^{n})"), p.complex.clone()));
    }
    Ok("n = 2, 3, 4 split and homotopies exact".into())
}

fn example_ring(ctx: &mut Ctx) -> Outcome {
    let r = entry(ctx, "E").ring.clone();
    let (dim, depth) = (ring_dim(&r), e(ring_depth(&r))?);
    let (cm, gor) = (e(is_cm(&r))?, e(is_gorenstein(&r))?);
    ensure(dim == 1 && depth == 1 && cm && !gor, || format!("dim {dim} depth {depth} cm {cm} gorenstein {gor}"))?;
    let v = module(ctx, "F", "F_v");
    let k = module(ctx, "F", "F_k");
    // m is generated in degree 1, so m/xm is k(-1)^3 as a graded module.
    ensure(iso(v, &k.twist(-1).power(3))?, || "m/xm is not k(-1)^3".into())?;
    ensure(!iso(v, &k.power(3))?, || "graded iso ignores the degree shift".into())?;
    let s_depth = e(ring_depth(&entry(ctx, "F").ring))?;
    let verdict = e(qid_certified(v, VerdictOptions::default()))?;
    ensure(verdict.finite_value() == Some(0) && s_depth == 0, || {
        format!("qid(m/xm) = {:?}, depth R/(x) = {s_depth}", verdict.value)
    })?;
    if let Some(c) = &verdict.certificate {
        ctx.complexes.push(("qid certificate of m/xm".into(), c.complex.clone()));
    }
    Ok(format!("dim 1, depth 1, CM, not Gorenstein; m/xm = k(-1)^3; qid 0 via {}", verdict.route.unwrap_or_default()))
}

fn bass_formula(ctx: &mut Ctx) -> Outcome {
    let report = e(theorem_harness(&ctx.corpus, &RunOptions::default()))?;
    let t = report.theorem("qid-depth-formula").ok_or("missing theorem")?;
    ensure(t.violations.is_empty(), || format!("{:?}", t.violations))?;
    let mut checked = 0;
    for inst in &report.instances {
        let Some(DimensionValue::Finite { value }) = inst.qid else { continue };
        let r = &entry(ctx, &inst.ring).ring;
        let free = GradedModule::free(r.clone(), vec![0]);
        let depth = e(depth_via_koszul(&free))?;
        ensure(value == depth as i32, || format!("{}/{}: qid {value} but depth R = {depth}", inst.ring, inst.module))?;
        checked += 1;
    }
    ensure(checked >= 10, || format!("only {checked} finite qid values"))?;
    ensure(report.violations() == 0, || format!("{} harness violations", report.violations()))?;
    Ok(format!("{checked} finite qid values equal Koszul depth; harness clean"))
}

fn gorenstein_obstruction(ctx: &mut Ctx) -> Outcome {
    let e_ring = GradedModule::free(entry(ctx, "E").ring.clone(), vec![0]);
    let v = e(qid_certified(&e_ring, VerdictOptions::default()))?;
    ensure(v.is_infinite(), || format!("qid E = {:?}", v.value))?;
    let ids: Vec<&str> = v.trail.iter().map(|t| t.id).collect();
    ensure(ids.contains(&"finite-pd-and-qid-forces-gorenstein"), || format!("trail {ids:?}"))?;
    for name in ["D", "C"] {
        let r = GradedModule::free(entry(ctx, name).ring.clone(), vec![0]);
        let v = e(qid_certified(&r, VerdictOptions::default()))?;
        ensure(v.finite_value() == Some(0), || format!("qid {name} = {:?}", v.value))?;
        if let Some(c) = &v.certificate {
            ctx.complexes.push((format!("qid certificate of {name}"), c.complex.clone()));
        }
    }
    Ok("qid E = infinite with the finite-pd trail; qid D = qid C = 0".into())
}

fn koszul_residue(ctx: &mut Ctx) -> Outcome {
    let mut n = 0;
    for c in &ctx.corpus {
        let cert = e(koszul_qpres_residue_field(&c.ring, IsoOptions::default())).map_err(|m| format!("{}: {m}", c.name))?;
        let table = cert.complex.homology_table();
        for (i, h) in &table.entries {
            ensure(h.killed_by_maximal_ideal(), || format!("{}: H_{i} not killed by m", c.name))?;
        }
        n += 1;
        ctx.complexes.push((format!("Koszul complex of {}", c.name), cert.complex.clone()));
    }
    Ok(format!("{n} rings"))
}

fn duality(ctx: &mut Ctx) -> Outcome {
    let mods = corpus::random_artinian_modules(2024, 25);
    for (i, m) in mods.iter().enumerate() {
        let dd = e(matlis_dual(&e(matlis_dual(m))?.module))?.module;
        ensure(iso(m, &dd)?, || format!("random module {i}: D(D(M)) not isomorphic to M"))?;
    }
    let mut cm_count = 0;
    for c in &ctx.corpus {
        if !e(is_cm(&c.ring))? {
            continue;
        }
        let omega = e(dualizing_module(&c.ring))?;
        for (name, m) in &c.modules {
            if m.is_zero() || !e(is_cm_module(m))? {
                continue;
            }
            let back = e(cm_dual(&e(cm_dual(m, &omega))?, &omega))?;
            ensure(iso(m, &back)?, || format!("{}/{name}: cm_dual twice is not the identity", c.name))?;
            cm_count += 1;
        }
    }
    let mut dualized = 0;
    for c in ctx.corpus.iter().filter(|c| is_artinian(&c.ring)) {
        for (name, m) in &c.modules {
            let v = e(qpd_certified(m, VerdictOptions::default()))?;
            let Some(cert) = v.certificate else { continue };
            let d = e(dualize_quasi_resolution(&cert, IsoOptions::default()))?;
            // Dualizing sends homological index i to -i.
            let mut expected: Vec<(i32, usize)> = cert.multiplicities().into_iter().map(|(i, a)| (-i, a)).collect();
            expected.sort();
            ensure(d.multiplicities() == expected, || {
                format!("{}/{name}: {:?} became {:?}", c.name, cert.multiplicities(), d.multiplicities())
            })?;
            ensure(d.measure == cert.measure, || format!("{}/{name}: measure changed", c.name))?;
            dualized += 1;
        }
    }
    ensure(cm_count > 0 && dualized > 0, || "nothing checked".into())?;
    Ok(format!("25 Matlis round trips, {cm_count} CM round trips, {dualized} dualized certificates"))
}

fn gorenstein_equivalence(ctx: &mut Ctx) -> Outcome {
    let mut n = 0;
    for name in ["D", "C", "H"] {
        let c = entry(ctx, name);
        ensure(e(is_gorenstein(&c.ring))?, || format!("{name} not Gorenstein"))?;
        for (mname, m) in &c.modules {
            let p = e(qpd_certified(m, VerdictOptions::default()))?;
            let i = e(qid_certified(m, VerdictOptions::default()))?;
            let (pf, iff) = (p.finite_value().is_some(), i.finite_value().is_some());
            ensure(pf == iff, || format!("{name}/{mname}: qpd {:?} qid {:?}", p.value, i.value))?;
            ensure(pf, || format!("{name}/{mname}: neither certificate found"))?;
            n += 1;
        }
    }
    Ok(format!("{n} modules carry both certificates"))
}

fn oracle_ideal(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let vars: &[&str] = if rng.gen_bool(0.5) { &["x", "y"] } else { &["x", "y", "z"] };
    let pr = poly_ring(vars);
    let n = vars.len();
    let gens: Vec<Polynomial> =
        (0..rng.gen_range(1..=4)).map(|_| random_form(&pr, rng.gen_range(1..=3), 0.5, rng)).collect();
    let r: Ring = e(QuotientRing::new(pr.clone(), gens.clone()))?;
    let dense_gens: Vec<Dense> = gens.iter().map(dense).collect();
    let gb_leads: Vec<Vec<u16>> = r.gb().iter().map(|g| g.leading().unwrap().0.exps().to_vec()).collect();
    let quotient = GradedModule::free(r.clone(), vec![0]);
    for d in 0..=6 {
        let rows = ideal_component(&dense_gens, n, d);
        let rk = rank(rows.clone());
        let mons = monomials(n, d);
        let initial = mons.iter().filter(|m| gb_leads.iter().any(|l| l.iter().zip(m.iter()).all(|(a, b)| a <= b))).count();
        ensure(initial == rk, || format!("degree {d}: initial ideal has {initial} monomials, I_d has rank {rk}"))?;
        ensure(quotient.dim(d) == mons.len() - rk, || format!("degree {d}: Hilbert function mismatch"))?;
        for g in r.gb().iter().filter(|g| g.degree(&pr) == Some(d)) {
            ensure(in_span(&rows, &coords(&dense(g), &mons)), || "Groebner element outside the ideal".into())?;
        }
        if d <= 4 {
            let f = random_form(&pr, d, 0.7, rng);
            let nf = r.reduce(&f);
            let diff = dense(&f.sub(&nf, &pr));
            ensure(diff.is_empty() || in_span(&rows, &coords(&diff, &mons)), || "f - NF(f) outside I".into())?;
            let member = in_span(&rows, &coords(&dense(&f), &mons));
            ensure(member == nf.is_zero(), || format!("degree {d}: membership disagrees with normal form"))?;
            if let Some(g) = dense_gens.first() {
                let m = &monomials(n, d - degree(g).unwrap_or(d + 1)).first().cloned();
                if let Some(m) = m {
                    let inside: Polynomial = Polynomial::from_terms(
                        times_monomial(g, m)
                            .into_iter()
                            .map(|(ex, c)| (qhom::algebra::Monomial::from_exps(&ex), pr.field.from_i64(c as i64)))
                            .collect(),
                        &pr,
                    );
                    ensure(r.reduce(&inside).is_zero(), || "ideal element with nonzero normal form".into())?;
                }
            }
        }
    }
    Ok(())
}

fn oracle_syzygies(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let vars: &[&str] = if rng.gen_bool(0.5) { &["x", "y"] } else { &["x", "y", "z"] };
    let pr = poly_ring(vars);
    let n = vars.len();
    let s: Ring = QuotientRing::polynomial(pr.clone());
    let nrows = rng.gen_range(1..=2);
    let ncols = rng.gen_range(2..=3);
    let row_twists: Vec<i32> = (0..nrows).map(|_| rng.gen_range(0..=1)).collect();
    let col_twists: Vec<i32> = (0..ncols).map(|_| rng.gen_range(2..=3)).collect();
    let mut a = PolyMatrix::zero(row_twists.clone(), col_twists.clone());
    for (i, rt) in row_twists.iter().enumerate() {
        for (j, ct) in col_twists.iter().enumerate() {
            a.set(i, j, random_form(&pr, ct - rt, 0.5, rng));
        }
    }
    let z = syzygies(&a, &s);
    let cols: Vec<ModVec> = (0..z.cols())
        .map(|j| ModVec { entries: (0..z.rows()).map(|i| dense(z.get(i, j))).collect(), deg: z.col_twists[j] })
        .collect();
    for (j, c) in cols.iter().enumerate() {
        for i in 0..a.rows() {
            let mut acc = Dense::new();
            for (k, p) in c.entries.iter().enumerate() {
                add_into(&mut acc, &mul(&dense(a.get(i, k)), p));
            }
            ensure(acc.is_empty(), || format!("syzygy column {j} is not in the kernel"))?;
        }
    }
    for d in 0..=6 {
        let span = rank(submodule_component(&cols, &col_twists, n, d));
        let kernel = kernel_dim(&a, n, d);
        ensure(span == kernel, || format!("degree {d}: syzygies span {span}, kernel has dimension {kernel}"))?;
    }
    Ok(())
}

fn kernel_correctness(ctx: &mut Ctx) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for i in 0..25 {
        oracle_ideal(&mut rng).map_err(|m| format!("ideal {i}: {m}"))?;
    }
    for i in 0..25 {
        oracle_syzygies(&mut rng).map_err(|m| format!("matrix {i}: {m}"))?;
    }
    ctx.complexes.extend(corpus_complexes(&ctx.corpus, 4));
    for (name, c) in &ctx.complexes {
        e(c.validate()).map_err(|m| format!("{name}: {m}"))?;
        ensure(c.euler_identity_holds(&c.homology_table()), || format!("{name}: Euler identity fails"))?;
    }
    Ok(format!("50 oracle instances agree; Euler identity on {} complexes", ctx.complexes.len()))
}

fn determinism(_: &mut Ctx) -> Outcome {
    let run = || -> Result<Vec<u8>, String> {
        let out = e(Command::new(env!("CARGO_BIN_EXE_qhom")).args(["verify-paper", "--seed", "7", "--json", "-"]).output())?;
        ensure(out.status.success(), || format!("exit status {}: {}", out.status, String::from_utf8_lossy(&out.stderr)))?;
        Ok(out.stdout)
    };
    let (a, b) = (run()?, run()?);
    ensure(!a.is_empty() && a == b, || "outputs differ".into())?;
    let v: serde_json::Value = e(serde_json::from_slice(&a))?;
    ensure(v["seed"] == 7, || "seed not recorded".into())?;
    Ok(format!("{} identical bytes", a.len()))
}

fn main() -> ExitCode {
    let corpus = corpus::standard().expect("standard corpus loads");
    let mut ctx = Ctx { corpus, complexes: Vec::new() };
    let criteria: [(&str, fn(&mut Ctx) -> Outcome); 10] = [
        ("tensor-down multiplicities", tensor_down),
        ("power lifting", power_lifting),
        ("example ring", example_ring),
        ("Bass formula", bass_formula),
        ("Gorenstein obstruction", gorenstein_obstruction),
        ("Koszul residue-field certificate", koszul_residue),
        ("duality round trips", duality),
        ("Gorenstein qpd iff qid", gorenstein_equivalence),
        ("kernel correctness", kernel_correctness),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = f(&mut ctx);
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(m) => println!("PASS {:2} {name}: {m} ({secs:.1}s)", i + 1),
            Err(m) => {
                failed += 1;
                println!("FAIL {:2} {name}: {m} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
