//! Shipped corpus and seeded random modules.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::field::Field;
use crate::algebra::matrix::PolyMatrix;
use crate::algebra::poly::{PolyRing, Polynomial};
use crate::algebra::ring::{QuotientRing, Ring};
use crate::cli::runner::{run_script, RunOptions};
use crate::error::{Error, Result};
use crate::modules::GradedModule;

pub const STANDARD: &str = include_str!("../../corpus/standard.qh");

/// A ring together with the modules checked over it; the ring itself is listed first.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub ring: Ring,
    pub modules: Vec<(String, GradedModule)>,
}

/// Runs a corpus script and groups its modules by ring.
pub fn load(text: &str) -> Result<Vec<CorpusEntry>> {
    let session = run_script(text, RunOptions::default())?;
    if let Some(o) = session.outcomes.iter().find(|o| o.error.is_some()) {
        return Err(Error::InvalidInput(format!("corpus statement failed: {}", o.error.as_deref().unwrap_or(""))));
    }
    let mut entries: Vec<CorpusEntry> = session
        .rings()
        .into_iter()
        .map(|(name, ring)| CorpusEntry {
            modules: vec![(name.clone(), GradedModule::free(ring.clone(), vec![0]))],
            name,
            ring,
        })
        .collect();
    for (name, m) in session.modules() {
        let e = entries
            .iter_mut()
            .find(|e| e.ring.same_as(&m.ring))
            .ok_or_else(|| Error::InvalidInput(format!("module {name} lives over no corpus ring")))?;
        e.modules.push((name, m));
    }
    Ok(entries)
}

pub fn standard() -> Result<Vec<CorpusEntry>> {
    load(STANDARD)
}

fn artinian_rings() -> Vec<Ring> {
    let f = Field::Prime(101);
    let mk = |vars: &[&str], ideal: &[&str]| {
        let pr = std::sync::Arc::new(PolyRing::new(f.clone(), vars).expect("valid ring"));
        let gens: Vec<Polynomial> =
            ideal.iter().map(|s| crate::algebra::parse_polynomial(s, &pr).expect("valid polynomial")).collect();
        QuotientRing::polynomial(pr).quotient_by(&gens).expect("homogeneous ideal")
    };
    vec![
        mk(&["x"], &["x^3"]),
        mk(&["x", "y"], &["x^2", "y^2"]),
        mk(&["y", "z"], &["y^2", "y*z", "z^2"]),
        mk(&["x", "y"], &["x^2", "y^3"]),
    ]
}

fn random_form(ring: &Ring, d: i32, rng: &mut ChaCha8Rng) -> Polynomial {
    let pr = ring.poly();
    let field = &pr.field;
    let mut terms = Vec::new();
    for m in pr.monomials_of_degree(d) {
        if rng.gen_bool(0.6) {
            terms.push((m, field.from_i64(rng.gen_range(-50..=50))));
        }
    }
    ring.reduce(&Polynomial::from_terms(terms, pr))
}

/// Cokernels of random homogeneous matrices over small Artinian rings, nonzero, over `GF(101)`.
pub fn random_artinian_modules(seed: u64, count: usize) -> Vec<GradedModule> {
    let rings = artinian_rings();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let ring = &rings[rng.gen_range(0..rings.len())];
        let ngens = rng.gen_range(1..=2);
        let nrels = rng.gen_range(1..=3);
        let gens: Vec<i32> = (0..ngens).map(|_| rng.gen_range(0..=1)).collect();
        let rel_deg: Vec<i32> = (0..nrels).map(|_| rng.gen_range(1..=2) + gens.iter().max().unwrap()).collect();
        let mut a = PolyMatrix::zero(gens.clone(), rel_deg.clone());
        for (i, g) in gens.iter().enumerate() {
            for (j, t) in rel_deg.iter().enumerate() {
                a.set(i, j, random_form(ring, t - g, &mut rng));
            }
        }
        let Ok(m) = GradedModule::new(ring.clone(), a) else { continue };
        if !m.is_zero() {
            out.push(m.minimize());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::is_artinian;

    #[test]
    fn standard_corpus_loads() {
        let c = standard().unwrap();
        let names: Vec<&str> = c.iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names, ["P1", "P2", "P3", "D", "C", "H", "E", "F", "N", "T"]);
        let f = &c[7];
        assert_eq!(f.modules.iter().map(|m| m.0.as_str()).collect::<Vec<_>>(), ["F", "F_k", "F_v"]);
    }

    #[test]
    fn random_modules_are_reproducible() {
        let a = random_artinian_modules(3, 6);
        let b = random_artinian_modules(3, 6);
        for (x, y) in a.iter().zip(&b) {
            assert!(is_artinian(&x.ring));
            assert_eq!(x.rels(), y.rels());
        }
    }
}
