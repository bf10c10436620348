//! Degreewise linear algebra over GF(101), written without the library's Groebner machinery.
#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use qhom::algebra::{Field, Monomial, PolyMatrix, PolyRing, Polynomial, QuotientRing, Ring, Scalar};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const P: u64 = 101;

pub fn field() -> Field {
    Field::Prime(P as u32)
}

pub fn poly_ring(vars: &[&str]) -> Arc<PolyRing> {
    Arc::new(PolyRing::new(field(), vars).unwrap())
}

pub fn ring(vars: &[&str], ideal: &[&str]) -> Ring {
    let pr = poly_ring(vars);
    let gens: Vec<Polynomial> = ideal.iter().map(|s| qhom::algebra::parse_polynomial(s, &pr).unwrap()).collect();
    QuotientRing::new(pr, gens).unwrap()
}

pub fn parse(r: &Ring, s: &str) -> Polynomial {
    qhom::algebra::parse_polynomial(s, r.poly()).unwrap()
}

/// Exponent vectors of total degree `d` in `n` variables.
pub fn monomials(n: usize, d: i32) -> Vec<Vec<u16>> {
    if d < 0 {
        return Vec::new();
    }
    if n == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for e in (0..=d).rev() {
        for mut rest in monomials(n - 1, d - e) {
            rest.insert(0, e as u16);
            out.push(rest);
        }
    }
    out
}

pub fn scalar(s: &Scalar) -> u64 {
    match s {
        Scalar::Mod(v, _) => *v as u64,
        Scalar::Rational(_) => panic!("oracle works over GF(101)"),
    }
}

/// Sparse polynomial as a map exponent vector -> coefficient.
pub type Dense = HashMap<Vec<u16>, u64>;

pub fn dense(p: &Polynomial) -> Dense {
    p.terms.iter().map(|(m, c)| (m.exps().to_vec(), scalar(c))).collect()
}

pub fn times_monomial(p: &Dense, m: &[u16]) -> Dense {
    p.iter()
        .map(|(e, c)| (e.iter().zip(m).map(|(a, b)| a + b).collect(), *c))
        .collect()
}

pub fn mul(a: &Dense, b: &Dense) -> Dense {
    let mut out: Dense = HashMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u16> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert(0) = (out.get(&e).copied().unwrap_or(0) + ca * cb) % P;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn add_into(acc: &mut Dense, p: &Dense) {
    for (e, c) in p {
        let v = (acc.get(e).copied().unwrap_or(0) + c) % P;
        if v == 0 {
            acc.remove(e);
        } else {
            acc.insert(e.clone(), v);
        }
    }
}

/// Coordinates in the basis `basis` (exponent vectors); panics on monomials outside it.
pub fn coords(p: &Dense, basis: &[Vec<u16>]) -> Vec<u64> {
    let index: HashMap<&Vec<u16>, usize> = basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut v = vec![0; basis.len()];
    for (e, c) in p {
        v[*index.get(e).expect("monomial of the expected degree")] = *c;
    }
    v
}

fn inv(a: u64) -> u64 {
    let mut r = 1;
    let mut b = a % P;
    let mut e = P - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

/// Rank of a matrix over GF(101) by Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<u64>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        let iv = inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = *x * iv % P;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + P * P - f * y) % P;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn in_span(rows: &[Vec<u64>], v: &[u64]) -> bool {
    let mut with = rows.to_vec();
    with.push(v.to_vec());
    rank(rows.to_vec()) == rank(with)
}

pub fn degree(p: &Dense) -> Option<i32> {
    p.keys().next().map(|e| e.iter().map(|&x| x as i32).sum())
}

/// Spanning rows of `I_d` for the ideal generated by `gens`.
pub fn ideal_component(gens: &[Dense], n: usize, d: i32) -> Vec<Vec<u64>> {
    let basis = monomials(n, d);
    let mut rows = Vec::new();
    for g in gens {
        let Some(e) = degree(g) else { continue };
        for m in monomials(n, d - e) {
            rows.push(coords(&times_monomial(g, &m), &basis));
        }
    }
    rows
}

/// Element of `⊕_i S(-t_i)`: one polynomial per coordinate, homogeneous of degree `deg`.
#[derive(Clone, Debug)]
pub struct ModVec {
    pub entries: Vec<Dense>,
    pub deg: i32,
}

/// Coordinates of a vector of degree `d` in `⊕_i S(-t_i)`.
pub fn module_coords(v: &[Dense], twists: &[i32], n: usize, d: i32) -> Vec<u64> {
    let mut out = Vec::new();
    for (p, t) in v.iter().zip(twists) {
        out.extend(coords(p, &monomials(n, d - t)));
    }
    out
}

/// Spanning rows of the degree `d` part of the submodule generated by `gens`.
pub fn submodule_component(gens: &[ModVec], twists: &[i32], n: usize, d: i32) -> Vec<Vec<u64>> {
    let mut rows = Vec::new();
    for g in gens {
        for m in monomials(n, d - g.deg) {
            let v: Vec<Dense> = g.entries.iter().map(|p| times_monomial(p, &m)).collect();
            rows.push(module_coords(&v, twists, n, d));
        }
    }
    rows
}

/// `dim_k` of the degree `d` kernel of `A : ⊕_j S(-c_j) -> ⊕_i S(-r_i)`.
pub fn kernel_dim(a: &PolyMatrix, n: usize, d: i32) -> usize {
    let cols: Vec<ModVec> = (0..a.cols())
        .map(|j| ModVec { entries: (0..a.rows()).map(|i| dense(a.get(i, j))).collect(), deg: a.col_twists[j] })
        .collect();
    let domain: usize = a.col_twists.iter().map(|c| monomials(n, d - c).len()).sum();
    domain - rank(submodule_component(&cols, &a.row_twists, n, d))
}

pub fn random_form(pr: &PolyRing, d: i32, density: f64, rng: &mut ChaCha8Rng) -> Polynomial {
    let mut terms = Vec::new();
    for e in monomials(pr.nvars(), d) {
        if rng.gen_bool(density) {
            terms.push((Monomial::from_exps(&e), pr.field.from_i64(rng.gen_range(1..P as i64))));
        }
    }
    if terms.is_empty() {
        let e = monomials(pr.nvars(), d);
        let m = &e[rng.gen_range(0..e.len())];
        terms.push((Monomial::from_exps(m), pr.field.one()));
    }
    Polynomial::from_terms(terms, pr)
}
