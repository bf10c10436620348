//! Finite length modules as graded vector spaces with variable actions.

use super::GradedModule;
use crate::algebra::field::{Field, Scalar};
use crate::algebra::linalg::DenseMatrix;
use crate::algebra::poly::{Monomial, Polynomial};
use crate::algebra::ring::Ring;
use crate::algebra::syzygy::minimal_columns;
use crate::algebra::vector::Vector;
use crate::error::{Error, Result};

/// `V = ⊕_{d=lo}^{lo+len-1} V_d` with `actions[i][d - lo] : V_d -> V_{d + w_i}` for variable `i`.
#[derive(Clone, Debug)]
pub struct FiniteRep {
    pub field: Field,
    pub weights: Vec<i32>,
    pub lo: i32,
    pub dims: Vec<usize>,
    pub actions: Vec<Vec<DenseMatrix>>,
}

impl FiniteRep {
    pub fn hi(&self) -> i32 {
        self.lo + self.dims.len() as i32 - 1
    }

    pub fn dim(&self, d: i32) -> usize {
        if d < self.lo || d > self.hi() {
            0
        } else {
            self.dims[(d - self.lo) as usize]
        }
    }

    fn action(&self, i: usize, d: i32) -> Option<&DenseMatrix> {
        if d < self.lo || d > self.hi() {
            return None;
        }
        Some(&self.actions[i][(d - self.lo) as usize])
    }

    /// Applies variable `i` to `v ∈ V_d`.
    pub fn apply(&self, i: usize, d: i32, v: &[Scalar]) -> Vec<Scalar> {
        let t = d + self.weights[i];
        let n = self.dim(t);
        let mut out = vec![self.field.zero(); n];
        if n == 0 {
            return out;
        }
        let a = self.action(i, d).unwrap();
        for (r, o) in out.iter_mut().enumerate() {
            for (c, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    *o = &*o + &(a.get(r, c) * x);
                }
            }
        }
        out
    }

    /// Applies a monomial to `v ∈ V_d`.
    pub fn apply_monomial(&self, m: &Monomial, d: i32, v: &[Scalar]) -> Vec<Scalar> {
        let mut cur = v.to_vec();
        let mut deg = d;
        for (i, &e) in m.exps().iter().enumerate() {
            for _ in 0..e {
                cur = self.apply(i, deg, &cur);
                deg += self.weights[i];
                if cur.is_empty() {
                    return cur;
                }
            }
        }
        cur
    }

    /// Representation of a finite length module in its standard monomial basis.
    pub fn from_module(m: &GradedModule) -> Result<FiniteRep> {
        let pr = m.ring.poly();
        let field = pr.field;
        let weights: Vec<i32> = pr.weights.iter().map(|&w| w as i32).collect();
        if !m.is_finite_length() {
            return Err(Error::NotArtinian);
        }
        let Some((lo, hi)) = m.degree_range() else {
            return Ok(FiniteRep { field, weights: weights.clone(), lo: 0, dims: Vec::new(), actions: vec![Vec::new(); weights.len()] });
        };
        let bases: Vec<_> = (lo..=hi).map(|d| m.basis(d)).collect();
        let indices: Vec<_> = bases.iter().map(|b| GradedModule::basis_index(b)).collect();
        let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
        let n = pr.nvars();
        let mut actions = Vec::with_capacity(n);
        for i in 0..n {
            let x = Monomial::var(n, i);
            let mut per_degree = Vec::new();
            for d in lo..=hi {
                let src = &bases[(d - lo) as usize];
                let t = d + weights[i];
                if t > hi {
                    per_degree.push(DenseMatrix::zeros(field, 0, src.len()));
                    continue;
                }
                let k = (t - lo) as usize;
                let cols: Vec<Vec<Scalar>> = src
                    .iter()
                    .map(|(mon, c)| {
                        let v = Vector::unit(*c, n, field.one()).mul_monomial(&mon.mul(&x), &field.one());
                        m.coordinates(&v, &indices[k], dims[k])
                    })
                    .collect();
                per_degree.push(DenseMatrix::from_columns(field, dims[k], &cols));
            }
            actions.push(per_degree);
        }
        Ok(FiniteRep { field, weights, lo, dims, actions })
    }

    /// The graded dual `V^*` with `(V^*)_d = (V_{-d})^*`.
    pub fn dual(&self) -> FiniteRep {
        if self.dims.is_empty() {
            return self.clone();
        }
        let hi = self.hi();
        let dims: Vec<usize> = (-hi..=-self.lo).map(|d| self.dim(-d)).collect();
        let mut actions = Vec::new();
        for (i, &w) in self.weights.iter().enumerate() {
            let mut per = Vec::new();
            for d in -hi..=-self.lo {
                // x : (V_{-d})^* -> (V_{-d-w})^*, transpose of x : V_{-d-w} -> V_{-d}.
                let src_dim = self.dim(-d);
                let tgt = -d - w;
                let tgt_dim = self.dim(tgt);
                let mut a = DenseMatrix::zeros(self.field, if d + w > -self.lo { 0 } else { tgt_dim }, src_dim);
                if a.rows > 0 {
                    let orig = self.action(i, tgt).unwrap();
                    for r in 0..orig.rows {
                        for c in 0..orig.cols {
                            a.set(c, r, orig.get(r, c).clone());
                        }
                    }
                }
                per.push(a);
            }
            actions.push(per);
        }
        FiniteRep { field: self.field, weights: self.weights.clone(), lo: -hi, dims, actions }
    }

    /// Twist `V(s)`: `V(s)_d = V_{s+d}`.
    pub fn twist(&self, s: i32) -> FiniteRep {
        let mut out = self.clone();
        out.lo -= s;
        out
    }

    /// A minimal presentation over `ring` of the module this represents.
    pub fn to_module(&self, ring: &Ring) -> GradedModule {
        let pr = ring.poly();
        let n = pr.nvars();
        if self.dims.iter().all(|&d| d == 0) {
            return GradedModule::zero(ring.clone());
        }
        // Generators degree by degree: a complement of what lower generators already span.
        let mut gens: Vec<(i32, Vec<Scalar>)> = Vec::new();
        for d in self.lo..=self.hi() {
            let dim = self.dim(d);
            if dim == 0 {
                continue;
            }
            let mut span: Vec<Vec<Scalar>> = Vec::new();
            for i in 0..n {
                let s = d - self.weights[i];
                for k in 0..self.dim(s) {
                    let mut e = vec![self.field.zero(); self.dim(s)];
                    e[k] = self.field.one();
                    span.push(self.apply(i, s, &e));
                }
            }
            let mut rank = DenseMatrix::from_columns(self.field, dim, &span).rank();
            for k in 0..dim {
                if rank == dim {
                    break;
                }
                let mut e = vec![self.field.zero(); dim];
                e[k] = self.field.one();
                span.push(e.clone());
                let r = DenseMatrix::from_columns(self.field, dim, &span).rank();
                if r > rank {
                    rank = r;
                    gens.push((d, e));
                } else {
                    span.pop();
                }
            }
        }
        let twists: Vec<i32> = gens.iter().map(|g| g.0).collect();
        let maxw = *self.weights.iter().max().unwrap();
        let ring_basis = GradedModule::free(ring.clone(), vec![0]);
        let mut cols: Vec<Vec<Polynomial>> = Vec::new();
        for d in self.lo..=self.hi() + maxw {
            // Basis of the free cover in degree d and its image in V_d.
            let mut cover: Vec<(Monomial, usize)> = Vec::new();
            for (g, &(t, _)) in gens.iter().enumerate() {
                for (mon, _) in ring_basis.basis(d - t) {
                    cover.push((mon, g));
                }
            }
            if cover.is_empty() {
                continue;
            }
            let dim = self.dim(d);
            let images: Vec<Vec<Scalar>> = cover
                .iter()
                .map(|(mon, g)| {
                    let v = self.apply_monomial(mon, gens[*g].0, &gens[*g].1);
                    if v.len() == dim { v } else { vec![self.field.zero(); dim] }
                })
                .collect();
            let kernel = if dim == 0 {
                (0..cover.len())
                    .map(|k| {
                        let mut e = vec![self.field.zero(); cover.len()];
                        e[k] = self.field.one();
                        e
                    })
                    .collect()
            } else {
                DenseMatrix::from_columns(self.field, dim, &images).nullspace()
            };
            for kv in kernel {
                let mut col = vec![pr.zero(); gens.len()];
                for (k, c) in kv.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let (mon, g) = &cover[k];
                    col[*g] = col[*g].add(&pr.monomial(mon.clone(), c.clone()), pr);
                }
                cols.push(col);
            }
        }
        let rels = minimal_columns(ring, &twists, &cols);
        GradedModule::new(ring.clone(), rels).expect("homogeneous by construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;
    use crate::modules::iso::{is_isomorphic, IsoOptions};
    use crate::modules::tests::ring;

    #[test]
    fn round_trip_and_double_dual() {
        let r = ring(&["x", "y"], &["x^2", "y^2"]);
        let e = |s: &str| parse_polynomial(s, r.poly()).unwrap();
        let m = GradedModule::cyclic(r.clone(), &[e("x*y")]).unwrap();
        let rep = FiniteRep::from_module(&m).unwrap();
        assert_eq!(rep.dims, vec![1, 2]);
        let back = rep.to_module(&r);
        assert!(is_isomorphic(&m, &back, IsoOptions::default()).unwrap().is_iso());
        let dd = rep.dual().dual().to_module(&r);
        assert!(is_isomorphic(&m, &dd, IsoOptions::default()).unwrap().is_iso());
        let d = rep.dual();
        assert_eq!((d.lo, d.dims.clone()), (-1, vec![2, 1]));
    }
}
