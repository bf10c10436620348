//! Degree-0 maps between twisted free modules, stored as polynomial matrices.

use super::poly::{PolyRing, Polynomial};
use super::ring::QuotientRing;
use super::vector::{ModuleOrder, Vector};
use crate::error::{Error, Result};

/// A matrix `F_source -> F_target`; column `j` is the image of the `j`th basis element of the
/// source. Twists are generator degrees: entry `(i, j)` is homogeneous of degree
/// `col_twists[j] - row_twists[i]` or zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    pub row_twists: Vec<i32>,
    pub col_twists: Vec<i32>,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zero(row_twists: Vec<i32>, col_twists: Vec<i32>) -> PolyMatrix {
        let n = row_twists.len() * col_twists.len();
        PolyMatrix {
            row_twists,
            col_twists,
            entries: vec![Polynomial { terms: Vec::new() }; n],
        }
    }

    pub fn identity(ring: &PolyRing, twists: Vec<i32>) -> PolyMatrix {
        let mut m = PolyMatrix::zero(twists.clone(), twists);
        for i in 0..m.rows() {
            m.set(i, i, ring.one());
        }
        m
    }

    /// Builds from row-major entries.
    pub fn from_rows(row_twists: Vec<i32>, col_twists: Vec<i32>, rows: Vec<Vec<Polynomial>>) -> PolyMatrix {
        let mut m = PolyMatrix::zero(row_twists, col_twists);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, p) in row.into_iter().enumerate() {
                m.set(i, j, p);
            }
        }
        m
    }

    /// Builds from row-major entries, inferring each column twist from its first nonzero entry
    /// (zero columns get twist 0).
    pub fn from_rows_infer(ring: &PolyRing, row_twists: Vec<i32>, rows: Vec<Vec<Polynomial>>) -> Result<PolyMatrix> {
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::InvalidInput("matrix rows have different lengths".into()));
        }
        if rows.len() != row_twists.len() {
            return Err(Error::InvalidInput("row twist count does not match matrix".into()));
        }
        let mut col_twists = vec![0; ncols];
        for (j, ct) in col_twists.iter_mut().enumerate() {
            if let Some((i, p)) = rows.iter().enumerate().map(|(i, r)| (i, &r[j])).find(|(_, p)| !p.is_zero()) {
                *ct = row_twists[i] + p.degree(ring).unwrap();
            }
        }
        let m = PolyMatrix::from_rows(row_twists, col_twists, rows);
        m.check_homogeneous(ring)?;
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.row_twists.len()
    }

    pub fn cols(&self) -> usize {
        self.col_twists.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        let c = self.cols();
        self.entries[i * c + j] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        (0..self.rows()).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn column_vector(&self, j: usize, offset: usize, ord: &ModuleOrder) -> Vector {
        Vector::from_polys((0..self.rows()).map(|i| self.get(i, j)), offset, ord)
    }

    /// Assembles a matrix whose columns are the given vectors restricted to components
    /// `offset..offset + row_twists.len()`.
    pub fn from_vectors(
        ring: &PolyRing,
        row_twists: Vec<i32>,
        col_twists: Vec<i32>,
        cols: &[Vector],
        offset: usize,
    ) -> PolyMatrix {
        let r = row_twists.len();
        let mut m = PolyMatrix::zero(row_twists, col_twists);
        for (j, v) in cols.iter().enumerate() {
            for (i, p) in v.to_polys(offset, offset + r, ring).into_iter().enumerate() {
                m.set(i, j, p);
            }
        }
        m
    }

    pub fn check_homogeneous(&self, ring: &PolyRing) -> Result<()> {
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                let p = self.get(i, j);
                if p.is_zero() {
                    continue;
                }
                let want = self.col_twists[j] - self.row_twists[i];
                if !p.is_homogeneous(ring) || p.degree(ring) != Some(want) {
                    return Err(Error::NotHomogeneous(format!(
                        "entry ({i},{j}) = {} should be homogeneous of degree {want}",
                        p.format(ring)
                    )));
                }
            }
        }
        Ok(())
    }

    /// `self * other`, reduced modulo the ring's ideal.
    pub fn mul(&self, other: &PolyMatrix, ring: &QuotientRing) -> PolyMatrix {
        assert_eq!(self.cols(), other.rows(), "matrix dimension mismatch");
        let pr = ring.poly();
        let mut out = PolyMatrix::zero(self.row_twists.clone(), other.col_twists.clone());
        for i in 0..self.rows() {
            for j in 0..other.cols() {
                let mut acc = pr.zero();
                for k in 0..self.cols() {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b, pr), pr);
                }
                out.set(i, j, ring.reduce(&acc));
            }
        }
        out
    }

    pub fn add(&self, other: &PolyMatrix, ring: &QuotientRing) -> PolyMatrix {
        assert_eq!((self.rows(), self.cols()), (other.rows(), other.cols()));
        let pr = ring.poly();
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(other.entries.iter()) {
            *e = ring.reduce(&e.add(o, pr));
        }
        out
    }

    pub fn sub(&self, other: &PolyMatrix, ring: &QuotientRing) -> PolyMatrix {
        self.add(&other.neg(), ring)
    }

    pub fn neg(&self) -> PolyMatrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = e.neg();
        }
        out
    }

    pub fn scale_poly(&self, f: &Polynomial, ring: &QuotientRing, extra_degree: i32) -> PolyMatrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = ring.reduce(&e.mul(f, ring.poly()));
        }
        for t in out.col_twists.iter_mut() {
            *t += extra_degree;
        }
        out
    }

    /// Transpose as the dual map `Hom(target, R) -> Hom(source, R)`: twists are negated.
    pub fn transpose(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zero(
            self.col_twists.iter().map(|t| -t).collect(),
            self.row_twists.iter().map(|t| -t).collect(),
        );
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn reduce_mod(&self, ring: &QuotientRing) -> PolyMatrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = ring.reduce(e);
        }
        out
    }

    /// Shifts all twists by `s` (the map `F(-s) -> G(-s)`).
    pub fn twisted(&self, s: i32) -> PolyMatrix {
        let mut out = self.clone();
        out.row_twists.iter_mut().for_each(|t| *t += s);
        out.col_twists.iter_mut().for_each(|t| *t += s);
        out
    }

    /// `[self | other]` over a common target.
    pub fn hconcat(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.rows(), other.rows());
        let mut col_twists = self.col_twists.clone();
        col_twists.extend_from_slice(&other.col_twists);
        let mut out = PolyMatrix::zero(self.row_twists.clone(), col_twists);
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols() {
                out.set(i, self.cols() + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Block diagonal sum.
    pub fn block_diag(&self, other: &PolyMatrix) -> PolyMatrix {
        let mut rt = self.row_twists.clone();
        rt.extend_from_slice(&other.row_twists);
        let mut ct = self.col_twists.clone();
        ct.extend_from_slice(&other.col_twists);
        let mut out = PolyMatrix::zero(rt, ct);
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows() {
            for j in 0..other.cols() {
                out.set(self.rows() + i, self.cols() + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// General block matrix `[a b; c d]` with matching shapes.
    pub fn block(a: &PolyMatrix, b: &PolyMatrix, c: &PolyMatrix, d: &PolyMatrix) -> PolyMatrix {
        let top = a.hconcat(b);
        let bottom = c.hconcat(d);
        let mut rt = top.row_twists.clone();
        rt.extend_from_slice(&bottom.row_twists);
        let mut out = PolyMatrix::zero(rt, top.col_twists.clone());
        for i in 0..top.rows() {
            for j in 0..top.cols() {
                out.set(i, j, top.get(i, j).clone());
            }
        }
        for i in 0..bottom.rows() {
            for j in 0..bottom.cols() {
                out.set(top.rows() + i, j, bottom.get(i, j).clone());
            }
        }
        out
    }

    /// Selects columns.
    pub fn select_columns(&self, cols: &[usize]) -> PolyMatrix {
        let mut out = PolyMatrix::zero(
            self.row_twists.clone(),
            cols.iter().map(|&j| self.col_twists[j]).collect(),
        );
        for i in 0..self.rows() {
            for (k, &j) in cols.iter().enumerate() {
                out.set(i, k, self.get(i, j).clone());
            }
        }
        out
    }

    /// Selects rows.
    pub fn select_rows(&self, rows: &[usize]) -> PolyMatrix {
        let mut out = PolyMatrix::zero(
            rows.iter().map(|&i| self.row_twists[i]).collect(),
            self.col_twists.clone(),
        );
        for (k, &i) in rows.iter().enumerate() {
            for j in 0..self.cols() {
                out.set(k, j, self.get(i, j).clone());
            }
        }
        out
    }

    /// Canonical strings, row by row.
    pub fn format_rows(&self, ring: &PolyRing) -> Vec<Vec<String>> {
        (0..self.rows())
            .map(|i| (0..self.cols()).map(|j| self.get(i, j).format(ring)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Field;
    use crate::algebra::parse_polynomial;
    use std::sync::Arc;

    #[test]
    fn infer_twists_and_multiply() {
        let p = Arc::new(PolyRing::new(Field::Rationals, &["x", "y"]).unwrap());
        let r = QuotientRing::polynomial(p.clone());
        let e = |s: &str| parse_polynomial(s, &p).unwrap();
        let a = PolyMatrix::from_rows_infer(&p, vec![0], vec![vec![e("x"), e("y")]]).unwrap();
        assert_eq!(a.col_twists, vec![1, 1]);
        let b = PolyMatrix::from_rows(vec![1, 1], vec![2], vec![vec![e("-y")], vec![e("x")]]);
        assert!(a.mul(&b, &r).is_zero());
        assert!(PolyMatrix::from_rows_infer(&p, vec![0], vec![vec![e("x + y^2")]]).is_err());
    }
}
