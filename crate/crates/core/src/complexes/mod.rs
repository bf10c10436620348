//! Bounded complexes of twisted free modules with homological indexing.
//!
//! `C[j]_i = C_{i-j}` with differential `(-1)^j ∂_{i-j}`; the cone of `φ : F -> G` has
//! `Cone_i = F_{i-1} ⊕ G_i` and differential `[-∂^F, 0; φ, ∂^G]`; the dual into the ring has
//! `D_i = Hom(C_{-i}, R)` and differential `(-1)^{i+1} (∂_{1-i})^T`.

pub mod koszul;

use crate::algebra::matrix::PolyMatrix;
use crate::algebra::poly::Polynomial;
use crate::algebra::ring::{ensure_same, Ring};
use crate::error::{Error, Result};
use crate::modules::homology::homology_at;
use crate::modules::resolution::Resolution;
use crate::modules::{GradedModule, HilbertSeries};

pub use koszul::{is_regular_sequence, koszul_complex};

#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub ring: Ring,
    /// Index of `components[0]`.
    pub lo: i32,
    /// Generator degrees of `C_{lo}, C_{lo+1}, ...`.
    pub components: Vec<Vec<i32>>,
    /// `diffs[k] = ∂_{lo+k+1} : C_{lo+k+1} -> C_{lo+k}`.
    pub diffs: Vec<PolyMatrix>,
    /// Set when the complex is a truncation of an infinite one (e.g. a resolution).
    pub truncated_at: Option<i32>,
}

/// `H_i` for each index in the support, with the extreme nonzero indices.
#[derive(Clone, Debug)]
pub struct HomologyTable {
    pub entries: Vec<(i32, GradedModule)>,
    pub hsup: Option<i32>,
    pub hinf: Option<i32>,
}

impl HomologyTable {
    pub fn get(&self, i: i32) -> Option<&GradedModule> {
        self.entries.iter().find(|(k, _)| *k == i).map(|(_, m)| m)
    }
}

/// A degree-0 map of complexes, one matrix per index of the source's support.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: ChainComplex,
    pub target: ChainComplex,
    /// `(i, φ_i : source_i -> target_i)`.
    pub maps: Vec<(i32, PolyMatrix)>,
}

impl ChainComplex {
    /// Builds from the lowest index and the differentials; components are read off the matrices.
    pub fn from_differentials(ring: Ring, lo: i32, c_lo: Vec<i32>, diffs: Vec<PolyMatrix>) -> Result<ChainComplex> {
        let mut components = vec![c_lo];
        for (k, d) in diffs.iter().enumerate() {
            if d.row_twists != components[k] {
                return Err(Error::InvalidComplex {
                    index: lo + k as i32 + 1,
                    reason: "differential target does not match the component below".into(),
                });
            }
            components.push(d.col_twists.clone());
        }
        let c = ChainComplex { ring, lo, components, diffs, truncated_at: None };
        c.validate()?;
        Ok(c.trimmed())
    }

    /// The complex with `C_0 = F` free and nothing else.
    pub fn concentrated(ring: Ring, twists: Vec<i32>, index: i32) -> ChainComplex {
        ChainComplex { ring, lo: index, components: vec![twists], diffs: Vec::new(), truncated_at: None }
    }

    /// Drops zero components at both ends.
    fn trimmed(mut self) -> ChainComplex {
        while self.components.len() > 1 && self.components.last().unwrap().is_empty() {
            self.components.pop();
            self.diffs.pop();
        }
        while self.components.len() > 1 && self.components[0].is_empty() {
            self.components.remove(0);
            self.diffs.remove(0);
            self.lo += 1;
        }
        self
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.components.len() as i32 - 1
    }

    pub fn component(&self, i: i32) -> Vec<i32> {
        if i < self.lo || i > self.hi() {
            Vec::new()
        } else {
            self.components[(i - self.lo) as usize].clone()
        }
    }

    pub fn rank(&self, i: i32) -> usize {
        self.component(i).len()
    }

    /// `∂_i : C_i -> C_{i-1}` (a zero matrix of the right shape outside the stored range).
    pub fn differential(&self, i: i32) -> PolyMatrix {
        let k = i - self.lo - 1;
        if k >= 0 && (k as usize) < self.diffs.len() {
            self.diffs[k as usize].clone()
        } else {
            PolyMatrix::zero(self.component(i - 1), self.component(i))
        }
    }

    /// Highest index with a nonzero component.
    pub fn sup(&self) -> Option<i32> {
        (self.lo..=self.hi()).rev().find(|&i| self.rank(i) > 0)
    }

    pub fn inf(&self) -> Option<i32> {
        (self.lo..=self.hi()).find(|&i| self.rank(i) > 0)
    }

    /// Checks homogeneity and `∂∂ = 0`, reporting the first failing index.
    pub fn validate(&self) -> Result<()> {
        let pr = self.ring.poly();
        for i in self.lo + 1..=self.hi() {
            let d = self.differential(i);
            d.check_homogeneous(pr).map_err(|e| Error::InvalidComplex { index: i, reason: e.to_string() })?;
        }
        for i in self.lo + 2..=self.hi() {
            let dd = self.differential(i - 1).mul(&self.differential(i), &self.ring);
            if !dd.is_zero() {
                return Err(Error::InvalidComplex { index: i, reason: "∂_{i-1} ∘ ∂_i is not zero".into() });
            }
        }
        Ok(())
    }

    pub fn homology(&self, i: i32) -> GradedModule {
        let b = GradedModule::free(self.ring.clone(), self.component(i));
        let c = GradedModule::free(self.ring.clone(), self.component(i - 1));
        homology_at(&self.differential(i + 1), &b, &self.differential(i), &c)
    }

    pub fn homology_table(&self) -> HomologyTable {
        use rayon::prelude::*;
        let idx: Vec<i32> = (self.lo..=self.hi()).collect();
        let entries: Vec<(i32, GradedModule)> = idx.par_iter().map(|&i| (i, self.homology(i))).collect();
        let nonzero: Vec<i32> = entries.iter().filter(|(_, h)| !h.is_zero()).map(|(i, _)| *i).collect();
        HomologyTable { hsup: nonzero.last().copied(), hinf: nonzero.first().copied(), entries }
    }

    pub fn shift(&self, j: i32) -> ChainComplex {
        let diffs = if j % 2 == 0 { self.diffs.clone() } else { self.diffs.iter().map(|d| d.neg()).collect() };
        ChainComplex {
            ring: self.ring.clone(),
            lo: self.lo + j,
            components: self.components.clone(),
            diffs,
            truncated_at: self.truncated_at.map(|t| t + j),
        }
    }

    /// Internal-degree twist `C(s)` of every component.
    pub fn twist(&self, s: i32) -> ChainComplex {
        ChainComplex {
            ring: self.ring.clone(),
            lo: self.lo,
            components: self.components.iter().map(|c| c.iter().map(|t| t - s).collect()).collect(),
            diffs: self.diffs.iter().map(|d| d.twisted(-s)).collect(),
            truncated_at: self.truncated_at,
        }
    }

    /// `C ⊗_Q R` for a quotient ring `R` of the complex's ring.
    pub fn base_change(&self, r: &Ring) -> Result<ChainComplex> {
        if !r.is_quotient_of(&self.ring) {
            return Err(Error::RingMismatch(format!(
                "{} is not a quotient of {}",
                r.describe(),
                self.ring.describe()
            )));
        }
        Ok(ChainComplex {
            ring: r.clone(),
            lo: self.lo,
            components: self.components.clone(),
            diffs: self.diffs.iter().map(|d| d.reduce_mod(r)).collect(),
            truncated_at: self.truncated_at,
        })
    }

    /// `Hom_R(C, R)` with `D_i = Hom(C_{-i}, R)`.
    pub fn dual(&self) -> ChainComplex {
        let hi = self.hi();
        let components: Vec<Vec<i32>> = (-hi..=-self.lo)
            .map(|i| self.component(-i).iter().map(|t| -t).collect())
            .collect();
        let diffs = (-hi + 1..=-self.lo)
            .map(|i| {
                let t = self.differential(1 - i).transpose();
                if (i + 1) % 2 == 0 { t } else { t.neg() }
            })
            .collect();
        ChainComplex { ring: self.ring.clone(), lo: -hi, components, diffs, truncated_at: None }
    }

    /// Minimal free resolution of `M` as a complex in degrees `0..=length`.
    pub fn free_resolution(m: &GradedModule, length: usize) -> ChainComplex {
        ChainComplex::from_resolution(&Resolution::compute(m, length))
    }

    pub fn from_resolution(res: &Resolution) -> ChainComplex {
        let mut components = vec![res.f0.clone()];
        for d in &res.maps {
            components.push(d.col_twists.clone());
        }
        ChainComplex {
            ring: res.ring.clone(),
            lo: 0,
            components,
            diffs: res.maps.clone(),
            truncated_at: (!res.complete).then_some(res.maps.len() as i32),
        }
    }

    /// `Σ (-1)^i HS(C_i)`.
    pub fn euler_series(&self) -> HilbertSeries {
        let weights: Vec<i32> = self.ring.poly().weights.iter().map(|&w| w as i32).collect();
        let free = GradedModule::free(self.ring.clone(), vec![0]).hilbert_series();
        let mut out = HilbertSeries::zero(weights);
        for i in self.lo..=self.hi() {
            for &t in &self.component(i) {
                let s = free.twist(-t);
                out = if i.rem_euclid(2) == 0 { out.add(&s) } else { out.sub(&s) };
            }
        }
        out
    }

    /// Whether `Σ (-1)^i HS(C_i) = Σ (-1)^i HS(H_i)`.
    pub fn euler_identity_holds(&self, table: &HomologyTable) -> bool {
        let mut h = HilbertSeries::zero(self.euler_series().weights);
        for (i, m) in &table.entries {
            let s = m.hilbert_series();
            h = if i.rem_euclid(2) == 0 { h.add(&s) } else { h.sub(&s) };
        }
        h == self.euler_series()
    }

    /// `φ · Id` for a homogeneous ring element, as the chain map `C(-deg f) -> C`.
    pub fn multiplication_map(&self, f: &Polynomial) -> ChainMap {
        let d = f.degree(self.ring.poly()).unwrap_or(0);
        let source = self.twist(-d);
        let f = self.ring.reduce(f);
        let maps = (self.lo..=self.hi())
            .map(|i| {
                let tw = self.component(i);
                let mut m = PolyMatrix::zero(tw.clone(), tw.iter().map(|t| t + d).collect());
                for k in 0..tw.len() {
                    m.set(k, k, f.clone());
                }
                (i, m)
            })
            .collect();
        ChainMap { source, target: self.clone(), maps }
    }

    pub fn direct_sum(&self, other: &ChainComplex) -> Result<ChainComplex> {
        ensure_same(&self.ring, &other.ring)?;
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let components = (lo..=hi)
            .map(|i| {
                let mut c = self.component(i);
                c.extend(other.component(i));
                c
            })
            .collect();
        let diffs = (lo + 1..=hi).map(|i| self.differential(i).block_diag(&other.differential(i))).collect();
        Ok(ChainComplex { ring: self.ring.clone(), lo, components, diffs, truncated_at: None })
    }
}

impl ChainMap {
    pub fn at(&self, i: i32) -> PolyMatrix {
        self.maps
            .iter()
            .find(|(k, _)| *k == i)
            .map(|(_, m)| m.clone())
            .unwrap_or_else(|| PolyMatrix::zero(self.target.component(i), self.source.component(i)))
    }

    /// Checks `∂^G φ_i = φ_{i-1} ∂^F` for all `i`.
    pub fn validate(&self) -> Result<()> {
        let ring = &self.target.ring;
        let lo = self.source.lo.min(self.target.lo);
        let hi = self.source.hi().max(self.target.hi());
        for i in lo..=hi + 1 {
            let a = self.target.differential(i).mul(&self.at(i), ring);
            let b = self.at(i - 1).mul(&self.source.differential(i), ring);
            if a != b {
                return Err(Error::NotChainMap { index: i });
            }
        }
        Ok(())
    }

    /// Mapping cone: `Cone_i = F_{i-1} ⊕ G_i`, differential `[-∂^F_{i-1}, 0; φ_{i-1}, ∂^G_i]`.
    pub fn cone(&self) -> Result<ChainComplex> {
        self.validate()?;
        let f = &self.source;
        let g = &self.target;
        let lo = (f.lo + 1).min(g.lo);
        let hi = (f.hi() + 1).max(g.hi());
        let components: Vec<Vec<i32>> = (lo..=hi)
            .map(|i| {
                let mut c = f.component(i - 1);
                c.extend(g.component(i));
                c
            })
            .collect();
        let diffs = (lo + 1..=hi)
            .map(|i| {
                let top_left = f.differential(i - 1).neg();
                let top_right = PolyMatrix::zero(f.component(i - 2), g.component(i));
                let bottom_left = self.at(i - 1);
                let bottom_right = g.differential(i);
                PolyMatrix::block(&top_left, &top_right, &bottom_left, &bottom_right)
            })
            .collect();
        let c = ChainComplex { ring: g.ring.clone(), lo, components, diffs, truncated_at: None };
        c.validate()?;
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;
    use crate::modules::tests::ring;

    #[test]
    fn bad_complex_reports_index() {
        let r = ring(&["x"], &[]);
        let x = parse_polynomial("x", r.poly()).unwrap();
        let d1 = PolyMatrix::from_rows(vec![0], vec![1], vec![vec![x.clone()]]);
        let d2 = PolyMatrix::from_rows(vec![1], vec![2], vec![vec![x]]);
        match ChainComplex::from_differentials(r, 0, vec![0], vec![d1, d2]) {
            Err(Error::InvalidComplex { index, .. }) => assert_eq!(index, 2),
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn shift_and_dual_conventions() {
        let r = ring(&["x", "y"], &[]);
        let k = koszul_complex(&r.variables(), &r).unwrap();
        let s = k.shift(1);
        assert_eq!(s.lo, 1);
        assert_eq!(s.differential(2), k.differential(1).neg());
        let back = s.shift(-1);
        assert_eq!(back.diffs, k.diffs);
        let d = k.dual();
        assert_eq!((d.lo, d.hi()), (-2, 0));
        assert_eq!(d.rank(-1), 2);
        assert!(d.validate().is_ok());
        let dd = d.dual();
        assert_eq!(dd.components, k.components);
        for i in 1..=2 {
            assert_eq!(dd.differential(i), k.differential(i).neg());
        }
    }

    #[test]
    fn cone_of_identity_is_exact() {
        let r = ring(&["x", "y"], &[]);
        let k = koszul_complex(&r.variables(), &r).unwrap();
        let id = k.multiplication_map(&r.poly().one());
        let c = id.cone().unwrap();
        let t = c.homology_table();
        assert!(t.hsup.is_none());
        assert!(c.euler_identity_holds(&t));
    }
}
