//! Subquotients `ker β / im α`, and Ext and Tor computed from free resolutions.

use super::resolution::Resolution;
use super::GradedModule;
use crate::algebra::matrix::PolyMatrix;
use crate::algebra::ring::ensure_same;
use crate::algebra::syzygy::syzygies;
use crate::error::{Error, Result};

/// Homology at `B` of `A --α--> B --β--> C`, where `B` and `C` are given by presentations and
/// `α`, `β` by matrices on free covers (`α` has `B`'s generators as rows; only its columns
/// matter). Returns a minimal presentation.
pub fn homology_at(alpha: &PolyMatrix, b: &GradedModule, beta: &PolyMatrix, c: &GradedModule) -> GradedModule {
    let ring = b.ring.clone();
    let nb = b.num_gens();
    if nb == 0 {
        return GradedModule::zero(ring);
    }
    // Generators of the preimage of ker β in the cover of B.
    let k = if c.num_gens() == 0 {
        PolyMatrix::identity(ring.poly(), b.gens().to_vec())
    } else {
        let syz = syzygies(&beta.hconcat(c.rels()), &ring);
        let rows: Vec<usize> = (0..nb).collect();
        let k = syz.select_rows(&rows);
        let nonzero: Vec<usize> = (0..k.cols()).filter(|&j| k.column(j).iter().any(|p| !p.is_zero())).collect();
        k.select_columns(&nonzero)
    };
    if k.cols() == 0 {
        return GradedModule::zero(ring);
    }
    let big = k.hconcat(alpha).hconcat(b.rels());
    let syz = syzygies(&big, &ring);
    let rows: Vec<usize> = (0..k.cols()).collect();
    let mut rels = syz.select_rows(&rows);
    rels.row_twists = k.col_twists.clone();
    GradedModule::new(ring, rels).expect("homogeneous relations").minimize()
}

/// Entries `d_{ab} δ_{uv}` of `d ⊗ id_N` on covers; twists add those of `N`'s generators.
pub(crate) fn tensor_identity(d: &PolyMatrix, n: &GradedModule) -> PolyMatrix {
    let g = n.gens();
    let row_twists: Vec<i32> = d.row_twists.iter().flat_map(|&t| g.iter().map(move |&u| t + u)).collect();
    let col_twists: Vec<i32> = d.col_twists.iter().flat_map(|&t| g.iter().map(move |&u| t + u)).collect();
    let mut out = PolyMatrix::zero(row_twists, col_twists);
    let r = g.len();
    for a in 0..d.rows() {
        for b in 0..d.cols() {
            let e = d.get(a, b);
            if e.is_zero() {
                continue;
            }
            for u in 0..r {
                out.set(a * r + u, b * r + u, e.clone());
            }
        }
    }
    out
}

/// `⊕_a N(-t_a)` for a free module with generator degrees `twists`.
pub(crate) fn free_tensor(twists: &[i32], n: &GradedModule) -> GradedModule {
    n.sum_of_shifts(twists)
}

/// Ext modules `Ext^i(M, N)` sharing one resolution of `M`.
pub struct ExtComputer {
    res: Resolution,
    n: GradedModule,
}

impl ExtComputer {
    pub fn new(m: &GradedModule, n: &GradedModule, max_index: usize) -> Result<ExtComputer> {
        ensure_same(&m.ring, &n.ring)?;
        let n = &n.minimize();
        Ok(ExtComputer { res: Resolution::compute(m, max_index + 1), n: n.clone() })
    }

    pub fn resolution(&self) -> &Resolution {
        &self.res
    }

    fn hom_term(&self, j: usize) -> GradedModule {
        let tw: Vec<i32> = self.res.twists(j).iter().map(|t| -t).collect();
        free_tensor(&tw, &self.n)
    }

    pub fn ext(&self, i: usize) -> Result<GradedModule> {
        if i + 1 > self.res.maps.len() && !self.res.complete {
            return Err(Error::TruncationInsufficient(format!(
                "Ext^{i} needs a resolution of length {}, only {} computed",
                i + 1,
                self.res.maps.len()
            )));
        }
        let b = self.hom_term(i);
        if self.n.killed_by_maximal_ideal() {
            // Minimal differentials land in m F, so Hom(-, N) has zero differentials.
            return Ok(b.minimize());
        }
        let c = self.hom_term(i + 1);
        let alpha = if i == 0 {
            PolyMatrix::zero(b.gens().to_vec(), Vec::new())
        } else {
            tensor_identity(&self.res.differential(i).transpose(), &self.n)
        };
        let beta = tensor_identity(&self.res.differential(i + 1).transpose(), &self.n);
        Ok(homology_at(&alpha, &b, &beta, &c))
    }
}

pub fn ext(i: usize, m: &GradedModule, n: &GradedModule) -> Result<GradedModule> {
    ExtComputer::new(m, n, i)?.ext(i)
}

/// `Hom_R(M, N)` as a graded module.
pub fn hom(m: &GradedModule, n: &GradedModule) -> Result<GradedModule> {
    ext(0, m, n)
}

pub fn tor(i: usize, m: &GradedModule, n: &GradedModule) -> Result<GradedModule> {
    ensure_same(&m.ring, &n.ring)?;
    let res = Resolution::compute(m, i + 1);
    let b = free_tensor(&res.twists(i), n);
    let alpha = tensor_identity(&res.differential(i + 1), n);
    let (beta, c) = if i == 0 {
        (PolyMatrix::zero(Vec::new(), b.gens().to_vec()), GradedModule::zero(m.ring.clone()))
    } else {
        (tensor_identity(&res.differential(i), n), free_tensor(&res.twists(i - 1), n))
    };
    Ok(homology_at(&alpha, &b, &beta, &c))
}
