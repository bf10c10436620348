//! Depth, dimension, Cohen-Macaulay and Gorenstein tests, Betti and Bass numbers.

pub mod corpus;
pub mod harness;

use serde::Serialize;

use crate::algebra::ring::Ring;
use crate::complexes::koszul_complex;
use crate::error::{Error, Result};
use crate::modules::homology::{free_tensor, homology_at, tensor_identity, ExtComputer};
use crate::modules::resolution::Resolution;
use crate::modules::GradedModule;

/// Krull dimension; the zero module gets `-1`.
pub fn krull_dim(m: &GradedModule) -> i32 {
    m.krull_dim()
}

pub fn ring_dim(r: &Ring) -> i32 {
    GradedModule::free(r.clone(), vec![0]).krull_dim()
}

/// `min { i : Ext^i_R(k, M) ≠ 0 }`.
pub fn depth(m: &GradedModule) -> Result<usize> {
    if m.is_zero() {
        return Err(Error::InvalidInput("depth of the zero module".into()));
    }
    let bound = m.krull_dim().max(0) as usize;
    let k = GradedModule::residue_field(m.ring.clone());
    let ext = ExtComputer::new(&k, m, bound)?;
    for i in 0..=bound {
        if !ext.ext(i)?.is_zero() {
            return Ok(i);
        }
    }
    Err(Error::TruncationInsufficient(format!("no nonzero Ext^i(k, M) for i <= {bound}")))
}

pub fn ring_depth(r: &Ring) -> Result<usize> {
    depth(&GradedModule::free(r.clone(), vec![0]))
}

/// `H_i(x; M)` for the Koszul complex on the variables.
pub fn koszul_homology(m: &GradedModule, i: i32) -> Result<GradedModule> {
    let k = koszul_complex(&m.ring.variables(), &m.ring)?;
    let b = free_tensor(&k.component(i), m);
    let c = free_tensor(&k.component(i - 1), m);
    let alpha = tensor_identity(&k.differential(i + 1), m);
    let beta = tensor_identity(&k.differential(i), m);
    Ok(homology_at(&alpha, &b, &beta, &c))
}

/// `n - max { i : H_i(x; M) ≠ 0 }`, an independent depth computation.
pub fn depth_via_koszul(m: &GradedModule) -> Result<usize> {
    if m.is_zero() {
        return Err(Error::InvalidInput("depth of the zero module".into()));
    }
    let n = m.ring.nvars() as i32;
    for i in (0..=n).rev() {
        if !koszul_homology(m, i)?.is_zero() {
            return Ok((n - i) as usize);
        }
    }
    Err(Error::InvalidInput("Koszul homology vanishes on a nonzero module".into()))
}

pub fn is_cm_module(m: &GradedModule) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    Ok(depth(m)? as i32 == m.krull_dim())
}

pub fn is_cm(r: &Ring) -> Result<bool> {
    is_cm_module(&GradedModule::free(r.clone(), vec![0]))
}

/// `μ^i(M) = dim_k Ext^i_R(k, M)` for `i <= bound`.
pub fn bass_numbers(m: &GradedModule, bound: usize) -> Result<Vec<usize>> {
    let k = GradedModule::residue_field(m.ring.clone());
    let ext = ExtComputer::new(&k, m, bound)?;
    (0..=bound)
        .map(|i| {
            let e = ext.ext(i)?;
            Ok(e.hilbert_series().length().expect("killed by the maximal ideal") as usize)
        })
        .collect()
}

/// The Bass number at the depth.
pub fn module_type(m: &GradedModule) -> Result<usize> {
    let d = depth(m)?;
    let k = GradedModule::residue_field(m.ring.clone());
    let e = ExtComputer::new(&k, m, d)?.ext(d)?;
    Ok(e.hilbert_series().length().expect("finite length") as usize)
}

pub fn is_gorenstein(r: &Ring) -> Result<bool> {
    Ok(is_cm(r)? && module_type(&GradedModule::free(r.clone(), vec![0]))? == 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiNumbers {
    pub values: Vec<usize>,
    /// Set when the resolution was cut off at `bound`.
    pub truncated_at: Option<usize>,
}

pub fn betti_numbers(m: &GradedModule, bound: usize) -> BettiNumbers {
    let res = Resolution::compute(m, bound);
    let len = if res.f0.is_empty() { 0 } else { res.maps.len() + 1 };
    BettiNumbers {
        values: (0..len).map(|i| res.rank(i)).collect(),
        truncated_at: (!res.complete).then_some(bound),
    }
}

/// Projective dimension when the minimal resolution ends within `bound` steps.
pub fn projective_dimension(m: &GradedModule, bound: usize) -> Option<usize> {
    Resolution::compute(m, bound).projective_dimension()
}

/// Default bound for detecting finite projective dimension: `dim R + #vars + 2`.
pub fn pd_bound(r: &Ring) -> usize {
    (ring_dim(r).max(0) as usize) + r.nvars() + 2
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub depth: Option<usize>,
    pub dim: i32,
    pub is_cm: bool,
    /// Only reported for the ring itself.
    pub is_gorenstein: Option<bool>,
    pub betti: BettiNumbers,
    pub bass: Vec<usize>,
    pub module_type: Option<usize>,
}

/// Invariants of `M`; `bound` limits the Betti and Bass computations.
pub fn report(m: &GradedModule, bound: usize, is_ring: bool) -> Result<InvariantReport> {
    let zero = m.is_zero();
    Ok(InvariantReport {
        depth: if zero { None } else { Some(depth(m)?) },
        dim: m.krull_dim(),
        is_cm: is_cm_module(m)?,
        is_gorenstein: if is_ring { Some(is_gorenstein(&m.ring)?) } else { None },
        betti: betti_numbers(m, bound),
        bass: bass_numbers(m, bound)?,
        module_type: if zero { None } else { Some(module_type(m)?) },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::tests::ring;

    #[test]
    fn example_ring_invariants() {
        let r = ring(&["x", "y", "z"], &["y^2", "y*z", "z^2"]);
        assert_eq!(ring_dim(&r), 1);
        assert_eq!(ring_depth(&r).unwrap(), 1);
        assert!(is_cm(&r).unwrap());
        assert!(!is_gorenstein(&r).unwrap());
        assert_eq!(module_type(&GradedModule::free(r.clone(), vec![0])).unwrap(), 2);
        assert_eq!(depth_via_koszul(&GradedModule::free(r, vec![0])).unwrap(), 1);
    }

    #[test]
    fn small_rings() {
        let r = ring(&["x"], &["x^2"]);
        assert!(is_gorenstein(&r).unwrap());
        assert_eq!(bass_numbers(&GradedModule::free(r.clone(), vec![0]), 0).unwrap(), vec![1]);
        let k = GradedModule::residue_field(r.clone());
        assert_eq!(betti_numbers(&k, 4).values, vec![1, 1, 1, 1, 1]);
        let s = ring(&["x", "y"], &["x^2", "x*y", "y^2"]);
        assert!(!is_gorenstein(&s).unwrap());
        let p = ring(&["x", "y"], &[]);
        assert_eq!(ring_depth(&p).unwrap(), 2);
        let k = GradedModule::residue_field(p.clone());
        assert_eq!(betti_numbers(&k, 5), BettiNumbers { values: vec![1, 2, 1], truncated_at: None });
        assert_eq!(depth(&k).unwrap(), 0);
        let nc = ring(&["x", "y"], &["x^2", "x*y"]);
        assert_eq!((ring_dim(&nc), ring_depth(&nc).unwrap()), (1, 0));
        assert!(!is_cm(&nc).unwrap());
    }
}
