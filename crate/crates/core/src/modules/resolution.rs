//! Minimal graded free resolutions.

use serde::Serialize;

use super::GradedModule;
use crate::algebra::matrix::PolyMatrix;
use crate::algebra::ring::Ring;
use crate::algebra::syzygy::syzygies;

/// `... -> F_2 -> F_1 -> F_0 -> M -> 0`; `maps[i]` is `F_{i+1} -> F_i`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub ring: Ring,
    pub f0: Vec<i32>,
    pub maps: Vec<PolyMatrix>,
    /// Whether the resolution is known to stop (the last computed syzygy module is zero).
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    /// `(homological index, internal degree, count)` with nonzero counts.
    pub entries: Vec<(usize, i32, usize)>,
    pub truncated_at: Option<usize>,
}

impl Resolution {
    /// Computes `F_0, ..., F_length` (or fewer if the resolution ends).
    pub fn compute(m: &GradedModule, length: usize) -> Resolution {
        let min = m.minimize();
        let f0 = min.gens().to_vec();
        let mut maps = Vec::new();
        let mut complete = f0.is_empty();
        if !complete && length > 0 {
            let d1 = min.rels().clone();
            if d1.cols() == 0 {
                complete = true;
            } else {
                maps.push(d1);
                while maps.len() < length {
                    let next = syzygies(maps.last().unwrap(), &m.ring);
                    if next.cols() == 0 {
                        complete = true;
                        break;
                    }
                    maps.push(next);
                }
                if !complete && maps.len() == length {
                    // Look one step ahead so finite resolutions of this length are recognised.
                    complete = syzygies(maps.last().unwrap(), &m.ring).cols() == 0;
                }
            }
        }
        Resolution { ring: m.ring.clone(), f0, maps, complete }
    }

    /// Generator degrees of `F_i` (empty beyond the computed range).
    pub fn twists(&self, i: usize) -> Vec<i32> {
        if i == 0 {
            self.f0.clone()
        } else {
            self.maps.get(i - 1).map(|m| m.col_twists.clone()).unwrap_or_default()
        }
    }

    pub fn rank(&self, i: usize) -> usize {
        self.twists(i).len()
    }

    /// Length of the resolution if it is complete.
    pub fn projective_dimension(&self) -> Option<usize> {
        if !self.complete {
            return None;
        }
        Some(self.maps.len())
    }

    /// The map `F_i -> F_{i-1}`, or a zero map of the right shape.
    pub fn differential(&self, i: usize) -> PolyMatrix {
        if i == 0 {
            return PolyMatrix::zero(Vec::new(), self.f0.clone());
        }
        match self.maps.get(i - 1) {
            Some(m) => m.clone(),
            None => PolyMatrix::zero(self.twists(i - 1), self.twists(i)),
        }
    }

    pub fn betti_table(&self) -> BettiTable {
        let mut entries = Vec::new();
        for i in 0..=self.maps.len() {
            let mut tw = self.twists(i);
            tw.sort();
            let mut k = 0;
            while k < tw.len() {
                let mut e = k;
                while e < tw.len() && tw[e] == tw[k] {
                    e += 1;
                }
                entries.push((i, tw[k], e - k));
                k = e;
            }
        }
        BettiTable { entries, truncated_at: (!self.complete).then_some(self.maps.len()) }
    }
}
