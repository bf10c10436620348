//! Koszul complexes on homogeneous sequences.

use super::ChainComplex;
use crate::algebra::matrix::PolyMatrix;
use crate::algebra::poly::Polynomial;
use crate::algebra::ring::Ring;
use crate::error::{Error, Result};

/// Size-`k` subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// `K(f_1..f_c; R)`: basis `e_S` of `K_i` over size-`i` subsets in lex order, twisted by
/// `Σ_{s∈S} deg f_s`, and `∂(e_S) = Σ_p (-1)^p f_{S[p]} e_{S \ S[p]}`.
pub fn koszul_complex(fs: &[Polynomial], ring: &Ring) -> Result<ChainComplex> {
    let pr = ring.poly();
    let mut degs = Vec::with_capacity(fs.len());
    for f in fs {
        if f.is_zero() {
            degs.push(0);
            continue;
        }
        if !f.is_homogeneous(pr) {
            return Err(Error::NotHomogeneous(f.format(pr)));
        }
        degs.push(f.degree(pr).unwrap());
    }
    let fs: Vec<Polynomial> = fs.iter().map(|f| ring.reduce(f)).collect();
    let c = fs.len();
    let bases: Vec<Vec<Vec<usize>>> = (0..=c).map(|k| subsets(c, k)).collect();
    let twist = |s: &[usize]| s.iter().map(|&i| degs[i]).sum::<i32>();
    let components: Vec<Vec<i32>> = bases.iter().map(|b| b.iter().map(|s| twist(s)).collect()).collect();
    let mut diffs = Vec::with_capacity(c);
    for k in 1..=c {
        let mut m = PolyMatrix::zero(components[k - 1].clone(), components[k].clone());
        for (j, s) in bases[k].iter().enumerate() {
            for p in 0..s.len() {
                let mut rest = s.clone();
                rest.remove(p);
                let row = bases[k - 1].binary_search(&rest).expect("lex order");
                let entry = if p % 2 == 0 { fs[s[p]].clone() } else { fs[s[p]].neg() };
                m.set(row, j, entry);
            }
        }
        diffs.push(m);
    }
    Ok(ChainComplex { ring: ring.clone(), lo: 0, components, diffs, truncated_at: None })
}

/// Whether the sequence is regular on the ring, tested by `H_1(K(f; R)) = 0` (valid for
/// homogeneous elements of positive degree).
pub fn is_regular_sequence(fs: &[Polynomial], ring: &Ring) -> Result<bool> {
    let pr = ring.poly();
    for f in fs {
        if f.degree(pr).map_or(true, |d| d <= 0) {
            return Err(Error::Precondition(format!(
                "{} is not a homogeneous element of positive degree",
                f.format(pr)
            )));
        }
    }
    if fs.is_empty() {
        return Ok(true);
    }
    let k = koszul_complex(fs, ring)?;
    Ok(k.homology(1).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;
    use crate::modules::tests::ring;

    #[test]
    fn koszul_on_two_variables() {
        let r = ring(&["x", "y"], &[]);
        let k = koszul_complex(&r.variables(), &r).unwrap();
        let e = |s: &str| parse_polynomial(s, r.poly()).unwrap();
        assert_eq!(k.differential(1).column(0), vec![e("x")]);
        assert_eq!(k.differential(1).column(1), vec![e("y")]);
        assert_eq!(k.differential(2).column(0), vec![e("-y"), e("x")]);
        assert_eq!(k.components, vec![vec![0], vec![1, 1], vec![2]]);
        let t = k.homology_table();
        assert_eq!(t.hsup, Some(0));
        assert!(k.euler_identity_holds(&t));
    }

    #[test]
    fn regular_sequences() {
        let r = ring(&["x", "y", "z"], &["y^2", "y*z", "z^2"]);
        let e = |s: &str| parse_polynomial(s, r.poly()).unwrap();
        assert!(is_regular_sequence(&[e("x")], &r).unwrap());
        assert!(!is_regular_sequence(&[e("y")], &r).unwrap());
        let p = ring(&["x", "y"], &[]);
        let e = |s: &str| parse_polynomial(s, p.poly()).unwrap();
        assert!(is_regular_sequence(&[e("x^2"), e("y^2")], &p).unwrap());
        assert!(!is_regular_sequence(&[e("x*y"), e("x^2")], &p).unwrap());
    }
}
