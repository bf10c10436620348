//! Hilbert series as `numerator / Π (1 - t^w)` with an integer Laurent numerator.

use std::fmt;

use serde::Serialize;

use crate::algebra::poly::{Monomial, PolyRing};

/// Integer Laurent polynomial `Σ coeffs[k] t^(low + k)`, kept trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize)]
pub struct LaurentPoly {
    pub low: i32,
    pub coeffs: Vec<i64>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::monomial(1, 0)
    }

    pub fn monomial(c: i64, e: i32) -> LaurentPoly {
        LaurentPoly { low: e, coeffs: vec![c] }.trimmed()
    }

    pub fn from_coeffs(low: i32, coeffs: Vec<i64>) -> LaurentPoly {
        LaurentPoly { low, coeffs }.trimmed()
    }

    fn trimmed(mut self) -> LaurentPoly {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.low += lead_zeros as i32;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn high(&self) -> i32 {
        self.low + self.coeffs.len() as i32 - 1
    }

    pub fn coeff(&self, e: i32) -> i64 {
        let k = e - self.low;
        if k < 0 || k as usize >= self.coeffs.len() {
            0
        } else {
            self.coeffs[k as usize]
        }
    }

    /// `(exponent, coefficient)` pairs with nonzero coefficient, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(k, &c)| (self.low + k as i32, c))
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.high().max(other.high());
        let coeffs = (low..=high).map(|e| self.coeff(e) + other.coeff(e)).collect();
        LaurentPoly::from_coeffs(low, coeffs)
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::from_coeffs(self.low + other.low, coeffs)
    }

    /// Multiplication by `t^s`.
    pub fn shift(&self, s: i32) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { low: self.low + s, coeffs: self.coeffs.clone() }
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Exact quotient `self / other`, if it is a Laurent polynomial.
    pub fn div_exact(&self, other: &LaurentPoly) -> Option<LaurentPoly> {
        assert!(!other.is_zero(), "division by zero");
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let qlen = self.coeffs.len() as i64 - other.coeffs.len() as i64 + 1;
        if qlen <= 0 {
            return None;
        }
        let lead = other.coeffs[0];
        let mut rem = self.coeffs.clone();
        let mut q = vec![0i64; qlen as usize];
        for k in 0..q.len() {
            if rem[k] % lead != 0 {
                return None;
            }
            let c = rem[k] / lead;
            q[k] = c;
            if c != 0 {
                for (j, b) in other.coeffs.iter().enumerate() {
                    rem[k + j] -= c * b;
                }
            }
        }
        if rem.iter().any(|&c| c != 0) {
            return None;
        }
        Some(LaurentPoly::from_coeffs(self.low - other.low, q))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// Text in the variable `t`, highest degree last, e.g. `1 - 2*t + t^2`.
    pub fn format(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (e, c) in self.terms() {
            let mon = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            let a = c.abs();
            let body = match (a, mon.is_empty()) {
                (_, true) => a.to_string(),
                (1, false) => mon,
                (_, false) => format!("{a}*{mon}"),
            };
            if s.is_empty() {
                if c < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(if c < 0 { " - " } else { " + " });
            }
            s.push_str(&body);
        }
        s
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

fn one_minus_t_pow(w: i32) -> LaurentPoly {
    LaurentPoly::one().sub(&LaurentPoly::monomial(1, w))
}

/// Hilbert series `numerator / Π_i (1 - t^{weights[i]})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HilbertSeries {
    pub numerator: LaurentPoly,
    pub weights: Vec<i32>,
}

impl HilbertSeries {
    pub fn zero(weights: Vec<i32>) -> HilbertSeries {
        HilbertSeries { numerator: LaurentPoly::zero(), weights }
    }

    pub fn add(&self, other: &HilbertSeries) -> HilbertSeries {
        assert_eq!(self.weights, other.weights);
        HilbertSeries { numerator: self.numerator.add(&other.numerator), weights: self.weights.clone() }
    }

    pub fn sub(&self, other: &HilbertSeries) -> HilbertSeries {
        assert_eq!(self.weights, other.weights);
        HilbertSeries { numerator: self.numerator.sub(&other.numerator), weights: self.weights.clone() }
    }

    /// Series of the twist `M(s)`, i.e. multiplication by `t^{-s}`.
    pub fn twist(&self, s: i32) -> HilbertSeries {
        HilbertSeries { numerator: self.numerator.shift(-s), weights: self.weights.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Dimensions in degrees `lo..=hi`.
    pub fn dims(&self, lo: i32, hi: i32) -> Vec<i64> {
        if hi < lo {
            return Vec::new();
        }
        let top = (hi - self.numerator.low.min(hi)).max(0) as usize;
        // Number of monomials of each degree in the polynomial ring.
        let mut counts = vec![0i64; top + 1];
        counts[0] = 1;
        for &w in &self.weights {
            let w = w as usize;
            for d in w..=top {
                counts[d] += counts[d - w];
            }
        }
        (lo..=hi)
            .map(|d| {
                self.numerator
                    .terms()
                    .filter(|(e, _)| *e <= d)
                    .map(|(e, c)| c * counts[(d - e) as usize])
                    .sum()
            })
            .collect()
    }

    pub fn dim_in_degree(&self, d: i32) -> i64 {
        self.dims(d, d)[0]
    }

    /// Numerator and remaining denominator weights after cancelling common factors.
    pub fn reduced(&self) -> (LaurentPoly, Vec<i32>) {
        let mut num = self.numerator.clone();
        let mut rest = Vec::new();
        if num.is_zero() {
            return (num, rest);
        }
        for &w in &self.weights {
            match num.div_exact(&one_minus_t_pow(w)) {
                Some(q) => num = q,
                None => rest.push(w),
            }
        }
        (num, rest)
    }

    /// Krull dimension of a module with this series (`-1` for the zero module).
    pub fn krull_dim(&self) -> i32 {
        if self.is_zero() {
            return -1;
        }
        let mut num = self.numerator.clone();
        let mut order = 0;
        let one_minus_t = one_minus_t_pow(1);
        while num.eval_at_one() == 0 {
            num = num.div_exact(&one_minus_t).expect("vanishing at 1 implies divisibility");
            order += 1;
        }
        self.weights.len() as i32 - order
    }

    /// The series as a Laurent polynomial when the module has finite length.
    pub fn as_polynomial(&self) -> Option<LaurentPoly> {
        let (num, rest) = self.reduced();
        rest.is_empty().then_some(num)
    }

    /// Total dimension over the field, for finite length modules.
    pub fn length(&self) -> Option<i64> {
        self.as_polynomial().map(|p| p.eval_at_one())
    }

    /// `self / other` when the quotient is a Laurent polynomial.
    pub fn ratio(&self, other: &HilbertSeries) -> Option<LaurentPoly> {
        assert_eq!(self.weights, other.weights);
        if other.is_zero() {
            return self.is_zero().then(LaurentPoly::zero);
        }
        self.numerator.div_exact(&other.numerator)
    }

    pub fn format(&self) -> String {
        let (num, rest) = self.reduced();
        if rest.is_empty() {
            return num.format();
        }
        let mut den = String::new();
        let mut ws = rest.clone();
        ws.sort();
        let mut k = 0;
        while k < ws.len() {
            let mut e = k;
            while e < ws.len() && ws[e] == ws[k] {
                e += 1;
            }
            let base = if ws[k] == 1 { "(1 - t)".to_string() } else { format!("(1 - t^{})", ws[k]) };
            den.push_str(&base);
            if e - k > 1 {
                den.push_str(&format!("^{}", e - k));
            }
            k = e;
        }
        let num = if num.terms().count() > 1 { format!("({num})") } else { num.format() };
        format!("{num}/{den}")
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

/// Numerator of the Hilbert series of `P / J` for a monomial ideal `J` given by generators.
pub fn monomial_quotient_numerator(gens: &[Monomial], ring: &PolyRing) -> LaurentPoly {
    let gens = minimalize(gens.to_vec());
    numerator_rec(gens, ring)
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.exps().iter().map(|&e| e as u32).sum::<u32>());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn numerator_rec(gens: Vec<Monomial>, ring: &PolyRing) -> LaurentPoly {
    if gens.iter().any(|g| g.is_one()) {
        return LaurentPoly::zero();
    }
    // Find a variable shared by two generators; if none, they are pairwise coprime.
    let n = ring.nvars();
    let pivot = (0..n).find(|&i| gens.iter().filter(|g| g.exps()[i] > 0).count() >= 2);
    let Some(x) = pivot else {
        let mut out = LaurentPoly::one();
        for g in &gens {
            out = out.mul(&one_minus_t_pow(ring.degree(g)));
        }
        return out;
    };
    // N(J) = N(J + (x)) + t^{deg x} N(J : x)
    let xm = Monomial::var(n, x);
    let mut plus: Vec<Monomial> = gens.iter().filter(|g| g.exps()[x] == 0).cloned().collect();
    plus.push(xm.clone());
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| if g.exps()[x] > 0 { g.div(&xm) } else { g.clone() })
        .collect();
    let a = numerator_rec(minimalize(plus), ring);
    let b = numerator_rec(minimalize(colon), ring);
    a.add(&b.shift(ring.weights[x] as i32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Field;

    #[test]
    fn laurent_division() {
        let a = LaurentPoly::from_coeffs(-1, vec![1, 0, -1]);
        let b = LaurentPoly::from_coeffs(0, vec![1, -1]);
        let q = a.div_exact(&b).unwrap();
        assert_eq!(q, LaurentPoly::from_coeffs(-1, vec![1, 1]));
        assert!(LaurentPoly::one().div_exact(&b).is_none());
        assert_eq!(a.format(), "t^-1 - t");
    }

    #[test]
    fn numerator_matches_monomial_count() {
        let r = PolyRing::new(Field::Rationals, &["x", "y", "z"]).unwrap();
        let m = |e: &[u16]| Monomial::from_exps(e);
        let gens = vec![m(&[0, 2, 0]), m(&[0, 1, 1]), m(&[0, 0, 2])];
        let hs = HilbertSeries { numerator: monomial_quotient_numerator(&gens, &r), weights: vec![1, 1, 1] };
        // Oracle: count standard monomials directly.
        for d in 0..7 {
            let count = r
                .monomials_of_degree(d)
                .iter()
                .filter(|mon| !gens.iter().any(|g| g.divides(mon)))
                .count() as i64;
            assert_eq!(hs.dim_in_degree(d), count, "degree {d}");
        }
        assert_eq!(hs.krull_dim(), 1);
        assert_eq!(hs.format(), "(1 + 2*t)/(1 - t)");
    }
}
