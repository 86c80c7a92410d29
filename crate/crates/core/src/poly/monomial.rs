//! Monomials and their rank in the degree-respecting order.
//!
//! Ranks ascend by total degree, then lexicographically with
//! `x1 > x2 > ... > xn`. Rank 0 is the constant monomial and the last rank below
//! `b(n, d)` is `x1^d`. The rank of a monomial does not depend on the degree
//! cap, so a polynomial of cap `c` is a prefix of the same polynomial at any
//! larger cap.

use std::fmt;

use super::PolyError;

/// `binomial(n + d, n)`, the number of monomials of degree at most `d` in `n`
/// variables. Saturates at `usize::MAX`.
pub fn monomial_count(n: usize, d: usize) -> usize {
    binomial(n + d, n)
}

/// Number of monomials of degree exactly `d` in `n` variables.
pub fn homogeneous_count(n: usize, d: usize) -> usize {
    if n == 0 {
        return usize::from(d == 0);
    }
    binomial(n - 1 + d, n - 1)
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

/// Exponent vector `(e1, ..., en)` for `x1^e1 * ... * xn^en`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    /// The variable `x_{i+1}` (zero-based `i`).
    pub fn var(n: usize, i: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    /// Rank in the degree-respecting order; fails if the degree exceeds `cap`.
    pub fn rank(&self, cap: u32) -> Result<usize, PolyError> {
        let deg = self.degree();
        if deg > cap {
            return Err(PolyError::DegreeExceeded { degree: deg, cap });
        }
        Ok(rank_unchecked(&self.exps))
    }

    /// Inverse of [`Monomial::rank`].
    pub fn unrank(rank: usize, n: usize, cap: u32) -> Result<Monomial, PolyError> {
        let total = monomial_count(n, cap as usize);
        if rank >= total {
            return Err(PolyError::DegreeExceeded {
                degree: degree_of_rank(rank, n),
                cap,
            });
        }
        Ok(unrank_unchecked(rank, n))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Degree of the monomial with the given rank.
pub(crate) fn degree_of_rank(rank: usize, n: usize) -> u32 {
    let mut d = 0;
    while monomial_count(n, d) <= rank {
        d += 1;
    }
    d as u32
}

pub(crate) fn rank_unchecked(exps: &[u32]) -> usize {
    let n = exps.len();
    let deg: usize = exps.iter().map(|&e| e as usize).sum();
    let mut rank = if deg == 0 { 0 } else { monomial_count(n, deg - 1) };
    // count the degree-`deg` monomials that are lexicographically smaller
    let mut remaining = deg;
    for (i, &e) in exps.iter().enumerate() {
        let tail = n - i - 1;
        if tail == 0 {
            break;
        }
        for smaller in 0..e as usize {
            rank += homogeneous_count(tail, remaining - smaller);
        }
        remaining -= e as usize;
    }
    rank
}

pub(crate) fn unrank_unchecked(rank: usize, n: usize) -> Monomial {
    let deg = degree_of_rank(rank, n) as usize;
    let mut offset = rank - if deg == 0 { 0 } else { monomial_count(n, deg - 1) };
    let mut exps = vec![0u32; n];
    let mut remaining = deg;
    for i in 0..n {
        let tail = n - i - 1;
        if tail == 0 {
            exps[i] = remaining as u32;
            break;
        }
        let mut e = 0;
        loop {
            let block = homogeneous_count(tail, remaining - e);
            if offset < block {
                break;
            }
            offset -= block;
            e += 1;
        }
        exps[i] = e as u32;
        remaining -= e;
    }
    Monomial { exps }
}

/// Precomputed exponent vectors and product ranks for `n` variables up to a
/// degree cap.
#[derive(Clone, Debug)]
pub struct MonomialTable {
    n: usize,
    cap: u32,
    monomials: Vec<Monomial>,
    degrees: Vec<u32>,
}

impl MonomialTable {
    pub fn new(n: usize, cap: u32) -> Self {
        let count = monomial_count(n, cap as usize);
        let monomials: Vec<Monomial> = (0..count).map(|r| unrank_unchecked(r, n)).collect();
        let degrees = monomials.iter().map(Monomial::degree).collect();
        MonomialTable { n, cap, monomials, degrees }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomial(&self, rank: usize) -> &Monomial {
        &self.monomials[rank]
    }

    pub fn degree(&self, rank: usize) -> u32 {
        self.degrees[rank]
    }

    /// Rank of the product of two ranked monomials, if it stays within the cap.
    pub fn product_rank(&self, a: usize, b: usize) -> Option<usize> {
        if self.degrees[a] + self.degrees[b] > self.cap {
            return None;
        }
        let prod = self.monomials[a].mul(&self.monomials[b]);
        Some(rank_unchecked(prod.exponents()))
    }

    /// Full `len x len` product table with `usize::MAX` marking overflow.
    pub fn product_table(&self) -> Vec<usize> {
        let len = self.len();
        let mut out = vec![usize::MAX; len * len];
        for a in 0..len {
            for b in 0..len {
                if let Some(r) = self.product_rank(a, b) {
                    out[a * len + b] = r;
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bivariate_degree_two_ranks() {
        let r = |e: &[u32]| Monomial::new(e.to_vec()).rank(2).unwrap();
        assert_eq!(r(&[0, 0]), 0);
        assert_eq!(r(&[0, 1]), 1);
        assert_eq!(r(&[1, 0]), 2);
        assert_eq!(r(&[0, 2]), 3);
        assert_eq!(r(&[1, 1]), 4);
        assert_eq!(r(&[2, 0]), 5);
    }

    #[test]
    fn rank_respects_cap() {
        assert_eq!(
            Monomial::new(vec![2, 1]).rank(2),
            Err(PolyError::DegreeExceeded { degree: 3, cap: 2 })
        );
        assert!(Monomial::unrank(6, 2, 2).is_err());
    }

    #[test]
    fn rank_unrank_exhaustive() {
        for n in 1..=4 {
            for cap in 0..=8u32 {
                let total = monomial_count(n, cap as usize);
                let mut prev: Option<Monomial> = None;
                for r in 0..total {
                    let m = Monomial::unrank(r, n, cap).unwrap();
                    assert_eq!(m.rank(cap).unwrap(), r);
                    if let Some(p) = prev {
                        // ascending: (degree, lex) strictly increases
                        assert!((p.degree(), p.exponents()) < (m.degree(), m.exponents()));
                    }
                    prev = Some(m);
                }
                assert_eq!(prev.map(|m| m.exponents()[0]), Some(cap));
            }
        }
    }

    #[test]
    fn counts() {
        assert_eq!(monomial_count(2, 4), 15);
        assert_eq!(monomial_count(1, 5), 6);
        assert_eq!(monomial_count(3, 2), 10);
        assert_eq!(homogeneous_count(2, 6), 7);
        assert_eq!(homogeneous_count(3, 2), 6);
    }

    #[test]
    fn product_table_matches_exponents() {
        let t = MonomialTable::new(3, 4);
        for a in 0..t.len() {
            for b in 0..t.len() {
                match t.product_rank(a, b) {
                    Some(r) => assert_eq!(t.monomial(r), &t.monomial(a).mul(t.monomial(b))),
                    None => assert!(t.degree(a) + t.degree(b) > 4),
                }
            }
        }
    }
}
