//! Streams over the monic original polynomials of exact degree `k` and over
//! univariates of exact degree `e`, both in canonical encoding order and
//! restartable from any offset.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::field::{Fe, FieldSpec};

use super::monomial::monomial_count;
use super::{MultiPoly, UniPoly};

/// Completions of `r` free coordinates that make a top block nonzero with last
/// nonzero entry 1, given whether the prefix already ends that way.
fn completions(q: &BigUint, r: usize, prefix_ok: bool) -> BigUint {
    let qr = num_traits::pow(q.clone(), r);
    (qr - 1u32) / (q - 1u32) + if prefix_ok { 1u32 } else { 0u32 }
}

/// Monic original polynomials in `n` variables of degree exactly `k`, ordered
/// lexicographically by encoding (rank 0 most significant).
pub struct MonicOriginalIter {
    field: Arc<FieldSpec>,
    n: usize,
    k: u32,
    lo: usize,
    coeffs: Vec<u16>,
    remaining: u64,
}

impl MonicOriginalIter {
    /// Number of monic original polynomials of degree exactly `k`.
    pub fn count(q: u32, n: usize, k: u32) -> BigUint {
        if k == 0 {
            return BigUint::zero();
        }
        let q = BigUint::from(q);
        let lo = monomial_count(n, k as usize - 1);
        let top = monomial_count(n, k as usize) - lo;
        num_traits::pow(q.clone(), lo - 1) * completions(&q, top, false)
    }

    /// Starts the stream at position `offset`; fails if the stream does not
    /// fit in `u64`.
    pub fn new(field: Arc<FieldSpec>, n: usize, k: u32, offset: u64) -> Option<Self> {
        assert!(k >= 1, "monic original polynomials need degree at least 1");
        let total = Self::count(field.size(), n, k).to_u64()?;
        let lo = monomial_count(n, k as usize - 1);
        let len = monomial_count(n, k as usize);
        let mut it = MonicOriginalIter {
            field,
            n,
            k,
            lo,
            coeffs: vec![0; len],
            remaining: total.saturating_sub(offset),
        };
        if it.remaining > 0 {
            it.unrank(offset);
        }
        Some(it)
    }

    fn unrank(&mut self, offset: u64) {
        let q = self.field.size() as u64;
        let top_len = self.coeffs.len() - self.lo;
        let qb = BigUint::from(q);
        let blocks = completions(&qb, top_len, false).to_u64().expect("fits");
        let (mut lower, mut t) = (offset / blocks, offset % blocks);
        for r in (1..self.lo).rev() {
            self.coeffs[r] = (lower % q) as u16;
            lower /= q;
        }
        let mut ok = false;
        for i in 0..top_len {
            let rest = top_len - i - 1;
            for v in 0..q {
                let next_ok = if v == 0 { ok } else { v == 1 };
                let c = completions(&qb, rest, next_ok).to_u64().expect("fits");
                if t < c {
                    self.coeffs[self.lo + i] = v as u16;
                    ok = next_ok;
                    break;
                }
                t -= c;
            }
        }
    }

    fn top_valid(&self) -> bool {
        self.coeffs[self.lo..].iter().rev().find(|&&c| c != 0) == Some(&1)
    }

    fn advance(&mut self) {
        let q = self.field.size() as u16;
        loop {
            let mut i = self.coeffs.len();
            loop {
                i -= 1;
                self.coeffs[i] += 1;
                if self.coeffs[i] < q {
                    break;
                }
                self.coeffs[i] = 0;
                if i == 1 {
                    return;
                }
            }
            if self.top_valid() {
                return;
            }
        }
    }
}

impl Iterator for MonicOriginalIter {
    type Item = MultiPoly;

    fn next(&mut self) -> Option<MultiPoly> {
        if self.remaining == 0 {
            return None;
        }
        let out = MultiPoly::from_coeffs(
            self.field.clone(),
            self.n,
            self.k,
            self.coeffs.iter().map(|&c| Fe(c)).collect(),
        )
        .expect("valid coefficients");
        self.remaining -= 1;
        if self.remaining > 0 {
            self.advance();
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.remaining as usize;
        (r, Some(r))
    }
}

/// Univariates `g0 + ... + ge t^e` with `ge != 0`, ordered lexicographically
/// with `g0` most significant.
pub struct UnivariateExactIter {
    field: Arc<FieldSpec>,
    coeffs: Vec<u16>,
    remaining: u64,
}

impl UnivariateExactIter {
    pub fn count(q: u32, e: u32) -> BigUint {
        let q = BigUint::from(q);
        num_traits::pow(q.clone(), e as usize) * (q - BigUint::one())
    }

    pub fn new(field: Arc<FieldSpec>, e: u32, offset: u64) -> Option<Self> {
        let total = Self::count(field.size(), e).to_u64()?;
        let q = field.size() as u64;
        let mut coeffs = vec![0u16; e as usize + 1];
        let mut rest = offset.min(total.saturating_sub(1));
        coeffs[e as usize] = (1 + rest % (q - 1)) as u16;
        rest /= q - 1;
        for i in (0..e as usize).rev() {
            coeffs[i] = (rest % q) as u16;
            rest /= q;
        }
        Some(UnivariateExactIter { field, coeffs, remaining: total.saturating_sub(offset) })
    }

    fn advance(&mut self) {
        let q = self.field.size() as u16;
        let e = self.coeffs.len() - 1;
        self.coeffs[e] += 1;
        if self.coeffs[e] < q {
            return;
        }
        self.coeffs[e] = 1;
        for i in (0..e).rev() {
            self.coeffs[i] += 1;
            if self.coeffs[i] < q {
                return;
            }
            self.coeffs[i] = 0;
        }
    }
}

impl Iterator for UnivariateExactIter {
    type Item = UniPoly;

    fn next(&mut self) -> Option<UniPoly> {
        if self.remaining == 0 {
            return None;
        }
        let out = UniPoly::new(self.field.clone(), self.coeffs.iter().map(|&c| Fe(c)).collect());
        self.remaining -= 1;
        if self.remaining > 0 {
            self.advance();
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.remaining as usize;
        (r, Some(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Degree;

    fn f(q: u64) -> Arc<FieldSpec> {
        Arc::new(FieldSpec::with_size(q).unwrap())
    }

    #[test]
    fn linear_bivariate_over_f2() {
        let all: Vec<String> = MonicOriginalIter::new(f(2), 2, 1, 0).unwrap().map(|p| p.render()).collect();
        assert_eq!(all, ["x1", "x2", "x1 + x2"]);
    }

    #[test]
    fn counts_and_order() {
        for (q, n, k) in [(2u64, 2usize, 2u32), (3, 2, 2), (2, 3, 2), (4, 2, 1), (2, 1, 4)] {
            let items: Vec<MultiPoly> = MonicOriginalIter::new(f(q), n, k, 0).unwrap().collect();
            assert_eq!(BigUint::from(items.len()), MonicOriginalIter::count(q as u32, n, k));
            for p in &items {
                assert_eq!(p.degree(), Degree::Finite(k));
                assert!(p.is_monic().unwrap() && p.is_original());
            }
            for w in items.windows(2) {
                assert!(w[0].encode() < w[1].encode());
            }
        }
        assert_eq!(MonicOriginalIter::count(2, 2, 2), BigUint::from(28u32));
    }

    #[test]
    fn restart_from_offset() {
        let all: Vec<MultiPoly> = MonicOriginalIter::new(f(3), 2, 2, 0).unwrap().collect();
        for off in [0usize, 1, 7, 100, all.len() - 1, all.len()] {
            let tail: Vec<MultiPoly> = MonicOriginalIter::new(f(3), 2, 2, off as u64).unwrap().collect();
            assert_eq!(tail, all[off..]);
        }
    }

    #[test]
    fn univariate_exact() {
        let all: Vec<UniPoly> = UnivariateExactIter::new(f(2), 2, 0).unwrap().collect();
        assert_eq!(all.len(), 4);
        let all3: Vec<UniPoly> = UnivariateExactIter::new(f(3), 2, 0).unwrap().collect();
        assert_eq!(all3.len(), 18);
        assert!(all3.iter().all(|g| g.degree() == Some(2)));
        for w in all3.windows(2) {
            assert!(w[0].coeffs() < w[1].coeffs());
        }
        let tail: Vec<UniPoly> = UnivariateExactIter::new(f(3), 2, 5).unwrap().collect();
        assert_eq!(tail, all3[5..]);
    }
}
