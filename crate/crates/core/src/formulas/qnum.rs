//! Exact numbers of the form `sum c_i q^(e_i)` for a fixed `q`, with rational
//! `c_i` and integer (possibly huge or negative) `e_i`.
//!
//! Counting formulas produce values like `q^(10^14) - q^(10^14 - 8)` that can
//! be compared exactly without ever being expanded: [`QNum::signum`] walks
//! the terms from the top exponent down and stops as soon as the remaining
//! tail can no longer change the sign.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Values whose expansion needs more bits than this are displayed symbolically.
pub const DISPLAY_BITS: u64 = 1 << 16;

/// Equality is by value, so `2 * q^3` equals `q^4` when `q = 2`.
#[derive(Clone, Debug)]
pub struct QNum {
    q: u64,
    terms: BTreeMap<i128, BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QNum {
    pub fn zero(q: u64) -> Self {
        assert!(q >= 2, "q must be at least 2");
        QNum { q, terms: BTreeMap::new() }
    }

    /// `c * q^e`.
    pub fn term(q: u64, c: BigRational, e: i128) -> Self {
        let mut out = Self::zero(q);
        if !c.is_zero() {
            out.terms.insert(e, c);
        }
        out
    }

    /// `q^e`.
    pub fn pow(q: u64, e: i128) -> Self {
        Self::term(q, BigRational::one(), e)
    }

    pub fn int(q: u64, v: impl Into<BigInt>) -> Self {
        Self::term(q, BigRational::from_integer(v.into()), 0)
    }

    pub fn small(q: u64, v: i64) -> Self {
        Self::term(q, rat(v), 0)
    }

    pub fn rational(q: u64, v: BigRational) -> Self {
        Self::term(q, v, 0)
    }

    pub fn base(&self) -> u64 {
        self.q
    }

    /// Terms `(exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i128, &BigRational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.signum() == Ordering::Equal
    }

    fn check(&self, other: &QNum) {
        assert_eq!(self.q, other.q, "QNum values over different q");
    }

    fn insert(&mut self, e: i128, c: BigRational) {
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &QNum) -> QNum {
        self.check(other);
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.insert(e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> QNum {
        QNum { q: self.q, terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }

    pub fn sub(&self, other: &QNum) -> QNum {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &QNum) -> QNum {
        self.check(other);
        let mut out = QNum::zero(self.q);
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &other.terms {
                out.insert(ea + eb, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> QNum {
        if c.is_zero() {
            return QNum::zero(self.q);
        }
        QNum { q: self.q, terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect() }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i128) -> QNum {
        QNum { q: self.q, terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    /// Exact sign.
    pub fn signum(&self) -> Ordering {
        let q = rat(self.q as i64);
        let desc: Vec<(i128, &BigRational)> = self.terms.iter().rev().map(|(&e, c)| (e, c)).collect();
        // tails[j] bounds |sum_{i>=j} c_i q^(e_i - e_j)| since e_i <= e_j
        let mut tails = vec![BigRational::zero(); desc.len() + 1];
        for j in (0..desc.len()).rev() {
            tails[j] = &tails[j + 1] + desc[j].1.abs();
        }
        let mut acc = BigRational::zero();
        let mut at = 0i128;
        for (j, &(e, c)) in desc.iter().enumerate() {
            if acc.is_zero() {
                acc = c.clone();
                at = e;
                continue;
            }
            let gap = at - e;
            // smallest t with |acc| q^t > tail
            let mut t = 0i128;
            let mut scaled = acc.abs();
            while scaled <= tails[j] {
                scaled *= &q;
                t += 1;
            }
            if gap >= t {
                return sign_of(&acc);
            }
            acc = acc * num_traits::pow(q.clone(), gap as usize) + c;
            at = e;
        }
        sign_of(&acc)
    }

    pub fn cmp_num(&self, other: &QNum) -> Ordering {
        self.sub(other).signum()
    }

    pub fn abs(&self) -> QNum {
        if self.signum() == Ordering::Less {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn max_exponent(&self) -> Option<i128> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_exponent(&self) -> Option<i128> {
        self.terms.keys().next().copied()
    }

    /// Bits needed to expand every power of `q`.
    pub fn expansion_bits(&self) -> u64 {
        let span = self
            .terms
            .keys()
            .map(|e| e.unsigned_abs())
            .max()
            .unwrap_or(0);
        let lg = 64 - (self.q - 1).leading_zeros() as u128;
        (span.saturating_mul(lg)).min(u64::MAX as u128) as u64
    }

    /// Expanded exact value, if it needs at most `max_bits` bits per power.
    pub fn to_rational(&self, max_bits: u64) -> Option<BigRational> {
        if self.expansion_bits() > max_bits {
            return None;
        }
        let q = BigInt::from(self.q);
        let mut acc = BigRational::zero();
        for (&e, c) in &self.terms {
            let p = num_traits::pow(q.clone(), e.unsigned_abs() as usize);
            if e >= 0 {
                acc += c * BigRational::from_integer(p);
            } else {
                acc += c / BigRational::from_integer(p);
            }
        }
        Some(acc)
    }

    /// Expanded value when it is an integer and fits the bit limit.
    pub fn to_integer(&self, max_bits: u64) -> Option<BigInt> {
        self.to_rational(max_bits).filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    pub fn to_biguint(&self, max_bits: u64) -> Option<BigUint> {
        self.to_integer(max_bits).and_then(|v| v.to_biguint())
    }

    /// Floating-point `log_q` of a positive value.
    pub fn log_q(&self) -> Option<f64> {
        if self.signum() != Ordering::Greater {
            return None;
        }
        let top = self.max_exponent()?;
        let q = self.q as f64;
        let mut mant = 0.0f64;
        for (&e, c) in self.terms.iter().rev() {
            let gap = top - e;
            if gap > 2000 {
                break;
            }
            mant += c.to_f64().unwrap_or(0.0) * q.powf(-(gap as f64));
        }
        if mant <= 0.0 {
            // cancellation in the leading terms; fall back to the exact value
            let r = self.to_rational(1 << 20)?;
            let (num, den) = (r.numer().bits() as f64, r.denom().bits() as f64);
            return Some((num - den) / q.log2());
        }
        Some(top as f64 + mant.ln() / q.ln())
    }
}

impl PartialEq for QNum {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.cmp_num(other) == Ordering::Equal
    }
}

impl Eq for QNum {}

fn sign_of(r: &BigRational) -> Ordering {
    match r.numer().sign() {
        num_bigint::Sign::Plus => Ordering::Greater,
        num_bigint::Sign::Minus => Ordering::Less,
        num_bigint::Sign::NoSign => Ordering::Equal,
    }
}

impl fmt::Display for QNum {
    /// Decimal when the expansion is small, otherwise `c*q^e` terms in
    /// descending order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.to_rational(DISPLAY_BITS) {
            return write!(f, "{v}");
        }
        let mut first = true;
        for (&e, c) in self.terms.iter().rev() {
            let (neg, mag) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { "-" } else { "+" })?;
            }
            first = false;
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "{}^{}", self.q, e)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn expansion_matches() {
        let x = QNum::pow(2, 10).sub(&QNum::pow(2, 7));
        assert_eq!(x.to_integer(64), Some(BigInt::from(896)));
        assert_eq!(x.to_string(), "896");
        let y = QNum::term(3, r(2, 1), -2);
        assert_eq!(y.to_rational(64), Some(r(2, 9)));
    }

    #[test]
    fn sign_without_expansion() {
        let e = 1i128 << 60;
        let big = QNum::pow(2, e).sub(&QNum::pow(2, e - 1).scale(&r(3, 2)));
        // 2^e - 1.5 * 2^(e-1) = 2^(e-2) > 0
        assert_eq!(big.signum(), Ordering::Greater);
        let tie = QNum::pow(2, e).sub(&QNum::pow(2, e - 1).scale(&r(2, 1)));
        assert!(tie.is_zero());
        let neg = QNum::pow(2, e).sub(&QNum::pow(2, e - 3).scale(&r(9, 1)));
        assert_eq!(neg.signum(), Ordering::Less);
        let tiny = QNum::pow(2, e).sub(&QNum::pow(2, e - 5).scale(&r(32, 1))).add(&QNum::pow(2, -e));
        assert_eq!(tiny.signum(), Ordering::Greater);
    }

    #[test]
    fn sign_agrees_with_expansion_on_random_sums() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..2000 {
            let q = [2u64, 3, 4, 5][rng.gen_range(0..4)];
            let mut x = QNum::zero(q);
            for _ in 0..rng.gen_range(1..6) {
                let c = r(rng.gen_range(-20..20), rng.gen_range(1..7));
                x = x.add(&QNum::term(q, c, rng.gen_range(-8..8)));
            }
            let exact = x.to_rational(1 << 12).unwrap();
            assert_eq!(x.signum(), sign_of(&exact), "{x:?}");
        }
    }

    #[test]
    fn symbolic_display_for_huge_values() {
        let x = QNum::pow(2, 1 << 20).sub(&QNum::pow(2, 3));
        assert_eq!(x.to_string(), "2^1048576-2^3");
        assert!((x.log_q().unwrap() - (1u64 << 20) as f64).abs() < 1e-9);
    }
}
