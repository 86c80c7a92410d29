use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::qnum::QNum;

/// `shift + coeff * sqrt(radicand)` with a squarefree radicand > 1, or
/// `coeff = 0` and `radicand = 1` for rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadSurd {
    shift: BigRational,
    coeff: BigRational,
    radicand: u64,
}

fn square_part(mut s: u64) -> (u64, u64) {
    let (mut outside, mut f) = (1u64, 2u64);
    while f * f <= s {
        while s % (f * f) == 0 {
            s /= f * f;
            outside *= f;
        }
        f += 1;
    }
    (outside, s)
}

impl QuadSurd {
    pub fn new(shift: BigRational, coeff: BigRational, radicand: u64) -> Self {
        if radicand == 0 || coeff.is_zero() {
            return QuadSurd { shift, coeff: BigRational::zero(), radicand: 1 };
        }
        let (outside, rest) = square_part(radicand);
        let coeff = coeff * BigRational::from_integer(BigInt::from(outside));
        if rest == 1 {
            return QuadSurd { shift: shift + coeff, coeff: BigRational::zero(), radicand: 1 };
        }
        QuadSurd { shift, coeff, radicand: rest }
    }

    pub fn rational(r: BigRational) -> Self {
        Self::new(r, BigRational::zero(), 1)
    }

    /// `sqrt(n)`.
    pub fn sqrt(n: u64) -> Self {
        Self::new(BigRational::zero(), BigRational::one(), n)
    }

    pub fn shift(&self) -> &BigRational {
        &self.shift
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        self.shift.to_f64().unwrap_or(f64::NAN)
            + self.coeff.to_f64().unwrap_or(f64::NAN) * (self.radicand as f64).sqrt()
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, r: &BigRational) -> Ordering {
        let x = &self.shift - r;
        let y = &self.coeff;
        // sign of x + y sqrt(R)
        let sx = x.signum();
        let sy = y.signum();
        if sy.is_zero() || sx == sy {
            return sign(&(&sx + &sy));
        }
        if sx.is_zero() {
            return sign(&sy);
        }
        let lhs = &x * &x;
        let rhs = y * y * BigRational::from_integer(BigInt::from(self.radicand));
        match lhs.cmp(&rhs) {
            Ordering::Equal => Ordering::Equal,
            Ordering::Greater => sign(&sx),
            Ordering::Less => sign(&sy),
        }
    }
}

fn sign(r: &BigRational) -> Ordering {
    r.cmp(&BigRational::zero())
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() {
            return write!(f, "{}", self.shift);
        }
        if !self.shift.is_zero() {
            write!(f, "{}", self.shift)?;
            f.write_str(if self.coeff.is_negative() { "-" } else { "+" })?;
        } else if self.coeff.is_negative() {
            f.write_str("-")?;
        }
        let mag = self.coeff.abs();
        if !mag.is_one() {
            write!(f, "{mag}*")?;
        }
        write!(f, "sqrt({})", self.radicand)
    }
}

/// `base * sqrt(q)^half` with `half` in `{0, 1}`: the shape of quantities
/// carrying `q` to a half-integer power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfPow {
    pub base: QNum,
    pub sqrt_q: bool,
}

impl HalfPow {
    pub fn mul_num(&self, x: &QNum) -> HalfPow {
        HalfPow { base: self.base.mul(x), sqrt_q: self.sqrt_q }
    }

    /// Exact comparison of `x` against this value.
    pub fn cmp_from(&self, x: &QNum) -> Ordering {
        if !self.sqrt_q {
            return x.cmp_num(&self.base);
        }
        let q = self.base.base();
        let sb = self.base.signum();
        let sx = x.signum();
        if sb == Ordering::Equal || sx == Ordering::Equal || sx != sb {
            // the product base*sqrt(q) has the sign of base
            return sx.cmp(&sb);
        }
        // same nonzero sign: compare squares and flip when negative
        let lhs = x.mul(x);
        let rhs = self.base.mul(&self.base).shift(1);
        debug_assert_eq!(rhs.base(), q);
        let c = lhs.cmp_num(&rhs);
        if sx == Ordering::Less {
            c.reverse()
        } else {
            c
        }
    }

    /// Exact value as a surd when the expansion is small.
    pub fn to_surd(&self, max_bits: u64) -> Option<QuadSurd> {
        let b = self.base.to_rational(max_bits)?;
        if self.sqrt_q {
            Some(QuadSurd::new(BigRational::zero(), b, self.base.base()))
        } else {
            Some(QuadSurd::rational(b))
        }
    }

    pub fn to_f64(&self) -> Option<f64> {
        let l = self.base.log_q()?;
        let q = self.base.base() as f64;
        let half = if self.sqrt_q { 0.5 } else { 0.0 };
        Some(q.powf(l + half))
    }
}

impl fmt::Display for HalfPow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_surd(super::qnum::DISPLAY_BITS) {
            Some(s) => write!(f, "{s}"),
            None if self.sqrt_q => write!(f, "({})*sqrt({})", self.base, self.base.base()),
            None => write!(f, "{}", self.base),
        }
    }
}
