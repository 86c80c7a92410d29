//! Closed-form dimensions and counts of decomposable polynomials.
//!
//! Everything is exact. Values that carry `q` to a large power are [`QNum`]
//! sums, which compare exactly without expansion; half-integer powers of `q`
//! appear only in [`beta_star`] and are carried as a [`HalfPow`].
//!
//! Two readings are fixed here and confirmed against the census engines:
//! the second branch of the two-prime count applies when `d > l^2`, and the
//! factor `1 - q^(b(n-1,l))` in its three-term formula carries a negative
//! exponent.

mod qnum;
mod surd;

pub use qnum::{QNum, DISPLAY_BITS};
pub use surd::{HalfPow, QuadSurd};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::field::prime_power;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("field size {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("a field size q is required")]
    MissingFieldSize,
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("d = {0} does not have exactly two prime factors")]
    NotTwoPrimeFactors(u32),
    #[error("not defined for prime d = {0}")]
    PrimeDegree(u32),
    #[error("exponent overflow: {0}")]
    TooLarge(String),
}

/// `b(n, d) = binomial(n + d, n)`, the dimension of polynomials of degree at
/// most `d` in `n` variables.
pub fn binom(n: u32, d: u32) -> BigUint {
    let (top, k) = (n as u64 + d as u64, n.min(d) as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (top - i) / (i + 1);
    }
    acc
}

fn bexp(n: u32, d: u32) -> Result<i128, FormulaError> {
    binom(n, d)
        .to_i128()
        .filter(|v| *v < (1i128 << 100))
        .ok_or_else(|| FormulaError::TooLarge(format!("b({n},{d})")))
}

/// Binomial `C(x, 2)` for small `x`.
fn choose2(x: u64) -> i128 {
    (x as i128) * (x as i128 - 1) / 2
}

pub fn smallest_prime_factor(d: u32) -> u32 {
    let mut f = 2;
    while f * f <= d {
        if d % f == 0 {
            return f;
        }
        f += 1;
    }
    d
}

fn is_prime(d: u32) -> bool {
    d >= 2 && smallest_prime_factor(d) == d
}

/// Which of the five error regimes a pair `(n, d)` falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Case {
    /// `d` prime.
    Prime,
    /// `n = 2`, `d/l` prime and `d/l <= 2l - 5`.
    Special,
    /// `n = 2` and `d/l = 2l - 3` prime.
    TwoLMinusThree,
    /// `d = 4`.
    Four,
    Generic,
}

impl Case {
    pub fn index(self) -> u8 {
        match self {
            Case::Prime => 0,
            Case::Special => 1,
            Case::TwoLMinusThree => 2,
            Case::Four => 3,
            Case::Generic => 4,
        }
    }
}

/// `(n, d, q)` with the quantities derived from the factorization of `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Params {
    pub n: u32,
    pub d: u32,
    pub q: Option<u64>,
    /// Smallest prime factor of `d`.
    pub l: u32,
    /// `d / l`.
    pub a: u32,
    pub special: bool,
    /// The divisor carrying the dimension.
    pub m: u32,
    pub case: Case,
}

impl Params {
    pub fn new(n: u32, d: u32, q: Option<u64>) -> Result<Self, FormulaError> {
        if n < 1 {
            return Err(FormulaError::InvalidParams("n must be at least 1".into()));
        }
        if d < 2 {
            return Err(FormulaError::InvalidParams("d must be at least 2".into()));
        }
        if let Some(q) = q {
            if prime_power(q).is_none() {
                return Err(FormulaError::NotPrimePower(q));
            }
        }
        let l = smallest_prime_factor(d);
        let a = d / l;
        let prime = a == 1;
        let special = n == 2 && is_prime(a) && a + 5 <= 2 * l;
        let m = if special || n == 1 || prime { d } else { l };
        let case = if prime {
            Case::Prime
        } else if special {
            Case::Special
        } else if n == 2 && a + 3 == 2 * l && is_prime(a) {
            Case::TwoLMinusThree
        } else if d == 4 {
            Case::Four
        } else {
            Case::Generic
        };
        Ok(Params { n, d, q, l, a, special, m, case })
    }

    pub fn is_prime_degree(&self) -> bool {
        self.case == Case::Prime
    }

    pub fn q(&self) -> Result<u64, FormulaError> {
        self.q.ok_or(FormulaError::MissingFieldSize)
    }

    fn need_bivariate_or_more(&self) -> Result<(), FormulaError> {
        if self.n < 2 {
            return Err(FormulaError::InvalidParams("requires n >= 2".into()));
        }
        Ok(())
    }
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn ri(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

/// `b(n, d/e) + e - 1` with the binomial continued to rational `e` as
/// `prod_{i=1..n} (d/e + i) / i`.
pub fn u(n: u32, d: u32, e: &BigRational) -> Result<BigRational, FormulaError> {
    if *e < BigRational::one() || *e > ri(d) {
        return Err(FormulaError::OutOfRange(format!("e = {e} outside [1, {d}]")));
    }
    let x = ri(d) / e;
    let mut b = BigRational::one();
    for i in 1..=n as i64 {
        b = b * (&x + ri(i)) / ri(i);
    }
    Ok(b + e - BigRational::one())
}

/// `u` at an integer argument.
pub fn u_int(n: u32, d: u32, e: u32) -> Result<BigRational, FormulaError> {
    u(n, d, &ri(e))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Landmarks {
    /// `d l / (d - l)`, where `u(d) = u(l*)`-type crossovers are measured.
    pub l_star: BigRational,
    /// `1 + sqrt(2d + 4) / 2`.
    pub l_0: QuadSurd,
    /// `sqrt(d)`.
    pub s_0: QuadSurd,
}

/// The points of interest on the graph of `u` for `n = 2`.
pub fn landmarks(d: u32) -> Result<Landmarks, FormulaError> {
    if is_prime(d) || d < 4 {
        return Err(FormulaError::PrimeDegree(d));
    }
    let l = smallest_prime_factor(d);
    Ok(Landmarks {
        l_star: r(d as i64 * l as i64, (d - l) as i64),
        l_0: QuadSurd::new(BigRational::one(), r(1, 2), 2 * d as u64 + 4),
        s_0: QuadSurd::sqrt(d as u64),
    })
}

/// Dimension of the decomposables, `b(n, d/m) + m - 1`.
pub fn dim_decomposables(n: u32, d: u32) -> Result<BigUint, FormulaError> {
    let p = Params::new(n, d, None)?;
    Ok(binom(n, d / p.m) + p.m - 1u32)
}

/// Dimension of the superlinearly decomposables, `b(n, d/l) + l - 1`;
/// `None` when `d` is prime and the set is empty.
pub fn dim_superlinear(n: u32, d: u32) -> Result<Option<BigUint>, FormulaError> {
    let p = Params::new(n, d, None)?;
    if n < 2 {
        return Err(FormulaError::InvalidParams("requires n >= 2".into()));
    }
    if p.is_prime_degree() {
        return Ok(None);
    }
    Ok(Some(binom(n, p.a) + p.l - 1u32))
}

/// `#P^=` (degree exactly `d`) and `#P^0` (monic original of degree `d`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceSizes {
    pub exact: QNum,
    pub monic_original: QNum,
}

pub fn space_sizes(n: u32, d: u32, q: u64) -> Result<SpaceSizes, FormulaError> {
    if d < 1 {
        return Err(FormulaError::InvalidParams("d must be at least 1".into()));
    }
    let exact = QNum::pow(q, bexp(n, d)?).sub(&QNum::pow(q, bexp(n, d - 1)?));
    let monic_original = exact.scale(&r(1, (q * (q - 1)) as i64));
    Ok(SpaceSizes { exact, monic_original })
}

/// `q^top * (1 - q^(-drop))`.
fn q_minus(q: u64, top: i128, drop: i128) -> QNum {
    QNum::pow(q, top).sub(&QNum::pow(q, top - drop))
}

/// The main term `q^(b(n,d/m) + m - 1) (1 - q^(-b(n-1,d/m)))`.
pub fn alpha(p: &Params) -> Result<QNum, FormulaError> {
    p.need_bivariate_or_more()?;
    let q = p.q()?;
    let k = p.d / p.m;
    Ok(q_minus(q, bexp(p.n, k)? + p.m as i128 - 1, bexp(p.n - 1, k)?))
}

/// The exponent `c` in the relative error of each case, `None` for prime `d`.
pub fn c_value(p: &Params) -> Result<Option<i128>, FormulaError> {
    Ok(match p.case {
        Case::Prime => None,
        Case::Special => Some(p.l as i128 - 3),
        Case::TwoLMinusThree => Some(p.l as i128 - 2),
        Case::Four => Some(choose2(p.n as u64 + 1) - 2),
        Case::Generic => Some(bexp(p.n - 1, p.a)? - 1),
    })
}

/// The relative error `beta` of the bracket around `alpha`.
pub fn beta(p: &Params) -> Result<QNum, FormulaError> {
    p.need_bivariate_or_more()?;
    let q = p.q()?;
    let c = c_value(p)?;
    let qi = q as i64;
    Ok(match (p.case, c) {
        (Case::Prime, _) | (_, None) => QNum::zero(q),
        (Case::Special, Some(c)) => {
            // 2 q^-c (1 - q^(-a-1)) / (1 - q^-2) = 2 q^(2-c) (1 - q^(-a-1)) / (q^2 - 1)
            q_minus(q, 2 - c, p.a as i128 + 1).scale(&r(2, qi * qi - 1))
        }
        (Case::TwoLMinusThree, Some(c)) => QNum::term(q, ri(2), -c),
        (Case::Four, Some(c)) => QNum::pow(q, -c),
        // 2 q^-c / (1 - q^-1) = 2 q^(1-c) / (q - 1)
        (Case::Generic, Some(c)) => QNum::term(q, r(2, qi - 1), 1 - c),
    })
}

/// `alpha`, `beta` and the bracket `[alpha(1-beta), alpha(1+beta)]` for `#D`,
/// with the lower bound `#P^= - 2 alpha` for the indecomposables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountBounds {
    pub alpha: QNum,
    pub beta: QNum,
    pub lower: QNum,
    pub upper: QNum,
    pub c_value: Option<i128>,
    pub indec_lower: QNum,
}

pub fn bounds(p: &Params) -> Result<CountBounds, FormulaError> {
    let alpha = alpha(p)?;
    let beta = beta(p)?;
    let ab = alpha.mul(&beta);
    let sizes = space_sizes(p.n, p.d, p.q()?)?;
    Ok(CountBounds {
        lower: alpha.sub(&ab),
        upper: alpha.add(&ab),
        c_value: c_value(p)?,
        indec_lower: sizes.exact.sub(&alpha.scale(&ri(2))),
        alpha,
        beta,
    })
}

/// The unified relative error `2 q^(-c5) / (1 - q^-1)` with
/// `c5 = b(n-1, d/l)/2 - 1`, which may be a half-integer.
pub fn beta_star(p: &Params) -> Result<HalfPow, FormulaError> {
    p.need_bivariate_or_more()?;
    if p.is_prime_degree() {
        return Err(FormulaError::PrimeDegree(p.d));
    }
    let q = p.q()?;
    let b = bexp(p.n - 1, p.a)?;
    // 2 q^(1 - c5) / (q - 1) with 1 - c5 = 2 - b/2
    let coeff = r(2, q as i64 - 1);
    Ok(if b % 2 == 0 {
        HalfPow { base: QNum::term(q, coeff, 2 - b / 2), sqrt_q: false }
    } else {
        HalfPow { base: QNum::term(q, coeff, (3 - b) / 2), sqrt_q: true }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlBounds {
    pub alpha_sl: QNum,
    pub beta_sl: QNum,
    pub lower: QNum,
    pub upper: QNum,
}

/// Bracket for the superlinearly decomposables.
pub fn sl_bounds(p: &Params) -> Result<SlBounds, FormulaError> {
    p.need_bivariate_or_more()?;
    let q = p.q()?;
    let (alpha_sl, beta_sl) = if p.is_prime_degree() {
        (QNum::zero(q), QNum::zero(q))
    } else if p.special {
        let (d, l, a) = (p.d as i128, p.l as i128, p.a as i128);
        let alpha_sl = q_minus(q, choose2(p.a as u64 + 2) + l - 1, a + 1);
        let beta_sl = if d > l * l {
            QNum::pow(q, -((d + l * l + l) * (d - l * l)) / (2 * l * l))
        } else {
            QNum::pow(q, -(d + l - 2) / 2)
        };
        (alpha_sl, beta_sl)
    } else {
        (alpha(p)?, beta(p)?)
    };
    let ab = alpha_sl.mul(&beta_sl);
    Ok(SlBounds { lower: alpha_sl.sub(&ab), upper: alpha_sl.add(&ab), alpha_sl, beta_sl })
}

/// Exact `#D` when `d` has exactly two prime factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactTwoPrime {
    pub count: QNum,
    pub alpha: QNum,
}

impl ExactTwoPrime {
    /// `beta'` with `count = alpha (1 + beta')`, when the values expand.
    pub fn beta_prime(&self, max_bits: u64) -> Option<BigRational> {
        let c = self.count.to_rational(max_bits)?;
        let a = self.alpha.to_rational(max_bits)?;
        Some(c / a - BigRational::one())
    }
}

pub fn exact_two_prime(p: &Params) -> Result<ExactTwoPrime, FormulaError> {
    p.need_bivariate_or_more()?;
    if p.is_prime_degree() || !is_prime(p.a) {
        return Err(FormulaError::NotTwoPrimeFactors(p.d));
    }
    let q = p.q()?;
    let alpha = alpha(p)?;
    let (n, d, l, a) = (p.n as i128, p.d as i128, p.l as i128, p.a as i128);
    // q^(d+n) (1 - q^-n)
    let lin = q_minus(q, d + n, n);
    let count = if p.a == p.l {
        if p.special {
            let left = q_minus(q, (d + 5 * l) / 2, l + 1);
            alpha.add(&left).sub(&q_minus(q, 2 * l + 1, n))
        } else {
            alpha.add(&lin.mul(&QNum::small(q, 1).sub(&QNum::pow(q, 2 * l - d - 1))))
        }
    } else {
        let by_l = q_minus(q, bexp(p.n, p.a)? + l - 1, bexp(p.n - 1, p.a)?);
        let by_a = q_minus(q, bexp(p.n, p.l)? + a - 1, bexp(p.n - 1, p.l)?);
        let overlap = lin.mul(&QNum::small(q, 1).sub(&QNum::term(q, ri(2), l + a - d - 1)));
        by_l.add(&by_a).add(&overlap)
    };
    Ok(ExactTwoPrime { count, alpha })
}

/// Direct maximization of `u` over the divisors `e > 1` of `d`; returns the
/// smallest maximizing divisor.
pub fn max_u_over_divisors(n: u32, d: u32) -> Result<(u32, BigUint), FormulaError> {
    if d < 2 {
        return Err(FormulaError::InvalidParams("d must be at least 2".into()));
    }
    let mut best: Option<(u32, BigUint)> = None;
    for e in (2..=d).filter(|e| d % e == 0) {
        let v = binom(n, d / e) + e - 1u32;
        if best.as_ref().map_or(true, |(_, b)| v > *b) {
            best = Some((e, v));
        }
    }
    Ok(best.expect("d has a divisor > 1"))
}

/// Both sides of three closed-form differences of `u` for `n = 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UIdentities {
    /// `u(l) - u(d)` and `(d-l)(d+4l-2l^2) / 2l^2`.
    pub l_vs_d: (BigRational, BigRational),
    /// `u(l) - u(d/l)` and `(d-l^2)(d+l^2+l) / 2l^2`.
    pub l_vs_cofactor: (BigRational, BigRational),
    /// `u(d) - u(l*)` and `(a-2)(2d-a^2-2a+3) / (2a-2)` with `a = d/l`.
    pub d_vs_l_star: (BigRational, BigRational),
}

/// Evaluates the identities for a divisor `1 < l < d` of `d`.
pub fn u_identities(d: u32, l: u32) -> Result<UIdentities, FormulaError> {
    if l <= 1 || l >= d || d % l != 0 {
        return Err(FormulaError::OutOfRange(format!("need a divisor 1 < l < d, got l = {l}, d = {d}")));
    }
    let (dr, lr, ar) = (ri(d), ri(l), ri(d / l));
    let two = ri(2);
    let l_star = &dr * &lr / (&dr - &lr);
    let ul = u(2, d, &lr)?;
    let ud = u(2, d, &dr)?;
    let ucof = u(2, d, &ar)?;
    let ustar = u(2, d, &l_star)?;
    let l2 = &lr * &lr;
    Ok(UIdentities {
        l_vs_d: (&ul - &ud, (&dr - &lr) * (&dr + ri(4) * &lr - &two * &l2) / (&two * &l2)),
        l_vs_cofactor: (&ul - &ucof, (&dr - &l2) * (&dr + &l2 + &lr) / (&two * &l2)),
        d_vs_l_star: (
            &ud - &ustar,
            (&ar - &two) * (&two * &dr - &ar * &ar - &two * &ar + ri(3)) / (&two * &ar - &two),
        ),
    })
}

/// Exponents of the approximate counts of reducible, relatively irreducible
/// and decomposable bivariate polynomials of degree `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RivalExponents {
    pub reducible: BigRational,
    pub relatively_irreducible: BigRational,
    pub decomposable: BigRational,
}

impl RivalExponents {
    pub fn ordered(&self) -> bool {
        self.reducible > self.relatively_irreducible && self.relatively_irreducible > self.decomposable
    }
}

pub fn rival_exponents(d: u32) -> Result<RivalExponents, FormulaError> {
    if is_prime(d) || d < 4 {
        return Err(FormulaError::PrimeDegree(d));
    }
    let l = smallest_prime_factor(d) as i64;
    let di = d as i64;
    let top = ri(choose2(d as u64 + 2) as i64);
    Ok(RivalExponents {
        reducible: &top - ri(di) + ri(1),
        relatively_irreducible: &top - r(di * di * (l - 1), 2 * l),
        decomposable: ri(choose2((di / l) as u64 + 2) as i64 + l - 1),
    })
}

/// Divisors of `d` greater than 1, ascending.
pub fn nontrivial_divisors(d: u32) -> Vec<u32> {
    (2..=d).filter(|e| d % e == 0).collect()
}

/// `d` has exactly two prime factors counted with multiplicity.
pub fn has_two_prime_factors(d: u32) -> bool {
    let l = smallest_prime_factor(d);
    l < d && is_prime(d / l)
}

/// `gcd`-free helper used by callers that need `q (q - 1)` as an integer.
pub fn unit_action_size(q: u64) -> BigUint {
    BigUint::from(q) * (q - 1)
}
