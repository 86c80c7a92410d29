//! Small finite fields `F_q`, `q = p^k <= 2^16`, backed by lookup tables.
//!
//! Elements are identified by a canonical index in `[0, q)`: the coefficients
//! of the polynomial-basis representation `c_0 + c_1 t + ... + c_{k-1} t^{k-1}`
//! read as the base-`p` integer `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`. Index 0
//! is zero and index 1 is one. Addition is therefore digit-wise mod `p`.
//!
//! Extension fields use the monic irreducible polynomial of degree `k` over
//! `F_p` whose lower coefficient vector, read as a base-`p` integer with the
//! constant term least significant, is smallest. For the census fields:
//!
//! | q | modulus       |
//! |---|---------------|
//! | 4 | t^2 + t + 1   |
//! | 8 | t^3 + t + 1   |
//! | 9 | t^2 + 1       |

mod linalg;

pub use linalg::{mat_vec, solve_linear, Matrix};

use std::fmt;

use thiserror::Error;

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u32 = 1 << 16;

/// Full addition/multiplication tables are kept up to this size.
const TABLE_LIMIT: u32 = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field size {p}^{k} exceeds 2^16")]
    TooLarge { p: u64, k: u32 },
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// A field element, stored as its canonical index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fe(pub u16);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A concrete finite field with precomputed arithmetic tables.
///
/// Immutable after construction, so it can be shared freely between threads
/// (usually behind an `Arc`).
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus coefficients `m_0..m_k` (empty for prime fields).
    modulus: Vec<u16>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    /// `log[a]` for `a != 0` with respect to `generator`.
    log: Vec<u32>,
    /// `exp[i] = generator^i`, length `2(q-1)` so sums of logs need no reduction.
    exp: Vec<u16>,
    generator: u16,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k
    }
}

impl Eq for FieldSpec {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= n {
        if n % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

/// Splits `q` into `(p, k)` with `q = p^k`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut rest = q;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

impl FieldSpec {
    /// Builds `F_{p^k}`.
    pub fn new(p: u64, k: u32) -> Result<Self, FieldError> {
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= MAX_FIELD_SIZE as u64)
            .ok_or(FieldError::TooLarge { p, k })?;
        let (p, q) = (p as u32, q as u32);
        let modulus = if k == 1 { Vec::new() } else { smallest_irreducible(p, k) };
        let mut field = FieldSpec {
            p,
            k,
            q,
            modulus,
            add: Vec::new(),
            mul: Vec::new(),
            neg: Vec::new(),
            inv: Vec::new(),
            log: Vec::new(),
            exp: Vec::new(),
            generator: 0,
        };
        field.build_tables();
        Ok(field)
    }

    /// Builds the field with `q` elements.
    pub fn with_size(q: u64) -> Result<Self, FieldError> {
        let (p, k) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        Self::new(p, k)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    /// Coefficients `m_0..m_k` of the extension modulus; empty for prime fields.
    pub fn modulus(&self) -> &[u16] {
        &self.modulus
    }

    pub fn generator(&self) -> Fe {
        Fe(self.generator)
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    pub fn one(&self) -> Fe {
        Fe::ONE
    }

    /// Element from an index, reduced into `[0, q)`.
    pub fn element(&self, index: u64) -> Fe {
        Fe((index % self.q as u64) as u16)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.p as i64) as u16)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.q).map(|i| Fe(i as u16))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (1..self.q).map(|i| Fe(i as u16))
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.add.is_empty() {
            Fe(self.add_digits(a.0 as u32, b.0 as u32) as u16)
        } else {
            Fe(self.add[a.index() * self.q as usize + b.index()])
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if !self.mul.is_empty() {
            return Fe(self.mul[a.index() * self.q as usize + b.index()]);
        }
        if a.is_zero() || b.is_zero() {
            return Fe::ZERO;
        }
        Fe(self.exp[(self.log[a.index()] + self.log[b.index()]) as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        (!a.is_zero()).then(|| Fe(self.inv[a.index()]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Option<Fe> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.is_zero() {
            return Fe::ZERO;
        }
        let order = (self.q - 1) as u64;
        let l = (self.log[a.index()] as u64 * (e % order)) % order;
        Fe(self.exp[l as usize])
    }

    /// `a` added to itself `n` times.
    pub fn times(&self, a: Fe, n: u64) -> Fe {
        self.mul(self.from_int((n % self.p as u64) as i64), a)
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.k {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    fn neg_digits(&self, mut a: u32) -> u32 {
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.k {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    /// Multiplication through the polynomial representation; used only while
    /// building tables.
    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.p;
        if self.k == 1 {
            return (a * b) % p;
        }
        let k = self.k as usize;
        let da = digits(a, p, k);
        let db = digits(b, p, k);
        let mut prod = vec![0u32; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for top in (k..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            // t^k = -(m_0 + ... + m_{k-1} t^{k-1})
            for (i, &m) in self.modulus[..k].iter().enumerate() {
                let sub = (c * m as u32) % p;
                prod[top - k + i] = (prod[top - k + i] + p - sub) % p;
            }
            prod[top] = 0;
        }
        prod[..k].iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        self.neg = (0..self.q).map(|a| self.neg_digits(a) as u16).collect();
        self.generator = (1..self.q)
            .find(|&g| multiplicative_order(self, g) == self.q - 1)
            .expect("a finite field has a primitive element") as u16;
        let order = q - 1;
        let mut exp = vec![0u16; 2 * order.max(1)];
        let mut log = vec![0u32; q];
        let mut x = 1u32;
        for i in 0..order {
            exp[i] = x as u16;
            exp[i + order] = x as u16;
            log[x as usize] = i as u32;
            x = self.mul_slow(x, self.generator as u32);
        }
        self.exp = exp;
        self.log = log;
        self.inv = (0..q)
            .map(|a| if a == 0 { 0 } else { self.exp[(order - self.log[a] as usize) % order] })
            .collect();
        if self.q <= TABLE_LIMIT {
            let mut add = vec![0u16; q * q];
            let mut mul = vec![0u16; q * q];
            for a in 0..q {
                for b in 0..q {
                    add[a * q + b] = self.add_digits(a as u32, b as u32) as u16;
                    mul[a * q + b] = if a == 0 || b == 0 {
                        0
                    } else {
                        self.exp[(self.log[a] + self.log[b]) as usize]
                    };
                }
            }
            self.add = add;
            self.mul = mul;
        }
    }
}

fn digits(mut x: u32, p: u32, k: usize) -> Vec<u32> {
    let mut out = vec![0; k];
    for d in out.iter_mut() {
        *d = x % p;
        x /= p;
    }
    out
}

fn multiplicative_order(field: &FieldSpec, g: u32) -> u32 {
    let mut x = g;
    let mut ord = 1;
    while x != 1 {
        x = field.mul_slow(x, g);
        ord += 1;
        if ord > field.q {
            return 0;
        }
    }
    ord
}

/// Monic irreducible of degree `k` over `F_p` with the smallest lower
/// coefficient vector (constant term least significant). Returns `m_0..m_k`.
fn smallest_irreducible(p: u32, k: u32) -> Vec<u16> {
    let count = (p as u64).pow(k);
    for code in 0..count {
        let mut coeffs: Vec<u32> = digits(code as u32, p, k as usize);
        coeffs.push(1);
        if is_irreducible(&coeffs, p) {
            return coeffs.into_iter().map(|c| c as u16).collect();
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for dd in 1..=deg / 2 {
        for code in 0..(p as u64).pow(dd as u32) {
            let mut div = digits(code as u32, p, dd);
            div.push(1);
            if remainder_is_zero(f, &div, p) {
                return false;
            }
        }
    }
    true
}

fn remainder_is_zero(f: &[u32], div: &[u32], p: u32) -> bool {
    let mut r = f.to_vec();
    let dd = div.len() - 1;
    for top in (dd..r.len()).rev() {
        let c = r[top];
        if c == 0 {
            continue;
        }
        for i in 0..=dd {
            let sub = (c * div[i]) % p;
            r[top - dd + i] = (r[top - dd + i] + p - sub) % p;
        }
    }
    r[..dd].iter().all(|&c| c == 0)
}
