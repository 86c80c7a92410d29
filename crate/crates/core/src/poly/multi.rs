use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::field::{Fe, FieldSpec};

use super::monomial::{degree_of_rank, monomial_count, rank_unchecked, unrank_unchecked};
use super::{Monomial, PolyError, UniPoly};

/// Upper bound on dense coefficient vectors.
const MAX_COEFFS: usize = 1 << 26;

/// Total degree, with the zero polynomial's degree kept apart from every
/// finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::MinusInfinity => None,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A polynomial in `x1..xn` of degree at most `cap`, stored densely by
/// monomial rank.
#[derive(Clone)]
pub struct MultiPoly {
    field: Arc<FieldSpec>,
    n: usize,
    cap: u32,
    coeffs: Vec<Fe>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.n == other.n && self.cap == other.cap && self.coeffs == other.coeffs
    }
}

impl Eq for MultiPoly {}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly(q={}, n={}, cap={}: {})", self.field.size(), self.n, self.cap, self.render())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn checked_len(n: usize, cap: u32) -> Result<usize, PolyError> {
    let len = monomial_count(n, cap as usize);
    if len > MAX_COEFFS {
        return Err(PolyError::TooLarge(format!("b({n},{cap}) = {len}")));
    }
    Ok(len)
}

impl MultiPoly {
    pub fn zero(field: Arc<FieldSpec>, n: usize, cap: u32) -> Result<Self, PolyError> {
        let len = checked_len(n, cap)?;
        Ok(MultiPoly { field, n, cap, coeffs: vec![Fe::ZERO; len] })
    }

    pub fn constant(field: Arc<FieldSpec>, n: usize, cap: u32, c: Fe) -> Result<Self, PolyError> {
        let mut p = Self::zero(field, n, cap)?;
        p.coeffs[0] = c;
        Ok(p)
    }

    /// The variable `x_{i+1}`; `i` is zero-based.
    pub fn var(field: Arc<FieldSpec>, n: usize, cap: u32, i: usize) -> Result<Self, PolyError> {
        Self::from_terms(field, n, cap, &[(Fe::ONE, Monomial::var(n, i))])
    }

    pub fn from_terms(
        field: Arc<FieldSpec>,
        n: usize,
        cap: u32,
        terms: &[(Fe, Monomial)],
    ) -> Result<Self, PolyError> {
        let mut p = Self::zero(field, n, cap)?;
        for (c, m) in terms {
            if m.nvars() != n {
                return Err(PolyError::VariableMismatch(n, m.nvars()));
            }
            let r = m.rank(cap)?;
            p.coeffs[r] = p.field.add(p.coeffs[r], *c);
        }
        Ok(p)
    }

    /// Wraps a rank-ordered coefficient vector of length `b(n, cap)`.
    pub fn from_coeffs(field: Arc<FieldSpec>, n: usize, cap: u32, coeffs: Vec<Fe>) -> Result<Self, PolyError> {
        let len = checked_len(n, cap)?;
        if coeffs.len() != len {
            return Err(PolyError::Decode(format!("expected {len} coefficients, got {}", coeffs.len())));
        }
        if coeffs.iter().any(|c| c.0 as u32 >= field.size()) {
            return Err(PolyError::Decode("coefficient outside the field".into()));
        }
        Ok(MultiPoly { field, n, cap, coeffs })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, m: &Monomial) -> Fe {
        match m.rank(self.cap) {
            Ok(r) if m.nvars() == self.n => self.coeffs[r],
            _ => Fe::ZERO,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn leading_rank(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn degree(&self) -> Degree {
        match self.leading_rank() {
            Some(r) => Degree::Finite(degree_of_rank(r, self.n)),
            None => Degree::MinusInfinity,
        }
    }

    pub fn leading_term(&self) -> Result<Monomial, PolyError> {
        self.leading_rank().map(|r| unrank_unchecked(r, self.n)).ok_or(PolyError::ZeroPolynomial)
    }

    pub fn leading_coeff(&self) -> Result<Fe, PolyError> {
        self.leading_rank().map(|r| self.coeffs[r]).ok_or(PolyError::ZeroPolynomial)
    }

    pub fn is_monic(&self) -> Result<bool, PolyError> {
        Ok(self.leading_coeff()? == Fe::ONE)
    }

    /// Vanishes at the origin. The zero polynomial is original.
    pub fn is_original(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    pub fn constant_coeff(&self) -> Fe {
        self.coeffs[0]
    }

    /// Same polynomial at another cap; fails if the degree does not fit.
    pub fn with_cap(&self, cap: u32) -> Result<Self, PolyError> {
        if let Degree::Finite(d) = self.degree() {
            if d > cap {
                return Err(PolyError::CapOverflow { degree: d, cap });
            }
        }
        let len = checked_len(self.n, cap)?;
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(len, Fe::ZERO);
        Ok(MultiPoly { field: self.field.clone(), n: self.n, cap, coeffs })
    }

    fn check_compatible(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if *self.field != *other.field {
            return Err(PolyError::FieldMismatch);
        }
        if self.n != other.n {
            return Err(PolyError::VariableMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiPoly) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        let (long, short) = if self.cap >= other.cap { (self, other) } else { (other, self) };
        let mut out = long.clone();
        for (o, &s) in out.coeffs.iter_mut().zip(&short.coeffs) {
            *o = self.field.add(*o, s);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c = self.field.neg(*c);
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<Self, PolyError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, a: Fe) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c = self.field.mul(a, *c);
        }
        out
    }

    /// `a f + b`.
    pub fn affine(&self, a: Fe, b: Fe) -> Self {
        let mut out = self.scale(a);
        out.coeffs[0] = self.field.add(out.coeffs[0], b);
        out
    }

    /// Product at cap `max(self.cap, other.cap)`.
    pub fn mul(&self, other: &MultiPoly) -> Result<Self, PolyError> {
        self.mul_capped(other, self.cap.max(other.cap))
    }

    /// Product at an explicit cap; `CapOverflow` if the product does not fit.
    pub fn mul_capped(&self, other: &MultiPoly, cap: u32) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        let (da, db) = match (self.degree(), other.degree()) {
            (Degree::Finite(a), Degree::Finite(b)) => (a, b),
            _ => return MultiPoly::zero(self.field.clone(), self.n, cap),
        };
        if da + db > cap {
            return Err(PolyError::CapOverflow { degree: da + db, cap });
        }
        let mut out = MultiPoly::zero(self.field.clone(), self.n, cap)?;
        let f = &self.field;
        let lhs: Vec<(Monomial, Fe)> = self.terms().collect();
        for (mb, cb) in other.terms() {
            for (ma, ca) in &lhs {
                let r = rank_unchecked(ma.mul(&mb).exponents());
                out.coeffs[r] = f.add(out.coeffs[r], f.mul(*ca, cb));
            }
        }
        Ok(out)
    }

    /// Nonzero terms in ascending rank order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, Fe)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(r, &c)| (unrank_unchecked(r, self.n), c))
    }

    /// Value at a point of `F^n`.
    pub fn eval(&self, point: &[Fe]) -> Result<Fe, PolyError> {
        if point.len() != self.n {
            return Err(PolyError::VariableMismatch(self.n, point.len()));
        }
        let f = &self.field;
        let mut acc = Fe::ZERO;
        for (m, c) in self.terms() {
            let v = m
                .exponents()
                .iter()
                .zip(point)
                .fold(c, |v, (&e, &x)| f.mul(v, f.pow(x, e as u64)));
            acc = f.add(acc, v);
        }
        Ok(acc)
    }

    /// Homogeneous component of degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        let mut out = self.clone();
        let lo = if d == 0 { 0 } else { monomial_count(self.n, d as usize - 1) };
        let hi = monomial_count(self.n, d as usize).min(self.coeffs.len());
        for (r, c) in out.coeffs.iter_mut().enumerate() {
            if r < lo || r >= hi {
                *c = Fe::ZERO;
            }
        }
        out
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut [Fe] {
        &mut self.coeffs
    }

    /// Canonical total order: by encoding, i.e. coefficient vectors compared
    /// from rank 0 upward.
    pub fn cmp_encoding(&self, other: &MultiPoly) -> Ordering {
        self.coeffs.cmp(&other.coeffs)
    }
}

/// `g(h)` at the given output cap, by Horner's rule.
pub fn compose(g: &UniPoly, h: &MultiPoly, cap: u32) -> Result<MultiPoly, PolyError> {
    if **g.field() != **h.field() {
        return Err(PolyError::FieldMismatch);
    }
    let field = h.field().clone();
    let n = h.nvars();
    let Some(e) = g.degree() else {
        return MultiPoly::zero(field, n, cap);
    };
    if let Degree::Finite(dh) = h.degree() {
        if dh * e > cap {
            return Err(PolyError::CapOverflow { degree: dh * e, cap });
        }
    }
    let coeffs = g.coeffs();
    let h = h.with_cap(cap.max(h.degree().finite().unwrap_or(0)))?;
    let mut acc = MultiPoly::constant(field.clone(), n, cap, coeffs[e as usize])?;
    for &c in coeffs[..e as usize].iter().rev() {
        acc = acc.mul_capped(&h, cap)?;
        acc.coeffs[0] = field.add(acc.coeffs[0], c);
    }
    Ok(acc)
}
