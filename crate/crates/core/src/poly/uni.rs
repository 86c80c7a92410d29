use std::fmt;
use std::sync::Arc;

use crate::field::{Fe, FieldSpec};

/// A univariate polynomial in `t`, trimmed so the last stored coefficient is
/// nonzero (the zero polynomial stores nothing).
#[derive(Clone)]
pub struct UniPoly {
    field: Arc<FieldSpec>,
    coeffs: Vec<Fe>,
}

impl PartialEq for UniPoly {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.coeffs == other.coeffs
    }
}

impl Eq for UniPoly {}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly(q={}: {})", self.field.size(), self)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, c.0) {
                (0, v) => write!(f, "{v}")?,
                (1, 1) => f.write_str("t")?,
                (1, v) => write!(f, "{v}*t")?,
                (i, 1) => write!(f, "t^{i}")?,
                (i, v) => write!(f, "{v}*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl UniPoly {
    pub fn new(field: Arc<FieldSpec>, mut coeffs: Vec<Fe>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn zero(field: Arc<FieldSpec>) -> Self {
        UniPoly { field, coeffs: Vec::new() }
    }

    /// `t^e`.
    pub fn monomial(field: Arc<FieldSpec>, e: usize) -> Self {
        let mut coeffs = vec![Fe::ZERO; e + 1];
        coeffs[e] = Fe::ONE;
        UniPoly { field, coeffs }
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.len().checked_sub(1).map(|d| d as u32)
    }

    pub fn leading_coeff(&self) -> Option<Fe> {
        self.coeffs.last().copied()
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| self.field.add(self.coeff(i), other.coeff(i))).collect();
        UniPoly::new(self.field.clone(), coeffs)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return UniPoly::zero(self.field.clone());
        }
        let f = &self.field;
        let mut out = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        UniPoly::new(self.field.clone(), out)
    }

    /// `a g + b`.
    pub fn affine(&self, a: Fe, b: Fe) -> UniPoly {
        let f = &self.field;
        let mut coeffs: Vec<Fe> = self.coeffs.iter().map(|&c| f.mul(a, c)).collect();
        if coeffs.is_empty() {
            coeffs.push(Fe::ZERO);
        }
        coeffs[0] = f.add(coeffs[0], b);
        UniPoly::new(self.field.clone(), coeffs)
    }

    /// `g(s t + c)`.
    pub fn substitute_linear(&self, s: Fe, c: Fe) -> UniPoly {
        let inner = UniPoly::new(self.field.clone(), vec![c, s]);
        let mut acc = UniPoly::zero(self.field.clone());
        for &coef in self.coeffs.iter().rev() {
            acc = acc.mul(&inner).add(&UniPoly::new(self.field.clone(), vec![coef]));
        }
        acc
    }

    pub fn eval(&self, x: Fe) -> Fe {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }
}
