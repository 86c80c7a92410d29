//! Decompositions `f = g(h)` with univariate `g` and multivariate `h`.
//!
//! The search enumerates the monic original right components `h` of the
//! right degree and solves for `g` linearly: the powers `1, h, ..., h^e` have
//! distinct degrees, so they are independent and `g` is unique when it
//! exists. This works in every characteristic.

use std::sync::Arc;

use thiserror::Error;

use crate::field::{solve_linear, Fe, FieldSpec, Matrix};
use crate::poly::{compose, Degree, MonicOriginalIter, MultiPoly, PolyError, UniPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompError {
    #[error("a decomposition needs deg g >= 2 and deg h >= 1")]
    DegreeTooSmall,
    #[error("{e} is not a divisor of {d} in 2..={d}")]
    NotADivisor { e: u32, d: u32 },
    #[error("two normal decompositions with indecomposable right component: {0} and {1}")]
    UniquenessViolated(String, String),
    #[error("the search space for right components is too large")]
    SearchTooLarge,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A pair `(g, h)` with `deg g >= 2` and `deg h >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub g: UniPoly,
    pub h: MultiPoly,
}

impl Decomposition {
    pub fn new(g: UniPoly, h: MultiPoly) -> Result<Self, DecompError> {
        let dg = g.degree().unwrap_or(0);
        if dg < 2 || h.degree() < Degree::Finite(1) {
            return Err(DecompError::DegreeTooSmall);
        }
        Ok(Decomposition { g, h })
    }

    /// `h` monic and original.
    pub fn is_normal(&self) -> bool {
        self.h.is_monic().unwrap_or(false) && self.h.is_original()
    }

    /// `deg h >= 2`.
    pub fn is_superlinear(&self) -> bool {
        self.h.degree() >= Degree::Finite(2)
    }

    pub fn left_degree(&self) -> u32 {
        self.g.degree().unwrap_or(0)
    }

    pub fn right_degree(&self) -> u32 {
        self.h.degree().finite().unwrap_or(0)
    }

    /// `g(h)` at cap `deg g * deg h`.
    pub fn compose(&self) -> Result<MultiPoly, DecompError> {
        Ok(compose(&self.g, &self.h, self.left_degree() * self.right_degree())?)
    }
}

/// Moves `(g, h)` to the normal pair `(g((t - b)/a), a h + b)` with
/// `a = lc(h)^-1` and `b = -a h(0)`, which composes to the same polynomial.
pub fn normalize(g: &UniPoly, h: &MultiPoly) -> Result<Decomposition, DecompError> {
    let dec = Decomposition::new(g.clone(), h.clone())?;
    let f = h.field().clone();
    let a = f.inv(h.leading_coeff()?).expect("leading coefficient is nonzero");
    let b = f.neg(f.mul(a, h.constant_coeff()));
    let a_inv = f.inv(a).expect("nonzero");
    let h_star = dec.h.affine(a, b);
    // (t - b) a^-1 = a^-1 t - b a^-1
    let g_star = dec.g.substitute_linear(a_inv, f.neg(f.mul(b, a_inv)));
    Decomposition::new(g_star, h_star)
}

/// Largest number of right components the generic search will try.
pub const SEARCH_LIMIT: u64 = 1 << 24;

fn check_divisor(f: &MultiPoly, e: u32) -> Result<u32, DecompError> {
    let d = f.degree().finite().unwrap_or(0);
    if e < 2 || d == 0 || e > d || d % e != 0 {
        return Err(DecompError::NotADivisor { e, d });
    }
    Ok(d)
}

/// All normal decompositions of `f` with `deg g = e`, sorted by the encoding
/// of `h`.
pub fn decompose_with_left_degree(f: &MultiPoly, e: u32) -> Result<Vec<Decomposition>, DecompError> {
    let d = check_divisor(f, e)?;
    let mut out = Vec::new();
    search(f, d, e, |dec| {
        out.push(dec);
        false
    })?;
    Ok(out)
}

/// Visits normal decompositions with `deg g = e` in encoding order of `h`
/// until the visitor returns `true`.
fn search(
    f: &MultiPoly,
    d: u32,
    e: u32,
    mut visit: impl FnMut(Decomposition) -> bool,
) -> Result<bool, DecompError> {
    let field = f.field().clone();
    let n = f.nvars();
    let k = d / e;
    let f_d = if f.cap() == d { f.clone() } else { f.with_cap(d)? };
    let top = f_d.homogeneous_part(d);
    let iter = MonicOriginalIter::new(field.clone(), n, k, 0).ok_or(DecompError::SearchTooLarge)?;
    if iter.size_hint().0 as u64 > SEARCH_LIMIT {
        return Err(DecompError::SearchTooLarge);
    }
    let one = MultiPoly::constant(field.clone(), n, d, Fe::ONE)?;
    for h in iter {
        let h_d = h.with_cap(d)?;
        let mut powers = Vec::with_capacity(e as usize + 1);
        powers.push(one.clone());
        for i in 1..=e as usize {
            powers.push(powers[i - 1].mul_capped(&h_d, d)?);
        }
        // cheap filter: the top form of f is g_e times that of h^e
        let lead = powers[e as usize].homogeneous_part(d);
        let r = top.leading_coeff()?;
        if lead.scale(r) != top {
            continue;
        }
        let cols: Vec<&[Fe]> = powers.iter().map(|p| p.coeffs()).collect();
        let a = Matrix::from_columns(&cols).expect("equal lengths");
        let Some(x) = solve_linear(&field, &a, f_d.coeffs()).expect("dimensions agree") else {
            continue;
        };
        if x[e as usize].is_zero() {
            continue;
        }
        let g = UniPoly::new(field.clone(), x);
        if visit(Decomposition { g, h }) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn divisors(d: u32) -> impl Iterator<Item = u32> {
    (2..=d).filter(move |e| d % e == 0)
}

/// Whether `f = g(h)` for some `deg g >= 2`, `deg h >= 1`.
pub fn is_decomposable(f: &MultiPoly) -> Result<bool, DecompError> {
    let d = match f.degree() {
        Degree::Finite(d) if d >= 1 => d,
        _ => return Ok(false),
    };
    if f.nvars() == 1 {
        return Ok(d >= 2);
    }
    for e in divisors(d) {
        if search(f, d, e, |_| true)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether `f = g(h)` with `deg h >= 2`.
pub fn is_superlinearly_decomposable(f: &MultiPoly) -> Result<bool, DecompError> {
    let d = match f.degree() {
        Degree::Finite(d) if d >= 1 => d,
        _ => return Ok(false),
    };
    for e in divisors(d).filter(|&e| e < d) {
        if search(f, d, e, |_| true)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The normal decomposition of `f` whose right component is indecomposable;
/// `None` when `f` is indecomposable. Two such decompositions would mean the
/// uniqueness property fails, which is reported as an error.
pub fn unique_normal_indec_right(f: &MultiPoly) -> Result<Option<Decomposition>, DecompError> {
    let d = match f.degree() {
        Degree::Finite(d) if d >= 2 => d,
        _ => return Err(DecompError::DegreeTooSmall),
    };
    let mut found: Option<Decomposition> = None;
    let mut clash: Option<Decomposition> = None;
    for e in divisors(d) {
        let mut err = None;
        search(f, d, e, |dec| match is_decomposable(&dec.h) {
            Ok(true) => false,
            Ok(false) => {
                if found.is_none() {
                    found = Some(dec);
                    false
                } else {
                    clash = Some(dec);
                    true
                }
            }
            Err(x) => {
                err = Some(x);
                true
            }
        })?;
        if let Some(x) = err {
            return Err(x);
        }
        if let (Some(a), Some(b)) = (&found, &clash) {
            return Err(DecompError::UniquenessViolated(
                format!("({}, {})", a.g, a.h),
                format!("({}, {})", b.g, b.h),
            ));
        }
    }
    Ok(found)
}

/// `P^0` right components and their indecomposability flags, shared by the
/// census engines.
pub(crate) fn right_components(
    field: &Arc<FieldSpec>,
    n: usize,
    k: u32,
) -> Result<Vec<(MultiPoly, bool)>, DecompError> {
    let iter = MonicOriginalIter::new(field.clone(), n, k, 0).ok_or(DecompError::SearchTooLarge)?;
    iter.map(|h| {
        let indec = k == 1 || !is_decomposable(&h)?;
        Ok((h, indec))
    })
    .collect()
}
