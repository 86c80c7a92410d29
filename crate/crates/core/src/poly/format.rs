//! Byte and text formats.
//!
//! Bytes: the rank-ordered coefficient indices, one byte each when `q <= 256`
//! and two big-endian bytes each otherwise.
//!
//! Text: terms `c*x1^a*x2^b` joined by ` + ` in descending rank order. The
//! coefficient is the canonical element index and is omitted when it is 1.

use std::sync::Arc;

use thiserror::Error;

use crate::field::{Fe, FieldSpec};

use super::monomial::rank_unchecked;
use super::{Monomial, MultiPoly, PolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

fn perr(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError { pos, msg: msg.into() }
}

fn bytes_per_coeff(field: &FieldSpec) -> usize {
    if field.size() <= 256 {
        1
    } else {
        2
    }
}

impl MultiPoly {
    pub fn encode(&self) -> Vec<u8> {
        if bytes_per_coeff(self.field()) == 1 {
            self.coeffs().iter().map(|c| c.0 as u8).collect()
        } else {
            self.coeffs().iter().flat_map(|c| c.0.to_be_bytes()).collect()
        }
    }

    pub fn decode(bytes: &[u8], field: Arc<FieldSpec>, n: usize, cap: u32) -> Result<Self, PolyError> {
        let coeffs: Vec<Fe> = if bytes_per_coeff(&field) == 1 {
            bytes.iter().map(|&b| Fe(b as u16)).collect()
        } else {
            if bytes.len() % 2 != 0 {
                return Err(PolyError::Decode("odd byte count for two-byte coefficients".into()));
            }
            bytes.chunks_exact(2).map(|c| Fe(u16::from_be_bytes([c[0], c[1]]))).collect()
        };
        MultiPoly::from_coeffs(field, n, cap, coeffs)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (r, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !out.is_empty() {
                out.push_str(" + ");
            }
            let m = super::monomial::unrank_unchecked(r, self.nvars());
            match (r, c.0) {
                (0, v) => out.push_str(&v.to_string()),
                (_, 1) => out.push_str(&m.to_string()),
                (_, v) => out.push_str(&format!("{v}*{m}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Inverse of [`MultiPoly::render`]. Accepts terms in any order; repeated
    /// monomials are added.
    pub fn parse(text: &str, field: Arc<FieldSpec>, n: usize, cap: u32) -> Result<Self, PolyError> {
        let mut p = MultiPoly::zero(field.clone(), n, cap)?;
        let mut pos = 0;
        for term in text.split('+') {
            let start = pos + (term.len() - term.trim_start().len());
            pos += term.len() + 1;
            let term = term.trim();
            if term.is_empty() {
                return Err(perr(start, "empty term").into());
            }
            let (c, m) = parse_term(term, start, &field, n)?;
            if m.degree() > cap {
                return Err(perr(start, format!("degree {} exceeds cap {cap}", m.degree())).into());
            }
            let r = rank_unchecked(m.exponents());
            let coeffs = p.coeffs_mut();
            coeffs[r] = field.add(coeffs[r], c);
        }
        Ok(p)
    }
}

fn parse_term(term: &str, start: usize, field: &FieldSpec, n: usize) -> Result<(Fe, Monomial), ParseError> {
    let mut coeff = Fe::ONE;
    let mut exps = vec![0u32; n];
    let mut off = start;
    for (i, factor) in term.split('*').enumerate() {
        let fstart = off + (factor.len() - factor.trim_start().len());
        off += factor.len() + 1;
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(perr(fstart, "empty factor"));
        }
        if factor.as_bytes()[0].is_ascii_digit() {
            if i != 0 {
                return Err(perr(fstart, "coefficient must come first"));
            }
            let v: u64 = factor.parse().map_err(|_| perr(fstart, format!("bad coefficient {factor:?}")))?;
            if v >= field.size() as u64 {
                return Err(perr(fstart, format!("coefficient {v} is not an element index below {}", field.size())));
            }
            coeff = Fe(v as u16);
            continue;
        }
        let rest = factor
            .strip_prefix('x')
            .ok_or_else(|| perr(fstart, format!("expected variable, found {factor:?}")))?;
        let (var, exp) = match rest.split_once('^') {
            Some((v, e)) => (v, e.trim()),
            None => (rest, "1"),
        };
        let idx: usize = var.trim().parse().map_err(|_| perr(fstart, format!("bad variable {factor:?}")))?;
        if idx == 0 || idx > n {
            return Err(perr(fstart, format!("variable x{idx} outside x1..x{n}")));
        }
        let e: u32 = exp.parse().map_err(|_| perr(fstart, format!("bad exponent in {factor:?}")))?;
        exps[idx - 1] += e;
    }
    Ok((coeff, Monomial::new(exps)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_encodes_to_zero_bytes() {
        let f = Arc::new(FieldSpec::new(2, 1).unwrap());
        let z = MultiPoly::zero(f, 2, 3).unwrap();
        assert_eq!(z.encode(), vec![0u8; 10]);
        assert_eq!(z.render(), "0");
    }

    #[test]
    fn render_descending() {
        let f = Arc::new(FieldSpec::new(2, 1).unwrap());
        let p = MultiPoly::parse("x2^2 + x1^2 + x1*x2", f, 2, 2).unwrap();
        assert_eq!(p.render(), "x1^2 + x1*x2 + x2^2");
    }

    #[test]
    fn parse_errors_carry_position() {
        let f = Arc::new(FieldSpec::new(3, 1).unwrap());
        let e = MultiPoly::parse("x1 + y2", f.clone(), 2, 2).unwrap_err();
        assert_eq!(e, PolyError::Parse(ParseError { pos: 5, msg: "expected variable, found \"y2\"".into() }));
        assert!(matches!(MultiPoly::parse("x1^3", f.clone(), 2, 2), Err(PolyError::Parse(_))));
        assert!(matches!(MultiPoly::parse("5*x1", f.clone(), 2, 2), Err(PolyError::Parse(_))));
        assert!(matches!(MultiPoly::parse("x3", f, 2, 2), Err(PolyError::Parse(_))));
    }

    #[test]
    fn two_byte_round_trip() {
        let f = Arc::new(FieldSpec::new(257, 1).unwrap());
        let p = MultiPoly::parse("256*x1*x2 + 3", f.clone(), 2, 2).unwrap();
        assert_eq!(MultiPoly::decode(&p.encode(), f, 2, 2).unwrap(), p);
    }
}
