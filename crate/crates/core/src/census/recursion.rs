//! `#D` from the uniqueness of the normal decomposition with indecomposable
//! right component: every decomposable `f` is `g(h)` for exactly one such
//! pair, so
//! `#D(n,d) = sum_{1<e|d} #P=(1,e) * #I0(n,d/e)` with
//! `#I0(n,k) = (#P=(n,k) - #D(n,k)) / (q(q-1))` and `#D(n,1) = 0`.
//!
//! The division by `q(q-1)` relies on the affine action `f -> a f + b`
//! permuting the indecomposables freely, one monic original representative
//! per orbit.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

use crate::formulas::binom;

use super::CensusError;

/// Largest exponent of `q` expanded by the recursion.
const MAX_EXPONENT: u64 = 1 << 22;

fn p_exact(n: u32, k: u32, q: u64, memo: &mut BTreeMap<(u32, u32), BigUint>) -> Result<BigUint, CensusError> {
    if let Some(v) = memo.get(&(n, k)) {
        return Ok(v.clone());
    }
    let top = binom(n, k);
    let below = binom(n, k - 1);
    let top_u = u64::try_from(top).ok().filter(|&t| t <= MAX_EXPONENT).ok_or(CensusError::ExponentTooLarge)?;
    let below_u = u64::try_from(below).expect("smaller than top");
    let qb = BigUint::from(q);
    let v = num_traits::pow(qb.clone(), top_u as usize) - num_traits::pow(qb, below_u as usize);
    memo.insert((n, k), v.clone());
    Ok(v)
}

pub(crate) struct RecursionCounts {
    pub d_count: BigUint,
    pub p_exact: BigUint,
}

pub(crate) fn run(n: u32, d: u32, q: u64) -> Result<RecursionCounts, CensusError> {
    let mut memo = BTreeMap::new();
    let mut dcount: BTreeMap<u32, BigUint> = BTreeMap::new();
    dcount.insert(1, BigUint::zero());
    let unit = BigUint::from(q * (q - 1));
    // every divisor of d, ascending, so smaller degrees are ready first
    let divs: Vec<u32> = (1..=d).filter(|k| d % k == 0).collect();
    for &k in divs.iter().skip(1) {
        let mut total = BigUint::zero();
        for e in (2..=k).filter(|e| k % e == 0) {
            let r = k / e;
            let pr = p_exact(n, r, q, &mut memo)?;
            let (i0, rem) = (pr - &dcount[&r]).div_rem(&unit);
            debug_assert!(rem.is_zero(), "unit action is free");
            total += p_exact(1, e, q, &mut memo)? * i0;
        }
        dcount.insert(k, total);
    }
    Ok(RecursionCounts { d_count: dcount.remove(&d).expect("computed"), p_exact: p_exact(n, d, q, &mut memo)? })
}

/// `#I0(n, k)` from the recursion.
pub(crate) fn indec_monic_original(n: u32, k: u32, q: u64) -> Result<BigUint, CensusError> {
    if k == 1 {
        let mut memo = BTreeMap::new();
        return Ok(p_exact(n, 1, q, &mut memo)? / BigUint::from(q * (q - 1)));
    }
    let r = run(n, k, q)?;
    Ok((r.p_exact - r.d_count) / BigUint::from(q * (q - 1)))
}
