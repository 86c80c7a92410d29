//! Exact counts of the decomposables `D`, the superlinearly decomposables
//! `D^sl` and the indecomposables `I` over a finite field, by three
//! independent methods:
//!
//! * enumeration: compose every normal pair and deduplicate the images;
//! * bruteforce: test every `f` of degree exactly `d`;
//! * recursion: count through the unique normal decomposition with
//!   indecomposable right component.

mod bruteforce;
mod enumeration;
mod pack;
mod recursion;
mod verify;

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::decomp::DecompError;
use crate::field::{FieldError, FieldSpec};
use crate::formulas::{FormulaError, Params};
use crate::poly::{MonicOriginalIter, PolyError, UnivariateExactIter};

pub use verify::{verify, verify_with, Check, Relation, Verdict};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("budget exceeded: {required} elements required, budget is {budget}")]
    BudgetExceeded { required: BigUint, budget: u64 },
    #[error("{coefficients} coefficients do not fit a packed key")]
    KeyTooWide { coefficients: usize },
    #[error("worker pool: {0}")]
    Workers(String),
    #[error("exponent too large for the exact recursion")]
    ExponentTooLarge,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

pub const DEFAULT_BUDGET: u64 = 1 << 26;

#[derive(Clone, Debug)]
pub struct CensusConfig {
    pub workers: usize,
    /// Largest number of elements a method may touch.
    pub budget: u64,
}

impl Default for CensusConfig {
    fn default() -> Self {
        let workers = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
        CensusConfig { workers, budget: DEFAULT_BUDGET }
    }
}

impl CensusConfig {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Enumeration,
    Bruteforce,
    Recursion,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Enumeration => "enumeration",
            Method::Bruteforce => "bruteforce",
            Method::Recursion => "recursion",
        })
    }
}

/// Counts from one method. A count a method does not produce is `None`.
#[derive(Clone, Debug)]
pub struct CensusReport {
    pub params: Params,
    pub method: Method,
    pub d_count: Option<BigUint>,
    pub d_sl_count: Option<BigUint>,
    pub i_count: Option<BigUint>,
    /// `#im gamma_(n,d,e)` for each divisor `e`; enumeration only.
    pub per_divisor_image_sizes: BTreeMap<u32, BigUint>,
    /// `f` with a decomposition but not exactly one normal decomposition with
    /// indecomposable right component; bruteforce only.
    pub uniqueness_violations: Option<u64>,
    pub elapsed: Duration,
    pub workers: usize,
}

impl CensusReport {
    /// True if every count field agrees with `other` where both have it.
    pub fn counts_agree(&self, other: &CensusReport) -> bool {
        fn eq(a: &Option<BigUint>, b: &Option<BigUint>) -> bool {
            match (a, b) {
                (Some(x), Some(y)) => x == y,
                _ => true,
            }
        }
        eq(&self.d_count, &other.d_count) && eq(&self.d_sl_count, &other.d_sl_count) && eq(&self.i_count, &other.i_count)
    }

    pub fn to_json(&self) -> Value {
        let s = |v: &Option<BigUint>| v.as_ref().map(|x| x.to_string());
        json!({
            "params": self.params,
            "method": self.method,
            "d_count": s(&self.d_count),
            "d_sl_count": s(&self.d_sl_count),
            "i_count": s(&self.i_count),
            "per_divisor_image_sizes": self
                .per_divisor_image_sizes
                .iter()
                .map(|(e, c)| (e.to_string(), Value::String(c.to_string())))
                .collect::<serde_json::Map<_, _>>(),
            "uniqueness_violations": self.uniqueness_violations,
            "elapsed_secs": self.elapsed.as_secs_f64(),
            "workers": self.workers,
        })
    }
}

fn field_of(params: &Params) -> Result<Arc<FieldSpec>, CensusError> {
    Ok(Arc::new(FieldSpec::with_size(params.q()?)?))
}

fn check_budget(required: BigUint, budget: u64) -> Result<(), CensusError> {
    if required > BigUint::from(budget) {
        return Err(CensusError::BudgetExceeded { required, budget });
    }
    Ok(())
}

fn need_bivariate(params: &Params) -> Result<(), CensusError> {
    if params.n < 2 {
        return Err(CensusError::InvalidParams("the census needs n >= 2".into()));
    }
    Ok(())
}

/// The monic original polynomials of degree exactly `k`.
pub fn enumerate_p0(field: Arc<FieldSpec>, n: usize, k: u32, budget: u64) -> Result<MonicOriginalIter, CensusError> {
    if k == 0 {
        return Err(CensusError::InvalidParams("k must be at least 1".into()));
    }
    check_budget(MonicOriginalIter::count(field.size(), n, k), budget)?;
    Ok(MonicOriginalIter::new(field, n, k, 0).expect("within budget"))
}

/// The univariates of degree exactly `e`.
pub fn enumerate_puni_eq(field: Arc<FieldSpec>, e: u32, budget: u64) -> Result<UnivariateExactIter, CensusError> {
    check_budget(UnivariateExactIter::count(field.size(), e), budget)?;
    Ok(UnivariateExactIter::new(field, e, 0).expect("within budget"))
}

/// `sum_e #P=(1,e) * #P0(n,d/e)` over the given divisors.
pub fn enumeration_size(params: &Params, superlinear_only: bool) -> Result<BigUint, CensusError> {
    let q = params.q()? as u32;
    Ok(divisors(params.d, superlinear_only)
        .into_iter()
        .map(|e| UnivariateExactIter::count(q, e) * MonicOriginalIter::count(q, params.n as usize, params.d / e))
        .sum())
}

fn divisors(d: u32, superlinear_only: bool) -> Vec<u32> {
    (2..=d).filter(|e| d % e == 0 && !(superlinear_only && *e == d)).collect()
}

/// `#P=` for the parameters.
pub fn exact_space_size(params: &Params) -> Result<BigUint, CensusError> {
    let q = params.q()?;
    let f = |k: u32| -> Result<BigUint, CensusError> {
        let e = u32::try_from(crate::formulas::binom(params.n, k)).map_err(|_| CensusError::ExponentTooLarge)?;
        Ok(num_traits::pow(BigUint::from(q), e as usize))
    };
    Ok(f(params.d)? - f(params.d - 1)?)
}

/// Image sizes of the composition maps and their union.
pub fn census_enumeration(params: &Params, superlinear_only: bool, cfg: &CensusConfig) -> Result<CensusReport, CensusError> {
    need_bivariate(params)?;
    check_budget(enumeration_size(params, superlinear_only)?, cfg.budget)?;
    let start = Instant::now();
    let field = field_of(params)?;
    let divs = divisors(params.d, superlinear_only);
    let counts = enumeration::run(&field, params.n as usize, params.d, &divs, !superlinear_only, cfg.workers)?;
    let d_count = counts.union_all.map(BigUint::from);
    let i_count = match &d_count {
        Some(c) => Some(exact_space_size(params)? - c),
        None => None,
    };
    Ok(CensusReport {
        params: params.clone(),
        method: Method::Enumeration,
        d_count,
        d_sl_count: Some(BigUint::from(counts.union_sl)),
        i_count,
        per_divisor_image_sizes: counts.per_divisor.into_iter().map(|(e, c)| (e, BigUint::from(c))).collect(),
        uniqueness_violations: None,
        elapsed: start.elapsed(),
        workers: cfg.workers,
    })
}

/// Tests every `f` of degree exactly `d`.
pub fn census_bruteforce(params: &Params, cfg: &CensusConfig) -> Result<CensusReport, CensusError> {
    need_bivariate(params)?;
    check_budget(exact_space_size(params)?, cfg.budget)?;
    let start = Instant::now();
    let field = field_of(params)?;
    let c = bruteforce::run(&field, params.n as usize, params.d, cfg.workers)?;
    Ok(CensusReport {
        params: params.clone(),
        method: Method::Bruteforce,
        d_count: Some(c.decomposable.into()),
        d_sl_count: Some(c.superlinear.into()),
        i_count: Some(c.indecomposable.into()),
        per_divisor_image_sizes: BTreeMap::new(),
        uniqueness_violations: Some(c.uniqueness_violations + c.orphans),
        elapsed: start.elapsed(),
        workers: cfg.workers,
    })
}

/// `#D` and `#I` from the recursion over divisors; no `#D^sl`.
pub fn census_recursion(params: &Params) -> Result<CensusReport, CensusError> {
    need_bivariate(params)?;
    let start = Instant::now();
    let r = recursion::run(params.n, params.d, params.q()?)?;
    Ok(CensusReport {
        params: params.clone(),
        method: Method::Recursion,
        i_count: Some(&r.p_exact - &r.d_count),
        d_count: Some(r.d_count),
        d_sl_count: None,
        per_divisor_image_sizes: BTreeMap::new(),
        uniqueness_violations: None,
        elapsed: start.elapsed(),
        workers: 1,
    })
}

/// `#I0(n,k)`, the indecomposable monic original polynomials of degree `k`.
pub fn indec_monic_original_count(n: u32, k: u32, q: u64) -> Result<BigUint, CensusError> {
    if n < 1 || k < 1 {
        return Err(CensusError::InvalidParams("n and k must be at least 1".into()));
    }
    recursion::indec_monic_original(n, k, q)
}

/// `#I0(n,k)` by testing every monic original polynomial.
pub fn indec_monic_original_count_enumerated(n: u32, k: u32, q: u64, budget: u64) -> Result<BigUint, CensusError> {
    let field = Arc::new(FieldSpec::with_size(q)?);
    check_budget(MonicOriginalIter::count(field.size(), n as usize, k), budget)?;
    let comps = crate::decomp::right_components(&field, n as usize, k)?;
    Ok(BigUint::from(comps.iter().filter(|(_, indec)| *indec).count()))
}

#[cfg(test)]
mod tests;
