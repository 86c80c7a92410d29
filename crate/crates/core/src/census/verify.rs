//! Exact comparison of census counts against the count formulas.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use serde::Serialize;
use serde_json::{json, Value};

use crate::formulas::{self, FormulaError, Params, QNum};

use super::{census_enumeration, census_recursion, CensusConfig, CensusError, CensusReport, Method};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

impl Relation {
    fn holds(self, o: Ordering) -> bool {
        match self {
            Relation::Le => o != Ordering::Greater,
            Relation::Eq => o == Ordering::Equal,
            Relation::Ge => o != Ordering::Less,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        })
    }
}

/// One inequality with both sides rendered exactly.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub lhs: String,
    pub relation: Relation,
    pub rhs: String,
    pub pass: bool,
}

impl Check {
    fn cmp(name: &'static str, lhs: &QNum, relation: Relation, rhs: &QNum) -> Check {
        let pass = relation.holds(lhs.cmp_num(rhs));
        Check { name, lhs: lhs.to_string(), relation, rhs: rhs.to_string(), pass }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.pass { "pass" } else { "FAIL" };
        write!(f, "{mark}  {:<14} {} {} {}", self.name, self.lhs, self.relation, self.rhs)
    }
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub params: Params,
    /// Method that produced `#D`.
    pub method: Method,
    pub d_count: BigUint,
    pub d_sl_count: Option<BigUint>,
    pub checks: Vec<Check>,
}

impl Verdict {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "params": self.params,
            "method": self.method,
            "d_count": self.d_count.to_string(),
            "d_sl_count": self.d_sl_count.as_ref().map(|c| c.to_string()),
            "checks": self.checks,
            "pass": self.all_pass(),
        })
    }
}

fn num(q: u64, v: &BigUint) -> QNum {
    QNum::int(q, BigInt::from(v.clone()))
}

/// Runs the best feasible census and checks every applicable bound.
///
/// `#D` comes from enumeration when it fits the budget and from the
/// recursion otherwise; `#D^sl` from enumeration restricted to `e < d` when
/// that fits.
pub fn verify(params: &Params, cfg: &CensusConfig) -> Result<Verdict, CensusError> {
    let full = match census_enumeration(params, false, cfg) {
        Ok(r) => r,
        Err(CensusError::BudgetExceeded { .. } | CensusError::KeyTooWide { .. }) => census_recursion(params)?,
        Err(e) => return Err(e),
    };
    let sl = match full.d_sl_count.clone() {
        Some(c) => Some(c),
        None if !params.is_prime_degree() => match census_enumeration(params, true, cfg) {
            Ok(r) => r.d_sl_count,
            Err(CensusError::BudgetExceeded { .. } | CensusError::KeyTooWide { .. }) => None,
            Err(e) => return Err(e),
        },
        None => Some(BigUint::default()),
    };
    verify_with(params, &full, sl)
}

/// Checks the counts of `report`, with `#D^sl` supplied separately if known.
pub fn verify_with(params: &Params, report: &CensusReport, d_sl: Option<BigUint>) -> Result<Verdict, CensusError> {
    let q = params.q()?;
    let d_count = report
        .d_count
        .clone()
        .ok_or_else(|| CensusError::InvalidParams("the report has no #D".into()))?;
    let exact = formulas::space_sizes(params.n, params.d, q)?.exact;
    let d = num(q, &d_count);
    let i = exact.sub(&d);
    let b = formulas::bounds(params)?;
    let mut checks = vec![
        Check::cmp("lower", &b.lower, Relation::Le, &d),
        Check::cmp("upper", &d, Relation::Le, &b.upper),
        Check::cmp("indec", &i, Relation::Ge, &b.indec_lower),
    ];
    if params.is_prime_degree() {
        checks.push(Check::cmp("prime_exact", &d, Relation::Eq, &b.alpha));
    } else {
        if let Some(sl) = &d_sl {
            let s = formulas::sl_bounds(params)?;
            let sl = num(q, sl);
            checks.push(Check::cmp("sl_lower", &s.lower, Relation::Le, &sl));
            checks.push(Check::cmp("sl_upper", &sl, Relation::Le, &s.upper));
            let two = QNum::small(q, 2);
            checks.push(Check::cmp("sl_indec", &exact.sub(&sl), Relation::Ge, &exact.sub(&two.mul(&s.alpha_sl))));
            checks.push(Check::cmp("sl_subset", &sl, Relation::Le, &d));
        }
        match formulas::exact_two_prime(params) {
            Ok(t) => checks.push(Check::cmp("two_prime", &d, Relation::Eq, &t.count)),
            Err(FormulaError::NotTwoPrimeFactors(_)) => {}
            Err(e) => return Err(e.into()),
        }
        let star = formulas::beta_star(params)?.mul_num(&b.alpha);
        let dev = d.sub(&b.alpha).abs();
        checks.push(Check {
            name: "beta_star",
            lhs: dev.to_string(),
            relation: Relation::Le,
            rhs: star.to_string(),
            pass: Relation::Le.holds(star.cmp_from(&dev)),
        });
    }
    Ok(Verdict { params: params.clone(), method: report.method, d_count, d_sl_count: d_sl, checks })
}
