use num_bigint::BigUint;
use serde_json::{json, Map, Value};

use crate::census::{verify, CensusConfig, CensusError};
use crate::formulas::{self, FormulaError, Params, DISPLAY_BITS};

use super::Mode;

pub const CSV_HEADER: [&str; 17] = [
    "n", "d", "q", "l", "special", "m", "case", "dim", "alpha", "beta", "lower", "upper", "beta_star", "d_count",
    "d_sl_count", "i_count", "verdict",
];

/// One sweep row, cells in [`CSV_HEADER`] order.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    cells: Vec<String>,
    log_q_alpha: Option<f64>,
}

impl SweepRow {
    pub fn get(&self, column: &str) -> Option<&str> {
        CSV_HEADER.iter().position(|c| *c == column).map(|i| self.cells[i].as_str())
    }

    pub fn verdict(&self) -> &str {
        &self.cells[16]
    }

    /// False only for a failed inequality.
    pub fn passed(&self) -> bool {
        !self.verdict().starts_with("fail")
    }

    pub fn cells(&self, approx: bool) -> Vec<String> {
        let mut c = self.cells.clone();
        if approx {
            c.push(self.log_q_alpha.map_or(String::new(), |v| format!("{v:.6}")));
        }
        c
    }

    pub fn to_json(&self, approx: bool) -> Value {
        let mut m = Map::new();
        for (k, v) in CSV_HEADER.iter().zip(&self.cells) {
            m.insert(k.to_string(), Value::String(v.clone()));
        }
        if approx {
            m.insert("log_q_alpha".into(), json!(self.log_q_alpha));
        }
        Value::Object(m)
    }
}

fn beta_star_text(p: &Params) -> Result<String, FormulaError> {
    match formulas::beta_star(p) {
        Ok(b) => Ok(b.to_string()),
        Err(FormulaError::PrimeDegree(_)) => Ok("n/a".into()),
        Err(e) => Err(e),
    }
}

/// Every formula quantity for `p` as ordered key/value pairs.
pub fn formula_record(p: &Params) -> Map<String, Value> {
    let mut m = Map::new();
    let mut put = |k: &str, v: Value| {
        m.insert(k.to_string(), v);
    };
    put("n", json!(p.n));
    put("d", json!(p.d));
    put("q", json!(p.q));
    put("l", json!(p.l));
    put("a", json!(p.a));
    put("special", json!(p.special));
    put("m", json!(p.m));
    put("case", json!(p.case.index()));
    let text = |r: Result<String, FormulaError>| match r {
        Ok(s) => Value::String(s),
        Err(e) => Value::String(format!("error: {e}")),
    };
    put("dim", text(formulas::dim_decomposables(p.n, p.d).map(|v| v.to_string())));
    put(
        "dim_sl",
        match formulas::dim_superlinear(p.n, p.d) {
            Ok(Some(v)) => Value::String(v.to_string()),
            Ok(None) => Value::Null,
            Err(e) => Value::String(format!("error: {e}")),
        },
    );
    match formulas::bounds(p) {
        Ok(b) => {
            put("alpha", Value::String(b.alpha.to_string()));
            put("beta", Value::String(b.beta.to_string()));
            put("lower", Value::String(b.lower.to_string()));
            put("upper", Value::String(b.upper.to_string()));
            put("indec_lower", Value::String(b.indec_lower.to_string()));
        }
        Err(e) => put("alpha", Value::String(format!("error: {e}"))),
    }
    put("beta_star", text(beta_star_text(p)));
    if !p.is_prime_degree() {
        match formulas::sl_bounds(p) {
            Ok(s) => {
                put("alpha_sl", Value::String(s.alpha_sl.to_string()));
                put("beta_sl", Value::String(s.beta_sl.to_string()));
                put("lower_sl", Value::String(s.lower.to_string()));
                put("upper_sl", Value::String(s.upper.to_string()));
            }
            Err(e) => put("alpha_sl", Value::String(format!("error: {e}"))),
        }
    }
    if let Ok(t) = formulas::exact_two_prime(p) {
        put("two_prime", Value::String(t.count.to_string()));
        if let Some(b) = t.beta_prime(DISPLAY_BITS) {
            put("beta_prime", Value::String(b.to_string()));
        }
    }
    m
}

fn fill(n: u32, d: u32, q: u64, mode: Mode, cfg: &CensusConfig, cells: &mut [String]) -> Result<Option<f64>, String> {
    let p = Params::new(n, d, Some(q)).map_err(|e| e.to_string())?;
    cells[3] = p.l.to_string();
    cells[4] = p.special.to_string();
    cells[5] = p.m.to_string();
    cells[6] = p.case.index().to_string();
    cells[7] = formulas::dim_decomposables(n, d).map_err(|e| e.to_string())?.to_string();
    if mode == Mode::Dimension {
        return Ok(None);
    }
    let b = formulas::bounds(&p).map_err(|e| e.to_string())?;
    cells[8] = b.alpha.to_string();
    cells[9] = b.beta.to_string();
    cells[10] = b.lower.to_string();
    cells[11] = b.upper.to_string();
    cells[12] = beta_star_text(&p).map_err(|e| e.to_string())?;
    let log = b.alpha.log_q();
    if mode == Mode::Formulas {
        return Ok(log);
    }
    let v = verify(&p, cfg).map_err(|e| match e {
        CensusError::BudgetExceeded { .. } | CensusError::ExponentTooLarge => format!("budget: {e}"),
        e => e.to_string(),
    })?;
    let exact = crate::census::exact_space_size(&p).map_err(|e| e.to_string())?;
    cells[13] = v.d_count.to_string();
    cells[14] = v.d_sl_count.as_ref().map_or(String::new(), BigUint::to_string);
    cells[15] = (exact - &v.d_count).to_string();
    if mode == Mode::Verify {
        let failed: Vec<&str> = v.checks.iter().filter(|c| !c.pass).map(|c| c.name).collect();
        cells[16] = if failed.is_empty() { "pass".into() } else { format!("fail: {}", failed.join(" ")) };
    }
    Ok(log)
}

/// The row for `(n, d, q)`; any error is recorded in the verdict column.
pub fn sweep_row(n: u32, d: u32, q: u64, mode: Mode, cfg: &CensusConfig, approx: bool) -> SweepRow {
    let mut cells = vec![String::new(); CSV_HEADER.len()];
    cells[0] = n.to_string();
    cells[1] = d.to_string();
    cells[2] = q.to_string();
    let log_q_alpha = match fill(n, d, q, mode, cfg, &mut cells) {
        Ok(l) => l.filter(|_| approx),
        Err(e) => {
            cells[16] = format!("error: {e}");
            None
        }
    };
    SweepRow { cells, log_q_alpha }
}
