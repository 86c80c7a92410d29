//! Exact census of the decomposables by one or all methods.
//!
//! ```text
//! cargo run --release --example census -- 2 6 2 [enum|brute|rec|all] [budget_log2]
//! ```

use polydecomp::census::{census_bruteforce, census_enumeration, census_recursion, CensusConfig, CensusReport};
use polydecomp::formulas::Params;

fn show(r: &CensusReport) {
    let s = |v: &Option<num_bigint::BigUint>| v.as_ref().map_or("-".to_string(), |x| x.to_string());
    println!(
        "{:<12} #D={} #D^sl={} #I={} ({:.2?}, {} workers)",
        r.method.to_string(),
        s(&r.d_count),
        s(&r.d_sl_count),
        s(&r.i_count),
        r.elapsed,
        r.workers
    );
    for (e, c) in &r.per_divisor_image_sizes {
        println!("    #im gamma_e for e={e}: {c}");
    }
    if let Some(v) = r.uniqueness_violations {
        println!("    uniqueness violations: {v}");
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let num = |i: usize, default: u64| args.get(i).map_or(Ok(default), |s| s.parse::<u64>());
    let (n, d, q) = (num(0, 2)? as u32, num(1, 6)? as u32, num(2, 2)?);
    let method = args.get(3).map_or("all", |s| s.as_str());
    let budget = 1u64 << num(4, 26)?;
    let params = Params::new(n, d, Some(q))?;
    let cfg = CensusConfig::default().with_budget(budget);
    println!("n={n} d={d} q={q}");
    if matches!(method, "enum" | "all") {
        match census_enumeration(&params, false, &cfg) {
            Ok(r) => show(&r),
            Err(e) => println!("enumeration: {e}"),
        }
    }
    if matches!(method, "brute" | "all") {
        match census_bruteforce(&params, &cfg) {
            Ok(r) => show(&r),
            Err(e) => println!("bruteforce: {e}"),
        }
    }
    if matches!(method, "rec" | "all") {
        show(&census_recursion(&params)?);
    }
    Ok(())
}
