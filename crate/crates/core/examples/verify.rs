//! Census counts checked against every applicable bound.
//!
//! ```text
//! cargo run --release --example verify -- 2 6 2
//! ```

use polydecomp::census::{verify, CensusConfig};
use polydecomp::formulas::Params;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u64> = std::env::args().skip(1).map(|s| s.parse()).collect::<Result<_, _>>()?;
    let instances: Vec<(u32, u32, u64)> = match args.as_slice() {
        [n, d, q] => vec![(*n as u32, *d as u32, *q)],
        _ => vec![(2, 4, 2), (2, 5, 3), (2, 6, 2), (2, 9, 2), (3, 4, 2)],
    };
    for (n, d, q) in instances {
        let v = verify(&Params::new(n, d, Some(q))?, &CensusConfig::default())?;
        println!("n={n} d={d} q={q}: #D={} by {}", v.d_count, v.method);
        for c in &v.checks {
            println!("  {c}");
        }
    }
    Ok(())
}
