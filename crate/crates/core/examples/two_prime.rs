//! The exact count for degrees with two prime factors against the recursion,
//! and the relative error `beta'` against `beta`.

use polydecomp::census::census_recursion;
use polydecomp::formulas::{bounds, exact_two_prime, Params, DISPLAY_BITS};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (n, d, q) in [(2, 4, 2), (2, 6, 2), (2, 6, 3), (2, 9, 2), (3, 6, 2), (2, 15, 2), (2, 25, 2), (3, 35, 5)] {
        let p = Params::new(n, d, Some(q))?;
        let t = exact_two_prime(&p)?;
        let rec = census_recursion(&p)?.d_count.expect("recursion counts #D");
        let beta = bounds(&p)?.beta;
        let bp = t.beta_prime(DISPLAY_BITS).map_or("-".into(), |b| b.to_string());
        let same = t.count.to_biguint(DISPLAY_BITS).as_ref() == Some(&rec);
        println!("n={n} d={d:>2} q={q}: exact={} recursion agrees={same} beta'={bp} beta={beta}", t.count);
    }
    Ok(())
}
