//! Every formula quantity for a few instances, including a special degree
//! where the left component carries the dimension.

use polydecomp::formulas::{
    beta_star, bounds, dim_decomposables, dim_superlinear, exact_two_prime, sl_bounds, Params,
};

fn show(n: u32, d: u32, q: u64) -> Result<(), Box<dyn std::error::Error>> {
    let p = Params::new(n, d, Some(q))?;
    let b = bounds(&p)?;
    println!("n={n} d={d} q={q}: l={} special={} m={} case={}", p.l, p.special, p.m, p.case.index());
    println!("  dim = {}, dim^sl = {:?}", dim_decomposables(n, d)?, dim_superlinear(n, d)?.map(|v| v.to_string()));
    println!("  alpha = {}, beta = {}", b.alpha, b.beta);
    println!("  {} <= #D <= {}", b.lower, b.upper);
    if !p.is_prime_degree() {
        println!("  beta* = {}", beta_star(&p)?);
        let s = sl_bounds(&p)?;
        println!("  alpha^sl = {}, beta^sl = {}", s.alpha_sl, s.beta_sl);
    }
    if let Ok(t) = exact_two_prime(&p) {
        println!("  exact #D = {}", t.count);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    show(2, 6, 2)?;
    show(2, 7, 2)?;
    show(2, 25, 2)?;
    show(2, 143, 2)?;
    show(8, 500, 3)?;
    Ok(())
}
