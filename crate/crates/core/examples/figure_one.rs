//! The graph of `u(e) = b(2, d/e) + e - 1` for `d = 10`: values at the
//! divisors and the landmarks `l*`, `s0 = sqrt(d)` and `l0`.

use num_rational::BigRational;
use polydecomp::formulas::{landmarks, u, u_int};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d = 10;
    for e in [2u32, 5, 10] {
        println!("u_(2,{d})({e}) = {}", u_int(2, d, e)?);
    }
    let lm = landmarks(d)?;
    println!("l*  = {}", lm.l_star);
    println!("s0  = {} ~ {:.4}", lm.s_0, lm.s_0.to_f64());
    println!("l0  = {} ~ {:.4}", lm.l_0, lm.l_0.to_f64());
    println!("u(l*) = {}", u(2, d, &lm.l_star)?);

    // a coarse plot of the continuous curve on [1, d]
    println!();
    for step in 2..=20 {
        let e = BigRational::new(step.into(), 2.into());
        let v = u(2, d, &e)?;
        let x: f64 = step as f64 / 2.0;
        let width = (num_traits::ToPrimitive::to_f64(&v).unwrap_or(0.0)).round() as usize;
        println!("{x:>5.1} {:>8} {}", format!("{v}"), "*".repeat(width));
    }
    Ok(())
}
