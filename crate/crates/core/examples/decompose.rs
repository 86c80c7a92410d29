//! Compose, normalize and decompose bivariate polynomials.
//!
//! ```text
//! cargo run --example decompose -- 2 "x1^4 + x2^4"
//! ```

use std::sync::Arc;

use polydecomp::decomp::{decompose_with_left_degree, is_decomposable, normalize, unique_normal_indec_right};
use polydecomp::field::FieldSpec;
use polydecomp::poly::{compose, MultiPoly, UniPoly};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let q: u64 = args.first().map_or(Ok(5), |s| s.parse())?;
    let field = Arc::new(FieldSpec::with_size(q)?);

    if let Some(text) = args.get(1) {
        let f = MultiPoly::parse(text, field.clone(), 2, 32)?;
        let Some(deg) = f.degree().finite() else { return Err("zero polynomial".into()) };
        let f = f.with_cap(deg)?;
        println!("f = {}  (degree {deg}, encoding {})", f.render(), hex::encode(f.encode()));
        for e in (2..=deg).filter(|e| deg % e == 0) {
            for dec in decompose_with_left_degree(&f, e)? {
                println!("  e={e}: g = {}, h = {}", dec.g, dec.h.render());
            }
        }
        println!("decomposable: {}", is_decomposable(&f)?);
        return Ok(());
    }

    // (2 x1 + 1)^2 over F_5, then its normal form
    let g = UniPoly::monomial(field.clone(), 2);
    let h = MultiPoly::parse("2*x1 + 1", field.clone(), 2, 1)?;
    let f = compose(&g, &h, 2)?;
    println!("g = {g}, h = {}, g(h) = {}", h.render(), f.render());
    let n = normalize(&g, &h)?;
    println!("normal: g = {}, h = {}", n.g, n.h.render());

    // x1^4 + x2^4 over F_2 decomposes with left degree 2 and 4
    let f2 = Arc::new(FieldSpec::with_size(2)?);
    let f = MultiPoly::parse("x1^4 + x2^4", f2.clone(), 2, 4)?;
    for e in [2, 4] {
        for dec in decompose_with_left_degree(&f, e)? {
            println!("x1^4 + x2^4 = ({})({})", dec.g, dec.h.render());
        }
    }
    if let Some(dec) = unique_normal_indec_right(&f)? {
        println!("indecomposable right component: {}", dec.h.render());
    }
    Ok(())
}
