//! Arithmetic in F_9 and a small linear solve.

use polydecomp::field::{solve_linear, Fe, FieldSpec, Matrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = FieldSpec::with_size(9)?;
    println!("F_{} = F_{}^{}, generator index {}", f.size(), f.characteristic(), f.degree(), f.generator().index());
    let g = f.generator();
    let powers: Vec<usize> = (0..8).map(|i| f.pow(g, i).index()).collect();
    println!("powers of the generator: {powers:?}");
    for a in f.nonzero_elements().take(4) {
        let inv = f.inv(a).expect("nonzero");
        println!("{} * {} = {}", a.index(), inv.index(), f.mul(a, inv).index());
    }
    // x + 2y = 4, 3x + y = 1 over F_9
    let (c1, c2) = ([Fe(1), Fe(3)], [Fe(2), Fe(1)]);
    let m = Matrix::from_columns(&[&c1, &c2])?;
    let sol = solve_linear(&f, &m, &[Fe(4), Fe(1)])?;
    println!("solution: {:?}", sol.map(|v| v.iter().map(|x| x.index()).collect::<Vec<_>>()));
    Ok(())
}
