pub mod census;
pub mod cli;
pub mod decomp;
pub mod field;
pub mod formulas;
pub mod poly;
