use super::{Fe, FieldError, FieldSpec};

/// Dense row-major matrix over a [`FieldSpec`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Fe>>) -> Result<Self, FieldError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(FieldError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[&[Fe]]) -> Result<Self, FieldError> {
        let c = cols.len();
        let r = cols.first().map_or(0, |v| v.len());
        if cols.iter().any(|v| v.len() != r) {
            return Err(FieldError::DimensionMismatch("columns of unequal length".into()));
        }
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Fe) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
}

/// `A x`.
pub fn mat_vec(field: &FieldSpec, a: &Matrix, x: &[Fe]) -> Result<Vec<Fe>, FieldError> {
    if x.len() != a.cols {
        return Err(FieldError::DimensionMismatch(format!(
            "matrix has {} columns, vector has length {}",
            a.cols,
            x.len()
        )));
    }
    Ok((0..a.rows)
        .map(|i| {
            a.row(i)
                .iter()
                .zip(x)
                .fold(Fe::ZERO, |acc, (&aij, &xj)| field.add(acc, field.mul(aij, xj)))
        })
        .collect())
}

/// Solves `A x = b` by Gauss-Jordan elimination.
///
/// Returns `Ok(None)` when the system is inconsistent. Free variables are set
/// to zero, so when the columns of `A` are independent the returned vector is
/// the unique solution.
pub fn solve_linear(field: &FieldSpec, a: &Matrix, b: &[Fe]) -> Result<Option<Vec<Fe>>, FieldError> {
    if b.len() != a.rows {
        return Err(FieldError::DimensionMismatch(format!(
            "matrix has {} rows, right-hand side has length {}",
            a.rows,
            b.len()
        )));
    }
    let (rows, cols) = (a.rows, a.cols);
    let width = cols + 1;
    let mut m: Vec<Fe> = Vec::with_capacity(rows * width);
    for i in 0..rows {
        m.extend_from_slice(a.row(i));
        m.push(b[i]);
    }
    let mut pivots = Vec::with_capacity(cols.min(rows));
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i * width + c].is_zero()) else {
            continue;
        };
        if pr != r {
            for j in 0..width {
                m.swap(pr * width + j, r * width + j);
            }
        }
        let inv = field.inv(m[r * width + c]).expect("pivot is nonzero");
        for j in c..width {
            m[r * width + j] = field.mul(m[r * width + j], inv);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = m[i * width + c];
            if factor.is_zero() {
                continue;
            }
            for j in c..width {
                let v = field.mul(factor, m[r * width + j]);
                m[i * width + j] = field.sub(m[i * width + j], v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    // Rows below the pivots must have a zero right-hand side.
    if (r..rows).any(|i| !m[i * width + cols].is_zero()) {
        return Ok(None);
    }
    let mut x = vec![Fe::ZERO; cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i * width + cols];
    }
    Ok(Some(x))
}
