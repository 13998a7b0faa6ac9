//! Exact scalars and dense exact linear algebra.
//!
//! Everything here works over `BigRational` (always reduced, positive
//! denominator) or `BigInt`. There is no floating point anywhere in the crate.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigRational>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("empty {rows}x{cols} matrix")));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(nrows, ncols, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self::new(rows, cols, entries)
    }

    /// Convenience constructor from small integer literals.
    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &BigRational {
        &self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[BigRational] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    /// Copy of the matrix with an optional row and an optional column removed.
    pub fn without(&self, drop_row: Option<usize>, drop_col: Option<usize>) -> Result<Matrix> {
        if let Some(r) = drop_row {
            check_index(r, self.rows)?;
        }
        if let Some(c) = drop_col {
            check_index(c, self.cols)?;
        }
        let rows = self.rows - usize::from(drop_row.is_some());
        let cols = self.cols - usize::from(drop_col.is_some());
        let entries = (0..self.rows)
            .filter(|&r| Some(r) != drop_row)
            .flat_map(|r| {
                (0..self.cols)
                    .filter(move |&c| Some(c) != drop_col)
                    .map(move |c| self.get(r, c).clone())
            })
            .collect();
        Matrix::new(rows, cols, entries)
    }

    /// Exact product `self * v`.
    pub fn mul_vec(&self, v: &[BigRational]) -> Result<Vec<BigRational>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (c, v) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

fn check_index(index: usize, len: usize) -> Result<()> {
    if index < len {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index, range: format!("0..{len}") })
    }
}

fn require_square(m: &Matrix) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        Err(Error::Dimension(format!("determinant of a {}x{} matrix", m.rows, m.cols)))
    }
}

/// Exact determinant.
///
/// Each row is scaled by the lcm of its denominators and the resulting integer
/// matrix is reduced with fraction-free (Bareiss) elimination, so every
/// intermediate is itself a minor of the scaled matrix.
pub fn det(m: &Matrix) -> Result<BigRational> {
    require_square(m)?;
    let mut scale = BigInt::one();
    let mut work: Vec<Vec<BigInt>> = Vec::with_capacity(m.rows);
    for r in 0..m.rows {
        let row = m.row(r);
        let l = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        work.push(row.iter().map(|v| v.numer() * (&l / v.denom())).collect());
        scale *= l;
    }
    Ok(BigRational::new(bareiss(work), scale))
}

fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Determinant by cofactor expansion along the first row.
///
/// Exponential in the size; kept as an independent cross-check for small
/// matrices (size 4 and below in practice).
pub fn det_cofactor(m: &Matrix) -> Result<BigRational> {
    require_square(m)?;
    if m.rows == 1 {
        return Ok(m.get(0, 0).clone());
    }
    let mut acc = BigRational::zero();
    for c in 0..m.cols {
        let e = m.get(0, c);
        if e.is_zero() {
            continue;
        }
        let sub = det_cofactor(&m.without(Some(0), Some(c))?)?;
        if c % 2 == 0 {
            acc += e * sub;
        } else {
            acc -= e * sub;
        }
    }
    Ok(acc)
}

/// Determinant of `m` with row `drop_row` and column `drop_col` removed.
/// The empty minor of a 1x1 matrix is 1.
pub fn minor(m: &Matrix, drop_row: usize, drop_col: usize) -> Result<BigRational> {
    require_square(m)?;
    check_index(drop_row, m.rows)?;
    check_index(drop_col, m.cols)?;
    if m.rows == 1 {
        return Ok(BigRational::one());
    }
    det(&m.without(Some(drop_row), Some(drop_col))?)
}

/// `x^e` for a small non-negative exponent.
pub fn pow(x: &BigRational, e: usize) -> BigRational {
    num_traits::pow(x.clone(), e)
}

/// The Vandermonde matrix with rows `x_j^t`, `t = 0..len`.
pub fn vandermonde(nodes: &[BigRational]) -> Result<Matrix> {
    let n = nodes.len();
    Matrix::from_fn(n, n, |t, j| pow(&nodes[j], t))
}

/// Polynomial with exact rational coefficients, ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Coefficients `c_0, c_1, ...`; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Exact degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }
}

/// The unique polynomial of degree at most `max_degree` through `nodes`.
///
/// Built from Newton divided differences, then expanded to monomial form.
pub fn interpolate(nodes: &[(BigRational, BigRational)], max_degree: usize) -> Result<RationalPoly> {
    if nodes.len() != max_degree + 1 {
        return Err(Error::Dimension(format!(
            "{} nodes for an interpolant of degree at most {max_degree}",
            nodes.len()
        )));
    }
    for (i, (a, _)) in nodes.iter().enumerate() {
        if nodes[..i].iter().any(|(b, _)| b == a) {
            return Err(Error::DuplicateNode(a.to_string()));
        }
    }
    let xs: Vec<&BigRational> = nodes.iter().map(|(x, _)| x).collect();
    let mut dd: Vec<BigRational> = nodes.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..dd.len() {
        for i in (level..dd.len()).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (xs[i] - xs[i - level]);
        }
    }
    // Horner on the Newton form: p = dd[n] ; p = p*(x - x_i) + dd[i]
    let mut coeffs = vec![dd[dd.len() - 1].clone()];
    for i in (0..dd.len() - 1).rev() {
        let mut next = vec![BigRational::zero(); coeffs.len() + 1];
        for (j, c) in coeffs.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= c * xs[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    Ok(RationalPoly::new(coeffs))
}

/// Non-negative square root of a perfect square, `None` otherwise.
pub fn integer_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}
