//! Dense integer matrices with arbitrary-precision entries.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Result};

/// Row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// Incidence matrices are plain integer matrices with non-negative entries.
pub type IncidenceMatrix = IntMatrix;

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. Panics on ragged input.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flat_map(|row| row.iter().map(|&x| x.into())).collect(),
        }
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

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|x| !x.is_negative())
    }

    pub fn is_positive(&self) -> bool {
        self.data.iter().all(|x| x.is_positive())
    }

    pub fn column_sums(&self) -> Vec<BigInt> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j)).sum())
            .collect()
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return invalid(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            ));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &IntMatrix, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Result<IntMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return invalid(format!(
                "shape mismatch {}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            ));
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn checked_add(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn checked_sub(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(rhs, |a, b| a - b)
    }

    /// `self^k` by repeated squaring; `k = 0` gives the identity.
    pub fn pow(&self, mut k: u32) -> Result<IntMatrix> {
        if !self.is_square() {
            return invalid("matrix power of a non-square matrix");
        }
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Zero/non-zero pattern as booleans.
    pub fn support(&self) -> BoolMatrix {
        BoolMatrix {
            n: self.rows,
            cols: self.cols,
            bits: self.data.iter().map(|x| !x.is_zero()).collect(),
        }
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("matrix shapes must agree")
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_add(rhs).expect("matrix shapes must agree")
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_sub(rhs).expect("matrix shapes must agree")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Boolean matrix over the (or, and) semiring; used for primitivity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoolMatrix {
    n: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl BoolMatrix {
    pub fn all_true(&self) -> bool {
        self.bits.iter().all(|&b| b)
    }

    pub fn mul(&self, rhs: &BoolMatrix) -> BoolMatrix {
        assert_eq!(self.cols, rhs.n);
        let mut bits = vec![false; self.n * rhs.cols];
        for i in 0..self.n {
            for k in 0..self.cols {
                if !self.bits[i * self.cols + k] {
                    continue;
                }
                for j in 0..rhs.cols {
                    if rhs.bits[k * rhs.cols + j] {
                        bits[i * rhs.cols + j] = true;
                    }
                }
            }
        }
        BoolMatrix {
            n: self.n,
            cols: rhs.cols,
            bits,
        }
    }
}

/// Result of a primitivity test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Primitivity {
    pub primitive: bool,
    /// Least `k` with `M^k > 0` entrywise, when primitive.
    pub exponent: Option<u32>,
}

/// Decides primitivity of a non-negative square matrix. The search over
/// powers stops at the Wielandt bound `n^2 - 2n + 2`, which is exact.
pub fn is_primitive(m: &IntMatrix) -> Result<Primitivity> {
    if !m.is_square() {
        return invalid(format!("primitivity of a non-square {}x{} matrix", m.rows, m.cols));
    }
    if !m.is_nonnegative() {
        return invalid("primitivity requires a non-negative matrix");
    }
    let n = m.rows;
    if n == 0 {
        return invalid("primitivity of an empty matrix");
    }
    let bound = (n * n - 2 * n + 2) as u32;
    let base = m.support();
    let mut power = base.clone();
    for k in 1..=bound {
        if power.all_true() {
            return Ok(Primitivity {
                primitive: true,
                exponent: Some(k),
            });
        }
        power = power.mul(&base);
    }
    Ok(Primitivity {
        primitive: false,
        exponent: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_square() {
        let m = IntMatrix::from_rows(&[vec![1, 1], vec![1, 0]]);
        assert_eq!(m.pow(2).unwrap(), IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]));
        assert_eq!(m.pow(0).unwrap(), IntMatrix::identity(2));
    }

    #[test]
    fn primitivity_examples() {
        let fib = IntMatrix::from_rows(&[vec![1, 1], vec![1, 0]]);
        assert_eq!(
            is_primitive(&fib).unwrap(),
            Primitivity { primitive: true, exponent: Some(2) }
        );
        assert!(!is_primitive(&IntMatrix::identity(2)).unwrap().primitive);
        let sigma = IntMatrix::from_rows(&[vec![2, 1, 1], vec![2, 0, 2], vec![0, 3, 1]]);
        assert!(is_primitive(&sigma).unwrap().primitive);
        assert!(is_primitive(&IntMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn wielandt_matrix_needs_full_bound() {
        // Wielandt's extremal matrix attains n^2 - 2n + 2.
        let n = 4;
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n - 1 {
            m.set(i, i + 1, BigInt::one());
        }
        m.set(n - 1, 0, BigInt::one());
        m.set(n - 1, 1, BigInt::one());
        let p = is_primitive(&m).unwrap();
        assert_eq!(p.exponent, Some((n * n - 2 * n + 2) as u32));
    }
}
