//! Dense square matrices over exact rationals. Equality is entrywise exact
//! equality; there is no numeric mode and no tolerance anywhere.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Scalar>>", into = "Vec<Vec<Scalar>>")]
pub struct Matrix {
    dim: usize,
    entries: Vec<Scalar>, // row-major
}

impl Matrix {
    pub fn zero(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Matrix {
            dim,
            entries: vec![Scalar::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Matrix::zero(dim);
        for i in 0..dim {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, Error> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::DimensionMismatch(0, 0));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch(row.len(), dim));
            }
            entries.extend(row);
        }
        Ok(Matrix { dim, entries })
    }

    /// Convenience constructor from integer rows, mostly for tests.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| Scalar::from_int(n)).collect())
                .collect(),
        )
        .expect("square integer rows")
    }

    pub fn diagonal(diag: &[Scalar]) -> Self {
        let mut m = Matrix::zero(diag.len());
        for (i, s) in diag.iter().enumerate() {
            m[(i, i)] = s.clone();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim)
            .map(|i| self.entries[i * self.dim..(i + 1) * self.dim].to_vec())
            .collect()
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        let mut t = Scalar::zero();
        for i in 0..self.dim {
            t = t + &self[(i, i)];
        }
        t
    }

    /// Apply to a coordinate column vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                let mut acc = Scalar::zero();
                for j in 0..self.dim {
                    acc = acc + &(&self[(i, j)] * &v[j]);
                }
                acc
            })
            .collect()
    }

    pub fn checked_add(&self, rhs: &Matrix) -> Result<Matrix, Error> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch(self.dim, rhs.dim));
        }
        Ok(self + rhs)
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix, Error> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch(self.dim, rhs.dim));
        }
        Ok(self * rhs)
    }

    pub fn pow(&self, mut exp: u32) -> Matrix {
        let mut result = Matrix::identity(self.dim);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = &result * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact inverse by Gauss-Jordan elimination with first-found nonzero
    /// pivots. Errors on a singular matrix.
    pub fn inverse(&self) -> Result<Matrix, Error> {
        let n = self.dim;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !a[(r, col)].is_zero())
                .ok_or(Error::SingularMatrix)?;
            if pivot_row != col {
                for j in 0..n {
                    a.entries.swap(col * n + j, pivot_row * n + j);
                    inv.entries.swap(col * n + j, pivot_row * n + j);
                }
            }
            let p = a[(col, col)].inv()?;
            for j in 0..n {
                a[(col, j)] = &a[(col, j)] * &p;
                inv[(col, j)] = &inv[(col, j)] * &p;
            }
            for r in 0..n {
                if r != col && !a[(r, col)].is_zero() {
                    let f = a[(r, col)].clone();
                    for j in 0..n {
                        a[(r, j)] = &a[(r, j)] - &(&f * &a[(col, j)]);
                        inv[(r, j)] = &inv[(r, j)] - &(&f * &inv[(col, j)]);
                    }
                }
            }
        }
        Ok(inv)
    }

    pub fn commutator(&self, rhs: &Matrix) -> Matrix {
        &(self * rhs) - &(rhs * self)
    }

    /// q-commutator `[X, Y]_q = q XY - q^{-1} YX`.
    pub fn q_commutator(&self, rhs: &Matrix, q: &Scalar) -> Matrix {
        let qi = q.inv().expect("nonzero q");
        &(self * rhs).scale(q) - &(rhs * self).scale(&qi)
    }

    /// Monic minimal polynomial, returned as coefficients from the constant
    /// term up (the leading 1 included). Computed as the first linear
    /// dependency among the flattened powers I, X, X^2, ...
    pub fn minimal_polynomial(&self) -> Vec<Scalar> {
        let n = self.dim;
        let m = n * n;
        let mut powers: Vec<Vec<Scalar>> = vec![Matrix::identity(n).entries];
        let mut current = Matrix::identity(n);
        for degree in 1..=m {
            current = &current * self;
            // Solve sum_i c_i X^i = X^degree over the accumulated powers by
            // Gaussian elimination on the m x degree system.
            let mut aug: Vec<Vec<Scalar>> = (0..m)
                .map(|row| {
                    let mut line: Vec<Scalar> = powers.iter().map(|p| p[row].clone()).collect();
                    line.push(current.entries[row].clone());
                    line
                })
                .collect();
            let cols = degree;
            let mut pivot_rows = Vec::new();
            let mut r = 0usize;
            for c in 0..cols {
                if let Some(pr) = (r..m).find(|&i| !aug[i][c].is_zero()) {
                    aug.swap(r, pr);
                    let inv = aug[r][c].inv().expect("nonzero pivot");
                    for x in aug[r].iter_mut() {
                        *x = &*x * &inv;
                    }
                    let pivot_row = aug[r].clone();
                    for (i, line) in aug.iter_mut().enumerate() {
                        if i != r && !line[c].is_zero() {
                            let f = line[c].clone();
                            for (x, p) in line.iter_mut().zip(&pivot_row) {
                                *x = &*x - &(&f * p);
                            }
                        }
                    }
                    pivot_rows.push((r, c));
                    r += 1;
                }
            }
            let consistent = (r..m).all(|i| aug[i][cols].is_zero());
            if consistent {
                let mut coeffs = vec![Scalar::zero(); degree + 1];
                for (row, col) in pivot_rows {
                    coeffs[col] = -aug[row][cols].clone();
                }
                coeffs[degree] = Scalar::one();
                return coeffs;
            }
            powers.push(current.entries.clone());
        }
        unreachable!("every matrix satisfies a polynomial of degree <= dim^2")
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.entries[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.entries[i * self.dim + j]
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        Matrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        Matrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        let n = self.dim;
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let aik = &self[(i, k)];
                if aik.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(aik * b);
                    }
                }
            }
        }
        out
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            dim: self.dim,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }
}

impl TryFrom<Vec<Vec<Scalar>>> for Matrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<Scalar>>) -> Result<Self, Error> {
        Matrix::from_rows(rows)
    }
}

impl From<Matrix> for Vec<Vec<Scalar>> {
    fn from(m: Matrix) -> Self {
        m.rows()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for row in self.rows() {
            let parts: Vec<String> = row.iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", parts.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d).unwrap()
    }

    #[test]
    fn minimal_polynomial_of_diagonal() {
        // K = diag(2, 1/2) has minimal polynomial (x - 2)(x - 1/2) = x^2 - 5/2 x + 1.
        let k = Matrix::from_rows(vec![vec![s(2, 1), s(0, 1)], vec![s(0, 1), s(1, 2)]]).unwrap();
        assert_eq!(k.minimal_polynomial(), vec![s(1, 1), s(-5, 2), s(1, 1)]);
        // A scalar matrix has a degree-one minimal polynomial.
        let half = Matrix::identity(3).scale(&s(1, 2));
        assert_eq!(half.minimal_polynomial(), vec![s(-1, 2), s(1, 1)]);
    }

    #[test]
    fn identity_times_identity() {
        let i = Matrix::identity(3);
        assert_eq!(&i * &i, i);
    }

    #[test]
    fn subtraction_gives_zero() {
        let a = Matrix::from_int_rows(&[&[1, 2], &[3, 4]]);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn w_inverse_example() {
        let w = Matrix::from_int_rows(&[&[1, 0], &[1, -3]]);
        let winv = w.inverse().unwrap();
        let expected =
            Matrix::from_rows(vec![vec![s(1, 1), s(0, 1)], vec![s(1, 3), s(-1, 3)]]).unwrap();
        assert_eq!(winv, expected);
        assert_eq!(&w * &winv, Matrix::identity(2));
    }

    #[test]
    fn singular_inverse_errors() {
        let m = Matrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert!(matches!(m.inverse(), Err(Error::SingularMatrix)));
    }

    #[test]
    fn dimension_mismatch_errors() {
        let a = Matrix::identity(2);
        let b = Matrix::identity(3);
        assert!(a.checked_mul(&b).is_err());
        assert!(a.checked_add(&b).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let m = Matrix::from_rows(vec![vec![s(1, 2), s(0, 1)], vec![s(-3, 1), s(7, 5)]]).unwrap();
        let txt = serde_json::to_string(&m).unwrap();
        assert_eq!(txt, r#"[["1/2","0"],["-3","7/5"]]"#);
        let back: Matrix = serde_json::from_str(&txt).unwrap();
        assert_eq!(back, m);
    }
}
