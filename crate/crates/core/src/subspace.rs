//! Subspaces of coordinate space with a unique canonical basis, so that
//! subspace equality is representation equality.

use crate::error::Error;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Reduced row echelon form in place; returns the pivot column of each
/// surviving row. Zero rows are removed.
pub(crate) fn rref(rows: &mut Vec<Vec<Scalar>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].inv().expect("pivot nonzero");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &(p * &f);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Canonical basis of the null space of the linear system given by `rows`
/// (each row a linear functional on `ncols` coordinates).
pub(crate) fn nullspace(rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![Scalar::zero(); ncols];
        v[f] = Scalar::one();
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = -&m[ri][f];
        }
        basis.push(v);
    }
    basis
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Scalar>>, // canonical echelon form, leading-one pivots
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::span(
            ambient,
            (0..ambient).map(|i| {
                let mut v = vec![Scalar::zero(); ambient];
                v[i] = Scalar::one();
                v
            }),
        )
    }

    pub fn span<I: IntoIterator<Item = Vec<Scalar>>>(ambient: usize, vectors: I) -> Self {
        let mut rows: Vec<Vec<Scalar>> = vectors
            .into_iter()
            .inspect(|v| assert_eq!(v.len(), ambient, "vector length mismatch"))
            .collect();
        rref(&mut rows);
        Subspace {
            ambient,
            basis: rows,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, Error> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(Subspace::span(
            self.ambient,
            self.basis.iter().chain(&other.basis).cloned(),
        ))
    }

    /// Intersection via the kernel of the stacked system
    /// `sum a_i u_i - sum b_j v_j = 0`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, Error> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        let k = self.dim();
        let l = other.dim();
        if k == 0 || l == 0 {
            return Ok(Subspace::zero(self.ambient));
        }
        // One equation per ambient coordinate, unknowns (a_1..a_k, b_1..b_l).
        let rows: Vec<Vec<Scalar>> = (0..self.ambient)
            .map(|coord| {
                let mut row = Vec::with_capacity(k + l);
                row.extend(self.basis.iter().map(|u| u[coord].clone()));
                row.extend(other.basis.iter().map(|v| -&v[coord]));
                row
            })
            .collect();
        let ker = nullspace(&rows, k + l);
        let vectors = ker.into_iter().map(|coef| {
            let mut v = vec![Scalar::zero(); self.ambient];
            for (i, u) in self.basis.iter().enumerate() {
                for (c, x) in v.iter_mut().enumerate() {
                    *x = &*x + &(&coef[i] * &u[c]);
                }
            }
            v
        });
        Ok(Subspace::span(self.ambient, vectors))
    }

    /// The subspace `M(self)`.
    pub fn image_under(&self, m: &Matrix) -> Result<Subspace, Error> {
        if m.dim() != self.ambient {
            return Err(Error::AmbientMismatch(m.dim(), self.ambient));
        }
        Ok(Subspace::span(
            self.ambient,
            self.basis.iter().map(|v| m.apply(v)),
        ))
    }

    /// Column space of a matrix.
    pub fn column_space(m: &Matrix) -> Subspace {
        let t = m.transpose();
        Subspace::span(m.dim(), t.rows())
    }

    /// Kernel of a matrix.
    pub fn kernel(m: &Matrix) -> Subspace {
        let basis = nullspace(&m.rows(), m.dim());
        Subspace::span(m.dim(), basis)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        let mut probe = rows;
        rref(&mut probe);
        probe.len() == self.basis.len()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && other.basis.iter().all(|v| self.contains(v))
    }
}
