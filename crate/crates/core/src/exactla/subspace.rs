use alloc::vec::Vec;

use num_traits::Zero;

use super::{QMatrix, Rational};
use crate::{Error, Result};

/// A linear subspace of `Q^n`, stored by its reduced row echelon basis.
///
/// Because the basis is canonical, `==` is equality of subspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSubspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl QSubspace {
    pub fn zero(ambient_dim: usize) -> Self {
        QSubspace { ambient_dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::from_vectors(ambient_dim, &QMatrix::identity(ambient_dim).rows_vec())
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn from_vectors(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient_dim);
        }
        let (r, pivots) = QMatrix::from_rows(ambient_dim, vectors).rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        QSubspace { ambient_dim, basis, pivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Canonical (RREF) basis.
    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// Basis vectors as the rows of a matrix.
    pub fn basis_matrix(&self) -> QMatrix {
        QMatrix::from_rows(self.ambient_dim, &self.basis)
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.ambient_dim);
        // In RREF the coordinate on basis vector i is simply v[pivot_i].
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in residual.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= c * y;
                }
            }
        }
        residual.iter().all(|x| x.is_zero()).then_some(coords)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &QSubspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &QSubspace) -> QSubspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Self::from_vectors(self.ambient_dim, &vs)
    }

    pub fn intersection(&self, other: &QSubspace) -> QSubspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        if self.dim() == 0 || other.dim() == 0 {
            return Self::zero(self.ambient_dim);
        }
        // Solve a·A = b·B; the kernel of [A^T | -B^T] gives the common vectors.
        let a = self.basis_matrix().transpose();
        let b = other.basis_matrix().transpose();
        let k = a.hstack(&b.neg()).kernel_basis();
        let vs: Vec<Vec<Rational>> = k
            .basis()
            .iter()
            .map(|c| a.mul_vec(&c[..self.dim()]))
            .collect();
        Self::from_vectors(self.ambient_dim, &vs)
    }

    /// Image of the subspace under `m` (acting on column vectors).
    pub fn image_under(&self, m: &QMatrix) -> QSubspace {
        assert_eq!(m.cols(), self.ambient_dim);
        let vs: Vec<Vec<Rational>> = self.basis.iter().map(|v| m.mul_vec(v)).collect();
        Self::from_vectors(m.rows(), &vs)
    }

    /// Annihilator in the dual space, in the standard dual coordinates.
    pub fn annihilator(&self) -> QSubspace {
        if self.dim() == 0 {
            return Self::full(self.ambient_dim);
        }
        self.basis_matrix().kernel_basis()
    }
}

impl QMatrix {
    pub(crate) fn rows_vec(&self) -> Vec<Vec<Rational>> {
        (0..self.rows()).map(|i| self.row(i).to_vec()).collect()
    }
}

/// `dim V − dim W`, checking that `W ⊆ V`.
pub fn quotient_dim(v: &QSubspace, w: &QSubspace) -> Result<usize> {
    if v.ambient_dim() != w.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: v.ambient_dim(), found: w.ambient_dim() });
    }
    if !v.contains_subspace(w) {
        return Err(Error::NotASubspace);
    }
    Ok(v.dim() - w.dim())
}
