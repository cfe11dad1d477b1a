//! Linear subspaces of rational coordinate space in canonical form.
//!
//! A subspace is stored as a reduced-row-echelon basis, so equal subspaces
//! compare equal structurally and every derived object is deterministic.

use crate::mat::Mat;
use crate::scalar::Scalar;
use num::Zero;

/// A subspace of the rational vector space of the given ambient dimension.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
}

impl Subspace {
    /// The zero subspace.
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Mat::zeros(0, ambient),
        }
    }

    /// The whole ambient space.
    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Mat::identity(ambient),
        }
    }

    /// Span of the rows of `m` inside the space of dimension `ambient`.
    pub fn from_rows(ambient: usize, m: &Mat) -> Self {
        assert_eq!(m.cols(), ambient, "span ambient mismatch");
        let (r, pivots) = m.rref();
        let rows = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            ambient,
            basis: Mat::from_rows(ambient, rows),
        }
    }

    /// Span of a list of vectors.
    pub fn span(ambient: usize, vecs: &[Vec<Scalar>]) -> Self {
        Self::from_rows(ambient, &Mat::from_rows(ambient, vecs.to_vec()))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// The canonical (echelon) basis, one vector per row.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    /// Membership test.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient, "membership ambient mismatch");
        if v.iter().all(Scalar::is_zero) {
            return true;
        }
        let stacked = self
            .basis
            .vstack(&Mat::from_rows(self.ambient, vec![v.to_vec()]));
        stacked.rank() == self.dim()
    }

    /// Containment of subspaces.
    pub fn leq(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient);
        self.basis.vstack(other.basis()).rank() == other.dim()
    }

    /// Sum of subspaces.
    pub fn join(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        Subspace::from_rows(self.ambient, &self.basis.vstack(other.basis()))
    }

    /// Annihilator in the dual space: all covectors vanishing on `self`.
    pub fn annihilator(&self) -> Subspace {
        Subspace {
            ambient: self.ambient,
            basis: canonical_kernel(&self.basis),
        }
    }

    /// Intersection of subspaces.
    pub fn meet(&self, other: &Subspace) -> Subspace {
        self.annihilator()
            .join(&other.annihilator())
            .annihilator()
    }

    /// Image under the linear map `m` (shape `p x ambient`), landing in
    /// dimension `p`.
    pub fn map(&self, m: &Mat) -> Subspace {
        assert_eq!(m.cols(), self.ambient, "map ambient mismatch");
        let rows: Vec<Vec<Scalar>> = (0..self.dim())
            .map(|i| m.mul_vec(self.basis.row(i)))
            .collect();
        Subspace::span(m.rows(), &rows)
    }
}

/// Kernel rows, re-echelonized so the result is canonical.
fn canonical_kernel(m: &Mat) -> Mat {
    let k = m.kernel();
    let (r, pivots) = k.rref();
    let rows = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
    Mat::from_rows(m.cols(), rows)
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} of {}) {:?}", self.dim(), self.ambient, self.basis)
    }
}
