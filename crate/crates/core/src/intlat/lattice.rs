//! Lattices inside `Z^n`: canonical bases, images, saturation, solving.

use super::normal_form::{hnf, snf};
use super::IntMatrix;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// A sublattice of `Z^ambient_dim`, stored as a canonical Hermite basis.
///
/// The basis columns are linearly independent over the rationals and the
/// matrix is the canonical column Hermite form of any generating set, so two
/// `LatticeBasis` values describe the same lattice iff they compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    ambient_dim: usize,
    basis: IntMatrix,
}

impl LatticeBasis {
    pub fn empty(ambient_dim: usize) -> Self {
        LatticeBasis {
            ambient_dim,
            basis: IntMatrix::zero(ambient_dim, 0),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.cols() == 0
    }

    pub fn basis_matrix(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.basis.col(j)
    }

    /// Integral coordinates of `v` in this basis, when `v` lies in the lattice.
    pub fn coordinates_of(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        solve(&self.basis, v)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates_of(v).is_some()
    }

    /// Pivot row of each basis column (strictly increasing for canonical bases).
    pub fn pivot_rows(&self) -> Vec<usize> {
        (0..self.basis.cols())
            .map(|j| {
                (0..self.basis.rows())
                    .find(|&i| !self.basis.get(i, j).is_zero())
                    .expect("basis columns are nonzero")
            })
            .collect()
    }

    /// The canonical representative of `v` modulo this lattice: entries at
    /// pivot rows are reduced into `[0, pivot)` column by column; rows without
    /// a pivot are untouched.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        let mut out: Vec<BigInt> = v.to_vec();
        for (j, r) in self.pivot_rows().into_iter().enumerate() {
            let q = out[r].div_floor(self.basis.get(r, j));
            if !q.is_zero() {
                for (i, entry) in out.iter_mut().enumerate() {
                    *entry -= &q * self.basis.get(i, j);
                }
            }
        }
        out
    }
}

/// Canonical basis of the column span `A * Z^cols` inside `Z^rows`.
pub fn image_lattice(a: &IntMatrix) -> LatticeBasis {
    let d = hnf(a);
    let nonzero: Vec<usize> = (0..d.h().cols())
        .filter(|&j| (0..d.h().rows()).any(|i| !d.h().get(i, j).is_zero()))
        .collect();
    LatticeBasis {
        ambient_dim: a.rows(),
        basis: d.h().select_cols(&nonzero),
    }
}

/// The saturation `Z^n ∩ span_R(L)`: the largest sublattice of the ambient
/// lattice with the same rational span, containing `L` with finite index.
pub fn saturation(l: &LatticeBasis) -> LatticeBasis {
    let r = l.rank();
    if r == 0 {
        return LatticeBasis::empty(l.ambient_dim());
    }
    // U * B * V = D with all r diagonal entries nonzero, so the rational span
    // is carried to the first r coordinate axes by U; intersecting with the
    // integer lattice there and pulling back gives the first r columns of
    // U^{-1} as generators.
    let d = snf(l.basis_matrix());
    debug_assert_eq!(d.rank(), r, "basis columns must be independent");
    let indices: Vec<usize> = (0..r).collect();
    image_lattice(&d.u_inv().select_cols(&indices))
}

/// Some integral solution of `A x = b`, or `None` when none exists.
///
/// Deterministic: the particular solution comes from the Smith change of
/// basis with all free coordinates set to zero.
pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let d = snf(a);
    let c = d.u().mul_vec(b);
    let mut y = alloc::vec![BigInt::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        let di = if i < d.diag().len() {
            d.diag()[i].clone()
        } else {
            BigInt::zero()
        };
        if di.is_zero() {
            if !ci.is_zero() {
                return None;
            }
        } else {
            if !ci.mod_floor(&di).is_zero() {
                return None;
            }
            if i < y.len() {
                y[i] = ci / &di;
            }
        }
    }
    Some(d.v().mul_vec(&y))
}

/// Inverse of a unimodular matrix, exactly.
pub fn unimodular_inverse(m: &IntMatrix) -> crate::Result<IntMatrix> {
    use num_traits::One;
    let d = snf(m);
    if !d.diag().iter().all(One::is_one) {
        return Err(crate::Error::BadGluing {
            det: m.det().unwrap_or_default(),
        });
    }
    // u * m * v = id, so the inverse is v * u
    Ok(d.v().mul(d.u()))
}

/// Canonical basis of the kernel lattice `{x : A x = 0}` in `Z^cols`.
pub fn kernel_lattice(a: &IntMatrix) -> LatticeBasis {
    let d = snf(a);
    let free: Vec<usize> = (0..a.cols())
        .filter(|&i| i >= d.diag().len() || d.diag()[i].is_zero())
        .collect();
    image_lattice(&d.v().select_cols(&free))
}

/// The canonical representative of `v` modulo the lattice generated by the
/// columns of `relations`.
///
/// Reduces against the canonical Hermite basis of the relation lattice, so
/// two vectors are congruent iff they share a representative; coordinates
/// outside the pivot rows are left as they are.
pub fn canonical_coset_representative(relations: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    assert_eq!(relations.rows(), v.len(), "vector length mismatch");
    image_lattice(relations).reduce(v)
}
