//! Operator-valued Gauss decomposition `L = (1 + F) K (1 + E)`.
//!
//! The left factor is upper unitriangular and carries `F_{j,i}` at auxiliary
//! position `(i, j)`, `i < j`; the right factor is lower unitriangular with
//! `E_{i,j}` at `(j, i)`. Elimination starts at the bottom-right corner, so
//! the top-left block of each Schur complement is again an L-operator of
//! lower rank.

use super::gens::Sign;
use super::module::Module;
use crate::error::{Error, Result};
use crate::linalg::{AuxMatrix, Operator};
use crate::scalar::Rational;

/// The three Gauss factors of an auxiliary matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussFactors {
    /// Strictly upper part of the left factor.
    pub f: AuxMatrix,
    /// Diagonal coordinates `k_1, ..., k_N`.
    pub k: Vec<Operator>,
    /// Strictly lower part of the right factor.
    pub e: AuxMatrix,
}

impl GaussFactors {
    /// Multiply the factors back together.
    pub fn reconstruct(&self) -> AuxMatrix {
        let n = self.k.len();
        let d = self.k[0].dim();
        let eye = AuxMatrix::identity(n, d);
        let left = eye.add_scaled(&self.f, &Rational::one());
        let right = eye.add_scaled(&self.e, &Rational::one());
        let mid = AuxMatrix::from_fn(n, d, |i, j| if i == j { self.k[i].clone() } else { Operator::zero(d) });
        left.mul(&mid).mul(&right)
    }
}

/// Decompose an auxiliary matrix with invertible successive pivots.
pub fn decompose(l: &AuxMatrix) -> Result<GaussFactors> {
    let n = l.n();
    let d = l.dim();
    let mut a = l.clone();
    let mut f = AuxMatrix::zero(n, d);
    let mut e = AuxMatrix::zero(n, d);
    let mut k = vec![Operator::zero(d); n];
    for m in (0..n).rev() {
        let pivot = a.get(m, m).clone();
        let inv = pivot
            .inverse()
            .map_err(|_| Error::Pivot(format!("Gauss coordinate k_{}", m + 1)))?;
        for i in 0..m {
            f.set(i, m, a.get(i, m).mul(&inv));
            e.set(m, i, inv.mul(a.get(m, i)));
        }
        for i in 0..m {
            for j in 0..m {
                let corr = f.get(i, m).mul(a.get(m, j));
                let updated = a.get(i, j).sub(&corr);
                a.set(i, j, updated);
            }
        }
        k[m] = pivot;
    }
    Ok(GaussFactors { f, k, e })
}

/// Gauss factors of `L^+(u)` on a module.
pub fn gauss_decompose(module: &Module, u: &Rational) -> Result<GaussFactors> {
    decompose(&*module.l_matrix(Sign::Plus, u)?)
}

/// Top-left `(N-1) x (N-1)` block of `L` after eliminating the last row and column.
pub fn schur_top_block(l: &AuxMatrix) -> Result<AuxMatrix> {
    let n = l.n();
    let last = n - 1;
    let inv = l
        .get(last, last)
        .inverse()
        .map_err(|_| Error::Pivot(format!("Gauss coordinate k_{n}")))?;
    let left: Vec<Operator> = (0..last).map(|i| l.get(i, last).mul(&inv)).collect();
    Ok(AuxMatrix::from_fn(last, l.dim(), |i, j| {
        let corr = left[i].mul(l.get(last, j));
        l.get(i, j).sub(&corr)
    }))
}
