//! Exact sparse operators, vectors, and auxiliary matrices with operator entries.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Exact vector in a module, compared coordinate-wise.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VectorState(Vec<Rational>);

impl VectorState {
    pub fn zero(dim: usize) -> Self {
        VectorState(vec![Rational::zero(); dim])
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[k] = Rational::one();
        v
    }

    pub fn from_coords(c: Vec<Rational>) -> Self {
        VectorState(c)
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    /// Indices of nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| !self.0[i].is_zero()).collect()
    }

    pub fn dot(&self, other: &VectorState) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Coordinates over one common denominator, for repeated dot products.
    pub fn over_common_denominator(&self) -> CommonDenominator {
        let den = self.0.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let num = self.0.iter().map(|x| x.numer() * (&den / x.denom())).collect();
        CommonDenominator { num, den }
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        VectorState(self.0.iter().map(|x| x * c).collect())
    }

    pub fn add_scaled(&mut self, other: &VectorState, c: &Rational) {
        debug_assert_eq!(self.dim(), other.dim());
        if c.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a += b * c;
            }
        }
    }

    /// Tensor product with `self` as the left leg.
    pub fn kron(&self, other: &VectorState) -> Self {
        let mut out = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.0 {
            for b in &other.0 {
                out.push(a * b);
            }
        }
        VectorState(out)
    }
}

impl fmt::Debug for VectorState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

/// Integer numerators over a shared denominator.
#[derive(Clone, Debug)]
pub struct CommonDenominator {
    num: Vec<BigInt>,
    den: BigInt,
}

impl CommonDenominator {
    pub fn dot(&self, other: &CommonDenominator) -> Rational {
        let mut acc = BigInt::zero();
        for (a, b) in self.num.iter().zip(&other.num) {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        Rational::from_bigints(acc, &self.den * &other.den)
    }
}

/// Square exact matrix stored as sorted sparse rows.
#[derive(Clone, PartialEq, Eq)]
pub struct Operator {
    dim: usize,
    rows: Vec<Vec<(usize, Rational)>>,
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Operator({}x{}, nnz={})", self.dim, self.dim, self.nnz())
    }
}

impl Operator {
    pub fn zero(dim: usize) -> Self {
        Operator { dim, rows: vec![Vec::new(); dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal((0..dim).map(|_| Rational::one()).collect())
    }

    pub fn diagonal(values: Vec<Rational>) -> Self {
        let dim = values.len();
        let rows = values
            .into_iter()
            .enumerate()
            .map(|(i, x)| if x.is_zero() { Vec::new() } else { vec![(i, x)] })
            .collect();
        Operator { dim, rows }
    }

    /// Matrix unit `e_ij`.
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut op = Self::zero(dim);
        op.rows[i].push((j, Rational::one()));
        op
    }

    pub fn from_dense(m: &[Vec<Rational>]) -> Self {
        let dim = m.len();
        let rows = m
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (j, x.clone()))
                    .collect()
            })
            .collect();
        Operator { dim, rows }
    }

    /// Build from rows already sorted by column with no zero entries.
    pub(crate) fn from_sorted_rows(dim: usize, rows: Vec<Vec<(usize, Rational)>>) -> Self {
        debug_assert_eq!(rows.len(), dim);
        Operator { dim, rows }
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut m = vec![vec![Rational::zero(); self.dim]; self.dim];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in r {
                m[i][*j] = x.clone();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn entry(&self, i: usize, j: usize) -> Rational {
        self.rows[i]
            .iter()
            .find(|(c, _)| *c == j)
            .map(|(_, x)| x.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Overwrite one entry (used by fault-injection tests).
    pub fn set_entry(&mut self, i: usize, j: usize, x: Rational) {
        let row = &mut self.rows[i];
        row.retain(|(c, _)| *c != j);
        if !x.is_zero() {
            row.push((j, x));
            row.sort_by_key(|(c, _)| *c);
        }
    }

    pub fn row(&self, i: usize) -> &[(usize, Rational)] {
        &self.rows[i]
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|(j, x)| (*j, x * c)).collect())
            .collect();
        Operator { dim: self.dim, rows }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &Operator, c: &Rational) -> Self {
        assert_eq!(self.dim, other.dim, "operator dimension mismatch");
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| merge_rows(a, b, c))
            .collect();
        Operator { dim: self.dim, rows }
    }

    pub fn add(&self, other: &Operator) -> Self {
        self.add_scaled(other, &Rational::one())
    }

    pub fn sub(&self, other: &Operator) -> Self {
        self.add_scaled(other, &-Rational::one())
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Operator) -> Self {
        assert_eq!(self.dim, other.dim, "operator dimension mismatch");
        let mut acc: Vec<Option<Rational>> = vec![None; self.dim];
        let mut touched: Vec<usize> = Vec::new();
        let rows = self
            .rows
            .iter()
            .map(|r| {
                for (k, a) in r {
                    for (j, b) in &other.rows[*k] {
                        match &mut acc[*j] {
                            Some(x) => *x += a * b,
                            slot @ None => {
                                *slot = Some(a * b);
                                touched.push(*j);
                            }
                        }
                    }
                }
                touched.sort_unstable();
                let out: Vec<(usize, Rational)> = touched
                    .drain(..)
                    .filter_map(|j| acc[j].take().filter(|x| !x.is_zero()).map(|x| (j, x)))
                    .collect();
                out
            })
            .collect();
        Operator { dim: self.dim, rows }
    }

    /// Kronecker product with `self` as the left leg.
    pub fn kron(&self, other: &Operator) -> Self {
        let dim = self.dim * other.dim;
        let mut rows = Vec::with_capacity(dim);
        for ra in &self.rows {
            for rb in &other.rows {
                let mut row = Vec::with_capacity(ra.len() * rb.len());
                for (ja, a) in ra {
                    for (jb, b) in rb {
                        row.push((ja * other.dim + jb, a * b));
                    }
                }
                rows.push(row);
            }
        }
        Operator { dim, rows }
    }

    pub fn apply(&self, v: &VectorState) -> VectorState {
        assert_eq!(self.dim, v.dim(), "vector dimension mismatch");
        let c = v.coords();
        VectorState::from_coords(
            self.rows
                .iter()
                .map(|r| {
                    r.iter()
                        .filter(|(j, _)| !c[*j].is_zero())
                        .map(|(j, x)| x * &c[*j])
                        .sum()
                })
                .collect(),
        )
    }

    /// Row vector times operator, `x^T A`.
    pub fn apply_left(&self, x: &VectorState) -> VectorState {
        assert_eq!(self.dim, x.dim(), "vector dimension mismatch");
        let mut out = vec![Rational::zero(); self.dim];
        for (r, c) in self.rows.iter().zip(x.coords()) {
            if c.is_zero() {
                continue;
            }
            for (j, a) in r {
                out[*j] += a * c;
            }
        }
        VectorState::from_coords(out)
    }

    /// Column `k`, i.e. the image of the basis vector `e_k`.
    pub fn column(&self, k: usize) -> VectorState {
        VectorState::from_coords(self.rows.iter().map(|r| {
            r.iter().find(|(j, _)| *j == k).map(|(_, x)| x.clone()).unwrap_or_else(Rational::zero)
        }).collect())
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.dim;
        let mut a = self.to_dense();
        let mut inv = Operator::identity(n).to_dense();
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !a[r][c].is_zero())
                .ok_or_else(|| Error::Pivot(format!("operator of dim {n} is singular")))?;
            a.swap(c, p);
            inv.swap(c, p);
            let pv = a[c][c].recip();
            for x in a[c].iter_mut().chain(inv[c].iter_mut()) {
                if !x.is_zero() {
                    *x *= &pv;
                }
            }
            for r in 0..n {
                if r == c || a[r][c].is_zero() {
                    continue;
                }
                let f = a[r][c].clone();
                let (src_a, src_i) = (a[c].clone(), inv[c].clone());
                for (x, y) in a[r].iter_mut().zip(&src_a) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
                for (x, y) in inv[r].iter_mut().zip(&src_i) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        Ok(Operator::from_dense(&inv))
    }
}

fn merge_rows(a: &[(usize, Rational)], b: &[(usize, Rational)], c: &Rational) -> Vec<(usize, Rational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, &b[j].1 * c));
            j += 1;
        } else {
            let x = &a[i].1 + &(&b[j].1 * c);
            if !x.is_zero() {
                out.push((a[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

/// `n x n` matrix whose entries are operators on a common space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxMatrix {
    n: usize,
    dim: usize,
    entries: Vec<Operator>,
}

impl AuxMatrix {
    pub fn zero(n: usize, dim: usize) -> Self {
        AuxMatrix { n, dim, entries: vec![Operator::zero(dim); n * n] }
    }

    pub fn identity(n: usize, dim: usize) -> Self {
        let mut m = Self::zero(n, dim);
        for i in 0..n {
            m.set(i, i, Operator::identity(dim));
        }
        m
    }

    pub fn from_fn(n: usize, dim: usize, mut f: impl FnMut(usize, usize) -> Operator) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let e = f(i, j);
                assert_eq!(e.dim(), dim);
                entries.push(e);
            }
        }
        AuxMatrix { n, dim, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Operator {
        &self.entries[i * self.n + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Operator {
        &mut self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, op: Operator) {
        self.entries[i * self.n + j] = op;
    }

    /// `self + c * other`, entry-wise.
    pub fn add_scaled(&self, other: &AuxMatrix, c: &Rational) -> Self {
        AuxMatrix {
            n: self.n,
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add_scaled(b, c))
                .collect(),
        }
    }

    /// Product in the auxiliary space; entries multiply in order.
    pub fn mul(&self, other: &AuxMatrix) -> Self {
        let n = self.n;
        AuxMatrix::from_fn(n, self.dim, |i, j| {
            (0..n).fold(Operator::zero(self.dim), |acc, k| {
                let (a, b) = (self.get(i, k), other.get(k, j));
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    acc.add(&a.mul(b))
                }
            })
        })
    }

    /// Flatten into one operator on `C^n (x) V` (auxiliary index outermost).
    pub fn to_block(&self) -> Operator {
        let (n, d) = (self.n, self.dim);
        let mut rows = Vec::with_capacity(n * d);
        for i in 0..n {
            for r in 0..d {
                let mut row = Vec::new();
                for j in 0..n {
                    for (c, x) in self.get(i, j).row(r) {
                        row.push((j * d + c, x.clone()));
                    }
                }
                rows.push(row);
            }
        }
        Operator { dim: n * d, rows }
    }

    pub fn from_block(n: usize, op: &Operator) -> Self {
        let d = op.dim() / n;
        let mut m = Self::zero(n, d);
        for i in 0..n {
            for r in 0..d {
                for (c, x) in op.row(i * d + r) {
                    let (j, cc) = (c / d, c % d);
                    m.entries[i * n + j].rows[r].push((cc, x.clone()));
                }
            }
        }
        m
    }

    /// Inverse in `Mat_n(End V)`.
    pub fn inverse(&self) -> Result<Self> {
        Ok(Self::from_block(self.n, &self.to_block().inverse()?))
    }
}
