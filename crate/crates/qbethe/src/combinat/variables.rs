use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{Rational, ScalarContext};

/// Spectral parameters grouped by type; `values[a][l]` is `t^{a+1}_{l+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct TypedVariables {
    values: Vec<Vec<Rational>>,
}

/// One element of the ordered multiset: its type and its value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Item {
    pub ty: usize,
    pub t: Rational,
}

impl TypedVariables {
    pub fn new(values: Vec<Vec<Rational>>) -> Self {
        TypedVariables { values }
    }

    /// No variables of any of `types` types.
    pub fn empty(types: usize) -> Self {
        TypedVariables { values: vec![Vec::new(); types] }
    }

    /// Seeded generic sample with the given counts, avoiding `forbidden`.
    pub fn sample(ctx: &ScalarContext, counts: &[usize], forbidden: &[Rational], stream: u64) -> Self {
        let total: usize = counts.iter().sum();
        let mut flat = ctx.sample_generic_stream(total, forbidden, stream).into_iter();
        TypedVariables {
            values: counts.iter().map(|&c| flat.by_ref().take(c).collect()).collect(),
        }
    }

    pub fn types(&self) -> usize {
        self.values.len()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.values.iter().map(Vec::len).collect()
    }

    pub fn total(&self) -> usize {
        self.values.iter().map(Vec::len).sum()
    }

    pub fn of_type(&self, a: usize) -> &[Rational] {
        &self.values[a]
    }

    pub fn get(&self, a: usize, l: usize) -> &Rational {
        &self.values[a][l]
    }

    pub fn as_nested(&self) -> &[Vec<Rational>] {
        &self.values
    }

    /// Elements ordered by type, then by index.
    pub fn items(&self) -> Vec<Item> {
        self.values
            .iter()
            .enumerate()
            .flat_map(|(a, ts)| ts.iter().map(move |t| Item { ty: a, t: t.clone() }))
            .collect()
    }

    /// Regroup an ordered item list into typed variables with `types` types.
    pub fn from_items<'a>(types: usize, items: impl IntoIterator<Item = &'a Item>) -> Self {
        let mut values = vec![Vec::new(); types];
        for it in items {
            values[it.ty].push(it.t.clone());
        }
        TypedVariables { values }
    }

    /// Keep the first `counts[a]` variables of each type.
    pub fn prefix(&self, counts: &[usize]) -> Self {
        TypedVariables {
            values: self.values.iter().zip(counts).map(|(v, &c)| v[..c].to_vec()).collect(),
        }
    }

    /// Drop the last type.
    pub fn drop_last_type(&self) -> Self {
        TypedVariables { values: self.values[..self.values.len().saturating_sub(1)].to_vec() }
    }

    /// The variables moved by a type-preserving permutation: the value at
    /// position `sigma[a][l]` of type `a` becomes `t^a_l`.
    pub fn permuted(&self, sigma: &[Vec<usize>]) -> Result<Self> {
        if sigma.len() != self.values.len() {
            return Err(Error::Length("permutation must cover every type".into()));
        }
        let mut values = self.values.clone();
        for (a, s) in sigma.iter().enumerate() {
            if !is_permutation(s, self.values[a].len()) {
                return Err(Error::InvalidParameter(format!("not a permutation of type {a}: {s:?}")));
            }
            for (l, &p) in s.iter().enumerate() {
                values[a][p] = self.values[a][l].clone();
            }
        }
        Ok(TypedVariables { values })
    }

    /// Values with the listed positions of each type taken in the given order.
    pub(crate) fn rearranged(&self, order: &[Vec<usize>]) -> Self {
        TypedVariables {
            values: order
                .iter()
                .zip(&self.values)
                .map(|(o, v)| o.iter().map(|&k| v[k].clone()).collect())
                .collect(),
        }
    }

    /// Nonzero, pairwise distinct, no ratio `q^{+-2}` between any two values.
    pub fn validate(&self, ctx: &ScalarContext) -> Result<()> {
        let flat: Vec<&Rational> = self.values.iter().flatten().collect();
        let q2 = ctx.q().pow(2);
        let q2i = ctx.q().pow(-2);
        for (i, x) in flat.iter().enumerate() {
            if x.is_zero() {
                return Err(Error::Pole("spectral parameter equal to zero".into()));
            }
            for y in &flat[i + 1..] {
                let r = *x / *y;
                if r.is_one() || r == q2 || r == q2i {
                    return Err(Error::Pole(format!("variables {x} and {y} sit on a pole locus")));
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn is_permutation(s: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    s.len() == n && s.iter().all(|&p| p < n && !std::mem::replace(&mut seen[p], true))
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}
