use serde::Serialize;

use crate::error::{Error, Result};

/// Triangular matrix `s^b_a`, `1 <= a <= b <= K`, with non-decreasing rows.
///
/// Accessors take the 1-based `(b, a)` of the combinatorial formulas, and
/// `a = 0` reads as the convention `s^b_0 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct AdmissibleMatrix {
    rows: Vec<Vec<usize>>,
}

impl AdmissibleMatrix {
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        for (b, r) in rows.iter().enumerate() {
            if r.len() != b + 1 {
                return Err(Error::Length(format!("row {} has {} entries", b + 1, r.len())));
            }
            if r.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::Admissibility(format!("row {} decreases: {r:?}", b + 1)));
            }
        }
        Ok(AdmissibleMatrix { rows })
    }

    /// Number of rows `K = N - 1`.
    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn s(&self, b: usize, a: usize) -> usize {
        if a == 0 {
            0
        } else {
            self.rows[b - 1][a - 1]
        }
    }

    /// Row `b` (1-based), entries `s^b_1..s^b_b`.
    pub fn row(&self, b: usize) -> &[usize] {
        &self.rows[b - 1]
    }

    pub fn row_major(&self) -> Vec<usize> {
        self.rows.concat()
    }

    /// Column sums `sum_{b >= a} s^b_a`.
    pub fn column_sums(&self) -> Vec<usize> {
        let k = self.k();
        (1..=k).map(|a| (a..=k).map(|b| self.s(b, a)).sum()).collect()
    }

    /// `p-tilde^b_a = s^a_a + ... + s^{b-1}_a` (1-based, `a <= b <= K + 1`).
    pub fn p_tilde(&self, a: usize, b: usize) -> Result<usize> {
        if a == 0 || a > b || b > self.k() + 1 {
            return Err(Error::Index(format!("p_tilde(a={a}, b={b}) with K={}", self.k())));
        }
        Ok((a..b).map(|c| self.s(c, a)).sum())
    }

    /// Component `a` of `p(s)^j = s^j + ... + s^K` (rows padded by zeros).
    pub fn p_vec(&self, j: usize) -> Vec<usize> {
        let k = self.k();
        (1..=k).map(|a| (j.max(a)..=k).map(|c| self.s(c, a)).sum()).collect()
    }
}

/// Every admissible matrix for `n`, in lexicographic order of the row-major entries.
pub fn enumerate_admissible(n: &[usize]) -> Vec<AdmissibleMatrix> {
    let k = n.len();
    let cells: Vec<(usize, usize)> = (1..=k).flat_map(|b| (1..=b).map(move |a| (b, a))).collect();
    let mut out = Vec::new();
    let mut rows: Vec<Vec<usize>> = (1..=k).map(|b| vec![0; b]).collect();
    let mut col = vec![0usize; k];
    fill(n, &cells, 0, &mut rows, &mut col, &mut out);
    out
}

fn fill(
    n: &[usize],
    cells: &[(usize, usize)],
    at: usize,
    rows: &mut Vec<Vec<usize>>,
    col: &mut Vec<usize>,
    out: &mut Vec<AdmissibleMatrix>,
) {
    if at == cells.len() {
        if col.iter().zip(n).all(|(c, m)| c == m) {
            out.push(AdmissibleMatrix { rows: rows.clone() });
        }
        return;
    }
    let (b, a) = cells[at];
    let lo = if a > 1 { rows[b - 1][a - 2] } else { 0 };
    let room = n[a - 1] - col[a - 1];
    let (from, to) = if b == n.len() { (room, room) } else { (lo, room) };
    if from < lo {
        return;
    }
    for x in from.max(lo)..=to {
        rows[b - 1][a - 1] = x;
        col[a - 1] += x;
        fill(n, cells, at + 1, rows, col, out);
        col[a - 1] -= x;
    }
    rows[b - 1][a - 1] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_two_is_forced() {
        let all = enumerate_admissible(&[3]);
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].s(1, 1), 3);
    }

    #[test]
    fn n11_has_two_matrices() {
        let all = enumerate_admissible(&[1, 1]);
        let rows: Vec<_> = all.iter().map(AdmissibleMatrix::row_major).collect();
        assert_eq!(rows, vec![vec![0, 1, 1], vec![1, 0, 1]]);
        let s = &all[1];
        assert_eq!(s.p_tilde(1, 2).unwrap(), 1);
        assert_eq!(s.p_tilde(2, 2).unwrap(), 0);
        assert!(s.p_tilde(2, 1).is_err());
    }

    #[test]
    fn zero_counts_give_zero_matrix() {
        let all = enumerate_admissible(&[0, 0, 0]);
        assert_eq!(all.len(), 1);
        assert!(all[0].row_major().iter().all(|&x| x == 0));
    }

    #[test]
    fn first_p_vector_is_n() {
        for s in enumerate_admissible(&[2, 1, 2]) {
            assert_eq!(s.p_vec(1), vec![2, 1, 2]);
            assert_eq!(s.p_vec(4), vec![0, 0, 0]);
        }
    }

    #[test]
    fn decreasing_row_rejected() {
        assert!(matches!(
            AdmissibleMatrix::from_rows(vec![vec![1], vec![2, 1]]),
            Err(Error::Admissibility(_))
        ));
    }
}
