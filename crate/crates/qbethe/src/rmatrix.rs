//! Trigonometric R-matrices in both conventions and their defining identities.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Operator;
use crate::scalar::{Rational, ScalarContext};

/// Which R-matrix, L-operator and coproduct convention is in force.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    #[serde(rename = "orig")]
    Original,
    #[serde(rename = "twist")]
    Twisted,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::Original, Variant::Twisted];

    pub fn tag(self) -> &'static str {
        match self {
            Variant::Original => "orig",
            Variant::Twisted => "twist",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "orig" | "original" => Ok(Variant::Original),
            "twist" | "twisted" => Ok(Variant::Twisted),
            _ => Err(Error::Parse(format!("unknown variant {s:?}"))),
        }
    }
}

/// Dense `N^2 x N^2` matrix; entry `((i,k),(j,l))` is the coefficient of `E_ij (x) E_kl`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl SpectralMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    fn idx(&self, i: usize, k: usize, j: usize, l: usize) -> usize {
        let n = self.n;
        (i * n + k) * n * n + (j * n + l)
    }

    pub fn get(&self, i: usize, k: usize, j: usize, l: usize) -> &Rational {
        &self.entries[self.idx(i, k, j, l)]
    }

    pub fn set(&mut self, i: usize, k: usize, j: usize, l: usize, x: Rational) {
        let at = self.idx(i, k, j, l);
        self.entries[at] = x;
    }

    /// Row-major rows of the flattened matrix.
    pub fn rows(&self) -> Vec<Vec<Rational>> {
        let d = self.n * self.n;
        self.entries.chunks(d).map(<[Rational]>::to_vec).collect()
    }

    pub fn to_operator(&self) -> Operator {
        Operator::from_dense(&self.rows())
    }

    /// Nonzero only where `{i,k} = {j,l}` as multisets.
    pub fn satisfies_ice_rule(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| {
            (0..n).all(|k| {
                (0..n).all(|j| {
                    (0..n).all(|l| {
                        let same = (i == j && k == l) || (i == l && k == j);
                        same || self.get(i, k, j, l).is_zero()
                    })
                })
            })
        })
    }

    /// `P R P`, the matrix with tensor legs exchanged.
    pub fn flipped(&self) -> SpectralMatrix {
        let n = self.n;
        let mut out = self.clone();
        for i in 0..n {
            for k in 0..n {
                for j in 0..n {
                    for l in 0..n {
                        out.set(k, i, l, j, self.get(i, k, j, l).clone());
                    }
                }
            }
        }
        out
    }
}

/// R-matrix of the chosen variant at spectral parameters `(u, v)`.
pub fn build_r(
    ctx: &ScalarContext,
    variant: Variant,
    n: usize,
    u: &Rational,
    v: &Rational,
) -> Result<SpectralMatrix> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("R-matrix needs N >= 2, got {n}")));
    }
    let den = ctx.q() * u - ctx.q_inv() * v;
    let den_inv = den
        .checked_recip()
        .ok_or_else(|| Error::Pole(format!("q u = q^-1 v at u={u}, v={v}")))?;
    let mut r = SpectralMatrix { n, entries: vec![Rational::zero(); n * n * n * n] };
    let diag = (u - v) * &den_inv;
    let (lo, hi) = match variant {
        Variant::Original => (v, u),
        Variant::Twisted => (u, v),
    };
    let c_lo = ctx.nu() * lo * &den_inv;
    let c_hi = ctx.nu() * hi * &den_inv;
    for i in 0..n {
        r.set(i, i, i, i, Rational::one());
        for j in 0..n {
            if i != j {
                r.set(i, j, i, j, diag.clone());
            }
            if i < j {
                r.set(i, j, j, i, c_lo.clone());
                r.set(j, i, i, j, c_hi.clone());
            }
        }
    }
    Ok(r)
}

/// Embed `r` on legs `(site_a, site_b)` of `(C^N)^{(x) m}`; sites are 0-based.
pub fn embed_two_site(r: &SpectralMatrix, m: usize, site_a: usize, site_b: usize) -> Result<Operator> {
    if site_a >= m || site_b >= m || site_a == site_b {
        return Err(Error::Index(format!("sites ({site_a},{site_b}) on {m} legs")));
    }
    let n = r.n();
    let dim = n.pow(m as u32);
    let stride = |s: usize| n.pow((m - 1 - s) as u32);
    let (sa, sb) = (stride(site_a), stride(site_b));
    let mut rows: Vec<Vec<(usize, Rational)>> = Vec::with_capacity(dim);
    for row in 0..dim {
        let (i, k) = ((row / sa) % n, (row / sb) % n);
        let base = row - i * sa - k * sb;
        let mut out = Vec::new();
        for j in 0..n {
            for l in 0..n {
                let x = r.get(i, k, j, l);
                if !x.is_zero() {
                    out.push((base + j * sa + l * sb, x.clone()));
                }
            }
        }
        out.sort_by_key(|(c, _)| *c);
        rows.push(out);
    }
    Ok(Operator::from_sorted_rows(dim, rows))
}

/// Both sides `R12 R13 R23` and `R23 R13 R12` for an arbitrary R-matrix family.
pub fn yang_baxter_sides_with<F>(
    n: usize,
    build: F,
    u1: &Rational,
    u2: &Rational,
    u3: &Rational,
) -> Result<(Operator, Operator)>
where
    F: Fn(&Rational, &Rational) -> Result<SpectralMatrix>,
{
    let r12 = embed_two_site(&build(u1, u2)?, 3, 0, 1)?;
    let r13 = embed_two_site(&build(u1, u3)?, 3, 0, 2)?;
    let r23 = embed_two_site(&build(u2, u3)?, 3, 1, 2)?;
    debug_assert_eq!(r12.dim(), n.pow(3));
    Ok((r12.mul(&r13).mul(&r23), r23.mul(&r13).mul(&r12)))
}

/// Yang-Baxter check for an arbitrary R-matrix family.
pub fn yang_baxter_holds_with<F>(n: usize, build: F, u1: &Rational, u2: &Rational, u3: &Rational) -> Result<bool>
where
    F: Fn(&Rational, &Rational) -> Result<SpectralMatrix>,
{
    yang_baxter_sides_with(n, build, u1, u2, u3).map(|(l, r)| l == r)
}

/// `R12 R13 R23 = R23 R13 R12` on `(C^N)^{(x)3}`.
pub fn check_yang_baxter(
    ctx: &ScalarContext,
    variant: Variant,
    n: usize,
    u1: &Rational,
    u2: &Rational,
    u3: &Rational,
) -> Result<bool> {
    yang_baxter_holds_with(n, |u, v| build_r(ctx, variant, n, u, v), u1, u2, u3)
}

/// `R12(u1,u2) R21(u2,u1)` for an arbitrary R-matrix family.
pub fn unitarity_product_with<F>(build: F, u1: &Rational, u2: &Rational) -> Result<Operator>
where
    F: Fn(&Rational, &Rational) -> Result<SpectralMatrix>,
{
    let r12 = build(u1, u2)?.to_operator();
    let r21 = build(u2, u1)?.flipped().to_operator();
    Ok(r12.mul(&r21))
}

/// Inversion relation for an arbitrary R-matrix family.
pub fn unitarity_holds_with<F>(n: usize, build: F, u1: &Rational, u2: &Rational) -> Result<bool>
where
    F: Fn(&Rational, &Rational) -> Result<SpectralMatrix>,
{
    unitarity_product_with(build, u1, u2).map(|p| p == Operator::identity(n * n))
}

/// `R12(u1,u2) R21(u2,u1) = 1`.
pub fn check_unitarity(
    ctx: &ScalarContext,
    variant: Variant,
    n: usize,
    u1: &Rational,
    u2: &Rational,
) -> Result<bool> {
    unitarity_holds_with(n, |u, v| build_r(ctx, variant, n, u, v), u1, u2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> ScalarContext {
        ScalarContext::new(Rational::new(3, 7), 5).unwrap()
    }

    #[test]
    fn diagonal_and_zero_at_equal_arguments() {
        let c = ctx();
        let u = Rational::new(5, 3);
        let r = build_r(&c, Variant::Original, 3, &u, &u).unwrap();
        for i in 0..3 {
            assert_eq!(*r.get(i, i, i, i), Rational::one());
        }
        assert!(r.get(0, 1, 0, 1).is_zero());
    }

    #[test]
    fn variants_swap_off_diagonal_weights() {
        let c = ctx();
        let (u, v) = (Rational::from_int(2), Rational::from_int(3));
        let den = c.q() * &u - c.q_inv() * &v;
        let o = build_r(&c, Variant::Original, 2, &u, &v).unwrap();
        let t = build_r(&c, Variant::Twisted, 2, &u, &v).unwrap();
        assert_eq!(*o.get(0, 1, 1, 0), c.nu() * &v / &den);
        assert_eq!(*t.get(0, 1, 1, 0), c.nu() * &u / &den);
        assert_eq!(*o.get(1, 0, 0, 1), *t.get(0, 1, 1, 0));
    }

    #[test]
    fn pole_detected() {
        let c = ctx();
        let u = Rational::one();
        let v = c.q().pow(2);
        assert!(matches!(build_r(&c, Variant::Twisted, 2, &u, &v), Err(Error::Pole(_))));
    }

    #[test]
    fn small_unitarity_example() {
        let c = ctx();
        for var in Variant::ALL {
            assert!(check_unitarity(&c, var, 2, &Rational::one(), &Rational::from_int(4)).unwrap());
        }
    }

    #[test]
    fn coincident_triple_satisfies_yang_baxter() {
        let c = ctx();
        let u = Rational::new(-2, 9);
        for var in Variant::ALL {
            assert!(check_yang_baxter(&c, var, 3, &u, &u, &u).unwrap());
        }
    }

    #[test]
    fn corrupted_entry_breaks_identities() {
        let c = ctx();
        let us = c.sample_generic(3, &[]);
        let corrupt = |u: &Rational, v: &Rational| {
            let mut r = build_r(&c, Variant::Original, 2, u, v)?;
            let x = r.get(0, 1, 1, 0) + &Rational::one();
            r.set(0, 1, 1, 0, x);
            Ok(r)
        };
        assert!(!yang_baxter_holds_with(2, corrupt, &us[0], &us[1], &us[2]).unwrap());
        assert!(!unitarity_holds_with(2, corrupt, &us[0], &us[1]).unwrap());
    }

    #[test]
    fn embedding_basics() {
        let c = ctx();
        let r = build_r(&c, Variant::Twisted, 2, &Rational::from_int(2), &Rational::from_int(5)).unwrap();
        assert_eq!(embed_two_site(&r, 2, 0, 1).unwrap(), r.to_operator());
        assert_eq!(embed_two_site(&r, 2, 1, 0).unwrap(), r.flipped().to_operator());
        assert!(matches!(embed_two_site(&r, 2, 1, 1), Err(Error::Index(_))));
        let mut eye = r.clone();
        for i in 0..2 {
            for k in 0..2 {
                for j in 0..2 {
                    for l in 0..2 {
                        let x = if i == j && k == l { Rational::one() } else { Rational::zero() };
                        eye.set(i, k, j, l, x);
                    }
                }
            }
        }
        assert_eq!(embed_two_site(&eye, 3, 0, 2).unwrap(), Operator::identity(8));
    }
}
