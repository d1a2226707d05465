//! Matrices of the finite quantum group generators and the zero modes built from them.

use crate::error::{Error, Result};
use crate::linalg::{AuxMatrix, Operator};
use crate::rmatrix::Variant;
use crate::scalar::{Rational, ScalarContext};

/// Sign of an L-operator (`L^+` or `L^-`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

/// Images of `E_ab`, `1 <= a,b <= N`, on a finite-dimensional space (indices 0-based here).
#[derive(Clone, Debug)]
pub struct GlnGenerators {
    n: usize,
    dim: usize,
    variant: Variant,
    gens: Vec<Operator>,
    cartan_inv: Vec<Operator>,
    highest_weight: Vec<i64>,
    top: Option<Vec<bool>>,
}

impl GlnGenerators {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn gen(&self, a: usize, b: usize) -> &Operator {
        &self.gens[a * self.n + b]
    }

    pub fn cartan_inv(&self, a: usize) -> &Operator {
        &self.cartan_inv[a]
    }

    /// Exponents `Lambda_a` with `E_aa v = q^{Lambda_a} v` on the highest vector `e_0`.
    pub fn highest_weight(&self) -> &[i64] {
        &self.highest_weight
    }

    /// Basis vectors on the top truncation level, if the space is a truncation.
    pub fn top_level(&self) -> Option<&[bool]> {
        self.top.as_deref()
    }

    /// Replace every generator by `S E S^{-1}`; the result has no truncation data.
    pub fn conjugated(&self, s: &Operator) -> Result<Self> {
        let s_inv = s.inverse()?;
        let conj = |op: &Operator| s.mul(op).mul(&s_inv);
        Ok(GlnGenerators {
            gens: self.gens.iter().map(conj).collect(),
            cartan_inv: self.cartan_inv.iter().map(conj).collect(),
            top: None,
            ..self.clone()
        })
    }

    /// Overwrite one generator (fault injection for negative tests).
    pub fn with_generator(&self, a: usize, b: usize, op: Operator) -> Self {
        let mut out = self.clone();
        out.gens[a * self.n + b] = op;
        out
    }

    /// Coefficient in the composed lowering rule `E_ca = E_cb E_ba - k E_ba E_cb`.
    fn lowering_coeff(ctx: &ScalarContext, variant: Variant) -> Rational {
        match variant {
            Variant::Original => ctx.q().clone(),
            Variant::Twisted => ctx.q_inv().clone(),
        }
    }

    fn raising_coeff(ctx: &ScalarContext, variant: Variant) -> Rational {
        match variant {
            Variant::Original => ctx.q_inv().clone(),
            Variant::Twisted => ctx.q().clone(),
        }
    }

    /// Fill the composed root generators from the Chevalley ones.
    fn compose(ctx: &ScalarContext, n: usize, variant: Variant, gens: &mut [Operator]) {
        let kl = Self::lowering_coeff(ctx, variant);
        let kr = Self::raising_coeff(ctx, variant);
        for gap in 2..n {
            for a in 0..n - gap {
                let (b, c) = (a + 1, a + gap);
                let (cb, ba) = (&gens[c * n + b], &gens[b * n + a]);
                let low = cb.mul(ba).add_scaled(&ba.mul(cb), &-&kl);
                let (ab, bc) = (&gens[a * n + b], &gens[b * n + c]);
                let up = ab.mul(bc).add_scaled(&bc.mul(ab), &-&kr);
                gens[c * n + a] = low;
                gens[a * n + c] = up;
            }
        }
    }

    fn assemble(
        ctx: &ScalarContext,
        n: usize,
        variant: Variant,
        cartan: Vec<Vec<Rational>>,
        chevalley: impl Fn(usize, usize) -> Operator,
        highest_weight: Vec<i64>,
        top: Option<Vec<bool>>,
    ) -> Result<Self> {
        let dim = cartan[0].len();
        let mut gens = vec![Operator::zero(dim); n * n];
        for a in 0..n {
            gens[a * n + a] = Operator::diagonal(cartan[a].clone());
            if a + 1 < n {
                gens[a * n + a + 1] = chevalley(a, a + 1);
                gens[(a + 1) * n + a] = chevalley(a + 1, a);
            }
        }
        Self::compose(ctx, n, variant, &mut gens);
        let cartan_inv = cartan
            .iter()
            .map(|d| Operator::diagonal(d.iter().map(Rational::recip).collect()))
            .collect();
        let g = GlnGenerators { n, dim, variant, gens, cartan_inv, highest_weight, top };
        g.check_relations(ctx)?;
        Ok(g)
    }

    /// Vector representation on `C^N`.
    pub fn vector_rep(ctx: &ScalarContext, n: usize, variant: Variant) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("vector rep needs N >= 2, got {n}")));
        }
        let cartan = (0..n)
            .map(|a| (0..n).map(|i| if i == a { ctx.q().clone() } else { Rational::one() }).collect())
            .collect();
        let mut lw = vec![0; n];
        lw[0] = 1;
        Self::assemble(ctx, n, variant, cartan, |i, j| Operator::unit(n, i, j), lw, None)
    }

    /// Truncated rank-two highest weight module with basis `F^k v`, `0 <= k <= k_trunc`.
    pub fn verma2(
        ctx: &ScalarContext,
        l1: i64,
        l2: i64,
        k_trunc: usize,
        variant: Variant,
    ) -> Result<Self> {
        let d = k_trunc + 1;
        let cartan = vec![
            (0..d).map(|k| ctx.q_pow(l1 - k as i64)).collect(),
            (0..d).map(|k| ctx.q_pow(l2 + k as i64)).collect(),
        ];
        let raise: Vec<Rational> =
            (1..d).map(|k| ctx.q_int(k as i64) * ctx.q_int(l1 - l2 - k as i64 + 1)).collect();
        let chev = |i: usize, j: usize| {
            let mut op = Operator::zero(d);
            for k in 0..d {
                if i == 1 && j == 0 && k + 1 < d {
                    op.set_entry(k + 1, k, Rational::one());
                }
                if i == 0 && j == 1 && k > 0 {
                    op.set_entry(k - 1, k, raise[k - 1].clone());
                }
            }
            op
        };
        let top = (0..d).map(|k| k == k_trunc).collect();
        Self::assemble(ctx, 2, variant, cartan, chev, vec![l1, l2], Some(top))
    }

    /// Columns on which a relation with `factors` generator factors is exact:
    /// `k <= K - (factors - 1)` on a truncation at level `K`.
    fn exact_columns(&self, factors: usize) -> Vec<usize> {
        match &self.top {
            None => (0..self.dim).collect(),
            Some(top) => {
                let k_trunc = top.iter().position(|&t| t).unwrap_or(self.dim - 1);
                (0..self.dim).filter(|&k| k + factors <= k_trunc + 1).collect()
            }
        }
    }

    fn same_on(&self, lhs: &Operator, rhs: &Operator, factors: usize, what: &str) -> Result<()> {
        let cols = self.exact_columns(factors);
        if cols.iter().all(|&k| lhs.column(k) == rhs.column(k)) {
            Ok(())
        } else {
            Err(Error::Relation(what.to_string()))
        }
    }

    /// Verify Cartan, commutator, Serre and composed-root relations.
    pub fn check_relations(&self, ctx: &ScalarContext) -> Result<()> {
        let n = self.n;
        let nu = ctx.nu();
        for a in 0..n {
            let k = self.gen(a, a);
            if k.mul(self.cartan_inv(a)) != Operator::identity(self.dim) {
                return Err(Error::Relation(format!("E_{a}{a} inverse")));
            }
            for b in 0..n {
                for c in 0..n {
                    if b == c {
                        continue;
                    }
                    let e = ((a == b) as i64) - ((a == c) as i64);
                    let lhs = k.mul(self.gen(b, c)).mul(self.cartan_inv(a));
                    let rhs = self.gen(b, c).scaled(&ctx.q_pow(e));
                    self.same_on(&lhs, &rhs, 1, &format!("Cartan conjugation a={a} ({b},{c})"))?;
                }
            }
        }
        for a in 0..n - 1 {
            for b in 0..n - 1 {
                let (e, f) = (self.gen(a, a + 1), self.gen(b + 1, b));
                let lhs = e.mul(f).sub(&f.mul(e));
                let rhs = if a == b {
                    let x = self.gen(a, a).mul(self.cartan_inv(a + 1));
                    let y = self.cartan_inv(a).mul(self.gen(a + 1, a + 1));
                    x.sub(&y).scaled(&nu.recip())
                } else {
                    Operator::zero(self.dim)
                };
                self.same_on(&lhs, &rhs, 2, &format!("[E_{a},{} , E_{},{b}]", a + 1, b + 1))?;
            }
        }
        let two = ctx.q_int(2);
        let serre = |x: &Operator, y: &Operator| {
            x.mul(x).mul(y).add_scaled(&x.mul(y).mul(x), &-&two).add(&y.mul(x).mul(x))
        };
        for a in 0..n.saturating_sub(2) {
            let (f0, f1) = (self.gen(a + 1, a), self.gen(a + 2, a + 1));
            let (e0, e1) = (self.gen(a, a + 1), self.gen(a + 1, a + 2));
            for (x, y, tag) in [(f0, f1, "f"), (f1, f0, "f"), (e0, e1, "e"), (e1, e0, "e")] {
                let z = Operator::zero(self.dim);
                self.same_on(&serre(x, y), &z, 3, &format!("Serre {tag} at {a}"))?;
            }
        }
        for a in 0..n.saturating_sub(1) {
            for b in a + 2..n - 1 {
                for (x, y) in [
                    (self.gen(a + 1, a), self.gen(b + 1, b)),
                    (self.gen(a, a + 1), self.gen(b, b + 1)),
                ] {
                    let lhs = x.mul(y).sub(&y.mul(x));
                    self.same_on(&lhs, &Operator::zero(self.dim), 2, "distant roots commute")?;
                }
            }
        }
        let kl = Self::lowering_coeff(ctx, self.variant);
        let kr = Self::raising_coeff(ctx, self.variant);
        for a in 0..n {
            for c in a + 2..n {
                for b in a + 1..c {
                    let (cb, ba) = (self.gen(c, b), self.gen(b, a));
                    let low = cb.mul(ba).add_scaled(&ba.mul(cb), &-&kl);
                    self.same_on(self.gen(c, a), &low, 2, &format!("composed E_{c}{a} via {b}"))?;
                    let (ab, bc) = (self.gen(a, b), self.gen(b, c));
                    let up = ab.mul(bc).add_scaled(&bc.mul(ab), &-&kr);
                    self.same_on(self.gen(a, c), &up, 2, &format!("composed E_{a}{c} via {b}"))?;
                }
            }
        }
        Ok(())
    }
}

/// Zero modes `L^+[0]`, `L^-[0]` of the chosen variant.
pub fn zero_mode_l(ctx: &ScalarContext, g: &GlnGenerators, sign: Sign) -> AuxMatrix {
    let n = g.n();
    let nu = ctx.nu();
    let mut m = AuxMatrix::zero(n, g.dim());
    for a in 0..n {
        let d = match sign {
            Sign::Plus => g.gen(a, a).clone(),
            Sign::Minus => g.cartan_inv(a).clone(),
        };
        m.set(a, a, d);
    }
    for a in 0..n {
        for b in a + 1..n {
            match (g.variant(), sign) {
                (Variant::Original, Sign::Plus) => {
                    m.set(b, a, g.gen(b, b).mul(g.gen(a, b)).scaled(nu));
                }
                (Variant::Original, Sign::Minus) => {
                    m.set(a, b, g.gen(b, a).mul(g.cartan_inv(b)).scaled(&-nu));
                }
                (Variant::Twisted, Sign::Plus) => {
                    m.set(a, b, g.gen(b, a).mul(g.gen(b, b)).scaled(nu));
                }
                (Variant::Twisted, Sign::Minus) => {
                    m.set(b, a, g.cartan_inv(b).mul(g.gen(a, b)).scaled(&-nu));
                }
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> ScalarContext {
        ScalarContext::new(Rational::new(3, 7), 2).unwrap()
    }

    #[test]
    fn vector_rep_n2_shapes() {
        let c = ctx();
        let g = GlnGenerators::vector_rep(&c, 2, Variant::Original).unwrap();
        assert_eq!(*g.gen(0, 0), Operator::diagonal(vec![c.q().clone(), Rational::one()]));
        assert_eq!(*g.gen(1, 0), Operator::unit(2, 1, 0));
    }

    #[test]
    fn composed_roots_follow_variant_rule() {
        let c = ctx();
        for (var, k) in [(Variant::Original, c.q().clone()), (Variant::Twisted, c.q_inv().clone())] {
            let g = GlnGenerators::vector_rep(&c, 3, var).unwrap();
            let expect = g.gen(2, 1).mul(g.gen(1, 0)).add_scaled(&g.gen(1, 0).mul(g.gen(2, 1)), &-&k);
            assert_eq!(*g.gen(2, 0), expect);
        }
    }

    #[test]
    fn relations_hold_on_vector_reps() {
        let c = ctx();
        for n in 2..=4 {
            for var in Variant::ALL {
                GlnGenerators::vector_rep(&c, n, var).unwrap();
            }
        }
    }

    #[test]
    fn broken_generator_is_rejected() {
        let c = ctx();
        let g = GlnGenerators::vector_rep(&c, 3, Variant::Original).unwrap();
        let bad = g.with_generator(1, 0, Operator::unit(3, 1, 0).scaled(&Rational::from_int(2)));
        assert!(matches!(bad.check_relations(&c), Err(Error::Relation(_))));
    }

    #[test]
    fn verma2_weights_and_highest_vector() {
        let c = ctx();
        let g = GlnGenerators::verma2(&c, 3, -2, 4, Variant::Twisted).unwrap();
        assert!(g.gen(0, 1).column(0).is_zero());
        for k in 0..5 {
            assert_eq!(g.gen(0, 0).entry(k, k), c.q_pow(3 - k as i64));
        }
    }

    #[test]
    fn zero_mode_diagonal_products() {
        let c = ctx();
        let g = GlnGenerators::vector_rep(&c, 2, Variant::Original).unwrap();
        let p = zero_mode_l(&c, &g, Sign::Plus);
        let m = zero_mode_l(&c, &g, Sign::Minus);
        for a in 0..2 {
            assert_eq!(p.get(a, a).mul(m.get(a, a)), Operator::identity(2));
        }
        assert!(p.get(0, 1).is_zero());
        assert_eq!(*p.get(1, 0), g.gen(1, 1).mul(g.gen(0, 1)).scaled(c.nu()));
    }
}
