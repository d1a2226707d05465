use std::sync::Arc;

use rayon::prelude::*;

use super::check_rank;
use crate::combinat::{
    coeff_calz, coeff_z, enumerate_admissible, q_symmetrize_renorm, x_product, AdmissibleMatrix,
    TypedVariables,
};
use crate::error::Result;
use crate::linalg::VectorState;
use crate::repr::{embedded_module, Module};
use crate::rmatrix::Variant;
use crate::scalar::{Rational, ScalarContext};

type Chain = Vec<(usize, usize, Rational)>;

/// Ordered L-entries for one admissible matrix, leftmost first.
fn direct_chain(s: &AdmissibleMatrix, t: &TypedVariables) -> Chain {
    let k = s.k();
    let mut ops = Vec::new();
    for b in (1..=k).rev() {
        for a in 1..=b {
            for l in s.s(b, a - 1) + 1..=s.s(b, a) {
                ops.push((a - 1, b, t.get(b - 1, l - 1).clone()));
            }
        }
        for l in s.s(b, b) + 1..=t.of_type(b - 1).len() {
            ops.push((b, b, t.get(b - 1, l - 1).clone()));
        }
    }
    ops
}

fn direct_coefficient(ctx: &ScalarContext, s: &AdmissibleMatrix, n: &[usize]) -> Rational {
    let k = s.k();
    let excess: usize = (1..=k).map(|b| n[b - 1] - s.s(b, b)).sum();
    let mut c = ctx.nu().pow(excess as i64);
    for b in 1..=k {
        for a in 1..=b {
            c /= ctx.q_factorial(s.s(b, a) - s.s(b, a - 1));
        }
    }
    c
}

/// Closed sum over admissible matrices, q-symmetrized with the `phi` renormalization.
pub fn direct_modified_weight(ctx: &ScalarContext, module: &Module, vars: &TypedVariables) -> Result<VectorState> {
    check_rank(module, vars)?;
    let n = vars.counts();
    let twisted = module.variant() == Variant::Twisted;
    let terms: Vec<(AdmissibleMatrix, Rational)> = enumerate_admissible(&n)
        .into_iter()
        .map(|s| {
            let c = direct_coefficient(ctx, &s, &n);
            (s, c)
        })
        .collect();
    let v = module.singular_vector();
    q_symmetrize_renorm(ctx, vars, VectorState::zero(module.dim()), |t| {
        let parts: Vec<Result<VectorState>> = terms
            .par_iter()
            .map(|(s, c)| {
                let z = coeff_calz(ctx, s, t, twisted)?;
                Ok(module.apply_chain(&direct_chain(s, t), v)?.scaled(&(c * z)))
            })
            .collect();
        let mut total = VectorState::zero(module.dim());
        for p in parts {
            total.add_scaled(&p?, &Rational::one());
        }
        Ok(total)
    })
}

/// Splits `s_1 <= ... <= s_{K-1} <= s_K = n_K` with `s_a <= n_a`.
pub(crate) fn recurrence_splits(n: &[usize]) -> Vec<Vec<usize>> {
    let k = n.len();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: &[usize], a: usize, prev: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let k = n.len();
        if a == k {
            if prev <= n[k - 1] {
                cur.push(n[k - 1]);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for x in prev..=n[a - 1] {
            cur.push(x);
            rec(n, a + 1, x, cur, out);
            cur.pop();
        }
    }
    if k > 0 {
        rec(n, 1, 0, &mut cur, &mut out);
    }
    out
}

/// Rank recurrence: the last type is peeled off and the rest is evaluated on
/// the embedded rank `N-1` module.
pub fn recurrence_modified_weight(ctx: &ScalarContext, module: &Arc<Module>, vars: &TypedVariables) -> Result<VectorState> {
    check_rank(module, vars)?;
    let mut tower = vec![Arc::clone(module)];
    while tower.last().is_some_and(|m| m.n() > 2) {
        let next = embedded_module(tower.last().expect("nonempty"))?;
        tower.push(next);
    }
    recurrence(ctx, &tower, vars)
}

/// `tower[0]` is the current module, `tower[1]` its embedded rank `N-1` module, and so on.
fn recurrence(ctx: &ScalarContext, tower: &[Arc<Module>], vars: &TypedVariables) -> Result<VectorState> {
    let module = &tower[0];
    let k = vars.types();
    let n = vars.counts();
    if k == 0 || n.iter().all(|&c| c == 0) {
        return Ok(module.singular_vector().clone());
    }
    let twisted = module.variant() == Variant::Twisted;
    let zeros = vec![0; k];
    let mut total = VectorState::zero(module.dim());
    for s in recurrence_splits(&n) {
        let mut c = ctx.q_factorial(s[0]).recip();
        for a in 1..k {
            c *= ctx.nu().pow(s[a - 1] as i64);
            c /= ctx.q_factorial(s[a] - s[a - 1]) * ctx.q_factorial(n[a - 1] - s[a - 1]);
        }
        let rest: Vec<usize> = (0..k - 1).map(|a| n[a] - s[a]).collect();
        let term = q_symmetrize_renorm(ctx, vars, VectorState::zero(module.dim()), |t| {
            let mut sc = x_product(ctx, &n, &s, k, t, twisted)? * coeff_z(ctx, &n, &zeros, &s, t)?;
            for a in 1..k {
                for ell in n[a - 1] - s[a - 1] + 1..=n[a - 1] {
                    sc *= module.lambda(a, t.get(a - 1, ell - 1))?;
                }
            }
            let inner = if k >= 2 {
                recurrence(ctx, &tower[1..], &t.drop_last_type().prefix(&rest))?
            } else {
                module.singular_vector().clone()
            };
            let mut ops: Chain = Vec::new();
            for a in 1..=k {
                let lo = if a > 1 { s[a - 2] } else { 0 };
                for ell in lo + 1..=s[a - 1] {
                    ops.push((a - 1, k, t.get(k - 1, ell - 1).clone()));
                }
            }
            Ok(module.apply_chain(&ops, &inner)?.scaled(&sc))
        })?;
        total.add_scaled(&term, &c);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_end_with_last_count() {
        assert_eq!(recurrence_splits(&[2]), vec![vec![2]]);
        assert_eq!(recurrence_splits(&[1, 1]), vec![vec![0, 1], vec![1, 1]]);
        assert_eq!(recurrence_splits(&[2, 1]), vec![vec![0, 1], vec![1, 1]]);
        assert_eq!(recurrence_splits(&[1, 0]), vec![vec![0, 0]]);
    }
}
