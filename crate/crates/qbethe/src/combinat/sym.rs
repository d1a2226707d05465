use rayon::prelude::*;

use super::variables::{permutations, TypedVariables};
use crate::error::Result;
use crate::linalg::VectorState;
use crate::scalar::{Rational, ScalarContext};

/// Values that can be summed with rational weights.
pub trait Accumulate: Clone + Send + Sync {
    fn accumulate(&mut self, other: &Self, c: &Rational);
}

impl Accumulate for Rational {
    fn accumulate(&mut self, other: &Self, c: &Rational) {
        *self += other * c;
    }
}

impl Accumulate for VectorState {
    fn accumulate(&mut self, other: &Self, c: &Rational) {
        self.add_scaled(other, c);
    }
}

/// `(q - q^-1 x)/(q^-1 - q x)`.
fn inversion_factor(ctx: &ScalarContext, x: &Rational) -> Result<Rational> {
    (ctx.q() - ctx.q_inv() * x).checked_div(&(ctx.q_inv() - ctx.q() * x), "symmetrization weight")
}

/// Weight of one permutation of a single type: slot `l` holds `vals[sig[l]]`.
pub fn perm_weight(ctx: &ScalarContext, vals: &[Rational], sig: &[usize]) -> Result<Rational> {
    let mut w = Rational::one();
    for l in 0..sig.len() {
        for lp in l + 1..sig.len() {
            if sig[l] > sig[lp] {
                w *= inversion_factor(ctx, &(&vals[sig[l]] / &vals[sig[lp]]))?;
            }
        }
    }
    Ok(w)
}

/// Every tuple of per-type permutations, first type varying slowest.
fn permutation_tuples(counts: &[usize]) -> Vec<Vec<Vec<usize>>> {
    counts.iter().fold(vec![Vec::new()], |acc, &n| {
        let perms = permutations(n);
        acc.into_iter()
            .flat_map(|prefix| {
                perms.iter().map(move |p| {
                    let mut next = prefix.clone();
                    next.push(p.clone());
                    next
                })
            })
            .collect()
    })
}

/// Sum of `weight(sigma) * G(sigma . vars)` over all same-type permutations.
pub fn q_symmetrize<T, G>(ctx: &ScalarContext, vars: &TypedVariables, zero: T, g: G) -> Result<T>
where
    T: Accumulate,
    G: Fn(&TypedVariables) -> Result<T> + Sync,
{
    let terms: Vec<Result<(Rational, T)>> = permutation_tuples(&vars.counts())
        .into_par_iter()
        .map(|sigma| {
            let mut w = Rational::one();
            for (a, s) in sigma.iter().enumerate() {
                w *= perm_weight(ctx, vars.of_type(a), s)?;
            }
            Ok((w, g(&vars.rearranged(&sigma))?))
        })
        .collect();
    let mut total = zero;
    for term in terms {
        let (w, value) = term?;
        total.accumulate(&value, &w);
    }
    Ok(total)
}

/// `phi = prod_a prod_{l<l'} (q - q^-1 t_l/t_l')/(1 - t_l/t_l')`.
pub fn phi(ctx: &ScalarContext, vars: &TypedVariables) -> Result<Rational> {
    let mut p = Rational::one();
    for ts in vars.as_nested() {
        for (l, x) in ts.iter().enumerate() {
            for y in &ts[l + 1..] {
                p *= ctx.g(&(x / y))?;
            }
        }
    }
    Ok(p)
}

/// `phi(vars)` times the plain q-symmetrization.
pub fn q_symmetrize_renorm<T, G>(ctx: &ScalarContext, vars: &TypedVariables, zero: T, g: G) -> Result<T>
where
    T: Accumulate,
    G: Fn(&TypedVariables) -> Result<T> + Sync,
{
    let s = q_symmetrize(ctx, vars, zero.clone(), g)?;
    let mut out = zero;
    out.accumulate(&s, &phi(ctx, vars)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> ScalarContext {
        ScalarContext::new(Rational::from_int(2), 5).unwrap()
    }

    #[test]
    fn single_variables_are_untouched() {
        let c = ctx();
        let v = TypedVariables::new(vec![vec![Rational::new(3, 5)], vec![Rational::new(-7, 2)]]);
        let s = q_symmetrize(&c, &v, Rational::zero(), |t| Ok(t.get(0, 0) * t.get(1, 0))).unwrap();
        assert_eq!(s, Rational::new(-21, 10));
        let r = q_symmetrize_renorm(&c, &v, Rational::zero(), |t| Ok(t.get(0, 0) * t.get(1, 0))).unwrap();
        assert_eq!(r, s);
    }

    #[test]
    fn constant_two_term_expansion() {
        let c = ctx();
        let (t1, t2) = (Rational::new(3, 5), Rational::new(-7, 2));
        let v = TypedVariables::new(vec![vec![t1.clone(), t2.clone()]]);
        let s = q_symmetrize(&c, &v, Rational::zero(), |_| Ok(Rational::one())).unwrap();
        // The transposition puts t2 in the first slot.
        let x = &t2 / &t1;
        let expected =
            Rational::one() + (c.q() - c.q_inv() * &x) / (c.q_inv() - c.q() * &x);
        assert_eq!(s, expected);
        let r = q_symmetrize_renorm(&c, &v, Rational::zero(), |_| Ok(Rational::one())).unwrap();
        assert_eq!(r, expected * c.g(&(&t1 / &t2)).unwrap());
    }
}
