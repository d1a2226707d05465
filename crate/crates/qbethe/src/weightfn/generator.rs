use super::check_rank;
use crate::combinat::{enumerate_admissible, phi, q_symmetrize, AdmissibleMatrix, TypedVariables};
use crate::error::{Error, Result};
use crate::linalg::{Operator, VectorState};
use crate::repr::{GlnGenerators, Module};
use crate::rmatrix::Variant;
use crate::scalar::{Rational, ScalarContext};

/// Generator-level operator word for one admissible matrix, leftmost first, and its scalar.
fn word(
    ctx: &ScalarContext,
    g: &GlnGenerators,
    z: &Rational,
    s: &AdmissibleMatrix,
) -> (Vec<Operator>, Rational) {
    let k = s.k();
    let twisted = g.variant() == Variant::Twisted;
    let mut c = Rational::one();
    let mut ops = Vec::new();
    for b in (1..=k).rev() {
        let order: Vec<usize> = if twisted { (1..=b).rev().collect() } else { (1..=b).collect() };
        for a in order {
            let (lo, hi) = (s.s(b, a - 1), s.s(b, a));
            c /= ctx.q_factorial(hi - lo);
            let op = if twisted {
                c *= ctx.q_pow((lo as i64) * (lo as i64 - hi as i64));
                g.gen(b, a - 1).mul(g.gen(b, b))
            } else {
                g.gen(b, a - 1).mul(g.cartan_inv(b)).scaled(z)
            };
            ops.extend(std::iter::repeat_n(op, hi - lo));
        }
    }
    (ops, c)
}

/// Scalar series multiplying the generator word, evaluated at one ordering of the variables.
fn word_series(
    ctx: &ScalarContext,
    hw: &[i64],
    z: &Rational,
    s: &AdmissibleMatrix,
    t: &TypedVariables,
    twisted: bool,
) -> Result<Rational> {
    let q = ctx.q();
    let mut r = Rational::one();
    for b in 2..=s.k() {
        for a in 1..b {
            let (pa, pb) = (s.p_tilde(a, b)?, s.p_tilde(a + 1, b)?);
            for ell in 1..=s.s(b, a) {
                let ta = t.get(a - 1, ell + pa - 1);
                let tb = t.get(a, ell + pb - 1);
                let num = ctx.q_pow(hw[a]) * ta - ctx.q_pow(-hw[a]) * z;
                let earlier = &t.of_type(a)[..ell + pb - 1];
                if twisted {
                    r *= num.checked_div(&(tb - ta), "generator series")?;
                    for tp in earlier {
                        r *= (q * tp - ctx.q_inv() * ta).checked_div(&(tp - ta), "generator series")?;
                    }
                } else {
                    r *= num.checked_div(&(Rational::one() - ta / tb), "generator series")?;
                    for tp in earlier {
                        r *= ctx.g(&(ta / tp))?;
                    }
                }
            }
        }
    }
    Ok(r)
}

/// Weight function on an evaluation module written directly in the algebra
/// generators: one ordered word of composed roots per admissible matrix.
pub fn generator_weight(ctx: &ScalarContext, module: &Module, vars: &TypedVariables) -> Result<VectorState> {
    check_rank(module, vars)?;
    let (g, z) = module
        .generators()
        .ok_or_else(|| Error::InvalidParameter(format!("{} is not an evaluation module", module.recipe())))?;
    let twisted = module.variant() == Variant::Twisted;
    let v = module.singular_vector();
    let mut total = VectorState::zero(module.dim());
    for s in enumerate_admissible(&vars.counts()) {
        let (ops, c) = word(ctx, g, z, &s);
        let mut w = v.clone();
        for (step, op) in ops.iter().rev().enumerate() {
            if step > 0 {
                module.guard_truncation(&w)?;
            }
            w = op.apply(&w);
        }
        if w.is_zero() {
            continue;
        }
        let sym = q_symmetrize(ctx, vars, Rational::zero(), |t| {
            word_series(ctx, g.highest_weight(), z, &s, t, twisted)
        })?;
        total.add_scaled(&w, &(c * sym));
    }
    let mut pre = ctx.nu().pow(vars.total() as i64) * phi(ctx, vars)?;
    if !twisted {
        for x in vars.as_nested().iter().flatten() {
            pre = pre.checked_div(x, "generator prefactor")?;
        }
    }
    Ok(total.scaled(&pre))
}
