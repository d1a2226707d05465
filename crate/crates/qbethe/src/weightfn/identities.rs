use std::sync::Arc;

use rayon::prelude::*;

use super::{check_rank, direct_modified_weight, recurrence_modified_weight, tv_weight};
use crate::combinat::{coeff_eta, coeff_phi, pullback_weight, TypedVariables};
use crate::error::{Error, Result};
use crate::linalg::VectorState;
use crate::repr::{tensor_module, Module};
use crate::scalar::{Rational, ScalarContext};

/// `prod_{i<j} beta(t_i, t_j) * prod_i lambda_{a_i + 1}(t_i)`, the factor between modified and plain weights.
fn normalization(ctx: &ScalarContext, module: &Module, vars: &TypedVariables) -> Result<Rational> {
    let items = vars.items();
    let mut c = Rational::one();
    for (i, x) in items.iter().enumerate() {
        for y in &items[i + 1..] {
            c *= ctx.beta(&x.t, &y.t, x.ty as i64, y.ty as i64)?;
        }
        let lam = module.lambda(x.ty + 1, &x.t)?;
        if lam.is_zero() {
            return Err(Error::ZeroLambda(format!("lambda_{}({}) = 0", x.ty + 2, x.t)));
        }
        c *= lam;
    }
    Ok(c)
}

pub fn modified_from_plain(
    ctx: &ScalarContext,
    module: &Module,
    vars: &TypedVariables,
    plain: &VectorState,
) -> Result<VectorState> {
    check_rank(module, vars)?;
    Ok(plain.scaled(&normalization(ctx, module, vars)?))
}

pub fn plain_from_modified(
    ctx: &ScalarContext,
    module: &Module,
    vars: &TypedVariables,
    modified: &VectorState,
) -> Result<VectorState> {
    check_rank(module, vars)?;
    let c = normalization(ctx, module, vars)?;
    Ok(modified.scaled(&c.recip()))
}

/// Plain weight function through the direct construction.
pub fn plain_weight(ctx: &ScalarContext, module: &Module, vars: &TypedVariables) -> Result<VectorState> {
    plain_from_modified(ctx, module, vars, &direct_modified_weight(ctx, module, vars)?)
}

/// Direct sum equals `eta` times the trace construction (twisted variant).
pub fn check_coincidence(ctx: &ScalarContext, module: &Module, vars: &TypedVariables) -> Result<bool> {
    let tv = tv_weight(ctx, module, vars)?;
    let direct = direct_modified_weight(ctx, module, vars)?;
    Ok(direct == tv.scaled(&coeff_eta(ctx, vars)?))
}

/// Direct sum equals the rank recurrence.
pub fn check_method_agreement(ctx: &ScalarContext, module: &Arc<Module>, vars: &TypedVariables) -> Result<bool> {
    Ok(direct_modified_weight(ctx, module, vars)? == recurrence_modified_weight(ctx, module, vars)?)
}

/// Sum over all splits `I_1 + I_2` of the variables of
/// `Phi-tilde * lambdas * w_1(t_{I_1}) (x) w_2(t_{I_2})`.
pub fn coproduct_rhs(
    ctx: &ScalarContext,
    m1: &Module,
    m2: &Module,
    vars: &TypedVariables,
) -> Result<VectorState> {
    check_rank(m1, vars)?;
    check_rank(m2, vars)?;
    let items = vars.items();
    let types = vars.types();
    let count = items.len();
    if count >= usize::BITS as usize {
        return Err(Error::InvalidParameter("too many variables for split enumeration".into()));
    }
    let terms: Vec<Result<VectorState>> = (0..1usize << count)
        .into_par_iter()
        .map(|mask| {
            let in_first: Vec<bool> = (0..count).map(|k| mask >> k & 1 == 1).collect();
            let first = TypedVariables::from_items(types, items.iter().zip(&in_first).filter(|p| *p.1).map(|p| p.0));
            let second = TypedVariables::from_items(types, items.iter().zip(&in_first).filter(|p| !*p.1).map(|p| p.0));
            let mut c = coeff_phi(ctx, &items, &in_first, true)?;
            for (it, &one) in items.iter().zip(&in_first) {
                c *= if one { m2.lambda(it.ty, &it.t)? } else { m1.lambda(it.ty + 1, &it.t)? };
            }
            let w1 = direct_modified_weight(ctx, m1, &first)?;
            let w2 = direct_modified_weight(ctx, m2, &second)?;
            Ok(w1.kron(&w2).scaled(&c))
        })
        .collect();
    let mut total = VectorState::zero(m1.dim() * m2.dim());
    for t in terms {
        total.add_scaled(&t?, &Rational::one());
    }
    Ok(total)
}

/// Weight on `m1 (x) m2` equals the split sum of weights on the factors.
pub fn check_coproduct(ctx: &ScalarContext, m1: &Arc<Module>, m2: &Arc<Module>, vars: &TypedVariables) -> Result<bool> {
    let both = tensor_module(ctx, &[Arc::clone(m1), Arc::clone(m2)])?;
    Ok(direct_modified_weight(ctx, &both, vars)? == coproduct_rhs(ctx, m1, m2, vars)?)
}

/// The coproduct identity through both bracketings of a three-fold product,
/// plus equality of the two bracketed weights.
pub fn check_coproduct_associativity(
    ctx: &ScalarContext,
    m1: &Arc<Module>,
    m2: &Arc<Module>,
    m3: &Arc<Module>,
    vars: &TypedVariables,
) -> Result<bool> {
    let left = tensor_module(ctx, &[Arc::clone(m1), Arc::clone(m2)])?;
    let right = tensor_module(ctx, &[Arc::clone(m2), Arc::clone(m3)])?;
    let left_total = tensor_module(ctx, &[Arc::clone(&left), Arc::clone(m3)])?;
    let right_total = tensor_module(ctx, &[Arc::clone(m1), Arc::clone(&right)])?;
    let lhs = coproduct_rhs(ctx, &left, m3, vars)?;
    let rhs = coproduct_rhs(ctx, m1, &right, vars)?;
    Ok(lhs == rhs
        && lhs == direct_modified_weight(ctx, &left_total, vars)?
        && rhs == direct_modified_weight(ctx, &right_total, vars)?)
}

/// `w(sigma . t) * pullback = w(t)` for the plain weight and a type-preserving `sigma`.
pub fn check_qsymmetry(
    ctx: &ScalarContext,
    module: &Module,
    vars: &TypedVariables,
    sigma: &[Vec<usize>],
) -> Result<bool> {
    let moved = vars.permuted(sigma)?;
    let base = plain_weight(ctx, module, vars)?;
    let other = plain_weight(ctx, module, &moved)?;
    Ok(other.scaled(&pullback_weight(ctx, sigma, vars)?) == base)
}
