use std::collections::BTreeMap;

use super::check_rank;
use crate::combinat::TypedVariables;
use crate::error::{Error, Result};
use crate::linalg::VectorState;
use crate::repr::Module;
use crate::rmatrix::{build_r, SpectralMatrix, Variant};
use crate::scalar::{Rational, ScalarContext};

/// Sparse vector on `(C^N)^{(x) M}` keyed by leg indices.
type LegVector = BTreeMap<Vec<usize>, Rational>;

/// Apply `r` acting on legs `(first, second)`.
fn apply_two_leg(r: &SpectralMatrix, first: usize, second: usize, x: &LegVector) -> LegVector {
    let n = r.n();
    let mut out = LegVector::new();
    for (idx, val) in x {
        let (m, nn) = (idx[first], idx[second]);
        for i in 0..n {
            for k in 0..n {
                let c = r.get(i, k, m, nn);
                if c.is_zero() {
                    continue;
                }
                let mut key = idx.clone();
                key[first] = i;
                key[second] = k;
                let slot = out.entry(key).or_insert_with(Rational::zero);
                *slot += c * val;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Trace construction with the ordered R-matrix product; returns the vector and the number of paths.
pub(crate) fn tv_weight_counted(
    ctx: &ScalarContext,
    module: &Module,
    vars: &TypedVariables,
) -> Result<(VectorState, usize)> {
    if module.variant() != Variant::Twisted {
        return Err(Error::Variant("trace construction is defined for the twisted variant only".into()));
    }
    trace_product(ctx, module, vars)
}

/// The trace construction with the module's own R-matrix, any variant.
pub(crate) fn trace_product(
    ctx: &ScalarContext,
    module: &Module,
    vars: &TypedVariables,
) -> Result<(VectorState, usize)> {
    check_rank(module, vars)?;
    let items = vars.items();
    let legs = items.len();
    if legs == 0 {
        return Ok((module.singular_vector().clone(), 1));
    }
    let n = module.n();
    // Factors left to right are (j, i), j > i, in descending lexicographic
    // order; they act on the column vector from the right.
    let mut pairs: Vec<(usize, usize)> = (0..legs).flat_map(|j| (0..j).map(move |i| (j, i))).collect();
    pairs.sort_unstable_by(|a, b| b.cmp(a));
    let cols: Vec<usize> = items.iter().map(|it| it.ty + 1).collect();
    let mut x = LegVector::from([(cols, Rational::one())]);
    for &(j, i) in pairs.iter().rev() {
        let r = build_r(ctx, module.variant(), n, &items[j].t, &items[i].t)?;
        x = apply_two_leg(&r, j, i, &x);
    }
    let mut total = VectorState::zero(module.dim());
    let paths = x.len();
    for (mid, coeff) in &x {
        let ops: Vec<(usize, usize, Rational)> =
            items.iter().zip(mid).map(|(it, &m)| (it.ty, m, it.t.clone())).collect();
        total.add_scaled(&module.apply_chain(&ops, module.singular_vector())?, coeff);
    }
    Ok((total, paths))
}

/// Trace of the monodromy product against the simple-root element of each leg (twisted variant only).
pub fn tv_weight(ctx: &ScalarContext, module: &Module, vars: &TypedVariables) -> Result<VectorState> {
    tv_weight_counted(ctx, module, vars).map(|(v, _)| v)
}
