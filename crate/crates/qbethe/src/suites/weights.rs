use std::sync::Arc;

use serde_json::{json, Value};

use super::{compositions, factors_for, stream, vector_tensor, Tally, VerifyConfig};
use crate::combinat::{coeff_eta, pullback_weight, TypedVariables};
use crate::error::Result;
use crate::repr::{build_module, tensor_module, Module};
use crate::rmatrix::Variant;
use crate::scalar::ScalarContext;
use crate::weightfn::{
    coproduct_rhs, direct_modified_weight, generator_weight, plain_weight, recurrence_modified_weight,
    trace_product, tv_weight,
};

fn ids(n: &[usize]) -> Vec<u64> {
    n.iter().map(|&x| x as u64).collect()
}

fn sample_for(ctx: &ScalarContext, module: &Module, counts: &[usize], tag: u64) -> TypedVariables {
    let mut parts = ids(counts);
    parts.push(module.n() as u64);
    TypedVariables::sample(ctx, counts, &module.evaluation_points(), stream(tag, &parts))
}

fn inputs(module: &Module, counts: &[usize], vars: &TypedVariables) -> Value {
    json!({
        "module": module.recipe(), "variant": module.variant(), "N": module.n(), "n": counts, "t": vars,
    })
}

/// Excitation vectors for rank `n` within the run's bounds.
fn excitations(cfg: &VerifyConfig, n: usize, max: usize) -> Vec<Vec<usize>> {
    compositions(n - 1, max.min(cfg.max_excitations))
        .into_iter()
        .filter(|c| c.iter().any(|&x| x > 0))
        .collect()
}

pub(super) fn method_agreement(cfg: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for &seed in &cfg.seeds {
        let ctx = cfg.ctx(seed)?;
        for variant in Variant::ALL {
            let mut cases: Vec<(usize, Vec<usize>)> = Vec::new();
            for n in cfg.ranks().filter(|&n| n <= 3) {
                cases.extend(excitations(cfg, n, usize::MAX).into_iter().map(|c| (n, c)));
            }
            if cfg.n >= 4 && cfg.max_excitations >= 3 {
                cases.push((4, vec![1, 1, 1]));
            }
            for (n, counts) in cases {
                let m = factors_for(n, &counts);
                let module = vector_tensor(&ctx, n, variant, m, stream(30, &[n as u64, m as u64]))?;
                let vars = sample_for(&ctx, &module, &counts, 31);
                tally.compare(
                    "direct = recurrence",
                    seed,
                    inputs(&module, &counts, &vars),
                    direct_modified_weight(&ctx, &module, &vars),
                    recurrence_modified_weight(&ctx, &module, &vars),
                );
            }
        }
    }
    Ok(())
}

pub(super) fn coincidence(cfg: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for &seed in &cfg.seeds {
        let ctx = cfg.ctx(seed)?;
        for n in cfg.ranks().filter(|&n| n <= 3) {
            for counts in excitations(cfg, n, 4) {
                let m = factors_for(n, &counts);
                let module = vector_tensor(&ctx, n, Variant::Twisted, m, stream(32, &[n as u64, m as u64]))?;
                let vars = sample_for(&ctx, &module, &counts, 33);
                let rhs = tv_weight(&ctx, &module, &vars)
                    .and_then(|w| Ok(w.scaled(&coeff_eta(&ctx, &vars)?)));
                tally.compare(
                    "direct = eta * trace",
                    seed,
                    inputs(&module, &counts, &vars),
                    direct_modified_weight(&ctx, &module, &vars),
                    rhs,
                );
            }
        }
    }
    Ok(())
}

pub(super) fn coproduct(cfg: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for &seed in &cfg.seeds {
        let ctx = cfg.ctx(seed)?;
        for variant in Variant::ALL {
            for n in cfg.ranks().filter(|&n| n <= 3) {
                let a = vector_tensor(&ctx, n, variant, 1, stream(34, &[n as u64, 1]))?;
                let b = vector_tensor(&ctx, n, variant, 1, stream(34, &[n as u64, 2]))?;
                let both = tensor_module(&ctx, &[Arc::clone(&a), Arc::clone(&b)])?;
                for counts in excitations(cfg, n, 3) {
                    let vars = sample_for(&ctx, &both, &counts, 35);
                    tally.compare(
                        "w(V1 (x) V2) = split sum",
                        seed,
                        inputs(&both, &counts, &vars),
                        direct_modified_weight(&ctx, &both, &vars),
                        coproduct_rhs(&ctx, &a, &b, &vars),
                    );
                }
            }
            let n = if cfg.n >= 3 { 3 } else { 2 };
            let counts = if n == 3 { vec![1, 1] } else { vec![2] };
            let parts: Vec<Arc<Module>> = (0..3)
                .map(|i| vector_tensor(&ctx, n, variant, 1, stream(36, &[n as u64, i])))
                .collect::<Result<_>>()?;
            let left = tensor_module(&ctx, &parts[..2])?;
            let right = tensor_module(&ctx, &parts[1..])?;
            let total = tensor_module(&ctx, &[Arc::clone(&left), Arc::clone(&parts[2])])?;
            let vars = sample_for(&ctx, &total, &counts, 37);
            let info = inputs(&total, &counts, &vars);
            tally.compare(
                "split after factor 1 = split after factor 2",
                seed,
                info.clone(),
                coproduct_rhs(&ctx, &parts[0], &right, &vars),
                coproduct_rhs(&ctx, &left, &parts[2], &vars),
            );
            tally.compare(
                "w(V1 (x) V2 (x) V3) = split after factor 2",
                seed,
                info,
                direct_modified_weight(&ctx, &total, &vars),
                coproduct_rhs(&ctx, &left, &parts[2], &vars),
            );
        }
    }
    Ok(())
}

pub(super) fn qsymmetry(cfg: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for &seed in &cfg.seeds {
        let ctx = cfg.ctx(seed)?;
        for variant in Variant::ALL {
            for n in cfg.ranks().filter(|&n| n <= 3) {
                for counts in excitations(cfg, n, 4) {
                    let m = factors_for(n, &counts);
                    let module = vector_tensor(&ctx, n, variant, m, stream(38, &[n as u64, m as u64]))?;
                    let vars = sample_for(&ctx, &module, &counts, 39);
                    let base = plain_weight(&ctx, &module, &vars);
                    for (a, &c) in counts.iter().enumerate() {
                        for l in 0..c.saturating_sub(1) {
                            let sigma: Vec<Vec<usize>> = counts
                                .iter()
                                .enumerate()
                                .map(|(b, &cb)| {
                                    let mut p: Vec<usize> = (0..cb).collect();
                                    if b == a {
                                        p.swap(l, l + 1);
                                    }
                                    p
                                })
                                .collect();
                            let moved = vars.permuted(&sigma).and_then(|t| {
                                let w = plain_weight(&ctx, &module, &t)?;
                                Ok(w.scaled(&pullback_weight(&ctx, &sigma, &vars)?))
                            });
                            let mut info = inputs(&module, &counts, &vars);
                            info["sigma"] = json!(sigma);
                            tally.compare("w(sigma t) * pullback = w(t)", seed, info, moved, base.clone());
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

pub(super) fn generator(cfg: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for &seed in &cfg.seeds {
        let ctx = cfg.ctx(seed)?;
        let z = ctx.sample_generic_stream(1, &[], stream(40, &[]))[0].clone();
        // Negative Lambda_1 - Lambda_2 keeps every raising coefficient nonzero.
        let (l2, l1) = (1 + (seed % 3) as i64, -2 - (seed % 4) as i64);
        let mut cases: Vec<(usize, String, Vec<usize>)> = Vec::new();
        for n in cfg.ranks() {
            for counts in excitations(cfg, n, 3) {
                cases.push((n, format!("vec@{z}"), counts));
            }
        }
        for k in 1..=3usize.min(cfg.max_excitations.max(1)) {
            cases.push((2, format!("verma2({l1},{l2},4,{z})"), vec![k]));
        }
        for variant in Variant::ALL {
            for (n, recipe, counts) in &cases {
                let module = build_module(&ctx, *n, variant, recipe)?;
                let vars = sample_for(&ctx, &module, counts, 41);
                tally.compare(
                    "generator word formula = L-entry formula",
                    seed,
                    inputs(&module, counts, &vars),
                    generator_weight(&ctx, &module, &vars),
                    direct_modified_weight(&ctx, &module, &vars),
                );
            }
        }
    }
    Ok(())
}

pub(super) fn tv_original(cfg: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for &seed in &cfg.seeds {
        let ctx = cfg.ctx(seed)?;
        for n in cfg.ranks().filter(|&n| n <= 3) {
            for counts in excitations(cfg, n, 3) {
                let m = factors_for(n, &counts);
                let module = vector_tensor(&ctx, n, Variant::Original, m, stream(42, &[n as u64, m as u64]))?;
                let vars = sample_for(&ctx, &module, &counts, 43);
                let rhs = trace_product(&ctx, &module, &vars)
                    .and_then(|(w, _)| Ok(w.scaled(&coeff_eta(&ctx, &vars)?)));
                tally.compare(
                    "direct = eta * trace (original R-matrix)",
                    seed,
                    inputs(&module, &counts, &vars),
                    direct_modified_weight(&ctx, &module, &vars),
                    rhs,
                );
            }
        }
    }
    Ok(())
}
