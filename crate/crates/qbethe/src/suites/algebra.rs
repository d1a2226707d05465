use std::sync::Arc;

use serde_json::{json, Value};

use super::{factor_cap, stream, vector_tensor, Fault, Tally, VerifyConfig};
use crate::error::Result;
use crate::linalg::{AuxMatrix, Operator};
use crate::repr::{
    check_rll, embedded_module, evaluation_module, gauss_decompose, twist_relation_holds, GlnGenerators, Sign,
    ZeroModes,
};
use crate::rmatrix::{build_r, unitarity_product_with, yang_baxter_sides_with, SpectralMatrix, Variant};
use crate::scalar::{Rational, ScalarContext};

fn aux_json(m: &AuxMatrix) -> Value {
    serde_json::to_value(m.to_block().to_dense()).expect("matrix serializes")
}

fn r_builder<'a>(
    ctx: &'a ScalarContext,
    cfg: &'a VerifyConfig,
    variant: Variant,
    n: usize,
) -> impl Fn(&Rational, &Rational) -> Result<SpectralMatrix> + 'a {
    move |u, v| {
        let mut r = build_r(ctx, variant, n, u, v)?;
        if cfg.fault == Some(Fault::REntry) {
            let bumped = r.get(0, 1, 1, 0) + Rational::new(1, 3);
            r.set(0, 1, 1, 0, bumped);
        }
        Ok(r)
    }
}

pub(super) fn yang_baxter(cfg: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for &seed in &cfg.seeds {
        let ctx = cfg.ctx(seed)?;
        for variant in Variant::ALL {
            for n in cfg.ranks() {
                for k in 0..cfg.samples {
                    let u = ctx.sample_generic_stream(3, &[], stream(1, &[n as u64, k as u64]));
                    let inputs = json!({ "variant": variant, "N": n, "u": u });
                    let sides = yang_baxter_sides_with(n, r_builder(&ctx, cfg, variant, n), &u[0], &u[1], &u[2]);
                    let (lhs, rhs) = match sides {
                        Ok((l, r)) => (Ok(l), Ok(r)),
                        Err(e) => (Err(e.clone()), Err(e)),
                    };
                    tally.compare_operators("R12 R13 R23 = R23 R13 R12", seed, inputs, lhs, rhs);
                }
            }
        }
    }
    Ok(())
}

pub(super) fn unitarity(cfg: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for &seed in &cfg.seeds {
        let ctx = cfg.ctx(seed)?;
        for variant in Variant::ALL {
            for n in cfg.ranks() {
                for k in 0..cfg.samples {
                    let u = ctx.sample_generic_stream(2, &[], stream(2, &[n as u64, k as u64]));
                    let inputs = json!({ "variant": variant, "N": n, "u": u });
                    let product = unitarity_product_with(r_builder(&ctx, cfg, variant, n), &u[0], &u[1]);
                    tally.compare_operators("R12(u1,u2) R21(u2,u1) = 1", seed, inputs, product, Ok(Operator::identity(n * n)));
                }
            }
        }
    }
    Ok(())
}

pub(super) fn rll(cfg: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for &seed in &cfg.seeds {
        let ctx = cfg.ctx(seed)?;
        for variant in Variant::ALL {
            for n in cfg.ranks() {
                let inputs = json!({ "variant": variant, "N": n });
                let gens = GlnGenerators::vector_rep(&ctx, n, variant);
                tally.truth(
                    "generator relations on the vector representation",
                    seed,
                    inputs.clone(),
                    gens.and_then(|g| g.check_relations(&ctx)).map(|()| true),
                );
                if cfg.fault == Some(Fault::RotatedBasis) {
                    let z = ctx.sample_generic_stream(1, &[], stream(3, &[n as u64]))[0].clone();
                    let shear = Operator::identity(n).add(&Operator::unit(n, 1, 0).scaled(&Rational::new(2, 5)));
                    let built = GlnGenerators::vector_rep(&ctx, n, variant)
                        .and_then(|g| g.conjugated(&shear))
                        .and_then(|g| evaluation_module(&ctx, Arc::new(g), &z));
                    tally.truth("evaluation module in a rotated basis", seed, inputs.clone(), built.map(|_| true));
                }
                for m in 1..=3usize.min(factor_cap(n)) {
                    if n.pow(m as u32) > 81 {
                        continue;
                    }
                    let module = vector_tensor(&ctx, n, variant, m, stream(4, &[n as u64, m as u64]))?;
                    let uv = ctx.sample_generic_stream(2, &module.evaluation_points(), stream(5, &[n as u64, m as u64]));
                    for sign in [Sign::Plus, Sign::Minus] {
                        let inputs = json!({
                            "variant": variant, "N": n, "module": module.recipe(),
                            "sign": if sign == Sign::Plus { "+" } else { "-" }, "u": uv,
                        });
                        tally.truth("RLL", seed, inputs, check_rll(&ctx, &module, sign, &uv[0], &uv[1]));
                    }
                }
            }
        }
    }
    Ok(())
}

pub(super) fn twist(cfg: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for &seed in &cfg.seeds {
        let ctx = cfg.ctx(seed)?;
        for n in cfg.ranks() {
            let orig = GlnGenerators::vector_rep(&ctx, n, Variant::Original)?;
            let tw = GlnGenerators::vector_rep(&ctx, n, Variant::Twisted)?;
            let mut modes = ZeroModes::of(&ctx, &orig);
            if cfg.fault == Some(Fault::L0Plus) {
                let bumped = modes.plus.get(1, 0).scaled(&Rational::from_int(2));
                modes.plus.set(1, 0, bumped);
            }
            let twisted = ZeroModes::of(&ctx, &tw);
            for k in 0..cfg.samples.min(5) {
                let zu = ctx.sample_generic_stream(2, &[], stream(6, &[n as u64, k as u64]));
                let inputs = json!({ "N": n, "z": zu[0], "u": zu[1] });
                tally.truth(
                    "twisted L = (U-)^-1 L (U+)^-1",
                    seed,
                    inputs,
                    twist_relation_holds(&modes, &twisted, &zu[0], &zu[1]),
                );
            }
        }
    }
    Ok(())
}

pub(super) fn gauss(cfg: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for &seed in &cfg.seeds {
        let ctx = cfg.ctx(seed)?;
        for variant in Variant::ALL {
            for n in cfg.ranks() {
                for m in [1usize, 2, 3] {
                    if n.pow(m as u32) > 81 {
                        continue;
                    }
                    let module = vector_tensor(&ctx, n, variant, m, stream(7, &[n as u64, m as u64]))?;
                    let uv = ctx.sample_generic_stream(2, &module.evaluation_points(), stream(8, &[n as u64, m as u64]));
                    let inputs = json!({ "variant": variant, "N": n, "module": module.recipe(), "u": uv });
                    let back = gauss_decompose(&module, &uv[0]).map(|f| aux_json(&f.reconstruct()));
                    let orig = module.l_matrix(Sign::Plus, &uv[0]).map(|l| aux_json(&l));
                    tally.compare("(1+F) K (1+E) = L(u)", seed, inputs.clone(), back, orig);
                    let embedded = embedded_module(&module);
                    tally.truth(
                        "RLL on the embedded module",
                        seed,
                        inputs,
                        embedded.and_then(|e| check_rll(&ctx, &e, Sign::Plus, &uv[0], &uv[1])),
                    );
                }
            }
        }
    }
    Ok(())
}
