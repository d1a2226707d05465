use rand::Rng;
use serde_json::json;

use super::{compositions, stream, Tally, VerifyConfig};
use crate::combinat::{
    coeff_calz, coeff_calz_factored, coeff_y, coeff_y_alt, enumerate_admissible, phi, q_symmetrize,
    q_symmetrize_renorm, TypedVariables,
};
use crate::error::Result;
use crate::scalar::{Rational, ScalarContext};

const ENUM_MAX: usize = 5;
const SERIES_MAX: usize = 4;

/// Every triangular matrix with entries bounded by its column count, kept if admissible.
fn brute_force(n: &[usize]) -> Vec<Vec<usize>> {
    let k = n.len();
    let cells: Vec<(usize, usize)> = (1..=k).flat_map(|b| (1..=b).map(move |a| (b, a))).collect();
    let mut out = Vec::new();
    let mut entries = vec![0usize; cells.len()];
    loop {
        let at = |b: usize, a: usize| entries[cells.iter().position(|&c| c == (b, a)).expect("cell")];
        let rows_ok = (1..=k).all(|b| (2..=b).all(|a| at(b, a - 1) <= at(b, a)));
        let cols_ok = (1..=k).all(|a| (a..=k).map(|b| at(b, a)).sum::<usize>() == n[a - 1]);
        if rows_ok && cols_ok {
            out.push(entries.clone());
        }
        // Odometer step, last cell fastest, so the output is lexicographic.
        let mut i = cells.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if entries[i] < n[cells[i].1 - 1] {
                entries[i] += 1;
                break;
            }
            entries[i] = 0;
        }
    }
}

pub(super) fn admissible(cfg: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    let seed = cfg.seeds.first().copied().unwrap_or(0);
    for k in 1..=cfg.n.clamp(2, 4) - 1 {
        for n in compositions(k, ENUM_MAX) {
            let listed: Vec<Vec<usize>> = enumerate_admissible(&n).iter().map(|s| s.row_major()).collect();
            let sound = enumerate_admissible(&n).iter().all(|s| {
                s.column_sums() == n && (1..=k).all(|b| s.row(b).windows(2).all(|w| w[0] <= w[1]))
            });
            tally.truth("admissible invariants", seed, json!({ "n": n }), Ok(sound));
            tally.compare("enumeration = brute-force filter", seed, json!({ "n": n }), Ok(listed), Ok(brute_force(&n)));
        }
    }
    Ok(())
}

pub(super) fn rat_y(cfg: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for &seed in &cfg.seeds {
        let ctx = cfg.ctx(seed)?;
        for j in 0..20u64 {
            let k = (j % 5) as usize;
            let pts = ctx.sample_generic_stream(2 * k, &[], stream(20, &[j]));
            let (us, vs) = pts.split_at(k);
            for twisted in [false, true] {
                let inputs = json!({ "u": us, "v": vs, "twisted": twisted });
                tally.compare(
                    "Y first form = Y second form",
                    seed,
                    inputs,
                    coeff_y(&ctx, us, vs, twisted),
                    coeff_y_alt(&ctx, us, vs, twisted),
                );
            }
        }
    }
    Ok(())
}

pub(super) fn gen_ser(cfg: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for &seed in &cfg.seeds {
        let ctx = cfg.ctx(seed)?;
        for k in [2usize, 3] {
            for n in compositions(k, SERIES_MAX) {
                let vars = TypedVariables::sample(&ctx, &n, &[], stream(21, &n.iter().map(|&x| x as u64).collect::<Vec<_>>()));
                for s in enumerate_admissible(&n) {
                    for twisted in [false, true] {
                        let inputs = json!({ "n": n, "s": s, "t": vars, "twisted": twisted });
                        tally.compare(
                            "closed product = Z X factorization",
                            seed,
                            inputs,
                            coeff_calz(&ctx, &s, &vars, twisted),
                            coeff_calz_factored(&ctx, &s, &vars, twisted),
                        );
                    }
                }
            }
        }
    }
    Ok(())
}

fn small_coefficients(ctx: &ScalarContext, count: usize, id: u64) -> Vec<Rational> {
    let mut rng = ctx.rng(stream(22, &[id]));
    (0..count).map(|_| Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=7))).collect()
}

/// Random symmetric polynomial: constant, power sums of degree 1 and 2, and the top elementary one.
fn symmetric_poly(c: &[Rational], t: &[Rational]) -> Rational {
    let p1: Rational = t.iter().cloned().sum();
    let p2: Rational = t.iter().map(|x| x * x).sum();
    let e: Rational = t.iter().cloned().product();
    &c[0] + &c[1] * p1 + &c[2] * p2 + &c[3] * e
}

pub(super) fn po_sim(cfg: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for &seed in &cfg.seeds {
        let ctx = cfg.ctx(seed)?;
        for n in 2..=SERIES_MAX {
            let c = small_coefficients(&ctx, 4, n as u64);
            let vars = TypedVariables::sample(&ctx, &[n], &[], stream(23, &[n as u64]));
            let g = |t: &TypedVariables| Ok(symmetric_poly(&c, t.of_type(0)));
            let lhs = q_symmetrize_renorm(&ctx, &vars, Rational::zero(), |t| {
                Ok(g(t)? / phi(&ctx, t)?)
            })
            .map(|x| x / Rational::from_int((1..=n as i64).product()));
            let rhs = q_symmetrize_renorm(&ctx, &vars, Rational::zero(), g).map(|x| x / ctx.q_factorial(n));
            let inputs = json!({ "n": n, "coefficients": c, "t": vars });
            tally.compare("Sym(G / phi) / n! = Sym(G) / [n]!", seed, inputs, lhs, rhs);
        }
    }
    Ok(())
}

pub(super) fn exa3(cfg: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    let shapes: [&[usize]; 6] = [&[2], &[3], &[4], &[2, 1], &[2, 2], &[1, 3]];
    for &seed in &cfg.seeds {
        let ctx = cfg.ctx(seed)?;
        for (id, counts) in shapes.iter().enumerate() {
            let total: usize = counts.iter().sum();
            let c = small_coefficients(&ctx, total + 1, 100 + id as u64);
            let vars = TypedVariables::sample(&ctx, counts, &[], stream(24, &[id as u64]));
            // Deliberately non-symmetric: each slot carries its own power.
            let g = |t: &TypedVariables| -> Result<Rational> {
                let mut acc = c[total].clone();
                let mut idx = 0;
                for (a, ts) in t.as_nested().iter().enumerate() {
                    for (l, x) in ts.iter().enumerate() {
                        acc += &c[idx] * x.pow((a + l + 1) as i64);
                        idx += 1;
                    }
                }
                Ok(acc)
            };
            let h = |t: &TypedVariables| q_symmetrize(&ctx, t, Rational::zero(), g);
            let twice = q_symmetrize(&ctx, &vars, Rational::zero(), h);
            let weight: i64 = counts.iter().map(|&n| (1..=n as i64).product::<i64>()).product();
            let once = h(&vars).map(|x| x * Rational::from_int(weight));
            let inputs = json!({ "counts": counts, "coefficients": c, "t": vars });
            tally.compare("Sym(Sym G) = prod n_a! Sym G", seed, inputs, twice, once);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_force_small() {
        assert_eq!(brute_force(&[1, 1]), vec![vec![0, 1, 1], vec![1, 0, 1]]);
        assert_eq!(brute_force(&[0, 0]), vec![vec![0, 0, 0]]);
    }
}
