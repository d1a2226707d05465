//! Scalar coefficient series.
//!
//! Segment bounds `r`, `l` and splits `s` are per-type slices indexed by the
//! 0-based type; variable indices inside the formulas are 1-based and are
//! shifted when reading [`TypedVariables`].

use super::admissible::AdmissibleMatrix;
use super::variables::{Item, TypedVariables};
use crate::error::{Error, Result};
use crate::scalar::{Rational, ScalarContext};

fn t(vars: &TypedVariables, a: usize, l: usize) -> &Rational {
    vars.get(a - 1, l - 1)
}

fn ratio_pole(x: &Rational) -> Result<Rational> {
    Rational::one().checked_div(&(Rational::one() - x), "1/(1 - v/u)")
}

fn check_lengths(us: &[Rational], vs: &[Rational]) -> Result<()> {
    if us.len() != vs.len() {
        return Err(Error::Length(format!("Y needs equal lengths, got {} and {}", us.len(), vs.len())));
    }
    Ok(())
}

/// `Y(u; v)` in its first product form; the twisted series carries an extra `prod v_m/u_m`.
pub fn coeff_y(ctx: &ScalarContext, us: &[Rational], vs: &[Rational], twisted: bool) -> Result<Rational> {
    check_lengths(us, vs)?;
    let mut y = Rational::one();
    for m in 0..us.len() {
        let x = &vs[m] / &us[m];
        y *= ratio_pole(&x)?;
        if twisted {
            y *= x;
        }
        for v in &vs[m + 1..] {
            y *= ctx.g(&(v / &us[m]))?;
        }
    }
    Ok(y)
}

/// `Y(u; v)` in its second product form.
pub fn coeff_y_alt(ctx: &ScalarContext, us: &[Rational], vs: &[Rational], twisted: bool) -> Result<Rational> {
    check_lengths(us, vs)?;
    let mut y = Rational::one();
    for m in 0..us.len() {
        let x = &vs[m] / &us[m];
        y *= ratio_pole(&x)?;
        if twisted {
            y *= x;
        }
        for u in &us[..m] {
            y *= ctx.g(&(&vs[m] / u))?;
        }
    }
    Ok(y)
}

fn check_segments(r: &[usize], l: &[usize], s: &[usize], vars: &TypedVariables) -> Result<()> {
    let k = vars.types();
    if r.len() != k || l.len() != k || s.len() != k {
        return Err(Error::Length(format!("segment data must have {k} entries")));
    }
    for a in 0..k {
        if l[a] > r[a] || r[a] > vars.of_type(a).len() {
            return Err(Error::Index(format!("segment [{}, {}] of type {a}", r[a], l[a])));
        }
    }
    Ok(())
}

/// `Z_s(t_[r, l])`: product of `g(t^a_l / t^{a+1}_l')` over the windows
/// `r_a - s_a < l <= r_a`, `l_{a+1} < l' <= r_{a+1} - s_{a+1}`.
pub fn coeff_z(ctx: &ScalarContext, r: &[usize], l: &[usize], s: &[usize], vars: &TypedVariables) -> Result<Rational> {
    check_segments(r, l, s, vars)?;
    if s.iter().zip(r.iter().zip(l)).any(|(&sa, (&ra, &la))| sa > ra - la) {
        return Err(Error::Admissibility(format!("split {s:?} exceeds segments")));
    }
    let k = vars.types();
    let mut z = Rational::one();
    for a in 1..k {
        for ell in r[a - 1] - s[a - 1] + 1..=r[a - 1] {
            for lp in l[a] + 1..=r[a] - s[a] {
                z *= ctx.g(&(t(vars, a, ell) / t(vars, a + 1, lp)))?;
            }
        }
    }
    Ok(z)
}

/// Product of `Y` factors over the windows of types `1..j` (1-based), no admissibility check.
pub(crate) fn x_product(
    ctx: &ScalarContext,
    r: &[usize],
    s: &[usize],
    j: usize,
    vars: &TypedVariables,
    twisted: bool,
) -> Result<Rational> {
    let mut x = Rational::one();
    for a in 1..j {
        let sa = s[a - 1];
        let us: Vec<Rational> = (1..=sa).map(|m| t(vars, a + 1, r[a] - s[a] + m).clone()).collect();
        let vs: Vec<Rational> = (1..=sa).map(|m| t(vars, a, r[a - 1] - sa + m).clone()).collect();
        x *= coeff_y(ctx, &us, &vs, twisted)?;
    }
    Ok(x)
}

/// `X(t_[r, r - s])` for the segments `[r, l]`; `j` is the last type with a nonempty segment.
pub fn coeff_x(
    ctx: &ScalarContext,
    r: &[usize],
    l: &[usize],
    s: &[usize],
    vars: &TypedVariables,
    twisted: bool,
) -> Result<Rational> {
    check_segments(r, l, s, vars)?;
    let j = (1..=r.len()).rev().find(|&a| r[a - 1] != l[a - 1]).unwrap_or(1);
    for a in 1..=j {
        if s[a - 1] > r[a - 1] - l[a - 1] {
            return Err(Error::Admissibility(format!("s_{a} exceeds its segment")));
        }
    }
    if s[..j].windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Admissibility(format!("split {s:?} is not non-decreasing")));
    }
    if s[j - 1] != r[j - 1] - l[j - 1] {
        return Err(Error::Admissibility(format!("s_{j} must fill its segment")));
    }
    x_product(ctx, r, s, j, vars, twisted)
}

/// The closed product `calZ_s` (`twisted` selects the ratio-numerator form).
pub fn coeff_calz(ctx: &ScalarContext, s: &AdmissibleMatrix, vars: &TypedVariables, twisted: bool) -> Result<Rational> {
    let k = s.k();
    let mut z = Rational::one();
    for b in 2..=k {
        for a in 1..b {
            let pa = s.p_tilde(a, b)?;
            let pb = s.p_tilde(a + 1, b)?;
            for ell in 1..=s.s(b, a) {
                let ta = t(vars, a, ell + pa);
                let x = ta / t(vars, a + 1, ell + pb);
                z *= ratio_pole(&x)?;
                if twisted {
                    z *= x;
                }
                for lp in 1..ell + pb {
                    z *= ctx.g(&(ta / t(vars, a + 1, lp)))?;
                }
            }
        }
    }
    Ok(z)
}

/// `calZ_s` rebuilt as the product of `Z` and `X` series over the rows of `s`.
pub fn coeff_calz_factored(
    ctx: &ScalarContext,
    s: &AdmissibleMatrix,
    vars: &TypedVariables,
    twisted: bool,
) -> Result<Rational> {
    let k = s.k();
    let n = vars.counts();
    let rest = |j: usize| -> Vec<usize> { n.iter().zip(s.p_vec(j)).map(|(na, p)| na - p).collect() };
    let row = |j: usize| -> Vec<usize> { (1..=k).map(|a| if a <= j { s.s(j, a) } else { 0 }).collect() };
    let mut z = Rational::one();
    for j in 3..=k {
        z *= coeff_z(ctx, &rest(j + 1), &vec![0; k], &row(j), vars)?;
    }
    for j in 2..=k {
        z *= coeff_x(ctx, &rest(j + 1), &rest(j), &row(j), vars, twisted)?;
    }
    Ok(z)
}

/// `eta = prod_{a<b} prod_{i,j} (q t^b_j - q^-1 t^a_i)/(t^b_j - t^a_i)`.
pub fn coeff_eta(ctx: &ScalarContext, vars: &TypedVariables) -> Result<Rational> {
    let k = vars.types();
    let mut e = Rational::one();
    for a in 0..k {
        for b in a + 1..k {
            for tj in vars.of_type(b) {
                for ti in vars.of_type(a) {
                    e *= (ctx.q() * tj - ctx.q_inv() * ti).checked_div(&(tj - ti), "eta")?;
                }
            }
        }
    }
    Ok(e)
}

/// `Phi` (plain) or `Phi-tilde` (modified) for the split of `items` with
/// `in_first[k]` marking membership of `I_1`.
pub fn coeff_phi(ctx: &ScalarContext, items: &[Item], in_first: &[bool], modified: bool) -> Result<Rational> {
    if items.len() != in_first.len() {
        return Err(Error::Length("split mask must match the multiset".into()));
    }
    let ty = |k: usize| items[k].ty as i64;
    let mut c = Rational::one();
    for i in 0..items.len() {
        for j in 0..items.len() {
            let (ti, tj) = (&items[i].t, &items[j].t);
            if modified && in_first[i] && !in_first[j] {
                c *= ctx.beta(ti, tj, ty(i), ty(j))?;
            }
            if !in_first[i] && in_first[j] && i < j {
                c *= if modified {
                    ctx.tilde_gamma(ti, tj, ty(i), ty(j))?
                } else {
                    ctx.gamma(ti, tj, ty(i), ty(j))?
                };
            }
        }
    }
    Ok(c)
}

/// `prod_{i < j, sigma(j) < sigma(i)} gamma(t_i, t_j)` for a type-preserving `sigma`.
pub fn pullback_weight(ctx: &ScalarContext, sigma: &[Vec<usize>], vars: &TypedVariables) -> Result<Rational> {
    if sigma.len() != vars.types() {
        return Err(Error::Length("permutation must cover every type".into()));
    }
    let mut w = Rational::one();
    for (a, s) in sigma.iter().enumerate() {
        if !super::variables::is_permutation(s, vars.of_type(a).len()) {
            return Err(Error::InvalidParameter(format!("not a permutation of type {a}: {s:?}")));
        }
        let ts = vars.of_type(a);
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                if s[j] < s[i] {
                    w *= ctx.gamma(&ts[i], &ts[j], a as i64, a as i64)?;
                }
            }
        }
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::enumerate_admissible;

    fn ctx() -> ScalarContext {
        ScalarContext::new(Rational::from_int(2), 9).unwrap()
    }

    fn vars(v: &[&[(i64, i64)]]) -> TypedVariables {
        TypedVariables::new(v.iter().map(|ts| ts.iter().map(|&(p, q)| Rational::new(p, q)).collect()).collect())
    }

    #[test]
    fn y_small_cases() {
        let c = ctx();
        assert_eq!(coeff_y(&c, &[], &[], false).unwrap(), Rational::one());
        let (u, v) = (Rational::new(5, 3), Rational::new(-2, 7));
        let one = coeff_y(&c, std::slice::from_ref(&u), std::slice::from_ref(&v), false).unwrap();
        assert_eq!(one, Rational::one() / (Rational::one() - &v / &u));
        let tw = coeff_y(&c, std::slice::from_ref(&u), std::slice::from_ref(&v), true).unwrap();
        assert_eq!(tw, one * (&v / &u));
        assert!(matches!(coeff_y(&c, &[u], &[], false), Err(Error::Length(_))));
    }

    #[test]
    fn eta_sample_value() {
        let c = ctx();
        let e = coeff_eta(&c, &vars(&[&[(1, 1)], &[(3, 1)]])).unwrap();
        assert_eq!(e, Rational::new(11, 4));
        assert_eq!(coeff_eta(&c, &vars(&[&[(1, 1), (5, 1)]])).unwrap(), Rational::one());
    }

    #[test]
    fn z_windows() {
        let c = ctx();
        let v = vars(&[&[(3, 1)], &[(-5, 2)]]);
        let g = c.g(&(Rational::from_int(3) / Rational::new(-5, 2))).unwrap();
        assert_eq!(coeff_z(&c, &[1, 1], &[0, 0], &[1, 0], &v).unwrap(), g);
        assert_eq!(coeff_z(&c, &[1, 1], &[0, 0], &[0, 1], &v).unwrap(), Rational::one());
        assert_eq!(coeff_z(&c, &[1, 0], &[0, 0], &[1, 0], &v).unwrap(), Rational::one());
    }

    #[test]
    fn x_trivial_and_single_pair() {
        let c = ctx();
        let v = vars(&[&[(3, 1)], &[(-5, 2)]]);
        assert_eq!(coeff_x(&c, &[1, 0], &[0, 0], &[1, 0], &v, false).unwrap(), Rational::one());
        assert_eq!(coeff_x(&c, &[1, 1], &[0, 0], &[0, 1], &v, false).unwrap(), Rational::one());
        let y = coeff_y(&c, &[Rational::new(-5, 2)], &[Rational::from_int(3)], false).unwrap();
        assert_eq!(coeff_x(&c, &[1, 1], &[0, 0], &[1, 1], &v, false).unwrap(), y);
        assert!(matches!(
            coeff_x(&c, &[1, 1], &[0, 0], &[1, 0], &v, false),
            Err(Error::Admissibility(_))
        ));
    }

    #[test]
    fn calz_rank_two_and_three() {
        let c = ctx();
        let v2 = vars(&[&[(3, 1), (7, 5)]]);
        let s = &enumerate_admissible(&[2])[0];
        assert_eq!(coeff_calz(&c, s, &v2, false).unwrap(), Rational::one());
        let v = vars(&[&[(3, 1)], &[(-5, 2)]]);
        let all = enumerate_admissible(&[1, 1]);
        let x = Rational::from_int(3) / Rational::new(-5, 2);
        assert_eq!(coeff_calz(&c, &all[0], &v, false).unwrap(), Rational::one() / (Rational::one() - &x));
        assert_eq!(coeff_calz(&c, &all[1], &v, false).unwrap(), Rational::one());
    }

    #[test]
    fn phi_and_pullback_basics() {
        let c = ctx();
        let v = vars(&[&[(3, 1), (-7, 4)]]);
        let items = v.items();
        assert_eq!(coeff_phi(&c, &items, &[true, true], false).unwrap(), Rational::one());
        let g = c.gamma(&items[0].t, &items[1].t, 0, 0).unwrap();
        assert_eq!(coeff_phi(&c, &items, &[false, true], false).unwrap(), g);
        let b = c.beta(&items[0].t, &items[1].t, 0, 0).unwrap();
        assert_eq!(coeff_phi(&c, &items, &[true, false], true).unwrap(), b);
        assert_eq!(pullback_weight(&c, &[vec![0, 1]], &v).unwrap(), Rational::one());
        assert_eq!(pullback_weight(&c, &[vec![1, 0]], &v).unwrap(), g);
    }

    #[test]
    fn calz_factorizes_over_rows() {
        let c = ctx();
        for n in [vec![1, 1], vec![2, 1], vec![1, 2], vec![1, 1, 1], vec![2, 1, 1], vec![1, 1, 2], vec![2, 2]] {
            let v = TypedVariables::sample(&c, &n, &[], 11);
            for s in enumerate_admissible(&n) {
                for tw in [false, true] {
                    assert_eq!(
                        coeff_calz(&c, &s, &v, tw).unwrap(),
                        coeff_calz_factored(&c, &s, &v, tw).unwrap(),
                        "n={n:?} s={:?} twisted={tw}",
                        s.row_major()
                    );
                }
            }
        }
    }
}
