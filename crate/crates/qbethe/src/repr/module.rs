//! Modules over the quantum affine algebra, realized through their L-operators.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rand::Rng;

use super::gauss::schur_top_block;
use super::gens::{zero_mode_l, GlnGenerators, Sign};
use crate::error::{Error, Result};
use crate::linalg::{AuxMatrix, CommonDenominator, Operator, VectorState};
use crate::rmatrix::{build_r, SpectralMatrix, Variant};
use crate::scalar::{Rational, ScalarContext};

const SCAN_STREAM: u64 = 0x5ca9;
const PROBE_STREAM: u64 = 0x9b0e;
const COVECTOR_STREAM: u64 = 0x9b0f;

/// Largest dimension for which relation checks use every basis vector as a probe.
pub const FULL_PROBE_DIM: usize = 27;

enum Kind {
    Evaluation { modes: ZeroModes, z: Rational, gens: Arc<GlnGenerators> },
    Tensor(Vec<Arc<Module>>),
    Embedded(Arc<Module>),
}

/// Finite-dimensional module with a singular basis vector.
pub struct Module {
    n: usize,
    dim: usize,
    variant: Variant,
    kind: Kind,
    singular: VectorState,
    pivot: usize,
    top: Option<Vec<bool>>,
    recipe: String,
    cache: Mutex<HashMap<(Sign, Rational), Arc<AuxMatrix>>>,
}

impl std::fmt::Debug for Module {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Module")
            .field("recipe", &self.recipe)
            .field("n", &self.n)
            .field("dim", &self.dim)
            .field("variant", &self.variant)
            .finish()
    }
}

impl Module {
    fn raw(n: usize, dim: usize, variant: Variant, kind: Kind, top: Option<Vec<bool>>, recipe: String) -> Self {
        Module {
            n,
            dim,
            variant,
            kind,
            singular: VectorState::zero(dim),
            pivot: 0,
            top,
            recipe,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn recipe(&self) -> &str {
        &self.recipe
    }

    pub fn singular_vector(&self) -> &VectorState {
        &self.singular
    }

    /// Basis vectors sitting on a truncation top level, if any.
    pub fn top_level(&self) -> Option<&[bool]> {
        self.top.as_deref()
    }

    /// Generators and evaluation point, for evaluation modules.
    pub fn generators(&self) -> Option<(&Arc<GlnGenerators>, &Rational)> {
        match &self.kind {
            Kind::Evaluation { gens, z, .. } => Some((gens, z)),
            _ => None,
        }
    }

    pub fn factors(&self) -> Option<&[Arc<Module>]> {
        match &self.kind {
            Kind::Tensor(f) => Some(f),
            _ => None,
        }
    }

    /// Evaluation points of all evaluation factors (pole avoidance for sampling).
    pub fn evaluation_points(&self) -> Vec<Rational> {
        match &self.kind {
            Kind::Evaluation { z, .. } => vec![z.clone()],
            Kind::Tensor(fs) => fs.iter().flat_map(|f| f.evaluation_points()).collect(),
            Kind::Embedded(p) => p.evaluation_points(),
        }
    }

    /// Auxiliary matrix `L^sign(u)`, cached per `(sign, u)`.
    pub fn l_matrix(&self, sign: Sign, u: &Rational) -> Result<Arc<AuxMatrix>> {
        let key = (sign, u.clone());
        if let Some(m) = self.cache.lock().expect("cache poisoned").get(&key) {
            return Ok(Arc::clone(m));
        }
        let m = Arc::new(self.compute_l(sign, u)?);
        self.cache.lock().expect("cache poisoned").insert(key, Arc::clone(&m));
        Ok(m)
    }

    fn compute_l(&self, sign: Sign, u: &Rational) -> Result<AuxMatrix> {
        match &self.kind {
            Kind::Evaluation { modes, z, .. } => {
                if u.is_zero() {
                    return Err(Error::Pole("spectral parameter u = 0".into()));
                }
                Ok(modes.evaluate(sign, z, u))
            }
            Kind::Tensor(factors) => {
                let mut acc = (*factors[0].l_matrix(sign, u)?).clone();
                for f in &factors[1..] {
                    acc = coproduct_step(&acc, &*f.l_matrix(sign, u)?);
                }
                Ok(acc)
            }
            Kind::Embedded(parent) => schur_top_block(&*parent.l_matrix(sign, u)?),
        }
    }

    pub fn l_entry(&self, sign: Sign, i: usize, j: usize, u: &Rational) -> Result<Operator> {
        if i >= self.n || j >= self.n {
            return Err(Error::Index(format!("L entry ({i},{j}) for N={}", self.n)));
        }
        Ok(self.l_matrix(sign, u)?.get(i, j).clone())
    }

    /// `lambda_b(u)`, the eigenvalue of `L^+_bb(u)` on the singular vector (0-based `b`).
    pub fn lambda(&self, b: usize, u: &Rational) -> Result<Rational> {
        if b >= self.n {
            return Err(Error::Index(format!("lambda index {b} for N={}", self.n)));
        }
        let l = self.l_matrix(Sign::Plus, u)?;
        let w = l.get(b, b).apply(&self.singular);
        Ok(&w.coords()[self.pivot] / &self.singular.coords()[self.pivot])
    }

    /// Apply `L^+_{i_k j_k}(u_k)` right to left: the last triple acts first.
    pub fn apply_chain(&self, ops: &[(usize, usize, Rational)], v: &VectorState) -> Result<VectorState> {
        let mut w = v.clone();
        for (step, (i, j, u)) in ops.iter().rev().enumerate() {
            if step > 0 {
                self.guard_truncation(&w)?;
            }
            w = self.l_matrix(Sign::Plus, u)?.get(*i, *j).apply(&w);
            if w.is_zero() {
                return Ok(w);
            }
        }
        Ok(w)
    }

    /// Error if `w` occupies a truncation top level (another operator would leave the space).
    pub fn guard_truncation(&self, w: &VectorState) -> Result<()> {
        guard_top(self.top.as_deref(), w)
    }

    /// Probe vectors for relation checks: all admissible basis vectors up to
    /// [`FULL_PROBE_DIM`], otherwise three seeded random vectors.
    pub fn probes(&self, ctx: &ScalarContext) -> Vec<VectorState> {
        let ok: Vec<usize> = (0..self.dim)
            .filter(|&k| self.top.as_ref().is_none_or(|t| !t[k]))
            .collect();
        if self.dim <= FULL_PROBE_DIM {
            return ok.iter().map(|&k| VectorState::basis(self.dim, k)).collect();
        }
        let mut rng = ctx.rng(PROBE_STREAM);
        (0..3)
            .map(|_| {
                let mut c = vec![Rational::zero(); self.dim];
                for &k in &ok {
                    c[k] = Rational::from_int(rng.gen_range(-40..=40));
                }
                VectorState::from_coords(c)
            })
            .collect()
    }
}

fn guard_top(top: Option<&[bool]>, w: &VectorState) -> Result<()> {
    if let Some(top) = top {
        if let Some(k) = w.support().into_iter().find(|&k| top[k]) {
            return Err(Error::Truncation(format!("basis vector {k} on the top level")));
        }
    }
    Ok(())
}

/// One coproduct step: `L_ij = sum_k L^(1)_kj (x) L^(2)_ik`.
fn coproduct_step(a: &AuxMatrix, b: &AuxMatrix) -> AuxMatrix {
    let n = a.n();
    let dim = a.dim() * b.dim();
    AuxMatrix::from_fn(n, dim, |i, j| {
        (0..n).fold(Operator::zero(dim), |acc, k| {
            let (x, y) = (a.get(k, j), b.get(i, k));
            if x.is_zero() || y.is_zero() {
                acc
            } else {
                acc.add(&x.kron(y))
            }
        })
    })
}

/// Result of [`singular_scan`]: basis index of the singular vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanResult {
    pub index: usize,
    pub vector: VectorState,
}

fn is_triangular_on(l: &AuxMatrix, k: usize) -> bool {
    let n = l.n();
    for i in 0..n {
        for j in 0..=i {
            let col = l.get(i, j).column(k);
            if i > j && !col.is_zero() {
                return false;
            }
            if i == j && col.support().iter().any(|&r| r != k) {
                return false;
            }
        }
    }
    true
}

/// Find the unique basis vector on which `L^+(u)` is upper triangular at sampled `u`.
pub fn singular_scan(ctx: &ScalarContext, module: &Module) -> Result<ScanResult> {
    let us = ctx.sample_generic_stream(2, &module.evaluation_points(), SCAN_STREAM);
    let ls: Vec<_> = us.iter().map(|u| module.l_matrix(Sign::Plus, u)).collect::<Result<_>>()?;
    let found: Vec<usize> = (0..module.dim()).filter(|&k| ls.iter().all(|l| is_triangular_on(l, k))).collect();
    match found.as_slice() {
        [] => Err(Error::SingularVector(module.recipe.clone())),
        [k] => Ok(ScanResult { index: *k, vector: VectorState::basis(module.dim(), *k) }),
        many => Err(Error::Ambiguity(many.to_vec())),
    }
}

/// Evaluation module of `gens` at `z`; runs the singular scan and an RLL self-check.
pub fn evaluation_module(ctx: &ScalarContext, gens: Arc<GlnGenerators>, z: &Rational) -> Result<Arc<Module>> {
    if z.is_zero() {
        return Err(Error::InvalidParameter("evaluation point z = 0".into()));
    }
    let modes = ZeroModes::of(ctx, &gens);
    let recipe = match gens.top_level() {
        Some(_) => {
            let hw = gens.highest_weight();
            format!("verma2({},{},{},{z})", hw[0], hw[1], gens.dim() - 1)
        }
        None if gens.dim() == gens.n() => format!("vec@{z}"),
        None => format!("eval@{z}"),
    };
    let top = gens.top_level().map(<[bool]>::to_vec);
    let mut m = Module::raw(
        gens.n(),
        gens.dim(),
        gens.variant(),
        Kind::Evaluation { modes, z: z.clone(), gens },
        top,
        recipe,
    );
    let scan = singular_scan(ctx, &m)?;
    m.pivot = scan.index;
    m.singular = scan.vector;
    let us = ctx.sample_generic_stream(2, std::slice::from_ref(z), SCAN_STREAM + 1);
    if !check_rll(ctx, &m, Sign::Plus, &us[0], &us[1])? {
        return Err(Error::Relation(format!("RLL fails on {}", m.recipe)));
    }
    Ok(Arc::new(m))
}

/// Tensor product of modules through the iterated coproduct (factor 1 is the left leg).
pub fn tensor_module(ctx: &ScalarContext, factors: &[Arc<Module>]) -> Result<Arc<Module>> {
    let first = factors.first().ok_or_else(|| Error::Mismatch("empty tensor product".into()))?;
    if factors.len() == 1 {
        return Ok(Arc::clone(first));
    }
    for f in factors {
        if f.n != first.n || f.variant != first.variant {
            return Err(Error::Mismatch(format!("{} vs {}", first.recipe, f.recipe)));
        }
    }
    let dim = factors.iter().map(|f| f.dim).product();
    let singular = factors[1..].iter().fold(first.singular.clone(), |v, f| v.kron(&f.singular));
    let pivot = singular.support()[0];
    let top = if factors.iter().any(|f| f.top.is_some()) {
        let mut t = vec![false];
        for f in factors {
            let ft = f.top.clone().unwrap_or_else(|| vec![false; f.dim]);
            t = t.iter().flat_map(|&a| ft.iter().map(move |&b| a || b)).collect();
        }
        Some(t)
    } else {
        None
    };
    let recipe = format!(
        "tensor({})",
        factors.iter().map(|f| f.recipe.as_str()).collect::<Vec<_>>().join(",")
    );
    let mut m = Module::raw(first.n, dim, first.variant, Kind::Tensor(factors.to_vec()), top, recipe);
    m.singular = singular;
    m.pivot = pivot;
    let us = ctx.sample_generic_stream(1, &m.evaluation_points(), SCAN_STREAM);
    let l = m.l_matrix(Sign::Plus, &us[0])?;
    for i in 0..m.n {
        for j in 0..=i {
            let w = l.get(i, j).apply(&m.singular);
            let bad = if i > j { !w.is_zero() } else { w.support().iter().any(|&r| !m.singular.support().contains(&r)) };
            if bad {
                return Err(Error::SingularVector(m.recipe.clone()));
            }
        }
    }
    Ok(Arc::new(m))
}

/// Rank `N-1` module on the same space, from the top-left Gauss coordinates.
pub fn embedded_module(module: &Arc<Module>) -> Result<Arc<Module>> {
    if module.n < 2 {
        return Err(Error::InvalidParameter("cannot embed a rank-one module".into()));
    }
    let mut m = Module::raw(
        module.n - 1,
        module.dim,
        module.variant,
        Kind::Embedded(Arc::clone(module)),
        module.top.clone(),
        format!("embed({})", module.recipe),
    );
    m.singular = module.singular.clone();
    m.pivot = module.pivot;
    Ok(Arc::new(m))
}

/// `R(u,v)_{12} L_1(u) L_2(v) = L_2(v) L_1(u) R(u,v)_{12}` on the module's probe vectors.
pub fn check_rll(ctx: &ScalarContext, m: &Module, sign: Sign, u: &Rational, v: &Rational) -> Result<bool> {
    let n = m.n();
    if n == 1 {
        let (lu, lv) = (m.l_matrix(sign, u)?, m.l_matrix(sign, v)?);
        let (a, b) = (lu.get(0, 0), lv.get(0, 0));
        return Ok(m.probes(ctx).iter().all(|w| a.apply(&b.apply(w)) == b.apply(&a.apply(w))));
    }
    let r = build_r(ctx, m.variant(), n, u, v)?;
    let (lu, lv) = (m.l_matrix(sign, u)?, m.l_matrix(sign, v)?);
    let idx = |a: usize, b: usize, c: usize, d: usize| ((a * n + b) * n + c) * n + d;
    if m.dim() > FULL_PROBE_DIM {
        return Ok(rll_bilinear(ctx, m, &r, &lu, &lv));
    }
    for w in m.probes(ctx) {
        let lv_w: Vec<VectorState> = (0..n * n).map(|x| lv.get(x / n, x % n).apply(&w)).collect();
        let lu_w: Vec<VectorState> = (0..n * n).map(|x| lu.get(x / n, x % n).apply(&w)).collect();
        // uv[m,j,n,l] = L_mj(u) L_nl(v) w ; vu[k,n,i,m] = L_kn(v) L_im(u) w
        let mut uv = Vec::with_capacity(n.pow(4));
        let mut vu = Vec::with_capacity(n.pow(4));
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        uv.push(lu.get(a, b).apply(&lv_w[c * n + d]));
                        vu.push(lv.get(a, b).apply(&lu_w[c * n + d]));
                    }
                }
            }
        }
        for i in 0..n {
            for k in 0..n {
                for j in 0..n {
                    for l in 0..n {
                        let mut lhs = VectorState::zero(m.dim());
                        let mut rhs = VectorState::zero(m.dim());
                        for mm in 0..n {
                            for nn in 0..n {
                                lhs.add_scaled(&uv[idx(mm, j, nn, l)], r.get(i, k, mm, nn));
                                rhs.add_scaled(&vu[idx(k, nn, i, mm)], r.get(mm, nn, j, l));
                            }
                        }
                        if lhs != rhs {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

/// RLL tested through `x^T (lhs - rhs) w` for seeded random pairs `(x, w)`.
fn rll_bilinear(ctx: &ScalarContext, m: &Module, r: &SpectralMatrix, lu: &AuxMatrix, lv: &AuxMatrix) -> bool {
    let n = m.n();
    let idx = |a: usize, b: usize, c: usize, d: usize| ((a * n + b) * n + c) * n + d;
    let mut rng = ctx.rng(COVECTOR_STREAM);
    for w in m.probes(ctx) {
        let x = VectorState::from_coords(
            (0..m.dim()).map(|_| Rational::from_int(rng.gen_range(-40..=40))).collect(),
        );
        let row = |op: &AuxMatrix| -> Vec<CommonDenominator> {
            (0..n * n).map(|e| op.get(e / n, e % n).apply_left(&x).over_common_denominator()).collect()
        };
        let col = |op: &AuxMatrix| -> Vec<CommonDenominator> {
            (0..n * n).map(|e| op.get(e / n, e % n).apply(&w).over_common_denominator()).collect()
        };
        let (xu, xv, uw, vw) = (row(lu), row(lv), col(lu), col(lv));
        let mut uv = Vec::with_capacity(n.pow(4));
        let mut vu = Vec::with_capacity(n.pow(4));
        for a in 0..n * n {
            for c in 0..n * n {
                uv.push(xu[a].dot(&vw[c]));
                vu.push(xv[a].dot(&uw[c]));
            }
        }
        for i in 0..n {
            for k in 0..n {
                for j in 0..n {
                    for l in 0..n {
                        let mut lhs = Rational::zero();
                        let mut rhs = Rational::zero();
                        for mm in 0..n {
                            for nn in 0..n {
                                let (a, b) = (r.get(i, k, mm, nn), r.get(mm, nn, j, l));
                                if !a.is_zero() {
                                    lhs += a * &uv[idx(mm, j, nn, l)];
                                }
                                if !b.is_zero() {
                                    rhs += b * &vu[idx(k, nn, i, mm)];
                                }
                            }
                        }
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// `[L_ab(u), L_ab(u')] = 0` for every entry, on probe vectors.
pub fn check_entry_commutativity(ctx: &ScalarContext, m: &Module, u: &Rational, u2: &Rational) -> Result<bool> {
    let (a, b) = (m.l_matrix(Sign::Plus, u)?, m.l_matrix(Sign::Plus, u2)?);
    let probes = m.probes(ctx);
    for i in 0..m.n() {
        for j in 0..m.n() {
            let (x, y) = (a.get(i, j), b.get(i, j));
            if probes.iter().any(|w| x.apply(&y.apply(w)) != y.apply(&x.apply(w))) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The pair `L^+[0]`, `L^-[0]` of an evaluation module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroModes {
    pub plus: AuxMatrix,
    pub minus: AuxMatrix,
}

impl ZeroModes {
    pub fn of(ctx: &ScalarContext, g: &GlnGenerators) -> Self {
        ZeroModes { plus: zero_mode_l(ctx, g, Sign::Plus), minus: zero_mode_l(ctx, g, Sign::Minus) }
    }

    /// Evaluation image of `L^sign(u)` at point `z`.
    pub fn evaluate(&self, sign: Sign, z: &Rational, u: &Rational) -> AuxMatrix {
        match sign {
            Sign::Plus => self.plus.add_scaled(&self.minus, &-(z / u)),
            Sign::Minus => self.minus.add_scaled(&self.plus, &-(u / z)),
        }
    }

    /// Unipotent factors `U^+ = K^{-1} L^+[0]` and `U^- = L^-[0] K`.
    fn unipotent(&self) -> (AuxMatrix, AuxMatrix) {
        let (n, d) = (self.plus.n(), self.plus.dim());
        let diag = |m: &AuxMatrix| {
            AuxMatrix::from_fn(n, d, |i, j| if i == j { m.get(i, i).clone() } else { Operator::zero(d) })
        };
        (diag(&self.minus).mul(&self.plus), self.minus.mul(&diag(&self.plus)))
    }
}

/// `L~^s(u) = (U^-)^{-1} L^s(u) (U^+)^{-1}` for both signs.
pub fn twist_relation_holds(orig: &ZeroModes, twist: &ZeroModes, z: &Rational, u: &Rational) -> Result<bool> {
    if u.is_zero() || z.is_zero() {
        return Err(Error::Pole("u or z vanishes".into()));
    }
    let (up, um) = orig.unipotent();
    let (up_inv, um_inv) = (up.inverse()?, um.inverse()?);
    for sign in [Sign::Plus, Sign::Minus] {
        if um_inv.mul(&orig.evaluate(sign, z, u)).mul(&up_inv) != twist.evaluate(sign, z, u) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Twist relation on evaluation modules built from `orig` and `twist` generators.
pub fn check_twist_relation(
    ctx: &ScalarContext,
    orig: &GlnGenerators,
    twist: &GlnGenerators,
    z: &Rational,
    u: &Rational,
) -> Result<bool> {
    if orig.n() != twist.n() || orig.dim() != twist.dim() {
        return Err(Error::Mismatch("generator sets differ in shape".into()));
    }
    twist_relation_holds(&ZeroModes::of(ctx, orig), &ZeroModes::of(ctx, twist), z, u)
}
