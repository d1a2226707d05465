//! Modified weight functions by three constructions, and the identities tying them together.

mod direct;
mod generator;
mod identities;
mod trace;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

pub use direct::{direct_modified_weight, recurrence_modified_weight};
pub use generator::generator_weight;
pub use identities::{
    check_coincidence, check_coproduct, check_coproduct_associativity, check_method_agreement,
    check_qsymmetry, coproduct_rhs, modified_from_plain, plain_from_modified, plain_weight,
};
pub(crate) use trace::trace_product;
pub use trace::tv_weight;

use crate::combinat::TypedVariables;
use crate::error::{Error, Result};
use crate::linalg::VectorState;
use crate::repr::Module;
use crate::rmatrix::Variant;
use crate::scalar::ScalarContext;

/// Construction used to evaluate a weight function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Direct,
    Recurrence,
    Tv,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Direct, Method::Recurrence, Method::Tv];

    pub fn tag(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Recurrence => "recurrence",
            Method::Tv => "tv",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.tag() == s)
            .ok_or_else(|| Error::Parse(format!("unknown method '{s}' (direct, recurrence, tv)")))
    }
}

/// Arguments of one weight-function evaluation.
#[derive(Clone, Debug)]
pub struct WeightRequest {
    pub module: Arc<Module>,
    pub vars: TypedVariables,
    pub method: Method,
}

impl WeightRequest {
    /// Validates the type count against the module rank and the requested variant.
    pub fn new(module: Arc<Module>, vars: TypedVariables, variant: Variant, method: Method) -> Result<Self> {
        if variant != module.variant() {
            return Err(Error::Variant(format!(
                "request for {variant} on a {} module",
                module.variant()
            )));
        }
        check_rank(&module, &vars)?;
        Ok(WeightRequest { module, vars, method })
    }

    pub fn counts(&self) -> Vec<usize> {
        self.vars.counts()
    }
}

pub(crate) fn check_rank(module: &Module, vars: &TypedVariables) -> Result<()> {
    if vars.types() + 1 != module.n() {
        return Err(Error::Length(format!(
            "{} variable types for N = {}",
            vars.types(),
            module.n()
        )));
    }
    Ok(())
}

/// Bookkeeping attached to a computed weight.
#[derive(Clone, Debug, Serialize)]
pub struct WeightMeta {
    pub method: Method,
    /// Outer terms summed: admissible matrices, recurrence splits, or R-product paths.
    pub terms: usize,
    /// Same-type permutations in the q-symmetrization.
    pub permutations: usize,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightResult {
    pub vector: VectorState,
    pub meta: WeightMeta,
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Evaluate a request with its chosen construction.
pub fn compute(ctx: &ScalarContext, req: &WeightRequest) -> Result<WeightResult> {
    let start = Instant::now();
    let counts = req.counts();
    let (vector, terms) = match req.method {
        Method::Direct => (
            direct_modified_weight(ctx, &req.module, &req.vars)?,
            crate::combinat::enumerate_admissible(&counts).len(),
        ),
        Method::Recurrence => (
            recurrence_modified_weight(ctx, &req.module, &req.vars)?,
            direct::recurrence_splits(&counts).len(),
        ),
        Method::Tv => {
            let (v, paths) = trace::tv_weight_counted(ctx, &req.module, &req.vars)?;
            (v, paths)
        }
    };
    let permutations = if req.method == Method::Tv { 1 } else { counts.iter().map(|&c| factorial(c)).product() };
    Ok(WeightResult {
        vector,
        meta: WeightMeta { method: req.method, terms, permutations, elapsed: start.elapsed() },
    })
}
