//! Module build recipes: `vec@z`, `verma2(L1,L2,K,z)`, `tensor(r1,r2,...)`.

use std::sync::Arc;

use super::gens::GlnGenerators;
use super::module::{evaluation_module, tensor_module, Module};
use crate::error::{Error, Result};
use crate::rmatrix::Variant;
use crate::scalar::{Rational, ScalarContext};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recipe {
    Vector { z: Rational },
    Verma2 { l1: i64, l2: i64, k_trunc: usize, z: Rational },
    Tensor(Vec<Recipe>),
}

impl Recipe {
    pub fn parse(s: &str) -> Result<Recipe> {
        let mut p = Parser { s: s.as_bytes(), at: 0, src: s };
        let r = p.recipe()?;
        p.skip_ws();
        if p.at != p.s.len() {
            return Err(p.error("trailing input"));
        }
        Ok(r)
    }

    /// Build the module for rank `n` and `variant`.
    pub fn build(&self, ctx: &ScalarContext, n: usize, variant: Variant) -> Result<Arc<Module>> {
        match self {
            Recipe::Vector { z } => {
                evaluation_module(ctx, Arc::new(GlnGenerators::vector_rep(ctx, n, variant)?), z)
            }
            Recipe::Verma2 { l1, l2, k_trunc, z } => {
                if n != 2 {
                    return Err(Error::InvalidParameter("verma2 exists only for N = 2".into()));
                }
                let g = GlnGenerators::verma2(ctx, *l1, *l2, *k_trunc, variant)?;
                evaluation_module(ctx, Arc::new(g), z)
            }
            Recipe::Tensor(items) => {
                let fs = items.iter().map(|r| r.build(ctx, n, variant)).collect::<Result<Vec<_>>>()?;
                tensor_module(ctx, &fs)
            }
        }
    }
}

/// Parse and build in one step.
pub fn build_module(ctx: &ScalarContext, n: usize, variant: Variant, recipe: &str) -> Result<Arc<Module>> {
    Recipe::parse(recipe)?.build(ctx, n, variant)
}

struct Parser<'a> {
    s: &'a [u8],
    at: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in recipe {:?}", self.at, self.src))
    }

    fn skip_ws(&mut self) {
        while self.at < self.s.len() && self.s[self.at].is_ascii_whitespace() {
            self.at += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.s[self.at..].starts_with(tok.as_bytes()) {
            self.at += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(&format!("expected {tok:?}")))
        }
    }

    fn atom(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.at;
        while self.at < self.s.len() && !matches!(self.s[self.at], b',' | b')' | b'(') && !self.s[self.at].is_ascii_whitespace() {
            self.at += 1;
        }
        if start == self.at {
            return Err(self.error("expected a value"));
        }
        Ok(&self.src[start..self.at])
    }

    fn rational(&mut self) -> Result<Rational> {
        self.atom()?.parse()
    }

    fn integer(&mut self) -> Result<i64> {
        let a = self.atom()?.to_string();
        a.parse().map_err(|_| self.error(&format!("not an integer: {a}")))
    }

    fn recipe(&mut self) -> Result<Recipe> {
        if self.eat("vec@") {
            return Ok(Recipe::Vector { z: self.rational()? });
        }
        if self.eat("verma2") {
            self.expect("(")?;
            let l1 = self.integer()?;
            self.expect(",")?;
            let l2 = self.integer()?;
            self.expect(",")?;
            let k = self.integer()?;
            self.expect(",")?;
            let z = self.rational()?;
            self.expect(")")?;
            let k_trunc = usize::try_from(k).map_err(|_| self.error("negative truncation"))?;
            return Ok(Recipe::Verma2 { l1, l2, k_trunc, z });
        }
        if self.eat("tensor") {
            self.expect("(")?;
            let mut items = vec![self.recipe()?];
            while self.eat(",") {
                items.push(self.recipe()?);
            }
            self.expect(")")?;
            return Ok(Recipe::Tensor(items));
        }
        Err(self.error("unknown recipe"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_nested_recipes() {
        let r = Recipe::parse("tensor(vec@2, verma2(3,-2,4,5/3), tensor(vec@-1/2))").unwrap();
        assert_eq!(
            r,
            Recipe::Tensor(vec![
                Recipe::Vector { z: Rational::from_int(2) },
                Recipe::Verma2 { l1: 3, l2: -2, k_trunc: 4, z: Rational::new(5, 3) },
                Recipe::Tensor(vec![Recipe::Vector { z: Rational::new(-1, 2) }]),
            ])
        );
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "vec@", "vec@x", "tensor(vec@1", "verma2(1,0,-1,2)", "vec@1 junk", "spin@1"] {
            assert!(Recipe::parse(bad).is_err(), "{bad}");
        }
    }
}
