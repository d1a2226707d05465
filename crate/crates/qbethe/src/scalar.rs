//! Exact rationals, q-numbers and the two-point functions `gamma`, `tilde_gamma`, `beta`.
//!
//! Every coefficient in the crate is a [`Rational`]. Nothing is ever rounded.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `p/q`; panics when `q == 0`.
    pub fn new(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// `n/d` reduced; panics when `d == 0`.
    pub fn from_bigints(n: BigInt, d: BigInt) -> Self {
        Rational(BigRational::new(n, d))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse, or `None` at zero.
    pub fn checked_recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    /// Inverse; panics at zero. Use [`Rational::checked_recip`] on untrusted input.
    pub fn recip(&self) -> Self {
        self.checked_recip().expect("reciprocal of zero")
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.recip() } else { self.clone() };
        let mut acc = Rational::one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        acc
    }

    /// Checked division reporting a pole.
    pub fn checked_div(&self, rhs: &Rational, what: &str) -> Result<Rational> {
        match rhs.checked_recip() {
            Some(r) => Ok(self * &r),
            None => Err(Error::Pole(what.to_string())),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p/q`, `p`, with optional sign on `p`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        Ok(Rational(BigRational::new(p, q)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational($tr::$m(&self.0, &rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational($tr::$m(self.0, rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational($tr::$m(self.0, &rhs.0))
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational($tr::$m(&self.0, rhs.0))
            }
        }
        impl $atr<&Rational> for Rational {
            fn $am(&mut self, rhs: &Rational) {
                $atr::$am(&mut self.0, &rhs.0);
            }
        }
        impl $atr<Rational> for Rational {
            fn $am(&mut self, rhs: Rational) {
                $atr::$am(&mut self.0, rhs.0);
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign);
binop!(Sub, sub, SubAssign, sub_assign);
binop!(Mul, mul, MulAssign, mul_assign);
binop!(Div, div, DivAssign, div_assign);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::one(), |a, b| a * b)
    }
}

/// Deformation parameter plus the seed that drives all sampling.
#[derive(Clone, Debug)]
pub struct ScalarContext {
    q: Rational,
    q_inv: Rational,
    nu: Rational,
    seed: u64,
}

impl ScalarContext {
    /// Rejects `q` in `{0, 1, -1}`.
    pub fn new(q: Rational, seed: u64) -> Result<Self> {
        let one = Rational::one();
        if q.is_zero() || q == one || q == -one {
            return Err(Error::InvalidParameter(format!("q = {q} is degenerate")));
        }
        let q_inv = q.recip();
        let nu = &q - &q_inv;
        Ok(ScalarContext { q, q_inv, nu, seed })
    }

    /// Default deformation parameter `3/7`.
    pub fn default_q() -> Rational {
        Rational::new(3, 7)
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn q_inv(&self) -> &Rational {
        &self.q_inv
    }

    /// `q - q^{-1}`.
    pub fn nu(&self) -> &Rational {
        &self.nu
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Same `q`, different seed.
    pub fn with_seed(&self, seed: u64) -> Self {
        ScalarContext { seed, ..self.clone() }
    }

    pub fn q_pow(&self, e: i64) -> Rational {
        self.q.pow(e)
    }

    /// `[n]_q`, extended to negative `n` by `[-n] = -[n]`.
    pub fn q_int(&self, n: i64) -> Rational {
        (self.q.pow(n) - self.q.pow(-n)) / &self.nu
    }

    /// `[n]_q! = [n]_q [n-1]_q ... [1]_q`.
    pub fn q_factorial(&self, n: usize) -> Rational {
        (1..=n as i64).map(|k| self.q_int(k)).product()
    }

    /// Deterministic RNG for a named sub-stream of this context's seed.
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.seed);
        r.set_stream(stream);
        r
    }

    /// `count` distinct nonzero rationals avoiding `forbidden`, with no ratio in
    /// `{1, q^2, q^-2}` between any two of them or against a forbidden value.
    pub fn sample_generic(&self, count: usize, forbidden: &[Rational]) -> Vec<Rational> {
        self.sample_generic_stream(count, forbidden, 0)
    }

    pub fn sample_generic_stream(
        &self,
        count: usize,
        forbidden: &[Rational],
        stream: u64,
    ) -> Vec<Rational> {
        let mut rng = self.rng(stream);
        let q2 = self.q.pow(2);
        let q2i = self.q.pow(-2);
        let mut taken: Vec<Rational> = Vec::with_capacity(count);
        while taken.len() < count {
            let p: i64 = rng.gen_range(1..=97) * if rng.gen_bool(0.5) { 1 } else { -1 };
            let d: i64 = rng.gen_range(1..=89);
            let x = Rational::new(p, d);
            let clash = forbidden.iter().chain(taken.iter()).any(|y| {
                if y.is_zero() {
                    return false;
                }
                let r = &x / y;
                r.is_one() || r == q2 || r == q2i
            });
            if !clash {
                taken.push(x);
            }
        }
        taken
    }

    /// Two-point function `gamma` keyed on the types of `t_i`, `t_j`.
    pub fn gamma(&self, ti: &Rational, tj: &Rational, type_i: i64, type_j: i64) -> Result<Rational> {
        self.gamma_impl(ti, tj, type_i, type_j, false)
    }

    /// As [`ScalarContext::gamma`] with the equal-type branch replaced by 1.
    pub fn tilde_gamma(
        &self,
        ti: &Rational,
        tj: &Rational,
        type_i: i64,
        type_j: i64,
    ) -> Result<Rational> {
        self.gamma_impl(ti, tj, type_i, type_j, true)
    }

    fn gamma_impl(
        &self,
        ti: &Rational,
        tj: &Rational,
        type_i: i64,
        type_j: i64,
        tilde: bool,
    ) -> Result<Rational> {
        let (q, qi) = (&self.q, &self.q_inv);
        if type_i == type_j + 1 {
            (ti - tj).checked_div(&(q * ti - qi * tj), "gamma: q t_i = q^-1 t_j")
        } else if type_j == type_i + 1 {
            (qi * ti - q * tj).checked_div(&(ti - tj), "gamma: t_i = t_j")
        } else if type_i == type_j && !tilde {
            (q * ti - qi * tj).checked_div(&(qi * ti - q * tj), "gamma: q^-1 t_i = q t_j")
        } else {
            Ok(Rational::one())
        }
    }

    /// `(q^-1 t_i - q t_j)/(t_i - t_j)` for equal types, 1 otherwise.
    pub fn beta(&self, ti: &Rational, tj: &Rational, type_i: i64, type_j: i64) -> Result<Rational> {
        if type_i != type_j {
            return Ok(Rational::one());
        }
        (&self.q_inv * ti - &self.q * tj).checked_div(&(ti - tj), "beta: t_i = t_j")
    }

    /// `(q - q^-1 x)/(1 - x)`, the ubiquitous cross factor.
    pub fn g(&self, x: &Rational) -> Result<Rational> {
        (&self.q - &self.q_inv * x).checked_div(&(Rational::one() - x), "g: ratio 1")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx2() -> ScalarContext {
        ScalarContext::new(Rational::from_int(2), 1).unwrap()
    }

    #[test]
    fn q_numbers_at_two() {
        let c = ctx2();
        assert_eq!(c.q_int(0), Rational::zero());
        assert_eq!(c.q_int(1), Rational::one());
        assert_eq!(c.q_int(2), Rational::new(5, 2));
        assert_eq!(c.q_int(3), Rational::new(21, 4));
        assert_eq!(c.q_int(-3), Rational::new(-21, 4));
        assert_eq!(c.q_factorial(0), Rational::one());
        assert_eq!(c.q_factorial(1), Rational::one());
        assert_eq!(c.q_factorial(3), Rational::new(105, 8));
    }

    #[test]
    fn degenerate_q_rejected() {
        for q in [0, 1, -1] {
            assert!(matches!(
                ScalarContext::new(Rational::from_int(q), 0),
                Err(Error::InvalidParameter(_))
            ));
        }
    }

    #[test]
    fn gamma_branches() {
        let c = ctx2();
        let (one, two, three) = (Rational::one(), Rational::from_int(2), Rational::from_int(3));
        assert_eq!(c.gamma(&one, &three, 1, 1).unwrap(), Rational::new(-1, 11));
        assert_eq!(c.gamma(&two, &two, 2, 2).unwrap(), -Rational::one());
        assert_eq!(c.gamma(&one, &three, 1, 3).unwrap(), Rational::one());
        assert_eq!(c.tilde_gamma(&one, &two, 1, 2).unwrap(), Rational::new(7, 2));
        assert_eq!(c.tilde_gamma(&one, &three, 2, 2).unwrap(), Rational::one());
        assert_eq!(c.tilde_gamma(&two, &two, 3, 2).unwrap(), Rational::zero());
        assert!(matches!(c.gamma(&two, &two, 1, 2), Err(Error::Pole(_))));
    }

    #[test]
    fn beta_values() {
        let c = ctx2();
        let (one, three) = (Rational::one(), Rational::from_int(3));
        assert_eq!(c.beta(&one, &three, 1, 1).unwrap(), Rational::new(11, 4));
        assert_eq!(c.beta(&one, &three, 1, 2).unwrap(), Rational::one());
        assert_eq!(c.beta(&three, &Rational::zero(), 1, 1).unwrap(), Rational::new(1, 2));
        assert!(c.beta(&one, &one, 1, 1).is_err());
    }

    #[test]
    fn parse_and_print() {
        let r: Rational = "-6/4".parse().unwrap();
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(Rational::zero().to_string(), "0/1");
        assert_eq!("5".parse::<Rational>().unwrap(), Rational::from_int(5));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        let json = serde_json::to_string(&Rational::new(3, 7)).unwrap();
        assert_eq!(json, "\"3/7\"");
        let back: Rational = serde_json::from_str(&json).unwrap();
        assert_eq!(back, Rational::new(3, 7));
    }

    #[test]
    fn sampling_contract() {
        let c = ScalarContext::new(Rational::new(3, 7), 11).unwrap();
        assert!(c.sample_generic(0, &[]).is_empty());
        let xs = c.sample_generic(6, &[Rational::zero()]);
        let q2 = c.q().pow(2);
        for (i, x) in xs.iter().enumerate() {
            assert!(!x.is_zero());
            for y in &xs[i + 1..] {
                let r = x / y;
                assert!(!r.is_one() && r != q2 && r != q2.recip());
            }
        }
        assert_eq!(xs, c.sample_generic(6, &[Rational::zero()]));
    }
}
