//! Sparse Laurent polynomials with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{Int, Rat, UniPoly};
use crate::error::{Error, Result};

/// Exact Laurent polynomial `sum c_e t^e`, exponents may be negative.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactPoly {
    coeffs: BTreeMap<i64, Rat>,
    var: String,
}

/// The unit `sign * t^shift` that [`ExactPoly::normalize`] multiplied by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Normalization {
    pub shift: i64,
    pub sign: i8,
}

impl ExactPoly {
    pub fn new(terms: impl IntoIterator<Item = (i64, Rat)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e, c) in terms {
            let slot = coeffs.entry(e).or_insert_with(Rat::zero);
            *slot += c;
        }
        coeffs.retain(|_, c: &mut Rat| !c.is_zero());
        ExactPoly { coeffs, var: "t".into() }
    }

    pub fn from_i64_terms(terms: &[(i64, i64)]) -> Self {
        Self::new(terms.iter().map(|&(e, c)| (e, Rat::from_integer(Int::from(c)))))
    }

    /// Dense integer coefficients, lowest degree first.
    pub fn from_coeffs(c: &[i64]) -> Self {
        Self::new(c.iter().enumerate().map(|(i, &x)| (i as i64, Rat::from_integer(Int::from(x)))))
    }

    pub fn from_uni(p: &UniPoly) -> Self {
        Self::new(p.coeffs().iter().enumerate().map(|(i, c)| (i as i64, c.clone())))
    }

    pub fn zero() -> Self {
        Self::new([])
    }

    pub fn one() -> Self {
        Self::new([(0, Rat::one())])
    }

    pub fn with_var(mut self, var: impl Into<String>) -> Self {
        self.var = var.into();
        self
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rat)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> Rat {
        self.coeffs.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_laurent(&self) -> bool {
        self.min_exp().is_some_and(|e| e < 0)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    pub fn lc(&self) -> Rat {
        self.coeffs.values().next_back().cloned().unwrap_or_else(Rat::zero)
    }

    /// Dense polynomial; fails on negative exponents.
    pub fn to_uni(&self) -> Result<UniPoly> {
        if self.is_laurent() {
            return Err(Error::LaurentInput);
        }
        let n = self.max_exp().map_or(0, |e| e as usize + 1);
        let mut c = vec![Rat::zero(); n];
        for (e, x) in &self.coeffs {
            c[*e as usize] = x.clone();
        }
        Ok(UniPoly::new(c))
    }

    /// Multiply by `±t^k` so that the lowest exponent is 0 and the leading
    /// coefficient is positive.
    pub fn normalize(&self) -> Result<(UniPoly, Normalization)> {
        let lo = self.min_exp().ok_or(Error::ZeroPolynomial)?;
        let sign: i8 = if self.lc().is_negative() { -1 } else { 1 };
        let k = Rat::from_integer(Int::from(sign));
        let shifted = ExactPoly::new(self.terms().map(|(e, c)| (e - lo, c * &k)));
        Ok((shifted.to_uni()?, Normalization { shift: -lo, sign }))
    }

    /// Exponents re-centered so that the polynomial is symmetric about 0 when
    /// it is palindromic; requires an even exponent span.
    pub fn symmetrized(&self) -> Option<ExactPoly> {
        let (lo, hi) = (self.min_exp()?, self.max_exp()?);
        if (hi - lo) % 2 != 0 {
            return None;
        }
        let mid = (hi + lo) / 2;
        Some(ExactPoly::new(self.terms().map(|(e, c)| (e - mid, c.clone()))).with_var(self.var.clone()))
    }

    /// `p(1/t)`.
    pub fn invert_var(&self) -> Self {
        ExactPoly::new(self.terms().map(|(e, c)| (-e, c.clone()))).with_var(self.var.clone())
    }

    /// `p(-t)`.
    pub fn negate_var(&self) -> Self {
        ExactPoly::new(self.terms().map(|(e, c)| (e, if e % 2 != 0 { -c } else { c.clone() })))
            .with_var(self.var.clone())
    }

    pub fn mul_monomial(&self, coeff: &Rat, k: i64) -> Self {
        ExactPoly::new(self.terms().map(|(e, c)| (e + k, c * coeff))).with_var(self.var.clone())
    }

    pub fn eval(&self, x: &Rat) -> Result<Rat> {
        if x.is_zero() && self.is_laurent() {
            return Err(Error::ZeroArgument("evaluation point of a Laurent polynomial"));
        }
        Ok(self.terms().map(|(e, c)| c * super::rat_pow(x, e)).fold(Rat::zero(), |a, b| a + b))
    }
}

impl From<UniPoly> for ExactPoly {
    fn from(p: UniPoly) -> Self {
        ExactPoly::from_uni(&p)
    }
}

impl From<&UniPoly> for ExactPoly {
    fn from(p: &UniPoly) -> Self {
        ExactPoly::from_uni(p)
    }
}

/// Write terms (exponent descending) in the canonical text form:
/// `2t^2 - 3t + 1`, `t^-1`, `3/2*t`.
pub(crate) fn fmt_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i64, &'a Rat)>,
    var: &str,
) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        let a = c.abs();
        let mag = super::rat_to_string(&a);
        if e == 0 {
            f.write_str(&mag)?;
            continue;
        }
        if !a.is_one() {
            f.write_str(&mag)?;
            if !a.is_integer() {
                f.write_str("*")?;
            }
        }
        if e == 1 {
            f.write_str(var)?;
        } else {
            write!(f, "{var}^{e}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.terms().rev(), &self.var)
    }
}

impl fmt::Debug for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactPoly({self})")
    }
}

impl Serialize for ExactPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Add<&ExactPoly> for &ExactPoly {
    type Output = ExactPoly;
    fn add(self, o: &ExactPoly) -> ExactPoly {
        ExactPoly::new(self.terms().chain(o.terms()).map(|(e, c)| (e, c.clone()))).with_var(self.var.clone())
    }
}

impl Sub<&ExactPoly> for &ExactPoly {
    type Output = ExactPoly;
    fn sub(self, o: &ExactPoly) -> ExactPoly {
        self + &(-o)
    }
}

impl Neg for &ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        ExactPoly::new(self.terms().map(|(e, c)| (e, -c))).with_var(self.var.clone())
    }
}

impl Mul<&ExactPoly> for &ExactPoly {
    type Output = ExactPoly;
    fn mul(self, o: &ExactPoly) -> ExactPoly {
        let mut out = BTreeMap::new();
        for (e1, c1) in self.terms() {
            for (e2, c2) in o.terms() {
                *out.entry(e1 + e2).or_insert_with(Rat::zero) += c1 * c2;
            }
        }
        ExactPoly::new(out).with_var(self.var.clone())
    }
}
