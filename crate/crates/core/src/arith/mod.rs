//! Exact arithmetic: rationals, dense and Laurent polynomials, finite fields,
//! factorization, Sturm sequences, number fields and 2x2 matrices over them.

pub mod factor;
pub mod ff;
pub mod int;
pub mod linalg;
pub mod mat2;
pub mod nf;
pub mod poly;
pub mod sturm;
pub mod upoly;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub type Int = BigInt;
pub type Rat = BigRational;

pub use factor::{factor_over_q, factor_uni, Factorization};
pub use ff::{factor_mod_l, FfElement, FfField, FpPoly};
pub use mat2::{mat2_word_eval, Mat2};
pub use nf::{nf_is_square, nf_linear_expression, nf_minpoly, FieldExt, NfElement, NfPoly, NumberField};
pub use poly::ExactPoly;
pub use sturm::{sturm_count, Bound};
pub use upoly::UniPoly;

use num_traits::{One, Signed, Zero};

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(n: Int) -> Rat {
    Rat::from_integer(n)
}

/// Canonical decimal text for a rational: `n` or `n/d`.
pub fn rat_to_string(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: Int = n.trim().parse().ok()?;
        let d: Int = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rat::new(n, d))
    } else {
        Some(Rat::from_integer(s.parse().ok()?))
    }
}

pub(crate) fn rat_pow(base: &Rat, exp: i64) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..exp.unsigned_abs() {
        acc *= base;
    }
    if exp < 0 {
        acc.recip()
    } else {
        acc
    }
}

pub(crate) fn is_rational_square(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}
