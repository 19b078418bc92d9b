//! 2x2 matrices over a number field and relator-word evaluation.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::nf::{FieldExt, NfElement, NumberField};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Mat2 {
    pub a11: NfElement,
    pub a12: NfElement,
    pub a21: NfElement,
    pub a22: NfElement,
}

impl Mat2 {
    pub fn new(a11: NfElement, a12: NfElement, a21: NfElement, a22: NfElement) -> Result<Self> {
        let m = Mat2 { a11, a12, a21, a22 };
        if !(m.a11.same_field(&m.a12) && m.a11.same_field(&m.a21) && m.a11.same_field(&m.a22)) {
            return Err(Error::MixedFields);
        }
        Ok(m)
    }

    pub fn identity(k: &Arc<NumberField>) -> Self {
        Mat2 { a11: k.one(), a12: k.zero(), a21: k.zero(), a22: k.one() }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.a11.field()
    }

    pub fn det(&self) -> NfElement {
        &(&self.a11 * &self.a22) - &(&self.a12 * &self.a21)
    }

    pub fn trace(&self) -> NfElement {
        &self.a11 + &self.a22
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if !self.a11.same_field(&o.a11) {
            return Err(Error::MixedFields);
        }
        Ok(Mat2 {
            a11: &(&self.a11 * &o.a11) + &(&self.a12 * &o.a21),
            a12: &(&self.a11 * &o.a12) + &(&self.a12 * &o.a22),
            a21: &(&self.a21 * &o.a11) + &(&self.a22 * &o.a21),
            a22: &(&self.a21 * &o.a12) + &(&self.a22 * &o.a22),
        })
    }

    /// Adjugate; the inverse when the determinant is 1.
    pub fn adjugate(&self) -> Self {
        Mat2 { a11: self.a22.clone(), a12: -&self.a12, a21: -&self.a21, a22: self.a11.clone() }
    }

    pub fn inverse(&self) -> Result<Self> {
        let d = self.det().inv()?;
        let adj = self.adjugate();
        Ok(Mat2 { a11: &adj.a11 * &d, a12: &adj.a12 * &d, a21: &adj.a21 * &d, a22: &adj.a22 * &d })
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::identity(self.field())
    }

    pub fn is_minus_identity(&self) -> bool {
        let k = self.field();
        self.a11 == -&k.one() && self.a22 == -&k.one() && self.a12.is_zero() && self.a21.is_zero()
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a11, self.a12, self.a21, self.a22)
    }
}

/// Product of the matrices named by `word`; lowercase letters are looked up
/// in `assignment` and uppercase letters denote adjugates (inverses in SL2).
pub fn mat2_word_eval(assignment: &HashMap<char, Mat2>, word: &str) -> Result<Mat2> {
    let mut field: Option<&Arc<NumberField>> = None;
    for m in assignment.values() {
        match field {
            None => field = Some(m.field()),
            Some(k) if k == m.field() => {}
            Some(_) => return Err(Error::MixedFields),
        }
    }
    let k = field.cloned().unwrap_or_else(NumberField::rationals);
    let mut acc = Mat2::identity(&k);
    for ch in word.chars() {
        let lower = ch.to_ascii_lowercase();
        if !matches!(lower, 'a' | 'b') {
            return Err(Error::UnknownLetter(ch));
        }
        let m = assignment.get(&lower).ok_or(Error::UnknownLetter(ch))?;
        let step = if ch.is_ascii_uppercase() { m.adjugate() } else { m.clone() };
        acc = acc.mul(&step)?;
    }
    Ok(acc)
}
