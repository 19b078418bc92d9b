//! Hilbert symbols and ramification of quaternion algebras over Q, tame
//! symbols at places of Q(t), and the Hensel extension test.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::arith::factor::is_irreducible_over_q;
use crate::arith::int::{is_prime, prime_factors};
use crate::arith::{nf_is_square, ExactPoly, FieldExt, Int, NfElement, NumberField, Rat, UniPoly};
use crate::error::{Error, Result};

fn nonzero(a: &Rat, what: &'static str) -> Result<()> {
    if a.is_zero() {
        Err(Error::ZeroArgument(what))
    } else {
        Ok(())
    }
}

/// An integer in the same square class as `a`.
fn integral_class(a: &Rat) -> Int {
    a.numer() * a.denom()
}

pub fn hilbert_real(a: &Rat, b: &Rat) -> Result<i8> {
    nonzero(a, "a")?;
    nonzero(b, "b")?;
    Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 })
}

fn split_power(n: &Int, p: &Int) -> (u64, Int) {
    let mut n = n.clone();
    let mut k = 0;
    while (&n % p).is_zero() {
        n /= p;
        k += 1;
    }
    (k, n)
}

fn legendre(u: &Int, p: &Int) -> i8 {
    let e = (p - Int::one()) >> 1;
    let r = u.mod_floor(p).modpow(&e, p);
    if r.is_one() {
        1
    } else {
        -1
    }
}

fn hilbert_at(a: &Int, b: &Int, p: &Int) -> i8 {
    let (alpha, u) = split_power(a, p);
    let (beta, v) = split_power(b, p);
    if *p == Int::from(2) {
        let m8 = |x: &Int| x.mod_floor(&Int::from(8)).to_u64().unwrap();
        let (u8_, v8) = (m8(&u), m8(&v));
        let eps = |x: u64| ((x - 1) / 2) % 2;
        let omega = |x: u64| ((x * x - 1) / 8) % 2;
        let e = eps(u8_) * eps(v8) + alpha * omega(v8) + beta * omega(u8_);
        return if e % 2 == 0 { 1 } else { -1 };
    }
    let half = ((p - Int::one()) >> 1u32).is_odd();
    let mut s: i8 = if (alpha * beta) % 2 == 1 && half { -1 } else { 1 };
    if beta % 2 == 1 {
        s *= legendre(&u, p);
    }
    if alpha % 2 == 1 {
        s *= legendre(&v, p);
    }
    s
}

/// Local Hilbert symbol `(a, b)_p`.
pub fn hilbert_p(a: &Rat, b: &Rat, p: u64) -> Result<i8> {
    nonzero(a, "a")?;
    nonzero(b, "b")?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(hilbert_at(&integral_class(a), &integral_class(b), &Int::from(p)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamificationSet {
    pub includes_real_place: bool,
    pub finite_primes: Vec<u64>,
}

impl RamificationSet {
    pub fn cardinality(&self) -> usize {
        self.finite_primes.len() + usize::from(self.includes_real_place)
    }

    pub fn is_split(&self) -> bool {
        self.cardinality() == 0
    }
}

impl fmt::Display for RamificationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.includes_real_place {
            parts.push("inf".into());
        }
        parts.extend(self.finite_primes.iter().map(|p| p.to_string()));
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Places where the quaternion algebra `(a, b)` over Q ramifies.
pub fn ramification_set(a: &Rat, b: &Rat) -> Result<RamificationSet> {
    let real = hilbert_real(a, b)? == -1;
    let (ia, ib) = (integral_class(a), integral_class(b));
    let mut primes = prime_factors(&(&ia * &ib));
    let two = Int::from(2);
    if !primes.contains(&two) {
        primes.insert(0, two);
    }
    let mut finite = Vec::new();
    for p in primes {
        if hilbert_at(&ia, &ib, &p) == -1 {
            let q = p.to_u64().ok_or_else(|| Error::InvalidParameter(format!("prime {p} exceeds 64 bits")))?;
            finite.push(q);
        }
    }
    finite.sort_unstable();
    let set = RamificationSet { includes_real_place: real, finite_primes: finite };
    debug_assert_eq!(set.cardinality() % 2, 0, "Hilbert reciprocity");
    Ok(set)
}

/// Rational function `num/den` in lowest terms with monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if num.is_zero() {
            return Ok(RatFunc { num, den: UniPoly::one() });
        }
        let g = UniPoly::gcd(&num, &den);
        let (n, d) = (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap());
        let k = d.lc();
        Ok(RatFunc { num: n.scale(&k.recip()), den: d.monic() })
    }

    pub fn poly(p: UniPoly) -> Self {
        RatFunc { num: p, den: UniPoly::one() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::poly(UniPoly::constant(c))
    }

    /// `p/q` from Laurent polynomials.
    pub fn from_exact(p: &ExactPoly, q: &ExactPoly) -> Result<Self> {
        let (a, na) = p.normalize()?;
        let (b, nb) = q.normalize()?;
        // p = sign_a t^{-shift_a} a, likewise q
        let sign = Rat::from_integer(Int::from(na.sign * nb.sign));
        let shift = nb.shift - na.shift;
        let (mut num, mut den) = (a.scale(&sign), b);
        if shift >= 0 {
            num = num.shift_up(shift as usize);
        } else {
            den = den.shift_up((-shift) as usize);
        }
        Self::new(num, den)
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den).unwrap()
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::NotInvertible);
        }
        Self::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&(&self.num * &o.den) - &(&o.num * &self.den), &self.den * &o.den).unwrap()
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { Self::constant(Rat::one()).div(self)? } else { self.clone() };
        let mut acc = Self::constant(Rat::one());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == UniPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

/// A place of Q(t): a monic irreducible polynomial or the point at infinity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PlaceOfQt {
    Finite(UniPoly),
    Infinity,
}

impl PlaceOfQt {
    pub fn finite(pi: &UniPoly) -> Result<Self> {
        if pi.is_constant() {
            return Err(Error::ConstantModulus);
        }
        if !is_irreducible_over_q(pi)? {
            return Err(Error::ReducibleModulus(pi.to_string()));
        }
        Ok(PlaceOfQt::Finite(pi.monic()))
    }

    fn poly_ord(&self, p: &UniPoly) -> i64 {
        match self {
            PlaceOfQt::Infinity => -(p.deg() as i64),
            PlaceOfQt::Finite(pi) => {
                let mut k = 0;
                let mut q = p.clone();
                while let Some(next) = q.exact_div(pi) {
                    q = next;
                    k += 1;
                }
                k
            }
        }
    }

    pub fn ord(&self, f: &RatFunc) -> Result<i64> {
        if f.is_zero() {
            return Err(Error::ZeroArgument("valuation of zero"));
        }
        Ok(self.poly_ord(&f.num) - self.poly_ord(&f.den))
    }

    /// Residue field `Q[t]/(π)`, or Q at infinity.
    pub fn residue_field(&self) -> Arc<NumberField> {
        match self {
            PlaceOfQt::Infinity => NumberField::rationals(),
            PlaceOfQt::Finite(pi) => NumberField::from_irreducible(pi, "t"),
        }
    }

    /// Image of a unit (valuation 0) in the residue field.
    pub fn reduce_unit(&self, u: &RatFunc) -> Result<NfElement> {
        if self.ord(u)? != 0 {
            return Err(Error::InvalidParameter("not a unit at this place".into()));
        }
        let k = self.residue_field();
        match self {
            PlaceOfQt::Infinity => Ok(k.from_rat(u.num.lc() / u.den.lc())),
            PlaceOfQt::Finite(_) => {
                let n = k.element(u.num.clone());
                let d = k.element(u.den.clone());
                Ok(&n * &d.inv()?)
            }
        }
    }
}

impl fmt::Display for PlaceOfQt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaceOfQt::Infinity => f.write_str("inf"),
            PlaceOfQt::Finite(pi) => write!(f, "{pi}"),
        }
    }
}

/// A class in `k*/(k*)^2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SquareClass {
    pub field: Arc<NumberField>,
    pub representative: NfElement,
    pub trivial: bool,
}

impl Serialize for SquareClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SquareClass", 3)?;
        let field = if self.field.degree() == 1 && self.field.modulus() == &UniPoly::x() {
            "Q".to_string()
        } else {
            format!("Q[t]/({})", self.field.modulus())
        };
        st.serialize_field("field", &field)?;
        st.serialize_field("representative", &self.representative.to_string())?;
        st.serialize_field("trivial", &self.trivial)?;
        st.end()
    }
}

/// `{α, β}_P`: the residue of `(-1)^{rs} β^r / α^s`, `r = ord α`, `s = ord β`.
pub fn tame_symbol(alpha: &RatFunc, beta: &RatFunc, place: &PlaceOfQt) -> Result<SquareClass> {
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::ZeroArgument("tame symbol entry"));
    }
    let r = place.ord(alpha)?;
    let s = place.ord(beta)?;
    let mut u = beta.pow(r)?.div(&alpha.pow(s)?)?;
    if (r * s) % 2 != 0 {
        u = u.neg();
    }
    let rep = place.reduce_unit(&u)?;
    let (trivial, _) = nf_is_square(&rep);
    Ok(SquareClass { field: place.residue_field(), representative: rep, trivial })
}

/// Where the Hensel test is applied.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum HenselPlace {
    Function(PlaceOfQt),
    Prime(u64),
}

/// Whether `ord_P(1 - α) > 2 ord_P(2)`. At places of Q(t) `ord_P(2) = 0`; at
/// a rational prime `α` must be constant.
pub fn hensel_extends(alpha: &RatFunc, place: &HenselPlace) -> Result<bool> {
    if alpha.is_zero() {
        return Err(Error::ZeroArgument("alpha"));
    }
    let one_minus = RatFunc::constant(Rat::one()).sub(alpha);
    if one_minus.is_zero() {
        return Ok(true);
    }
    match place {
        HenselPlace::Function(p) => Ok(p.ord(&one_minus)? > 0),
        HenselPlace::Prime(p) => {
            if !is_prime(*p) {
                return Err(Error::NotPrime(*p));
            }
            if !(one_minus.num.is_constant() && one_minus.den.is_constant()) {
                return Err(Error::InvalidParameter("alpha must be a rational number at a rational prime".into()));
            }
            let x = one_minus.num.coeff(0) / one_minus.den.coeff(0);
            let v =
                crate::arith::int::valuation(x.numer(), *p) as i64 - crate::arith::int::valuation(x.denom(), *p) as i64;
            let two = if *p == 2 { 1 } else { 0 };
            Ok(v > 2 * two)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};

    #[test]
    fn symbols_minus3_minus2() {
        assert_eq!(hilbert_real(&rat(-3), &rat(-2)).unwrap(), -1);
        assert_eq!(hilbert_p(&rat(-3), &rat(-2), 2).unwrap(), -1);
        assert_eq!(hilbert_p(&rat(-3), &rat(-2), 3).unwrap(), 1);
        let r = ramification_set(&rat(-3), &rat(-2)).unwrap();
        assert_eq!(r, RamificationSet { includes_real_place: true, finite_primes: vec![2] });
        assert!(ramification_set(&rat(1), &rat(1)).unwrap().is_split());
        assert!(hilbert_p(&rat(0), &rat(1), 3).is_err());
        assert_eq!(hilbert_p(&rat(1), &rat(1), 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn classical_algebras() {
        // Hamilton quaternions ramify at {inf, 2}; (-1, 3) at {2, 3}
        assert_eq!(ramification_set(&rat(-1), &rat(-1)).unwrap().to_string(), "{inf, 2}");
        assert_eq!(ramification_set(&rat(-1), &rat(3)).unwrap().to_string(), "{2, 3}");
        assert_eq!(ramification_set(&ratio(-1, 4), &rat(-1)).unwrap().to_string(), "{inf, 2}");
    }

    #[test]
    fn tame_examples() {
        let t = RatFunc::poly(UniPoly::x());
        let alpha = RatFunc::poly(UniPoly::from_i64s(&[2, 2]));
        let p = PlaceOfQt::finite(&UniPoly::x()).unwrap();
        let c = tame_symbol(&alpha, &t, &p).unwrap();
        assert!(!c.trivial);
        assert_eq!(c.representative.as_rational(), Some(ratio(1, 2)));
        let unit = RatFunc::poly(UniPoly::from_i64s(&[3, 1]));
        assert!(tame_symbol(&unit, &unit, &p).unwrap().trivial);
        let sq = RatFunc::poly(UniPoly::from_i64s(&[4, 1]));
        assert!(tame_symbol(&sq, &t, &p).unwrap().trivial);
    }

    #[test]
    fn hensel() {
        // 1 - 4/t^2 at infinity
        let t2 = RatFunc::poly(UniPoly::from_i64s(&[0, 0, 1]));
        let alpha = RatFunc::constant(rat(1)).sub(&RatFunc::constant(rat(4)).div(&t2).unwrap());
        assert!(hensel_extends(&alpha, &HenselPlace::Function(PlaceOfQt::Infinity)).unwrap());
        assert!(hensel_extends(&RatFunc::constant(rat(1)), &HenselPlace::Prime(3)).unwrap());
        assert!(!hensel_extends(&RatFunc::constant(rat(2)), &HenselPlace::Prime(3)).unwrap());
        assert!(hensel_extends(&RatFunc::constant(rat(9)), &HenselPlace::Prime(2)).unwrap());
        assert!(!hensel_extends(&RatFunc::constant(rat(5)), &HenselPlace::Prime(2)).unwrap());
    }
}
