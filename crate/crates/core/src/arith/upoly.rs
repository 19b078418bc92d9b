//! Dense univariate polynomials over Q.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{poly::fmt_terms, Int, Rat};
use crate::error::{Error, Result};

/// Polynomial over Q, coefficients ascending, never with a trailing zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    c: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| Rat::from_integer(Int::from(x))).collect())
    }

    pub fn from_ints(c: &[Int]) -> Self {
        Self::new(c.iter().map(|x| Rat::from_integer(x.clone())).collect())
    }

    pub fn zero() -> Self {
        UniPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(r: Rat) -> Self {
        Self::new(vec![r])
    }

    /// The polynomial `t`.
    pub fn x() -> Self {
        Self::monomial(Rat::one(), 1)
    }

    pub fn monomial(coeff: Rat, k: usize) -> Self {
        let mut c = vec![Rat::zero(); k + 1];
        c[k] = coeff;
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.c.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Rat {
        self.c.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        UniPoly { c: self.c.iter().map(|x| x * k).collect() }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.lc().recip())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Rat::zero(); k];
        c.extend(self.c.iter().cloned());
        UniPoly { c }
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.deg();
        if self.c.len() < d.c.len() {
            return (Self::zero(), self.clone());
        }
        let inv = d.lc().recip();
        let mut r = self.c.clone();
        let mut q = vec![Rat::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let k = &r[i + dd] * &inv;
            if !k.is_zero() {
                for (j, dc) in d.c.iter().enumerate() {
                    let t = &k * dc;
                    r[i + j] -= t;
                }
            }
            q[i] = k;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd; zero only when both inputs are zero.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.monic(), b.monic());
        while !b.is_zero() {
            let r = a.rem(&b).monic();
            a = b;
            b = r;
        }
        a
    }

    /// `(g, s)` with `g = gcd(self, m)` monic and `s*self = g (mod m)`.
    pub fn half_gcd_ext(&self, m: &Self) -> (Self, Self) {
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut s0, mut s1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        let k = r0.lc().recip();
        (r0.scale(&k), s0.scale(&k))
    }

    /// Inverse of `self` modulo `m` when they are coprime.
    pub fn inverse_mod(&self, m: &Self) -> Option<Self> {
        let (g, s) = self.half_gcd_ext(m);
        (g.degree() == Some(0)).then(|| s.rem(m))
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.c.iter().enumerate().skip(1).map(|(i, x)| x * Rat::from_integer(Int::from(i))).collect())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `self(g(t))`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.c.iter().rev() {
            acc = &(&acc * g) + &Self::constant(c.clone());
        }
        acc
    }

    /// `self(t^2)`.
    pub fn at_square(&self) -> Self {
        let mut c = vec![Rat::zero(); 2 * self.c.len()];
        for (i, x) in self.c.iter().enumerate() {
            c[2 * i] = x.clone();
        }
        Self::new(c)
    }

    /// `self(-t)`.
    pub fn at_neg(&self) -> Self {
        Self::new(self.c.iter().enumerate().map(|(i, x)| if i % 2 == 1 { -x } else { x.clone() }).collect())
    }

    /// `t^deg * self(1/t)`.
    pub fn reverse(&self) -> Self {
        let mut c = self.c.clone();
        c.reverse();
        Self::new(c)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicity of `t` as a factor.
    pub fn low_order(&self) -> usize {
        self.c.iter().take_while(|x| x.is_zero()).count()
    }

    pub fn squarefree_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = Self::gcd(self, &self.derivative());
        Ok(self.exact_div(&g).expect("gcd divides").monic())
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && Self::gcd(self, &self.derivative()).is_constant()
    }

    /// Yun's algorithm: monic squarefree, pairwise coprime `(a_i, i)` with
    /// `monic(self) = prod a_i^i`. Trivial parts are omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = Self::gcd(&f, &fp);
        let mut b = f.exact_div(&a0).unwrap();
        let mut c = fp.exact_div(&a0).unwrap();
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let a = Self::gcd(&b, &d);
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a).unwrap();
            if b.is_constant() {
                break;
            }
            c = d.exact_div(&a).unwrap();
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Sylvester resultant: `lc(a)^deg b * prod b(alpha)` over roots `alpha` of `a`.
    pub fn resultant(a: &Self, b: &Self) -> Result<Rat> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut a = a.clone();
        let mut b = b.clone();
        let mut acc = Rat::one();
        loop {
            let (m, n) = (a.deg(), b.deg());
            if n == 0 {
                return Ok(acc * super::rat_pow(&b.lc(), m as i64));
            }
            if m == 0 {
                return Ok(acc * super::rat_pow(&a.lc(), n as i64));
            }
            // Res(a, b) = (-1)^{mn} lc(b)^{m - deg r} Res(b, r) with r = a mod b.
            let r = a.rem(&b);
            if r.is_zero() {
                return Ok(Rat::zero());
            }
            if (m * n) % 2 == 1 {
                acc = -acc;
            }
            acc *= super::rat_pow(&b.lc(), (m - r.deg()) as i64);
            a = b;
            b = r;
        }
    }

    pub fn discriminant(&self) -> Result<Rat> {
        let n = self.degree().ok_or(Error::ZeroPolynomial)?;
        if n == 0 {
            return Ok(Rat::one());
        }
        let res = Self::resultant(self, &self.derivative())?;
        let sign = if (n * (n - 1) / 2) % 2 == 1 { -Rat::one() } else { Rat::one() };
        Ok(sign * res / self.lc())
    }

    /// Split as `content * primitive` with integer primitive part of positive
    /// leading coefficient.
    pub fn primitive_part(&self) -> (Rat, Vec<Int>) {
        if self.is_zero() {
            return (Rat::zero(), Vec::new());
        }
        let den = self.c.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<Int> = self.c.iter().map(|x| (x * Rat::from_integer(den.clone())).to_integer()).collect();
        let mut g = ints.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim: Vec<Int> = ints.iter().map(|x| x / &g).collect();
        (Rat::new(g, den), prim)
    }

    /// Primitive integer representative as a `UniPoly`.
    pub fn primitive(&self) -> Self {
        Self::from_ints(&self.primitive_part().1)
    }

    pub fn is_integral(&self) -> bool {
        self.c.iter().all(|x| x.is_integer())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.c.iter().enumerate().rev().map(|(i, c)| (i as i64, c)), "t")
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl Add<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.c.len().max(o.c.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.c.len().max(o.c.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![Rat::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UniPoly::new(c)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { c: self.c.iter().map(|x| -x).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, o: UniPoly) -> UniPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_i64s(c)
    }

    #[test]
    fn gcd_examples() {
        // gcd(t^2 - 1, t - 1) = t - 1
        assert_eq!(UniPoly::gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])), p(&[-1, 1]));
        // coprime irreducibles
        let g = UniPoly::gcd(&p(&[1, -3, 1]), &p(&[1, 1, 1]));
        assert_eq!(g, UniPoly::one());
        // oracle: neither divides the other and the remainder sequence ends in a constant
        let r = p(&[1, -3, 1]).rem(&p(&[1, 1, 1]));
        assert_eq!(r, p(&[0, -4]));
        let r2 = p(&[1, 1, 1]).rem(&r);
        assert!(r2.degree() == Some(0));
        // gcd(p, 0) = monic(p)
        assert_eq!(UniPoly::gcd(&p(&[2, 4]), &UniPoly::zero()), p(&[2, 4]).monic());
        assert_eq!(p(&[2, 4]).monic(), UniPoly::new(vec![crate::arith::ratio(1, 2), rat(1)]));
    }

    #[test]
    fn squarefree_examples() {
        let a = &p(&[-1, 1]).pow(2) * &p(&[2, 1]);
        assert_eq!(a.squarefree_part().unwrap(), &p(&[-1, 1]) * &p(&[2, 1]));
        assert_eq!(p(&[1, -3, 1]).squarefree_part().unwrap(), p(&[1, -3, 1]));
        assert_eq!(p(&[1, 1, 1]).pow(3).squarefree_part().unwrap(), p(&[1, 1, 1]));
        assert_eq!(UniPoly::zero().squarefree_part(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn yun_decomposition() {
        let f = &(&p(&[-1, 1]).pow(2) * &p(&[2, 1])) * &p(&[1, 1, 1]).pow(3);
        let d = f.squarefree_decomposition();
        assert_eq!(d, vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 2), (p(&[1, 1, 1]), 3)]);
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(UniPoly::resultant(&p(&[-2, 1]), &p(&[-3, 1])).unwrap(), rat(-1));
        let f = p(&[1, -3, 1]);
        let r = UniPoly::resultant(&f, &f.derivative()).unwrap();
        assert_eq!(r.abs(), rat(5));
        assert_eq!(f.discriminant().unwrap(), rat(5));
        assert_eq!(UniPoly::resultant(&f, &UniPoly::one()).unwrap(), rat(1));
        assert!(UniPoly::resultant(&f, &UniPoly::zero()).is_err());
    }

    #[test]
    fn resultant_matches_root_product() {
        // Res((t-1)(t-2), (t-3)(t+1)) = prod (a_i - b_j)
        let a = p(&[2, -3, 1]);
        let b = p(&[-3, -2, 1]);
        let expect = [1i64, 2].iter().flat_map(|&x| [3i64, -1].map(move |y| x - y)).product::<i64>();
        assert_eq!(UniPoly::resultant(&a, &b).unwrap(), rat(expect));
    }

    #[test]
    fn primitive_split() {
        let f = UniPoly::new(vec![crate::arith::ratio(-1, 2), rat(0), crate::arith::ratio(-3, 4)]);
        let (c, prim) = f.primitive_part();
        assert_eq!(c, crate::arith::ratio(-1, 4));
        assert_eq!(prim, vec![Int::from(2), Int::from(0), Int::from(3)]);
    }

    #[test]
    fn inverse_mod_poly() {
        let m = p(&[-5, 0, 1]);
        let a = p(&[1, 1]);
        let inv = a.inverse_mod(&m).unwrap();
        assert_eq!((&a * &inv).rem(&m), UniPoly::one());
        assert!(p(&[-1, 1]).inverse_mod(&p(&[-1, 0, 1])).is_none());
    }
}
