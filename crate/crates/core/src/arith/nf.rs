//! Number fields `Q[y]/(m)` and polynomials over them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::factor::{factor_uni, is_irreducible_over_q};
use super::linalg::solve;
use super::{rat, ExactPoly, Rat, UniPoly};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumberField {
    modulus: UniPoly,
    var: String,
}

impl NumberField {
    /// The field defined by `m`, which must be irreducible over Q. The
    /// stored modulus is made monic.
    pub fn new(m: &UniPoly) -> Result<Arc<Self>> {
        Self::with_var(m, "y")
    }

    pub fn with_var(m: &UniPoly, var: &str) -> Result<Arc<Self>> {
        if m.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if m.is_constant() {
            return Err(Error::ConstantModulus);
        }
        if !is_irreducible_over_q(m)? {
            return Err(Error::ReducibleModulus(m.to_string()));
        }
        Ok(Arc::new(NumberField { modulus: m.monic(), var: var.into() }))
    }

    /// Skips the irreducibility check; `m` must come from a factorization.
    pub(crate) fn from_irreducible(m: &UniPoly, var: &str) -> Arc<Self> {
        Arc::new(NumberField { modulus: m.monic(), var: var.into() })
    }

    pub fn from_exact(m: &ExactPoly) -> Result<Arc<Self>> {
        Self::new(&m.to_uni()?)
    }

    /// Q itself, presented as `Q[y]/(y)`.
    pub fn rationals() -> Arc<Self> {
        Arc::new(NumberField { modulus: UniPoly::x(), var: "y".into() })
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg()
    }

    pub fn var(&self) -> &str {
        &self.var
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField(Q[{}]/({}))", self.var, ExactPoly::from_uni(&self.modulus).with_var(self.var.clone()))
    }
}

pub trait FieldExt {
    fn element(&self, repr: UniPoly) -> NfElement;
    fn from_rat(&self, r: Rat) -> NfElement;
    fn from_i64(&self, n: i64) -> NfElement;
    fn zero(&self) -> NfElement;
    fn one(&self) -> NfElement;
    fn generator(&self) -> NfElement;
}

impl FieldExt for Arc<NumberField> {
    fn element(&self, repr: UniPoly) -> NfElement {
        NfElement { repr: repr.rem(&self.modulus), field: Arc::clone(self) }
    }

    fn from_rat(&self, r: Rat) -> NfElement {
        self.element(UniPoly::constant(r))
    }

    fn from_i64(&self, n: i64) -> NfElement {
        self.from_rat(rat(n))
    }

    fn zero(&self) -> NfElement {
        self.from_i64(0)
    }

    fn one(&self) -> NfElement {
        self.from_i64(1)
    }

    fn generator(&self) -> NfElement {
        self.element(UniPoly::x())
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NfElement {
    field: Arc<NumberField>,
    repr: UniPoly,
}

impl NfElement {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn repr(&self) -> &UniPoly {
        &self.repr
    }

    pub fn is_zero(&self) -> bool {
        self.repr.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.repr == UniPoly::one()
    }

    pub fn same_field(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.field, &o.field) || self.field == o.field
    }

    /// The element as a rational, if it lies in Q.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.repr.is_constant() {
            Some(self.repr.coeff(0))
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotInvertible);
        }
        let r = self.repr.inverse_mod(&self.field.modulus).ok_or(Error::NotInvertible)?;
        Ok(self.field.element(r))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.field.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, k: &Rat) -> Self {
        self.field.element(self.repr.scale(k))
    }

    /// Field norm to Q.
    pub fn norm(&self) -> Rat {
        if self.is_zero() {
            return Rat::zero();
        }
        UniPoly::resultant(&self.field.modulus, &self.repr).expect("nonzero inputs")
    }

    /// Coordinates in the power basis `1, y, ..., y^{n-1}`.
    pub fn coords(&self) -> Vec<Rat> {
        (0..self.field.degree()).map(|i| self.repr.coeff(i)).collect()
    }

    pub fn to_exact(&self) -> ExactPoly {
        ExactPoly::from_uni(&self.repr).with_var(self.field.var.clone())
    }

    fn check(&self, o: &Self) {
        assert!(self.same_field(o), "number field elements from different fields");
    }
}

impl fmt::Display for NfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_exact())
    }
}

impl fmt::Debug for NfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NfElement({self})")
    }
}

impl Add<&NfElement> for &NfElement {
    type Output = NfElement;
    fn add(self, o: &NfElement) -> NfElement {
        self.check(o);
        NfElement { repr: &self.repr + &o.repr, field: Arc::clone(&self.field) }
    }
}

impl Sub<&NfElement> for &NfElement {
    type Output = NfElement;
    fn sub(self, o: &NfElement) -> NfElement {
        self.check(o);
        NfElement { repr: &self.repr - &o.repr, field: Arc::clone(&self.field) }
    }
}

impl Mul<&NfElement> for &NfElement {
    type Output = NfElement;
    fn mul(self, o: &NfElement) -> NfElement {
        self.check(o);
        self.field.element(&self.repr * &o.repr)
    }
}

impl Neg for &NfElement {
    type Output = NfElement;
    fn neg(self) -> NfElement {
        NfElement { repr: -&self.repr, field: Arc::clone(&self.field) }
    }
}

/// Minimal polynomial over Q (monic, in the variable `t`).
pub fn nf_minpoly(e: &NfElement) -> ExactPoly {
    ExactPoly::from_uni(&minpoly_uni(e))
}

pub fn minpoly_uni(e: &NfElement) -> UniPoly {
    let n = e.field.degree();
    let mut powers = vec![e.field.one()];
    for k in 1..=n {
        let next = &powers[k - 1] * e;
        if let Some(c) = express(&powers, &next, n) {
            let mut coeffs: Vec<Rat> = c.into_iter().map(|x| -x).collect();
            coeffs.push(Rat::one());
            return UniPoly::new(coeffs);
        }
        powers.push(next);
    }
    unreachable!("an element of a degree-{n} field satisfies a polynomial of degree at most {n}")
}

/// Solve `target = sum c_i basis_i` over Q.
fn express(basis: &[NfElement], target: &NfElement, n: usize) -> Option<Vec<Rat>> {
    let a: Vec<Vec<Rat>> = (0..n).map(|row| basis.iter().map(|b| b.repr.coeff(row)).collect()).collect();
    let b: Vec<Rat> = target.coords();
    solve(&a, &b)
}

/// Coefficients `c_i` with `target = sum c_i theta^i`, `i < deg minpoly(theta)`,
/// when `target` lies in `Q(theta)`.
pub fn nf_linear_expression(field: &Arc<NumberField>, target: &NfElement, theta: &NfElement) -> Option<Vec<Rat>> {
    if !(target.field == *field && theta.field == *field) {
        return None;
    }
    let d = minpoly_uni(theta).deg();
    let mut powers = vec![field.one()];
    for k in 1..d {
        let next = &powers[k - 1] * theta;
        powers.push(next);
    }
    express(&powers, target, field.degree())
}

/// Polynomial in `X` over a number field, coefficients ascending.
#[derive(Clone, PartialEq, Eq)]
pub struct NfPoly {
    field: Arc<NumberField>,
    c: Vec<NfElement>,
}

impl NfPoly {
    pub fn new(field: &Arc<NumberField>, mut c: Vec<NfElement>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        NfPoly { field: Arc::clone(field), c }
    }

    /// A rational polynomial viewed over the field.
    pub fn from_uni(field: &Arc<NumberField>, p: &UniPoly) -> Self {
        Self::new(field, p.coeffs().iter().map(|x| field.from_rat(x.clone())).collect())
    }

    pub fn coeffs(&self) -> &[NfElement] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> NfElement {
        self.c.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().inv().expect("nonzero leading coefficient");
        Self::new(&self.field, self.c.iter().map(|x| x * &inv).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let z = self.field.zero();
        Self::new(&self.field, (0..n).map(|i| self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(&self.field, Vec::new());
        }
        let mut out = vec![self.field.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(&self.field, out)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.c.clone();
        if r.len() < d.c.len() {
            return (Self::new(&self.field, Vec::new()), self.clone());
        }
        let dd = d.deg();
        let inv = d.lc().inv().unwrap();
        let mut q = vec![self.field.zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let k = &r[i + dd] * &inv;
            if !k.is_zero() {
                for (j, dc) in d.c.iter().enumerate() {
                    r[i + j] = &r[i + j] - &(&k * dc);
                }
            }
            q[i] = k;
        }
        r.truncate(dd);
        (Self::new(&self.field, q), Self::new(&self.field, r))
    }

    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &NfElement) -> NfElement {
        self.c.iter().rev().fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(&self.field, self.c.iter().enumerate().skip(1).map(|(i, x)| x.scale(&rat(i as i64))).collect())
    }

    /// `p(X + a)`.
    pub fn shift(&self, a: &NfElement) -> Self {
        let lin = Self::new(&self.field, vec![a.clone(), self.field.one()]);
        let mut acc = Self::new(&self.field, Vec::new());
        for c in self.c.iter().rev() {
            acc = acc.mul(&lin).add(&Self::new(&self.field, vec![c.clone()]));
        }
        acc
    }

    /// `Norm_{K/Q}` of the polynomial: `prod_sigma p^sigma(X)`, recovered by
    /// interpolating element norms at `X = 0, 1, ..., n*deg`.
    pub fn norm(&self) -> UniPoly {
        let npts = self.field.degree() * self.deg() + 1;
        let xs: Vec<Rat> = (0..npts as i64).map(rat).collect();
        let ys: Vec<Rat> = xs.iter().map(|x| self.eval(&self.field.from_rat(x.clone())).norm()).collect();
        interpolate(&xs, &ys)
    }

    /// Monic irreducible factors of a squarefree polynomial (Trager), trying
    /// shifts `c = start, start + 1, ...` until the norm is squarefree.
    pub fn factor_squarefree(&self, start: i64) -> (Vec<NfPoly>, i64) {
        if self.deg() <= 1 {
            return (if self.deg() == 1 { vec![self.monic()] } else { Vec::new() }, start);
        }
        let y = self.field.generator();
        let mut c = start;
        loop {
            // g(X) = f(X - c*y)
            let shift = y.scale(&rat(-c));
            let g = self.shift(&shift);
            let n = g.norm();
            if n.is_squarefree() {
                let back = y.scale(&rat(c));
                let mut out = Vec::new();
                for (ni, _) in factor_uni(&n).expect("nonzero norm").factors {
                    let h = NfPoly::gcd(&g, &NfPoly::from_uni(&self.field, &ni));
                    if h.deg() > 0 {
                        out.push(h.shift(&back).monic());
                    }
                }
                return (out, c);
            }
            c += 1;
        }
    }

    /// Roots in the field of a nonzero polynomial.
    pub fn roots(&self) -> Vec<NfElement> {
        let sf = {
            let g = NfPoly::gcd(self, &self.derivative());
            self.div_rem(&g).0
        };
        let mut out: Vec<NfElement> =
            sf.factor_squarefree(0).0.into_iter().filter(|f| f.deg() == 1).map(|f| -&f.c[0]).collect();
        out.sort_by(|a, b| a.repr.coeffs().cmp(b.repr.coeffs()));
        out
    }
}

impl fmt::Debug for NfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.c.iter().map(|x| format!("({x})")).collect();
        write!(f, "NfPoly[{}]", parts.join(", "))
    }
}

/// Lagrange interpolation through distinct rational nodes.
pub fn interpolate(xs: &[Rat], ys: &[Rat]) -> UniPoly {
    let mut acc = UniPoly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = UniPoly::one();
        let mut denom = Rat::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = &basis * &UniPoly::new(vec![-xj.clone(), Rat::one()]);
                denom *= xi - xj;
            }
        }
        acc = &acc + &basis.scale(&(yi / denom));
    }
    acc
}

/// Whether `e` is a square in its field, with a root when it is.
pub fn nf_is_square(e: &NfElement) -> (bool, Option<NfElement>) {
    nf_is_square_from(e, 0)
}

/// As [`nf_is_square`] with the Trager shift search starting at `start`.
pub fn nf_is_square_from(e: &NfElement, start: i64) -> (bool, Option<NfElement>) {
    let k = e.field();
    if e.is_zero() {
        return (true, Some(k.zero()));
    }
    if let Some(r) = e.as_rational() {
        if let Some(s) = super::is_rational_square(&r) {
            return (true, Some(k.from_rat(s)));
        }
        if k.degree() == 1 {
            return (false, None);
        }
    }
    // X^2 - e
    let f = NfPoly::new(k, vec![-e, k.zero(), k.one()]);
    let (factors, _) = f.factor_squarefree(start);
    match factors.iter().find(|g| g.deg() == 1) {
        Some(g) => {
            let root = -&g.c[0];
            debug_assert_eq!(&(&root * &root), e);
            (true, Some(root))
        }
        None => (false, None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::from_i64s(c)
    }

    #[test]
    fn minpoly_examples() {
        let k = NumberField::new(&up(&[-5, 0, 1])).unwrap();
        assert_eq!(nf_minpoly(&k.generator()), ExactPoly::from_coeffs(&[-5, 0, 1]));
        assert_eq!(nf_minpoly(&k.from_i64(3)), ExactPoly::from_coeffs(&[-3, 1]));
        let phi = NumberField::new(&up(&[-1, -1, 1])).unwrap();
        let y = phi.generator();
        let e = &y + &y.inv().unwrap();
        assert_eq!(nf_minpoly(&e), ExactPoly::from_coeffs(&[-5, 0, 1]));
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(matches!(NumberField::new(&up(&[-1, 0, 1])), Err(Error::ReducibleModulus(_))));
        assert_eq!(NumberField::new(&up(&[3])), Err(Error::ConstantModulus));
    }

    #[test]
    fn square_tests() {
        let k = NumberField::new(&up(&[-5, 0, 1])).unwrap();
        let (ok, root) = nf_is_square(&k.from_i64(5));
        assert!(ok);
        let root = root.unwrap();
        assert_eq!(&root * &root, k.from_i64(5));
        assert_eq!(nf_is_square(&k.from_i64(2)), (false, None));
        let y = k.generator();
        let d = &y - &y.inv().unwrap();
        let sq = &d * &d;
        let (ok, r) = nf_is_square(&sq);
        assert!(ok);
        let r = r.unwrap();
        assert_eq!(&r * &r, sq);
    }

    #[test]
    fn linear_expression() {
        let k = NumberField::new(&up(&[-1, -1, 1])).unwrap();
        let y = k.generator();
        let theta = &y.scale(&rat(2)) - &k.one();
        let c = nf_linear_expression(&k, &y, &theta).unwrap();
        assert_eq!(c, vec![super::super::ratio(1, 2), super::super::ratio(1, 2)]);
        assert_eq!(nf_linear_expression(&k, &theta, &theta).unwrap(), vec![rat(0), rat(1)]);
        assert_eq!(nf_linear_expression(&k, &y, &k.from_i64(3)), None);
    }

    #[test]
    fn norm_and_roots() {
        let k = NumberField::new(&up(&[1, 0, 1])).unwrap();
        let i = k.generator();
        assert_eq!((&i + &k.one()).norm(), rat(2));
        let f = NfPoly::from_uni(&k, &up(&[1, 0, 1]));
        let roots = f.roots();
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&i) && roots.contains(&-&i));
    }
}
