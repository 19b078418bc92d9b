//! Polynomials over prime fields, Cantor-Zassenhaus factorization, and
//! arithmetic in finite extensions `F_p[x]/(g)`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::int::{inv_mod, is_prime, mul_mod};
use super::{ExactPoly, Rat, UniPoly};
use crate::error::{Error, Result};

pub const FALLBACK_SEED: u64 = 0x5eed_a2c0_ffee_0001;

/// Seed for equal-degree splitting; `AZK_SEED` overrides the built-in value.
pub fn default_seed() -> u64 {
    static SEED: OnceLock<u64> = OnceLock::new();
    *SEED.get_or_init(|| std::env::var("AZK_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(FALLBACK_SEED))
}

/// Polynomial over `F_p`, coefficients ascending in `0..p`, trimmed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, c: Vec<u64>) -> Self {
        let mut c: Vec<u64> = c.into_iter().map(|x| x % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn from_i64s(p: u64, c: &[i64]) -> Self {
        Self::new(p, c.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
    }

    /// Reduce a rational polynomial; every denominator must be a unit mod `p`.
    pub fn from_uni(f: &UniPoly, p: u64) -> Result<Self> {
        let bp = num_bigint::BigInt::from(p);
        let mut c = Vec::with_capacity(f.coeffs().len());
        for x in f.coeffs() {
            let d = x.denom().mod_floor(&bp).to_u64().unwrap();
            if d == 0 {
                return Err(Error::DenominatorDivisible(p));
            }
            let n = x.numer().mod_floor(&bp).to_u64().unwrap();
            c.push(mul_mod(n, inv_mod(d, p), p));
        }
        Ok(Self::new(p, c))
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn scale(&self, k: u64) -> Self {
        Self::new(self.p, self.c.iter().map(|&x| mul_mod(x, k, self.p)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lc(), self.p))
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new(self.p, (0..n).map(|i| (self.coeff(i) + o.coeff(i)) % self.p).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new(self.p, (0..n).map(|i| (self.coeff(i) + self.p - o.coeff(i)) % self.p).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p as u128;
        let mut acc = vec![0u128; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % p;
            }
        }
        Self::new(self.p, acc.into_iter().map(|x| x as u64).collect())
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.c.len() < d.c.len() {
            return (Self::zero(self.p), self.clone());
        }
        let p = self.p;
        let dd = d.deg();
        let inv = inv_mod(d.lc(), p);
        let mut r = self.c.clone();
        let mut q = vec![0u64; r.len() - dd];
        for i in (0..q.len()).rev() {
            let k = mul_mod(r[i + dd], inv, p);
            if k != 0 {
                for (j, &dc) in d.c.iter().enumerate() {
                    r[i + j] = (r[i + j] + p - mul_mod(k, dc, p)) % p;
                }
            }
            q[i] = k;
        }
        r.truncate(dd);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn ext_gcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let p = a.p;
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let k = inv_mod(r0.lc(), p);
        (r0.scale(k), s0.scale(k), t0.scale(k))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.p,
            self.c.iter().enumerate().skip(1).map(|(i, &x)| mul_mod(x, i as u64 % self.p, self.p)).collect(),
        )
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = Self::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn pow_mod_u64(&self, e: u64, m: &Self) -> Self {
        self.pow_mod(&BigUint::from(e), m)
    }

    /// Inverse of the `p`-th power map on a polynomial with `f' = 0`.
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        Self::new(self.p, self.c.iter().step_by(p).copied().collect())
    }

    /// Irreducibility via Rabin-style gcd tests.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(n) => n,
        };
        let f = self.monic();
        if !Self::gcd(&f, &f.derivative()).is_one() {
            return false;
        }
        let x = Self::x(self.p);
        let mut h = x.clone();
        for _ in 1..=n / 2 {
            h = h.pow_mod_u64(self.p, &f);
            if !Self::gcd(&f, &h.sub(&x)).is_one() {
                return false;
            }
        }
        true
    }

    fn sort_key(&self) -> (usize, Vec<u64>) {
        (self.deg(), self.c.iter().rev().copied().collect())
    }
}

impl PartialOrd for FpPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FpPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(i64, Rat)> =
            self.c.iter().enumerate().rev().map(|(i, &x)| (i as i64, Rat::from_integer(x.into()))).collect();
        super::poly::fmt_terms(f, terms.iter().map(|(e, c)| (*e, c)), "t")
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpPoly[{}]({self})", self.p)
    }
}

fn squarefree_factorization(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let mut out = Vec::new();
    let mut c = FpPoly::gcd(f, &f.derivative());
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while !w.is_one() {
        let y = FpPoly::gcd(&w, &c);
        let fac = w.div_rem(&y).0;
        if !fac.is_one() {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.div_rem(&w).0;
        i += 1;
    }
    if c.deg() > 0 {
        let root = c.pth_root();
        for (g, j) in squarefree_factorization(&root) {
            out.push((g, j * f.p as usize));
        }
    }
    out
}

fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p;
    let x = FpPoly::x(p);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut i = 1;
    while rest.deg() >= 2 * i {
        h = h.pow_mod_u64(p, &rest);
        let g = FpPoly::gcd(&rest, &h.sub(&x));
        if !g.is_one() {
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
            out.push((g, i));
        }
        i += 1;
    }
    if rest.deg() > 0 {
        let d = rest.deg();
        out.push((rest.monic(), d));
    }
    out
}

fn random_poly(p: u64, below: usize, rng: &mut ChaCha8Rng) -> FpPoly {
    FpPoly::new(p, (0..below).map(|_| rng.gen_range(0..p)).collect())
}

fn equal_degree(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
    let n = f.deg();
    if n == d {
        out.push(f.monic());
        return;
    }
    let p = f.p;
    loop {
        let a = random_poly(p, n, rng);
        if a.deg() == 0 {
            continue;
        }
        let g = FpPoly::gcd(&a, f);
        let candidate = if g.deg() > 0 {
            g
        } else if p == 2 {
            // absolute trace F_{2^d} -> F_2
            let mut acc = a.rem(f);
            let mut term = acc.clone();
            for _ in 1..d {
                term = term.mul(&term).rem(f);
                acc = acc.add(&term);
            }
            FpPoly::gcd(&acc, f)
        } else {
            let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
            let b = a.pow_mod(&e, f);
            FpPoly::gcd(&b.sub(&FpPoly::one(p)), f)
        };
        if candidate.deg() > 0 && candidate.deg() < n {
            let other = f.div_rem(&candidate).0;
            equal_degree(&candidate, d, rng, out);
            equal_degree(&other, d, rng, out);
            return;
        }
    }
}

/// Factor a monic or non-monic nonzero polynomial over `F_p` into monic
/// irreducibles with multiplicity, sorted by degree then coefficients.
pub fn factor_fp(f: &FpPoly, seed: u64) -> Vec<(FpPoly, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    for (sf, mult) in squarefree_factorization(&f.monic()) {
        for (block, d) in distinct_degree(&sf) {
            let mut parts = Vec::new();
            equal_degree(&block, d, &mut rng, &mut parts);
            out.extend(parts.into_iter().map(|g| (g, mult)));
        }
    }
    out.sort();
    out
}

/// Irreducible factorization of `p mod l`. Laurent input is first normalized
/// by a unit `±t^k`.
pub fn factor_mod_l(p: &ExactPoly, l: u64) -> Result<Vec<(FpPoly, usize)>> {
    let u = if p.is_laurent() { p.normalize()?.0 } else { p.to_uni()? };
    factor_uni_mod_l(&u, l, default_seed())
}

pub fn factor_uni_mod_l(p: &UniPoly, l: u64, seed: u64) -> Result<Vec<(FpPoly, usize)>> {
    if !is_prime(l) {
        return Err(Error::NotPrime(l));
    }
    let f = FpPoly::from_uni(p, l)?;
    if f.is_zero() {
        return Err(Error::VanishesModPrime(l));
    }
    Ok(factor_fp(&f, seed))
}

/// The finite field `F_p[x]/(g)` for a monic irreducible `g`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FfField {
    modulus: FpPoly,
}

impl FfField {
    pub fn new(modulus: FpPoly) -> Result<Arc<Self>> {
        if !is_prime(modulus.p) {
            return Err(Error::NotPrime(modulus.p));
        }
        if !modulus.is_irreducible() {
            return Err(Error::ReducibleModulus(modulus.to_string()));
        }
        Ok(Arc::new(FfField { modulus: modulus.monic() }))
    }

    pub fn characteristic(&self) -> u64 {
        self.modulus.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg()
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }

    pub fn generator(self: &Arc<Self>) -> FfElement {
        self.element(FpPoly::x(self.modulus.p))
    }

    pub fn element(self: &Arc<Self>, repr: FpPoly) -> FfElement {
        FfElement { repr: repr.rem(&self.modulus), field: Arc::clone(self) }
    }

    pub fn from_u64(self: &Arc<Self>, c: u64) -> FfElement {
        self.element(FpPoly::new(self.modulus.p, vec![c]))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct FfElement {
    field: Arc<FfField>,
    repr: FpPoly,
}

impl FfElement {
    pub fn repr(&self) -> &FpPoly {
        &self.repr
    }

    pub fn field(&self) -> &Arc<FfField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.repr.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        self.field.element(self.repr.add(&o.repr))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.field.element(self.repr.sub(&o.repr))
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.field.element(self.repr.mul(&o.repr))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotInvertible);
        }
        let (g, s, _) = FpPoly::ext_gcd(&self.repr, &self.field.modulus);
        debug_assert!(g.is_one());
        Ok(self.field.element(s))
    }

    pub fn pow(&self, e: &BigUint) -> Self {
        self.field.element(self.repr.pow_mod(e, &self.field.modulus))
    }

    pub fn frobenius(&self) -> Self {
        self.field.element(self.repr.pow_mod_u64(self.field.characteristic(), &self.field.modulus))
    }

    /// Degree of the element over `F_p`: the length of its Frobenius orbit.
    pub fn degree_over_prime_field(&self) -> usize {
        let mut y = self.frobenius();
        let mut d = 1;
        while y != *self {
            y = y.frobenius();
            d += 1;
        }
        d
    }
}

impl fmt::Debug for FfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FfElement({} mod {})", self.repr, self.field.modulus)
    }
}
