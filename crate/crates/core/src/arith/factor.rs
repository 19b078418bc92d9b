//! Factorization over Q: squarefree split, modular factorization, quadratic
//! Hensel lifting and exhaustive subset recombination.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ff::{default_seed, factor_fp, FpPoly};
use super::int::next_prime;
use super::{ExactPoly, Int, Rat, UniPoly};
use crate::error::{Error, Result};

/// `unit * prod f_i^{e_i}` with each `f_i` primitive, integral, irreducible and
/// of positive leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rat,
    pub factors: Vec<(UniPoly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> UniPoly {
        let mut acc = UniPoly::constant(self.unit.clone());
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e as u32);
        }
        acc
    }

    pub fn irreducibles(&self) -> impl Iterator<Item = &UniPoly> {
        self.factors.iter().map(|(f, _)| f)
    }
}

/// Factor a non-Laurent polynomial over Q.
pub fn factor_over_q(p: &ExactPoly) -> Result<Factorization> {
    factor_uni(&p.to_uni()?)
}

pub fn factor_uni(p: &UniPoly) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut factors = Vec::new();
    for (part, mult) in p.squarefree_decomposition() {
        let (_, ints) = part.primitive_part();
        for g in factor_squarefree_primitive(&ints) {
            factors.push((UniPoly::from_ints(&g), mult));
        }
    }
    factors.sort_by(|a, b| a.0.deg().cmp(&b.0.deg()).then_with(|| cmp_coeffs(&a.0, &b.0)));
    let mut lc_prod = Rat::one();
    for (f, e) in &factors {
        lc_prod *= super::rat_pow(&f.lc(), *e as i64);
    }
    Ok(Factorization { unit: p.lc() / lc_prod, factors })
}

fn cmp_coeffs(a: &UniPoly, b: &UniPoly) -> std::cmp::Ordering {
    a.coeffs().iter().rev().cmp(b.coeffs().iter().rev())
}

pub fn is_irreducible_over_q(p: &UniPoly) -> Result<bool> {
    if p.is_constant() {
        return Ok(false);
    }
    let f = factor_uni(p)?;
    Ok(f.factors.len() == 1 && f.factors[0].1 == 1)
}

// ---- integer polynomial helpers (ascending coefficient vectors) ----

type IPoly = Vec<Int>;

fn trim(mut a: IPoly) -> IPoly {
    while a.last().is_some_and(|x| x.is_zero()) {
        a.pop();
    }
    a
}

fn deg(a: &IPoly) -> usize {
    a.len().saturating_sub(1)
}

fn content(a: &IPoly) -> Int {
    a.iter().fold(Int::zero(), |acc, x| acc.gcd(x))
}

fn primitive(a: IPoly) -> IPoly {
    let mut g = content(&a);
    if a.last().is_some_and(|x| x.is_negative()) {
        g = -g;
    }
    a.into_iter().map(|x| x / &g).collect()
}

fn reduce(a: &IPoly, m: &Int) -> IPoly {
    trim(a.iter().map(|x| x.mod_floor(m)).collect())
}

fn symmetric(a: &IPoly, m: &Int) -> IPoly {
    let half = m >> 1;
    trim(
        a.iter()
            .map(|x| {
                let r = x.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn add(a: &IPoly, b: &IPoly) -> IPoly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default()).collect())
}

fn sub(a: &IPoly, b: &IPoly) -> IPoly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default()).collect())
}

fn mul(a: &IPoly, b: &IPoly) -> IPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Int::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn mul_mod(a: &IPoly, b: &IPoly, m: &Int) -> IPoly {
    reduce(&mul(a, b), m)
}

fn scale(a: &IPoly, k: &Int) -> IPoly {
    trim(a.iter().map(|x| x * k).collect())
}

/// Division by a monic divisor modulo `m`.
fn divrem_monic(a: &IPoly, b: &IPoly, m: &Int) -> (IPoly, IPoly) {
    let mut r = reduce(a, m);
    let db = deg(b);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Int::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let k = r[i + db].mod_floor(m);
        if !k.is_zero() {
            for (j, bc) in b.iter().enumerate() {
                r[i + j] = (&r[i + j] - &k * bc).mod_floor(m);
            }
        }
        q[i] = k;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

/// Exact division over Z; `None` when `b` does not divide `a`.
fn exact_div(a: &IPoly, b: &IPoly) -> Option<IPoly> {
    if b.is_empty() {
        return None;
    }
    let mut r = a.clone();
    let db = deg(b);
    if r.len() < b.len() {
        return if r.is_empty() { Some(Vec::new()) } else { None };
    }
    let lb = b.last().unwrap();
    let mut q = vec![Int::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let (k, rem) = r[i + db].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        if !k.is_zero() {
            for (j, bc) in b.iter().enumerate() {
                r[i + j] -= &k * bc;
            }
        }
        q[i] = k;
    }
    if r.iter().all(|x| x.is_zero()) {
        Some(trim(q))
    } else {
        None
    }
}

fn to_fp(a: &IPoly, p: u64) -> FpPoly {
    let bp = Int::from(p);
    FpPoly::new(p, a.iter().map(|x| x.mod_floor(&bp).to_u64().unwrap()).collect())
}

fn from_fp(a: &FpPoly) -> IPoly {
    a.coeffs().iter().map(|&x| Int::from(x)).collect()
}

fn inv_mod_int(a: &Int, m: &Int) -> Int {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Mignotte-style bound on the coefficients of any factor of `f`, times `|lc f|`.
fn coefficient_bound(f: &IPoly) -> Int {
    let norm_sq: Int = f.iter().map(|x| x * x).sum();
    let norm = norm_sq.sqrt() + Int::one();
    let n = deg(f);
    (Int::one() << n) * norm * f.last().unwrap().abs()
}

/// One quadratic Hensel step: from `f = g h`, `s g + t h = 1` mod `m` to the
/// same identities mod `m^2`. `h` is monic.
fn hensel_step(f: &IPoly, g: &IPoly, h: &IPoly, s: &IPoly, t: &IPoly, m: &Int) -> (IPoly, IPoly, IPoly, IPoly) {
    let m2 = m * m;
    let e = reduce(&sub(f, &mul(g, h)), &m2);
    let (q, r) = divrem_monic(&mul_mod(s, &e, &m2), h, &m2);
    let g2 = reduce(&add(&add(g, &mul(t, &e)), &mul(&q, g)), &m2);
    let h2 = reduce(&add(h, &r), &m2);
    let b = reduce(&sub(&add(&mul(s, &g2), &mul(t, &h2)), &[Int::one()].to_vec()), &m2);
    let (c, d) = divrem_monic(&mul_mod(s, &b, &m2), &h2, &m2);
    let s2 = reduce(&sub(s, &d), &m2);
    let t2 = reduce(&sub(&sub(t, &mul(t, &b)), &mul(&c, &g2)), &m2);
    (g2, h2, s2, t2)
}

/// Lift `f = lc * prod factors (mod p)` to monic factors mod `p^(2^k) >= target`.
fn multifactor_lift(f: &IPoly, factors: &[FpPoly], p: u64, target: &Int) -> (Vec<IPoly>, Int) {
    let bp = Int::from(p);
    let mut modulus = bp.clone();
    while &modulus <= target {
        modulus = &modulus * &modulus;
    }
    let mut out = Vec::with_capacity(factors.len());
    lift_tree(f, factors, p, &modulus, &mut out);
    (out, modulus)
}

fn lift_tree(f: &IPoly, factors: &[FpPoly], p: u64, modulus: &Int, out: &mut Vec<IPoly>) {
    let lc = f.last().unwrap().clone();
    if factors.len() == 1 {
        let inv = inv_mod_int(&lc, modulus);
        out.push(reduce(&scale(f, &inv), modulus));
        return;
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let prod = |fs: &[FpPoly]| fs.iter().fold(FpPoly::one(p), |a, b| a.mul(b));
    let lc_p = to_fp(&vec![lc.clone()], p);
    let g0 = prod(left).mul(&lc_p);
    let h0 = prod(right);
    let (one, s0, t0) = FpPoly::ext_gcd(&g0, &h0);
    debug_assert!(one.is_one());
    let (mut g, mut h, mut s, mut t) = (from_fp(&g0), from_fp(&h0), from_fp(&s0), from_fp(&t0));
    let mut m = Int::from(p);
    while &m < modulus {
        let next = hensel_step(f, &g, &h, &s, &t, &m);
        g = next.0;
        h = next.1;
        s = next.2;
        t = next.3;
        m = &m * &m;
    }
    let g = reduce(&g, modulus);
    let h = reduce(&h, modulus);
    // g carries the leading coefficient; hand each half a monic target.
    let g_monic = reduce(&scale(&g, &inv_mod_int(&lc, modulus)), modulus);
    lift_tree(&g_monic, left, p, modulus, out);
    lift_tree(&h, right, p, modulus, out);
}

fn subset_sums(degs: &[usize], n: usize) -> Vec<bool> {
    let mut ok = vec![false; n + 1];
    ok[0] = true;
    for &d in degs {
        for s in (d..=n).rev() {
            if ok[s - d] {
                ok[s] = true;
            }
        }
    }
    ok
}

const PRIMES_TRIED: usize = 5;

/// Irreducible factors of a squarefree primitive integer polynomial.
fn factor_squarefree_primitive(f: &IPoly) -> Vec<IPoly> {
    let f = primitive(trim(f.clone()));
    let n = deg(&f);
    if n <= 1 {
        return if n == 1 { vec![f] } else { Vec::new() };
    }
    // x = 0 roots are split off first so modular reduction stays simple
    if f[0].is_zero() {
        let rest: IPoly = f[1..].to_vec();
        let mut out = vec![vec![Int::zero(), Int::one()]];
        out.extend(factor_squarefree_primitive(&rest));
        return out;
    }
    let lc = f.last().unwrap().clone();
    let seed = default_seed();

    let mut allowed = vec![true; n + 1];
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut p = 2;
    let mut tried = 0;
    while tried < PRIMES_TRIED {
        p = next_prime(p + 1);
        if (&lc % Int::from(p)).is_zero() {
            continue;
        }
        let fp = to_fp(&f, p);
        if !FpPoly::gcd(&fp, &fp.derivative()).is_one() {
            continue;
        }
        tried += 1;
        let facs: Vec<FpPoly> = factor_fp(&fp, seed).into_iter().map(|(g, _)| g).collect();
        let sums = subset_sums(&facs.iter().map(|g| g.deg()).collect::<Vec<_>>(), n);
        for (a, s) in allowed.iter_mut().zip(&sums) {
            *a &= *s;
        }
        if facs.len() == 1 || (1..n).all(|d| !allowed[d]) {
            return vec![f];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
    }
    let (p, facs) = best.unwrap();

    let bound = coefficient_bound(&f) * 2;
    let (mut lifted, modulus) = multifactor_lift(&f, &facs, p, &bound);

    let mut out = Vec::new();
    let mut cur = f;
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        let r = lifted.len();
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let d: usize = idx.iter().map(|&i| deg(&lifted[i])).sum();
            if allowed[d] && allowed[deg(&cur) - d] {
                let lc_cur = cur.last().unwrap().clone();
                let mut g = vec![lc_cur.clone()];
                for &i in &idx {
                    g = mul_mod(&g, &lifted[i], &modulus);
                }
                let g = primitive(symmetric(&g, &modulus));
                if let Some(q) = exact_div(&cur, &g) {
                    out.push(g);
                    cur = primitive(q);
                    let keep: Vec<IPoly> = (0..r).filter(|i| !idx.contains(i)).map(|i| lifted[i].clone()).collect();
                    lifted = keep;
                    continue 'outer;
                }
            }
            if !next_combination(&mut idx, r) {
                break;
            }
        }
        size += 1;
    }
    if deg(&cur) > 0 {
        out.push(cur);
    }
    out
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
