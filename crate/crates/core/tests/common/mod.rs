//! Independent oracles used by the integration tests. Nothing here calls the
//! library's own algorithms.
#![allow(dead_code)]

use std::collections::HashMap;

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

pub fn primes_dividing(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

pub fn is_square(n: u64) -> bool {
    let r = isqrt(n);
    r * r == n
}

pub fn is_pronic(n: u64) -> bool {
    let q = isqrt(n);
    q * (q + 1) == n
}

/// Twist knot predicate: `m = 2l` with `l` a square or `q(q+1)`.
pub fn twist_positive(m: u64) -> bool {
    m % 2 == 0 && (is_square(m / 2) || is_pronic(m / 2))
}

fn strip_squares(mut a: i64, p: i64) -> i64 {
    while a % (p * p) == 0 {
        a /= p * p;
    }
    a
}

/// `(a, b)_p` by searching for a primitive solution of `z^2 = a x^2 + b y^2`
/// modulo `p^2` (odd `p`) or `64` (`p = 2`), after removing square factors of
/// `p` so that both valuations are at most one.
pub struct HilbertOracle {
    cache: HashMap<(i64, i64, i64), i8>,
}

impl HilbertOracle {
    pub fn new() -> Self {
        HilbertOracle { cache: HashMap::new() }
    }

    pub fn symbol(&mut self, a: i64, b: i64, p: i64) -> i8 {
        assert!(a != 0 && b != 0);
        let (a, b) = (strip_squares(a, p), strip_squares(b, p));
        let m = if p == 2 { 64 } else { p * p };
        let key = (a.rem_euclid(m), b.rem_euclid(m), p);
        if let Some(&s) = self.cache.get(&key) {
            return s;
        }
        let (am, bm, _) = key;
        // roots[v] lists z with z^2 = v mod m
        let mut roots: Vec<Vec<i64>> = vec![Vec::new(); m as usize];
        for z in 0..m {
            roots[(z * z % m) as usize].push(z);
        }
        let mut found = false;
        'outer: for x in 0..m {
            for y in 0..m {
                let v = (am * x % m * x + bm * y % m * y) % m;
                for &z in &roots[v as usize] {
                    if x % p != 0 || y % p != 0 || z % p != 0 {
                        found = true;
                        break 'outer;
                    }
                }
            }
        }
        let s = if found { 1 } else { -1 };
        self.cache.insert(key, s);
        s
    }
}

pub fn hilbert_real_oracle(a: i64, b: i64) -> i8 {
    if a < 0 && b < 0 {
        -1
    } else {
        1
    }
}

/// Whether `g` divides `f` in `Z[x]`.
fn int_divides(f: &[i128], g: &[i128]) -> bool {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    if r.len() < g.len() {
        return r.iter().all(|&c| c == 0);
    }
    for i in (0..=r.len() - g.len()).rev() {
        let top = r[i + dg];
        if top % g[dg] != 0 {
            return false;
        }
        let q = top / g[dg];
        for (j, &gc) in g.iter().enumerate() {
            r[i + j] -= q * gc;
        }
    }
    r.iter().all(|&c| c == 0)
}

fn divisors(n: i128) -> Vec<i128> {
    let n = n.abs();
    let mut out = Vec::new();
    for d in 1..=n {
        if n % d == 0 {
            out.push(d);
            out.push(-d);
        }
    }
    out
}

/// Irreducibility over Q of an integer polynomial of degree 1 to 4, by
/// enumerating candidate linear and quadratic integer factors.
pub fn irreducible_small(f: &[i64]) -> bool {
    let f: Vec<i128> = f.iter().map(|&c| c as i128).collect();
    let n = f.len() - 1;
    assert!((1..=4).contains(&n) && f[n] != 0);
    if n == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let norm: f64 = f.iter().map(|&c| (c * c) as f64).sum::<f64>().sqrt();
    // Mignotte: a quadratic factor has coefficients at most 2 |f|_2
    let bound = (2.0 * norm).ceil() as i128 + 1;
    for lead in divisors(f[n]) {
        for c0 in divisors(f[0]) {
            if lead < 0 {
                continue;
            }
            if int_divides(&f, &[c0, lead]) {
                return false;
            }
            if n == 4 {
                for c1 in -bound..=bound {
                    if int_divides(&f, &[c0, c1, lead]) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Whether a polynomial mod `p` (ascending coefficients) has a root in `F_p`.
pub fn has_root_mod(f: &[u64], p: u64) -> bool {
    (0..p).any(|x| f.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % p) == 0)
}
