//! Alexander polynomials of the twist, pretzel, cyclotomic and related
//! families, and root-location predicates.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::arith::sturm::{sturm_count, Bound};
use crate::arith::{rat, rat_to_string, ExactPoly, Rat, UniPoly};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KnotFamilySpec {
    Twist(u64),
    Pretzel237(u64),
    Cyclotomic(u64),
    Fa(i64),
    F8,
    Lehmer,
    Custom(ExactPoly),
}

impl fmt::Display for KnotFamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotFamilySpec::Twist(m) => write!(f, "twist:{m}"),
            KnotFamilySpec::Pretzel237(n) => write!(f, "pretzel237:{n}"),
            KnotFamilySpec::Cyclotomic(n) => write!(f, "cyclotomic:{n}"),
            KnotFamilySpec::Fa(a) => write!(f, "fa:{a}"),
            KnotFamilySpec::F8 => f.write_str("f8"),
            KnotFamilySpec::Lehmer => f.write_str("lehmer"),
            KnotFamilySpec::Custom(p) => write!(f, "custom:{p}"),
        }
    }
}

impl FromStr for KnotFamilySpec {
    type Err = Error;

    /// `twist:8`, `pretzel237:7`, `cyclotomic:5`, `fa:11`, `f8`, `lehmer`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n.trim(), Some(a.trim())),
            None => (s, None),
        };
        let need = |a: Option<&str>| -> Result<i64> {
            let a = a.ok_or_else(|| Error::InvalidParameter(format!("family '{name}' needs a parameter")))?;
            a.parse().map_err(|_| Error::InvalidParameter(format!("bad parameter '{a}' for family '{name}'")))
        };
        let unsigned = |a: Option<&str>| -> Result<u64> {
            let v = need(a)?;
            u64::try_from(v).map_err(|_| Error::InvalidParameter(format!("parameter for '{name}' must be positive")))
        };
        let spec = match name {
            "twist" => KnotFamilySpec::Twist(unsigned(arg)?),
            "pretzel237" | "pretzel" => KnotFamilySpec::Pretzel237(unsigned(arg)?),
            "cyclotomic" | "phi" => KnotFamilySpec::Cyclotomic(unsigned(arg)?),
            "fa" => KnotFamilySpec::Fa(need(arg)?),
            "f8" => KnotFamilySpec::F8,
            "lehmer" => KnotFamilySpec::Lehmer,
            other => return Err(Error::InvalidParameter(format!("unknown family '{other}'"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl KnotFamilySpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidParameter(msg.to_string()));
        match *self {
            KnotFamilySpec::Twist(m) if m < 1 => bad("twist knots need m >= 1"),
            KnotFamilySpec::Pretzel237(n) if n < 7 || n % 2 == 0 || n % 3 == 0 => {
                bad("pretzel parameter must be odd, at least 7, and prime to 3")
            }
            KnotFamilySpec::Cyclotomic(n) if n < 3 => bad("cyclotomic index must be at least 3"),
            KnotFamilySpec::Fa(a) if a < 7 => bad("f_a needs a >= 7"),
            KnotFamilySpec::Custom(ref p) if p.is_zero() => Err(Error::ZeroPolynomial),
            _ => Ok(()),
        }
    }
}

/// Representative with nonnegative exponents, nonzero constant term and
/// positive leading coefficient.
pub fn alexander(spec: &KnotFamilySpec) -> Result<ExactPoly> {
    spec.validate()?;
    let p = match *spec {
        KnotFamilySpec::Twist(m) => twist(m),
        KnotFamilySpec::Pretzel237(n) => pretzel(n as i64),
        KnotFamilySpec::Cyclotomic(n) => ExactPoly::from_uni(&cyclotomic(n)),
        KnotFamilySpec::Fa(a) => fa(a),
        KnotFamilySpec::F8 => ExactPoly::from_coeffs(&[1, -3, 5, -7, 9, -7, 5, -3, 1]),
        KnotFamilySpec::Lehmer => lehmer(),
        KnotFamilySpec::Custom(ref p) => return Ok(ExactPoly::from_uni(&p.normalize()?.0)),
    };
    Ok(p)
}

/// `q_m` for odd `m`; for even `m` the polynomial is `-p_m`, returned as `p_m`.
fn twist(m: u64) -> ExactPoly {
    let m = m as i64;
    if m % 2 == 1 {
        let h = (m + 1) / 2;
        ExactPoly::from_coeffs(&[h, -m, h])
    } else {
        let h = m / 2;
        ExactPoly::from_coeffs(&[h, -(m + 1), h])
    }
}

pub fn pretzel(r: i64) -> ExactPoly {
    let mut terms = vec![(r + 3, 1), (r + 2, -1), (1, -1), (0, 1)];
    for j in 3..=r {
        terms.push((j, if (r - j) % 2 == 0 { 1 } else { -1 }));
    }
    ExactPoly::from_i64_terms(&terms)
}

fn fa(a: i64) -> ExactPoly {
    ExactPoly::from_coeffs(&[1, -a, 2 * a - 1, -a, 1])
}

pub fn lehmer() -> ExactPoly {
    ExactPoly::from_coeffs(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
}

pub fn cyclotomic(n: u64) -> UniPoly {
    let mut p = UniPoly::monomial(Rat::one(), n as usize);
    p = &p - &UniPoly::one();
    for d in (1..n).filter(|d| n % d == 0) {
        p = p.exact_div(&cyclotomic(d)).expect("cyclotomic divisor");
    }
    p
}

/// The rational expression whose quotient by `(1+t)^3` gives the pretzel
/// polynomial, compared against the closed form.
pub fn pretzel_division_identity(r: i64) -> Result<bool> {
    if r % 2 == 0 {
        return Err(Error::InvalidParameter("r must be odd".into()));
    }
    if r < 7 {
        return Err(Error::InvalidParameter("r must be at least 7".into()));
    }
    let numer = ExactPoly::from_i64_terms(&[
        (0, 1),
        (1, 2),
        (4, 1),
        (1 + r, 1),
        (3, -1),
        (3 + r, -1),
        (5, 1),
        (2 + r, 1),
        (5 + r, 2),
        (6 + r, 1),
    ]);
    let cube = ExactPoly::from_coeffs(&[1, 3, 3, 1]);
    Ok(&cube * &pretzel(r) == numer)
}

/// `(any root on |t| = 1, such a root other than ±1)`.
pub fn has_root_on_unit_circle(p: &ExactPoly) -> Result<(bool, bool)> {
    let (u, _) = p.normalize()?;
    let one = rat(1);
    let pm1 = u.eval(&one).is_zero() || u.eval(&-one).is_zero();
    if u.is_constant() {
        return Ok((false, false));
    }
    let mut g = UniPoly::gcd(&u, &u.reverse());
    for lin in [UniPoly::from_i64s(&[-1, 1]), UniPoly::from_i64s(&[1, 1])] {
        while let Some(q) = g.exact_div(&lin) {
            if g.is_constant() {
                break;
            }
            g = q;
        }
    }
    let other = if g.is_constant() {
        false
    } else {
        let v = chebyshev_core(&g);
        let sf = v.squarefree_part()?;
        sturm_count(&sf, &Bound::at(rat(-2)), &Bound::at(rat(2)))? > 0
    };
    Ok((pm1 || other, other))
}

/// For palindromic `h` of degree `2k`, the `V` of degree `k` with
/// `h(t) = t^k V(t + 1/t)`.
fn chebyshev_core(h: &UniPoly) -> UniPoly {
    let n = h.deg();
    debug_assert!(n % 2 == 0, "reciprocal core has even degree");
    let k = n / 2;
    let x = UniPoly::x();
    let mut d_prev = UniPoly::constant(rat(2));
    let mut d_cur = x.clone();
    let mut v = UniPoly::constant(h.coeff(k));
    for j in 1..=k {
        v = &v + &d_cur.scale(&h.coeff(k + j));
        let next = &(&x * &d_cur) - &d_prev;
        d_prev = d_cur;
        d_cur = next;
    }
    v
}

/// Whether the symmetrized polynomial has the shape
/// `(-1)^k + sum_j (-1)^{k-j} (t^{n_j} + t^{-n_j})`.
pub fn os_lspace_form(p: &ExactPoly) -> Result<bool> {
    let (u, _) = p.normalize()?;
    let Some(s) = ExactPoly::from_uni(&u).symmetrized() else {
        return Ok(false);
    };
    if s != s.invert_var() {
        return Ok(false);
    }
    let mut expect_positive = true;
    for (e, c) in s.terms().rev() {
        if e < 0 {
            break;
        }
        if !(c.abs().is_one()) || c.is_positive() != expect_positive {
            return Ok(false);
        }
        expect_positive = !expect_positive;
    }
    Ok(!s.coeff(0).is_zero())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredicateReport {
    pub has_unit_circle_root: bool,
    pub unit_circle_root_is_not_pm1: bool,
    pub all_roots_real_positive: bool,
    pub os_form: bool,
    pub all_roots_simple: bool,
    pub reciprocal: bool,
    #[serde(serialize_with = "ser_rat")]
    pub delta_at_1: Rat,
    /// `Δ(1) = ±1` and reciprocal: plausible as an Alexander polynomial.
    pub alexander_like: bool,
}

fn ser_rat<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    if r.is_integer() {
        if let Ok(v) = i64::try_from(r.numer()) {
            return s.serialize_i64(v);
        }
    }
    s.serialize_str(&rat_to_string(r))
}

pub fn predicates(p: &ExactPoly) -> Result<PredicateReport> {
    let (u, _) = p.normalize()?;
    let (circle, circle_other) = has_root_on_unit_circle(p)?;
    let sf = u.squarefree_part()?;
    let positive = sf.is_constant() || sturm_count(&sf, &Bound::at(rat(0)), &Bound::PosInf)? == sf.deg();
    let rev = u.reverse();
    let reciprocal = rev == u || rev == -&u;
    let at1 = u.eval(&rat(1));
    Ok(PredicateReport {
        has_unit_circle_root: circle,
        unit_circle_root_is_not_pm1: circle_other,
        all_roots_real_positive: positive,
        os_form: os_lspace_form(p)?,
        all_roots_simple: u.is_constant() || u.is_squarefree(),
        reciprocal,
        alexander_like: reciprocal && at1.abs().is_one(),
        delta_at_1: at1,
    })
}
