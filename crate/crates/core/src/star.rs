//! The field-equality conditions on square roots of Alexander-polynomial
//! roots, over Q and over F_l, and the resulting bad-prime sets.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::ff::{default_seed, factor_uni_mod_l};
use crate::arith::int::{is_prime, prime_factors, primes_up_to};
use crate::arith::nf::minpoly_uni;
use crate::arith::poly::Normalization;
use crate::arith::{factor_uni, nf_linear_expression, ExactPoly, FfField, FieldExt, FpPoly, Int, NumberField, UniPoly};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "positive")]
    AzumayaPositive,
    #[serde(rename = "negative")]
    AzumayaNegative,
}

impl Verdict {
    pub fn is_positive(self) -> bool {
        self == Verdict::AzumayaPositive
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::AzumayaPositive => "positive",
            Verdict::AzumayaNegative => "negative",
        }
    }
}

/// One irreducible factor `m` of the squarefree part of `Δ(t^2)`; its roots
/// are the square roots `w` of roots of `Δ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarFactorRecord {
    pub factor: ExactPoly,
    pub deg_w: usize,
    pub trace_minpoly: ExactPoly,
    pub deg_theta: usize,
    pub holds: bool,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarReport {
    pub input: ExactPoly,
    pub normalized: ExactPoly,
    pub normalization: Normalization,
    pub records: Vec<StarFactorRecord>,
    pub verdict: Verdict,
    pub witnesses: Vec<StarFactorRecord>,
    pub all_roots_simple: bool,
    /// Which roots were checked: always every root of the polynomial.
    pub scope: &'static str,
}

const SCOPE: &str = "all roots";

/// Decide condition (⋆) for every root of `delta`.
pub fn star_check(delta: &ExactPoly) -> Result<StarReport> {
    let (u, normalization) = delta.normalize()?;
    if u.coeff(0).is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let normalized = ExactPoly::from_uni(&u);
    let mut records = Vec::new();
    if !u.is_constant() {
        for (m, mult) in factor_uni(&u.at_square())?.factors {
            records.push(record_for(&m, mult));
        }
    }
    let witnesses: Vec<_> = records.iter().filter(|r| !r.holds).cloned().collect();
    let verdict = if witnesses.is_empty() { Verdict::AzumayaPositive } else { Verdict::AzumayaNegative };
    Ok(StarReport {
        input: delta.clone(),
        normalized,
        normalization,
        records,
        verdict,
        witnesses,
        all_roots_simple: u.is_constant() || u.is_squarefree(),
        scope: SCOPE,
    })
}

fn record_for(m: &UniPoly, multiplicity: usize) -> StarFactorRecord {
    let k = NumberField::from_irreducible(m, "t");
    let w = k.generator();
    let theta = &w + &w.inv().expect("m(0) != 0");
    let tm = minpoly_uni(&theta);
    StarFactorRecord {
        factor: ExactPoly::from_uni(m),
        deg_w: m.deg(),
        trace_minpoly: ExactPoly::from_uni(&tm),
        deg_theta: tm.deg(),
        holds: tm.deg() == m.deg(),
        multiplicity,
    }
}

/// Verdict and failing factors only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub witnesses: Vec<(ExactPoly, ExactPoly)>,
}

pub fn classify(delta: &ExactPoly) -> Result<Classification> {
    let r = star_check(delta)?;
    Ok(Classification {
        verdict: r.verdict,
        witnesses: r.witnesses.into_iter().map(|w| (w.factor, w.trace_minpoly)).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarEllRecord {
    #[serde(serialize_with = "ser_display")]
    pub factor: FpPoly,
    pub degree: usize,
    pub deg_theta: usize,
    pub holds: bool,
    pub multiplicity: usize,
}

fn ser_display<S: serde::Serializer, T: std::fmt::Display>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarEllReport {
    pub ell: u64,
    pub holds: bool,
    pub records: Vec<StarEllRecord>,
    /// The leading coefficient vanishes mod l, so some roots went to infinity.
    pub degree_drop: bool,
}

/// Decide condition (⋆_l). For odd `l` the factors of `Δ(t^2)` mod `l` are
/// examined; for `l = 2` those of `Δ` itself, since `Δ(t^2) = Δ(t)^2` there.
pub fn star_ell_check(delta: &ExactPoly, ell: u64) -> Result<StarEllReport> {
    if !is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    let (u, _) = delta.normalize()?;
    let target = if ell == 2 { u.clone() } else { u.at_square() };
    let factors = factor_uni_mod_l(&target, ell, default_seed())?;
    let reduced = FpPoly::from_uni(&u, ell)?;
    let mut records = Vec::with_capacity(factors.len());
    for (g, mult) in factors {
        let k = g.deg();
        if g.coeff(0) == 0 {
            // w = 0 has no inverse; the condition cannot hold
            records.push(StarEllRecord { factor: g, degree: k, deg_theta: 0, holds: false, multiplicity: mult });
            continue;
        }
        let field = FfField::new(g.clone()).expect("factors are irreducible");
        let w = field.generator();
        let theta = w.add(&w.inv().expect("w != 0"));
        let d = theta.degree_over_prime_field();
        records.push(StarEllRecord { factor: g, degree: k, deg_theta: d, holds: d == k, multiplicity: mult });
    }
    Ok(StarEllReport { ell, holds: records.iter().all(|r| r.holds), degree_drop: reduced.deg() < u.deg(), records })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    LeadingCoefficient,
    ConstantTerm,
    Discriminant,
    Denominator,
    Always2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub prime: u64,
    pub provenance: Vec<Provenance>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BadPrimesReport {
    pub candidates: Vec<Candidate>,
    pub failing: Vec<u64>,
    pub scan_limit: Option<u64>,
    /// Primes found failing by the scan that the candidate construction missed.
    pub outside_candidates: Vec<u64>,
}

/// Candidate primes from the coefficient data, each tested directly; with a
/// scan limit every prime up to it is tested as well.
pub fn bad_primes(delta: &ExactPoly, scan_limit: Option<u64>) -> Result<BadPrimesReport> {
    let report = star_check(delta)?;
    if !report.verdict.is_positive() {
        return Err(Error::AzumayaNegative);
    }
    let (u, _) = delta.normalize()?;
    let u = u.primitive();
    let mut cand: BTreeMap<u64, Vec<Provenance>> = BTreeMap::new();
    let tag = |n: &Int, p: Provenance, cand: &mut BTreeMap<u64, Vec<Provenance>>| {
        for q in prime_factors(n) {
            // primes beyond u64 cannot be tested directly and are skipped
            if let Ok(q) = u64::try_from(&q) {
                cand.entry(q).or_default().push(p);
            }
        }
    };
    cand.entry(2).or_default().push(Provenance::Always2);
    tag(u.lc().numer(), Provenance::LeadingCoefficient, &mut cand);
    tag(u.coeff(0).numer(), Provenance::ConstantTerm, &mut cand);
    for r in &report.records {
        let m = r.factor.to_uni()?;
        tag(m.discriminant()?.numer(), Provenance::Discriminant, &mut cand);
        let k = NumberField::from_irreducible(&m, "t");
        let w = k.generator();
        let theta = &w + &w.inv()?;
        let coeffs = nf_linear_expression(&k, &w, &theta).expect("condition holds, so w lies in Q(theta)");
        for c in coeffs {
            tag(c.denom(), Provenance::Denominator, &mut cand);
        }
    }
    for v in cand.values_mut() {
        v.sort();
        v.dedup();
    }

    let mut primes: Vec<u64> = cand.keys().copied().collect();
    if let Some(limit) = scan_limit {
        primes.extend(primes_up_to(limit));
        primes.sort_unstable();
        primes.dedup();
    }
    let exact = ExactPoly::from_uni(&u);
    let outcomes: Vec<(u64, bool)> =
        primes.par_iter().map(|&p| (p, star_ell_check(&exact, p).map(|r| r.holds).unwrap_or(false))).collect();
    let failing: Vec<u64> = outcomes.iter().filter(|(_, ok)| !ok).map(|(p, _)| *p).collect();
    let outside_candidates = failing.iter().copied().filter(|p| !cand.contains_key(p)).collect();
    Ok(BadPrimesReport {
        candidates: cand.into_iter().map(|(prime, provenance)| Candidate { prime, provenance }).collect(),
        failing,
        scan_limit,
        outside_candidates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(c: &[i64]) -> ExactPoly {
        ExactPoly::from_coeffs(c)
    }

    #[test]
    fn figure_eight_positive() {
        let r = star_check(&e(&[1, -3, 1])).unwrap();
        assert_eq!(r.verdict, Verdict::AzumayaPositive);
        assert_eq!(r.records.len(), 2);
        assert!(r.records.iter().all(|x| x.deg_theta == 2 && x.deg_w == 2));
    }

    #[test]
    fn constant_is_positive() {
        let r = star_check(&e(&[1])).unwrap();
        assert!(r.verdict.is_positive() && r.records.is_empty());
    }

    #[test]
    fn cyclotomic_and_q3_negative() {
        assert_eq!(star_check(&e(&[1, 1, 1, 1, 1])).unwrap().verdict, Verdict::AzumayaNegative);
        assert_eq!(star_check(&e(&[2, -3, 2])).unwrap().verdict, Verdict::AzumayaNegative);
    }

    #[test]
    fn ell_checks_fig8() {
        let d = e(&[1, -3, 1]);
        assert!(!star_ell_check(&d, 2).unwrap().holds);
        assert!(star_ell_check(&d, 5).unwrap().holds);
        assert!(star_ell_check(&d, 7).unwrap().holds);
        assert!(star_ell_check(&d, 3).unwrap().holds);
        assert_eq!(star_ell_check(&d, 9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn fig8_bad_primes() {
        let r = bad_primes(&e(&[1, -3, 1]), Some(200)).unwrap();
        assert_eq!(r.failing, vec![2]);
        assert!(r.outside_candidates.is_empty());
        assert_eq!(bad_primes(&e(&[1]), None).unwrap().failing, Vec::<u64>::new());
        assert_eq!(bad_primes(&e(&[1, 1, 1]), None), Err(Error::AzumayaNegative));
    }
}
