//! One PASS/FAIL line per acceptance criterion. All tolerances are exact.

mod common;

use std::collections::BTreeSet;

use azk_core::arith::ff::factor_fp;
use azk_core::arith::sturm::{sturm_count, Bound};
use azk_core::arith::{
    factor_over_q, factor_uni, nf_is_square, rat, ratio, ExactPoly, FieldExt, FpPoly, NumberField, Rat, UniPoly,
};
use azk_core::casebook::{run_case, Acceptance};
use azk_core::knots::{
    alexander, has_root_on_unit_circle, lehmer, os_lspace_form, pretzel_division_identity, KnotFamilySpec,
};
use azk_core::quaternion::{hilbert_p, hilbert_real, ramification_set, tame_symbol, PlaceOfQt, RatFunc};
use azk_core::star::{bad_primes, classify, star_check, star_ell_check, Verdict};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn verdict(c: bool, ok: impl Into<String>, bad: impl Into<String>) -> Outcome {
    if c {
        pass(ok)
    } else {
        Outcome { ok: false, detail: bad.into() }
    }
}

fn e(c: &[i64]) -> ExactPoly {
    ExactPoly::from_coeffs(c)
}

fn fam(s: &str) -> ExactPoly {
    alexander(&s.parse::<KnotFamilySpec>().unwrap()).unwrap()
}

fn c1_fig8_pipeline() -> Outcome {
    let d = e(&[1, -3, 1]);
    let positive = star_check(&d).unwrap().verdict == Verdict::AzumayaPositive;
    let fails2 = !star_ell_check(&d, 2).unwrap().holds;
    let holds5 = star_ell_check(&d, 5).unwrap().holds;
    let odd: Vec<u64> = (3..=1000).filter(|&l| is_prime(l)).collect();
    let bad_odd: Vec<u64> = odd.iter().copied().filter(|&l| !star_ell_check(&d, l).unwrap().holds).collect();
    let bp = bad_primes(&d, Some(1000)).unwrap();
    verdict(
        positive && fails2 && holds5 && bad_odd.is_empty() && bp.failing == vec![2],
        format!("positive; fails at 2, holds at all {} odd primes <= 1000; bad primes {{2}}", odd.len()),
        format!("positive={positive} fails2={fails2} holds5={holds5} bad_odd={bad_odd:?} bad={:?}", bp.failing),
    )
}

fn c2_twist_sweep() -> Outcome {
    let mut wrong = Vec::new();
    let mut positives = Vec::new();
    for m in 1..=100u64 {
        let got = classify(&fam(&format!("twist:{m}"))).unwrap().verdict.is_positive();
        if got {
            positives.push(m);
        }
        if got != twist_positive(m) {
            wrong.push(m);
        }
    }
    verdict(
        wrong.is_empty(),
        format!("m = 1..100 agree; positive m = {positives:?}"),
        format!("disagree at m = {wrong:?}"),
    )
}

fn c3_negative_families() -> Outcome {
    let phi: Vec<u64> =
        (3..=50).filter(|&n| classify(&fam(&format!("cyclotomic:{n}"))).unwrap().verdict.is_positive()).collect();
    let q: Vec<u64> =
        (1..=49).step_by(2).filter(|&m| classify(&fam(&format!("twist:{m}"))).unwrap().verdict.is_positive()).collect();
    verdict(
        phi.is_empty() && q.is_empty(),
        "Phi_n negative for n = 3..50; q_m negative for odd m = 1..49",
        format!("positive Phi_n at {phi:?}, positive q_m at {q:?}"),
    )
}

fn c4_positive_families() -> Outcome {
    let mut problems = Vec::new();
    for k in 3..=8i64 {
        let a = k * k + 2;
        let d = fam(&format!("fa:{a}"));
        let r = star_check(&d).unwrap();
        let want = e(&[9 + 4 * k * k, 0, -(6 + k * k), 0, 1]);
        if !r.verdict.is_positive() || r.records.is_empty() || r.records.iter().any(|x| x.trace_minpoly != want) {
            problems.push(format!("fa({a}) trace minpoly"));
        }
        // f_a(w^2) = -(-1 - kw + w^2 + kw^3 - w^4)(1 - kw - w^2 + kw^3 + w^4)
        let g1 = UniPoly::from_i64s(&[1, k, -1, -k, 1]);
        let g2 = UniPoly::from_i64s(&[1, -k, -1, k, 1]);
        let f = factor_over_q(&ExactPoly::from_uni(&d.to_uni().unwrap().at_square())).unwrap();
        let got: BTreeSet<String> = f.irreducibles().map(|p| p.to_string()).collect();
        let want: BTreeSet<String> = [g1.clone(), g2.clone()].iter().map(|p| p.to_string()).collect();
        if got != want || f.expand() != (&g1 * &g2) {
            problems.push(format!("fa({a}) factorization {got:?}"));
        }
    }
    if !classify(&fam("fa:7")).unwrap().verdict.is_positive() {
        problems.push("fa(7) not positive".into());
    }
    let f8 = fam("f8");
    let real_roots = sturm_count(&f8.to_uni().unwrap(), &Bound::NegInf, &Bound::PosInf).unwrap();
    if !classify(&f8).unwrap().verdict.is_positive() || real_roots != 0 {
        problems.push(format!("f8: real roots {real_roots}"));
    }
    verdict(
        problems.is_empty(),
        "fa(k^2+2), k = 3..8, positive with t^4-(6+k^2)t^2+(9+4k^2) and the displayed w-factorization; fa(7) positive; f8 positive, 0 real roots",
        problems.join("; "),
    )
}

fn c5_pretzel() -> Outcome {
    let ids: Vec<bool> = [7, 11, 13].iter().map(|&r| pretzel_division_identity(r).unwrap()).collect();
    let p7 = fam("pretzel237:7");
    let lehmer_ok = p7 == lehmer().negate_var();
    let circle = has_root_on_unit_circle(&p7).unwrap();
    let neg = !classify(&p7).unwrap().verdict.is_positive();
    verdict(
        ids.iter().all(|&b| b) && lehmer_ok && circle == (true, true) && neg,
        "division identity r = 7, 11, 13; P_7 = L(-t); unit-circle root not +-1; negative",
        format!("ids={ids:?} lehmer={lehmer_ok} circle={circle:?} negative={neg}"),
    )
}

fn rand_rat(rng: &mut ChaCha8Rng) -> (Rat, u64, u64) {
    let n: i64 = rng.gen_range(1..=1_000_000) * if rng.gen_bool(0.5) { -1 } else { 1 };
    let d: i64 = rng.gen_range(1..=1000);
    (ratio(n, d), n.unsigned_abs(), d as u64)
}

fn c6_quaternion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut parity_fail = 0;
    for _ in 0..500 {
        let (a, an, ad) = rand_rat(&mut rng);
        let (b, bn, bd) = rand_rat(&mut rng);
        let mut ps: BTreeSet<u64> = [2].into();
        for n in [an, ad, bn, bd] {
            ps.extend(primes_dividing(n));
        }
        let mut prod = hilbert_real(&a, &b).unwrap();
        for p in ps {
            prod *= hilbert_p(&a, &b, p).unwrap();
        }
        if prod != 1 {
            parity_fail += 1;
        }
    }
    let mut oracle = HilbertOracle::new();
    let mut mismatches = Vec::new();
    let mut compared = 0;
    for a in -30i64..=30 {
        for b in -30i64..=30 {
            if a == 0 || b == 0 {
                continue;
            }
            if hilbert_real(&rat(a), &rat(b)).unwrap() != hilbert_real_oracle(a, b) {
                mismatches.push((a, b, 0));
            }
            for p in [2, 3, 5, 7, 11, 13] {
                compared += 1;
                if hilbert_p(&rat(a), &rat(b), p as u64).unwrap() != oracle.symbol(a, b, p) {
                    mismatches.push((a, b, p));
                }
            }
        }
    }
    let s1 = ramification_set(&rat(-3), &rat(-2)).unwrap();
    let s2 = ramification_set(&rat(1), &rat(1)).unwrap();
    let sets_ok = s1.includes_real_place && s1.finite_primes == vec![2] && s2.is_split();
    mismatches.truncate(5);
    verdict(
        parity_fail == 0 && mismatches.is_empty() && sets_ok,
        format!("reciprocity on 500 random symbols; {compared} local symbols match brute force; (-3,-2) -> {s1}; (1,1) -> {s2}"),
        format!("parity failures {parity_fail}; mismatches {mismatches:?}; (-3,-2) -> {s1}; (1,1) -> {s2}"),
    )
}

fn c7_fig8_casebook() -> Outcome {
    let r = run_case("fig8").unwrap();
    let failed: Vec<&str> = r.checks.iter().filter(|c| !c.holds).map(|c| c.name.as_str()).collect();
    let survived: Vec<&str> = r.controls.iter().filter(|c| c.holds).map(|c| c.name.as_str()).collect();
    verdict(
        r.passed && failed.is_empty() && survived.is_empty(),
        format!(
            "{} checks true, {} mutation controls rejected, relator exact at (T,R) = (1,1), (-1,1)",
            r.checks.len(),
            r.controls.len()
        ),
        format!("failed checks {failed:?}; controls not rejected {survived:?}"),
    )
}

fn c8_pretzel_casebook() -> Outcome {
    let r = run_case("pretzel7").unwrap();
    let accepted: Vec<_> = r.points.iter().filter(|p| p.accepted()).collect();
    let modes: Vec<String> = r
        .points
        .iter()
        .map(|p| {
            let m = match p.acceptance {
                Acceptance::Exact => "exact".to_string(),
                Acceptance::SignLift { minus_identity } => {
                    format!("sign-lift{}", if minus_identity { " to -I" } else { "" })
                }
                Acceptance::Failed => "failed".to_string(),
            };
            format!("Q={}: {m}", p.sample[0])
        })
        .collect();
    let literal_fails = r.points.iter().filter(|p| p.discrepancy.is_some()).count();
    let mut detail = format!("{} of {} samples accepted ({})", accepted.len(), r.points.len(), modes.join(", "));
    if literal_fails > 0 {
        detail += &format!("; literal traces fail at {literal_fails} samples, see report");
    }
    verdict(accepted.len() >= 3, detail.clone(), detail)
}

fn c9_os_form() -> Outcome {
    let a = os_lspace_form(&fam("pretzel237:7")).unwrap();
    let b = os_lspace_form(&fam("fa:11")).unwrap();
    verdict(a && !b, "true on P_7, false on f_11", format!("P_7 -> {a}, f_11 -> {b}"))
}

fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize, bound: i64) -> Vec<i64> {
    let d = rng.gen_range(1..=max_deg);
    let mut c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-bound..=bound)).collect();
    while c[d] == 0 {
        c[d] = rng.gen_range(-bound..=bound);
    }
    c
}

fn c10_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut problems = Vec::new();

    // unit multiples and reversal leave the verdict unchanged
    for _ in 0..200 {
        let mut c = random_poly(&mut rng, 6, 6);
        if c[0] == 0 {
            c[0] = 1;
        }
        let d = e(&c);
        let base = star_check(&d).unwrap().verdict;
        let k = rng.gen_range(-5..=5);
        let s = if rng.gen_bool(0.5) { rat(1) } else { rat(-1) };
        let v1 = star_check(&d.mul_monomial(&s, k)).unwrap().verdict;
        let v2 = star_check(&d.invert_var()).unwrap().verdict;
        if v1 != base || v2 != base {
            problems.push(format!("unit invariance at {d}"));
            break;
        }
    }

    // factorization round trips over Q and F_l
    for i in 0..500 {
        let c = if i % 2 == 0 {
            random_poly(&mut rng, 12, 20)
        } else {
            let a = random_poly(&mut rng, 4, 5);
            let b = random_poly(&mut rng, 4, 5);
            let u = &UniPoly::from_i64s(&a) * &UniPoly::from_i64s(&b);
            u.coeffs().iter().map(|x| x.to_integer().try_into().unwrap()).collect()
        };
        let u = UniPoly::from_i64s(&c);
        let f = factor_uni(&u).unwrap();
        if f.expand() != u || f.factors.iter().any(|(g, _)| g.deg() == 0) {
            problems.push(format!("Q round trip at {u}"));
            break;
        }
        let l = [2u64, 3, 5, 7, 11, 13, 101][i % 7];
        let fp = FpPoly::from_i64s(l, &c);
        if fp.is_zero() {
            continue;
        }
        let parts = factor_fp(&fp, 0x5eed);
        let mut prod = FpPoly::from_i64s(l, &[1]).scale(fp.lc());
        for (g, m) in &parts {
            for _ in 0..*m {
                prod = prod.mul(g);
            }
        }
        let bad_factor =
            parts.iter().any(|(g, _)| g.lc() != 1 || (g.deg() <= 3 && g.deg() > 1 && has_root_mod(g.coeffs(), l)));
        if prod != fp || bad_factor {
            problems.push(format!("F_{l} round trip at {fp}"));
            break;
        }
    }

    // nf_is_square soundness
    let moduli: [&[i64]; 5] = [&[-2, 0, 1], &[1, 0, 1], &[-2, 0, 0, 1], &[1, 0, -10, 0, 1], &[1, 1, 1]];
    for i in 0..200 {
        let k = NumberField::new(&UniPoly::from_i64s(moduli[i % moduli.len()])).unwrap();
        let coords: Vec<i64> = (0..k.degree()).map(|_| rng.gen_range(-6..=6)).collect();
        let x = k.element(UniPoly::from_i64s(&coords));
        if x.is_zero() {
            continue;
        }
        let sq = &x * &x;
        match nf_is_square(&sq) {
            (true, Some(r)) if &r * &r == sq => {}
            _ => {
                problems.push(format!("square not recognised: {sq}"));
                break;
            }
        }
        if let (true, Some(r)) = nf_is_square(&x) {
            if &r * &r != x {
                problems.push(format!("wrong root for {x}"));
                break;
            }
        }
    }

    // tame-symbol antisymmetry
    let places = [
        PlaceOfQt::finite(&UniPoly::from_i64s(&[0, 1])).unwrap(),
        PlaceOfQt::finite(&UniPoly::from_i64s(&[-1, 1])).unwrap(),
        PlaceOfQt::finite(&UniPoly::from_i64s(&[1, 0, 1])).unwrap(),
        PlaceOfQt::finite(&UniPoly::from_i64s(&[-2, 0, 1])).unwrap(),
        PlaceOfQt::Infinity,
    ];
    for i in 0..200 {
        let a = RatFunc::poly(UniPoly::from_i64s(&random_poly(&mut rng, 3, 4)));
        let b = RatFunc::poly(UniPoly::from_i64s(&random_poly(&mut rng, 3, 4)));
        let pl = &places[i % places.len()];
        let ab = tame_symbol(&a, &b, pl).unwrap();
        let ba = tame_symbol(&b, &a, pl).unwrap();
        if !nf_is_square(&(&ab.representative * &ba.representative)).0 {
            problems.push(format!("antisymmetry at {pl} for {a}, {b}"));
            break;
        }
    }

    verdict(
        problems.is_empty(),
        "200 unit/reversal cases, 500 round trips over Q and F_l, 200 nf_is_square cases, 200 tame antisymmetry cases",
        problems.join("; "),
    )
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("figure-eight pipeline", c1_fig8_pipeline),
        ("twist-knot sweep", c2_twist_sweep),
        ("negative families", c3_negative_families),
        ("positive families", c4_positive_families),
        ("pretzel", c5_pretzel),
        ("quaternion symbols", c6_quaternion),
        ("casebook fig8", c7_fig8_casebook),
        ("casebook pretzel7", c8_pretzel_casebook),
        ("OS form", c9_os_form),
        ("property suites", c10_properties),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        println!("criterion {:>2} {} {}: {}", i + 1, if o.ok { "PASS" } else { "FAIL" }, name, o.detail);
        if !o.ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
