//! Command-line front end: polynomial parsing, dispatch and reports.

use std::collections::BTreeMap;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::arith::{parse_rat, rat_to_string, ExactPoly, Int, Rat};
use crate::casebook::{run_case, CASES};
use crate::error::{Error, Result};
use crate::knots::{alexander, predicates, KnotFamilySpec};
use crate::quaternion::{ramification_set, tame_symbol, PlaceOfQt, RatFunc};
use crate::star::{bad_primes, star_check, star_ell_check};

pub const SCHEMA: u64 = 1;

/// Parse `[±][c][*]t[^e]` terms with integer `c` and `e`; whitespace is ignored.
pub fn parse_poly(src: &str) -> Result<ExactPoly> {
    parse_poly_in(src, 't')
}

pub fn parse_poly_in(src: &str, var: char) -> Result<ExactPoly> {
    let toks: Vec<(usize, char)> = src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let end = src.len();
    let err = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.into() };
    if toks.is_empty() {
        return Err(err(0, "empty polynomial"));
    }
    let mut terms: BTreeMap<i64, Int> = BTreeMap::new();
    let mut i = 0;
    let at = |i: usize| toks.get(i).map(|t| t.1);
    let pos = |i: usize| toks.get(i).map_or(end, |t| t.0);
    let digits = |i: &mut usize| -> Option<String> {
        let s: String = toks[*i..].iter().map(|t| t.1).take_while(|c| c.is_ascii_digit()).collect();
        *i += s.len();
        (!s.is_empty()).then_some(s)
    };
    while i < toks.len() {
        let neg = match at(i) {
            Some('+') => {
                i += 1;
                false
            }
            Some('-') => {
                i += 1;
                true
            }
            _ if i == 0 => false,
            Some(c) => return Err(err(pos(i), &format!("expected '+' or '-', found '{c}'"))),
            None => unreachable!(),
        };
        let start = i;
        let coeff = digits(&mut i);
        if matches!(at(i), Some('/') | Some('.')) {
            return Err(err(pos(i), "non-integer coefficient"));
        }
        if coeff.is_some() && at(i) == Some('*') {
            i += 1;
            if at(i) != Some(var) {
                return Err(err(pos(i), &format!("expected '{var}' after '*'")));
            }
        }
        let mut exp = 0i64;
        if at(i) == Some(var) {
            i += 1;
            exp = 1;
            if at(i) == Some('^') {
                i += 1;
                let paren = at(i) == Some('(');
                if paren {
                    i += 1;
                }
                let eneg = match at(i) {
                    Some('-') => {
                        i += 1;
                        true
                    }
                    Some('+') => {
                        i += 1;
                        false
                    }
                    _ => false,
                };
                let d = digits(&mut i).ok_or_else(|| err(pos(i), "expected integer exponent"))?;
                if matches!(at(i), Some('/') | Some('.')) {
                    return Err(err(pos(i), "non-integer exponent"));
                }
                exp = d.parse().map_err(|_| err(pos(i), "exponent out of range"))?;
                if eneg {
                    exp = -exp;
                }
                if paren {
                    if at(i) != Some(')') {
                        return Err(err(pos(i), "expected ')'"));
                    }
                    i += 1;
                }
            }
        } else if coeff.is_none() {
            return Err(match at(i) {
                Some(c) => err(pos(i), &format!("unexpected character '{c}'")),
                None => err(pos(i), "expected a term"),
            });
        }
        if i == start {
            return Err(err(pos(i), "expected a term"));
        }
        let mut c: Int = coeff.map_or_else(|| Int::from(1), |s| s.parse().expect("digits"));
        if neg {
            c = -c;
        }
        *terms.entry(exp).or_insert_with(Int::zero) += c;
        if let Some(ch) = at(i) {
            if ch != '+' && ch != '-' {
                let msg = if ch == '/' || ch == '.' {
                    "non-integer coefficient".to_string()
                } else {
                    format!("unexpected character '{ch}'")
                };
                return Err(err(pos(i), &msg));
            }
        }
    }
    Ok(ExactPoly::new(terms.into_iter().map(|(e, c)| (e, Rat::from_integer(c)))).with_var(var.to_string()))
}

/// A rational function `p` or `(p)/(q)` in `t`.
pub fn parse_ratfunc(src: &str) -> Result<RatFunc> {
    let s = src.trim();
    let mut depth = 0i32;
    let mut split = None;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => {
                split = Some(i);
                break;
            }
            _ => {}
        }
    }
    let strip = |t: &str| {
        let t = t.trim();
        t.strip_prefix('(').and_then(|u| u.strip_suffix(')')).unwrap_or(t).to_string()
    };
    match split {
        Some(i) => RatFunc::from_exact(&parse_poly(&strip(&s[..i]))?, &parse_poly(&strip(&s[i + 1..]))?),
        None => RatFunc::from_exact(&parse_poly(&strip(s))?, &ExactPoly::one()),
    }
}

fn parse_rational(s: &str) -> Result<Rat> {
    parse_rat(s).ok_or_else(|| Error::Parse { pos: 0, msg: format!("not a rational number: '{s}'") })
}

#[derive(Parser, Debug)]
#[command(
    name = "azk",
    version,
    about = "Azumaya conditions on Alexander polynomials and quaternion-algebra invariants"
)]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Condition (⋆) over Q and modulo primes.
    #[command(subcommand)]
    Star(StarCmd),
    /// Knot families.
    #[command(subcommand)]
    Knot(KnotCmd),
    /// Quaternion algebras over Q and Q(t).
    #[command(subcommand)]
    Quat(QuatCmd),
    /// Worked examples: fig8, pretzel7, m137.
    Casebook {
        #[arg(value_parser = CASES)]
        case: String,
    },
}

#[derive(Subcommand, Debug)]
enum StarCmd {
    Check {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    Mod {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long = "prime", short = 'l')]
        prime: u64,
    },
    BadPrimes {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        scan: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
enum KnotCmd {
    Classify(ClassifyArgs),
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    /// twist, pretzel237, cyclotomic, fa, f8, lehmer
    #[arg(long, required_unless_present = "poly", conflicts_with = "poly")]
    family: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "family")]
    param: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    poly: Option<String>,
}

#[derive(Subcommand, Debug)]
enum QuatCmd {
    Ramify {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    Tame {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        /// A monic irreducible polynomial in t, or `inf`.
        #[arg(long, allow_hyphen_values = true)]
        place: String,
    },
}

/// Exit code and the text for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    ok: bool,
    fields: Map<String, Value>,
    text: String,
}

fn fields(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("reports are objects"),
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let command = command_name(&cli.cmd);
    let started = Instant::now();
    let result = dispatch(&cli.cmd);
    let ms = started.elapsed().as_millis() as u64;
    let mut head = Map::new();
    head.insert("schema".into(), json!(SCHEMA));
    head.insert("command".into(), json!(command));
    match result {
        Ok(rep) => {
            let code = if rep.ok { 0 } else { 1 };
            let stdout = if cli.json {
                head.extend(rep.fields);
                head.insert("timing_ms".into(), json!(ms));
                format!("{}\n", Value::Object(head))
            } else {
                rep.text
            };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(e) => {
            let stdout = if cli.json {
                head.insert("error".into(), json!(e.to_string()));
                format!("{}\n", Value::Object(head))
            } else {
                String::new()
            };
            Outcome { code: 2, stdout, stderr: format!("error: {e}\n") }
        }
    }
}

fn command_name(c: &Cmd) -> String {
    match c {
        Cmd::Star(StarCmd::Check { .. }) => "star check",
        Cmd::Star(StarCmd::Mod { .. }) => "star mod",
        Cmd::Star(StarCmd::BadPrimes { .. }) => "star bad-primes",
        Cmd::Knot(KnotCmd::Classify(_)) => "knot classify",
        Cmd::Quat(QuatCmd::Ramify { .. }) => "quat ramify",
        Cmd::Quat(QuatCmd::Tame { .. }) => "quat tame",
        Cmd::Casebook { .. } => "casebook",
    }
    .into()
}

fn dispatch(c: &Cmd) -> Result<Report> {
    match c {
        Cmd::Star(s) => star(s),
        Cmd::Knot(KnotCmd::Classify(a)) => classify(a),
        Cmd::Quat(q) => quat(q),
        Cmd::Casebook { case } => {
            let r = run_case(case)?;
            let mut text = format!("casebook {}: {}\n", r.case, if r.passed { "PASS" } else { "FAIL" });
            for c in &r.checks {
                text += &format!("  check   {:<45} {}\n", c.name, if c.holds { "ok" } else { "FAILED" });
            }
            for c in &r.controls {
                text += &format!("  control {:<45} {}\n", c.name, if c.holds { "NOT REJECTED" } else { "rejected" });
            }
            for p in &r.points {
                text += &format!(
                    "  point ({}, {}) traces ({}) over {}: {:?}\n",
                    p.sample[0],
                    p.sample[1],
                    p.traces.join(", "),
                    p.field,
                    p.acceptance
                );
                if let Some(d) = &p.discrepancy {
                    text += &format!("    note: {d}\n");
                }
            }
            Ok(Report { ok: r.passed, fields: fields(json!({ "case": case, "report": r })), text })
        }
    }
}

fn star(s: &StarCmd) -> Result<Report> {
    match s {
        StarCmd::Check { poly } => {
            let p = parse_poly(poly)?;
            let r = star_check(&p)?;
            let mut text = format!("{}: Azumaya {}\n", r.input, r.verdict.as_str());
            for rec in &r.records {
                text += &format!(
                    "  factor {} (deg {}): trace minpoly {} (deg {}) {}\n",
                    rec.factor,
                    rec.deg_w,
                    rec.trace_minpoly,
                    rec.deg_theta,
                    if rec.holds { "holds" } else { "fails" }
                );
            }
            let witnesses: Vec<Value> =
                r.witnesses.iter().map(|w| json!({"factor": w.factor, "trace_minpoly": w.trace_minpoly})).collect();
            let f = json!({
                "input": poly,
                "polynomial": r.normalized,
                "verdict": r.verdict.as_str(),
                "witnesses": witnesses,
                "records": r.records,
                "all_roots_simple": r.all_roots_simple,
                "scope": r.scope,
            });
            Ok(Report { ok: r.verdict.is_positive(), fields: fields(f), text })
        }
        StarCmd::Mod { poly, prime } => {
            let p = parse_poly(poly)?;
            let r = star_ell_check(&p, *prime)?;
            let mut text = format!("{p} mod {}: condition {}\n", r.ell, if r.holds { "holds" } else { "fails" });
            for rec in &r.records {
                text += &format!("  factor {} (deg {}): theta degree {}\n", rec.factor, rec.degree, rec.deg_theta);
            }
            if r.degree_drop {
                text += "  note: leading coefficient vanishes mod the prime\n";
            }
            let f = json!({
                "input": poly,
                "prime": r.ell,
                "holds": r.holds,
                "records": r.records,
                "degree_drop": r.degree_drop,
            });
            Ok(Report { ok: r.holds, fields: fields(f), text })
        }
        StarCmd::BadPrimes { poly, scan } => {
            let p = parse_poly(poly)?;
            match bad_primes(&p, *scan) {
                Ok(r) => {
                    let list: Vec<String> = r.failing.iter().map(u64::to_string).collect();
                    let mut text = format!("{p}: Azumaya positive; bad primes {{{}}}\n", list.join(", "));
                    if !r.outside_candidates.is_empty() {
                        text += &format!(
                            "  warning: scan found primes outside the candidate set: {:?}\n",
                            r.outside_candidates
                        );
                    }
                    let f = json!({
                        "input": poly,
                        "verdict": "positive",
                        "bad_primes": r.failing,
                        "candidates": r.candidates,
                        "scan_limit": r.scan_limit,
                        "outside_candidates": r.outside_candidates,
                    });
                    Ok(Report { ok: true, fields: fields(f), text })
                }
                Err(Error::AzumayaNegative) => Ok(Report {
                    ok: false,
                    fields: fields(json!({"input": poly, "verdict": "negative", "bad_primes": Value::Null})),
                    text: format!("{p}: Azumaya negative; no finite bad-prime set\n"),
                }),
                Err(e) => Err(e),
            }
        }
    }
}

fn classify(a: &ClassifyArgs) -> Result<Report> {
    let spec = match (&a.family, &a.poly) {
        (Some(name), _) => {
            let s = match a.param {
                Some(m) => format!("{name}:{m}"),
                None => name.clone(),
            };
            s.parse::<KnotFamilySpec>()?
        }
        (None, Some(p)) => KnotFamilySpec::Custom(parse_poly(p)?),
        (None, None) => return Err(Error::InvalidParameter("give --family or --poly".into())),
    };
    let delta = alexander(&spec)?;
    let r = star_check(&delta)?;
    let preds = predicates(&delta)?;
    let mut text = format!("{spec}: Δ = {delta}\n  verdict: Azumaya {}\n", r.verdict.as_str());
    for w in &r.witnesses {
        text += &format!("  witness: {} with trace minpoly {}\n", w.factor, w.trace_minpoly);
    }
    let witnesses: Vec<Value> =
        r.witnesses.iter().map(|w| json!({"factor": w.factor, "trace_minpoly": w.trace_minpoly})).collect();
    let f = json!({
        "family": spec.to_string(),
        "polynomial": delta,
        "verdict": r.verdict.as_str(),
        "witnesses": witnesses,
        "predicates": preds,
    });
    Ok(Report { ok: r.verdict.is_positive(), fields: fields(f), text })
}

fn quat(q: &QuatCmd) -> Result<Report> {
    match q {
        QuatCmd::Ramify { a, b } => {
            let (x, y) = (parse_rational(a)?, parse_rational(b)?);
            let s = ramification_set(&x, &y)?;
            let text = format!(
                "({}, {})_Q ramifies at {}{}\n",
                rat_to_string(&x),
                rat_to_string(&y),
                s,
                if s.is_split() { " (split)" } else { " (division algebra)" }
            );
            let f = json!({
                "a": rat_to_string(&x),
                "b": rat_to_string(&y),
                "real": s.includes_real_place,
                "finite": s.finite_primes,
                "split": s.is_split(),
            });
            Ok(Report { ok: true, fields: fields(f), text })
        }
        QuatCmd::Tame { alpha, beta, place } => {
            let (al, be) = (parse_ratfunc(alpha)?, parse_ratfunc(beta)?);
            let pl = if place.trim().eq_ignore_ascii_case("inf") {
                PlaceOfQt::Infinity
            } else {
                PlaceOfQt::finite(&parse_poly(place)?.to_uni()?)?
            };
            let sc = tame_symbol(&al, &be, &pl)?;
            let text = format!(
                "{{{al}, {be}}} at {pl}: {} ({})\n",
                sc.representative,
                if sc.trivial { "trivial square class" } else { "nontrivial square class" }
            );
            let f = json!({ "alpha": al.to_string(), "beta": be.to_string(), "place": pl.to_string(), "symbol": sc });
            Ok(Report { ok: true, fields: fields(f), text })
        }
    }
}
