//! Command-line front end. `run` is what the binary calls; it is public so
//! tests can drive it with captured output.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::axioms::{braid_relation_matrix_form, check_axioms, check_markov_conditions, discover_z, solve_twist};
use crate::braid::{parse_braid, BraidWord};
use crate::error::{Error, Result};
use crate::invariants::{
    ambient_invariant, compute_constants, default_strand_cap, invariance_suite, minpoly_check, phi_numerator,
    regular_invariant, skein_residual, InvariantResult,
};
use crate::models::{build_model, limit_check, spectral_checks, Sign, SpectralModel, VertexModel};
use crate::ring::{RingElem, Variable};
use crate::selftest::{selftest, Mutation};
use crate::tensor::HalfInt;
use crate::tlbracket::{bracket_decompose_n2, build_tl, curl_factors, dubrovnik_check_n3, tl_relations};
use crate::uqsl2;

pub const STRAND_CAP_ENV: &str = "VERTEXLINK_STRAND_CAP";

#[derive(Parser, Debug)]
#[command(name = "vertexlink", version, about = "Link invariants of braid closures from vertex-model R-matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Normalization {
    Regular,
    Phi,
    Ambient,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Sign {
        match s {
            SignArg::Plus => Sign::Plus,
            SignArg::Minus => Sign::Minus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VarArg {
    S,
    Q,
    T,
}

impl From<VarArg> for Variable {
    fn from(v: VarArg) -> Variable {
        match v {
            VarArg::S => Variable::S,
            VarArg::Q => Variable::Q,
            VarArg::T => Variable::T,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MutationArg {
    ZeroREntry,
    WrongEigenvalue,
}

#[derive(clap::Args, Debug, Clone)]
pub struct ModelArgs {
    /// Number of states N (2, 3 or 4).
    #[arg(long)]
    pub model: usize,
    /// Sign of Z.
    #[arg(long, value_enum, default_value = "plus")]
    pub sign: SignArg,
    /// Machine-readable output.
    #[arg(long)]
    pub json: bool,
}

#[derive(clap::Args, Debug, Clone)]
pub struct BraidArgs {
    /// Signed generator letters, e.g. "1 1 -2".
    #[arg(long, allow_hyphen_values = true)]
    pub braid: String,
    /// Strand count; defaults to max|letter| + 1.
    #[arg(long)]
    pub strands: Option<usize>,
    /// Largest strand count accepted.
    #[arg(long, env = STRAND_CAP_ENV)]
    pub strand_cap: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Closure invariant of a braid.
    Invariant {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        braid: BraidArgs,
        #[arg(long, value_enum, default_value = "ambient")]
        normalization: Normalization,
        /// Variable for the printed polynomial (falls back to s).
        #[arg(long = "var", value_enum, default_value = "t")]
        variable: VarArg,
    },
    /// Check axioms, Markov conditions, spectral identities or Markov-move invariance.
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        /// Axioms, braid relation, Markov conditions, constants and minimal polynomial.
        #[arg(long)]
        all: bool,
        /// Spectral Yang-Baxter, unitarity, crossing and the large-u limit (N = 2, 3).
        #[arg(long)]
        spectral: bool,
        #[arg(long, default_value_t = 0.8, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, default_value_t = 1.1, allow_hyphen_values = true)]
        u: f64,
        #[arg(long, default_value_t = 0.7, allow_hyphen_values = true)]
        v: f64,
        /// Random Markov moves applied to this braid.
        #[arg(long, allow_hyphen_values = true)]
        braid: Option<String>,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, env = STRAND_CAP_ENV)]
        strand_cap: Option<usize>,
    },
    /// Solve the twist equations for M_d given R.
    SolveM {
        #[command(flatten)]
        model: ModelArgs,
        /// Recover Z from R/Z instead of using the known value.
        #[arg(long)]
        discover_z: bool,
    },
    /// Residual of the order-N skein relation at b_i after a context braid.
    Skein {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        braid: BraidArgs,
        #[arg(long, default_value_t = 1)]
        position: i32,
    },
    /// Temperley-Lieb, bracket and Dubrovnik checks.
    Tl {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        check: bool,
        #[arg(long, default_value_t = 3)]
        strands: usize,
    },
    /// U_q sl(2) spin-j checks at a real q.
    Uq {
        /// Spin as a fraction, e.g. 1/2, 1, 3/2.
        #[arg(long)]
        j: String,
        #[arg(long, default_value_t = 1.5)]
        q: f64,
        #[arg(long)]
        json: bool,
    },
    /// The full acceptance suite.
    Selftest {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long, value_enum)]
        mutate: Option<MutationArg>,
        #[arg(long)]
        json: bool,
    },
}

/// What a command produced: exit code and text for stdout.
struct Outcome {
    code: i32,
    text: String,
}

fn ok(text: String, passed: bool) -> Outcome {
    Outcome { code: if passed { 0 } else { 1 }, text }
}

fn usage_error(e: &Error) -> bool {
    matches!(e, Error::UnsupportedN(_) | Error::BadLetter(_) | Error::Parse(_) | Error::StrandCap { .. } | Error::DomainError(_))
}

fn model(args: &ModelArgs) -> Result<VertexModel> {
    build_model(args.model, args.sign.into())
}

fn braid(args: &BraidArgs, n: usize) -> Result<BraidWord> {
    let w = parse_braid(&args.braid, args.strands)?;
    let cap = args.strand_cap.unwrap_or_else(|| default_strand_cap(n));
    if w.strands() > cap {
        return Err(Error::StrandCap { strands: w.strands(), cap });
    }
    Ok(w)
}

fn poly_json(x: &RingElem) -> Value {
    let terms = |p: &crate::ring::LaurentPoly| -> Vec<Value> {
        p.terms().map(|(e, c)| json!([e, c.to_string()])).collect()
    };
    json!({
        "s": x.render(Variable::S).text,
        "q": x.render(Variable::Q).text,
        "t": x.render(Variable::T).text,
        "terms": terms(x.rational_part()),
        "radical_terms": terms(x.radical_part()),
    })
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn invariant_cmd(m: &ModelArgs, b: &BraidArgs, norm: Normalization, var: Variable) -> Result<Outcome> {
    let vm = model(m)?;
    let w = braid(b, vm.n)?;
    let res: InvariantResult = match norm {
        Normalization::Regular => regular_invariant(&w, &vm),
        Normalization::Phi => phi_numerator(&w, &vm),
        Normalization::Ambient => ambient_invariant(&w, &vm)?,
    };
    if m.json {
        let mut v = serde_json::to_value(&res).expect("serializable");
        v["value"] = poly_json(&res.value);
        v["sign"] = json!(vm.sign);
        return Ok(ok(pretty(&v), true));
    }
    let r = res.value.render(var);
    let mut text = format!("N={} {} closure of {}\n", vm.n, format!("{:?}", res.kind).to_lowercase(), w);
    if r.fell_back {
        text.push_str(&format!("(exponents do not fit {}, shown in s)\n", var.symbol()));
    }
    text.push_str(&r.text);
    if !res.normalization.is_empty() {
        text.push_str(&format!("\nnormalization: {}", res.normalization.join(" ")));
    }
    Ok(ok(text, true))
}

#[allow(clippy::too_many_arguments)]
fn verify_cmd(
    m: &ModelArgs,
    all: bool,
    spectral: bool,
    (lambda, u, v): (f64, f64, f64),
    braid_text: Option<&str>,
    trials: usize,
    seed: u64,
    cap: Option<usize>,
) -> Result<Outcome> {
    let vm = model(m)?;
    let mut results: Vec<(String, bool, Value)> = Vec::new();
    let run_all = all || (!spectral && braid_text.is_none());
    if run_all {
        let axioms = check_axioms(&vm);
        for c in &axioms.checks {
            results.push((c.name.clone(), c.passed, serde_json::to_value(c).expect("serializable")));
        }
        results.push(("braid_matrix_form".into(), braid_relation_matrix_form(&vm), Value::Null));
        for c in check_markov_conditions(&vm).checks {
            results.push((c.name.clone(), c.passed, serde_json::to_value(&c).expect("serializable")));
        }
        let consts = compute_constants(&vm);
        results.push(("constants".into(), consts.is_ok(), json!(consts.map_err(|e| e.to_string()).ok())));
        results.push(("minpoly".into(), minpoly_check(&vm), Value::Null));
    }
    if spectral {
        let sm = SpectralModel::new(vm.n, lambda, 0.5)?;
        let rep = spectral_checks(&sm, u, v);
        results.push(("spectral".into(), rep.max() <= 1e-9, serde_json::to_value(&rep).expect("serializable")));
        let far = limit_check(&sm, &vm, 15.0)?;
        let near = limit_check(&sm, &vm, 8.0)?;
        let good = far.deviation <= 1e-6 && far.deviation < near.deviation;
        results.push(("limit".into(), good, json!({"u15": far, "u8": near})));
    }
    if let Some(text) = braid_text {
        let w = parse_braid(text, None)?;
        let cap = cap.unwrap_or_else(|| default_strand_cap(vm.n));
        if w.strands() > cap {
            return Err(Error::StrandCap { strands: w.strands(), cap });
        }
        let rep = invariance_suite(&w, &vm, trials, seed, cap)?;
        results.push(("invariance".into(), rep.passed(), serde_json::to_value(&rep).expect("serializable")));
    }
    let passed = results.iter().all(|r| r.1);
    let text = if m.json {
        let map: serde_json::Map<String, Value> =
            results.iter().map(|(n, p, d)| (n.clone(), json!({"passed": p, "detail": d}))).collect();
        pretty(&json!({"model": vm.n, "sign": vm.sign, "passed": passed, "checks": map}))
    } else {
        let mut lines: Vec<String> = results
            .iter()
            .map(|(n, p, _)| format!("{:<18} {}", n, if *p { "pass" } else { "FAIL" }))
            .collect();
        lines.insert(0, format!("N={} sign {:?}", vm.n, vm.sign));
        lines.join("\n")
    };
    Ok(ok(text, passed))
}

fn solve_cmd(m: &ModelArgs, discover: bool) -> Result<Outcome> {
    let vm = model(m)?;
    let z_inv = vm.z.unit_inverse().expect("unit");
    let (r_hat, r_hat_inv) = (vm.r.scale(&z_inv), vm.r_inv.scale(&vm.z));
    let discovery = if discover { Some(discover_z(&r_hat, &r_hat_inv)?) } else { None };
    let z = match &discovery {
        Some(d) => d.z.clone().ok_or(Error::NoSolution)?,
        None => vm.z.clone(),
    };
    let sol = solve_twist(&r_hat, &r_hat_inv, Some(&z))?;
    let proportional = sol.m_d_basis.first().is_some_and(|b| crate::axioms::is_proportional(b, &vm.m_d));
    let passed = sol.uniqueness == 1 && proportional;
    if m.json {
        let mut v = serde_json::to_value(&sol).expect("serializable");
        v["m_d_basis"] = json!(sol.m_d_basis.iter().map(|b| b.to_json()).collect::<Vec<_>>());
        v["proportional_to_table"] = json!(proportional);
        if let Some(d) = &discovery {
            v["discovery"] = serde_json::to_value(d).expect("serializable");
        }
        return Ok(ok(pretty(&v), passed));
    }
    let mut text = String::new();
    if let Some(d) = &discovery {
        let fits: Vec<String> = d.confirmed_z_squared.iter().map(|z| z.render(Variable::Q).text).collect();
        text.push_str(&format!("discovered Z^2 = {}\n", fits.join(", ")));
    }
    text.push_str(&format!("Z = {}, nullspace dimension {}\n", z.render(Variable::Q).text, sol.uniqueness));
    for b in &sol.m_d_basis {
        for i in 0..b.dim() {
            let row: Vec<String> = (0..b.dim()).map(|j| b.at(i, j).render(Variable::Q).text).collect();
            text.push_str(&format!("  [{}]\n", row.join(", ")));
        }
    }
    text.push_str(&format!("proportional to the tabulated M_d: {}", if proportional { "yes" } else { "no" }));
    Ok(ok(text, passed))
}

fn skein_cmd(m: &ModelArgs, b: &BraidArgs, position: i32) -> Result<Outcome> {
    let vm = model(m)?;
    let w = braid(b, vm.n)?;
    if position < 1 || position as usize >= w.strands() {
        return Err(Error::BadLetter(format!("position {position} on {} strands", w.strands())));
    }
    let r = skein_residual(&vm, &w, position)?;
    if m.json {
        return Ok(ok(pretty(&json!({"context": w.to_string(), "position": position, "residual": poly_json(&r)})), r.is_zero()));
    }
    Ok(ok(format!("skein residual for N={} after {}: {}", vm.n, w, r), r.is_zero()))
}

fn tl_cmd(m: &ModelArgs, strands: usize) -> Result<Outcome> {
    let vm = model(m)?;
    let tl = build_tl(&vm);
    let e_rel = tl_relations(&tl.e, &tl.k, vm.n, strands.max(3));
    let f_rel = tl_relations(&tl.f, &tl.k, vm.n, strands.max(3));
    let curls = curl_factors(&vm);
    let bracket = bracket_decompose_n2(&vm);
    let dub = (vm.n == 3).then(|| dubrovnik_check_n3(&vm));
    let passed = e_rel.passed()
        && f_rel.passed()
        && curls.is_ok()
        && (vm.n != 2 || bracket.is_ok())
        && dub.as_ref().is_none_or(|d| d.passed() || vm.sign == Sign::Minus);
    if m.json {
        let v = json!({
            "e": tl.e.to_json(),
            "k": poly_json(&tl.k),
            "e_relations": e_rel,
            "f_relations": f_rel,
            "curl_factors": curls.as_ref().ok().map(|(a, b)| json!([poly_json(a), poly_json(b)])),
            "bracket": bracket.as_ref().ok(),
            "bracket_error": bracket.as_ref().err().map(|e| e.to_string()),
            "dubrovnik": dub,
        });
        return Ok(ok(pretty(&v), passed));
    }
    let mut lines = vec![format!("N={} loop value k = {}", vm.n, tl.k.render(Variable::Q).text)];
    let rel = |r: &crate::tlbracket::TLReport| if r.passed() { "hold" } else { "FAIL" };
    lines.push(format!("TL relations for e on {} strands: {}", e_rel.strands, rel(&e_rel)));
    lines.push(format!("TL relations for f = PeP: {}", rel(&f_rel)));
    match &curls {
        Ok((a, b)) => lines.push(format!("curl factors: {} and {}", a.render(Variable::Q).text, b.render(Variable::Q).text)),
        Err(e) => lines.push(format!("curl factors: {e}")),
    }
    match &bracket {
        Ok(d) => lines.push(format!("R = ({}) 1 + ({}) e", d.a.render(Variable::Q).text, d.b.render(Variable::Q).text)),
        Err(e) => lines.push(format!("R in span(1, e): no ({e})")),
    }
    if let Some(d) = dub {
        lines.push(format!("Dubrovnik identity: {}", if d.identity { "holds" } else { "fails" }));
    }
    Ok(ok(lines.join("\n"), passed))
}

fn parse_spin(text: &str) -> Result<HalfInt> {
    let bad = || Error::Parse(format!("spin {text}"));
    let twice = match text.split_once('/') {
        Some((a, "2")) => a.trim().parse::<i32>().map_err(|_| bad())?,
        Some(_) => return Err(bad()),
        None => 2 * text.trim().parse::<i32>().map_err(|_| bad())?,
    };
    Ok(HalfInt(twice))
}

fn uq_cmd(j: &str, q: f64, json_out: bool) -> Result<Outcome> {
    let j = parse_spin(j)?;
    let rep = uqsl2::build_rep(j, q)?;
    let w = uqsl2::build_w(j)?;
    let n = j.twice() as usize + 1;
    let vm = build_model(n, Sign::Plus)?;
    let alg = uqsl2::rep_checks(&rep);
    let conj = uqsl2::w_conjugation_residual(&rep, &w)?;
    let cs = uqsl2::cs_checks(&rep, &w)?;
    let prop = uqsl2::proportionality(&rep)?;
    let factor = uqsl2::w_transpose_factor(&w, &vm);
    let twist = uqsl2::twist_with_w(&w, &vm)?;
    let trunc = uqsl2::truncation_residual(&rep);
    let passed = alg.algebra <= 1e-10
        && alg.casimir <= 1e-10
        && conj <= 1e-9
        && cs.cs1 <= 1e-9
        && cs.cs2 <= 1e-9
        && prop.passed(1e-8)
        && factor.is_some()
        && twist;
    if json_out {
        let v = json!({
            "j": j.to_string(), "q": q, "passed": passed,
            "algebra": alg, "w_conjugation": conj, "crossing": cs, "truncation": trunc,
            "proportionality": prop,
            "w_transpose_over_m_d": factor.as_ref().map(poly_json),
            "twist_with_w": twist,
        });
        return Ok(ok(pretty(&v), passed));
    }
    let lines = [
        format!("spin {j} at q = {q}"),
        format!("algebra residual {:.2e}, Casimir residual {:.2e} (value {:.6})", alg.algebra, alg.casimir, alg.casimir_value),
        format!("w conjugation residual {conj:.2e}"),
        format!("cs1 {:.2e}, cs2 {:.2e}, truncation {:.1e}", cs.cs1, cs.cs2, trunc),
        format!(
            "P R^jj / (R/Z): ratio {:.9}, spread {:.2e} (ignoring signs {:.2e})",
            prop.ratio, prop.spread, prop.abs_spread
        ),
        format!(
            "(pi(w))^t = c M_d with c = {}; twist checks with it: {}",
            factor.map_or("none".into(), |c| c.render(Variable::Q).text),
            if twist { "pass" } else { "FAIL" }
        ),
    ];
    Ok(ok(lines.join("\n"), passed))
}

fn selftest_cmd(seed: u64, mutate: Option<MutationArg>, json_out: bool, err: &mut dyn Write) -> Result<Outcome> {
    let mutation = mutate.map(|m| match m {
        MutationArg::ZeroREntry => Mutation::ZeroREntry,
        MutationArg::WrongEigenvalue => Mutation::WrongEigenvalue,
    });
    let report = selftest(seed, mutation)?;
    let _ = writeln!(err, "selftest finished in {:.1} s", report.elapsed.as_secs_f64());
    let text = if json_out { pretty(&serde_json::to_value(&report).expect("serializable")) } else { report.to_string() };
    Ok(ok(text, report.passed()))
}

fn dispatch(cli: Cli, err: &mut dyn Write) -> Result<Outcome> {
    match cli.command {
        Command::Invariant { model, braid, normalization, variable } => {
            invariant_cmd(&model, &braid, normalization, variable.into())
        }
        Command::Verify { model, all, spectral, lambda, u, v, braid, trials, seed, strand_cap } => {
            verify_cmd(&model, all, spectral, (lambda, u, v), braid.as_deref(), trials, seed, strand_cap)
        }
        Command::SolveM { model, discover_z } => solve_cmd(&model, discover_z),
        Command::Skein { model, braid, position } => skein_cmd(&model, &braid, position),
        Command::Tl { model, check: _, strands } => tl_cmd(&model, strands),
        Command::Uq { j, q, json } => uq_cmd(&j, q, json),
        Command::Selftest { seed, mutate, json } => selftest_cmd(seed, mutate, json, err),
    }
}

/// Parse `args` (including the program name) and run. Exit codes: 0 all
/// checks passed, 1 a check failed, 2 bad usage.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 { write!(out, "{}", e.render()) } else { write!(err, "{}", e.render()) };
            return code;
        }
    };
    match dispatch(cli, err) {
        Ok(o) => {
            let _ = writeln!(out, "{}", o.text);
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if usage_error(&e) {
                2
            } else {
                1
            }
        }
    }
}
