use std::error::Error as StdError;
use std::io::Read;
use std::process::ExitCode;

use clap::ValueEnum;
use rearrange_core::breakpoints::{count_breakpoints, render_breakpoints, render_strips, strips as strip_list};
use rearrange_core::lab::{self, families, LabConfig, Lemma, SuiteBounds};
use rearrange_core::ops::{parse_sequence, render_sequence};
use rearrange_core::perm::all_permutations;
use rearrange_core::rational::{self, render};
use rearrange_core::reductions::{fwst_to_fwsr, Theorem};
use rearrange_core::solver::{Outcome, Solver, SortingCertificate};
use rearrange_core::{lower_bound, BreakpointKind, CostScheme, Error, Model, ModelName, Permutation, Signedness};
use serde_json::{json, Value};

use crate::json::{CertificateJson, InstanceJson};
use crate::{Emit, Pricing};

type CliResult = Result<ExitCode, Box<dyn StdError>>;

const NMAX_OVERRIDE: &str = "REARRANGE_NMAX_OVERRIDE";

fn usage(msg: impl Into<String>) -> Box<dyn StdError> {
    msg.into().into()
}

fn no_csv(emit: Emit, command: &str) -> Result<(), Box<dyn StdError>> {
    if emit == Emit::Csv {
        return Err(usage(format!("--emit csv is only available for verify, not {command}")));
    }
    Ok(())
}

fn print_json(value: &impl serde::Serialize) -> Result<(), Box<dyn StdError>> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn parse_scheme(text: &str, unchecked: bool) -> Result<CostScheme, Error> {
    if unchecked {
        CostScheme::parse_unchecked(text)?.unchecked()
    } else {
        text.parse()
    }
}

fn resolve(perm: &str, pricing: &Pricing) -> Result<(Permutation, Model), Error> {
    let name: ModelName = pricing.model.parse()?;
    let scheme = parse_scheme(&pricing.scheme, pricing.unchecked_weights)?;
    let model = Model::new(name, scheme)?;
    let p = Permutation::parse_as(name.signedness(), perm)?;
    Ok((p, model))
}

fn print_certificate_text(cert: &SortingCertificate, model: &Model) -> Result<(), Error> {
    println!("permutation ({})", cert.start);
    println!("model {model}");
    println!("cost {}", render(&cert.total_cost));
    println!("lower bound {}", render(&lower_bound(&cert.start, model)?));
    for s in &cert.steps {
        println!("  {}  cost {}  Δb {}", s.op, render(&s.cost), s.delta_b);
    }
    if !cert.scheme.is_within_proven_range() {
        println!("note: weights outside the proven range");
    }
    Ok(())
}

pub fn distance(perm: &str, pricing: &Pricing, budget: Option<&str>, emit: Emit) -> CliResult {
    no_csv(emit, "distance")?;
    let (p, model) = resolve(perm, pricing)?;
    let budget = budget.map(rational::parse).transpose()?;
    match Solver::new().distance(&p, &model, budget)? {
        Outcome::Sorted(cert) => {
            match emit {
                Emit::Json => print_json(&CertificateJson::from_certificate(&cert)?)?,
                _ => {
                    println!("cost {}", render(&cert.total_cost));
                    println!("sequence {}", render_sequence(&cert.sequence));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Outcome::Infeasible { budget } => {
            match emit {
                Emit::Json => print_json(&json!({
                    "permutation": p.to_string(),
                    "model": model.name().to_string(),
                    "scheme": model.scheme().to_string(),
                    "feasible": false,
                    "budget": rational::RationalJson::from(budget),
                }))?,
                _ => println!("infeasible within budget {}", render(&budget)),
            }
            Ok(ExitCode::from(1))
        }
    }
}

pub fn sort(perm: &str, pricing: &Pricing, ops: Option<&str>, emit: Emit) -> CliResult {
    no_csv(emit, "sort")?;
    let (p, model) = resolve(perm, pricing)?;
    let cert = match ops {
        Some(text) => {
            let seq = parse_sequence(text)?;
            match SortingCertificate::build(&p, &model, seq) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("{e}");
                    return Ok(ExitCode::from(3));
                }
            }
        }
        None => match Solver::new().distance(&p, &model, None)? {
            Outcome::Sorted(c) => c,
            Outcome::Infeasible { .. } => unreachable!("no budget was given"),
        },
    };
    match emit {
        Emit::Json => print_json(&CertificateJson::from_certificate(&cert)?)?,
        _ => print_certificate_text(&cert, &model)?,
    }
    Ok(ExitCode::SUCCESS)
}

pub fn check_certificate(path: &str, emit: Emit) -> CliResult {
    no_csv(emit, "sort")?;
    let mut text = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path)?;
    }
    let claimed: CertificateJson = serde_json::from_str(&text)?;
    let outcome = claimed.check();
    let ok = outcome.is_ok();
    match (emit, &outcome) {
        (Emit::Json, Ok(cert)) => print_json(&json!({"valid": true, "cost": rational::RationalJson::from(cert.total_cost)}))?,
        (Emit::Json, Err(e)) => print_json(&json!({"valid": false, "reason": e.to_string()}))?,
        (_, Ok(cert)) => println!("valid: cost {}", render(&cert.total_cost)),
        (_, Err(e)) => println!("invalid: {e}"),
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(3) })
}

fn pick_kind(p: &str, kind: Option<&str>, model: Option<&str>) -> Result<(Permutation, BreakpointKind), Error> {
    let perm: Permutation = p.parse()?;
    let kind = match (kind, model) {
        (Some(k), _) => k.parse()?,
        (None, Some(m)) => m.parse::<ModelName>()?.breakpoint_kind(),
        (None, None) => unreachable!("clap requires --kind or --model"),
    };
    Ok((perm, kind))
}

pub fn breakpoints(perm: &str, kind: Option<&str>, model: Option<&str>, emit: Emit) -> CliResult {
    no_csv(emit, "breakpoints")?;
    let (p, kind) = pick_kind(perm, kind, model)?;
    let profile = count_breakpoints(&p, kind)?;
    let rendered = render_breakpoints(&p, kind)?;
    match emit {
        Emit::Json => print_json(&json!({
            "permutation": p.to_string(),
            "kind": kind.name(),
            "count": profile.count,
            "positions": profile.positions,
            "rendering": rendered,
        }))?,
        _ => {
            println!("{}", profile.count);
            println!("{rendered}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn strips(perm: &str, kind: Option<&str>, model: Option<&str>, emit: Emit) -> CliResult {
    no_csv(emit, "strips")?;
    let (p, kind) = pick_kind(perm, kind, model)?;
    match emit {
        Emit::Json => print_json(&json!({
            "permutation": p.to_string(),
            "kind": kind.name(),
            "strips": strip_list(&p, kind)?,
        }))?,
        _ => println!("{}", render_strips(&p, kind)?),
    }
    Ok(ExitCode::SUCCESS)
}

pub fn reduce(from: &str, to: &str, perm: &str, scheme: Option<&str>, emit: Emit) -> CliResult {
    no_csv(emit, "reduce")?;
    let p = Permutation::parse_as(Signedness::Unsigned, perm)?;
    let (target, model_text) = match to.split_once(':') {
        Some((t, m)) => (t, Some(m)),
        None => (to, None),
    };
    let frag_target = matches!(target, "fwst" | "fwsr");
    let scheme: CostScheme = match scheme {
        Some(s) => s.parse()?,
        None if frag_target => CostScheme::default_fragmentation(),
        None => CostScheme::Uniform,
    };
    let model_arg = |default: Option<ModelName>| -> Result<ModelName, Box<dyn StdError>> {
        match (model_text, default) {
            (Some(m), _) => Ok(m.parse()?),
            (None, Some(d)) => Ok(d),
            (None, None) => Err(usage(format!("--to {to} needs a model, e.g. {target}:M6"))),
        }
    };
    let instance = match (from, target) {
        ("sb3t", "wsr-signed") => Theorem::WsrSigned.reduce(&p, model_arg(None)?, &scheme)?,
        ("sb3t", "wsr-unsigned") => Theorem::WsrUnsigned.reduce(&p, model_arg(None)?, &scheme)?,
        ("sb3t", "fwst") => Theorem::Fwst.reduce(&p, ModelName::Mf1, &scheme)?,
        ("sb3t", "fwsr") => match model_arg(None)? {
            ModelName::Mf2 => Theorem::FwsrMf2.reduce(&p, ModelName::Mf2, &scheme)?,
            ModelName::Mf3 => Theorem::FwsrMf3.reduce(&p, ModelName::Mf3, &scheme)?,
            other => return Err(usage(format!("--to fwsr:{other} is not a target; use Mf2 or Mf3"))),
        },
        ("fwst", "fwsr") => fwst_to_fwsr(&p, model_arg(None)?, &scheme)?,
        ("sb3t" | "fwst", _) => {
            return Err(usage(format!(
                "--to {to} is not a reduction target from {from}"
            )))
        }
        _ => return Err(usage(format!("--from {from} must be sb3t or fwst"))),
    };
    match emit {
        Emit::Json => print_json(&InstanceJson::from(&instance))?,
        _ => {
            println!("{}", instance.permutation);
            println!("k {}", render(&instance.k));
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub struct VerifyArgs {
    pub lemma: String,
    pub n_max: Option<usize>,
    pub jobs: usize,
    pub emit: Emit,
    pub seed: u64,
    pub trials: Option<usize>,
    pub seq_len_max: Option<usize>,
    pub inject_fault: Option<String>,
    pub timings: bool,
}

fn report_json(r: &lab::VerificationReport, timings: bool) -> Result<Value, Box<dyn StdError>> {
    let mut v = serde_json::to_value(r)?;
    let obj = v.as_object_mut().expect("reports serialize as objects");
    obj.insert("passed".into(), json!(r.passed()));
    if timings {
        obj.insert("wall_time_ms".into(), json!(r.wall_time.as_millis() as u64));
        if let Some(sizes) = obj.get_mut("sizes").and_then(Value::as_array_mut) {
            for (row, size) in sizes.iter_mut().zip(&r.sizes) {
                row.as_object_mut()
                    .expect("rows serialize as objects")
                    .insert("ms".into(), json!(size.wall_time.as_millis() as u64));
            }
        }
    }
    Ok(v)
}

pub fn verify(args: VerifyArgs) -> CliResult {
    let lemmas = Lemma::parse_selector(&args.lemma)?;
    let mut bounds = args.n_max.map(SuiteBounds::uniform).unwrap_or_default();
    if let Some(t) = args.trials {
        bounds.normalization_trials = t;
    }
    if let Some(l) = args.seq_len_max {
        bounds.normalization_seq_len_max = l;
    }
    if let Ok(cap) = std::env::var(NMAX_OVERRIDE) {
        let cap: usize = cap
            .trim()
            .parse()
            .map_err(|_| usage(format!("{NMAX_OVERRIDE} must be a non-negative integer, got '{cap}'")))?;
        bounds = bounds.capped(cap);
    }
    let mut cfg = LabConfig::default()
        .with_jobs(if args.jobs == 0 { None } else { Some(args.jobs) })
        .with_seed(args.seed);
    if let Some(f) = &args.inject_fault {
        cfg = cfg.with_fault(f.parse()?);
    }
    let reports = lab::run_suite(&lemmas, &cfg, &bounds)?;
    let all_passed = reports.iter().all(|r| r.passed());
    match args.emit {
        Emit::Json => {
            let list = reports
                .iter()
                .map(|r| report_json(r, args.timings))
                .collect::<Result<Vec<_>, _>>()?;
            print_json(&list)?;
        }
        Emit::Csv => {
            println!("lemma_id,n,checked,violations,ms");
            for r in &reports {
                for row in &r.sizes {
                    println!(
                        "{},{},{},{},{}",
                        r.lemma_id,
                        row.n,
                        row.checked,
                        row.violations,
                        row.wall_time.as_millis()
                    );
                }
            }
        }
        Emit::Text => {
            for r in &reports {
                println!(
                    "{} {} n={}..{} checked={} ops={} violations={} ({} ms)",
                    if r.passed() { "PASS" } else { "FAIL" },
                    r.lemma_id,
                    r.n_range.0,
                    r.n_range.1,
                    r.instances_checked,
                    r.operations_checked,
                    r.violations.len(),
                    r.wall_time.as_millis()
                );
                for v in r.violations.iter().take(10) {
                    let op = v.operation.as_deref().map(|o| format!(" {o}")).unwrap_or_default();
                    let ctx = if v.context.is_empty() { String::new() } else { format!(" [{}]", v.context) };
                    println!("  ({}){op}{ctx}: expected {}, got {}", v.permutation, v.expected, v.actual);
                }
                if r.violations.len() > 10 {
                    println!("  ... {} more", r.violations.len() - 10);
                }
            }
        }
    }
    Ok(if all_passed { ExitCode::SUCCESS } else { ExitCode::from(3) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    All,
    /// Signed permutations whose strips are all positive
    PositiveStrips,
    /// Unsigned permutations whose strips are all increasing
    IncreasingStrips,
    /// Permutations with π_1 = 1 and π_n = n
    FixedEndpoints,
}

pub fn enumerate(n: usize, signed: bool, family: Family, emit: Emit) -> CliResult {
    no_csv(emit, "enumerate")?;
    let signedness = if signed { Signedness::Signed } else { Signedness::Unsigned };
    let limit = if signed { 6 } else { 8 };
    if n > limit {
        return Err(Error::Size {
            n,
            limit,
            signedness: signedness.label(),
        }
        .into());
    }
    let list: Vec<Permutation> = match (family, signed) {
        (Family::All, _) => all_permutations(n, signedness).collect(),
        (Family::PositiveStrips, true) => families::positive_strip_signed(n),
        (Family::IncreasingStrips, false) => families::increasing_strip_unsigned(n),
        (Family::FixedEndpoints, _) => families::fixed_endpoints(n, signedness),
        (Family::PositiveStrips, false) => return Err(usage("--family positive-strips needs --signed")),
        (Family::IncreasingStrips, true) => return Err(usage("--family increasing-strips is unsigned only")),
    };
    match emit {
        Emit::Json => print_json(&json!({
            "n": n,
            "signedness": signedness.label(),
            "count": list.len(),
            "permutations": list.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        }))?,
        _ => {
            for p in &list {
                println!("{p}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
