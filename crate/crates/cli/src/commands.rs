use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use mixedab_core::classify::{
    b_plus_e_split, embed_into_gb, generalized_bassian, hopfian_equiv, is_b_plus_e, is_bassian, routes, ClassifyError,
};
use mixedab_core::descriptors::{validate, GroupDescriptor};
use mixedab_core::json::{self, ParseError};
use mixedab_core::linalg::is_prime;
use mixedab_core::presented::{
    check_realization, example_b, realize_cyclic, realize_free_auto, truncate, BoundedHeight, Presentation,
    RealizationCheck, RealizeError,
};
use mixedab_core::psp::{psp_example, verify_psp};
use mixedab_core::valuated::{ulm_free, FreeValuated, ValuatedCyclic};

use crate::{Cli, Command, Example, Expect};

pub struct Output {
    pub text: String,
    pub outcome: Expect,
}

#[derive(Debug)]
pub enum CliError {
    Io(String, std::io::Error),
    Parse(String, ParseError),
    Invalid(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(path, e) => write!(f, "{path}: {e}"),
            CliError::Parse(path, e) => write!(f, "{path}: {e}"),
            CliError::Invalid(msg) => f.write_str(msg),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))
}

fn parse<T>(path: &Path, f: impl FnOnce(&str) -> Result<T, ParseError>) -> Result<T, CliError> {
    f(&read(path)?).map_err(|e| CliError::Parse(path.display().to_string(), e))
}

fn descriptor(path: &Path) -> Result<GroupDescriptor, CliError> {
    let d = parse(path, GroupDescriptor::from_json)?;
    let problems = validate(&d);
    if !problems.is_empty() {
        let msg = problems.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ");
        return Err(CliError::Invalid(format!("{}: {msg}", path.display())));
    }
    Ok(d)
}

enum Valuation {
    Cyclic(ValuatedCyclic),
    Free(FreeValuated),
}

impl Valuation {
    fn free(&self) -> FreeValuated {
        match self {
            Valuation::Cyclic(x) => x.clone().into(),
            Valuation::Free(f) => f.clone(),
        }
    }
}

/// A file with `coords` is free, anything else a single cyclic.
fn valuation(path: &Path, force_free: bool) -> Result<Valuation, CliError> {
    let text = read(path)?;
    let wrap = |e| CliError::Parse(path.display().to_string(), e);
    let value: Value = json::from_str(&text).map_err(wrap)?;
    let v = if force_free || value.get("coords").is_some() {
        Valuation::Free(FreeValuated::from_json(&text).map_err(wrap)?)
    } else {
        Valuation::Cyclic(json::from_str(&text).map_err(wrap)?)
    };
    if let Some(bad) = v.free().validate().into_iter().next() {
        return Err(CliError::Invalid(format!(
            "{}: coordinate {} at p = {}: {}",
            path.display(),
            bad.coord,
            bad.p,
            bad.violation
        )));
    }
    Ok(v)
}

fn report(cli: &Cli, result: impl Serialize) -> String {
    json::to_pretty(&json!({
        "tool": "mixedab",
        "version": env!("CARGO_PKG_VERSION"),
        "config": {"command": &cli.command, "options": &cli.config},
        "result": result,
    }))
}

fn yes_if(ok: bool) -> Expect {
    if ok {
        Expect::Yes
    } else {
        Expect::No
    }
}

fn check_primes(pres: &Presentation, f: &FreeValuated, extra: &[u64]) -> Vec<u64> {
    let mut primes: BTreeSet<u64> = pres.primes().into_iter().chain(f.primes()).chain(extra.iter().copied()).collect();
    if primes.is_empty() {
        primes.insert(2);
    }
    primes.into_iter().collect()
}

fn checks(
    f: &FreeValuated,
    pres: &Presentation,
    primes: &[u64],
    depth: u32,
) -> Result<Vec<RealizationCheck>, CliError> {
    primes
        .iter()
        .map(|&p| check_realization(f, pres, p, depth).map_err(|e| CliError::Invalid(format!("p = {p}: {e}"))))
        .collect()
}

/// Realizations of a single cyclic must be tight; everything else 0-tight.
fn passes(pres: &Presentation, checks: &[RealizationCheck]) -> bool {
    let want_tight = pres.manifest.source.starts_with("realize_cyclic");
    checks.iter().all(|c| c.valuation_match && if want_tight { c.tight } else { c.zero_tight })
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let cfg = &cli.config;
    let (result, outcome) = match &cli.command {
        Command::Classify { desc } => {
            let d = descriptor(desc)?;
            let gb = generalized_bassian(&d);
            let hopfian = hopfian_equiv(&d).ok();
            let outcome = gb.verdict.into();
            (
                json!({
                    "generalized_bassian": gb,
                    "bassian": is_bassian(&d),
                    "b_plus_e": is_b_plus_e(&d),
                    "hopfian": hopfian,
                }),
                outcome,
            )
        }
        Command::Split { desc } => match b_plus_e_split(&descriptor(desc)?) {
            Ok((bassian, elementary)) => (json!({"bassian": bassian, "elementary": elementary}), Expect::Yes),
            Err(ClassifyError::NotBPlusE(r)) => (json!({"not_b_plus_e": r}), Expect::No),
            Err(e) => return Err(CliError::Invalid(e.to_string())),
        },
        Command::Embed { desc } => match embed_into_gb(&descriptor(desc)?) {
            Ok(target) => {
                let gb = generalized_bassian(&target);
                let outcome = gb.verdict.into();
                (json!({"route": routes::EMBEDS, "target": target, "target_report": gb}), outcome)
            }
            Err(ClassifyError::NotBPlusE(r)) => (json!({"route": routes::EMBEDS, "not_b_plus_e": r}), Expect::No),
            Err(e) => return Err(CliError::Invalid(e.to_string())),
        },
        Command::Realize { valuation: path, free, verify, primes } => {
            if let Some(&q) = primes.iter().find(|&&q| !is_prime(q)) {
                return Err(CliError::Invalid(format!("--primes: {q} is not prime")));
            }
            let v = valuation(path, *free)?;
            let built = match &v {
                Valuation::Cyclic(x) => realize_cyclic(x, primes, cfg.jump_cut),
                Valuation::Free(f) => realize_free_auto(f),
            };
            match built {
                Ok(pres) => {
                    let f = v.free();
                    let cs = checks(&f, &pres, &check_primes(&pres, &f, primes), cfg.depth)?;
                    let pass = passes(&pres, &cs);
                    let outcome = if *verify { yes_if(pass) } else { Expect::Yes };
                    (json!({"presentation": pres, "checks": cs, "pass": pass}), outcome)
                }
                Err(e @ RealizeError::HypothesisAbsent(p)) => {
                    (json!({"refused": e.to_string(), "prime": p}), Expect::No)
                }
                Err(e) => return Err(CliError::Invalid(e.to_string())),
            }
        }
        Command::Ulm { input, prime, bound } => {
            if !is_prime(*prime) {
                return Err(CliError::Invalid(format!("{prime} is not prime")));
            }
            if *bound > 1000 {
                return Err(CliError::Invalid(format!("bound {bound} exceeds 1000")));
            }
            let text = read(input)?;
            let value: Value = json::from_str(&text).map_err(|e| CliError::Parse(input.display().to_string(), e))?;
            let (source, f) = if value.get("base").is_some() {
                let pres = parse(input, Presentation::from_json)?;
                let depth = cfg.depth.max(*bound as u32 + 2);
                let m = truncate(&pres, *prime, depth).map_err(|e| CliError::Invalid(e.to_string()))?;
                ("presentation", m.ulm(*bound).map_err(|e| CliError::Invalid(e.to_string()))?)
            } else {
                ("valuation", ulm_free(&valuation(input, false)?.free(), *prime, *bound))
            };
            (json!({"source": source, "p": prime, "bound": bound, "ulm": f}), Expect::Yes)
        }
        Command::Example { which: Example::B, .. } => {
            let pres = example_b(cfg.cutoff);
            let mut rows = Vec::new();
            let mut pass = true;
            for p in (2..=cfg.cutoff).filter(|&p| is_prime(p)) {
                let m = truncate(&pres, p, cfg.depth).map_err(|e| CliError::Invalid(e.to_string()))?;
                let t = m.generator("t", 1.into()).expect("t is a generator");
                let pt = m.generator("t", p.into()).expect("t is a generator");
                let torsion: Vec<String> = m.torsion_factors().iter().map(|d| d.to_string()).collect();
                let (ht, hpt) = (m.height(&t).expect("sized"), m.height(&pt).expect("sized"));
                let quotient = m.free_quotient_height(&t).expect("sized");
                let ok = torsion == [p.to_string()]
                    && ht == BoundedHeight::Exact(0)
                    && !matches!(hpt, BoundedHeight::Exact(h) if h < 2)
                    && quotient.is_none_or(|h| h >= 1);
                pass &= ok;
                rows.push(json!({
                    "p": p, "torsion": torsion, "height_t": ht, "height_pt": hpt,
                    "quotient_height_t": quotient, "ok": ok,
                }));
            }
            (json!({"presentation": pres, "primes": rows, "pass": pass}), yes_if(pass))
        }
        Command::Example { which: Example::Psp, steps, csv, .. } => {
            let e = psp_example(*steps);
            let verified = verify_psp(&e);
            if *csv {
                let mut w = csv::Writer::from_writer(Vec::new());
                for s in &e.steps {
                    w.serialize(s).map_err(|err| CliError::Invalid(err.to_string()))?;
                }
                let bytes = w.into_inner().map_err(|err| CliError::Invalid(err.to_string()))?;
                let text = String::from_utf8(bytes).expect("csv of integers is ASCII");
                return Ok(Output { text, outcome: yes_if(verified.is_ok()) });
            }
            let error = verified.as_ref().err().map(|err| err.to_string());
            (json!({"steps": e.steps, "verified": verified.is_ok(), "error": error}), yes_if(verified.is_ok()))
        }
        Command::Verify { presentation, against } => {
            let pres = parse(presentation, Presentation::from_json)?;
            let f = valuation(against, false)?.free();
            let cs = checks(&f, &pres, &check_primes(&pres, &f, &[]), cfg.depth)?;
            let pass = passes(&pres, &cs);
            (json!({"checks": cs, "pass": pass}), yes_if(pass))
        }
    };
    Ok(Output { text: report(cli, result), outcome })
}
