use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};
use subadd::monomial::{parse_ideal_verbose, render_monomial};
use subadd::subadditivity::InequalityReport;
use subadd::verify::{
    fuzz_campaign, lemma_campaign, prop_campaign, replay_bundle, replay_csv, verify_lemma_ab1, verify_prop_ab2,
    FuzzConfig, InstanceCampaign, ReplayReport, ReproBundle,
};
use subadd::{
    betti_of_ideal, check_eq1, check_subadditivity, check_thm_ab4, criterion_ab6, max_shifts, BettiTable, Caps,
    Error, FieldSpec, Method, MonomialIdeal, SimplicialComplex, SubcomplexFamily, TaylorComplex,
};

use crate::{Cli, Command, Format, FuzzArgs, Input};

/// Data for standard output plus the exit code.
pub struct Output {
    pub data: String,
    pub code: u8,
}

impl Output {
    fn ok(data: String) -> Self {
        Output { data, code: 0 }
    }
}

/// Exit code for an error: 3 for caps, 2 for engine disagreement, else 1.
pub fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::CapExceeded { .. }) => 3,
        Some(Error::CrossCheckMismatch { .. }) => 2,
        _ => 1,
    }
}

pub fn run(cli: &Cli) -> Result<Output> {
    let field = cli.field;
    let caps = cli.caps();
    match &cli.command {
        Command::Betti { input, method } => betti(&load_ideal(input)?, field, (*method).into(), caps, cli.format),
        Command::Shifts { input, method } => shifts(&load_ideal(input)?, field, (*method).into(), caps, cli.format),
        Command::Check { input, method } => check(&load_ideal(input)?, field, (*method).into(), caps, cli.format),
        Command::Witness { input, c } => witness(&load_ideal(input)?, *c, field, caps, cli.format),
        Command::Ab6 { input } => ab6(&load_ideal(input)?, field, cli.format),
        Command::VerifyLemma1 {
            text,
            file,
            j,
            random,
            seed,
            n_max,
            t_max,
        } => match random {
            Some(trials) => campaign_output(lemma_campaign(*seed, *trials, *n_max, *t_max, field)?, cli.format),
            None => lemma1(&read_text(text.as_deref(), file.as_deref())?, *j, field, cli.format),
        },
        Command::VerifyProp2 {
            text,
            file,
            w,
            a_set,
            a,
            s,
            l,
            random,
            seed,
            n_max,
        } => match random {
            Some(trials) => campaign_output(prop_campaign(*seed, *trials, *n_max, field, caps)?, cli.format),
            None => {
                let delta = SimplicialComplex::parse_fixture(&read_text(text.as_deref(), file.as_deref())?)?;
                let need = |name: &str| anyhow!("--{name} is required unless --random is given");
                let w = vertex_set(w.as_deref().ok_or_else(|| need("w"))?, delta.n())?;
                let a_set = vertex_set(a_set.as_deref().ok_or_else(|| need("a-set"))?, delta.n())?;
                let (a, s, l) = (a.ok_or_else(|| need("a"))?, s.ok_or_else(|| need("s"))?, l.ok_or_else(|| need("l"))?);
                let check = verify_prop_ab2(&delta, w, a_set, a, s, l, field, caps)?;
                let code = if check.is_violation() { 2 } else { 0 };
                let body = json!({ "field": field, "instance": delta.render_fixture(), "result": check });
                Ok(Output {
                    data: render_value(&body, cli.format),
                    code,
                })
            }
        },
        Command::Fuzz(args) => fuzz(args, field, caps, cli.format),
        Command::Replay { input } => replay(&read_input(input)?, caps, cli.format),
    }
}

fn read_text(text: Option<&str>, file: Option<&Path>) -> Result<String> {
    match (text, file) {
        (Some(t), None) => Ok(t.to_string()),
        (None, Some(p)) if p == Path::new("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
            Ok(s)
        }
        (None, Some(p)) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        _ => bail!("give the input inline or with --file, not both"),
    }
}

fn read_input(input: &Input) -> Result<String> {
    read_text(input.text.as_deref(), input.file.as_deref())
}

fn load_ideal(input: &Input) -> Result<MonomialIdeal> {
    let (ideal, dropped) = parse_ideal_verbose(&read_input(input)?)?;
    if !dropped.is_empty() {
        let names: Vec<String> = dropped.iter().map(|m| render_monomial(ideal.var_names(), m)).collect();
        eprintln!(
            "note: minimalization removed {} redundant generator(s): {}",
            dropped.len(),
            names.join(", ")
        );
    }
    Ok(ideal)
}

/// Parse `1 2 3` or `1,2,3` (1-based labels) into a vertex mask.
fn vertex_set(text: &str, n: usize) -> Result<u32> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .try_fold(0u32, |acc, t| {
            let v: usize = t.parse().with_context(|| format!("bad vertex label {t:?}"))?;
            if v == 0 || v > n {
                bail!("vertex {v} outside 1..={n}");
            }
            Ok(acc | 1 << (v - 1))
        })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// JSON for `--format json` and `text`; CSV is not defined for nested data.
fn render_value(v: &Value, format: Option<Format>) -> String {
    match format {
        Some(Format::Json) | None | Some(Format::Csv) => pretty(v),
        Some(Format::Text) => text_of(v, 0),
    }
}

fn text_of(v: &Value, indent: usize) -> String {
    let pad = " ".repeat(indent);
    let mut out = String::new();
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) | Value::Array(_) if !is_flat(x) || inline_object(x).is_some() => {
                        let _ = writeln!(out, "{pad}{k}:");
                        out.push_str(&text_of(x, indent + 2));
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}{k}: {}", scalar(x));
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if let Some(line) = inline_object(x) {
                    let _ = writeln!(out, "{pad}- {line}");
                } else if is_flat(x) {
                    let _ = writeln!(out, "{pad}- {}", scalar(x));
                } else {
                    let _ = writeln!(out, "{pad}-");
                    out.push_str(&text_of(x, indent + 2));
                }
            }
        }
        _ => {
            let _ = writeln!(out, "{pad}{}", scalar(v));
        }
    }
    out
}

/// `k=v k=v` for an object whose values are all scalars or flat arrays.
fn inline_object(v: &Value) -> Option<String> {
    let map = v.as_object()?;
    if !map.values().all(|x| !x.is_object() && is_flat(x)) {
        return None;
    }
    Some(map.iter().map(|(k, x)| format!("{k}={}", scalar(x))).collect::<Vec<_>>().join(" "))
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(xs) => xs.iter().all(|x| !x.is_object() && !x.is_array()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) if xs.is_empty() => "none".to_string(),
        Value::Array(xs) => xs.iter().map(scalar).collect::<Vec<_>>().join(", "),
        other => other.to_string(),
    }
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Hochster => "hochster",
        Method::Taylor => "taylor",
        Method::Both => "both",
    }
}

fn table(ideal: &MonomialIdeal, field: FieldSpec, method: Method, caps: Caps) -> Result<BettiTable> {
    Ok(betti_of_ideal(ideal, field, method, caps)?)
}

fn betti(ideal: &MonomialIdeal, field: FieldSpec, method: Method, caps: Caps, format: Option<Format>) -> Result<Output> {
    let t = table(ideal, field, method, caps)?;
    let data = match format.unwrap_or(Format::Text) {
        Format::Text => format!("field: {field}\nmethod: {}\n{}", method_name(method), t.diagram()),
        Format::Json => {
            let j = t.to_json();
            pretty(&json!({
                "field": field,
                "method": method_name(method),
                "betti": j.betti,
                "t": j.t,
                "projdim": j.projdim,
            }))
        }
        Format::Csv => csv_string(
            &["field", "i", "j", "beta"],
            t.entries().map(|(i, j, b)| vec![field.to_string(), i.to_string(), j.to_string(), b.to_string()]),
        )?,
    };
    Ok(Output::ok(data))
}

fn shifts(ideal: &MonomialIdeal, field: FieldSpec, method: Method, caps: Caps, format: Option<Format>) -> Result<Output> {
    let s = max_shifts(&table(ideal, field, method, caps)?);
    let t_text = s.t.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    let data = match format.unwrap_or(Format::Text) {
        Format::Text => format!("field: {field}\np: {}\nt: {t_text}\n", s.p),
        Format::Json => pretty(&json!({ "field": field, "p": s.p, "t": s.t })),
        Format::Csv => csv_string(
            &["field", "i", "t"],
            s.t.iter().enumerate().map(|(i, t)| vec![field.to_string(), i.to_string(), t.to_string()]),
        )?,
    };
    Ok(Output::ok(data))
}

fn report_text(rep: &InequalityReport) -> String {
    let mut out = String::new();
    let bad: Vec<_> = rep.violations().collect();
    if bad.is_empty() {
        let _ = writeln!(out, "{}: all hold ({} cases)", rep.name, rep.cases.len());
    } else {
        let _ = writeln!(out, "{}: {} violation(s) in {} cases", rep.name, bad.len(), rep.cases.len());
        for c in bad {
            let idx: Vec<String> = rep
                .index_names
                .iter()
                .zip(&c.indices)
                .map(|(n, v)| format!("{n}={v}"))
                .collect();
            let _ = writeln!(out, "  {}: {} > {}", idx.join(" "), c.lhs, c.rhs);
        }
    }
    out
}

fn check(ideal: &MonomialIdeal, field: FieldSpec, method: Method, caps: Caps, format: Option<Format>) -> Result<Output> {
    let s = max_shifts(&table(ideal, field, method, caps)?);
    let reports = [check_subadditivity(&s), check_thm_ab4(&s), check_eq1(&s)];
    let criterion = criterion_ab6(ideal)?;
    // the last two are proved for every monomial ideal, the first whenever
    // the lcm-ratio criterion holds
    let engine_bug = !reports[1].all_hold || !reports[2].all_hold || (criterion.holds && !reports[0].all_hold);
    if engine_bug {
        eprintln!("error: a proved inequality failed; this indicates an engine bug");
    }
    let data = match format.unwrap_or(Format::Text) {
        Format::Text => {
            let t = s.t.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
            let mut out = format!("field: {field}\np: {}\nt: {t}\n", s.p);
            for r in &reports {
                out.push_str(&report_text(r));
            }
            out
        }
        Format::Json => pretty(&json!({ "field": field, "p": s.p, "t": s.t, "reports": reports })),
        Format::Csv => csv_string(
            &["field", "check", "indices", "lhs", "rhs", "holds"],
            reports.iter().flat_map(|r| r.csv_rows()).map(|row| {
                let mut v = vec![field.to_string()];
                v.extend(row);
                v
            }),
        )?,
    };
    Ok(Output {
        data,
        code: if engine_bug { 2 } else { 0 },
    })
}

fn witness(ideal: &MonomialIdeal, c: Option<usize>, field: FieldSpec, caps: Caps, format: Option<Format>) -> Result<Output> {
    let tc = TaylorComplex::new(ideal, caps)?;
    let shifts = max_shifts(&tc.betti(field));
    let c = c.unwrap_or(shifts.p);
    let rep = tc.witness(c, &shifts, field)?;
    let gens = |idx: &[usize]| -> Vec<String> { idx.iter().map(|&i| ideal.render_monomial(&ideal.gens()[i])).collect() };
    let found = rep.found.as_ref().map(|f| {
        json!({
            "generators": gens(&f.indices()),
            "lcm": ideal.render_monomial(&f.mdeg),
            "degree": f.mdeg.degree(),
        })
    });
    let diagnostics: Vec<Value> = rep
        .diagnostics
        .iter()
        .map(|d| json!({ "generators": gens(&d.generators), "cycle": d.cycle_ok, "non_boundary": d.nonboundary_ok }))
        .collect();
    let implied: Vec<Value> = rep
        .implied
        .iter()
        .map(|&(a, b, holds)| json!({ "a": a, "b": b, "holds": holds }))
        .collect();
    let body = json!({
        "field": field,
        "c": rep.c,
        "t_c": rep.t_c,
        "established": rep.established(),
        "found": found,
        "candidates": rep.candidates,
        "diagnostics": diagnostics,
        "implied": implied,
    });
    if !rep.established() {
        eprintln!("note: no basis-element witness found; the statement is not established for c={c}");
    }
    Ok(Output::ok(render_value(&body, Some(format.unwrap_or(Format::Text)))))
}

fn ab6(ideal: &MonomialIdeal, field: FieldSpec, format: Option<Format>) -> Result<Output> {
    let crit = criterion_ab6(ideal)?;
    let ratios: Vec<String> = crit.ratios.iter().map(|m| ideal.render_monomial(m)).collect();
    let data = match format.unwrap_or(Format::Text) {
        Format::Text => format!("field: {field}\nholds: {}\nratios: {}\n", crit.holds, ratios.join(", ")),
        Format::Json => pretty(&json!({ "field": field, "ab6": { "holds": crit.holds, "ratios": ratios } })),
        Format::Csv => csv_string(
            &["field", "generator", "ratio", "positive"],
            ideal.gens().iter().zip(&crit.ratios).zip(&ratios).map(|((g, m), r)| {
                vec![field.to_string(), ideal.render_monomial(g), r.clone(), (!m.is_one()).to_string()]
            }),
        )?,
    };
    Ok(Output::ok(data))
}

fn lemma1(text: &str, j: Option<i32>, field: FieldSpec, format: Option<Format>) -> Result<Output> {
    let members = text
        .split('|')
        .map(SimplicialComplex::parse_fixture)
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let fam = SubcomplexFamily::new(members)?;
    let degrees: Vec<i32> = match j {
        Some(j) => vec![j],
        None => (-1..fam.n() as i32).collect(),
    };
    let mut code = 0;
    let results: Vec<Value> = degrees
        .iter()
        .map(|&j| {
            let out = verify_lemma_ab1(&fam, j, field);
            if out.is_violation() {
                code = 2;
            }
            json!({ "j": j, "hypothesis": out.hypothesis, "conclusion": out.conclusion })
        })
        .collect();
    if code == 2 {
        eprintln!("error: hypothesis true but conclusion false; this indicates an engine bug");
    }
    let body = json!({ "field": field, "members": fam.len(), "results": results });
    Ok(Output {
        data: render_value(&body, format),
        code,
    })
}

fn campaign_output(rep: InstanceCampaign, format: Option<Format>) -> Result<Output> {
    let code = if rep.violations.is_empty() { 0 } else { 2 };
    for v in &rep.violations {
        eprintln!("violation: {v}");
    }
    Ok(Output {
        data: render_value(&serde_json::to_value(&rep)?, format),
        code,
    })
}

fn fuzz(args: &FuzzArgs, field: FieldSpec, caps: Caps, format: Option<Format>) -> Result<Output> {
    let cfg = FuzzConfig {
        seed: args.seed,
        n_range: [args.n_min, args.n_max],
        r_range: [args.r_min, args.r_max],
        deg_range: [args.deg_min, args.deg_max],
        squarefree_only: args.squarefree,
        fields: if args.fields.is_empty() { vec![field] } else { args.fields.clone() },
        trials: args.trials,
        cross_check_vars: args.cross_check_vars,
        caps,
    };
    let rep = fuzz_campaign(&cfg)?;
    let csv = rep.to_csv()?;
    let summary = rep.summary_json();
    if let Some(p) = &args.out {
        fs::write(p, &csv).with_context(|| format!("writing {}", p.display()))?;
    }
    if let Some(p) = &args.summary {
        fs::write(p, pretty(&summary)).with_context(|| format!("writing {}", p.display()))?;
    }
    if !rep.findings.is_empty() {
        eprintln!("note: {} subadditivity finding(s); see the summary", rep.findings.len());
    }
    let mut code = 0;
    if let Some(bundle) = &rep.abort {
        code = 2;
        let text = pretty(&serde_json::to_value(bundle)?);
        eprintln!("error: {} failed at trial {}; repro bundle:\n{text}", bundle.check, bundle.index);
        if let Some(p) = &args.bundle {
            fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?;
        }
    }
    let data = match format.unwrap_or(Format::Csv) {
        Format::Csv if args.out.is_some() => String::new(),
        Format::Csv => csv,
        Format::Json => pretty(&summary),
        Format::Text => text_of(&json!({ "summary": rep.summary }), 0),
    };
    Ok(Output { data, code })
}

fn replay(text: &str, caps: Caps, format: Option<Format>) -> Result<Output> {
    let rep: ReplayReport = if text.trim_start().starts_with('{') {
        let bundle: ReproBundle = serde_json::from_str(text).context("parsing repro bundle")?;
        replay_bundle(&bundle, caps)?
    } else {
        replay_csv(text, caps)?
    };
    let code = if !rep.violations.is_empty() {
        eprintln!("error: {} violation(s) reproduced", rep.violations.len());
        2
    } else if !rep.mismatches.is_empty() {
        eprintln!("error: {} row(s) did not reproduce", rep.mismatches.len());
        1
    } else {
        0
    };
    let data = match format.unwrap_or(Format::Json) {
        Format::Text => format!(
            "replayed: {}\nmismatches: {}\nviolations: {}\nfindings: {}\n",
            rep.replayed,
            rep.mismatches.len(),
            rep.violations.len(),
            rep.findings.len()
        ),
        _ => pretty(&serde_json::to_value(&rep)?),
    };
    Ok(Output { data, code })
}
