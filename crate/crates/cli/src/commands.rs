//! The subcommands.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use autcheck::{cycle_type, find_row, load_table, skew_classify, verify_table_row, TableRow};
use coxcone::{zariski_cox, ClassVector2};
use exactkernel::expr::parse_scalar;
use exactkernel::{CycloElement, Rational};
use flagdelta::{load_case, prop52_quotient_bound, run_flag_case, Case, DeltaReport, FiberType, FlagCase, QuotientCase};
use quartic::{
    discriminant, exceptional_surface_type, fiber_type, kstability_certificate, load_audit, parse_point,
    render_scalar, symbolic_identity, PencilFile,
};
use num_traits::One;
use serde::Serialize;
use surfgeom::{DivisorClass, SurfaceLattice};

use crate::certificate::Certificate;
use crate::error::CliError;
use crate::manifest::{resolve, Manifest, ModelRef};

/// Shared state of one invocation.
#[derive(Clone, Debug)]
pub struct Context {
    /// Root of the data directory.
    pub data_dir: PathBuf,
    /// The manifest of the data directory.
    pub manifest: Manifest,
    /// Accept files whose hashes are not in the manifest.
    pub unchecked: bool,
    /// Run independent work in parallel.
    pub parallel: bool,
}

/// Result of a subcommand.
#[derive(Clone, Debug)]
pub struct Output {
    /// The certificate.
    pub certificate: Certificate,
    /// Human-readable rendering.
    pub table: String,
    /// The command completed but a check failed (exit code 1).
    pub failed: bool,
}

impl Output {
    fn new(certificate: Certificate) -> Self {
        let table = certificate.table();
        Output { certificate, table, failed: false }
    }
}

impl Context {
    /// Resolves and hash-checks a model argument.
    pub fn model(&self, subdir: &str, arg: &str) -> Result<(PathBuf, ModelRef), CliError> {
        let path = resolve(&self.data_dir, subdir, arg);
        let r = self.manifest.verify(&path, self.unchecked)?;
        Ok((path, r))
    }
}

/// Renders a serializable enum the way it is serialized.
fn label<T: Serialize>(x: &T) -> String {
    match serde_json::to_value(x) {
        Ok(serde_json::Value::String(s)) => s,
        Ok(v) => v.to_string(),
        Err(e) => e.to_string(),
    }
}

fn rational(src: &str) -> Result<Rational, CliError> {
    src.trim().parse().map_err(|_| CliError::Input(format!("{src:?} is not a rational number")))
}

fn rationals(src: &str) -> Result<Vec<Rational>, CliError> {
    src.split(',').map(rational).collect()
}

fn load_surface(ctx: &Context, arg: &str) -> Result<(SurfaceLattice, ModelRef), CliError> {
    let (path, r) = ctx.model("surfaces", arg)?;
    Ok((SurfaceLattice::from_path(&path)?, r))
}

/// Parses `3,-2,-2` (coordinates) or `3L - 2E1 - 2E2` (named basis).
fn parse_divisor(lat: &SurfaceLattice, src: &str) -> Result<DivisorClass, CliError> {
    if src.chars().any(char::is_alphabetic) {
        return Ok(lat.parse_class(src)?);
    }
    let d = DivisorClass(rationals(src)?);
    if d.rank() != lat.rank() {
        return Err(CliError::Input(format!("divisor has {} coordinates, model {} has rank {}", d.rank(), lat.name, lat.rank())));
    }
    Ok(d)
}

/// `zariski --model M --divisor D`.
pub fn zariski(ctx: &Context, cert: &mut Certificate, model: &str, divisor: &str) -> Result<Output, CliError> {
    let (lat, r) = load_surface(ctx, model)?;
    cert.models.push(r);
    let d = parse_divisor(&lat, divisor)?;
    let z = lat.zariski(&d)?;
    for (name, c) in lat.basis_names.iter().zip(&z.positive.0) {
        cert.result(format!("P.{name}"), c);
    }
    for (i, a) in &z.negative {
        cert.result(format!("N.{}", lat.tracked[*i].name), a);
    }
    let vol = lat.intersect(&z.positive, &z.positive)?;
    cert.result("P^2", &vol);
    let support: Vec<&str> = z.support.iter().map(|&i| lat.tracked[i].name.as_str()).collect();
    cert.verdict("support", if support.is_empty() { "-".to_string() } else { support.join(", ") }, None);
    let negative: Vec<serde_json::Value> = z
        .negative
        .iter()
        .map(|(i, a)| serde_json::json!({ "curve": lat.tracked[*i].name, "coefficient": a }))
        .collect();
    cert.detail = serde_json::json!({
        "divisor": d.render(&lat.basis_names),
        "positive": z.positive.render(&lat.basis_names),
        "negative": negative,
    });
    let mut out = Output::new(cert.clone());
    let mut t = String::new();
    let _ = writeln!(t, "D   = {}", d.render(&lat.basis_names));
    let _ = writeln!(t, "P   = {}", z.positive.render(&lat.basis_names));
    let n: Vec<String> = z
        .negative
        .iter()
        .map(|(i, a)| {
            let name = &lat.tracked[*i].name;
            if a.is_one() { name.clone() } else { format!("{a}*{name}") }
        })
        .collect();
    let _ = writeln!(t, "N   = {}", if n.is_empty() { "0".to_string() } else { n.join(" + ") });
    let _ = writeln!(t, "P^2 = {vol}");
    out.table = t;
    Ok(out)
}

/// `volume --model M --divisor D`.
pub fn volume(ctx: &Context, cert: &mut Certificate, model: &str, divisor: &str) -> Result<Output, CliError> {
    let (lat, r) = load_surface(ctx, model)?;
    cert.models.push(r);
    let d = parse_divisor(&lat, divisor)?;
    let v = lat.volume(&d)?;
    cert.result("volume", &v);
    cert.detail = serde_json::json!({ "divisor": d.render(&lat.basis_names), "volume": v });
    let mut out = Output::new(cert.clone());
    out.table = format!("{v}\n");
    Ok(out)
}

fn parse_pair(src: &str) -> Result<ClassVector2, CliError> {
    let v = rationals(src.trim().trim_start_matches('(').trim_end_matches(')'))?;
    ClassVector2::from_slice(&v).map_err(|e| CliError::Input(e.to_string()))
}

/// Parses `1,0;0,1;1,3` (pairs separated by semicolons).
pub fn parse_pairs(src: &str) -> Result<Vec<ClassVector2>, CliError> {
    src.split(';').filter(|s| !s.trim().is_empty()).map(parse_pair).collect()
}

/// `cox-zariski --w W --wd D`.
pub fn cox_zariski(cert: &mut Certificate, w: &str, wd: &str) -> Result<Output, CliError> {
    let w = parse_pairs(w)?;
    let wd = parse_pair(wd)?;
    let z = zariski_cox(&wd, &w)?;
    for (i, m) in z.mu.iter().enumerate() {
        cert.result(format!("mu[{i}]"), m);
    }
    cert.result("wP.0", &z.w_p.0);
    cert.result("wP.1", &z.w_p.1);
    cert.result("wN.0", &z.w_n.0);
    cert.result("wN.1", &z.w_n.1);
    cert.detail = serde_json::to_value(&z).expect("serializable");
    let mut out = Output::new(cert.clone());
    let summary = serde_json::json!({ "mu": z.mu, "wP": [z.w_p.0, z.w_p.1], "wN": [z.w_n.0, z.w_n.1] });
    out.table = format!("{summary}\n");
    Ok(out)
}

/// Hash-checks a case file and every `.toml` file it references.
fn case_models(ctx: &Context, path: &Path) -> Result<Vec<ModelRef>, CliError> {
    let mut refs = vec![ctx.manifest.verify(path, ctx.unchecked)?];
    let src = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let value: toml::Value = toml::from_str(&src).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let mut stack = vec![&value];
    let mut seen = Vec::new();
    while let Some(v) = stack.pop() {
        match v {
            toml::Value::String(s) if s.ends_with(".toml") => {
                if !seen.contains(s) {
                    seen.push(s.clone());
                    refs.push(ctx.manifest.verify(&dir.join(s), ctx.unchecked)?);
                }
            }
            toml::Value::Array(a) => stack.extend(a.iter().rev()),
            toml::Value::Table(t) => stack.extend(t.values().rev()),
            _ => {}
        }
    }
    Ok(refs)
}

fn flag_certificate(cert: &mut Certificate, r: &DeltaReport) {
    let name = r.case.clone();
    let a = |q: &str| format!("{name}.{q}");
    cert.anchored("S_X", &r.s_x, a("S_X"));
    cert.anchored("beta", &r.beta, a("beta"));
    for (i, t) in r.threshold.iter().enumerate() {
        cert.result(format!("t[{i}].lo"), &t.threshold.lo);
        cert.result(format!("t[{i}].hi"), &t.threshold.hi);
        cert.anchored(format!("t[{i}].constant"), &t.threshold.constant, a(&format!("t[{i}].constant")));
        cert.anchored(format!("t[{i}].slope"), &t.threshold.slope, a(&format!("t[{i}].slope")));
    }
    cert.result("chambers", &Rational::from(r.chambers as i64));
    let sw = format!("S(W;{})", r.curve);
    cert.result(format!("{sw}.first_term"), &r.s_w.first_term);
    cert.result(format!("{sw}.second_term"), &r.s_w.second_term);
    cert.anchored(sw.clone(), &r.s_w.total, a(&sw));
    for p in &r.points {
        let key = format!("S(W;{};{})", r.curve, p.point);
        cert.anchored(format!("{key}.base"), &p.value.base, a(&format!("{key}.base")));
        cert.anchored(format!("{key}.F"), &p.value.f_p, a(&format!("{key}.F")));
        cert.anchored(key.clone(), &p.value.total, a(&key));
        cert.result(format!("bound({})", p.point), &p.bound);
    }
    if let Some(e) = &r.exceptional {
        let sg = format!("S(W;{})", e.curve);
        cert.result("A(G)", &e.log_discrepancy);
        cert.anchored(sg.clone(), &e.s_w.total, a(&sg));
        for p in &e.points {
            let key = format!("S(W;{};{})", e.curve, p.point);
            cert.anchored(format!("{key}.base"), &p.value.base, a(&format!("{key}.base")));
            cert.anchored(format!("{key}.F"), &p.value.f_p, a(&format!("{key}.F")));
            cert.anchored(key.clone(), &p.value.total, a(&key));
        }
        cert.result(format!("bound({})", e.curve), &e.bound);
    }
    cert.anchored("bound", &r.bound, a("bound"));
    cert.verdict("conclusive", r.conclusive.to_string(), Some(a("conclusive")));
    cert.notes.extend(r.notes.iter().cloned());
    cert.detail = serde_json::to_value(r).expect("serializable");
}

fn run_flag(ctx: &Context, cert: &mut Certificate, c: &FlagCase) -> Result<Output, CliError> {
    let r = run_flag_case(c, ctx.parallel)?;
    flag_certificate(cert, &r);
    let mut out = Output::new(cert.clone());
    out.table = r.table();
    Ok(out)
}

fn run_quotient(cert: &mut Certificate, c: &QuotientCase) -> Result<Output, CliError> {
    let mut failed = false;
    let mut details = Vec::new();
    let mut t = String::new();
    let _ = writeln!(t, "case {}: {}", c.name, c.description);
    for row in &c.rows {
        let ft = FiberType::parse(&row.fiber_type)?;
        let r = prop52_quotient_bound(c, ft, row.on_e)?;
        let key = format!("{}{}", row.fiber_type, if row.on_e { "+E" } else { "" });
        let a = |q: &str| format!("{}.{key}.{q}", c.name);
        let terms: Vec<String> = r.terms.iter().map(|x| x.value.to_string()).collect();
        for (i, term) in r.terms.iter().enumerate() {
            cert.anchored(format!("{key}.term[{i}]"), &term.value, a(&format!("term[{i}]")));
        }
        cert.result(format!("{key}.total"), &r.total);
        cert.anchored(format!("{key}.gamma"), &r.gamma, a("gamma"));
        if let Some(e) = &row.expected {
            if *e != r.gamma {
                failed = true;
                cert.notes.push(format!("{key}: computed gamma {} differs from the recorded {e}", r.gamma));
            }
        }
        let _ = writeln!(t, "  {key:<14} terms {:<28} gamma {}", terms.join(" + "), r.gamma);
        details.push(serde_json::to_value(&r).expect("serializable"));
    }
    cert.detail = serde_json::Value::Array(details);
    let mut out = Output::new(cert.clone());
    out.table = t;
    out.failed = failed;
    Ok(out)
}

/// `delta --case NAME`.
pub fn delta(ctx: &Context, cert: &mut Certificate, case: &str) -> Result<Output, CliError> {
    let path = resolve(&ctx.data_dir, "flags", case);
    if !path.exists() {
        return Err(CliError::Input(format!("unknown case {case:?} ({} does not exist)", path.display())));
    }
    cert.models.extend(case_models(ctx, &path)?);
    match load_case(&path)? {
        Case::Flag(c) => run_flag(ctx, cert, &c),
        Case::Quotient(c) => run_quotient(cert, &c),
    }
}

/// Options of `discriminant`.
#[derive(Clone, Debug, Default)]
pub struct DiscriminantArgs {
    /// Pencil name or path.
    pub pencil: String,
    /// Optional point `a,b,c`.
    pub point: Option<String>,
    /// Optional audit name or path.
    pub audit: Option<String>,
    /// Also run the fully symbolic identity check.
    pub identity: bool,
}

/// `discriminant --pencil P [--point a,b,c] [--audit A] [--identity]`.
pub fn discriminant_cmd(ctx: &Context, cert: &mut Certificate, args: &DiscriminantArgs) -> Result<Output, CliError> {
    let (path, r) = ctx.model("pencils", &args.pencil)?;
    cert.models.push(r);
    let file = PencilFile::from_path(&path)?;
    let p = file.pencil()?;
    let d = discriminant(&p)?;
    cert.verdict("Delta", d.delta.to_string(), None);
    if let Some(k) = d.pivot {
        cert.verdict("pivot", format!("alpha{}", k + 1), None);
    }
    match &d.constant {
        Some(c) => match c.to_rational() {
            Some(q) => cert.result("c", &q),
            None => cert.verdict("c", render_scalar(c), None),
        },
        None => cert.verdict("c", "none (the discriminant vanishes identically)", None),
    }
    cert.verdict("exceptional surface", label(&exceptional_surface_type(&p)?), None);
    let mut detail = serde_json::json!({ "pencil": file.name, "description": file.description });
    if let Some(src) = &args.point {
        let pt = parse_point(src)?;
        let value = d.delta.eval(&pt);
        cert.verdict("Delta(point)", render_scalar(&value), None);
        cert.verdict("fiber type", label(&fiber_type(&p, &pt)?), None);
    }
    if let Some(a) = &args.audit {
        let (apath, r) = ctx.model("pencils", a)?;
        cert.models.push(r);
        let audit = load_audit(&apath)?;
        let k = kstability_certificate(&d, &audit)?;
        cert.verdict("verdict", label(&k.verdict), None);
        cert.verdict("route", k.route.as_ref().map_or("-".to_string(), label), None);
        cert.notes.extend(k.notes.iter().cloned());
        detail["kstability"] = serde_json::to_value(&k).expect("serializable");
    }
    if args.identity {
        let id = symbolic_identity()?;
        cert.anchored("identity.chart_constant", &id.chart_constant, "discriminant.chart_constant");
        for (k, c) in id.pivot_constants.iter().enumerate() {
            cert.result(format!("identity.pivot_constant[{k}]"), c);
        }
        cert.anchored("identity.terms", &Rational::from(id.terms as i64), "discriminant.terms");
        detail["identity"] = serde_json::to_value(&id).expect("serializable");
    }
    cert.detail = detail;
    Ok(Output::new(cert.clone()))
}

/// Loads the shipped automorphism tables, or `table` if given.
fn aut_rows(ctx: &Context, cert: &mut Certificate, table: Option<&str>) -> Result<Vec<TableRow>, CliError> {
    let files: Vec<String> = match table {
        Some(t) => vec![t.to_string()],
        None => vec!["smooth".into(), "singular".into()],
    };
    let mut rows = Vec::new();
    for f in files {
        let (path, r) = ctx.model("aut", &f)?;
        cert.models.push(r);
        rows.extend(load_table(&path)?);
    }
    Ok(rows)
}

/// `aut verify --row LABEL`.
pub fn aut_verify(ctx: &Context, cert: &mut Certificate, label_: &str, seed: u64, table: Option<&str>) -> Result<Output, CliError> {
    let rows = aut_rows(ctx, cert, table)?;
    let row = find_row(&rows, label_)?;
    let report = verify_table_row(row, seed)?;
    cert.result("order", &Rational::from(report.order as i64));
    cert.verdict("claimed", report.claimed.clone(), None);
    cert.verdict("type", report.identified.clone(), Some(format!("aut.{}", report.label)));
    for c in &report.checks {
        cert.verdict(c.name.clone(), if c.passed { "pass" } else { "FAIL" }, None);
    }
    if let Some(e) = &row.erratum {
        cert.notes.push(e.clone());
    }
    cert.detail = serde_json::to_value(&report).expect("serializable");
    let mut out = Output::new(cert.clone());
    out.table = report.table();
    out.failed = !report.passed();
    Ok(out)
}

/// `aut classify --b LIST`.
pub fn aut_classify(cert: &mut Certificate, b: &str) -> Result<Output, CliError> {
    let b: Vec<CycloElement> = b
        .split(',')
        .map(|s| parse_scalar(s.trim()).map_err(CliError::from))
        .collect::<Result<_, _>>()?;
    let found = skew_classify(&b)?;
    cert.result("symmetries", &Rational::from(found.len() as i64));
    let mut t = String::new();
    for s in &found {
        let nu = format!("{:?}", s.nu);
        let ct = format!("{:?}", cycle_type(&s.nu));
        cert.verdict(format!("nu={nu}"), format!("c = {}, r = {}, cycle type {ct}", s.c, s.r), None);
        let _ = writeln!(t, "nu = {nu:<16} cycle type {ct:<10} c = {:<12} r = {}", s.c, s.r);
    }
    cert.detail = serde_json::to_value(&found).expect("serializable");
    let mut out = Output::new(cert.clone());
    out.table = t;
    Ok(out)
}
