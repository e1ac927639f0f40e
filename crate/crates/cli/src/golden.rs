//! The golden-value regression suite.
//!
//! `data/golden.toml` lists cases, each a command line plus the expected
//! values: `expect` is keyed by anchor, `named` by the name of an unanchored
//! result.  Every anchor is listed exactly once in the whole table.  Cases
//! run independently, in parallel unless `--serial` is given.  A case passes
//! when every expected value is reproduced exactly and every anchored value
//! of its certificate is listed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certificate::Certificate;
use crate::commands::{Context, Output};
use crate::error::CliError;

/// One golden case.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoldenCase {
    /// Case name.
    pub name: String,
    /// Command line, without the program name.
    pub args: Vec<String>,
    /// Anchor → expected value.
    #[serde(default)]
    pub expect: BTreeMap<String, String>,
    /// Result name → expected value, for unanchored results.
    #[serde(default)]
    pub named: BTreeMap<String, String>,
}

/// The golden table.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoldenTable {
    /// Cases.
    #[serde(rename = "case")]
    pub cases: Vec<GoldenCase>,
}

impl GoldenTable {
    /// Parses the table and checks that no key is listed twice.
    pub fn parse(src: &str) -> Result<GoldenTable, CliError> {
        let t: GoldenTable = toml::from_str(src).map_err(|e| CliError::Input(format!("golden table: {e}")))?;
        let mut keys = BTreeSet::new();
        let mut names = BTreeSet::new();
        for c in &t.cases {
            if !names.insert(c.name.as_str()) {
                return Err(CliError::Input(format!("golden case {:?} is listed twice", c.name)));
            }
            for k in c.expect.keys() {
                if !keys.insert(k.as_str()) {
                    return Err(CliError::Input(format!("golden key {k:?} is listed twice")));
                }
            }
        }
        Ok(t)
    }
}

/// Outcome of one expected value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoldenRow {
    /// Case name.
    pub case: String,
    /// Anchor or result name.
    pub key: String,
    /// Expected value.
    pub expected: Option<String>,
    /// Computed value.
    pub computed: Option<String>,
    /// Whether they agree.
    pub passed: bool,
}

/// Compares a certificate with the expectations of a case.
pub fn compare(case: &GoldenCase, cert: &Certificate) -> Vec<GoldenRow> {
    let mut rows = Vec::new();
    let mut anchored: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for v in cert.anchored_values() {
        anchored.entry(v.anchor.as_deref().expect("anchored")).or_default().push(&v.value);
    }
    let expected = case.expect.iter().map(|(k, v)| (k, v, true)).chain(case.named.iter().map(|(k, v)| (k, v, false)));
    for (key, expected, is_anchor) in expected {
        let found: Vec<&str> = if is_anchor {
            anchored.get(key.as_str()).cloned().unwrap_or_default()
        } else {
            cert.results.iter().chain(&cert.verdicts).filter(|v| v.anchor.is_none() && &v.name == key).map(|v| v.value.as_str()).collect()
        };
        let computed = (found.len() == 1).then(|| found[0].to_string());
        let passed = computed.as_deref() == Some(expected.as_str());
        rows.push(GoldenRow { case: case.name.clone(), key: key.clone(), expected: Some(expected.clone()), computed, passed });
    }
    for (anchor, values) in anchored {
        if !case.expect.contains_key(anchor) {
            rows.push(GoldenRow {
                case: case.name.clone(),
                key: anchor.to_string(),
                expected: None,
                computed: Some(values.join(" | ")),
                passed: false,
            });
        }
    }
    rows
}

/// Runs every case of the golden table.
pub fn run_golden(
    ctx: &Context,
    cert: &mut Certificate,
    dispatch: impl Fn(&Context, &[String]) -> Result<Output, CliError> + Sync,
) -> Result<Output, CliError> {
    let (path, r) = ctx.model(".", "golden")?;
    cert.models.push(r);
    let src = std::fs::read_to_string(&path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let table = GoldenTable::parse(&src)?;
    let run_case = |case: &GoldenCase| -> Vec<GoldenRow> {
        match dispatch(ctx, &case.args) {
            Ok(out) => compare(case, &out.certificate),
            Err(e) => vec![GoldenRow {
                case: case.name.clone(),
                key: "<command>".into(),
                expected: None,
                computed: Some(e.to_string()),
                passed: false,
            }],
        }
    };
    let per_case: Vec<Vec<GoldenRow>> = if ctx.parallel {
        table.cases.par_iter().map(run_case).collect()
    } else {
        table.cases.iter().map(run_case).collect()
    };
    let rows: Vec<GoldenRow> = per_case.into_iter().flatten().collect();
    let passed = rows.iter().filter(|r| r.passed).count();
    let mut t = String::new();
    for r in &rows {
        let _ = writeln!(
            t,
            "{} {:<10} {:<44} computed {:<12} expected {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.case,
            r.key,
            r.computed.as_deref().unwrap_or("-"),
            r.expected.as_deref().unwrap_or("-"),
        );
        cert.verdict(format!("{}:{}", r.case, r.key), if r.passed { "pass" } else { "FAIL" }, None);
    }
    let _ = writeln!(t, "{passed}/{} golden values reproduced", rows.len());
    cert.result("passed", &exactkernel::Rational::from(passed as i64));
    cert.result("total", &exactkernel::Rational::from(rows.len() as i64));
    cert.detail = serde_json::to_value(&rows).expect("serializable");
    Ok(Output { certificate: cert.clone(), table: t, failed: passed != rows.len() })
}
