//! End-to-end behaviour of the command-line interface.

use std::path::PathBuf;
use std::process::Command;

use fanocert::{run, Certificate, GoldenTable, Manifest};

fn data() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data"))
}

fn json(args: &[&str]) -> Certificate {
    let mut a: Vec<&str> = args.to_vec();
    a.push("--json");
    let out = run(a);
    assert_eq!(out.code, 0, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn volume_prints_the_value() {
    let out = Command::new(env!("CARGO_BIN_EXE_fanocert"))
        .args(["volume", "--model", "bl2p2", "--divisor", "3,-2,-2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "2\n");
    // Named-basis input gives the same class.
    assert_eq!(run(["volume", "--model", "bl2p2", "--divisor", "3L - 2E1 - 2E2"]).stdout, "2\n");
}

#[test]
fn delta_certificate_carries_the_chain() {
    let out = run(["delta", "--case", "prop53", "--json"]);
    assert_eq!(out.code, 0);
    for v in ["\"161/176\"", "\"69/88\"", "\"85/44\"", "\"176/171\"", "\"23/44\""] {
        assert!(out.stdout.contains(v), "{v}");
    }
    let c: Certificate = serde_json::from_str(&out.stdout).unwrap();
    assert!(c.notes.iter().any(|n| n.contains("23/44")));
    assert_eq!(c.rational("bound"), Some(exactkernel::q(176, 171)));
    assert!(c.models.iter().all(|m| m.checked));
    let ids: Vec<&str> = c.models.iter().map(|m| m.id.as_str()).collect();
    assert_eq!(ids, ["flags/prop53.toml", "surfaces/dp4.toml", "threefolds/fano_2_16.toml"]);
    // The table mirrors the certificate.
    let table = run(["delta", "--case", "prop53"]).stdout;
    assert!(table.contains("S(W;L1) = 161/176"), "{table}");
}

#[test]
fn exit_codes() {
    assert_eq!(run(["frobnicate"]).code, 2);
    assert_eq!(run(["volume", "--model", "bl2p2"]).code, 2);
    assert_eq!(run(["--help"]).code, 0);
    assert_eq!(run(["volume", "--model", "nope", "--divisor", "1,0,0"]).code, 2);
    assert_eq!(run(["volume", "--model", "bl2p2", "--divisor", "1,0"]).code, 2);
    assert_eq!(run(["volume", "--model", "bl2p2", "--divisor", "1,x,0"]).code, 2);
    assert_eq!(run(["delta", "--case", "nope"]).code, 2);
    assert_eq!(run(["aut", "verify", "--row", "nope"]).code, 2);
    assert_eq!(run(["aut", "classify", "--b", "1,1,2,3,4"]).code, 2);
    assert_eq!(run(["discriminant", "--pencil", "two_conics", "--point", "0,0,0"]).code, 2);
    let math = run(["volume", "--model", "bl2p2", "--divisor", "-1,0,0"]);
    assert_eq!(math.code, 1);
    let err: serde_json::Value = serde_json::from_str(&math.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "math");
    assert_eq!(run(["cox-zariski", "--w", "1,0;1,3", "--wd", "0,1"]).code, 1);
    assert_eq!(run(["cox-zariski", "--w", "1,0,2", "--wd", "0,1"]).code, 2);
}

#[test]
fn external_models_must_be_hashed() {
    let dir = tempfile::tempdir().unwrap();
    let copy = dir.path().join("copy.toml");
    let src = std::fs::read_to_string(data().join("surfaces/bl2p2.toml")).unwrap();
    std::fs::write(&copy, &src).unwrap();
    let path = copy.to_str().unwrap();
    // Identical content is recognised by its hash.
    let c = json(&["volume", "--model", path, "--divisor", "3,-2,-2"]);
    assert_eq!(c.models[0].id, "surfaces/bl2p2.toml");
    assert!(c.models[0].checked);
    // Changed content is refused unless explicitly allowed.
    let edited = copy.with_file_name("edited.toml");
    std::fs::write(&edited, src.replace("Plane blown up", "The plane blown up")).unwrap();
    let edited = edited.to_str().unwrap();
    let refused = run(["volume", "--model", edited, "--divisor", "3,-2,-2"]);
    assert_eq!(refused.code, 2);
    assert!(refused.stderr.contains("--unchecked"), "{}", refused.stderr);
    let c = json(&["volume", "--model", edited, "--divisor", "3,-2,-2", "--unchecked"]);
    assert!(!c.models[0].checked);
    assert_eq!(c.rational("volume"), Some(exactkernel::qi(2)));
    // A malformed model file is an input error.
    let bad = copy.with_file_name("bad.toml");
    std::fs::write(&bad, "name = \"bad\"\nbasis = [\"L\"]\ngram = [[1, 0]]\n").unwrap();
    assert_eq!(run(["volume", "--model", bad.to_str().unwrap(), "--divisor", "1", "--unchecked"]).code, 2);
}

#[test]
fn certificates_are_deterministic() {
    let args = ["delta", "--case", "prop55", "--json"];
    let a = run(args);
    let b = run(args);
    assert_eq!(a, b);
    let c: Certificate = serde_json::from_str(&a.stdout).unwrap();
    assert!(c.digest_is_valid());
    // Serial and parallel runs agree byte for byte.
    assert_eq!(run(["delta", "--case", "prop55", "--json", "--serial"]).stdout, a.stdout);
    // The timestamp is excluded from the digest; --out writes the same JSON.
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("cert.json");
    let t = run(["delta", "--case", "prop55", "--json", "--timestamp", "--out", file.to_str().unwrap()]);
    let ct: Certificate = serde_json::from_str(&t.stdout).unwrap();
    assert!(ct.timestamp.is_some());
    assert_eq!(ct.digest, c.digest);
    assert_eq!(std::fs::read_to_string(&file).unwrap(), t.stdout);
}

#[test]
fn manifest_matches_the_data_directory() {
    assert_eq!(Manifest::scan(&data()).unwrap(), Manifest::load(&data()).unwrap());
}

#[test]
fn golden_suite_passes_and_covers_every_anchor_once() {
    let out = run(["golden", "--json"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let c: Certificate = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(c.rational("passed"), c.rational("total"));
    assert_eq!(run(["golden", "--json", "--serial"]).stdout, out.stdout);
    // Count every anchored value of every golden case against the table.
    let table = GoldenTable::parse(&std::fs::read_to_string(data().join("golden.toml")).unwrap()).unwrap();
    let mut produced = std::collections::BTreeMap::new();
    for case in &table.cases {
        let cert = json(&case.args.iter().map(String::as_str).collect::<Vec<_>>());
        for v in cert.anchored_values() {
            *produced.entry(v.anchor.clone().unwrap()).or_insert(0) += 1;
        }
    }
    let listed: Vec<&String> = table.cases.iter().flat_map(|c| c.expect.keys()).collect();
    assert_eq!(listed.len(), produced.len());
    for key in listed {
        assert_eq!(produced.get(key), Some(&1), "{key}");
    }
}

#[test]
fn golden_table_rejects_duplicate_anchors() {
    let src = "[[case]]\nname = \"a\"\nargs = [\"golden\"]\nexpect = { \"x.y\" = \"1\" }\n\
               [[case]]\nname = \"b\"\nargs = [\"golden\"]\nexpect = { \"x.y\" = \"1\" }\n";
    assert!(GoldenTable::parse(src).is_err());
}

#[test]
fn cox_zariski_emits_json() {
    let out = run(["cox-zariski", "--w", "1,0;0,1;0,1;1,3", "--wd", "2,5"]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["mu"], serde_json::json!(["1/3", "0", "0", "0"]));
    assert_eq!(v["wP"], serde_json::json!(["5/3", "5"]));
    assert_eq!(v["wN"], serde_json::json!(["1/3", "0"]));
}

#[test]
fn discriminant_and_audit() {
    let c = json(&["discriminant", "--pencil", "two_conics", "--point", "0,1,0", "--audit", "two_conics.audit"]);
    assert_eq!(c.rational("c"), Some(exactkernel::qi(-2)));
    assert_eq!(c.value("fiber type"), Some("double_line"));
    assert_eq!(c.value("verdict"), Some("K-stable (Main Theorem)"));
    let fixed = json(&["discriminant", "--pencil", "double_line", "--audit", "double_line_fixed.audit"]);
    assert_eq!(fixed.value("verdict"), Some("inconclusive"));
    // An audit that marks a rational point as not defined over k is rejected.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("audit.toml");
    let src = std::fs::read_to_string(data().join("pencils/two_conics.audit.toml")).unwrap();
    std::fs::write(&path, src.replace("defined_over_k = true", "defined_over_k = false")).unwrap();
    let bad = run(["discriminant", "--pencil", "two_conics", "--audit", path.to_str().unwrap(), "--unchecked"]);
    assert_eq!(bad.code, 1, "{}", bad.stderr);
    assert!(bad.stderr.contains("marked as not defined over k"), "{}", bad.stderr);
}

#[test]
fn aut_commands() {
    let c = json(&["aut", "verify", "--row", "singular-01234-c10"]);
    assert_eq!(c.value("type"), Some("C10"));
    assert_eq!(c.rational("order"), Some(exactkernel::qi(10)));
    let c = json(&["aut", "classify", "--b", "1,z5,z5^2,z5^3,z5^4"]);
    assert_eq!(c.rational("symmetries"), Some(exactkernel::qi(5)));
    let c = json(&["aut", "classify", "--b", "1,-1,2,-2,0"]);
    assert!(c.verdicts.iter().any(|v| v.name == "nu=[1, 0, 3, 2, 4]" && v.value.starts_with("c = -1")));
    // A corrupted row fails verification with exit code 1.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corrupted.toml");
    let src = std::fs::read_to_string(data().join("aut/smooth.toml")).unwrap();
    std::fs::write(&path, src.replace("[\"[-1,0,3,2,5,4]\"", "[\"[1,0,3,2,5,4]\"")).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(run(["aut", "verify", "--row", "smooth-01-23-45-d4", "--table", p]).code, 2);
    let out = run(["aut", "verify", "--row", "smooth-01-23-45-d4", "--table", p, "--unchecked"]);
    assert_eq!(out.code, 1, "{}", out.stdout);
    assert!(out.stdout.contains("[FAIL]"), "{}", out.stdout);
}
