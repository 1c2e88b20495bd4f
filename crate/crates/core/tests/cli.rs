use std::fs;
use std::process::Command;

use twovec::cli::run;
use twovec::io::{bundle_to_json, parse_bundle};

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn twovec(args: &[&str]) -> twovec::cli::Outcome {
    let mut full = vec!["twovec".to_string()];
    full.extend(args.iter().map(|a| {
        if !a.starts_with('/') && (a.ends_with(".json") || a.ends_with(".txt")) {
            fixture(a)
        } else {
            a.to_string()
        }
    }));
    run(full)
}

#[test]
fn check_bundle_golden() {
    let out = twovec(&["check-bundle", "trivial_boundary3.json"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "VALID\n"));
    let out = twovec(&["check-bundle", "trivial_boundary3.json", "--rank", "2"]);
    assert_eq!(out.code, 0);
    let out = twovec(&["check-bundle", "trivial_boundary3.json", "--rank", "3"]);
    assert_eq!(out.code, 2);
    let out = twovec(&["check-bundle", "mutated_simplex3.json"]);
    assert_eq!(out.code, 1);
    assert_eq!(out.stdout, "INVALID at tetrahedron (0,1,2,3): entry (1,1) differs at (0,0): 2 vs 1\n");
}

#[test]
fn structural_and_parse_errors() {
    let out = twovec(&["check-bundle", "det2.json"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.is_empty());
    assert!(out.stderr.contains("gluing[\"0,1\"]: determinant is 2; gluing matrices must have determinant ±1"), "{}", out.stderr);
    let out = twovec(&["check-bundle", "bad_vertex.json"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("parse error at complex: simplex (0,2) uses unknown vertex 2"), "{}", out.stderr);
    let out = twovec(&["check-bundle", "no_such_file.json"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.starts_with("error: cannot read"));
    let out = twovec(&["snf", "ragged.txt"]);
    assert_eq!(out.code, 2);
    let out = twovec(&["k0", "bad_semiring.txt"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("multiplicative identity fails at (1, 0, 0)"), "{}", out.stderr);
}

#[test]
fn usage() {
    let out = twovec(&["frobnicate"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("unrecognized subcommand"));
    let out = twovec(&[]);
    assert_eq!(out.code, 2);
    let out = twovec(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("check-bundle"));
    let out = twovec(&["--version"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "twovec 0.1.0\n"));
    let out = twovec(&["--format", "yaml", "k0"]);
    assert_eq!(out.code, 2);
}

#[test]
fn gerbe_class_golden() {
    let out = twovec(&["gerbe-class", "rp2_suspension_generator.json"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "class = (1) in Z/2\n"));
    let out = twovec(&["gerbe-class", "not_closed.json"]);
    assert_eq!((out.code, out.stdout.as_str()), (1, "NOT CLOSED at tetrahedron (0,1,2,3)\n"));
    let out = twovec(&["gerbe-class", "trivial_boundary3.json"]);
    assert_eq!(out.code, 2, "rank-2 bundle has no phase cocycle");
}

#[test]
fn homology_golden() {
    let out = twovec(&["nerve-homology", "boundary4.json"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "H_0 = Z\nH_1 = 0\nH_2 = 0\nH_3 = Z\n"));
    let out = twovec(&["nerve-homology", "z2.txt", "--kmax", "4"]);
    assert_eq!(out.stdout, "H_0 = Z\nH_1 = Z/2\nH_2 = 0\nH_3 = Z/2\nH_4 = 0\n");
    let out = twovec(&["nerve-homology", "square.txt", "--kmax", "1"]);
    assert_eq!(out.stdout, "H_0 = Z\nH_1 = 0\n");
    let out = twovec(&["nerve-homology", "z2.txt", "--kmax", "3", "--max-degree", "3"]);
    assert_eq!(out.code, 2);
    let out = twovec(&["nerve-homology", "boolean.txt"]);
    assert_eq!(out.code, 2);
}

#[test]
fn q_category_golden() {
    let out = twovec(&["q-category", "z2.txt", "z2.txt"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "objects = 2\nmorphisms = 4\nH_0 = Z\nH_1 = 0\nH_2 = 0\nH_3 = 0\n");
    let out = twovec(&["q-category", "z2.txt", "z3.txt", "--map", "z2_to_z3.txt"]);
    assert_eq!((out.code, out.stdout.as_str()), (1, "REJECTED: map is not a homomorphism at (a, a)\n"));
}

#[test]
fn semiring_commands() {
    assert_eq!(twovec(&["gl-member", "unimodular.txt"]).stdout, "MEMBER\n");
    let out = twovec(&["gl-member", "singular.txt"]);
    assert_eq!((out.code, out.stdout.as_str()), (1, "NOT A MEMBER\n"));
    let out = twovec(&["gl-member", "boolean_matrix.txt", "--semiring", "boolean.txt"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "MEMBER\n"));
    let out = twovec(&["gl-member", "unimodular.txt", "--semiring", "boolean.txt"]);
    assert_eq!(out.code, 2);
    assert_eq!(twovec(&["k0"]).stdout, "K0 = Z\n");
    assert_eq!(twovec(&["k0", "boolean.txt"]).stdout, "K0 = 0\n");
    let out = twovec(&["snf", "snf.txt"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("invariant factors = [2, 6, 12]\nrank = 3\ncokernel = Z/2 ⊕ Z/6 ⊕ Z/12\n"));
}

#[test]
fn transport_commands() {
    let out = twovec(&["pullback", "trivial_simplex2.json", "collapse.json"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "VALID\n"));
    let out = twovec(&["pullback", "trivial_simplex2.json", "reverse.json"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.starts_with("REJECTED: map is not order-preserving"));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("refined.json");
    let out = twovec(&["refine", "trivial_simplex2.json", "collapse.json", "--output", path.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    let written = parse_bundle(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written.base().count(2), 4);
}

#[test]
fn whitney_and_change_commands() {
    let dir = tempfile::tempdir().unwrap();
    let sum = dir.path().join("sum.json");
    let out = twovec(&["whitney", "trivial_boundary3.json", "trivial_boundary3.json", "--output", sum.to_str().unwrap()]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "sum: VALID\nswap: VALID\n"));
    assert_eq!(parse_bundle(&fs::read_to_string(&sum).unwrap()).unwrap().rank(), 4);
    let out = twovec(&["whitney", "trivial_simplex3.json", "mutated_simplex3.json"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.starts_with("sum: INVALID at tetrahedron (0,1,2,3)"));

    let b = parse_bundle(&fs::read_to_string(fixture("trivial_boundary3.json")).unwrap()).unwrap();
    let change = dir.path().join("change.json");
    fs::write(&change, twovec::io::change_to_json(&twovec::bundle::identity_change(&b))).unwrap();
    let src = fixture("trivial_boundary3.json");
    let out = run(["twovec", "check-change", change.to_str().unwrap(), src.as_str(), src.as_str()]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "VALID\n"));
}

#[test]
fn structured_output() {
    let out = twovec(&["--format", "structured", "check-bundle", "mutated_simplex3.json"]);
    assert_eq!(out.code, 1);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["command"], "check-bundle");
    assert_eq!(v["report"]["valid"], false);
    assert_eq!(v["report"]["findings"][0]["simplex"], serde_json::json!([0, 1, 2, 3]));
    let out = twovec(&["gerbe-class", "--format=structured", "rp2_suspension_generator.json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["group"], "Z/2");
    assert_eq!(v["coordinates"], serde_json::json!(["1"]));
    let out = twovec(&["--format", "structured", "check-bundle", "det2.json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["exit"], 2);
    assert!(v["error"].as_str().unwrap().contains("determinant"));
}

#[test]
fn binary_exit_codes_and_determinism() {
    let cases = [
        (vec!["check-bundle", "trivial_boundary3.json"], 0),
        (vec!["check-bundle", "mutated_simplex3.json"], 1),
        (vec!["gl-member", "singular.txt"], 1),
        (vec!["check-bundle", "det2.json"], 2),
        (vec!["--format", "structured", "nerve-homology", "z2.txt"], 0),
    ];
    for (args, code) in cases {
        let args: Vec<String> = args
            .iter()
            .map(|a| if a.contains('.') { fixture(a) } else { a.to_string() })
            .collect();
        let first = Command::new(env!("CARGO_BIN_EXE_twovec")).args(&args).output().unwrap();
        let second = Command::new(env!("CARGO_BIN_EXE_twovec")).args(&args).output().unwrap();
        assert_eq!(first.status.code(), Some(code), "{args:?}");
        assert_eq!(first.stdout, second.stdout);
        assert_eq!(first.stderr, second.stderr);
    }
}

#[test]
fn fixtures_round_trip() {
    for name in ["trivial_boundary3.json", "trivial_simplex3.json", "mutated_simplex3.json", "trivial_simplex2.json"] {
        let text = fs::read_to_string(fixture(name)).unwrap();
        let b = parse_bundle(&text).unwrap();
        assert_eq!(parse_bundle(&bundle_to_json(&b)).unwrap(), b, "{name}");
    }
    for name in ["rp2_suspension_generator.json", "not_closed.json"] {
        let phi = twovec::io::parse_phases(&fs::read_to_string(fixture(name)).unwrap()).unwrap();
        assert_eq!(twovec::io::parse_phases(&twovec::io::phases_to_json(&phi)).unwrap(), phi, "{name}");
    }
    for name in ["collapse.json", "reverse.json"] {
        let f = twovec::io::parse_map(&fs::read_to_string(fixture(name)).unwrap()).unwrap();
        assert_eq!(twovec::io::parse_map(&twovec::io::map_to_json(&f)).unwrap(), f, "{name}");
    }
    let c = twovec::io::parse_complex(&fs::read_to_string(fixture("boundary4.json")).unwrap()).unwrap();
    assert_eq!(twovec::io::parse_complex(&twovec::io::complex_to_json(&c)).unwrap(), c);
}
