use std::path::PathBuf;

use gentle::cli::{run_with, EXIT_DOMAIN, EXIT_FAIL, EXIT_INPUT, EXIT_OK, EXIT_USAGE};

const L0: &str = "quiver L0_1_0
vertex w0
vertex w1
arrow alpha1 w1 w0
arrow beta w0 w1
arrow gamma w0 w1
rel alpha1 beta
rel gamma alpha1
end
";

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("gentle").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn file(name: &str, text: &str) -> String {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("cli-{name}.txt"));
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn family_build_golden() {
    assert_eq!(cli(&["family", "build", "L0", "1", "0"]), (EXIT_OK, L0.to_string(), String::new()));
}

#[test]
fn phi_and_cartan_golden() {
    let f = file("l0", L0);
    assert_eq!(cli(&["phi", &f]).1, "(1,3): 1\nsum: 1\n");
    assert_eq!(cli(&["cartan", &f]).1, "order: w0 w1\n2 3\n1 2\ndet: 1\nsymmetrized det: 0\n");
    assert_eq!(cli(&["family", "phi", "L2", "1", "1", "1", "0", "0"]).1, "(0,1): 2\n(1,1): 1\nsum: 3\n");
}

#[test]
fn validate_reports_violations() {
    let ok = file("ok", L0);
    assert_eq!(cli(&["validate", "--connected", &ok]), (EXIT_OK, "OK\n".into(), String::new()));
    let bad = file("loops", "quiver q\nvertex x\narrow a x x\narrow b x x\nrel a a\nrel b b\nend\n");
    let (code, out, _) = cli(&["validate", &bad]);
    assert_eq!(code, EXIT_DOMAIN);
    assert!(out.starts_with("FIN cycle:"), "{out}");
}

#[test]
fn build_then_recognize_and_normalize() {
    let (_, built, _) = cli(&["family", "build", "L2", "1", "2", "1", "0", "0"]);
    let f = file("l2", &built);
    assert_eq!(cli(&["family", "recognize", &f]).1, "L2(1,2,1,0,0)\n");
    assert_eq!(cli(&["normalize", &f]).1, "L2(2,1,1,0,0)\n");
}

#[test]
fn apply_and_shift_print_quivers() {
    let f = file("l0-apply", L0);
    let (code, out, _) = cli(&["apply", "--move", "gen-apr-reflect", "--vertex", "w1", &f]);
    assert_eq!(code, EXIT_OK);
    let moved = gentle::quiver::parse(&out).unwrap();
    assert!(gentle::quiver::validate(&moved).is_ok());

    let (_, built, _) = cli(&["family", "build", "L2", "2", "1", "1", "0", "0"]);
    let g = file("l2-shift", &built);
    let (code, out, _) = cli(&["shift", "--relation", "alpha2", "alpha1", "--direction", "left", &g]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("# gen-apr-reflect a1\nquiver "), "{out}");
    let (code, direct, _) = cli(&["shift", "--relation", "alpha2", "alpha1", "--direction", "left", "--direct", &g]);
    assert_eq!(code, EXIT_OK);
    let a = gentle::quiver::parse(&out).unwrap();
    let b = gentle::quiver::parse(&direct).unwrap();
    assert!(gentle::quiver::is_isomorphic(&a, &b));
}

#[test]
fn enumerate_output_parses() {
    let (code, out, _) = cli(&["enumerate", "--vertices", "2", "--two-cycle"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.ends_with("# classes: 3\n"));
    let blocks: Vec<&str> = out.split("\n\n").filter(|b| b.contains("quiver")).collect();
    assert_eq!(blocks.len(), 3);
    for b in blocks {
        let text: String = b.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
        assert!(gentle::quiver::parse(&text).is_ok());
    }
}

#[test]
fn reports_exit_by_verdict() {
    let (code, out, _) = cli(&["verify", "moves", "--max-vertices", "3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.ends_with("RESULT: PASS\n"));
    let (code, out, _) = cli(&["fuzz-shift", "--seed", "3", "--count", "40"]);
    assert_eq!(code, EXIT_OK, "{out}");
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(cli(&["--help"]).0, EXIT_OK);
    assert_eq!(cli(&["phi", "/nonexistent/q.txt"]).0, EXIT_INPUT);
    let junk = file("junk", "not a quiver\n");
    assert_eq!(cli(&["phi", &junk]).0, EXIT_INPUT);
    assert_eq!(cli(&["family", "build", "L2", "1", "1", "0", "0", "0"]).0, EXIT_DOMAIN);
    assert_eq!(cli(&["enumerate", "--vertices", "9"]).0, EXIT_DOMAIN);
    let (code, _, err) = cli(&["apply", "--move", "apr-reflect", "--vertex", "w0", &file("l0-bad", L0)]);
    assert_eq!(code, EXIT_DOMAIN);
    assert!(err.starts_with("error: "));
    assert_ne!(EXIT_FAIL, EXIT_OK);
}

#[test]
fn output_does_not_depend_on_jobs() {
    let f = file("l2-jobs", &cli(&["family", "build", "L2", "2", "2", "1", "1", "0"]).1);
    for args in [
        vec!["orbit", "--states", f.as_str()],
        vec!["enumerate", "--vertices", "4", "--two-cycle"],
        vec!["verify", "completeness", "--vertices", "4"],
    ] {
        let one = cli(&[&["--jobs", "1"], args.as_slice()].concat());
        let four = cli(&[&["--jobs", "4"], args.as_slice()].concat());
        assert_eq!(one, four, "{args:?}");
        assert_eq!(one.0, EXIT_OK);
    }
}
