//! Runs each acceptance criterion and prints one PASS/FAIL line per criterion.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use gentle::cli::run_with;
use gentle::families::{build_family, phi_formula, FamilySpec, Tag};
use gentle::invariant::{cartan_matrix, degeneracy_class, euler_data, phi, Degeneracy, PhiInvariant};
use gentle::orbit::{
    enumerate, enumerate_naive, fuzz_shift, normalize, verify_completeness, verify_lemma_tables,
    verify_minimality, verify_move_invariance, LemmaBounds, OrbitLimits, Report, SizeClass,
};
use gentle::quiver::{canonical_key, parse, serialize, BoundQuiver};

type Outcome = Result<String, String>;

fn from_report(r: Report) -> Outcome {
    let summary = r.lines.iter().take(3).cloned().collect::<Vec<_>>().join("; ");
    if r.passed() {
        Ok(summary)
    } else {
        Err(format!("{r}"))
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Every parameter tuple with the given arity and sum at most `max`.
fn tuples(arity: usize, max: u32) -> Vec<Vec<u32>> {
    if arity == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..=max {
        for mut rest in tuples(arity - 1, max - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn closed_form_sweep() -> Outcome {
    let mut checked = 0;
    for tag in [Tag::L0, Tag::L0p, Tag::L1, Tag::L2] {
        for p in tuples(tag.arity(), 10) {
            let spec = FamilySpec::new(tag, &p);
            let Ok(want) = phi_formula(&spec) else { continue };
            let got = phi(&build_family(&spec).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            ensure(got == want, || format!("{spec}: computed {got:?}, closed form {want:?}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} specs"))
}

fn fam(s: &str) -> BoundQuiver {
    build_family(&FamilySpec::parse(s).unwrap()).unwrap()
}

fn anchors() -> Outcome {
    let a2 = parse("quiver a2\nvertex x\nvertex y\narrow a x y\nend\n").unwrap();
    let cases = [
        ("L0(1,0)", fam("L0(1,0)"), vec![(1, 3)]),
        ("L2(1,1,1,0,0)", fam("L2(1,1,1,0,0)"), vec![(0, 1), (0, 1), (1, 1)]),
        ("L1(1,2,0,1,0)", fam("L1(1,2,0,1,0)"), vec![(0, 3), (1, 0), (1, 1)]),
        ("A2", a2, vec![(3, 1)]),
    ];
    for (name, bq, want) in cases {
        let got = phi(&bq).map_err(|e| e.to_string())?;
        ensure(got == PhiInvariant::from_pairs(&want), || format!("{name}: got {got:?}"))?;
    }
    Ok("4 anchors".into())
}

fn completeness() -> Outcome {
    let mut lines = Vec::new();
    for n in 2..=5 {
        let r = verify_completeness(n, &OrbitLimits::default());
        if !r.passed() {
            return Err(format!("{r}"));
        }
        lines.push(format!("n={n}: {}, {}", r.lines[0], r.lines[1]));
    }
    Ok(lines.join("; "))
}

fn degeneracy() -> Outcome {
    let limits = OrbitLimits::default();
    let mut count = 0;
    for n in 1..=4 {
        for bq in enumerate(SizeClass::two_cycle(n), true).map_err(|e| e.to_string())? {
            let class = degeneracy_class(&bq).map_err(|e| e.to_string())?;
            let nf = normalize(&bq, &limits).map_err(|e| e.to_string())?;
            let degenerate_family = matches!(nf.tag, Tag::L0 | Tag::L0p);
            ensure((class == Degeneracy::Degenerate) == degenerate_family, || {
                format!("{:?} class normalizes to {nf}", class)
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} classes"))
}

fn naive_cartan(bq: &BoundQuiver) -> Vec<Vec<i64>> {
    let n = bq.vertex_count();
    let mut c = vec![vec![0i64; n]; n];
    let mut stack: Vec<(usize, Option<usize>, usize)> = (0..n).map(|v| (v, None, v)).collect();
    while let Some((start, last, at)) = stack.pop() {
        c[start][at] += 1;
        for next in bq.out_arrows(at) {
            if last.is_none_or(|l| !bq.has_relation(next, l)) {
                stack.push((start, Some(next), bq.target(next)));
            }
        }
    }
    c
}

fn oracles() -> Outcome {
    let keys = |v: &[BoundQuiver]| v.iter().map(canonical_key).collect::<Vec<_>>();
    let mut sizes = 0;
    for n in 1..=3 {
        for a in n - 1..=n + 1 {
            let size = SizeClass { vertices: n, arrows: a };
            let fast = enumerate(size, false).map_err(|e| e.to_string())?;
            ensure(keys(&fast) == keys(&enumerate_naive(size, false)), || format!("enumeration differs at {size:?}"))?;
            sizes += 1;
        }
    }
    let mut matrices = 0;
    for n in 1..=4 {
        for a in n - 1..=n + 1 {
            for bq in enumerate(SizeClass { vertices: n, arrows: a }, false).map_err(|e| e.to_string())? {
                ensure(cartan_matrix(&bq).entries == naive_cartan(&bq), || format!("cartan differs on {}", serialize(&bq)))?;
                matrices += 1;
            }
        }
    }
    let l0 = fam("L0(1,0)");
    ensure(cartan_matrix(&l0).entries == vec![vec![2, 3], vec![1, 2]], || "L0(1,0) cartan".into())?;
    ensure(euler_data(&l0).map(|e| e.det_cartan) == Some(1), || "L0(1,0) determinant".into())?;
    Ok(format!("{sizes} enumeration sizes, {matrices} cartan matrices"))
}

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(std::iter::once("gentle").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned())
}

fn cli_round_trip() -> Outcome {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let (code, built) = cli(&["family", "build", "L2", "2", "2", "1", "1", "0"]);
    ensure(code == 0, || format!("family build exited {code}"))?;
    let bq = parse(&built).map_err(|e| e.to_string())?;
    ensure(serialize(&bq) == built, || "serialize differs from CLI output".into())?;
    let path = dir.join("acceptance-l2.txt");
    std::fs::write(&path, &built).map_err(|e| e.to_string())?;
    let f = path.to_string_lossy().into_owned();
    let (code, rec) = cli(&["family", "recognize", &f]);
    ensure(code == 0 && rec == "L2(2,2,1,1,0)\n", || format!("recognize gave {rec:?}"))?;
    let commands: Vec<Vec<&str>> = vec![
        vec!["phi", &f],
        vec!["cartan", &f],
        vec!["moves", &f],
        vec!["orbit", "--states", &f],
        vec!["normalize", &f],
        vec!["enumerate", "--vertices", "4", "--two-cycle"],
        vec!["verify", "completeness", "--vertices", "4"],
    ];
    for c in &commands {
        let one = cli(&[&["--jobs", "1"], c.as_slice()].concat());
        let four = cli(&[&["--jobs", "4"], c.as_slice()].concat());
        ensure(one.0 == 0, || format!("{c:?} exited {}", one.0))?;
        ensure(one == four, || format!("{c:?} differs between 1 and 4 jobs"))?;
    }
    Ok(format!("{} commands byte-identical", commands.len()))
}

fn main() -> ExitCode {
    let limits = OrbitLimits::default();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("closed-form invariant, parameter sum up to 10", Box::new(closed_form_sweep)),
        ("anchored invariant values", Box::new(anchors)),
        ("move invariance up to 4 vertices", Box::new(|| from_report(verify_move_invariance(4)))),
        ("completeness for 2 to 5 vertices", Box::new(completeness)),
        ("minimality", Box::new(move || from_report(verify_minimality(8, 4, &limits)))),
        ("degeneracy up to 4 vertices", Box::new(degeneracy)),
        ("lemma tables", Box::new(move || from_report(verify_lemma_tables(&LemmaBounds::default(), &limits)))),
        ("shift fuzz, seed 1, 500 samples", Box::new(|| from_report(fuzz_shift(1, 500)))),
        ("enumeration and cartan oracles", Box::new(oracles)),
        ("command-line round trip and job independence", Box::new(cli_round_trip)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} [{secs:.1}s]\n{why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
