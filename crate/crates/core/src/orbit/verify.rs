use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;

use super::{enumerate, OrbitCache, OrbitLimits, Report, SizeClass};
use crate::families::{build_family, phi_formula, specs_with_vertices, FamilySpec, Tag};
use crate::invariant::phi;
use crate::moves::{applicable_moves, apply_move, Move, MoveKind};
use crate::quiver::{canonical_key, BoundQuiver, CanonicalKey};

fn classes(n: usize, report: &mut Report) -> Vec<BoundQuiver> {
    match enumerate(SizeClass::two_cycle(n), true) {
        Ok(v) => v,
        Err(e) => {
            report.fail(e.to_string());
            Vec::new()
        }
    }
}

fn absorb_orbit_faults(report: &mut Report, o: &super::OrbitResult) {
    for (from, mv, to) in &o.phi_violations {
        report.fail(format!("invariant changes along {mv}: {} -> {}", short(from), short(to)));
    }
    for (from, mv, why) in &o.invalid_moves {
        report.fail(format!("move {mv} on {} fails: {why}", short(from)));
    }
    if !o.complete {
        report.incomplete = true;
    }
}

/// A one-line digest of a key for failure messages.
fn short(k: &CanonicalKey) -> String {
    k.as_str().lines().skip(1).filter(|l| !l.starts_with("vertex") && *l != "end").collect::<Vec<_>>().join(", ")
}

/// Every move on every two-cycle class up to `max_n` vertices: the output
/// validates, keeps its size and keeps the invariant.
pub fn verify_move_invariance(max_n: usize) -> Report {
    let mut report = Report::new(format!("move invariance, up to {max_n} vertices"));
    for n in 1..=max_n {
        let cls = classes(n, &mut report);
        let results: Vec<(usize, Vec<String>)> = cls
            .par_iter()
            .map(|bq| {
                let mut fails = Vec::new();
                let before = phi(bq);
                let moves = applicable_moves(bq);
                for mv in &moves {
                    match apply_move(bq, mv) {
                        Ok((out, _)) => {
                            if out.vertex_count() != bq.vertex_count() || out.arrow_count() != bq.arrow_count() {
                                fails.push(format!("{mv}: size changed"));
                            }
                            if phi(&out) != before {
                                fails.push(format!("{mv}: invariant changed on {}", short(&canonical_key(bq))));
                            }
                            if let Some(back) = inverse(mv, &out) {
                                match apply_move(&out, &back) {
                                    Ok((again, _)) if canonical_key(&again) == canonical_key(bq) => {}
                                    _ => fails.push(format!("{mv}: not undone by {back}")),
                                }
                            }
                        }
                        Err(e) => fails.push(format!("{e} on {}", short(&canonical_key(bq)))),
                    }
                }
                (moves.len(), fails)
            })
            .collect();
        let applied: usize = results.iter().map(|r| r.0).sum();
        report.line(format!("n={n}: {} classes, {applied} moves", cls.len()));
        for (_, fs) in results {
            for f in fs {
                report.fail(f);
            }
        }
    }
    report
}

/// Inverse partner checked in the invariance sweep. A reflection at `x` is
/// undone by the coreflection at `x` when `x` has become a source.
fn inverse(mv: &Move, out: &BoundQuiver) -> Option<Move> {
    let x = mv.vertex.as_deref().and_then(|v| out.vertex_index(v));
    match mv.kind {
        MoveKind::AprReflect if out.is_source(x?) => Some(mv.dual()),
        MoveKind::AprCoreflect if out.is_sink(x?) => Some(mv.dual()),
        MoveKind::Opposite => Some(Move::opposite()),
        _ => None,
    }
}

/// Every two-cycle class with `n` vertices normalizes to a canonical family,
/// and the invariant total is 1 exactly for the degenerate families.
pub fn verify_completeness(n: usize, limits: &OrbitLimits) -> Report {
    let mut report = Report::new(format!("completeness, {n} vertices"));
    let cls = classes(n, &mut report);
    let mut cache = OrbitCache::new(*limits);
    let mut tally: BTreeMap<Tag, usize> = BTreeMap::new();
    let mut orbits: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    let mut seen_orbits = BTreeSet::new();
    let mut degenerate = 0;
    for bq in &cls {
        let o = cache.get(bq);
        let key = o.start.clone();
        let first = seen_orbits.insert(o.representatives.keys().next().cloned());
        if first {
            absorb_orbit_faults(&mut report, &o);
        }
        let spec = match cache.normalize(bq) {
            Ok(s) => s,
            Err(e) => {
                report.fail(format!("{e}: {}", short(&canonical_key(bq))));
                continue;
            }
        };
        *tally.entry(spec.tag).or_insert(0) += 1;
        let entry = orbits.entry(spec.to_string()).or_insert((o.len(), 0));
        entry.1 += 1;
        let total = phi(bq).map(|p| p.total());
        let is_degenerate = matches!(spec.tag, Tag::L0 | Tag::L0p);
        match total {
            Ok(1) if is_degenerate => degenerate += 1,
            Ok(3) if !is_degenerate => {}
            Ok(t) => report.fail(format!("invariant total {t} for a class normalizing to {spec}")),
            Err(e) => report.fail(format!("{e} on {}", short(&key))),
        }
    }
    report.line(format!("classes: {}", cls.len()));
    report.line(format!("orbits: {}", orbits.len()));
    report.line(format!("degenerate classes: {degenerate}"));
    for (spec, (states, members)) in &orbits {
        report.line(format!("orbit {spec}: {states} states, {members} classes"));
    }
    let mut sum = 0;
    for (tag, c) in &tally {
        report.line(format!("tally {tag}: {c}"));
        sum += c;
    }
    if sum != cls.len() && report.failures.is_empty() {
        report.fail(format!("tally {sum} does not match {} classes", cls.len()));
    }
    report
}

/// Pairwise distinct closed-form invariants for nondegenerate canonical specs
/// up to `max_vertices`, and pairwise distinct orbits up to `orbit_vertices`.
pub fn verify_minimality(max_vertices: usize, orbit_vertices: usize, limits: &OrbitLimits) -> Report {
    let mut report = Report::new(format!("minimality, invariant up to {max_vertices} and orbits up to {orbit_vertices} vertices"));
    let specs = |max: usize| -> Vec<FamilySpec> {
        (1..=max)
            .flat_map(|n| [Tag::L1, Tag::L2].into_iter().flat_map(move |t| specs_with_vertices(t, n)))
            .filter(|s| s.is_nondegenerate_canonical())
            .collect()
    };
    let listed = specs(max_vertices);
    let mut by_phi: BTreeMap<String, FamilySpec> = BTreeMap::new();
    for s in &listed {
        let f = phi_formula(s).expect("nondegenerate specs have a closed form").to_string();
        if let Some(prev) = by_phi.insert(f, s.clone()) {
            report.fail(format!("{prev} and {s} share an invariant"));
        }
    }
    report.line(format!("invariant check: {} specs", listed.len()));

    let small = specs(orbit_vertices);
    let mut cache = OrbitCache::new(*limits);
    let keys: HashMap<CanonicalKey, FamilySpec> = small
        .iter()
        .map(|s| (canonical_key(&build_family(s).unwrap()), s.clone()))
        .collect();
    let mut states = 0;
    for s in &small {
        let o = cache.get(&build_family(s).unwrap());
        if !o.complete {
            report.incomplete = true;
        }
        states += o.len();
        for (k, other) in &keys {
            if other > s && o.contains(k) {
                report.fail(format!("{s} and {other} share an orbit"));
            }
        }
    }
    report.line(format!("orbit check: {} specs, {states} states", small.len()));
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaBounds {
    /// Largest parameter sum in the closed-form sweep and the invariant checks.
    pub param_sum: u32,
    /// Largest instance for which orbit membership is checked.
    pub orbit_vertices: usize,
}

impl Default for LemmaBounds {
    fn default() -> Self {
        LemmaBounds { param_sum: 10, orbit_vertices: 5 }
    }
}

fn specs_up_to(tag: Tag, bounds: &LemmaBounds) -> Vec<FamilySpec> {
    // L0p reaches p + 2 vertices
    (1..=bounds.param_sum as usize + 2)
        .flat_map(|n| specs_with_vertices(tag, n))
        .filter(|s| s.params.iter().sum::<u32>() <= bounds.param_sum)
        .collect()
}

struct LemmaCheck<'a> {
    name: &'a str,
    pairs: Vec<(FamilySpec, FamilySpec)>,
}

fn run_check(report: &mut Report, cache: &mut OrbitCache, check: LemmaCheck<'_>, bounds: &LemmaBounds) {
    let mut sub = Report::new(check.name);
    let phi_fails: Vec<String> = check
        .pairs
        .par_iter()
        .filter_map(|(a, b)| {
            let (qa, qb) = (build_family(a).ok()?, build_family(b).ok()?);
            let (pa, pb) = (phi(&qa), phi(&qb));
            (pa != pb || pa.is_err()).then(|| format!("{a} vs {b}: invariants differ"))
        })
        .collect();
    let mut orbit_checks = 0;
    for (a, b) in &check.pairs {
        if let Err(e) = b.check() {
            sub.fail(format!("{a}: partner {e}"));
            continue;
        }
        if a.vertex_count() <= bounds.orbit_vertices {
            orbit_checks += 1;
            match cache.connected(&build_family(a).unwrap(), &build_family(b).unwrap()) {
                Ok(true) => {}
                Ok(false) => sub.fail(format!("{a} and {b} lie in different orbits")),
                Err(e) => {
                    sub.incomplete = true;
                    sub.line(format!("{a}: {e}"));
                }
            }
        }
    }
    for f in phi_fails {
        sub.fail(f);
    }
    let verdict = if sub.failures.is_empty() { "PASS" } else { "FAIL" };
    report.line(format!(
        "{}: {} instances, {} orbit checks: {verdict}",
        check.name,
        check.pairs.len(),
        orbit_checks
    ));
    report.failures.extend(sub.failures.into_iter().map(|f| format!("{}: {f}", check.name)));
    report.lines.extend(sub.lines);
    report.incomplete |= sub.incomplete;
}

fn spec(tag: Tag, p: &[u32]) -> FamilySpec {
    FamilySpec::new(tag, p)
}

/// The closed-form sweep and every family equivalence, by invariant equality
/// and, for small instances, by orbit membership.
pub fn verify_lemma_tables(bounds: &LemmaBounds, limits: &OrbitLimits) -> Report {
    let mut report = Report::new(format!(
        "lemma tables, parameter sum up to {}, orbits up to {} vertices",
        bounds.param_sum, bounds.orbit_vertices
    ));

    let sweep: Vec<FamilySpec> = [Tag::L0, Tag::L0p, Tag::L1, Tag::L2]
        .into_iter()
        .flat_map(|t| specs_up_to(t, bounds))
        .filter(|s| phi_formula(s).is_ok())
        .collect();
    let bad: Vec<String> = sweep
        .par_iter()
        .filter_map(|s| {
            let got = phi(&build_family(s).unwrap());
            let want = phi_formula(s).unwrap();
            (got.as_ref() != Ok(&want)).then(|| format!("closed form: {s}: got {got:?}, expected {want:?}"))
        })
        .collect();
    report.line(format!(
        "closed form: {} specs: {}",
        sweep.len(),
        if bad.is_empty() { "PASS" } else { "FAIL" }
    ));
    for b in bad {
        report.fail(b);
    }

    let mut cache = OrbitCache::new(*limits);
    let pairs = |tag: Tag, f: &dyn Fn(&[u32]) -> Option<FamilySpec>| -> Vec<(FamilySpec, FamilySpec)> {
        specs_up_to(tag, bounds).into_iter().filter_map(|s| f(&s.params).map(|t| (s, t))).collect()
    };
    let checks = vec![
        LemmaCheck {
            name: "L1 flip",
            pairs: pairs(Tag::L1, &|p| {
                Some(spec(Tag::L1, &[p[0] + p[1] - p[4] - 1, p[4] + 1, p[3], p[2], p[1] - 1]))
            }),
        },
        LemmaCheck {
            name: "L2p connector shift",
            pairs: pairs(Tag::L2pSix, &|p| {
                (p[2] >= 1).then(|| spec(Tag::L2pSix, &[p[0], p[1], p[2] - 1, p[3] + 1, p[4], p[5]]))
            }),
        },
        LemmaCheck {
            name: "L2 swap",
            pairs: pairs(Tag::L2, &|p| Some(spec(Tag::L2, &[p[1], p[0], p[2], p[4], p[3]]))),
        },
        LemmaCheck {
            name: "L0p to L0",
            pairs: pairs(Tag::L0p, &|p| (p[1] >= 1).then(|| spec(Tag::L0, &[p[0] + 1, p[1] - 1]))),
        },
        LemmaCheck {
            name: "L2p five to L2",
            pairs: pairs(Tag::L2pFive, &|p| {
                Some(spec(Tag::L2, &[p[1], p[0] + 1, p[2], p[4] - 1, p[3] + 1]))
            }),
        },
        LemmaCheck {
            name: "G0 chain",
            pairs: pairs(Tag::G0, &|p| (p[1] > 1).then(|| spec(Tag::G0, &[p[0] + 1, p[1] - 1, p[2]]))),
        },
        LemmaCheck {
            name: "G0 to L0p",
            pairs: pairs(Tag::G0, &|p| (p[1] == 1).then(|| spec(Tag::L0p, &[p[0], p[2]]))),
        },
        LemmaCheck {
            name: "G1 to G2",
            pairs: pairs(Tag::G1, &|p| {
                let (pp, q, r, r2) = (p[0], p[1], p[2], p[3]);
                Some(if r2 >= r {
                    spec(Tag::G2, &[q + r2 - r, pp, r2 - r, r])
                } else {
                    spec(Tag::G2, &[pp + 2 * r2 - r, q, r2, r - r2])
                })
            }),
        },
        LemmaCheck {
            name: "G2 reduction",
            pairs: pairs(Tag::G2, &|p| {
                let (pp, q, r, r2) = (p[0], p[1], p[2], p[3]);
                if r2 == 0 {
                    None
                } else if r >= r2 {
                    Some(spec(Tag::G2, &[pp, q, r - r2, r2]))
                } else {
                    Some(spec(Tag::G2, &[pp, q + r, r, r2 - r]))
                }
            }),
        },
        LemmaCheck {
            name: "G1 and G2 at r'=0",
            pairs: pairs(Tag::G1, &|p| (p[3] == 0).then(|| spec(Tag::G0, &p[..3])))
                .into_iter()
                .chain(pairs(Tag::G2, &|p| (p[3] == 0).then(|| spec(Tag::G0, &p[..3]))))
                .collect(),
        },
    ];
    for c in checks {
        run_check(&mut report, &mut cache, c, bounds);
    }

    let mut identity = 0;
    for tag in [Tag::G1, Tag::G2] {
        for s in specs_up_to(tag, bounds).into_iter().filter(|s| s.params[3] == 0) {
            identity += 1;
            let g0 = spec(Tag::G0, &s.params[..3]);
            if canonical_key(&build_family(&s).unwrap()) != canonical_key(&build_family(&g0).unwrap()) {
                report.fail(format!("{s} is not isomorphic to {g0}"));
            }
        }
    }
    report.line(format!("r'=0 identity: {identity} instances"));

    let mut no_op = OrbitCache::new(OrbitLimits { allow_opposite: false, ..*limits });
    let mut op_checks = 0;
    for tag in Tag::ALL {
        for n in 1..=bounds.orbit_vertices {
            for s in specs_with_vertices(tag, n) {
                let bq = build_family(&s).unwrap();
                op_checks += 1;
                match no_op.connected(&bq, &bq.opposite()) {
                    Ok(true) => {}
                    Ok(false) => report.fail(format!("opposite of {s} lies in another orbit")),
                    Err(e) => {
                        report.incomplete = true;
                        report.line(format!("opposite of {s}: {e}"));
                    }
                }
            }
        }
    }
    report.line(format!("opposite without the opposite move: {op_checks} instances"));
    report
}
