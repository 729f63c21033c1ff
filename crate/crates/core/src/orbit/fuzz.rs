use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{enumerate, Report, SizeClass};
use crate::families::{build_family, specs_with_vertices, Tag};
use crate::moves::{
    shift_relation, shift_relation_block, shift_relation_block_direct, shift_relation_direct, Direction,
};
use crate::quiver::{canonical_key, validate, BoundQuiver};

#[derive(Debug, Clone)]
enum Site {
    Relation(String, String, Direction),
    Block(String, Direction),
}

fn sites(bq: &BoundQuiver) -> Vec<Site> {
    let mut out = Vec::new();
    for &(f, s) in bq.relations() {
        let (f, s) = (bq.arrow_id(f), bq.arrow_id(s));
        for dir in [Direction::Left, Direction::Right] {
            if shift_relation_direct(bq, (f, s), dir).is_ok() {
                out.push(Site::Relation(f.to_string(), s.to_string(), dir));
            }
        }
    }
    for a in bq.arrows() {
        for dir in [Direction::Left, Direction::Right] {
            if shift_relation_block_direct(bq, &a.id, dir).is_ok() {
                out.push(Site::Block(a.id.clone(), dir));
            }
        }
    }
    out
}

fn pool() -> Vec<BoundQuiver> {
    let mut qs = Vec::new();
    for n in 2..=5 {
        for a in n - 1..=(n + 1).min(6) {
            qs.extend(enumerate(SizeClass { vertices: n, arrows: a }, false).unwrap_or_default());
        }
    }
    for n in 2..=7 {
        for tag in Tag::ALL {
            qs.extend(specs_with_vertices(tag, n).iter().map(|s| build_family(s).unwrap()));
        }
    }
    qs
}

fn shuffled_names(rng: &mut ChaCha8Rng, prefix: &str, n: usize) -> Vec<String> {
    let mut names: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
    names.shuffle(rng);
    names
}

/// Replays `count` seeded shift patterns both as move composites and as
/// direct rewrites, and compares the results up to isomorphism.
pub fn fuzz_shift(seed: u64, count: usize) -> Report {
    let mut report = Report::new(format!("shift fuzz, seed {seed}, {count} samples"));
    let quivers = pool();
    // basic, long-range and block sites, sampled with equal weight
    let mut kinds: [Vec<(usize, Site)>; 3] = Default::default();
    for (i, q) in quivers.iter().enumerate() {
        for s in sites(q) {
            let k = match &s {
                Site::Block(..) => 2,
                Site::Relation(f, g, d) => match shift_relation(q, (f, g), *d) {
                    Ok(sh) if sh.moves.len() == 1 => 0,
                    _ => 1,
                },
            };
            kinds[k].push((i, s));
        }
    }
    report.line(format!(
        "pool: {} quivers, sites {} basic, {} long-range, {} block",
        quivers.len(),
        kinds[0].len(),
        kinds[1].len(),
        kinds[2].len()
    ));
    let kinds: Vec<&Vec<(usize, Site)>> = kinds.iter().filter(|k| !k.is_empty()).collect();
    if kinds.is_empty() {
        report.fail("no shift sites in the pool");
        return report;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut basic, mut long, mut block) = (0, 0, 0);
    for _ in 0..count {
        let kind = kinds[rng.gen_range(0..kinds.len())];
        let (qi, site) = &kind[rng.gen_range(0..kind.len())];
        let q = &quivers[*qi];
        let vnames = shuffled_names(&mut rng, "x", q.vertex_count());
        let anames = shuffled_names(&mut rng, "f", q.arrow_count());
        let relabelled = q.relabel(&|v| vnames[v].clone(), &|a| anames[a].clone());
        let arrow = |id: &str| anames[q.arrow_index(id).unwrap()].clone();
        let outcome = match site {
            Site::Relation(f, s, dir) => {
                let (f, s) = (arrow(f), arrow(s));
                shift_relation(&relabelled, (&f, &s), *dir).and_then(|sh| {
                    shift_relation_direct(&relabelled, (&f, &s), *dir).map(|d| (sh, d))
                })
            }
            Site::Block(a, dir) => {
                let a = arrow(a);
                shift_relation_block(&relabelled, &a, *dir)
                    .and_then(|sh| shift_relation_block_direct(&relabelled, &a, *dir).map(|d| (sh, d)))
            }
        };
        let label = format!("{site:?} on {}", q.name());
        match outcome {
            Ok((sh, direct)) => {
                match site {
                    Site::Block(..) => block += 1,
                    _ if sh.moves.len() == 1 => basic += 1,
                    _ => long += 1,
                }
                if validate(&sh.quiver).is_err() || validate(&direct).is_err() {
                    report.fail(format!("{label}: result is not gentle"));
                } else if canonical_key(&sh.quiver) != canonical_key(&direct) {
                    report.fail(format!("{label}: composite and direct rewrite differ"));
                }
            }
            Err(e) => report.fail(format!("{label}: {e}")),
        }
    }
    report.line(format!("basic: {basic}"));
    report.line(format!("long-range: {long}"));
    report.line(format!("block: {block}"));
    report
}
