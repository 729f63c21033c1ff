use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::OrbitError;
use crate::quiver::{canonical_form, canonical_key, validate_connected, Arrow, BoundQuiver, CanonicalKey};

pub const DEFAULT_BOUND: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SizeClass {
    pub vertices: usize,
    pub arrows: usize,
}

impl SizeClass {
    /// Vertex and arrow counts of a connected quiver with two independent cycles.
    pub fn two_cycle(n: usize) -> Self {
        SizeClass { vertices: n, arrows: n + 1 }
    }
}

fn bare(n: usize, ends: &[(usize, usize)], relations: BTreeSet<(usize, usize)>) -> BoundQuiver {
    let vertices = (0..n).map(|i| format!("v{i}")).collect();
    let arrows = ends
        .iter()
        .enumerate()
        .map(|(i, &(s, t))| Arrow { id: format!("a{i:02}"), source: s, target: t })
        .collect();
    BoundQuiver::from_raw("enumerated".to_string(), vertices, arrows, relations)
}

/// Arrow multisets on `n` labelled vertices with in and out degrees at most two.
fn multigraphs(n: usize, a: usize, degree_cap: bool) -> Vec<Vec<(usize, usize)>> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|s| (0..n).map(move |t| (s, t))).collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let (mut outdeg, mut indeg) = (vec![0usize; n], vec![0usize; n]);
    #[allow(clippy::too_many_arguments)]
    fn go(
        slots: &[(usize, usize)],
        i: usize,
        left: usize,
        cap: bool,
        cur: &mut Vec<(usize, usize)>,
        outdeg: &mut [usize],
        indeg: &mut [usize],
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        if i == slots.len() {
            return;
        }
        let (s, t) = slots[i];
        let mut k = 0;
        loop {
            go(slots, i + 1, left - k, cap, cur, outdeg, indeg, out);
            if k == 2 || k == left || (cap && (outdeg[s] == 2 || indeg[t] == 2)) {
                break;
            }
            k += 1;
            cur.push((s, t));
            outdeg[s] += 1;
            indeg[t] += 1;
        }
        for _ in 0..k {
            cur.pop();
            outdeg[s] -= 1;
            indeg[t] -= 1;
        }
    }
    go(&slots, 0, a, degree_cap, &mut cur, &mut outdeg, &mut indeg, &mut out);
    out
}

/// Per-vertex relation choices satisfying the local gentleness conditions.
fn local_options(bq: &BoundQuiver, v: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = bq
        .out_arrows(v)
        .into_iter()
        .flat_map(|f| bq.in_arrows(v).into_iter().map(move |s| (f, s)))
        .collect();
    let mut opts = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let chosen: Vec<(usize, usize)> =
            (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
        let ok = |related: bool| {
            bq.in_arrows(v).into_iter().all(|s| {
                pairs.iter().filter(|&&(f, s2)| s2 == s && chosen.contains(&(f, s)) == related).count()
                    <= 1
            }) && bq.out_arrows(v).into_iter().all(|f| {
                pairs.iter().filter(|&&(f2, s)| f2 == f && chosen.contains(&(f, s)) == related).count()
                    <= 1
            })
        };
        if ok(true) && ok(false) {
            opts.push(chosen);
        }
    }
    opts
}

fn gentle_completions(skeleton: &BoundQuiver) -> Vec<BoundQuiver> {
    let n = skeleton.vertex_count();
    let per_vertex: Vec<Vec<Vec<(usize, usize)>>> = (0..n).map(|v| local_options(skeleton, v)).collect();
    let ends: Vec<(usize, usize)> = skeleton.arrows().iter().map(|a| (a.source, a.target)).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    if per_vertex.iter().any(|o| o.is_empty()) {
        return out;
    }
    loop {
        let rels: BTreeSet<(usize, usize)> =
            (0..n).flat_map(|v| per_vertex[v][idx[v]].iter().copied()).collect();
        let bq = bare(n, &ends, rels);
        if validate_connected(&bq).is_ok() {
            out.push(bq);
        }
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            idx[k] += 1;
            if idx[k] < per_vertex[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn collect_classes(found: impl ParallelIterator<Item = BoundQuiver>) -> Vec<BoundQuiver> {
    let map: BTreeMap<CanonicalKey, BoundQuiver> = found
        .map(|bq| (canonical_key(&bq), bq))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    map.into_values().map(|bq| canonical_form(&bq)).collect()
}

fn check_bound(size: SizeClass, bound: usize) -> Result<(), OrbitError> {
    if size.vertices > bound {
        return Err(OrbitError::BoundExceeded { vertices: size.vertices, bound });
    }
    Ok(())
}

/// One canonical representative per isomorphism class of connected gentle
/// bound quivers of the given size, ordered by canonical key.
///
/// ```
/// use gentle::orbit::{enumerate, SizeClass};
/// assert!(enumerate(SizeClass { vertices: 1, arrows: 2 }, true).unwrap().is_empty());
/// ```
pub fn enumerate(size: SizeClass, require_two_cycle: bool) -> Result<Vec<BoundQuiver>, OrbitError> {
    enumerate_bounded(size, require_two_cycle, DEFAULT_BOUND)
}

pub fn enumerate_bounded(
    size: SizeClass,
    require_two_cycle: bool,
    bound: usize,
) -> Result<Vec<BoundQuiver>, OrbitError> {
    check_bound(size, bound)?;
    let SizeClass { vertices: n, arrows: a } = size;
    if n == 0 || (require_two_cycle && a != n + 1) {
        return Ok(Vec::new());
    }
    let graphs: BTreeMap<CanonicalKey, BoundQuiver> = multigraphs(n, a, true)
        .into_par_iter()
        .filter_map(|ends| {
            let bq = bare(n, &ends, BTreeSet::new());
            bq.is_connected().then(|| (canonical_key(&bq), bq))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    let skeletons: Vec<BoundQuiver> = graphs.into_values().collect();
    Ok(collect_classes(skeletons.into_par_iter().flat_map_iter(|s| gentle_completions(&s))))
}

/// Generate-and-filter reference: every arrow multiset, every subset of
/// composable pairs, kept when it validates. Exponential; for tiny sizes only.
pub fn enumerate_naive(size: SizeClass, require_two_cycle: bool) -> Vec<BoundQuiver> {
    let SizeClass { vertices: n, arrows: a } = size;
    if n == 0 || (require_two_cycle && a != n + 1) {
        return Vec::new();
    }
    let found = multigraphs(n, a, false).into_par_iter().flat_map_iter(|ends| {
        let pairs: Vec<(usize, usize)> = (0..a)
            .flat_map(|f| (0..a).map(move |s| (f, s)))
            .filter(|&(f, s)| ends[f].0 == ends[s].1)
            .collect();
        (0u64..(1 << pairs.len()))
            .filter_map(|mask| {
                let rels = (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
                let bq = bare(n, &ends, rels);
                validate_connected(&bq).is_ok().then_some(bq)
            })
            .collect::<Vec<_>>()
    });
    collect_classes(found)
}
