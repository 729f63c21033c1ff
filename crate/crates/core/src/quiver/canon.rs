//! Canonical labelling: the least encoding over all vertex orderings that
//! respect an iso-invariant partition, with parallel arrows permuted as well.

use std::collections::BTreeSet;
use std::fmt;

use super::{Arrow, BoundQuiver};

/// Serialization of the canonical relabelling. Equal keys mean isomorphic bound quivers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(String);

impl CanonicalKey {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

type Code = (Vec<(u16, u16)>, Vec<(u16, u16)>);

fn initial_colors(bq: &BoundQuiver) -> Vec<(usize, usize, usize, usize)> {
    let n = bq.vertex_count();
    let mut inv = vec![(0, 0, 0, 0); n];
    for a in bq.arrows() {
        inv[a.target].0 += 1;
        inv[a.source].1 += 1;
        if a.source == a.target {
            inv[a.source].2 += 1;
        }
    }
    for &(f, _) in bq.relations() {
        inv[bq.source(f)].3 += 1;
    }
    inv
}

/// Colour refinement: repeatedly split classes by the colours of neighbours.
fn refined_cells(bq: &BoundQuiver) -> Vec<Vec<usize>> {
    let n = bq.vertex_count();
    let init = initial_colors(bq);
    let mut sorted: Vec<_> = init.clone();
    sorted.sort();
    sorted.dedup();
    let mut color: Vec<usize> = init.iter().map(|c| sorted.binary_search(c).unwrap()).collect();
    loop {
        let sig: Vec<(usize, Vec<(usize, bool)>, Vec<(usize, bool)>)> = (0..n)
            .map(|v| {
                let mut outs: Vec<(usize, bool)> = Vec::new();
                let mut ins: Vec<(usize, bool)> = Vec::new();
                for (i, a) in bq.arrows().iter().enumerate() {
                    let related = bq.relations().iter().any(|&(f, s)| f == i || s == i);
                    if a.source == v {
                        outs.push((color[a.target], related));
                    }
                    if a.target == v {
                        ins.push((color[a.source], related));
                    }
                }
                outs.sort();
                ins.sort();
                (color[v], outs, ins)
            })
            .collect();
        let mut keys = sig.clone();
        keys.sort();
        keys.dedup();
        let next: Vec<usize> = sig.iter().map(|s| keys.binary_search(s).unwrap()).collect();
        let stable = keys.len() == color.iter().collect::<BTreeSet<_>>().len();
        color = next;
        if stable {
            break;
        }
    }
    let classes = color.iter().copied().max().map_or(0, |m| m + 1);
    let mut cells = vec![Vec::new(); classes];
    for v in 0..n {
        cells[color[v]].push(v);
    }
    cells.retain(|c| !c.is_empty());
    cells
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Calls `f` with every position assignment obtained by permuting within cells.
fn for_each_labelling(cells: &[Vec<usize>], n: usize, f: &mut dyn FnMut(&[usize])) {
    let mut perms: Vec<Vec<usize>> = cells.iter().map(|c| c.clone()).collect();
    for p in perms.iter_mut() {
        p.sort();
    }
    let mut pos = vec![0usize; n];
    loop {
        let mut k = 0;
        for p in &perms {
            for &v in p {
                pos[v] = k;
                k += 1;
            }
        }
        f(&pos);
        // advance the mixed-radix odometer of cell permutations
        let mut idx = 0;
        loop {
            if idx == perms.len() {
                return;
            }
            if next_permutation(&mut perms[idx]) {
                break;
            }
            perms[idx].sort();
            idx += 1;
        }
    }
}

/// Best encoding plus the arrow order (old indices in new order) and vertex positions realising it.
fn best_labelling(bq: &BoundQuiver) -> (Code, Vec<usize>, Vec<usize>) {
    let n = bq.vertex_count();
    let cells = refined_cells(bq);
    let mut best: Option<(Code, Vec<usize>, Vec<usize>)> = None;
    for_each_labelling(&cells, n, &mut |pos| {
        let mut order: Vec<usize> = (0..bq.arrow_count()).collect();
        let ends = |a: usize| (pos[bq.source(a)] as u16, pos[bq.target(a)] as u16);
        order.sort_by_key(|&a| ends(a));
        let acode: Vec<(u16, u16)> = order.iter().map(|&a| ends(a)).collect();
        if let Some((bc, _, _)) = &best {
            if acode > bc.0 {
                return;
            }
        }
        // groups of parallel arrows may be permuted freely
        let mut groups: Vec<(usize, usize)> = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let mut j = i + 1;
            while j < order.len() && acode[j] == acode[i] {
                j += 1;
            }
            if j - i > 1 {
                groups.push((i, j));
            }
            i = j;
        }
        let mut ord = order.clone();
        for &(a, b) in &groups {
            ord[a..b].sort();
        }
        loop {
            let mut newidx = vec![0u16; ord.len()];
            for (k, &a) in ord.iter().enumerate() {
                newidx[a] = k as u16;
            }
            let mut rcode: Vec<(u16, u16)> =
                bq.relations().iter().map(|&(f, s)| (newidx[f], newidx[s])).collect();
            rcode.sort();
            let code = (acode.clone(), rcode);
            let better = match &best {
                None => true,
                Some((bc, _, _)) => code < *bc,
            };
            if better {
                best = Some((code, ord.clone(), pos.to_vec()));
            }
            let mut g = 0;
            loop {
                if g == groups.len() {
                    break;
                }
                let (a, b) = groups[g];
                if next_permutation(&mut ord[a..b]) {
                    break;
                }
                ord[a..b].sort();
                g += 1;
            }
            if g == groups.len() {
                break;
            }
        }
    });
    best.expect("at least one labelling")
}

fn width(n: usize) -> usize {
    n.saturating_sub(1).to_string().len().max(2)
}

/// The canonical relabelling, with vertices `vNN` and arrows `aNN`.
pub fn canonical_form(bq: &BoundQuiver) -> BoundQuiver {
    let (_, order, pos) = best_labelling(bq);
    let n = bq.vertex_count();
    let wv = width(n);
    let wa = width(bq.arrow_count());
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i:0wv$}")).collect();
    let mut newidx = vec![0usize; order.len()];
    for (k, &a) in order.iter().enumerate() {
        newidx[a] = k;
    }
    let arrows: Vec<Arrow> = order
        .iter()
        .enumerate()
        .map(|(k, &a)| Arrow {
            id: format!("a{k:0wa$}"),
            source: pos[bq.source(a)],
            target: pos[bq.target(a)],
        })
        .collect();
    let relations = bq.relations().iter().map(|&(f, s)| (newidx[f], newidx[s])).collect();
    BoundQuiver::from_raw("canonical".to_string(), vertices, arrows, relations)
}

/// ```
/// use gentle::quiver::{canonical_key, parse};
/// let a = parse("quiver a\nvertex x\nvertex y\narrow f y x\nend\n").unwrap();
/// let b = parse("quiver b\nvertex p\nvertex q\narrow g p q\nend\n").unwrap();
/// assert_eq!(canonical_key(&a), canonical_key(&b));
/// ```
pub fn canonical_key(bq: &BoundQuiver) -> CanonicalKey {
    CanonicalKey(super::serialize(&canonical_form(bq)))
}

pub fn is_isomorphic(a: &BoundQuiver, b: &BoundQuiver) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.arrow_count() == b.arrow_count()
        && a.relations().len() == b.relations().len()
        && canonical_key(a) == canonical_key(b)
}

/// Canonical form together with its key, computing the labelling once.
pub(crate) fn canonical_pair(bq: &BoundQuiver) -> (CanonicalKey, BoundQuiver) {
    let form = canonical_form(bq);
    (CanonicalKey(super::serialize(&form)), form)
}
