use std::collections::BTreeMap;

use crate::quiver::BoundQuiver;

use super::threads::{forbidden_threads, permitted_threads, Thread};
use super::InvariantError;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum CharSeq {
    /// One period `(sigma_1, tau_1, ..., sigma_n, tau_n)`.
    PairCycle(Vec<(Thread, Thread)>),
    /// One period of arrows, each consecutive pair (cyclically) a relation.
    ArrowCycle(Vec<usize>),
}

impl CharSeq {
    /// The type `(n, m)`.
    pub fn kind(&self) -> (u32, u32) {
        match self {
            CharSeq::PairCycle(p) => {
                (p.len() as u32, p.iter().map(|(_, tau)| tau.len() as u32).sum())
            }
            CharSeq::ArrowCycle(a) => (0, a.len() as u32),
        }
    }

    pub fn render(&self, bq: &BoundQuiver) -> String {
        match self {
            CharSeq::PairCycle(p) => p
                .iter()
                .flat_map(|(s, t)| [s.render(bq), t.render(bq)])
                .collect::<Vec<_>>()
                .join(", "),
            CharSeq::ArrowCycle(a) => {
                a.iter().map(|&x| bq.arrow_id(x)).collect::<Vec<_>>().join(", ")
            }
        }
    }
}

/// Cyclic arrow sequences with every consecutive pair a relation, one per
/// rotation class, starting at the least arrow id.
pub fn arrow_cycle_sequences(bq: &BoundQuiver) -> Vec<CharSeq> {
    // next[a] = the b with (a, b) in R; a sequence reads a_i a_{i+1} in R.
    let m = bq.arrow_count();
    let mut next = vec![None; m];
    for &(f, s) in bq.relations() {
        next[f] = Some(s);
    }
    let mut seen = vec![false; m];
    let mut out = Vec::new();
    for a in 0..m {
        if seen[a] {
            continue;
        }
        let mut path = vec![a];
        let mut cur = a;
        let mut closed = false;
        while let Some(b) = next[cur] {
            if b == a {
                closed = true;
                break;
            }
            if path.contains(&b) || seen[b] {
                break;
            }
            path.push(b);
            cur = b;
        }
        if closed {
            for &x in &path {
                seen[x] = true;
            }
            // arrows are sorted by id, so the least index is the least id
            let k = path.iter().enumerate().min_by_key(|(_, &x)| x).map(|(i, _)| i).unwrap();
            path.rotate_left(k);
            out.push(CharSeq::ArrowCycle(path));
        }
    }
    out.sort();
    out
}

/// All characteristic sequences: the pair cycles followed by the arrow cycles.
///
/// Consecutive pairs `(sigma_i, tau_i) -> (sigma_{i+1}, tau_{i+1})` are linked
/// whenever the local conditions hold. Sequences are the cycles of that graph;
/// every node on a cycle must have exactly one successor and one predecessor on
/// it, and every thread must be used exactly once.
pub fn characteristic_sequences(bq: &BoundQuiver) -> Result<Vec<CharSeq>, InvariantError> {
    let perm: Vec<Thread> = permitted_threads(bq).into_iter().collect();
    let forb: Vec<Thread> = forbidden_threads(bq).into_iter().collect();
    let no_arrows = bq.arrow_count() == 0;

    let mut nodes: Vec<(usize, usize)> = Vec::new();
    for (i, sigma) in perm.iter().enumerate() {
        for (j, tau) in forb.iter().enumerate() {
            if tau.target(bq) != sigma.target(bq) {
                continue;
            }
            if let (Some(a), Some(b)) = (sigma.terminating_arrow(), tau.terminating_arrow()) {
                if a == b {
                    continue;
                }
            }
            nodes.push((i, j));
        }
    }

    let linked = |p: (usize, usize), q: (usize, usize)| -> bool {
        let (sigma, tau) = (&perm[p.0], &forb[p.1]);
        let (sigma2, tau2) = (&perm[q.0], &forb[q.1]);
        if sigma2.source(bq) != tau.source(bq) {
            return false;
        }
        if !no_arrows {
            if let (Some(x), Some(y)) = (sigma.trivial_vertex(), tau.trivial_vertex()) {
                if x == y && sigma2.trivial_vertex() == Some(x) {
                    return false;
                }
            }
            if let (Some(x), Some(y)) = (tau.trivial_vertex(), sigma2.trivial_vertex()) {
                if x == y && tau2.trivial_vertex() == Some(x) {
                    return false;
                }
            }
        }
        if let (Some(a), Some(b)) = (tau.starting_arrow(), sigma2.starting_arrow()) {
            if a == b {
                return false;
            }
        }
        true
    };

    let k = nodes.len();
    let succ: Vec<Vec<usize>> = (0..k)
        .map(|p| (0..k).filter(|&q| linked(nodes[p], nodes[q])).collect())
        .collect();
    let comp = strongly_connected(&succ);
    let on_cycle = |p: usize| {
        succ[p].iter().any(|&q| comp[q] == comp[p])
    };
    let mut next = vec![usize::MAX; k];
    let mut indeg = vec![0usize; k];
    for p in 0..k {
        if !on_cycle(p) {
            continue;
        }
        let inner: Vec<usize> = succ[p].iter().copied().filter(|&q| comp[q] == comp[p]).collect();
        if inner.len() != 1 {
            return Err(InvariantError::PairingAmbiguous(format!(
                "pair ({}, {}) has {} successors",
                perm[nodes[p].0].render(bq),
                forb[nodes[p].1].render(bq),
                inner.len()
            )));
        }
        next[p] = inner[0];
        indeg[inner[0]] += 1;
    }
    if let Some(p) = (0..k).find(|&p| indeg[p] > 1) {
        return Err(InvariantError::PairingAmbiguous(format!(
            "pair ({}, {}) has {} predecessors",
            perm[nodes[p].0].render(bq),
            forb[nodes[p].1].render(bq),
            indeg[p]
        )));
    }

    let mut used_perm = vec![0usize; perm.len()];
    let mut used_forb = vec![0usize; forb.len()];
    let mut visited = vec![false; k];
    let mut out = Vec::new();
    for start in 0..k {
        if next[start] == usize::MAX || visited[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut p = start;
        while !visited[p] {
            visited[p] = true;
            cyc.push(p);
            p = next[p];
        }
        for &p in &cyc {
            used_perm[nodes[p].0] += 1;
            used_forb[nodes[p].1] += 1;
        }
        // canonical rotation: least pair first
        let r = cyc.iter().enumerate().min_by_key(|(_, &p)| nodes[p]).map(|(i, _)| i).unwrap();
        cyc.rotate_left(r);
        out.push(CharSeq::PairCycle(
            cyc.iter().map(|&p| (perm[nodes[p].0].clone(), forb[nodes[p].1].clone())).collect(),
        ));
    }
    for (i, &u) in used_perm.iter().enumerate() {
        if u != 1 {
            return Err(pairing_error(u, perm[i].render(bq), "permitted"));
        }
    }
    for (j, &u) in used_forb.iter().enumerate() {
        if u != 1 {
            return Err(pairing_error(u, forb[j].render(bq), "forbidden"));
        }
    }
    out.sort();
    out.extend(arrow_cycle_sequences(bq));
    Ok(out)
}

fn pairing_error(uses: usize, thread: String, kind: &str) -> InvariantError {
    let msg = format!("{kind} thread {thread} used {uses} times");
    if uses == 0 {
        InvariantError::PairingIncomplete(msg)
    } else {
        InvariantError::PairingAmbiguous(msg)
    }
}

/// Tarjan's algorithm; returns a component id per node.
fn strongly_connected(succ: &[Vec<usize>]) -> Vec<usize> {
    struct St<'a> {
        succ: &'a [Vec<usize>],
        index: Vec<usize>,
        low: Vec<usize>,
        on: Vec<bool>,
        stack: Vec<usize>,
        comp: Vec<usize>,
        counter: usize,
        ncomp: usize,
    }
    fn visit(s: &mut St<'_>, v: usize) {
        s.index[v] = s.counter;
        s.low[v] = s.counter;
        s.counter += 1;
        s.stack.push(v);
        s.on[v] = true;
        for i in 0..s.succ[v].len() {
            let w = s.succ[v][i];
            if s.index[w] == usize::MAX {
                visit(s, w);
                s.low[v] = s.low[v].min(s.low[w]);
            } else if s.on[w] {
                s.low[v] = s.low[v].min(s.index[w]);
            }
        }
        if s.low[v] == s.index[v] {
            loop {
                let w = s.stack.pop().unwrap();
                s.on[w] = false;
                s.comp[w] = s.ncomp;
                if w == v {
                    break;
                }
            }
            s.ncomp += 1;
        }
    }
    let n = succ.len();
    let mut s = St {
        succ,
        index: vec![usize::MAX; n],
        low: vec![0; n],
        on: vec![false; n],
        stack: Vec::new(),
        comp: vec![0; n],
        counter: 0,
        ncomp: 0,
    };
    for v in 0..n {
        if s.index[v] == usize::MAX {
            visit(&mut s, v);
        }
    }
    s.comp
}

/// Multiset of sequence types.
pub(crate) fn tally(seqs: &[CharSeq]) -> BTreeMap<(u32, u32), u32> {
    let mut m = BTreeMap::new();
    for s in seqs {
        *m.entry(s.kind()).or_insert(0) += 1;
    }
    m
}
