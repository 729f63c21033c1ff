use std::collections::BTreeSet;

use crate::quiver::BoundQuiver;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ThreadKind {
    Permitted,
    Forbidden,
}

/// Arrows are listed in writing order: the composite `a1 ... ak` with
/// `source(a_i) = target(a_{i+1})`, so `ak` is traversed first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ThreadBody {
    Trivial(usize),
    Arrows(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Thread {
    pub kind: ThreadKind,
    pub body: ThreadBody,
}

impl Thread {
    pub fn len(&self) -> usize {
        match &self.body {
            ThreadBody::Trivial(_) => 0,
            ThreadBody::Arrows(a) => a.len(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self.body, ThreadBody::Trivial(_))
    }

    pub fn trivial_vertex(&self) -> Option<usize> {
        match self.body {
            ThreadBody::Trivial(v) => Some(v),
            ThreadBody::Arrows(_) => None,
        }
    }

    pub fn source(&self, bq: &BoundQuiver) -> usize {
        match &self.body {
            ThreadBody::Trivial(v) => *v,
            ThreadBody::Arrows(a) => bq.source(*a.last().unwrap()),
        }
    }

    pub fn target(&self, bq: &BoundQuiver) -> usize {
        match &self.body {
            ThreadBody::Trivial(v) => *v,
            ThreadBody::Arrows(a) => bq.target(a[0]),
        }
    }

    /// The arrow traversed last.
    pub fn terminating_arrow(&self) -> Option<usize> {
        match &self.body {
            ThreadBody::Trivial(_) => None,
            ThreadBody::Arrows(a) => Some(a[0]),
        }
    }

    /// The arrow traversed first.
    pub fn starting_arrow(&self) -> Option<usize> {
        match &self.body {
            ThreadBody::Trivial(_) => None,
            ThreadBody::Arrows(a) => a.last().copied(),
        }
    }

    /// Human-readable form: `e_x` for trivial threads, arrow ids joined by `.` otherwise.
    pub fn render(&self, bq: &BoundQuiver) -> String {
        match &self.body {
            ThreadBody::Trivial(v) => format!("e_{}", bq.vertex_id(*v)),
            ThreadBody::Arrows(a) => {
                a.iter().map(|&x| bq.arrow_id(x)).collect::<Vec<_>>().join(".")
            }
        }
    }
}

/// Walks a chain of arrows where each arrow has at most one continuation.
/// `related` selects relation steps (anti-paths) or free steps (paths).
/// Returns `None` if the walk comes back to its start.
fn maximal_through(bq: &BoundQuiver, a: usize, related: bool) -> Option<Vec<usize>> {
    let before = |cur: usize| {
        bq.in_arrows(bq.source(cur)).into_iter().find(|&b| bq.has_relation(cur, b) == related)
    };
    let after = |cur: usize| {
        bq.out_arrows(bq.target(cur)).into_iter().find(|&c| bq.has_relation(c, cur) == related)
    };
    let mut start = a;
    let mut steps = 0;
    while let Some(b) = before(start) {
        if b == a {
            return None;
        }
        start = b;
        steps += 1;
        assert!(steps <= bq.arrow_count(), "unbounded walk: quiver violates finiteness");
    }
    let mut traversal = vec![start];
    let mut cur = start;
    while let Some(c) = after(cur) {
        traversal.push(c);
        cur = c;
        assert!(traversal.len() <= bq.arrow_count() + 1, "unbounded walk");
    }
    traversal.reverse();
    Some(traversal)
}

fn trivial_condition(bq: &BoundQuiver, v: usize, related: bool) -> bool {
    let outs = bq.out_arrows(v);
    let ins = bq.in_arrows(v);
    outs.len() <= 1
        && ins.len() <= 1
        && outs.iter().all(|&a| ins.iter().all(|&b| bq.has_relation(a, b) == related))
}

fn threads(bq: &BoundQuiver, kind: ThreadKind) -> BTreeSet<Thread> {
    let related = kind == ThreadKind::Forbidden;
    let mut out = BTreeSet::new();
    for a in 0..bq.arrow_count() {
        if let Some(body) = maximal_through(bq, a, related) {
            out.insert(Thread { kind, body: ThreadBody::Arrows(body) });
        }
    }
    for v in 0..bq.vertex_count() {
        if trivial_condition(bq, v, related) {
            out.insert(Thread { kind, body: ThreadBody::Trivial(v) });
        }
    }
    out
}

/// Maximal paths, plus the trivial threads at vertices with at most one arrow
/// on each side and no relation through the vertex.
pub fn permitted_threads(bq: &BoundQuiver) -> BTreeSet<Thread> {
    threads(bq, ThreadKind::Permitted)
}

/// Maximal finite anti-paths, plus the trivial threads at vertices with at
/// most one arrow on each side and every composite through the vertex a relation.
pub fn forbidden_threads(bq: &BoundQuiver) -> BTreeSet<Thread> {
    threads(bq, ThreadKind::Forbidden)
}
