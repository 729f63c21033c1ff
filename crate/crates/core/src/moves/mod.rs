//! Reflections and coreflections at a vertex, the opposite quiver, and the
//! relation-shift macros built from them.
//!
//! Every move keeps vertex and arrow ids; only endpoints and relations change.
//! Coreflections are computed as `op . reflection . op`.

mod shift;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::quiver::{canonical_key, validate, BoundQuiver, CanonicalKey};

pub use shift::{
    shift_relation, shift_relation_block, shift_relation_block_direct, shift_relation_direct,
    Direction, Shift,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveKind {
    AprReflect,
    AprCoreflect,
    GenAprReflect,
    GenAprCoreflect,
    HwReflect,
    HwCoreflect,
    Opposite,
}

impl MoveKind {
    pub const ALL: [MoveKind; 7] = [
        MoveKind::AprReflect,
        MoveKind::AprCoreflect,
        MoveKind::GenAprReflect,
        MoveKind::GenAprCoreflect,
        MoveKind::HwReflect,
        MoveKind::HwCoreflect,
        MoveKind::Opposite,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MoveKind::AprReflect => "apr-reflect",
            MoveKind::AprCoreflect => "apr-coreflect",
            MoveKind::GenAprReflect => "gen-apr-reflect",
            MoveKind::GenAprCoreflect => "gen-apr-coreflect",
            MoveKind::HwReflect => "hw-reflect",
            MoveKind::HwCoreflect => "hw-coreflect",
            MoveKind::Opposite => "opposite",
        }
    }

    /// Reflection and coreflection of the same flavour swap; opposite is self-dual.
    pub fn dual(self) -> MoveKind {
        match self {
            MoveKind::AprReflect => MoveKind::AprCoreflect,
            MoveKind::AprCoreflect => MoveKind::AprReflect,
            MoveKind::GenAprReflect => MoveKind::GenAprCoreflect,
            MoveKind::GenAprCoreflect => MoveKind::GenAprReflect,
            MoveKind::HwReflect => MoveKind::HwCoreflect,
            MoveKind::HwCoreflect => MoveKind::HwReflect,
            MoveKind::Opposite => MoveKind::Opposite,
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MoveKind {
    type Err = MoveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MoveKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| MoveError::UnknownKind(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Move {
    pub kind: MoveKind,
    pub vertex: Option<String>,
}

impl Move {
    pub fn at(kind: MoveKind, vertex: &str) -> Move {
        Move { kind, vertex: Some(vertex.to_string()) }
    }

    pub fn opposite() -> Move {
        Move { kind: MoveKind::Opposite, vertex: None }
    }

    pub fn dual(&self) -> Move {
        Move { kind: self.kind.dual(), vertex: self.vertex.clone() }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.vertex {
            Some(v) => write!(f, "{} {}", self.kind, v),
            None => write!(f, "{}", self.kind),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("unknown move kind {0:?}")]
    UnknownKind(String),
    #[error("move {0} needs a vertex")]
    VertexRequired(MoveKind),
    #[error("opposite takes no vertex")]
    UnexpectedVertex,
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown arrow {0}")]
    UnknownArrow(String),
    #[error("move {mv} not applicable: {reason}")]
    NotApplicable { mv: String, reason: String },
    #[error("move {mv} produced an invalid bound quiver: {detail}")]
    InvalidOutput { mv: String, detail: String },
    #[error("shift pattern mismatch: {0}")]
    PatternMismatch(String),
}

/// Audit record of one applied move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveReceipt {
    pub input: CanonicalKey,
    pub output: CanonicalKey,
    pub mv: Move,
    /// `(arrow, new source, new target)` for every arrow, by arrow id.
    pub arrows: Vec<(String, String, String)>,
}

type Ends = Vec<(usize, usize)>;

/// Target rule shared by all three reflections of APR type.
fn apr_target(bq: &BoundQuiver, x: usize, a: usize) -> usize {
    if bq.target(a) == x {
        bq.source(a)
    } else if bq
        .in_arrows(x)
        .into_iter()
        .any(|b| bq.source(b) == bq.target(a) && bq.has_relation(b, a))
    {
        x
    } else {
        bq.target(a)
    }
}

/// Relations `(a, b)` with `t a = x` created by reflecting at `x`.
fn apr_new_relations(bq: &BoundQuiver, x: usize, rels: &mut BTreeSet<(usize, usize)>) {
    for a in bq.in_arrows(x) {
        for b in 0..bq.arrow_count() {
            let through = bq.in_arrows(x).into_iter().any(|g| {
                g != a && bq.source(g) == bq.target(b) && bq.has_relation(g, b)
            });
            if through {
                rels.insert((a, b));
            }
        }
    }
}

fn apr_reflect(bq: &BoundQuiver, x: usize) -> Result<BoundQuiver, String> {
    if !bq.is_sink(x) {
        return Err("vertex is not a sink".into());
    }
    let e: Ends = (0..bq.arrow_count())
        .map(|a| {
            let s = if bq.target(a) == x { x } else { bq.source(a) };
            (s, apr_target(bq, x, a))
        })
        .collect();
    let mut rels: BTreeSet<(usize, usize)> =
        bq.relations().iter().copied().filter(|&(f, _)| bq.target(f) != x).collect();
    apr_new_relations(bq, x, &mut rels);
    Ok(bq.with_endpoints(&e, rels))
}

fn has_loop(bq: &BoundQuiver, x: usize) -> bool {
    bq.arrows().iter().any(|a| a.source == x && a.target == x)
}

/// The unique free predecessor `beta_a` of each arrow leaving `x`, or why it is missing.
fn free_predecessors(bq: &BoundQuiver, x: usize) -> Result<Vec<(usize, usize)>, String> {
    let mut out = Vec::new();
    for a in bq.out_arrows(x) {
        let cands: Vec<usize> =
            bq.in_arrows(x).into_iter().filter(|&b| !bq.has_relation(a, b)).collect();
        match cands.len() {
            0 => return Err(format!("no free arrow into the vertex before {}", bq.arrow_id(a))),
            1 => out.push((a, cands[0])),
            _ => panic!("gentleness violated: two free predecessors of {}", bq.arrow_id(a)),
        }
    }
    Ok(out)
}

fn gen_apr_applicable(bq: &BoundQuiver, x: usize) -> Result<(), String> {
    if has_loop(bq, x) {
        loop_predecessor(bq, x).map(|_| ())
    } else {
        free_predecessors(bq, x).map(|_| ())
    }
}

fn loop_predecessor(bq: &BoundQuiver, x: usize) -> Result<usize, String> {
    let cands: Vec<usize> =
        bq.in_arrows(x).into_iter().filter(|&b| bq.source(b) != x).collect();
    match cands.len() {
        0 => Err("loop vertex without an arrow coming in from elsewhere".into()),
        1 => Ok(cands[0]),
        _ => panic!("gentleness violated: loop vertex with three incoming arrows"),
    }
}

fn gen_apr_reflect(bq: &BoundQuiver, x: usize) -> Result<BoundQuiver, String> {
    if has_loop(bq, x) {
        let b0 = loop_predecessor(bq, x)?;
        let e: Ends = (0..bq.arrow_count())
            .map(|a| {
                let s = if bq.target(a) == x {
                    x
                } else if bq.source(a) == x {
                    bq.source(b0)
                } else {
                    bq.source(a)
                };
                (s, apr_target(bq, x, a))
            })
            .collect();
        return Ok(bq.with_endpoints(&e, bq.relations().clone()));
    }
    let preds = free_predecessors(bq, x)?;
    let beta = |a: usize| preds.iter().find(|p| p.0 == a).map(|p| p.1);
    let e: Ends = (0..bq.arrow_count())
        .map(|a| {
            let s = if bq.target(a) == x {
                x
            } else if bq.source(a) == x {
                bq.source(beta(a).unwrap())
            } else {
                bq.source(a)
            };
            (s, apr_target(bq, x, a))
        })
        .collect();
    let mut rels: BTreeSet<(usize, usize)> = bq
        .relations()
        .iter()
        .copied()
        .filter(|&(f, _)| bq.target(f) != x && bq.source(f) != x)
        .collect();
    for &(a, b) in &preds {
        rels.insert((a, b));
    }
    apr_new_relations(bq, x, &mut rels);
    Ok(bq.with_endpoints(&e, rels))
}

/// Start of the maximal nonzero path ending with `a`.
fn path_start(bq: &BoundQuiver, a: usize) -> usize {
    let mut cur = a;
    for _ in 0..=bq.arrow_count() {
        match bq.in_arrows(bq.source(cur)).into_iter().find(|&b| !bq.has_relation(cur, b)) {
            Some(b) => cur = b,
            None => return cur,
        }
    }
    panic!("unbounded path: quiver violates finiteness")
}

fn hw_reflect(bq: &BoundQuiver, x: usize) -> Result<BoundQuiver, String> {
    if !bq.is_sink(x) {
        return Err("vertex is not a sink".into());
    }
    if bq.vertex_count() == 1 {
        return Ok(bq.clone());
    }
    let starts: Vec<Option<usize>> = (0..bq.arrow_count())
        .map(|a| (bq.target(a) == x).then(|| path_start(bq, a)))
        .collect();
    let e: Ends = (0..bq.arrow_count())
        .map(|a| match starts[a] {
            Some(b) => (x, bq.source(b)),
            None => (bq.source(a), bq.target(a)),
        })
        .collect();
    let mut rels: BTreeSet<(usize, usize)> =
        bq.relations().iter().copied().filter(|&(f, _)| bq.target(f) != x).collect();
    for a in bq.in_arrows(x) {
        let ba = starts[a].unwrap();
        for b in 0..bq.arrow_count() {
            if bq.source(b) == bq.source(ba) && b != ba && bq.target(b) != x {
                rels.insert((b, a));
            }
        }
    }
    Ok(bq.with_endpoints(&e, rels))
}

fn primal(kind: MoveKind) -> fn(&BoundQuiver, usize) -> Result<BoundQuiver, String> {
    match kind {
        MoveKind::AprReflect | MoveKind::AprCoreflect => apr_reflect,
        MoveKind::GenAprReflect | MoveKind::GenAprCoreflect => gen_apr_reflect,
        MoveKind::HwReflect | MoveKind::HwCoreflect => hw_reflect,
        MoveKind::Opposite => unreachable!(),
    }
}

fn is_coreflection(kind: MoveKind) -> bool {
    matches!(kind, MoveKind::AprCoreflect | MoveKind::GenAprCoreflect | MoveKind::HwCoreflect)
}

fn resolve_vertex(bq: &BoundQuiver, mv: &Move) -> Result<Option<usize>, MoveError> {
    match (mv.kind, &mv.vertex) {
        (MoveKind::Opposite, None) => Ok(None),
        (MoveKind::Opposite, Some(_)) => Err(MoveError::UnexpectedVertex),
        (k, None) => Err(MoveError::VertexRequired(k)),
        (_, Some(v)) => {
            bq.vertex_index(v).map(Some).ok_or_else(|| MoveError::UnknownVertex(v.clone()))
        }
    }
}

/// Whether `kind` applies at vertex index `x`.
fn applicable_at(bq: &BoundQuiver, kind: MoveKind, x: usize) -> Result<(), String> {
    let check = |q: &BoundQuiver| match kind {
        MoveKind::AprReflect
        | MoveKind::AprCoreflect
        | MoveKind::HwReflect
        | MoveKind::HwCoreflect => {
            if q.is_sink(x) {
                Ok(())
            } else if is_coreflection(kind) {
                Err("vertex is not a source".to_string())
            } else {
                Err("vertex is not a sink".to_string())
            }
        }
        MoveKind::GenAprReflect | MoveKind::GenAprCoreflect => gen_apr_applicable(q, x),
        MoveKind::Opposite => Ok(()),
    };
    if is_coreflection(kind) {
        check(&bq.opposite())
    } else {
        check(bq)
    }
}

/// Every applicable move, vertices in id order, opposite last.
pub fn applicable_moves(bq: &BoundQuiver) -> Vec<Move> {
    let op = bq.opposite();
    let mut out = Vec::new();
    for x in 0..bq.vertex_count() {
        let id = bq.vertex_id(x);
        let (sink, source) = (bq.is_sink(x), bq.is_source(x));
        if sink {
            out.push(Move::at(MoveKind::AprReflect, id));
        }
        if source {
            out.push(Move::at(MoveKind::AprCoreflect, id));
        }
        if gen_apr_applicable(bq, x).is_ok() {
            out.push(Move::at(MoveKind::GenAprReflect, id));
        }
        if gen_apr_applicable(&op, x).is_ok() {
            out.push(Move::at(MoveKind::GenAprCoreflect, id));
        }
        if sink {
            out.push(Move::at(MoveKind::HwReflect, id));
        }
        if source {
            out.push(Move::at(MoveKind::HwCoreflect, id));
        }
    }
    out.push(Move::opposite());
    out
}

/// Applies a move without computing keys or validating the result.
pub fn apply(bq: &BoundQuiver, mv: &Move) -> Result<BoundQuiver, MoveError> {
    let x = match resolve_vertex(bq, mv)? {
        None => return Ok(bq.opposite()),
        Some(x) => x,
    };
    let not_applicable = |reason: String| MoveError::NotApplicable { mv: mv.to_string(), reason };
    applicable_at(bq, mv.kind, x).map_err(not_applicable)?;
    let f = primal(mv.kind);
    if is_coreflection(mv.kind) {
        Ok(f(&bq.opposite(), x).map_err(not_applicable)?.opposite())
    } else {
        f(bq, x).map_err(not_applicable)
    }
}

/// Applies a move, checks the output and records a receipt.
pub fn apply_move(bq: &BoundQuiver, mv: &Move) -> Result<(BoundQuiver, MoveReceipt), MoveError> {
    let out = apply(bq, mv)?;
    if let Err(v) = validate(&out) {
        return Err(MoveError::InvalidOutput {
            mv: mv.to_string(),
            detail: v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; "),
        });
    }
    debug_assert_eq!(out.vertex_count(), bq.vertex_count());
    debug_assert_eq!(out.arrow_count(), bq.arrow_count());
    let receipt = MoveReceipt {
        input: canonical_key(bq),
        output: canonical_key(&out),
        mv: mv.clone(),
        arrows: out
            .arrows()
            .iter()
            .map(|a| {
                (a.id.clone(), out.vertex_id(a.source).to_string(), out.vertex_id(a.target).to_string())
            })
            .collect(),
    };
    Ok((out, receipt))
}

/// Applies a sequence of moves in order.
pub fn apply_all(bq: &BoundQuiver, moves: &[Move]) -> Result<BoundQuiver, MoveError> {
    let mut cur = bq.clone();
    for m in moves {
        cur = apply(&cur, m)?;
    }
    Ok(cur)
}
