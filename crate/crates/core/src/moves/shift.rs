//! Sliding relations along chains of arrows, both as composites of primitive
//! moves and as direct rewrites of the affected arrows.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::{apply_all, Move, MoveError, MoveKind};
use crate::quiver::BoundQuiver;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Left,
    Right,
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "left" => Ok(Direction::Left),
            "right" => Ok(Direction::Right),
            _ => Err(format!("unknown direction {s:?}")),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Left => "left",
            Direction::Right => "right",
        })
    }
}

/// Result of a shift macro with the primitive moves that realise it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shift {
    pub quiver: BoundQuiver,
    pub moves: Vec<Move>,
}

/// Arrow and vertex indices of a matched right shift of `a1 a2`.
///
/// With an empty chain this is `u <-a1- x <-a2- y <-a3- v` where `y` carries
/// only `a2` and `a3`. Otherwise `a2` starts at `ys[n]`, free arrows
/// `betas[i-1]: ys[i] -> ys[i-1]` lead down to `ys[0]`, and `a3: v -> ys[0]`.
#[derive(Debug, Clone)]
struct RightPattern {
    a1: usize,
    a2: usize,
    a3: usize,
    x: usize,
    ys: Vec<usize>,
    betas: Vec<usize>,
}

fn mismatch(msg: impl Into<String>) -> MoveError {
    MoveError::PatternMismatch(msg.into())
}

fn is_free(bq: &BoundQuiver, a: usize) -> bool {
    bq.relations().iter().all(|&(f, s)| f != a && s != a)
}

fn match_right(bq: &BoundQuiver, a1: usize, a2: usize) -> Result<RightPattern, MoveError> {
    if !bq.has_relation(a1, a2) {
        return Err(mismatch("the pair is not a relation"));
    }
    let x = bq.source(a1);
    let y = bq.source(a2);
    if x == y {
        return Err(mismatch("second arrow is a loop"));
    }
    let ins = bq.in_arrows(y);
    let outs = bq.out_arrows(y);
    if outs == [a2] && ins.len() == 1 && ins[0] != a2 {
        let a3 = ins[0];
        if bq.has_relation(a2, a3) {
            return Err(mismatch("the next composite is already a relation"));
        }
        return Ok(RightPattern { a1, a2, a3, x, ys: vec![y], betas: vec![] });
    }
    if outs.len() == 2 && ins.is_empty() {
        if bq.out_arrows(x) != [a1] || bq.in_arrows(x) != [a2] || bq.target(a1) == x {
            return Err(mismatch("extra arrows at the middle vertex"));
        }
        let mut ys = vec![y];
        let mut betas_down = vec![outs.into_iter().find(|&b| b != a2).unwrap()];
        loop {
            let beta = *betas_down.last().unwrap();
            if !is_free(bq, beta) {
                return Err(mismatch("chain arrow is not free"));
            }
            let cur = bq.target(beta);
            if ys.contains(&cur) || cur == x {
                return Err(mismatch("chain revisits a vertex"));
            }
            let (ci, co) = (bq.in_arrows(cur), bq.out_arrows(cur));
            if ci.len() == 1 && co.len() == 1 && co[0] != beta {
                ys.push(cur);
                betas_down.push(co[0]);
            } else if co.is_empty() && ci.len() == 2 {
                let a3 = ci.into_iter().find(|&b| b != beta).unwrap();
                if a3 == a1 || a3 == a2 || bq.source(a3) == cur {
                    return Err(mismatch("bad closing arrow"));
                }
                ys.push(cur);
                ys.reverse();
                betas_down.reverse();
                return Ok(RightPattern { a1, a2, a3, x, ys, betas: betas_down });
            } else {
                return Err(mismatch("chain vertex has extra arrows"));
            }
        }
    }
    Err(mismatch("no shift pattern at the relation"))
}

fn right_moves(bq: &BoundQuiver, p: &RightPattern) -> Vec<Move> {
    let vid = |v: usize| bq.vertex_id(v).to_string();
    let n = p.betas.len();
    if n == 0 {
        return vec![Move::at(MoveKind::GenAprCoreflect, &vid(p.ys[0]))];
    }
    let mut moves = Vec::new();
    for i in (1..=n).rev() {
        for j in i..=n {
            moves.push(Move::at(MoveKind::AprCoreflect, &vid(p.ys[j])));
        }
        moves.push(Move::at(MoveKind::AprCoreflect, &vid(p.x)));
    }
    for j in 0..=n {
        moves.push(Move::at(MoveKind::GenAprCoreflect, &vid(p.ys[j])));
    }
    moves
}

fn right_direct(bq: &BoundQuiver, p: &RightPattern) -> BoundQuiver {
    let mut e: Vec<(usize, usize)> = bq.arrows().iter().map(|a| (a.source, a.target)).collect();
    let u = bq.target(p.a1);
    let v = bq.source(p.a3);
    let n = p.betas.len();
    if p.a1 == p.a3 {
        // two-cycle `x <-> y`: both arrows turn around
        e[p.a1] = (p.ys[0], p.x);
        e[p.a2] = (p.x, p.ys[0]);
    } else {
        e[p.a1] = (p.ys[0], u);
        e[p.a2] = (p.x, p.ys[n]);
        e[p.a3] = (v, p.x);
        for i in 1..=n {
            e[p.betas[i - 1]] = (p.ys[i - 1], p.ys[i]);
        }
    }
    let mut rels: BTreeSet<(usize, usize)> = bq.relations().clone();
    rels.remove(&(p.a1, p.a2));
    rels.insert((p.a2, p.a3));
    bq.with_endpoints(&e, rels)
}

fn arrow(bq: &BoundQuiver, id: &str) -> Result<usize, MoveError> {
    bq.arrow_index(id).ok_or_else(|| MoveError::UnknownArrow(id.to_string()))
}

/// Shifts the relation `first second` one step.
///
/// `Right` moves it toward the arrow traversed before `second`; `Left` is the
/// dual, computed on the opposite quiver.
pub fn shift_relation(
    bq: &BoundQuiver,
    relation: (&str, &str),
    dir: Direction,
) -> Result<Shift, MoveError> {
    let (f, s) = (arrow(bq, relation.0)?, arrow(bq, relation.1)?);
    match dir {
        Direction::Right => {
            let p = match_right(bq, f, s)?;
            let moves = right_moves(bq, &p);
            Ok(Shift { quiver: apply_all(bq, &moves)?, moves })
        }
        Direction::Left => {
            let op = bq.opposite();
            let p = match_right(&op, s, f)?;
            let moves: Vec<Move> = right_moves(&op, &p).iter().map(Move::dual).collect();
            Ok(Shift { quiver: apply_all(bq, &moves)?, moves })
        }
    }
}

/// The rewrite stated by the shift lemma, without going through moves.
pub fn shift_relation_direct(
    bq: &BoundQuiver,
    relation: (&str, &str),
    dir: Direction,
) -> Result<BoundQuiver, MoveError> {
    let (f, s) = (arrow(bq, relation.0)?, arrow(bq, relation.1)?);
    match dir {
        Direction::Right => Ok(right_direct(bq, &match_right(bq, f, s)?)),
        Direction::Left => {
            let op = bq.opposite();
            Ok(right_direct(&op, &match_right(&op, s, f)?).opposite())
        }
    }
}

/// `beta: y -> xs[0]` free, `alphas[i-1]: xs[i] -> xs[i-1]`, consecutive alphas related.
#[derive(Debug, Clone)]
struct BlockPattern {
    beta: usize,
    xs: Vec<usize>,
    alphas: Vec<usize>,
}

fn match_block(bq: &BoundQuiver, beta: usize) -> Result<BlockPattern, MoveError> {
    if !is_free(bq, beta) {
        return Err(mismatch("anchor arrow is not free"));
    }
    let x0 = bq.target(beta);
    if bq.source(beta) == x0 {
        return Err(mismatch("anchor is a loop"));
    }
    let ins = bq.in_arrows(x0);
    if !bq.out_arrows(x0).is_empty() || ins.len() != 2 {
        return Err(mismatch("anchor target must be a sink with two incoming arrows"));
    }
    let a1 = ins.into_iter().find(|&a| a != beta).unwrap();
    let mut xs = vec![x0];
    let mut alphas = vec![a1];
    loop {
        let last = *alphas.last().unwrap();
        let cur = bq.source(last);
        if xs.contains(&cur) {
            return Err(mismatch("chain revisits a vertex"));
        }
        xs.push(cur);
        let (ci, co) = (bq.in_arrows(cur), bq.out_arrows(cur));
        let cont = (co == [last] && ci.len() == 1 && bq.has_relation(last, ci[0])).then(|| ci[0]);
        match cont {
            Some(next) if bq.source(next) != cur => alphas.push(next),
            _ => {
                // `cur` is x_n: nothing may extend the chain of relations
                if bq.in_arrows(cur).into_iter().any(|a| bq.has_relation(last, a)) {
                    return Err(mismatch("a relation continues past the end of the chain"));
                }
                if alphas.len() < 2 {
                    return Err(mismatch("chain needs at least two related arrows"));
                }
                if xs[..xs.len() - 1].contains(&bq.source(beta)) {
                    return Err(mismatch("anchor source lies on the chain"));
                }
                return Ok(BlockPattern { beta, xs, alphas });
            }
        }
    }
}

fn block_moves(bq: &BoundQuiver, p: &BlockPattern) -> Vec<Move> {
    let vid = |v: usize| bq.vertex_id(v).to_string();
    let n = p.alphas.len();
    let mut moves = vec![Move::at(MoveKind::AprReflect, &vid(p.xs[0]))];
    for i in 1..n {
        moves.push(Move::at(MoveKind::AprReflect, &vid(p.xs[i])));
        moves.push(Move::at(MoveKind::GenAprReflect, &vid(p.xs[0])));
    }
    moves
}

fn block_direct(bq: &BoundQuiver, p: &BlockPattern) -> BoundQuiver {
    let mut e: Vec<(usize, usize)> = bq.arrows().iter().map(|a| (a.source, a.target)).collect();
    let n = p.alphas.len();
    let y = bq.source(p.beta);
    e[p.beta] = (p.xs[1], y);
    for i in 1..=n - 2 {
        e[p.alphas[i - 1]] = (p.xs[i + 1], p.xs[i]);
    }
    e[p.alphas[n - 2]] = (p.xs[0], p.xs[n - 1]);
    e[p.alphas[n - 1]] = (p.xs[0], p.xs[n]);
    let mut rels: BTreeSet<(usize, usize)> = bq.relations().clone();
    rels.remove(&(p.alphas[n - 2], p.alphas[n - 1]));
    rels.insert((p.beta, p.alphas[0]));
    bq.with_endpoints(&e, rels)
}

/// Moves a block of chained relations one step toward the free arrow `anchor`.
///
/// `Left` is the form where the anchor ends at the sink closing the chain;
/// `Right` is its dual, computed on the opposite quiver.
pub fn shift_relation_block(bq: &BoundQuiver, anchor: &str, dir: Direction) -> Result<Shift, MoveError> {
    let a = arrow(bq, anchor)?;
    let moves = match dir {
        Direction::Left => block_moves(bq, &match_block(bq, a)?),
        Direction::Right => {
            let op = bq.opposite();
            block_moves(&op, &match_block(&op, a)?).iter().map(Move::dual).collect()
        }
    };
    Ok(Shift { quiver: apply_all(bq, &moves)?, moves })
}

pub fn shift_relation_block_direct(
    bq: &BoundQuiver,
    anchor: &str,
    dir: Direction,
) -> Result<BoundQuiver, MoveError> {
    let a = arrow(bq, anchor)?;
    match dir {
        Direction::Left => Ok(block_direct(bq, &match_block(bq, a)?)),
        Direction::Right => {
            let op = bq.opposite();
            Ok(block_direct(&op, &match_block(&op, a)?).opposite())
        }
    }
}
