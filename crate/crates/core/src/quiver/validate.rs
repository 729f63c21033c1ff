//! Gentleness (G1, G3, G4), finiteness and optional connectivity.

use std::fmt;

use super::BoundQuiver;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// More than two arrows leave or enter a vertex.
    Degree { vertex: String, outgoing: usize, incoming: usize },
    /// An arrow has two unrelated continuations on one side.
    FreeContinuation { arrow: String, side: Side, witnesses: Vec<String> },
    /// An arrow takes part in two relations on one side.
    RelatedContinuation { arrow: String, side: Side, witnesses: Vec<String> },
    /// An oriented cycle of arrows with no relation between consecutive arrows.
    InfinitePath { cycle: Vec<String> },
    Disconnected { components: usize },
}

/// `Before` looks at arrows composed before the given one, `After` at arrows composed after it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Before,
    After,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Degree { vertex, outgoing, incoming } => {
                write!(f, "G1 vertex {vertex}: {outgoing} outgoing, {incoming} incoming")
            }
            Violation::FreeContinuation { arrow, side, witnesses } => {
                write!(f, "G3 arrow {arrow} ({}): {}", side_name(*side), witnesses.join(" "))
            }
            Violation::RelatedContinuation { arrow, side, witnesses } => {
                write!(f, "G4 arrow {arrow} ({}): {}", side_name(*side), witnesses.join(" "))
            }
            Violation::InfinitePath { cycle } => write!(f, "FIN cycle: {}", cycle.join(" ")),
            Violation::Disconnected { components } => {
                write!(f, "CONN {components} components")
            }
        }
    }
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::Before => "before",
        Side::After => "after",
    }
}

/// Checks G1, G3, G4 and FIN. Connectivity is not required.
///
/// ```
/// use gentle::quiver::{parse, validate, Violation};
/// let bq = parse("quiver q\nvertex x\narrow a x x\narrow b x x\nrel a a\nrel b b\nend\n").unwrap();
/// let v = validate(&bq).unwrap_err();
/// assert!(v.iter().any(|v| matches!(v, Violation::InfinitePath { .. })));
/// ```
pub fn validate(bq: &BoundQuiver) -> Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    check_local(bq, &mut out);
    if let Some(cycle) = free_cycle(bq) {
        out.push(Violation::InfinitePath {
            cycle: cycle.iter().map(|&a| bq.arrow_id(a).to_string()).collect(),
        });
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// [`validate`] plus the connectivity flag.
pub fn validate_connected(bq: &BoundQuiver) -> Result<(), Vec<Violation>> {
    let mut out = validate(bq).err().unwrap_or_default();
    let (components, _) = bq.components_without(None);
    if components > 1 {
        out.push(Violation::Disconnected { components });
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

fn check_local(bq: &BoundQuiver, out: &mut Vec<Violation>) {
    let n = bq.vertex_count();
    let mut outdeg = vec![0; n];
    let mut indeg = vec![0; n];
    for a in bq.arrows() {
        outdeg[a.source] += 1;
        indeg[a.target] += 1;
    }
    for v in 0..n {
        if outdeg[v] > 2 || indeg[v] > 2 {
            out.push(Violation::Degree {
                vertex: bq.vertex_id(v).to_string(),
                outgoing: outdeg[v],
                incoming: indeg[v],
            });
        }
    }
    let ids = |xs: &[usize]| xs.iter().map(|&b| bq.arrow_id(b).to_string()).collect::<Vec<_>>();
    for a in 0..bq.arrow_count() {
        let (sa, ta) = (bq.source(a), bq.target(a));
        let (mut free_before, mut rel_before) = (Vec::new(), Vec::new());
        for b in bq.in_arrows(sa) {
            if bq.has_relation(a, b) {
                rel_before.push(b);
            } else {
                free_before.push(b);
            }
        }
        let (mut free_after, mut rel_after) = (Vec::new(), Vec::new());
        for b in bq.out_arrows(ta) {
            if bq.has_relation(b, a) {
                rel_after.push(b);
            } else {
                free_after.push(b);
            }
        }
        let arrow = bq.arrow_id(a).to_string();
        if free_before.len() > 1 {
            out.push(Violation::FreeContinuation { arrow: arrow.clone(), side: Side::Before, witnesses: ids(&free_before) });
        }
        if free_after.len() > 1 {
            out.push(Violation::FreeContinuation { arrow: arrow.clone(), side: Side::After, witnesses: ids(&free_after) });
        }
        if rel_before.len() > 1 {
            out.push(Violation::RelatedContinuation { arrow: arrow.clone(), side: Side::Before, witnesses: ids(&rel_before) });
        }
        if rel_after.len() > 1 {
            out.push(Violation::RelatedContinuation { arrow, side: Side::After, witnesses: ids(&rel_after) });
        }
    }
}

/// A directed cycle in the graph on arrows with an edge `b -> a` whenever
/// `a` can follow `b` without hitting a relation. Returned in traversal order.
pub(crate) fn free_cycle(bq: &BoundQuiver) -> Option<Vec<usize>> {
    let m = bq.arrow_count();
    let succ: Vec<Vec<usize>> = (0..m)
        .map(|b| {
            bq.out_arrows(bq.target(b)).into_iter().filter(|&a| !bq.has_relation(a, b)).collect()
        })
        .collect();
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; m];
    let mut stack: Vec<usize> = Vec::new();
    for root in 0..m {
        if state[root] != 0 {
            continue;
        }
        let mut iters: Vec<(usize, usize)> = vec![(root, 0)];
        state[root] = 1;
        stack.push(root);
        while let Some(&mut (node, ref mut idx)) = iters.last_mut() {
            if *idx < succ[node].len() {
                let next = succ[node][*idx];
                *idx += 1;
                match state[next] {
                    0 => {
                        state[next] = 1;
                        stack.push(next);
                        iters.push((next, 0));
                    }
                    1 => {
                        let pos = stack.iter().position(|&x| x == next).unwrap();
                        return Some(stack[pos..].to_vec());
                    }
                    _ => {}
                }
            } else {
                state[node] = 2;
                stack.pop();
                iters.pop();
            }
        }
    }
    None
}
