//! Cycle, branch and connecting arrows of a connected two-cycle quiver.

use std::collections::BTreeMap;

use super::{BoundQuiver, QuiverError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ArrowClass {
    Cycle,
    Branch,
    Connecting,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    /// Keyed by arrow id.
    pub arrows: BTreeMap<String, ArrowClass>,
    /// Vertex ids with at least three adjacent arrow ends from non-branch arrows.
    pub connecting_vertices: Vec<String>,
}

/// Deletes each arrow in turn and inspects what is left.
///
/// A loop contributes two arrow ends to its vertex when counting connecting vertices.
pub fn classify_arrows(bq: &BoundQuiver) -> Result<Classification, QuiverError> {
    let rank = bq.cycle_rank()?;
    if rank != 2 {
        return Err(QuiverError::WrongCycleRank(rank));
    }
    let mut classes = Vec::with_capacity(bq.arrow_count());
    for a in 0..bq.arrow_count() {
        let (count, comp) = bq.components_without(Some(a));
        if count == 1 {
            classes.push(ArrowClass::Cycle);
            continue;
        }
        // Removing a bridge leaves two components whose ranks add up to two.
        let mut verts = [0i64; 2];
        let mut arrs = [0i64; 2];
        for c in &comp {
            verts[*c] += 1;
        }
        for (i, arrow) in bq.arrows().iter().enumerate() {
            if i != a {
                arrs[comp[arrow.source]] += 1;
            }
        }
        let ranks = [arrs[0] - verts[0] + 1, arrs[1] - verts[1] + 1];
        classes.push(if ranks == [1, 1] { ArrowClass::Connecting } else { ArrowClass::Branch });
    }
    let mut ends = vec![0usize; bq.vertex_count()];
    for (i, arrow) in bq.arrows().iter().enumerate() {
        if classes[i] != ArrowClass::Branch {
            ends[arrow.source] += 1;
            ends[arrow.target] += 1;
        }
    }
    Ok(Classification {
        arrows: bq.arrows().iter().map(|a| a.id.clone()).zip(classes).collect(),
        connecting_vertices: (0..bq.vertex_count())
            .filter(|&v| ends[v] >= 3)
            .map(|v| bq.vertex_id(v).to_string())
            .collect(),
    })
}
