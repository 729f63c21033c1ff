//! Threads, characteristic sequences and the invariant built from their types,
//! plus Cartan matrices.

mod cartan;
mod sequences;
mod threads;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::quiver::{BoundQuiver, QuiverError};

pub use cartan::{cartan_matrix, euler_data, CartanMatrix, EulerData};
pub use sequences::{arrow_cycle_sequences, characteristic_sequences, CharSeq};
pub use threads::{forbidden_threads, permitted_threads, Thread, ThreadBody, ThreadKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("characteristic sequence pairing is ambiguous: {0}")]
    PairingAmbiguous(String),
    #[error("characteristic sequence pairing is incomplete: {0}")]
    PairingIncomplete(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("unexpected total count {0} for a two-cycle quiver")]
    UnexpectedPhiTotal(u32),
}

/// Multiset of pairs `(n, m)`, kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PhiInvariant(BTreeMap<(u32, u32), u32>);

impl PhiInvariant {
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Self {
        let mut m = BTreeMap::new();
        for &p in pairs {
            *m.entry(p).or_insert(0) += 1;
        }
        PhiInvariant(m)
    }

    pub fn total(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn count(&self, n: u32, m: u32) -> u32 {
        self.0.get(&(n, m)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((u32, u32), u32)> + '_ {
        self.0.iter().map(|(&k, &v)| (k, v))
    }
}

impl fmt::Display for PhiInvariant {
    /// One `(n,m): count` line per entry, then `sum: k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((n, m), c) in self.entries() {
            writeln!(f, "({n},{m}): {c}")?;
        }
        writeln!(f, "sum: {}", self.total())
    }
}

/// ```
/// use gentle::families::{build_family, FamilySpec, Tag};
/// use gentle::invariant::{phi, PhiInvariant};
/// let bq = build_family(&FamilySpec::new(Tag::L0, &[1, 0])).unwrap();
/// assert_eq!(phi(&bq).unwrap(), PhiInvariant::from_pairs(&[(1, 3)]));
/// ```
pub fn phi(bq: &BoundQuiver) -> Result<PhiInvariant, InvariantError> {
    Ok(PhiInvariant(sequences::tally(&characteristic_sequences(bq)?)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degeneracy {
    Nondegenerate,
    Degenerate,
}

pub fn degeneracy_class(bq: &BoundQuiver) -> Result<Degeneracy, InvariantError> {
    let rank = bq.cycle_rank()?;
    if rank != 2 {
        return Err(QuiverError::WrongCycleRank(rank).into());
    }
    match phi(bq)?.total() {
        3 => Ok(Degeneracy::Nondegenerate),
        1 => Ok(Degeneracy::Degenerate),
        t => Err(InvariantError::UnexpectedPhiTotal(t)),
    }
}
