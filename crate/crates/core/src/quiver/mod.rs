//! Bound quivers with length-two monomial relations.
//!
//! Ids are user strings at the boundary and dense indices inside. Vertices and
//! arrows are always stored sorted by id, so two values built from the same
//! data compare equal regardless of input order.

mod canon;
mod classify;
mod text;
mod validate;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

pub use canon::{canonical_form, canonical_key, is_isomorphic, CanonicalKey};
pub(crate) use canon::canonical_pair;
pub use classify::{classify_arrows, ArrowClass, Classification};
pub use text::{parse, serialize, ParseError};
pub use validate::{validate, validate_connected, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("invalid identifier {0:?}")]
    InvalidId(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("duplicate arrow {0}")]
    DuplicateArrow(String),
    #[error("arrow {arrow} refers to unknown vertex {vertex}")]
    UnknownVertex { arrow: String, vertex: String },
    #[error("relation refers to unknown arrow {0}")]
    UnknownArrow(String),
    #[error("relation {first} {second} is not composable: target of {second} is not the source of {first}")]
    NotComposable { first: String, second: String },
    #[error("duplicate relation {first} {second}")]
    DuplicateRelation { first: String, second: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("quiver is not connected")]
    NotConnected,
    #[error("expected a two-cycle quiver, found cycle rank {0}")]
    WrongCycleRank(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver together with a set of relations `(first, second)`, each
/// standing for the composite "second, then first".
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundQuiver {
    name: String,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: BTreeSet<(usize, usize)>,
}

pub(crate) fn is_valid_id(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl BoundQuiver {
    /// Builds a bound quiver from string ids.
    ///
    /// ```
    /// use gentle::quiver::BoundQuiver;
    /// let bq = BoundQuiver::new(
    ///     "a2",
    ///     &["x", "y"],
    ///     &[("alpha", "y", "x")],
    ///     &[],
    /// ).unwrap();
    /// assert_eq!(bq.arrow_count(), 1);
    /// ```
    pub fn new<S: AsRef<str>>(
        name: &str,
        vertices: &[S],
        arrows: &[(S, S, S)],
        relations: &[(S, S)],
    ) -> Result<Self, StructureError> {
        let mut vs: Vec<String> = Vec::with_capacity(vertices.len());
        let mut seen = BTreeSet::new();
        for v in vertices {
            let v = v.as_ref();
            if !is_valid_id(v) {
                return Err(StructureError::InvalidId(v.to_string()));
            }
            if !seen.insert(v.to_string()) {
                return Err(StructureError::DuplicateVertex(v.to_string()));
            }
            vs.push(v.to_string());
        }
        vs.sort();
        let vindex: BTreeMap<&str, usize> =
            vs.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();

        let mut arr: Vec<Arrow> = Vec::with_capacity(arrows.len());
        let mut seen = BTreeSet::new();
        for (id, s, t) in arrows {
            let (id, s, t) = (id.as_ref(), s.as_ref(), t.as_ref());
            if !is_valid_id(id) {
                return Err(StructureError::InvalidId(id.to_string()));
            }
            if !seen.insert(id.to_string()) {
                return Err(StructureError::DuplicateArrow(id.to_string()));
            }
            let lookup = |v: &str| {
                vindex.get(v).copied().ok_or_else(|| StructureError::UnknownVertex {
                    arrow: id.to_string(),
                    vertex: v.to_string(),
                })
            };
            arr.push(Arrow { id: id.to_string(), source: lookup(s)?, target: lookup(t)? });
        }
        arr.sort_by(|a, b| a.id.cmp(&b.id));
        let aindex: BTreeMap<&str, usize> =
            arr.iter().enumerate().map(|(i, a)| (a.id.as_str(), i)).collect();

        let mut rels = BTreeSet::new();
        for (f, s) in relations {
            let (f, s) = (f.as_ref(), s.as_ref());
            let fi = *aindex.get(f).ok_or_else(|| StructureError::UnknownArrow(f.to_string()))?;
            let si = *aindex.get(s).ok_or_else(|| StructureError::UnknownArrow(s.to_string()))?;
            if arr[fi].source != arr[si].target {
                return Err(StructureError::NotComposable {
                    first: f.to_string(),
                    second: s.to_string(),
                });
            }
            if !rels.insert((fi, si)) {
                return Err(StructureError::DuplicateRelation {
                    first: f.to_string(),
                    second: s.to_string(),
                });
            }
        }
        Ok(BoundQuiver { name: name.to_string(), vertices: vs, arrows: arr, relations: rels })
    }

    /// Index-level constructor for callers that already hold sorted, consistent data.
    pub(crate) fn from_raw(
        name: String,
        vertices: Vec<String>,
        arrows: Vec<Arrow>,
        relations: BTreeSet<(usize, usize)>,
    ) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(arrows.windows(2).all(|w| w[0].id < w[1].id));
        debug_assert!(relations.iter().all(|&(a, b)| arrows[a].source == arrows[b].target));
        BoundQuiver { name, vertices, arrows, relations }
    }

    /// Same quiver with new endpoints and relations; ids are kept.
    pub(crate) fn with_endpoints(
        &self,
        ends: &[(usize, usize)],
        relations: BTreeSet<(usize, usize)>,
    ) -> Self {
        let arrows = self
            .arrows
            .iter()
            .zip(ends)
            .map(|(a, &(s, t))| Arrow { id: a.id.clone(), source: s, target: t })
            .collect();
        Self::from_raw(self.name.clone(), self.vertices.clone(), arrows, relations)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &BTreeSet<(usize, usize)> {
        &self.relations
    }

    pub fn source(&self, a: usize) -> usize {
        self.arrows[a].source
    }

    pub fn target(&self, a: usize) -> usize {
        self.arrows[a].target
    }

    pub fn has_relation(&self, first: usize, second: usize) -> bool {
        self.relations.contains(&(first, second))
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.as_str().cmp(id)).ok()
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.binary_search_by(|a| a.id.as_str().cmp(id)).ok()
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn arrow_id(&self, a: usize) -> &str {
        &self.arrows[a].id
    }

    pub fn out_arrows(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].source == v).collect()
    }

    pub fn in_arrows(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].target == v).collect()
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.arrows.iter().all(|a| a.source != v)
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.arrows.iter().all(|a| a.target != v)
    }

    /// Connected components of the underlying undirected graph, as a
    /// component index per vertex, ignoring the arrows flagged in `skip`.
    pub(crate) fn components_without(&self, skip: Option<usize>) -> (usize, Vec<usize>) {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (i, a) in self.arrows.iter().enumerate() {
            if Some(i) == skip {
                continue;
            }
            let (ra, rb) = (find(&mut parent, a.source), find(&mut parent, a.target));
            if ra != rb {
                parent[ra] = rb;
            }
        }
        let mut label = vec![usize::MAX; n];
        let mut comp = vec![0; n];
        let mut count = 0;
        for v in 0..n {
            let r = find(&mut parent, v);
            if label[r] == usize::MAX {
                label[r] = count;
                count += 1;
            }
            comp[v] = label[r];
        }
        (count, comp)
    }

    pub fn is_connected(&self) -> bool {
        self.components_without(None).0 <= 1
    }

    /// `|arrows| - |vertices| + 1` for a connected quiver.
    ///
    /// ```
    /// use gentle::families::{build_family, FamilySpec, Tag};
    /// let bq = build_family(&FamilySpec::new(Tag::L0, &[1, 0])).unwrap();
    /// assert_eq!(bq.cycle_rank(), Ok(2));
    /// ```
    pub fn cycle_rank(&self) -> Result<i64, QuiverError> {
        if !self.is_connected() {
            return Err(QuiverError::NotConnected);
        }
        Ok(self.arrows.len() as i64 - self.vertices.len() as i64 + 1)
    }

    /// The opposite bound quiver: arrows reversed, relation pairs swapped.
    pub fn opposite(&self) -> BoundQuiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { id: a.id.clone(), source: a.target, target: a.source })
            .collect();
        let relations = self.relations.iter().map(|&(f, s)| (s, f)).collect();
        Self::from_raw(self.name.clone(), self.vertices.clone(), arrows, relations)
    }

    /// Renames vertices and arrows. Both maps must be injective and total.
    pub fn relabel(
        &self,
        vertex_names: &dyn Fn(usize) -> String,
        arrow_names: &dyn Fn(usize) -> String,
    ) -> BoundQuiver {
        let vs: Vec<String> = (0..self.vertices.len()).map(vertex_names).collect();
        let arrows: Vec<(String, String, String)> = self
            .arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (arrow_names(i), vs[a.source].clone(), vs[a.target].clone()))
            .collect();
        let rels: Vec<(String, String)> =
            self.relations.iter().map(|&(f, s)| (arrow_names(f), arrow_names(s))).collect();
        BoundQuiver::new(&self.name, &vs, &arrows, &rels).expect("relabelling must be injective")
    }
}

pub fn opposite(bq: &BoundQuiver) -> BoundQuiver {
    bq.opposite()
}

pub fn cycle_rank(bq: &BoundQuiver) -> Result<i64, QuiverError> {
    bq.cycle_rank()
}
