//! Exhaustive enumeration, move orbits, normalization to the canonical
//! families, and the desk-scale verification reports.

mod enumerate;
mod fuzz;
mod report;
mod verify;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use thiserror::Error;

use crate::families::{Catalog, FamilySpec};
use crate::invariant::{phi, PhiInvariant};
use crate::moves::{applicable_moves, apply, Move, MoveKind};
use crate::quiver::{canonical_pair, validate, validate_connected, BoundQuiver, CanonicalKey};

pub use enumerate::{enumerate, enumerate_bounded, enumerate_naive, SizeClass, DEFAULT_BOUND};
pub use fuzz::fuzz_shift;
pub use report::Report;
pub use verify::{
    verify_completeness, verify_lemma_tables, verify_minimality, verify_move_invariance, LemmaBounds,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("{vertices} vertices exceeds the enumeration bound {bound}")]
    BoundExceeded { vertices: usize, bound: usize },
    #[error("orbit exceeded {0} states")]
    StateLimitExceeded(usize),
    #[error("no canonical family in the orbit of {0}")]
    NoCanonicalHit(String),
    #[error("not a connected gentle two-cycle bound quiver: {0}")]
    NotTwoCycle(String),
}

/// How the invariant is used during a search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiMode {
    /// Compute it for every state and record edges that change it.
    Check,
    /// Drop states whose invariant differs from the start.
    Prune,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitLimits {
    pub max_states: usize,
    pub phi_mode: PhiMode,
    pub allow_opposite: bool,
}

impl Default for OrbitLimits {
    fn default() -> Self {
        OrbitLimits { max_states: 200_000, phi_mode: PhiMode::Check, allow_opposite: true }
    }
}

pub type Edge = (CanonicalKey, Move, CanonicalKey);

#[derive(Debug, Clone)]
pub struct OrbitResult {
    pub start: CanonicalKey,
    /// Canonical form of every reached class.
    pub representatives: BTreeMap<CanonicalKey, BoundQuiver>,
    /// Moves are stated on the canonical form of the source state.
    pub edges: Vec<Edge>,
    pub canonical_hits: Vec<(CanonicalKey, FamilySpec)>,
    /// False when the state cap stopped the search.
    pub complete: bool,
    pub phi_violations: Vec<Edge>,
    /// Moves whose output failed validation, with the reason.
    pub invalid_moves: Vec<(CanonicalKey, Move, String)>,
}

impl OrbitResult {
    pub fn contains(&self, key: &CanonicalKey) -> bool {
        self.representatives.contains_key(key)
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// The least canonical family reached.
    pub fn normal_form(&self) -> Option<&FamilySpec> {
        self.canonical_hits.iter().map(|(_, s)| s).min()
    }
}

/// Canonical-list keys at `n` vertices, built once per process.
pub fn canonical_catalog(n: usize) -> Arc<Catalog> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Catalog>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().unwrap().get(&n) {
        return c.clone();
    }
    let built = Arc::new(Catalog::canonical(n));
    cache.lock().unwrap().entry(n).or_insert(built).clone()
}

struct Expansion {
    edges: Vec<(Move, CanonicalKey, BoundQuiver)>,
    invalid: Vec<(Move, String)>,
}

fn expand(state: &BoundQuiver, allow_opposite: bool) -> Expansion {
    let mut edges = Vec::new();
    let mut invalid = Vec::new();
    for mv in applicable_moves(state) {
        if mv.kind == MoveKind::Opposite && !allow_opposite {
            continue;
        }
        match apply(state, &mv) {
            Ok(out) => match validate(&out) {
                Ok(()) => {
                    let (key, form) = canonical_pair(&out);
                    edges.push((mv, key, form));
                }
                Err(v) => invalid.push((mv, v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; "))),
            },
            Err(e) => invalid.push((mv, e.to_string())),
        }
    }
    Expansion { edges, invalid }
}

/// Breadth-first closure of the class of `bq` under the applicable moves.
///
/// Layers are expanded in parallel and merged in key order, so the result
/// does not depend on the number of worker threads.
///
/// ```
/// use gentle::families::{build_family, FamilySpec, Tag};
/// use gentle::orbit::{orbit, OrbitLimits};
/// use gentle::quiver::canonical_key;
/// let bq = build_family(&FamilySpec::new(Tag::L0, &[1, 0])).unwrap();
/// let o = orbit(&bq, &OrbitLimits::default());
/// assert!(o.complete && o.contains(&canonical_key(&bq)));
/// ```
pub fn orbit(bq: &BoundQuiver, limits: &OrbitLimits) -> OrbitResult {
    let (start, form) = canonical_pair(bq);
    let start_phi: Option<PhiInvariant> = match limits.phi_mode {
        PhiMode::Off => None,
        _ => phi(&form).ok(),
    };
    let catalog = canonical_catalog(bq.vertex_count());
    let mut res = OrbitResult {
        start: start.clone(),
        representatives: BTreeMap::new(),
        edges: Vec::new(),
        canonical_hits: Vec::new(),
        complete: true,
        phi_violations: Vec::new(),
        invalid_moves: Vec::new(),
    };
    let record = |res: &mut OrbitResult, key: &CanonicalKey, form: BoundQuiver| {
        if let Some(spec) = catalog.lookup(key) {
            res.canonical_hits.push((key.clone(), spec.clone()));
        }
        res.representatives.insert(key.clone(), form);
    };
    record(&mut res, &start, form);
    let mut frontier: Vec<CanonicalKey> = vec![start];
    while !frontier.is_empty() {
        let expansions: Vec<(Expansion, Vec<Option<PhiInvariant>>)> = frontier
            .par_iter()
            .map(|k| {
                let e = expand(&res.representatives[k], limits.allow_opposite);
                let phis = e
                    .edges
                    .iter()
                    .map(|(_, _, f)| match limits.phi_mode {
                        PhiMode::Off => None,
                        _ => phi(f).ok(),
                    })
                    .collect();
                (e, phis)
            })
            .collect();
        let mut next = Vec::new();
        for (from, (exp, phis)) in frontier.iter().zip(expansions) {
            for (mv, err) in exp.invalid {
                res.invalid_moves.push((from.clone(), mv, err));
            }
            for ((mv, key, form), p) in exp.edges.into_iter().zip(phis) {
                let same_phi = limits.phi_mode == PhiMode::Off || p == start_phi;
                let edge = (from.clone(), mv, key.clone());
                if !same_phi {
                    res.phi_violations.push(edge.clone());
                    if limits.phi_mode == PhiMode::Prune {
                        continue;
                    }
                }
                res.edges.push(edge);
                if !res.representatives.contains_key(&key) {
                    if res.representatives.len() >= limits.max_states {
                        res.complete = false;
                        continue;
                    }
                    record(&mut res, &key, form);
                    next.push(key);
                }
            }
        }
        if !res.complete {
            break;
        }
        next.sort();
        frontier = next;
    }
    res.canonical_hits.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    res
}

fn require_two_cycle(bq: &BoundQuiver) -> Result<(), OrbitError> {
    if let Err(v) = validate_connected(bq) {
        let msg: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        return Err(OrbitError::NotTwoCycle(msg.join("; ")));
    }
    match bq.cycle_rank() {
        Ok(2) => Ok(()),
        Ok(r) => Err(OrbitError::NotTwoCycle(format!("cycle rank {r}"))),
        Err(e) => Err(OrbitError::NotTwoCycle(e.to_string())),
    }
}

/// The least canonical family in the orbit.
///
/// ```
/// use gentle::families::{build_family, FamilySpec, Tag};
/// use gentle::orbit::{normalize, OrbitLimits};
/// let spec = FamilySpec::new(Tag::L0, &[2, 1]);
/// let bq = build_family(&spec).unwrap();
/// assert_eq!(normalize(&bq, &OrbitLimits::default()).unwrap(), spec);
/// ```
pub fn normalize(bq: &BoundQuiver, limits: &OrbitLimits) -> Result<FamilySpec, OrbitError> {
    require_two_cycle(bq)?;
    normal_form_of(&orbit(bq, limits))
}

fn normal_form_of(o: &OrbitResult) -> Result<FamilySpec, OrbitError> {
    if !o.complete {
        return Err(OrbitError::StateLimitExceeded(o.len()));
    }
    o.normal_form().cloned().ok_or_else(|| OrbitError::NoCanonicalHit(o.start.to_string()))
}

/// Orbits computed so far, indexed by every member key.
#[derive(Debug)]
pub struct OrbitCache {
    pub limits: OrbitLimits,
    index: HashMap<CanonicalKey, usize>,
    orbits: Vec<Arc<OrbitResult>>,
}

impl OrbitCache {
    pub fn new(limits: OrbitLimits) -> Self {
        OrbitCache { limits, index: HashMap::new(), orbits: Vec::new() }
    }

    pub fn get(&mut self, bq: &BoundQuiver) -> Arc<OrbitResult> {
        let (key, _) = canonical_pair(bq);
        if let Some(&i) = self.index.get(&key) {
            return self.orbits[i].clone();
        }
        let o = Arc::new(orbit(bq, &self.limits));
        let i = self.orbits.len();
        if o.complete {
            for k in o.representatives.keys() {
                self.index.insert(k.clone(), i);
            }
        }
        self.orbits.push(o.clone());
        o
    }

    pub fn normalize(&mut self, bq: &BoundQuiver) -> Result<FamilySpec, OrbitError> {
        require_two_cycle(bq)?;
        normal_form_of(&self.get(bq))
    }

    /// Whether `a` and `b` lie in one orbit.
    pub fn connected(&mut self, a: &BoundQuiver, b: &BoundQuiver) -> Result<bool, OrbitError> {
        let o = self.get(a);
        if !o.complete {
            return Err(OrbitError::StateLimitExceeded(o.len()));
        }
        Ok(o.contains(&canonical_pair(b).0))
    }
}
