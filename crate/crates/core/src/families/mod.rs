//! The named parameter families, their closed-form invariants and the
//! canonical lists of the classification.

mod build;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::invariant::PhiInvariant;
use crate::quiver::{canonical_key, BoundQuiver, CanonicalKey};

pub use build::build_family;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    L0,
    L0p,
    L1,
    L2,
    L2pSix,
    L2pFive,
    G0,
    G1,
    G2,
}

impl Tag {
    pub const ALL: [Tag; 9] =
        [Tag::L0, Tag::L0p, Tag::L1, Tag::L2, Tag::L2pSix, Tag::L2pFive, Tag::G0, Tag::G1, Tag::G2];

    pub fn name(self) -> &'static str {
        match self {
            Tag::L0 => "L0",
            Tag::L0p => "L0p",
            Tag::L1 => "L1",
            Tag::L2 => "L2",
            Tag::L2pSix => "L2pSix",
            Tag::L2pFive => "L2pFive",
            Tag::G0 => "G0",
            Tag::G1 => "G1",
            Tag::G2 => "G2",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Tag::L0 | Tag::L0p => 2,
            Tag::G0 => 3,
            Tag::G1 | Tag::G2 => 4,
            Tag::L1 | Tag::L2 | Tag::L2pFive => 5,
            Tag::L2pSix => 6,
        }
    }

    /// The families of the two main classification lists and their relatives.
    pub fn is_lambda(self) -> bool {
        !matches!(self, Tag::G0 | Tag::G1 | Tag::G2)
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Tag {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Tag::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| FamilyError::UnknownTag(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown family tag {0:?}")]
    UnknownTag(String),
    #[error("{tag} takes {expected} parameters, got {got}")]
    WrongArity { tag: Tag, expected: usize, got: usize },
    #[error("{spec}: constraint violated: {constraint}")]
    ConstraintViolation { spec: String, constraint: String },
    #[error("no closed form for {0}")]
    OutOfLemmaScope(String),
}

/// A family tag with its integer parameters; ordered by tag, then parameters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FamilySpec {
    pub tag: Tag,
    pub params: Vec<u32>,
}

impl FamilySpec {
    pub fn new(tag: Tag, params: &[u32]) -> Self {
        FamilySpec { tag, params: params.to_vec() }
    }

    /// Parses `L2(2,1,0,1,0)`.
    pub fn parse(s: &str) -> Result<Self, FamilyError> {
        let s = s.trim();
        let bad = || FamilyError::UnknownTag(s.to_string());
        let open = s.find('(').ok_or_else(bad)?;
        if !s.ends_with(')') {
            return Err(bad());
        }
        let tag: Tag = s[..open].parse()?;
        let inner = &s[open + 1..s.len() - 1];
        let params = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner.split(',').map(|p| p.trim().parse::<u32>().map_err(|_| bad())).collect::<Result<_, _>>()?
        };
        Ok(FamilySpec { tag, params })
    }

    /// Number of vertices of the built quiver, from the parameters alone.
    pub fn vertex_count(&self) -> usize {
        let p: Vec<usize> = self.params.iter().map(|&x| x as usize).collect();
        match self.tag {
            Tag::L0 => p[0] + 1,
            Tag::L0p => p[0] + 2,
            Tag::L1 => p[0] + p[1] + p[2] + p[3] - 1,
            Tag::L2 => p[0] + p[1] + p[2] - 1,
            Tag::L2pSix => p[0] + p[1] + p[2] + p[3] - 1,
            Tag::L2pFive => p[0] + p[1] + p[2],
            Tag::G0 => p[0] + p[1] + 1,
            Tag::G1 | Tag::G2 => p[0] + p[1] + p[3] + 1,
        }
    }

    /// Checks arity and the parameter inequalities of the family.
    pub fn check(&self) -> Result<(), FamilyError> {
        if self.params.len() != self.tag.arity() {
            return Err(FamilyError::WrongArity {
                tag: self.tag,
                expected: self.tag.arity(),
                got: self.params.len(),
            });
        }
        let p: Vec<i64> = self.params.iter().map(|&x| x as i64).collect();
        let conds: Vec<(bool, &str)> = match self.tag {
            Tag::L0 | Tag::L0p => vec![(p[0] >= 1, "p >= 1"), (p[1] < p[0], "r <= p - 1")],
            Tag::L1 => vec![
                (p[0] >= 1, "p1 >= 1"),
                (p[1] >= 1, "p2 >= 1"),
                (p[4] < p[0], "r1 <= p1 - 1"),
                (p[1] + p[2] >= 2, "p2 + p3 >= 2"),
                (p[3] + p[4] >= 1, "p4 + r1 >= 1"),
            ],
            Tag::L2 => vec![
                (p[0] >= 1, "p1 >= 1"),
                (p[1] >= 1, "p2 >= 1"),
                (p[3] < p[0], "r1 <= p1 - 1"),
                (p[4] < p[1], "r2 <= p2 - 1"),
                (p[2] + p[3] + p[4] >= 1, "p3 + r1 + r2 >= 1"),
            ],
            Tag::L2pSix => vec![
                (p[0] >= 1, "p1 >= 1"),
                (p[1] >= 1, "p2 >= 1"),
                (p[4] < p[0], "r1 <= p1 - 1"),
                (p[5] < p[1], "r2 <= p2 - 1"),
                (p[2] + p[3] + p[4] + p[5] >= 1, "p3 + p4 + r1 + r2 >= 1"),
            ],
            Tag::L2pFive => vec![
                (p[0] >= 1, "p1 >= 1"),
                (p[1] >= 2, "p2 >= 2"),
                (p[2] >= 1, "p3 >= 1"),
                (p[3] < p[0], "r1 <= p1 - 1"),
                (p[4] >= 1 && p[4] < p[1], "1 <= r2 <= p2 - 1"),
            ],
            Tag::G0 | Tag::G1 | Tag::G2 => vec![
                (p[0] >= 1, "p >= 1"),
                (p[1] >= 1, "q >= 1"),
                (p[2] < p[0], "r <= p - 1"),
            ],
        };
        for (ok, c) in conds {
            if !ok {
                return Err(FamilyError::ConstraintViolation {
                    spec: self.to_string(),
                    constraint: c.to_string(),
                });
            }
        }
        Ok(())
    }

    /// Side conditions singling out the nondegenerate canonical list.
    pub fn is_nondegenerate_canonical(&self) -> bool {
        let p = &self.params;
        match self.tag {
            Tag::L1 => p[2] > p[3] || (p[2] == p[3] && p[1] > p[4]),
            Tag::L2 => p[0] > p[1] || (p[0] == p[1] && p[3] >= p[4]),
            _ => false,
        }
    }

    /// Members of the degenerate canonical list.
    pub fn is_degenerate_canonical(&self) -> bool {
        match self.tag {
            Tag::L0 => true,
            Tag::L0p => self.params[1] == 0,
            _ => false,
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.is_nondegenerate_canonical() || self.is_degenerate_canonical()
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
        write!(f, "{}({})", self.tag, ps.join(","))
    }
}

/// Closed-form invariant for `L0`, `L0p` with `r = 0`, `L1` and `L2`.
///
/// ```
/// use gentle::families::{phi_formula, FamilySpec, Tag};
/// use gentle::invariant::PhiInvariant;
/// let phi = phi_formula(&FamilySpec::new(Tag::L0, &[3, 1])).unwrap();
/// assert_eq!(phi, PhiInvariant::from_pairs(&[(3, 5)]));
/// ```
pub fn phi_formula(spec: &FamilySpec) -> Result<PhiInvariant, FamilyError> {
    spec.check()?;
    let p: Vec<u32> = spec.params.clone();
    let pairs: Vec<(u32, u32)> = match spec.tag {
        Tag::L0 => vec![(p[0], p[0] + 2)],
        Tag::L0p if p[1] == 0 => vec![(p[0] + 1, p[0] + 3)],
        Tag::L1 => vec![
            (p[0] - p[4] - 1, p[0] + p[1]),
            (p[1] + p[2] - 1, p[2]),
            (p[4] + p[3], p[3]),
        ],
        Tag::L2 => vec![
            (p[0] - p[3] - 1, p[0]),
            (p[1] - p[4] - 1, p[1]),
            (p[3] + p[4] + p[2], p[2]),
        ],
        _ => return Err(FamilyError::OutOfLemmaScope(spec.to_string())),
    };
    Ok(PhiInvariant::from_pairs(&pairs))
}

/// Every valid spec of `tag` whose quiver has exactly `n` vertices.
pub fn specs_with_vertices(tag: Tag, n: usize) -> Vec<FamilySpec> {
    let n = n as u32;
    let mut out = Vec::new();
    let mut push = |params: Vec<u32>| {
        let s = FamilySpec { tag, params };
        if s.check().is_ok() && s.vertex_count() == n as usize {
            out.push(s);
        }
    };
    let top = n + 1;
    match tag {
        Tag::L0 | Tag::L0p => {
            for p in 1..=top {
                for r in 0..p {
                    push(vec![p, r]);
                }
            }
        }
        Tag::L1 => {
            for p1 in 1..=top {
                for p2 in 1..=top {
                    for p3 in 0..=top {
                        for p4 in 0..=top {
                            if p1 + p2 + p3 + p4 != n + 1 {
                                continue;
                            }
                            for r1 in 0..p1 {
                                push(vec![p1, p2, p3, p4, r1]);
                            }
                        }
                    }
                }
            }
        }
        Tag::L2 | Tag::L2pFive => {
            let sum = if tag == Tag::L2 { n + 1 } else { n };
            for p1 in 1..=top {
                for p2 in 1..=top {
                    for p3 in 0..=top {
                        if p1 + p2 + p3 != sum {
                            continue;
                        }
                        for r1 in 0..p1 {
                            for r2 in 0..p2 {
                                push(vec![p1, p2, p3, r1, r2]);
                            }
                        }
                    }
                }
            }
        }
        Tag::L2pSix => {
            for p1 in 1..=top {
                for p2 in 1..=top {
                    for p3 in 0..=top {
                        for p4 in 0..=top {
                            if p1 + p2 + p3 + p4 != n + 1 {
                                continue;
                            }
                            for r1 in 0..p1 {
                                for r2 in 0..p2 {
                                    push(vec![p1, p2, p3, p4, r1, r2]);
                                }
                            }
                        }
                    }
                }
            }
        }
        Tag::G0 => {
            for p in 1..=top {
                for q in 1..=top {
                    for r in 0..p {
                        push(vec![p, q, r]);
                    }
                }
            }
        }
        Tag::G1 | Tag::G2 => {
            for p in 1..=top {
                for q in 1..=top {
                    for r in 0..p {
                        for r2 in 0..=top {
                            push(vec![p, q, r, r2]);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// The canonical lists: nondegenerate `L1`/`L2` specs under their side
/// conditions, all `L0`, and `L0p` with `r = 0`, up to `max_vertices` vertices.
pub fn canonical_list(max_vertices: usize) -> Vec<FamilySpec> {
    let mut out: Vec<FamilySpec> = Vec::new();
    for n in 1..=max_vertices {
        for tag in [Tag::L0, Tag::L0p, Tag::L1, Tag::L2] {
            out.extend(specs_with_vertices(tag, n).into_iter().filter(|s| s.is_canonical()));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Canonical keys of built family members, for recognition by lookup.
#[derive(Debug, Clone, Default)]
pub struct Catalog {
    by_key: BTreeMap<CanonicalKey, FamilySpec>,
}

impl Catalog {
    /// All specs of every tag with `n` vertices.
    pub fn all_families(n: usize) -> Self {
        let mut c = Catalog::default();
        for tag in Tag::ALL {
            for s in specs_with_vertices(tag, n) {
                c.insert(s);
            }
        }
        c
    }

    /// Canonical-list specs with `n` vertices.
    pub fn canonical(n: usize) -> Self {
        let mut c = Catalog::default();
        for tag in [Tag::L0, Tag::L0p, Tag::L1, Tag::L2] {
            for s in specs_with_vertices(tag, n) {
                if s.is_canonical() {
                    c.insert(s);
                }
            }
        }
        c
    }

    fn insert(&mut self, s: FamilySpec) {
        let bq = build_family(&s).expect("enumerated specs satisfy their constraints");
        let key = canonical_key(&bq);
        match self.by_key.get(&key) {
            Some(old) if *old <= s => {}
            _ => {
                self.by_key.insert(key, s);
            }
        }
    }

    pub fn lookup(&self, key: &CanonicalKey) -> Option<&FamilySpec> {
        self.by_key.get(key)
    }

    pub fn len(&self) -> usize {
        self.by_key.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_key.is_empty()
    }
}

/// The least spec whose quiver is isomorphic to `bq`, over every family.
pub fn recognize(bq: &BoundQuiver) -> Option<FamilySpec> {
    if bq.arrow_count() != bq.vertex_count() + 1 {
        return None;
    }
    Catalog::all_families(bq.vertex_count()).lookup(&canonical_key(bq)).cloned()
}
