//! The line-oriented quiver file format.
//!
//! ```text
//! quiver <name>
//! vertex <id>
//! arrow <id> <source> <target>
//! rel <first> <second>
//! end
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use super::{is_valid_id, BoundQuiver, StructureError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Structure {
        line: usize,
        #[source]
        source: StructureError,
    },
    #[error("missing `quiver` header")]
    MissingHeader,
    #[error("missing `end` line")]
    MissingEnd,
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, message: message.into() }
}

/// Parses one quiver file. Gentleness is not checked here.
///
/// ```
/// let bq = gentle::quiver::parse("quiver p\nvertex x\nend\n").unwrap();
/// assert_eq!(bq.vertex_count(), 1);
/// ```
pub fn parse(text: &str) -> Result<BoundQuiver, ParseError> {
    let mut name: Option<String> = None;
    let mut ended = false;
    let mut vertices: Vec<(usize, String)> = Vec::new();
    let mut arrows: Vec<(usize, String, String, String)> = Vec::new();
    let mut rels: Vec<(usize, String, String)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = content.split_whitespace().collect();
        if words.is_empty() {
            continue;
        }
        if ended {
            return Err(syntax(lineno, "content after `end`"));
        }
        let ids_ok = |ws: &[&str]| -> Result<(), ParseError> {
            for w in ws {
                if !is_valid_id(w) {
                    return Err(syntax(lineno, format!("invalid identifier {w:?}")));
                }
            }
            Ok(())
        };
        match (words[0], name.is_some()) {
            ("quiver", false) => {
                if words.len() != 2 {
                    return Err(syntax(lineno, "expected `quiver <name>`"));
                }
                ids_ok(&words[1..])?;
                name = Some(words[1].to_string());
            }
            ("quiver", true) => return Err(syntax(lineno, "duplicate `quiver` header")),
            (_, false) => return Err(syntax(lineno, "expected `quiver <name>` first")),
            ("vertex", true) => {
                if words.len() != 2 {
                    return Err(syntax(lineno, "expected `vertex <id>`"));
                }
                ids_ok(&words[1..])?;
                vertices.push((lineno, words[1].to_string()));
            }
            ("arrow", true) => {
                if words.len() != 4 {
                    return Err(syntax(lineno, "expected `arrow <id> <source> <target>`"));
                }
                ids_ok(&words[1..])?;
                arrows.push((
                    lineno,
                    words[1].to_string(),
                    words[2].to_string(),
                    words[3].to_string(),
                ));
            }
            ("rel", true) => {
                if words.len() != 3 {
                    return Err(syntax(lineno, "expected `rel <first> <second>`"));
                }
                ids_ok(&words[1..])?;
                rels.push((lineno, words[1].to_string(), words[2].to_string()));
            }
            ("end", true) => {
                if words.len() != 1 {
                    return Err(syntax(lineno, "unexpected tokens after `end`"));
                }
                ended = true;
            }
            (other, true) => return Err(syntax(lineno, format!("unknown keyword {other:?}"))),
        }
    }
    let name = name.ok_or(ParseError::MissingHeader)?;
    if !ended {
        return Err(ParseError::MissingEnd);
    }

    // Build incrementally so that structural errors carry the offending line.
    let mut vs: Vec<String> = Vec::new();
    for (line, v) in &vertices {
        if vs.contains(v) {
            return Err(ParseError::Structure {
                line: *line,
                source: StructureError::DuplicateVertex(v.clone()),
            });
        }
        vs.push(v.clone());
    }
    let mut arr: Vec<(String, String, String)> = Vec::new();
    for (line, id, s, t) in &arrows {
        let err = |source| ParseError::Structure { line: *line, source };
        if arr.iter().any(|a| &a.0 == id) {
            return Err(err(StructureError::DuplicateArrow(id.clone())));
        }
        for v in [s, t] {
            if !vs.contains(v) {
                return Err(err(StructureError::UnknownVertex {
                    arrow: id.clone(),
                    vertex: v.clone(),
                }));
            }
        }
        arr.push((id.clone(), s.clone(), t.clone()));
    }
    let mut rs: Vec<(String, String)> = Vec::new();
    for (line, f, s) in &rels {
        let err = |source| ParseError::Structure { line: *line, source };
        let fa = arr.iter().find(|a| &a.0 == f).ok_or_else(|| err(StructureError::UnknownArrow(f.clone())))?;
        let sa = arr.iter().find(|a| &a.0 == s).ok_or_else(|| err(StructureError::UnknownArrow(s.clone())))?;
        if fa.1 != sa.2 {
            return Err(err(StructureError::NotComposable { first: f.clone(), second: s.clone() }));
        }
        if rs.iter().any(|r| &r.0 == f && &r.1 == s) {
            return Err(err(StructureError::DuplicateRelation { first: f.clone(), second: s.clone() }));
        }
        rs.push((f.clone(), s.clone()));
    }
    BoundQuiver::new(&name, &vs, &arr, &rs).map_err(|source| ParseError::Structure { line: 0, source })
}

/// Renders a bound quiver; every section is sorted by id.
pub fn serialize(bq: &BoundQuiver) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "quiver {}", bq.name());
    for v in bq.vertices() {
        let _ = writeln!(out, "vertex {v}");
    }
    for a in bq.arrows() {
        let _ = writeln!(out, "arrow {} {} {}", a.id, bq.vertex_id(a.source), bq.vertex_id(a.target));
    }
    let mut rels: Vec<(&str, &str)> =
        bq.relations().iter().map(|&(f, s)| (bq.arrow_id(f), bq.arrow_id(s))).collect();
    rels.sort();
    for (f, s) in rels {
        let _ = writeln!(out, "rel {f} {s}");
    }
    out.push_str("end\n");
    out
}
