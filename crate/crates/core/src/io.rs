//! The JSON document format for spaces, complexes and covers.
//!
//! A poset document:
//!
//! ```json
//! { "format_version": "1", "kind": "poset",
//!   "elements": ["a", "b", "c", "d"],
//!   "covers": [["c", "a"], ["d", "a"], ["c", "b"], ["d", "b"]],
//!   "generators": [{ "name": "s", "map": { "a": "b", "b": "a", "c": "d", "d": "c" } }] }
//! ```
//!
//! `covers` lists pairs `[lower, upper]`; the order is their reflexive
//! transitive closure. Generator maps may omit fixed elements. A complex
//! document has `vertices`, `simplices` (vertex lists), an optional vertex
//! `order` of `[lower, upper]` pairs and optional `generators`; without an
//! order the complex is subdivided once. A `cover` field lists subcomplexes,
//! each as a list of simplices.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::group::GPoset;
use crate::poset::FinitePoset;
use crate::simplicial::{self, OrderedGComplex, SimplicialComplex};

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Poset,
    Complex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDoc {
    pub name: String,
    pub map: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDocument {
    pub format_version: String,
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covers: Option<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simplices: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<GeneratorDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover: Option<Vec<Vec<Vec<String>>>>,
}

/// A parsed input.
#[derive(Clone, Debug)]
pub enum Space {
    Poset(GPoset),
    /// `normalized` when an unordered complex was subdivided.
    Complex { complex: OrderedGComplex, normalized: bool },
}

/// Adds the first line mentioning `needle` to an error message.
fn anchored(text: &str, needle: &str, e: Error) -> Error {
    let quoted = format!("\"{needle}\"");
    match text.lines().position(|l| l.contains(&quoted)) {
        Some(i) => Error::Input(format!("line {}: {e}", i + 1)),
        None => e,
    }
}

fn offending(e: &Error) -> Option<String> {
    match e {
        Error::UnknownElement(s) | Error::DuplicateElement(s) => Some(s.clone()),
        Error::Cycle(a, _) => Some(a.clone()),
        Error::NotBijective(s) | Error::NotMonotone(s) => {
            Some(s.trim_start_matches("generator ").split_whitespace().next()?.to_string())
        }
        _ => None,
    }
}

pub fn parse_document(text: &str) -> Result<SpaceDocument> {
    let doc: SpaceDocument = serde_json::from_str(text)
        .map_err(|e| Error::Input(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    if doc.format_version != FORMAT_VERSION {
        return Err(Error::Input(format!(
            "unsupported format_version {:?}",
            doc.format_version
        )));
    }
    Ok(doc)
}

fn generator_perms(names: &[String], gens: &[GeneratorDoc]) -> Result<Vec<(String, Vec<usize>)>> {
    let index = |s: &str| {
        names
            .iter()
            .position(|n| n == s)
            .ok_or_else(|| Error::UnknownElement(s.to_string()))
    };
    gens.iter()
        .map(|g| {
            let mut p: Vec<usize> = (0..names.len()).collect();
            for (a, b) in &g.map {
                p[index(a)?] = index(b)?;
            }
            let mut image = p.clone();
            image.sort_unstable();
            if image.iter().enumerate().any(|(i, &v)| i != v) {
                return Err(Error::NotBijective(format!("generator {}", g.name)));
            }
            Ok((g.name.clone(), p))
        })
        .collect()
}

fn pairs(names: &[[String; 2]]) -> Vec<(String, String)> {
    names.iter().map(|[a, b]| (a.clone(), b.clone())).collect()
}

pub fn space_from_document(doc: &SpaceDocument) -> Result<Space> {
    match doc.kind {
        Kind::Poset => {
            let elements = doc
                .elements
                .as_ref()
                .ok_or_else(|| Error::Input("poset documents need `elements`".into()))?;
            let covers = doc.covers.clone().unwrap_or_default();
            let poset = FinitePoset::from_cover_relations(elements, &pairs(&covers))?;
            let gens = generator_perms(elements, &doc.generators)?;
            let x = if gens.is_empty() {
                GPoset::trivial(poset)
            } else {
                GPoset::from_generator_perms(poset, &gens)?
            };
            Ok(Space::Poset(x))
        }
        Kind::Complex => {
            let vertices = doc
                .vertices
                .as_ref()
                .ok_or_else(|| Error::Input("complex documents need `vertices`".into()))?;
            let simplices = doc.simplices.clone().unwrap_or_default();
            let complex = SimplicialComplex::from_named(vertices, &simplices)?;
            let gens = generator_perms(vertices, &doc.generators)?;
            match &doc.order {
                None => Ok(Space::Complex {
                    complex: simplicial::from_unordered(complex, &gens)?,
                    normalized: true,
                }),
                Some(order) => {
                    let poset = FinitePoset::from_cover_relations(vertices, &pairs(order))?;
                    let v = if gens.is_empty() {
                        GPoset::trivial(poset)
                    } else {
                        GPoset::from_generator_perms(poset, &gens)?
                    };
                    Ok(Space::Complex {
                        complex: OrderedGComplex::new(complex, v)?,
                        normalized: false,
                    })
                }
            }
        }
    }
}

/// Parses and validates, anchoring semantic errors to a line where possible.
pub fn parse_space(text: &str) -> Result<(SpaceDocument, Space)> {
    let doc = parse_document(text)?;
    match space_from_document(&doc) {
        Ok(s) => Ok((doc, s)),
        Err(e) => Err(match offending(&e) {
            Some(n) => anchored(text, &n, e),
            None => e,
        }),
    }
}

/// Generators of the group: elements named by a single generator.
fn generator_docs(names: &[String], x: &GPoset) -> Vec<GeneratorDoc> {
    let g = x.group();
    (1..g.order())
        .filter(|&e| !g.name(e).contains('*'))
        .map(|e| GeneratorDoc {
            name: g.name(e).to_string(),
            map: (0..x.len())
                .filter(|&v| x.act(e, v) != v)
                .map(|v| (names[v].clone(), names[x.act(e, v)].clone()))
                .collect(),
        })
        .collect()
}

pub fn poset_document(x: &GPoset) -> SpaceDocument {
    let p = x.poset();
    let names = p.names().to_vec();
    SpaceDocument {
        format_version: FORMAT_VERSION.into(),
        kind: Kind::Poset,
        covers: Some(
            p.cover_pairs()
                .into_iter()
                .map(|(a, b)| [names[a].clone(), names[b].clone()])
                .collect(),
        ),
        generators: generator_docs(&names, x),
        elements: Some(names),
        vertices: None,
        simplices: None,
        order: None,
        cover: None,
    }
}

pub fn complex_document(k: &OrderedGComplex) -> SpaceDocument {
    let names = k.complex.names().to_vec();
    let facets = k
        .complex
        .facets()
        .into_iter()
        .map(|f| k.complex.simplex(f).iter().map(|&v| names[v].clone()).collect())
        .collect();
    let p = k.vertices.poset();
    SpaceDocument {
        format_version: FORMAT_VERSION.into(),
        kind: Kind::Complex,
        elements: None,
        covers: None,
        simplices: Some(facets),
        order: Some(
            p.cover_pairs()
                .into_iter()
                .map(|(a, b)| [names[a].clone(), names[b].clone()])
                .collect(),
        ),
        generators: generator_docs(&names, &k.vertices),
        vertices: Some(names),
        cover: None,
    }
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn round_trip() {
        for (_, x) in corpus::named() {
            let doc = poset_document(&x);
            let text = to_json(&doc);
            let (_, back) = parse_space(&text).unwrap();
            let Space::Poset(y) = back else { panic!() };
            assert_eq!(y.poset(), x.poset());
            assert_eq!(y.group().order(), x.group().order());
            assert_eq!(y.orbits(), x.orbits());
        }
    }

    #[test]
    fn errors_point_at_lines() {
        let text = "{\n\"format_version\": \"1\",\n\"kind\": \"poset\",\n\"elements\": [\"a\"],\n\"covers\": [[\"a\", \"zz\"]]\n}";
        let e = parse_space(text).unwrap_err();
        assert!(e.to_string().contains("line 5"), "{e}");
        let e = parse_space("{ \"kind\": 3 ").unwrap_err();
        assert!(e.to_string().contains("line 1"), "{e}");
    }
}
