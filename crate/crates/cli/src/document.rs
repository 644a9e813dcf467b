//! The `gaingraph v1` text format.
//!
//! ```text
//! gaingraph v1
//! group mu 4
//! involution 1/2
//! vertices 3
//! edge 1 2 1/4
//! edge 2 3 0
//! ```
//!
//! Vertices are 1-based in files and 0-based in memory; the conversion
//! lives entirely in this module. Gains are always rational turns in
//! lowest terms (`0` for the identity), never complex decimals, so a
//! parse/serialize round trip is exact. Blank lines and `#` comments are
//! accepted on input; the serializer emits the canonical form above with
//! edges in index order.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use gaingraph::gains::{GainError, GroupFamily, GroupSpec, UnitGain};
use gaingraph::graph::{GainGraph, SimpleGraph};

#[derive(Debug, Error, PartialEq)]
pub enum DocumentError {
    #[error("line {line}: expected header 'gaingraph v1', found {found:?}")]
    BadHeader { line: usize, found: String },
    #[error("empty document: missing 'gaingraph v1' header")]
    MissingHeader,
    #[error("line {line}: unknown directive {directive:?}")]
    UnknownDirective { line: usize, directive: String },
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: bad fraction: {source}")]
    BadFraction { line: usize, source: GainError },
    #[error("line {line}: duplicate edge {i} {j}")]
    DuplicateEdge { line: usize, i: usize, j: usize },
    #[error("line {line}: loop at vertex {vertex}")]
    LoopEdge { line: usize, vertex: usize },
    #[error("line {line}: vertex {vertex} out of range 1..={vertices}")]
    VertexOutOfRange {
        line: usize,
        vertex: usize,
        vertices: usize,
    },
    #[error("line {line}: gain {gain} lies outside {family}")]
    GainOutsideFamily {
        line: usize,
        gain: UnitGain,
        family: GroupFamily,
    },
    #[error("line {line}: edge listed before group, involution and vertices are declared")]
    EdgeBeforeHeader { line: usize },
    #[error("line {line}: directive {directive:?} given twice")]
    RepeatedDirective { line: usize, directive: String },
    #[error("missing required directive {0:?}")]
    MissingDirective(&'static str),
    #[error("line {line}: invalid group spec: {source}")]
    InvalidSpec { line: usize, source: GainError },
}

/// In-memory form of a gain graph file: the group spec, the vertex count
/// and the edge records (0-based endpoints).
#[derive(Debug, Clone, PartialEq)]
pub struct GainGraphDocument {
    pub spec: GroupSpec,
    pub vertices: usize,
    pub edges: Vec<(usize, usize, UnitGain)>,
}

impl GainGraphDocument {
    pub fn from_gain_graph(phi: &GainGraph) -> Self {
        GainGraphDocument {
            spec: *phi.spec(),
            vertices: phi.graph().vertex_count(),
            edges: phi
                .graph()
                .edges()
                .iter()
                .zip(phi.gains())
                .map(|(&(lo, hi), &gain)| (lo, hi, gain))
                .collect(),
        }
    }

    /// Builds the validated gain graph. Documents produced by [`parse`]
    /// always convert cleanly; the error path covers hand-built values.
    pub fn to_gain_graph(&self) -> Result<GainGraph, gaingraph::graph::GraphError> {
        let pairs: Vec<(usize, usize)> = self.edges.iter().map(|&(i, j, _)| (i, j)).collect();
        let graph = SimpleGraph::new(self.vertices, &pairs)?;
        let gains = self.edges.iter().map(|&(_, _, g)| g).collect();
        GainGraph::new(graph, self.spec, gains)
    }

    /// Canonical text form; `parse` of the result reproduces the document.
    pub fn serialize(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(out, "gaingraph v1");
        let _ = writeln!(out, "group {}", self.spec.family);
        let _ = writeln!(out, "involution {}", self.spec.involution);
        let _ = writeln!(out, "vertices {}", self.vertices);
        for &(i, j, gain) in &self.edges {
            let _ = writeln!(out, "edge {} {} {}", i + 1, j + 1, gain);
        }
        out
    }
}

impl fmt::Display for GainGraphDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

fn parse_group(tokens: &[&str], line: usize) -> Result<GroupFamily, DocumentError> {
    match tokens {
        ["circle"] => Ok(GroupFamily::Circle),
        ["sign"] => Ok(GroupFamily::Sign),
        ["mu", n] => {
            let n: u32 = n.parse().map_err(|_| DocumentError::Malformed {
                line,
                reason: format!("root-of-unity order {n:?} is not a positive integer"),
            })?;
            Ok(GroupFamily::Mu(n))
        }
        _ => Err(DocumentError::Malformed {
            line,
            reason: format!("expected 'circle', 'sign' or 'mu N', found {:?}", tokens.join(" ")),
        }),
    }
}

/// Parses the `gaingraph v1` format with line-numbered diagnostics.
pub fn parse(text: &str) -> Result<GainGraphDocument, DocumentError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(idx, raw)| (idx + 1, raw.trim()))
        .filter(|(_, s)| !s.is_empty() && !s.starts_with('#'));

    match lines.next() {
        None => return Err(DocumentError::MissingHeader),
        Some((line, header)) if header != "gaingraph v1" => {
            return Err(DocumentError::BadHeader {
                line,
                found: header.to_string(),
            })
        }
        Some(_) => {}
    }

    let mut family: Option<GroupFamily> = None;
    let mut involution: Option<(usize, UnitGain)> = None;
    let mut vertices: Option<usize> = None;
    let mut edges: Vec<(usize, usize, UnitGain)> = Vec::new();

    for (line, content) in lines {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens[0] {
            "group" => {
                if family.is_some() {
                    return Err(DocumentError::RepeatedDirective {
                        line,
                        directive: "group".into(),
                    });
                }
                family = Some(parse_group(&tokens[1..], line)?);
            }
            "involution" => {
                if involution.is_some() {
                    return Err(DocumentError::RepeatedDirective {
                        line,
                        directive: "involution".into(),
                    });
                }
                let ["involution", value] = tokens.as_slice() else {
                    return Err(DocumentError::Malformed {
                        line,
                        reason: "expected one gain after 'involution'".into(),
                    });
                };
                let gain = UnitGain::from_str(value)
                    .map_err(|source| DocumentError::BadFraction { line, source })?;
                involution = Some((line, gain));
            }
            "vertices" => {
                if vertices.is_some() {
                    return Err(DocumentError::RepeatedDirective {
                        line,
                        directive: "vertices".into(),
                    });
                }
                let ["vertices", count] = tokens.as_slice() else {
                    return Err(DocumentError::Malformed {
                        line,
                        reason: "expected one count after 'vertices'".into(),
                    });
                };
                vertices = Some(count.parse().map_err(|_| DocumentError::Malformed {
                    line,
                    reason: format!("vertex count {count:?} is not a non-negative integer"),
                })?);
            }
            "edge" => {
                let (Some(family), Some(_), Some(n)) = (family, involution, vertices) else {
                    return Err(DocumentError::EdgeBeforeHeader { line });
                };
                let [i, j, gain] = tokens[1..] else {
                    return Err(DocumentError::Malformed {
                        line,
                        reason: "expected 'edge I J GAIN'".into(),
                    });
                };
                let parse_vertex = |t: &str| -> Result<usize, DocumentError> {
                    let v: usize = t.parse().map_err(|_| DocumentError::Malformed {
                        line,
                        reason: format!("vertex label {t:?} is not a positive integer"),
                    })?;
                    if v == 0 || v > n {
                        return Err(DocumentError::VertexOutOfRange {
                            line,
                            vertex: v,
                            vertices: n,
                        });
                    }
                    Ok(v)
                };
                let i = parse_vertex(i)?;
                let j = parse_vertex(j)?;
                if i == j {
                    return Err(DocumentError::LoopEdge { line, vertex: i });
                }
                let gain = UnitGain::from_str(gain)
                    .map_err(|source| DocumentError::BadFraction { line, source })?;
                if !family.contains(gain) {
                    return Err(DocumentError::GainOutsideFamily { line, gain, family });
                }
                let (lo, hi) = (i.min(j) - 1, i.max(j) - 1);
                if edges.iter().any(|&(a, b, _)| (a, b) == (lo, hi)) {
                    return Err(DocumentError::DuplicateEdge {
                        line,
                        i: lo + 1,
                        j: hi + 1,
                    });
                }
                edges.push((lo, hi, gain));
            }
            directive => {
                return Err(DocumentError::UnknownDirective {
                    line,
                    directive: directive.to_string(),
                })
            }
        }
    }

    let family = family.ok_or(DocumentError::MissingDirective("group"))?;
    let (involution_line, involution) =
        involution.ok_or(DocumentError::MissingDirective("involution"))?;
    let vertices = vertices.ok_or(DocumentError::MissingDirective("vertices"))?;

    let spec = GroupSpec::new(family, involution).map_err(|source| DocumentError::InvalidSpec {
        line: involution_line,
        source,
    })?;

    Ok(GainGraphDocument {
        spec,
        vertices,
        edges,
    })
}
