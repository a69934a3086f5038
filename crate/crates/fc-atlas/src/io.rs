//! File formats: plane-graph JSON, graph6, edge lists, DOT output.

use crate::embed::{build_plane_graph, EmbedError, PlaneGraph};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("json: {0}")]
    Json(String),
    #[error("line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
    #[error("graph6 byte {pos}: {msg}")]
    Graph6 { pos: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Embed(#[from] EmbedError),
}

#[derive(Serialize, Deserialize)]
struct PlaneDoc {
    n: usize,
    rotations: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

/// Parse and validate `{"n":…, "rotations":[[…]], "labels":…}`.
pub fn parse_plane_json(text: &str) -> Result<PlaneGraph, FormatError> {
    let doc: PlaneDoc =
        serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    if doc.rotations.len() != doc.n {
        return Err(FormatError::Invalid(format!(
            "n = {} but {} rotation lists given",
            doc.n,
            doc.rotations.len()
        )));
    }
    if let Some(labels) = &doc.labels {
        if labels.len() != doc.n {
            return Err(FormatError::Invalid(format!(
                "n = {} but {} labels given",
                doc.n,
                labels.len()
            )));
        }
    }
    let mut g = build_plane_graph(doc.rotations)?;
    g.set_labels(doc.labels);
    Ok(g)
}

pub fn plane_to_json(g: &PlaneGraph) -> String {
    let doc = PlaneDoc {
        n: g.vertex_count(),
        rotations: g.rotations().to_vec(),
        labels: g.labels().map(<[String]>::to_vec),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("plane graphs always serialize");
    s.push('\n');
    s
}

/// Decode one graph6 line into (n, edges).
pub fn parse_graph6(line: &str) -> Result<(usize, Vec<(usize, usize)>), FormatError> {
    let line = line.trim();
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(FormatError::Graph6 {
            pos: 0,
            msg: "empty input".into(),
        });
    }
    let (n, mut pos) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            return Err(FormatError::Graph6 {
                pos: 0,
                msg: "graphs with n > 258047 are not supported".into(),
            });
        }
        if bytes.len() < 4 {
            return Err(FormatError::Graph6 {
                pos: 0,
                msg: "truncated size field".into(),
            });
        }
        let mut n = 0usize;
        for (i, &b) in bytes[1..4].iter().enumerate() {
            if !(63..=126).contains(&b) {
                return Err(FormatError::Graph6 {
                    pos: 1 + i,
                    msg: format!("invalid size byte {b}"),
                });
            }
            n = (n << 6) | (b as usize - 63);
        }
        (n, 4)
    } else {
        if !(63..=126).contains(&bytes[0]) {
            return Err(FormatError::Graph6 {
                pos: 0,
                msg: format!("invalid size byte {}", bytes[0]),
            });
        }
        (bytes[0] as usize - 63, 1)
    };

    let nbits = n.saturating_sub(1) * n / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() - pos != nbytes {
        return Err(FormatError::Graph6 {
            pos,
            msg: format!(
                "expected {} data bytes for n = {n}, found {}",
                nbytes,
                bytes.len() - pos
            ),
        });
    }
    let mut edges = Vec::new();
    let mut bit = 0usize;
    let mut cur = 0u8;
    for j in 1..n {
        for i in 0..j {
            if bit.is_multiple_of(6) {
                let b = bytes[pos];
                if !(63..=126).contains(&b) {
                    return Err(FormatError::Graph6 {
                        pos,
                        msg: format!("invalid data byte {b}"),
                    });
                }
                cur = b - 63;
                pos += 1;
            }
            if cur & (1 << (5 - bit % 6)) != 0 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    Ok((n, edges))
}

pub fn to_graph6(n: usize, edges: &[(usize, usize)]) -> String {
    assert!(n <= 258047, "graph6 output limited to n <= 258047");
    let mut adj = vec![false; n * n];
    for &(u, v) in edges {
        adj[u * n + v] = true;
        adj[v * n + u] = true;
    }
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    }
    let mut cur = 0u8;
    let mut fill = 0u8;
    for j in 1..n {
        for i in 0..j {
            cur <<= 1;
            if adj[i * n + j] {
                cur |= 1;
            }
            fill += 1;
            if fill == 6 {
                out.push(cur + 63);
                cur = 0;
                fill = 0;
            }
        }
    }
    if fill > 0 {
        out.push((cur << (6 - fill)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ascii")
}

/// Parse whitespace-separated "u v" lines; n = max id + 1. Blank lines and
/// lines starting with '#' are skipped.
pub fn parse_edge_list(text: &str) -> Result<(usize, Vec<(usize, usize)>), FormatError> {
    let mut edges = Vec::new();
    let mut n = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let mut it = s.split_whitespace();
        let (a, b) = (it.next(), it.next());
        if it.next().is_some() {
            return Err(FormatError::EdgeList {
                line,
                msg: "expected exactly two vertex ids".into(),
            });
        }
        match (a, b) {
            (Some(a), Some(b)) => {
                let u: usize = a.parse().map_err(|_| FormatError::EdgeList {
                    line,
                    msg: format!("bad vertex id {a:?}"),
                })?;
                let v: usize = b.parse().map_err(|_| FormatError::EdgeList {
                    line,
                    msg: format!("bad vertex id {b:?}"),
                })?;
                n = n.max(u + 1).max(v + 1);
                edges.push((u, v));
            }
            _ => {
                return Err(FormatError::EdgeList {
                    line,
                    msg: "expected exactly two vertex ids".into(),
                })
            }
        }
    }
    Ok((n, edges))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbstractFormat {
    Graph6,
    EdgeList,
}

/// Heuristic: a line of two integers is an edge list; otherwise graph6.
/// '#' comments only occur in edge lists ('#' is not a graph6 byte), so
/// they are skipped before probing.
pub fn detect_abstract_format(text: &str) -> AbstractFormat {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    let toks: Vec<&str> = first.split_whitespace().collect();
    if toks.len() == 2 && toks.iter().all(|t| t.parse::<usize>().is_ok()) {
        AbstractFormat::EdgeList
    } else {
        AbstractFormat::Graph6
    }
}

pub fn parse_abstract(text: &str) -> Result<(usize, Vec<(usize, usize)>), FormatError> {
    match detect_abstract_format(text) {
        AbstractFormat::EdgeList => parse_edge_list(text),
        AbstractFormat::Graph6 => {
            let line = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .ok_or(FormatError::Graph6 {
                    pos: 0,
                    msg: "empty input".into(),
                })?;
            parse_graph6(line)
        }
    }
}

/// Undirected DOT text; neighbor order in the plane-graph variant follows
/// the rotation system so external layouts can respect it.
pub fn to_dot(n: usize, edges: &[(usize, usize)], labels: Option<&[String]>) -> String {
    let mut s = String::from("graph {\n");
    if let Some(labels) = labels {
        for (v, l) in labels.iter().enumerate() {
            s.push_str(&format!("  {v} [label=\"{}\"];\n", l.replace('"', "\\\"")));
        }
    } else {
        for v in 0..n {
            s.push_str(&format!("  {v};\n"));
        }
    }
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    for (u, v) in sorted {
        s.push_str(&format!("  {u} -- {v};\n"));
    }
    s.push_str("}\n");
    s
}

pub fn plane_to_dot(g: &PlaneGraph) -> String {
    to_dot(g.vertex_count(), &g.edges(), g.labels())
}
