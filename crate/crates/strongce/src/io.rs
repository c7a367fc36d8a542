//! Text file formats: graphs, color lists, and colorings. All three are
//! line-oriented decimal formats with `#` comments, and all three satisfy
//! parse(serialize(x)) = x byte-for-byte on serializer output.

use crate::coloring::{ColorId, ListAssignment};
use crate::graph::MultiGraph;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("{0}")]
    Structure(String),
}

fn line_err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Line {
        line,
        msg: msg.into(),
    }
}

/// Content lines with their 1-based line numbers; blank lines and `#`
/// comments are skipped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

/// A graph file: header `strongce v1`, then `n <vertex_count>`, then one
/// `u v` pair per line. Edge ids are assigned in line order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<GraphFile, ParseError> {
        let mut lines = content_lines(text);
        match lines.next() {
            Some((_, "strongce v1")) => {}
            Some((ln, other)) => {
                return Err(line_err(ln, format!("expected `strongce v1`, got `{other}`")))
            }
            None => return Err(ParseError::Structure("empty graph file".into())),
        }
        let vertex_count = match lines.next() {
            Some((ln, l)) => {
                let mut parts = l.split_whitespace();
                if parts.next() != Some("n") {
                    return Err(line_err(ln, "expected `n <vertex_count>`"));
                }
                let count = parts
                    .next()
                    .ok_or_else(|| line_err(ln, "missing vertex count"))?
                    .parse::<usize>()
                    .map_err(|e| line_err(ln, format!("bad vertex count: {e}")))?;
                if parts.next().is_some() {
                    return Err(line_err(ln, "trailing tokens after vertex count"));
                }
                count
            }
            None => return Err(ParseError::Structure("missing `n <vertex_count>` line".into())),
        };
        let mut edges = Vec::new();
        for (ln, l) in lines {
            let mut parts = l.split_whitespace();
            let u = parts
                .next()
                .unwrap()
                .parse::<usize>()
                .map_err(|e| line_err(ln, format!("bad vertex id: {e}")))?;
            let v = parts
                .next()
                .ok_or_else(|| line_err(ln, "expected `u v`"))?
                .parse::<usize>()
                .map_err(|e| line_err(ln, format!("bad vertex id: {e}")))?;
            if parts.next().is_some() {
                return Err(line_err(ln, "trailing tokens after edge"));
            }
            if u >= vertex_count || v >= vertex_count {
                return Err(line_err(
                    ln,
                    format!("edge ({u}, {v}) out of range for {vertex_count} vertices"),
                ));
            }
            edges.push((u, v));
        }
        Ok(GraphFile {
            vertex_count,
            edges,
        })
    }

    pub fn serialize(&self) -> String {
        let mut out = String::from("strongce v1\n");
        out.push_str(&format!("n {}\n", self.vertex_count));
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn to_graph(&self) -> Result<MultiGraph, ParseError> {
        MultiGraph::build(self.vertex_count, &self.edges)
            .map_err(|e| ParseError::Structure(e.to_string()))
    }

    pub fn from_graph(g: &MultiGraph) -> GraphFile {
        GraphFile {
            vertex_count: g.vertex_count(),
            edges: g.edges().to_vec(),
        }
    }
}

/// Lists file: one `<edge_id> : <c1> <c2> ...` line per edge, colors
/// strictly increasing, every edge id in 0..edge_count present exactly once.
pub fn parse_lists(text: &str, edge_count: usize) -> Result<ListAssignment, ParseError> {
    let mut lists: Vec<Option<Vec<ColorId>>> = vec![None; edge_count];
    for (ln, l) in content_lines(text) {
        let (id_part, colors_part) = l
            .split_once(':')
            .ok_or_else(|| line_err(ln, "expected `<edge_id> : <colors>`"))?;
        let e = id_part
            .trim()
            .parse::<usize>()
            .map_err(|err| line_err(ln, format!("bad edge id: {err}")))?;
        if e >= edge_count {
            return Err(line_err(
                ln,
                format!("edge id {e} out of range for {edge_count} edges"),
            ));
        }
        if lists[e].is_some() {
            return Err(line_err(ln, format!("duplicate list for edge {e}")));
        }
        let mut colors = Vec::new();
        for tok in colors_part.split_whitespace() {
            let c = tok
                .parse::<ColorId>()
                .map_err(|err| line_err(ln, format!("bad color: {err}")))?;
            if let Some(&last) = colors.last() {
                if c <= last {
                    return Err(line_err(
                        ln,
                        format!("colors must be strictly increasing ({last} then {c})"),
                    ));
                }
            }
            colors.push(c);
        }
        if colors.is_empty() {
            return Err(line_err(ln, format!("empty list for edge {e}")));
        }
        lists[e] = Some(colors);
    }
    let lists: Vec<Vec<ColorId>> = lists
        .into_iter()
        .enumerate()
        .map(|(e, l)| l.ok_or_else(|| ParseError::Structure(format!("missing list for edge {e}"))))
        .collect::<Result<_, _>>()?;
    ListAssignment::new(lists).map_err(|e| ParseError::Structure(e.to_string()))
}

pub fn serialize_lists(lists: &ListAssignment) -> String {
    let mut out = String::new();
    for e in 0..lists.edge_count() {
        let colors: Vec<String> = lists.list(e).iter().map(|c| c.to_string()).collect();
        out.push_str(&format!("{e} : {}\n", colors.join(" ")));
    }
    out
}

/// Coloring file: `<edge_id> <color>` lines sorted by edge id, every edge
/// present exactly once.
pub fn parse_coloring(text: &str, edge_count: usize) -> Result<Vec<ColorId>, ParseError> {
    let mut colors: Vec<Option<ColorId>> = vec![None; edge_count];
    let mut last_id: Option<usize> = None;
    for (ln, l) in content_lines(text) {
        let mut parts = l.split_whitespace();
        let e = parts
            .next()
            .unwrap()
            .parse::<usize>()
            .map_err(|err| line_err(ln, format!("bad edge id: {err}")))?;
        let c = parts
            .next()
            .ok_or_else(|| line_err(ln, "expected `<edge_id> <color>`"))?
            .parse::<ColorId>()
            .map_err(|err| line_err(ln, format!("bad color: {err}")))?;
        if parts.next().is_some() {
            return Err(line_err(ln, "trailing tokens"));
        }
        if e >= edge_count {
            return Err(line_err(
                ln,
                format!("edge id {e} out of range for {edge_count} edges"),
            ));
        }
        if let Some(prev) = last_id {
            if e <= prev {
                return Err(line_err(ln, "edge ids must be sorted and unique"));
            }
        }
        last_id = Some(e);
        colors[e] = Some(c);
    }
    colors
        .into_iter()
        .enumerate()
        .map(|(e, c)| c.ok_or_else(|| ParseError::Structure(format!("missing color for edge {e}"))))
        .collect()
}

pub fn serialize_coloring(colors: &[ColorId]) -> String {
    let mut out = String::new();
    for (e, c) in colors.iter().enumerate() {
        out.push_str(&format!("{e} {c}\n"));
    }
    out
}
