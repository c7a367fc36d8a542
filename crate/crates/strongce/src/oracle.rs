//! Ground-truth solvers for small instances: exact strong chromatic index
//! and exact list-colorability, used as the independent oracle by the rest
//! of the test suite. Everything runs on the conflict graph, where a strong
//! edge-coloring is just a proper vertex coloring.

use crate::coloring::{ColorId, ListAssignment};
use crate::graph::{EdgeId, MultiGraph};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("search limit exceeded ({0} nodes)")]
    LimitExceeded(u64),
    #[error("graph has no edges to color")]
    NoEdges,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Heuristic {
    /// Most-constrained-first by saturation (distinct neighbor colors).
    SaturationDegree,
    /// Fixed edge-id order.
    Static,
}

#[derive(Debug, Clone, Copy)]
pub struct SearchConfig {
    pub node_limit: u64,
    pub heuristic: Heuristic,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_limit: 50_000_000,
            heuristic: Heuristic::SaturationDegree,
        }
    }
}

struct Search<'a> {
    adj: &'a [Vec<EdgeId>],
    cfg: SearchConfig,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn tick(&mut self) -> Result<(), OracleError> {
        self.nodes += 1;
        if self.nodes > self.cfg.node_limit {
            return Err(OracleError::LimitExceeded(self.cfg.node_limit));
        }
        Ok(())
    }
}

fn pick_vertex(
    adj: &[Vec<EdgeId>],
    colors: &[Option<ColorId>],
    heuristic: Heuristic,
) -> Option<usize> {
    let uncolored: Vec<usize> = (0..adj.len()).filter(|&v| colors[v].is_none()).collect();
    if uncolored.is_empty() {
        return None;
    }
    match heuristic {
        Heuristic::Static => uncolored.first().copied(),
        Heuristic::SaturationDegree => uncolored.into_iter().max_by_key(|&v| {
            let mut seen: Vec<ColorId> = adj[v].iter().filter_map(|&w| colors[w]).collect();
            seen.sort_unstable();
            seen.dedup();
            // Saturation first, then degree, then smallest id.
            (seen.len(), adj[v].len(), std::cmp::Reverse(v))
        }),
    }
}

/// Exact decision: is the conflict graph of `g` properly k-colorable?
/// Color symmetry is broken by only allowing one fresh color beyond those
/// already in use.
pub fn is_strongly_k_colorable(
    g: &MultiGraph,
    k: u32,
    cfg: SearchConfig,
) -> Result<bool, OracleError> {
    let adj = g.conflict_graph().adj;
    let mut colors: Vec<Option<ColorId>> = vec![None; adj.len()];
    let mut search = Search {
        adj: &adj,
        cfg,
        nodes: 0,
    };
    k_color_rec(&mut search, &mut colors, k, 0)
}

fn k_color_rec(
    s: &mut Search,
    colors: &mut Vec<Option<ColorId>>,
    k: u32,
    max_used: u32,
) -> Result<bool, OracleError> {
    s.tick()?;
    let v = match pick_vertex(s.adj, colors, s.cfg.heuristic) {
        Some(v) => v,
        None => return Ok(true),
    };
    // Existing colors plus at most one fresh one.
    let cap = (max_used + 1).min(k);
    'colors: for c in 0..cap {
        for &w in &s.adj[v] {
            if colors[w] == Some(c) {
                continue 'colors;
            }
        }
        colors[v] = Some(c);
        if k_color_rec(s, colors, k, max_used.max(c + 1))? {
            return Ok(true);
        }
        colors[v] = None;
    }
    Ok(false)
}

/// Greedy clique on the conflict graph (descending degree seed); a clique
/// of size q forces at least q colors.
fn clique_lower_bound(adj: &[Vec<EdgeId>]) -> usize {
    let mut best = 0;
    let mut order: Vec<usize> = (0..adj.len()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(adj[v].len()));
    for &seed in order.iter().take(8) {
        let mut clique = vec![seed];
        for &v in &order {
            if v != seed && clique.iter().all(|&u| adj[u].binary_search(&v).is_ok()) {
                clique.push(v);
            }
        }
        best = best.max(clique.len());
    }
    best
}

/// Greedy proper coloring of the conflict graph; an upper bound.
fn greedy_upper_bound(adj: &[Vec<EdgeId>]) -> usize {
    let mut colors: Vec<Option<ColorId>> = vec![None; adj.len()];
    let mut used = 0u32;
    for v in 0..adj.len() {
        let taken: Vec<ColorId> = adj[v].iter().filter_map(|&w| colors[w]).collect();
        let c = (0..).find(|c| !taken.contains(c)).unwrap();
        colors[v] = Some(c);
        used = used.max(c + 1);
    }
    used as usize
}

/// Exact strong chromatic index via branch and bound between the clique
/// lower bound and the greedy upper bound.
pub fn exact_strong_chromatic_index(g: &MultiGraph, cfg: SearchConfig) -> Result<u32, OracleError> {
    if g.edge_count() == 0 {
        return Err(OracleError::NoEdges);
    }
    let adj = g.conflict_graph().adj;
    let lo = clique_lower_bound(&adj) as u32;
    let hi = greedy_upper_bound(&adj) as u32;
    for k in lo..=hi {
        if is_strongly_k_colorable(g, k, cfg)? {
            return Ok(k);
        }
    }
    unreachable!("greedy upper bound must be colorable");
}

/// Exact list coloring: a complete strong coloring with c(e) in L(e), via
/// backtracking with most-constrained-first ordering and forward checking.
pub fn list_colorable(
    g: &MultiGraph,
    lists: &ListAssignment,
    cfg: SearchConfig,
) -> Result<Option<Vec<ColorId>>, OracleError> {
    let adj = g.conflict_graph().adj;
    list_colorable_on(&adj, lists.lists(), cfg)
}

/// As `list_colorable` but on an explicit conflict adjacency; also used by
/// the engine's fallback.
pub fn list_colorable_on(
    adj: &[Vec<EdgeId>],
    lists: &[Vec<ColorId>],
    cfg: SearchConfig,
) -> Result<Option<Vec<ColorId>>, OracleError> {
    assert_eq!(adj.len(), lists.len());
    let mut colors: Vec<Option<ColorId>> = vec![None; adj.len()];
    let mut search = Search {
        adj,
        cfg,
        nodes: 0,
    };
    if list_color_rec(&mut search, lists, &mut colors)? {
        Ok(Some(colors.into_iter().map(|c| c.unwrap()).collect()))
    } else {
        Ok(None)
    }
}

fn available(adj: &[Vec<EdgeId>], lists: &[Vec<ColorId>], colors: &[Option<ColorId>], v: usize) -> Vec<ColorId> {
    lists[v]
        .iter()
        .copied()
        .filter(|&c| adj[v].iter().all(|&w| colors[w] != Some(c)))
        .collect()
}

fn list_color_rec(
    s: &mut Search,
    lists: &[Vec<ColorId>],
    colors: &mut Vec<Option<ColorId>>,
) -> Result<bool, OracleError> {
    s.tick()?;
    // Most-constrained uncolored vertex; forward check: an empty list of an
    // uncolored vertex prunes immediately.
    let mut pick: Option<(usize, Vec<ColorId>)> = None;
    for v in 0..colors.len() {
        if colors[v].is_some() {
            continue;
        }
        let avail = available(s.adj, lists, colors, v);
        if avail.is_empty() {
            return Ok(false);
        }
        let better = match &pick {
            None => true,
            Some((_, best)) => avail.len() < best.len(),
        };
        if better {
            pick = Some((v, avail));
        }
    }
    let (v, avail) = match pick {
        Some(p) => p,
        None => return Ok(true),
    };
    for c in avail {
        colors[v] = Some(c);
        if list_color_rec(s, lists, colors)? {
            return Ok(true);
        }
        colors[v] = None;
    }
    Ok(false)
}
