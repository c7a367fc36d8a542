//! Color lists, partial colorings with available-color computation, and the
//! authoritative strong-coloring verifier.

use crate::graph::{ConflictGraph, EdgeId, MultiGraph};
use thiserror::Error;

pub type ColorId = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("edge {0} is already colored")]
    AlreadyColored(EdgeId),
    #[error("edge {0} is not colored")]
    NotColored(EdgeId),
    #[error("color {color} is not in the list of edge {edge}")]
    ColorNotInList { edge: EdgeId, color: ColorId },
    #[error("color {color} on edge {edge} clashes with edge {clashing}")]
    Conflict {
        edge: EdgeId,
        clashing: EdgeId,
        color: ColorId,
    },
    #[error("list assignment covers {lists} edges but the graph has {edges}")]
    WrongEdgeCount { lists: usize, edges: usize },
    #[error("duplicate color {color} in the list of edge {edge}")]
    DuplicateColor { edge: EdgeId, color: ColorId },
}

/// Per-edge ordered color lists. Order matters: greedy takes the first
/// available color, which keeps runs reproducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListAssignment {
    lists: Vec<Vec<ColorId>>,
}

impl ListAssignment {
    pub fn new(lists: Vec<Vec<ColorId>>) -> Result<Self, ColoringError> {
        for (edge, list) in lists.iter().enumerate() {
            let mut seen = std::collections::HashSet::new();
            for &c in list {
                if !seen.insert(c) {
                    return Err(ColoringError::DuplicateColor { edge, color: c });
                }
            }
        }
        Ok(ListAssignment { lists })
    }

    /// Identical list {0..k-1} for every edge.
    pub fn uniform(edge_count: usize, k: u32) -> Self {
        ListAssignment {
            lists: vec![(0..k).collect(); edge_count],
        }
    }

    pub fn list(&self, e: EdgeId) -> &[ColorId] {
        &self.lists[e]
    }

    pub fn lists(&self) -> &[Vec<ColorId>] {
        &self.lists
    }

    pub fn edge_count(&self) -> usize {
        self.lists.len()
    }

    pub fn min_list_len(&self) -> usize {
        self.lists.iter().map(|l| l.len()).min().unwrap_or(0)
    }

    pub fn matches(&self, g: &MultiGraph) -> Result<(), ColoringError> {
        if self.lists.len() != g.edge_count() {
            return Err(ColoringError::WrongEdgeCount {
                lists: self.lists.len(),
                edges: g.edge_count(),
            });
        }
        Ok(())
    }
}

/// An evolving partial strong coloring. Single-writer: it may move between
/// threads but is never shared mutably. The invariant that no two edges at
/// distance <= 1 carry the same color is maintained by `assign`.
#[derive(Debug, Clone)]
pub struct PartialColoring<'a> {
    graph: &'a MultiGraph,
    conflicts: &'a ConflictGraph,
    lists: &'a ListAssignment,
    colors: Vec<Option<ColorId>>,
}

impl<'a> PartialColoring<'a> {
    pub fn new(
        graph: &'a MultiGraph,
        conflicts: &'a ConflictGraph,
        lists: &'a ListAssignment,
    ) -> Result<Self, ColoringError> {
        lists.matches(graph)?;
        Ok(PartialColoring {
            graph,
            conflicts,
            lists,
            colors: vec![None; graph.edge_count()],
        })
    }

    pub fn graph(&self) -> &'a MultiGraph {
        self.graph
    }

    pub fn conflicts(&self) -> &'a ConflictGraph {
        self.conflicts
    }

    pub fn lists(&self) -> &'a ListAssignment {
        self.lists
    }

    pub fn color(&self, e: EdgeId) -> Option<ColorId> {
        self.colors[e]
    }

    pub fn is_colored(&self, e: EdgeId) -> bool {
        self.colors[e].is_some()
    }

    pub fn colors(&self) -> &[Option<ColorId>] {
        &self.colors
    }

    pub fn uncolored_edges(&self) -> Vec<EdgeId> {
        (0..self.colors.len())
            .filter(|&e| self.colors[e].is_none())
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        self.colors.iter().all(|c| c.is_some())
    }

    /// L'(e): the edge's list minus colors used in N(e), in list order.
    pub fn available_colors(&self, e: EdgeId) -> Result<Vec<ColorId>, ColoringError> {
        if self.is_colored(e) {
            return Err(ColoringError::AlreadyColored(e));
        }
        Ok(self.available_colors_unchecked(e))
    }

    /// As `available_colors` but usable on colored edges too (the edge's own
    /// color is not excluded).
    pub fn available_colors_unchecked(&self, e: EdgeId) -> Vec<ColorId> {
        let used: std::collections::HashSet<ColorId> = self.conflicts.adj[e]
            .iter()
            .filter_map(|&f| self.colors[f])
            .collect();
        self.lists
            .list(e)
            .iter()
            .copied()
            .filter(|c| !used.contains(c))
            .collect()
    }

    /// |N'(e)|: number of colored edges in the neighborhood of e.
    pub fn colored_neighborhood_size(&self, e: EdgeId) -> usize {
        self.conflicts.adj[e]
            .iter()
            .filter(|&&f| self.colors[f].is_some())
            .count()
    }

    /// Assigns `c` to `e`; `c` must be available. On a clash the error names
    /// the clashing edge.
    pub fn assign(&mut self, e: EdgeId, c: ColorId) -> Result<(), ColoringError> {
        if self.is_colored(e) {
            return Err(ColoringError::AlreadyColored(e));
        }
        if !self.lists.list(e).contains(&c) {
            return Err(ColoringError::ColorNotInList { edge: e, color: c });
        }
        if let Some(&clashing) = self.conflicts.adj[e]
            .iter()
            .find(|&&f| self.colors[f] == Some(c))
        {
            return Err(ColoringError::Conflict {
                edge: e,
                clashing,
                color: c,
            });
        }
        self.colors[e] = Some(c);
        Ok(())
    }

    pub fn unassign(&mut self, e: EdgeId) -> Result<ColorId, ColoringError> {
        match self.colors[e].take() {
            Some(c) => Ok(c),
            None => Err(ColoringError::NotColored(e)),
        }
    }

    /// Extracts the full coloring; panics if any edge is uncolored.
    pub fn into_complete(self) -> Vec<ColorId> {
        self.colors
            .into_iter()
            .map(|c| c.expect("coloring is not complete"))
            .collect()
    }
}

/// Verifier outcome: the lexicographically first violation (by edge-id pair)
/// or Ok.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verification {
    Ok,
    Uncolored {
        edge: EdgeId,
    },
    ListViolation {
        edge: EdgeId,
        color: ColorId,
    },
    Conflict {
        e1: EdgeId,
        e2: EdgeId,
        color: ColorId,
    },
}

impl Verification {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verification::Ok)
    }
}

/// Checks that `coloring` is a strong edge-coloring of `g` drawing each
/// color from its edge's list. Edge distance is recomputed from the graph,
/// independently of any conflict-graph cache.
pub fn verify_strong(g: &MultiGraph, lists: &ListAssignment, coloring: &[Option<ColorId>]) -> Verification {
    for e in 0..g.edge_count() {
        let c = match coloring.get(e).copied().flatten() {
            Some(c) => c,
            None => return Verification::Uncolored { edge: e },
        };
        if !lists.list(e).contains(&c) {
            return Verification::ListViolation { edge: e, color: c };
        }
    }
    for e1 in 0..g.edge_count() {
        for f in g.neighborhood(e1) {
            if f > e1 && coloring[e1] == coloring[f] {
                return Verification::Conflict {
                    e1,
                    e2: f,
                    color: coloring[e1].unwrap(),
                };
            }
        }
    }
    Verification::Ok
}

/// Convenience wrapper for complete colorings given as plain color vectors.
pub fn verify_strong_complete(
    g: &MultiGraph,
    lists: &ListAssignment,
    coloring: &[ColorId],
) -> Verification {
    let wrapped: Vec<Option<ColorId>> = coloring.iter().map(|&c| Some(c)).collect();
    verify_strong(g, lists, &wrapped)
}
