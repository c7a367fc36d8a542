//! Distance classes, compatible edge orderings and the greedy coloring
//! procedures that color everything except a small core around a vertex or
//! cycle.
//!
//! The counting guarantee: with maximum degree 4, when an edge e is colored
//! in an order compatible with the center, at least four edges of N(e) are
//! still uncolored, so |N'(e)| <= 20 and a 21-color list always has a color
//! left. With up to four precolored edges (one per star around the center's
//! neighbors, pairwise far apart) the bound weakens to 21, which 22-color
//! lists absorb.

use crate::coloring::{ColorId, ColoringError, ListAssignment, PartialColoring};
use crate::graph::{ConflictGraph, EdgeId, MultiGraph, VertexId};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GreedyError {
    #[error("greedy coloring stuck at edge {edge}: no available color")]
    Stuck { edge: EdgeId },
    #[error(
        "internal guarantee violated at edge {edge}: {colored_neighbors} colored neighbors exceeds bound {bound}"
    )]
    GuaranteeViolated {
        edge: EdgeId,
        colored_neighbors: usize,
        bound: usize,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

/// Center of a compatible ordering: a vertex or a cycle's edge set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderCenter {
    Vertex(VertexId),
    Cycle(Vec<EdgeId>),
}

/// Edges to be colored farthest-first. Core edges (incident to the center
/// vertex, or on the center cycle) are absent from the order.
#[derive(Debug, Clone)]
pub struct CompatibleOrder {
    pub center: OrderCenter,
    pub order: Vec<EdgeId>,
    /// Distance class per ordered edge, parallel to `order`.
    pub classes: Vec<usize>,
}

const FAR: usize = usize::MAX;

fn build_order(
    g: &MultiGraph,
    center: OrderCenter,
    vertex_dist: &[Option<usize>],
    excluded: impl Fn(EdgeId) -> bool,
) -> CompatibleOrder {
    let dist_of = |e: EdgeId| -> usize {
        let (u, v) = g.endpoints(e);
        let du = vertex_dist[u].unwrap_or(FAR);
        let dv = vertex_dist[v].unwrap_or(FAR);
        du.min(dv)
    };
    let mut entries: Vec<(usize, EdgeId)> = (0..g.edge_count())
        .filter(|&e| !excluded(e))
        .map(|e| (dist_of(e), e))
        .collect();
    // Farthest first; ties broken by ascending edge id.
    entries.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    CompatibleOrder {
        center,
        order: entries.iter().map(|&(_, e)| e).collect(),
        classes: entries.iter().map(|&(d, _)| d).collect(),
    }
}

/// Edges not incident with `v`, ordered farthest-from-v first.
pub fn compatible_order_vertex(g: &MultiGraph, v: VertexId) -> CompatibleOrder {
    let dist = g.vertex_distances(v);
    let incident: Vec<EdgeId> = g.incident_edges(v).to_vec();
    build_order(g, OrderCenter::Vertex(v), &dist, |e| incident.contains(&e))
}

/// Edges not on the cycle `c`, ordered farthest-from-the-cycle first.
/// Pendant edges of the cycle sit in class 0 at the end of the order.
pub fn compatible_order_cycle(g: &MultiGraph, c: &[EdgeId]) -> CompatibleOrder {
    let mut cycle_vertices: Vec<VertexId> = c
        .iter()
        .flat_map(|&e| {
            let (u, v) = g.endpoints(e);
            [u, v]
        })
        .collect();
    cycle_vertices.sort_unstable();
    cycle_vertices.dedup();
    let dist = g.multi_source_distances(&cycle_vertices);
    let cycle_set: Vec<EdgeId> = c.to_vec();
    build_order(g, OrderCenter::Cycle(c.to_vec()), &dist, |e| {
        cycle_set.contains(&e)
    })
}

/// Statistics from an instrumented greedy run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GreedyStats {
    pub colored: usize,
    /// Largest |N'(e)| observed at the moment an edge was colored.
    pub max_colored_neighborhood: usize,
}

/// Colors each edge of `order` with the first available color from its list.
/// If `bound` is set, |N'(e)| is checked at every step; exceeding it is an
/// algorithm bug, reported as `GuaranteeViolated` rather than `Stuck`.
pub fn greedy_color(
    pc: &mut PartialColoring,
    order: &[EdgeId],
    bound: Option<usize>,
) -> Result<GreedyStats, GreedyError> {
    let mut stats = GreedyStats::default();
    for &e in order {
        if pc.is_colored(e) {
            continue; // precolored edges keep their color
        }
        let colored_neighbors = pc.colored_neighborhood_size(e);
        stats.max_colored_neighborhood = stats.max_colored_neighborhood.max(colored_neighbors);
        if let Some(b) = bound {
            if colored_neighbors > b {
                return Err(GreedyError::GuaranteeViolated {
                    edge: e,
                    colored_neighbors,
                    bound: b,
                });
            }
        }
        let avail = pc.available_colors(e)?;
        match avail.first() {
            Some(&c) => pc.assign(e, c)?,
            None => return Err(GreedyError::Stuck { edge: e }),
        }
        stats.colored += 1;
    }
    Ok(stats)
}

fn check_degree_and_lists(
    g: &MultiGraph,
    lists: &ListAssignment,
    min_list: usize,
) -> Result<(), GreedyError> {
    let max_deg = g
        .max_degree()
        .map_err(|e| GreedyError::Precondition(e.to_string()))?;
    if max_deg > 4 {
        return Err(GreedyError::Precondition(format!(
            "maximum degree {max_deg} exceeds 4"
        )));
    }
    if lists.min_list_len() < min_list {
        return Err(GreedyError::Precondition(format!(
            "every list must have at least {min_list} colors (smallest has {})",
            lists.min_list_len()
        )));
    }
    lists
        .matches(g)
        .map_err(|e| GreedyError::Precondition(e.to_string()))?;
    Ok(())
}

/// Colors every edge not incident with `v` greedily in a compatible order.
/// Needs maximum degree <= 4 and 21-color lists; success is guaranteed and
/// the instrumented bound |N'(e)| <= 20 is enforced at every step.
pub fn color_all_but_vertex<'a>(
    g: &'a MultiGraph,
    conflicts: &'a ConflictGraph,
    lists: &'a ListAssignment,
    v: VertexId,
) -> Result<PartialColoring<'a>, GreedyError> {
    check_degree_and_lists(g, lists, 21)?;
    let mut pc = PartialColoring::new(g, conflicts, lists)?;
    let order = compatible_order_vertex(g, v);
    greedy_color(&mut pc, &order.order, Some(20))?;
    Ok(pc)
}

/// Colors every edge off the cycle `c` greedily in a compatible order.
/// Needs maximum degree <= 4, 21-color lists, and |c| >= 3.
pub fn color_all_but_cycle<'a>(
    g: &'a MultiGraph,
    conflicts: &'a ConflictGraph,
    lists: &'a ListAssignment,
    c: &[EdgeId],
) -> Result<PartialColoring<'a>, GreedyError> {
    check_degree_and_lists(g, lists, 21)?;
    if c.len() < 3 {
        return Err(GreedyError::Precondition(format!(
            "cycle must have length >= 3, got {}",
            c.len()
        )));
    }
    let mut pc = PartialColoring::new(g, conflicts, lists)?;
    let order = compatible_order_cycle(g, c);
    greedy_color(&mut pc, &order.order, Some(20))?;
    Ok(pc)
}

/// Internal engine: colors all edges not incident with `v` after applying
/// `precolored` (up to four edge/color pairs, pairwise compatible, at most
/// one per star around each neighbor of v). Bound 21 when any precoloring
/// is present, 20 otherwise.
pub fn color_all_but_vertex_precolored<'a>(
    g: &'a MultiGraph,
    conflicts: &'a ConflictGraph,
    lists: &'a ListAssignment,
    v: VertexId,
    precolored: &[(EdgeId, ColorId)],
) -> Result<PartialColoring<'a>, GreedyError> {
    let min_list = if precolored.is_empty() { 21 } else { 22 };
    check_degree_and_lists(g, lists, min_list)?;
    if precolored.len() > 4 {
        return Err(GreedyError::Precondition(format!(
            "at most 4 precolored edges allowed, got {}",
            precolored.len()
        )));
    }
    let mut pc = PartialColoring::new(g, conflicts, lists)?;
    for &(e, c) in precolored {
        if g.incident_edges(v).contains(&e) {
            return Err(GreedyError::Precondition(format!(
                "precolored edge {e} is incident with the center vertex {v}"
            )));
        }
        pc.assign(e, c)
            .map_err(|err| GreedyError::Precondition(err.to_string()))?;
    }
    let order = compatible_order_vertex(g, v);
    let bound = if precolored.is_empty() { 20 } else { 21 };
    greedy_color(&mut pc, &order.order, Some(bound))?;
    Ok(pc)
}

/// The Claim 2 procedure: `g` must be simple, 4-regular, girth >= 6, with
/// 22-color lists, and `precolored` must hold exactly one edge from each
/// A_i (the three edges adjacent to the i-th edge at `v` but not incident
/// with v), with pairwise non-clashing colors from the respective lists.
/// Colors everything except the four edges at `v`, with |N'(e)| <= 21 at
/// every step.
pub fn color_with_precolored<'a>(
    g: &'a MultiGraph,
    conflicts: &'a ConflictGraph,
    lists: &'a ListAssignment,
    v: VertexId,
    precolored: &[(EdgeId, ColorId)],
) -> Result<PartialColoring<'a>, GreedyError> {
    if precolored.len() != 4 {
        return Err(GreedyError::Precondition(format!(
            "exactly 4 precolored edges required, got {}",
            precolored.len()
        )));
    }
    if g.degree(v) != 4 {
        return Err(GreedyError::Precondition(format!(
            "center vertex {v} must have degree 4"
        )));
    }
    // One precolored edge per A_i: adjacent to the i-th edge at v, not
    // incident with v.
    let mut claimed = vec![false; 4];
    for &(e, _) in precolored {
        let (a, b) = g.endpoints(e);
        if a == v || b == v {
            return Err(GreedyError::Precondition(format!(
                "precolored edge {e} is incident with the center vertex {v}"
            )));
        }
        let star = g.incident_edges(v).iter().position(|&ei| {
            let u = g.other_endpoint(ei, v);
            a == u || b == u
        });
        match star {
            Some(i) if !claimed[i] => claimed[i] = true,
            Some(i) => {
                return Err(GreedyError::Precondition(format!(
                    "two precolored edges belong to A_{}",
                    i + 1
                )))
            }
            None => {
                return Err(GreedyError::Precondition(format!(
                    "precolored edge {e} is not adjacent to any edge at {v}"
                )))
            }
        }
    }
    color_all_but_vertex_precolored(g, conflicts, lists, v, precolored)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify_strong;

    fn path(n: usize) -> MultiGraph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        MultiGraph::build(n, &edges).unwrap()
    }

    #[test]
    fn star_center_gives_empty_order() {
        let g = MultiGraph::build(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let o = compatible_order_vertex(&g, 0);
        assert!(o.order.is_empty());
    }

    #[test]
    fn path_center_keeps_far_edge_only() {
        let g = path(4); // a-b-c-d, center b
        let o = compatible_order_vertex(&g, 1);
        assert_eq!(o.order, vec![2]);
        assert_eq!(o.classes, vec![1]);
    }

    #[test]
    fn cycle_center_on_itself_is_empty() {
        let edges: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let g = MultiGraph::build(6, &edges).unwrap();
        let o = compatible_order_cycle(&g, &[0, 1, 2, 3, 4, 5]);
        assert!(o.order.is_empty());
    }

    #[test]
    fn classes_non_increasing_along_order() {
        // Triangle with three pendant paths of length 2.
        let g = MultiGraph::build(
            9,
            &[
                (0, 1),
                (1, 2),
                (2, 0),
                (0, 3),
                (3, 6),
                (1, 4),
                (4, 7),
                (2, 5),
                (5, 8),
            ],
        )
        .unwrap();
        let o = compatible_order_cycle(&g, &[0, 1, 2]);
        for w in o.classes.windows(2) {
            assert!(w[0] >= w[1]);
        }
        assert_eq!(o.order.len(), 6);
    }

    #[test]
    fn greedy_single_edge_takes_list_head() {
        let g = MultiGraph::build(2, &[(0, 1)]).unwrap();
        let cg = g.conflict_graph();
        let lists = ListAssignment::new(vec![vec![7]]).unwrap();
        let mut pc = PartialColoring::new(&g, &cg, &lists).unwrap();
        greedy_color(&mut pc, &[0], None).unwrap();
        assert_eq!(pc.color(0), Some(7));
    }

    #[test]
    fn greedy_reports_stuck_edge() {
        let g = path(3);
        let cg = g.conflict_graph();
        let lists = ListAssignment::new(vec![vec![1], vec![1]]).unwrap();
        let mut pc = PartialColoring::new(&g, &cg, &lists).unwrap();
        assert_eq!(
            greedy_color(&mut pc, &[0, 1], None),
            Err(GreedyError::Stuck { edge: 1 })
        );
    }

    #[test]
    fn tree_with_21_lists_colors_off_vertex() {
        // Depth-2 quaternary tree, max degree 4.
        let mut edges = Vec::new();
        for i in 1..=4 {
            edges.push((0, i));
        }
        let mut next = 5;
        for i in 1..=4 {
            for _ in 0..3 {
                edges.push((i, next));
                next += 1;
            }
        }
        let g = MultiGraph::build(next, &edges).unwrap();
        let cg = g.conflict_graph();
        let lists = ListAssignment::uniform(g.edge_count(), 21);
        let pc = color_all_but_vertex(&g, &cg, &lists, 0).unwrap();
        for e in 0..g.edge_count() {
            let incident = g.incident_edges(0).contains(&e);
            assert_eq!(pc.is_colored(e), !incident);
        }
        assert!(matches!(
            verify_strong(&g, &lists, pc.colors()),
            crate::coloring::Verification::Uncolored { .. }
        ));
    }

    #[test]
    fn star_center_vacuous_success() {
        let g = MultiGraph::build(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let cg = g.conflict_graph();
        let lists = ListAssignment::uniform(4, 21);
        let pc = color_all_but_vertex(&g, &cg, &lists, 0).unwrap();
        assert_eq!(pc.uncolored_edges().len(), 4);
    }

    #[test]
    fn cycle_alone_vacuous_success() {
        let edges: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let g = MultiGraph::build(6, &edges).unwrap();
        let cg = g.conflict_graph();
        let lists = ListAssignment::uniform(6, 21);
        let pc = color_all_but_cycle(&g, &cg, &lists, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(pc.uncolored_edges().len(), 6);
    }

    #[test]
    fn short_lists_rejected() {
        let g = path(3);
        let cg = g.conflict_graph();
        let lists = ListAssignment::uniform(2, 20);
        assert!(matches!(
            color_all_but_vertex(&g, &cg, &lists, 0),
            Err(GreedyError::Precondition(_))
        ));
    }

    #[test]
    fn precolored_requires_exactly_four() {
        let g = path(3);
        let cg = g.conflict_graph();
        let lists = ListAssignment::uniform(2, 22);
        assert!(matches!(
            color_with_precolored(&g, &cg, &lists, 1, &[(0, 1)]),
            Err(GreedyError::Precondition(_))
        ));
    }
}
