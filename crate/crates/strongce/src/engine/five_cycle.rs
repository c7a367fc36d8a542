//! The 5-cycle case: after coloring everything off the cycle, the five
//! cycle edges plus one uncolored pendant per cycle vertex v2..v5 form a
//! 9-variable conflict system whose distinctness product has a nonzero
//! coefficient certificate, so a backtracking search over the available
//! lists is guaranteed to succeed once the lists are large enough.

use crate::coloring::{ColorId, ListAssignment, PartialColoring};
use crate::graph::{ConflictGraph, CycleWitness, EdgeId, MultiGraph};
use crate::nullstellensatz::{
    cn_find_assignment, ConflictSystem, FIVE_CYCLE_FACTOR_PAIRS, FIVE_CYCLE_TARGET,
};
use crate::ordering::{compatible_order_cycle, greedy_color};

use super::HandlerResult;

/// True when every conflicting pair among the nine core edges is one of the
/// factor pairs of the certified product. The factor set deliberately omits
/// four pairs that cannot conflict when the graph has no cycle shorter
/// than 5, but pendant choices must avoid creating any conflict outside it.
fn conflicts_covered(cg: &ConflictGraph, nine: &[EdgeId; 9]) -> bool {
    for i in 0..9 {
        for j in (i + 1)..9 {
            if cg.are_adjacent(nine[i], nine[j])
                && !FIVE_CYCLE_FACTOR_PAIRS.contains(&(i, j))
            {
                return false;
            }
        }
    }
    true
}

pub fn handle_5cycle(
    g: &MultiGraph,
    cg: &ConflictGraph,
    lists: &ListAssignment,
    w: &CycleWitness,
) -> HandlerResult {
    if w.len() != 5 {
        return Err(format!("expected a 5-cycle, got length {}", w.len()));
    }
    // Cycle edge i joins cycle vertices i and i+1 (mod 5); the pendant slots
    // x6..x9 sit at cycle vertices 1..4 (0-based), i.e. the four vertices
    // covered twice by the factors involving x1..x5.
    let cycle: [EdgeId; 5] = w.edges.clone().try_into().unwrap();
    let mut candidates: Vec<[EdgeId; 2]> = Vec::with_capacity(4);
    for pos in 1..5 {
        let v = w.vertices[pos];
        if g.degree(v) != 4 {
            return Err(format!("cycle vertex {v} has degree {}", g.degree(v)));
        }
        let mut ps: Vec<EdgeId> = g
            .incident_edges(v)
            .iter()
            .copied()
            .filter(|e| !cycle.contains(e))
            .collect();
        ps.sort_unstable();
        ps.dedup();
        if ps.len() != 2 {
            return Err(format!("cycle vertex {v} lacks two pendant edges"));
        }
        candidates.push([ps[0], ps[1]]);
    }

    // Greedy phase: everything off the cycle, pendants included.
    let mut pc = PartialColoring::new(g, cg, lists).map_err(|e| e.to_string())?;
    let order = compatible_order_cycle(g, &cycle);
    greedy_color(&mut pc, &order.order, None).map_err(|e| e.to_string())?;

    // Pick one pendant per vertex so that all conflicts among the nine core
    // edges are covered by the certified factor pairs.
    let mut chosen: Option<[EdgeId; 9]> = None;
    'combos: for mask in 0..16u32 {
        let mut nine = [0usize; 9];
        nine[..5].copy_from_slice(&cycle);
        for (slot, cand) in candidates.iter().enumerate() {
            nine[5 + slot] = cand[(mask >> slot & 1) as usize];
        }
        let mut distinct = nine.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != 9 {
            continue 'combos;
        }
        if conflicts_covered(cg, &nine) {
            chosen = Some(nine);
            break;
        }
    }
    let nine = chosen.ok_or("no pendant choice matches the certified conflict pattern")?;

    // Free the chosen pendants again; the other pendants stay colored.
    for &p in &nine[5..] {
        pc.unassign(p).map_err(|e| e.to_string())?;
    }

    let avail: Vec<Vec<ColorId>> = nine
        .iter()
        .map(|&e| pc.available_colors_unchecked(e))
        .collect();
    for (i, a) in avail.iter().enumerate() {
        let needed = FIVE_CYCLE_TARGET[i] as usize + 1;
        if a.len() < needed {
            return Err(format!(
                "core edge {} has {} available colors, needs {needed}",
                nine[i],
                a.len()
            ));
        }
    }
    let min_avail = avail.iter().map(|a| a.len()).min().unwrap();

    // The certificate coefficient of this system is -1 (independent of the
    // lists), so with |S_i| > k_i the search below cannot fail.
    let sys = ConflictSystem::five_cycle(avail);
    let solution =
        cn_find_assignment(&sys).ok_or("certified conflict system had no solution")?;
    for (&e, &c) in nine.iter().zip(&solution) {
        pc.assign(e, c).map_err(|e| e.to_string())?;
    }

    let trace = vec![format!(
        "5-cycle core {:?} with pendants {:?}, min availability {min_avail}",
        &nine[..5],
        &nine[5..]
    )];
    Ok((pc.into_complete(), trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify_strong_complete;
    use crate::engine::{classify, StructureClass};

    /// The Petersen graph: 3-regular, girth 5. Not 4-regular, so the
    /// handler's degree checks reject it; used only for witness shape.
    fn petersen() -> MultiGraph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        MultiGraph::build(10, &edges).unwrap()
    }

    /// A 4-regular girth-5 graph on 19 vertices: the Robertson graph.
    fn robertson() -> MultiGraph {
        let edges = [
            (0, 2),
            (0, 4),
            (0, 14),
            (0, 16),
            (1, 3),
            (1, 9),
            (1, 13),
            (1, 16),
            (2, 5),
            (2, 11),
            (2, 12),
            (3, 8),
            (3, 12),
            (3, 17),
            (4, 8),
            (4, 9),
            (4, 15),
            (5, 7),
            (5, 8),
            (5, 13),
            (6, 8),
            (6, 11),
            (6, 16),
            (6, 18),
            (7, 10),
            (7, 15),
            (7, 16),
            (9, 10),
            (9, 11),
            (10, 12),
            (10, 14),
            (11, 17),
            (12, 18),
            (13, 14),
            (13, 18),
            (14, 17),
            (15, 17),
            (15, 18),
        ];
        MultiGraph::build(19, &edges).unwrap()
    }

    #[test]
    fn robertson_is_classified_as_5cycle() {
        let g = robertson();
        assert!(matches!(classify(&g), StructureClass::Cycle5(_)));
    }

    #[test]
    fn robertson_colors_through_5cycle_handler() {
        let g = robertson();
        let cg = g.conflict_graph();
        let lists = ListAssignment::uniform(g.edge_count(), 22);
        let w = match classify(&g) {
            StructureClass::Cycle5(w) => w,
            other => panic!("unexpected class {other:?}"),
        };
        let (colors, trace) = handle_5cycle(&g, &cg, &lists, &w).unwrap();
        assert!(verify_strong_complete(&g, &lists, &colors).is_ok());
        assert!(trace[0].contains("5-cycle core"));
    }

    #[test]
    fn low_degree_graph_is_rejected() {
        let g = petersen();
        let cg = g.conflict_graph();
        let lists = ListAssignment::uniform(g.edge_count(), 22);
        let w = g.find_cycle_of_length(5).unwrap();
        assert!(handle_5cycle(&g, &cg, &lists, &w).is_err());
    }
}
