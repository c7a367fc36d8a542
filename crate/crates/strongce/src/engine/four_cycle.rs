//! The 4-cycle case: pendant edges, adjacent pairs, packs and diagonal
//! edges around a 4-cycle in a 4-regular simple triangle-free graph, and
//! the case analysis that completes the coloring of the 12-edge core.

use crate::coloring::{ColorId, ListAssignment, PartialColoring};
use crate::graph::{ConflictGraph, CycleWitness, EdgeId, MultiGraph, VertexId};
use crate::hall;
use crate::ordering::{compatible_order_cycle, greedy_color};

use super::{finish_greedy, HandlerResult};

/// The labeled structure around a 4-cycle. Cycle edge i joins cycle
/// vertices i and i+1 (mod 4); the two pendant edges at each cycle vertex
/// are listed in ascending id order. Pack 0 holds the pendants at vertices
/// 0 and 2, pack 1 those at vertices 1 and 3.
#[derive(Debug, Clone)]
pub struct FourCycleContext {
    pub cycle_vertices: [VertexId; 4],
    pub cycle_edges: [EdgeId; 4],
    pub pendants: [[EdgeId; 2]; 4],
    /// Pendants at opposite cycle vertices sharing their far endpoint.
    pub adjacent_pairs: Vec<(EdgeId, EdgeId)>,
    pub pack_edges: [[EdgeId; 4]; 2],
    /// All diagonal edges of each pack (edges adjacent to both members of
    /// some non-touching opposite pendant pair).
    pub pack_diagonals: [Vec<EdgeId>; 2],
}

impl FourCycleContext {
    pub fn all_core_edges(&self) -> Vec<EdgeId> {
        let mut t: Vec<EdgeId> = self
            .pendants
            .iter()
            .flatten()
            .copied()
            .chain(self.cycle_edges.iter().copied())
            .collect();
        t.sort_unstable();
        t
    }

    fn pack_positions(k: usize) -> [usize; 2] {
        if k == 0 {
            [0, 2]
        } else {
            [1, 3]
        }
    }

    /// The cross pairs (one pendant per opposite vertex) of pack `k` that do
    /// not share an endpoint.
    pub fn nonadjacent_pairs(&self, k: usize) -> Vec<(EdgeId, EdgeId)> {
        let [i, j] = Self::pack_positions(k);
        let mut out = Vec::new();
        for &p in &self.pendants[i] {
            for &q in &self.pendants[j] {
                if !self.adjacent_pairs.contains(&ordered(p, q)) {
                    out.push((p, q));
                }
            }
        }
        out
    }
}

fn ordered(a: EdgeId, b: EdgeId) -> (EdgeId, EdgeId) {
    (a.min(b), a.max(b))
}

fn shares_endpoint(g: &MultiGraph, e: EdgeId, f: EdgeId) -> bool {
    let (a, b) = g.endpoints(e);
    let (c, d) = g.endpoints(f);
    a == c || a == d || b == c || b == d
}

/// Edges adjacent to both `p` and `q` (other than the pair itself).
fn diagonals_of_pair(g: &MultiGraph, p: EdgeId, q: EdgeId) -> Vec<EdgeId> {
    (0..g.edge_count())
        .filter(|&f| f != p && f != q && shares_endpoint(g, f, p) && shares_endpoint(g, f, q))
        .collect()
}

/// Identifies pendants, adjacent pairs, packs and diagonal edges around the
/// 4-cycle `w`. Requires every cycle vertex to have degree 4 and pendant
/// far endpoints off the cycle (guaranteed when the graph is 4-regular,
/// simple and triangle-free).
pub fn analyze_4cycle(g: &MultiGraph, w: &CycleWitness) -> Result<FourCycleContext, String> {
    if w.len() != 4 {
        return Err(format!("expected a 4-cycle, got length {}", w.len()));
    }
    let cycle_vertices: [VertexId; 4] = w.vertices.clone().try_into().unwrap();
    let cycle_edges: [EdgeId; 4] = w.edges.clone().try_into().unwrap();

    let mut pendants = [[0usize; 2]; 4];
    for (i, &v) in cycle_vertices.iter().enumerate() {
        if g.degree(v) != 4 {
            return Err(format!("cycle vertex {v} has degree {}", g.degree(v)));
        }
        let mut ps: Vec<EdgeId> = g
            .incident_edges(v)
            .iter()
            .copied()
            .filter(|e| !cycle_edges.contains(e))
            .collect();
        ps.sort_unstable();
        ps.dedup();
        if ps.len() != 2 {
            return Err(format!("cycle vertex {v} lacks two pendant edges"));
        }
        for &p in &ps {
            let far = g.other_endpoint(p, v);
            if cycle_vertices.contains(&far) {
                return Err(format!("pendant {p} is a chord of the 4-cycle"));
            }
        }
        pendants[i] = [ps[0], ps[1]];
    }

    let mut adjacent_pairs = Vec::new();
    for (i, j) in [(0usize, 2usize), (1, 3)] {
        for &p in &pendants[i] {
            for &q in &pendants[j] {
                let fp = g.other_endpoint(p, cycle_vertices[i]);
                let fq = g.other_endpoint(q, cycle_vertices[j]);
                if fp == fq {
                    adjacent_pairs.push(ordered(p, q));
                }
            }
        }
    }
    adjacent_pairs.sort_unstable();
    adjacent_pairs.dedup();

    let pack_edges = [
        [pendants[0][0], pendants[0][1], pendants[2][0], pendants[2][1]],
        [pendants[1][0], pendants[1][1], pendants[3][0], pendants[3][1]],
    ];
    let ctx = FourCycleContext {
        cycle_vertices,
        cycle_edges,
        pendants,
        adjacent_pairs,
        pack_edges,
        pack_diagonals: [Vec::new(), Vec::new()],
    };
    let mut diagonals = [Vec::new(), Vec::new()];
    for (k, out) in diagonals.iter_mut().enumerate() {
        for (p, q) in ctx.nonadjacent_pairs(k) {
            out.extend(diagonals_of_pair(g, p, q));
        }
        out.sort_unstable();
        out.dedup();
    }
    Ok(FourCycleContext {
        pack_diagonals: diagonals,
        ..ctx
    })
}

/// First non-touching opposite pair of pack `k` with no diagonal edge.
fn diagonal_free_pair(
    g: &MultiGraph,
    ctx: &FourCycleContext,
    k: usize,
) -> Option<(EdgeId, EdgeId)> {
    ctx.nonadjacent_pairs(k)
        .into_iter()
        .find(|&(p, q)| diagonals_of_pair(g, p, q).is_empty())
}

/// Greedy phase: all edges off the 4-cycle except `kept_uncolored`.
fn greedy_off_cycle<'a>(
    g: &'a MultiGraph,
    cg: &'a ConflictGraph,
    lists: &'a ListAssignment,
    cycle: &[EdgeId],
    kept_uncolored: &[EdgeId],
) -> Result<PartialColoring<'a>, String> {
    let mut pc = PartialColoring::new(g, cg, lists).map_err(|e| e.to_string())?;
    let order: Vec<EdgeId> = compatible_order_cycle(g, cycle)
        .order
        .into_iter()
        .filter(|e| !kept_uncolored.contains(e))
        .collect();
    greedy_color(&mut pc, &order, None).map_err(|e| e.to_string())?;
    Ok(pc)
}

/// Tries one finishing plan on a copy of the partial coloring.
fn try_plan(
    base: &PartialColoring,
    precolor: &[(EdgeId, ColorId)],
    then: &[&[EdgeId]],
) -> Option<Vec<ColorId>> {
    let mut pc = base.clone();
    for &(e, c) in precolor {
        pc.assign(e, c).ok()?;
    }
    for group in then {
        finish_greedy(&mut pc, group).ok()?;
    }
    Some(pc.into_complete())
}

pub fn handle_4cycle(
    g: &MultiGraph,
    cg: &ConflictGraph,
    lists: &ListAssignment,
    w: &CycleWitness,
) -> HandlerResult {
    let ctx = analyze_4cycle(g, w)?;
    let mut cycle_sorted = ctx.cycle_edges.to_vec();
    cycle_sorted.sort_unstable();
    let pendant_list: Vec<EdgeId> = {
        let mut p: Vec<EdgeId> = ctx.pendants.iter().flatten().copied().collect();
        p.sort_unstable();
        p
    };

    // Case 1: at least two adjacent pairs shrink the cycle edges'
    // neighborhoods enough that coloring everything else first leaves at
    // least 4 colors per cycle edge.
    if ctx.adjacent_pairs.len() >= 2 {
        let pc = greedy_off_cycle(g, cg, lists, &ctx.cycle_edges, &[])?;
        if let Some(colors) = try_plan(&pc, &[], &[&cycle_sorted]) {
            return Ok((
                colors,
                vec![format!(
                    "4-cycle case 1: {} adjacent pairs",
                    ctx.adjacent_pairs.len()
                )],
            ));
        }
        return Err("4-cycle case 1 finishing failed".into());
    }

    // Four diagonal edges of a pack: defer the diagonals along with the
    // cycle; the four uncolored diagonals guarantee colors for the cycle,
    // and a diagonal's own neighborhood is small enough to finish last.
    for k in 0..2 {
        if ctx.pack_diagonals[k].len() >= 4 {
            let diagonals = ctx.pack_diagonals[k].clone();
            let pc = greedy_off_cycle(g, cg, lists, &ctx.cycle_edges, &diagonals)?;
            if let Some(colors) = try_plan(&pc, &[], &[&cycle_sorted, &diagonals]) {
                return Ok((
                    colors,
                    vec![format!(
                        "4-cycle deferred-diagonals branch: pack {k} has {} diagonals",
                        diagonals.len()
                    )],
                ));
            }
            return Err("4-cycle deferred-diagonals finishing failed".into());
        }
    }

    if ctx.adjacent_pairs.len() == 1 {
        return case_exactly_one_pair(g, cg, lists, &ctx, &pendant_list, &cycle_sorted);
    }
    case_no_pairs(g, cg, lists, &ctx, &pendant_list, &cycle_sorted)
}

/// Exactly one adjacent pair: the pack without the pair has a diagonal-free
/// opposite pendant pair; three subcases finish the 12-edge core.
fn case_exactly_one_pair(
    g: &MultiGraph,
    cg: &ConflictGraph,
    lists: &ListAssignment,
    ctx: &FourCycleContext,
    pendant_list: &[EdgeId],
    cycle_sorted: &[EdgeId],
) -> HandlerResult {
    let pair = ctx.adjacent_pairs[0];
    let pair_pack = if ctx.pack_edges[0].contains(&pair.0) {
        0
    } else {
        1
    };
    let free_pack = 1 - pair_pack;

    let base = greedy_off_cycle(g, cg, lists, &ctx.cycle_edges, pendant_list)?;
    let cycle_avail: Vec<Vec<ColorId>> = ctx
        .cycle_edges
        .iter()
        .map(|&c| base.available_colors_unchecked(c))
        .collect();

    // Subcase a: some pendant holds a color missing from some cycle edge's
    // available list; spending it there costs that cycle edge nothing.
    let mut attempts = 0;
    for (j, c_avail) in cycle_avail.iter().enumerate() {
        let cj = ctx.cycle_edges[j];
        let mut cycle_order: Vec<EdgeId> = cycle_sorted.iter().copied().filter(|&e| e != cj).collect();
        cycle_order.push(cj);
        for &p in pendant_list {
            for x in base.available_colors_unchecked(p) {
                if c_avail.contains(&x) {
                    continue;
                }
                attempts += 1;
                if attempts > 200 {
                    break;
                }
                if let Some(colors) = try_plan(&base, &[(p, x)], &[pendant_list, &cycle_order]) {
                    return Ok((
                        colors,
                        vec![format!(
                            "4-cycle case 2: pendant {p} takes a color outside cycle edge {cj}"
                        )],
                    ));
                }
            }
        }
    }

    // Subcase b: a cycle edge with strictly more than 11 available colors
    // survives a plain pendant-first finish ending at it.
    if let Some((j, _)) = cycle_avail
        .iter()
        .enumerate()
        .max_by_key(|(_, a)| a.len())
        .filter(|(_, a)| a.len() > 11)
    {
        let cj = ctx.cycle_edges[j];
        let mut cycle_order: Vec<EdgeId> = cycle_sorted.iter().copied().filter(|&e| e != cj).collect();
        cycle_order.push(cj);
        if let Some(colors) = try_plan(&base, &[], &[pendant_list, &cycle_order]) {
            return Ok((
                colors,
                vec![format!("4-cycle case 2: wide cycle edge {cj} finishes last")],
            ));
        }
    }

    // Subcase c: repeat a common color on the diagonal-free pair of the
    // pack without the adjacent pair (legal: the pair is at edge distance
    // at least 2), saving a color for every cycle edge.
    if let Some((p, q)) = diagonal_free_pair(g, ctx, free_pack) {
        let ap = base.available_colors_unchecked(p);
        let aq = base.available_colors_unchecked(q);
        for y in ap.iter().copied().filter(|y| aq.contains(y)) {
            if let Some(colors) = try_plan(&base, &[(p, y), (q, y)], &[pendant_list, cycle_sorted])
            {
                return Ok((
                    colors,
                    vec![format!(
                        "4-cycle case 2: shared color on diagonal-free pair ({p}, {q})"
                    )],
                ));
            }
        }
    }
    Err("4-cycle case 2 exhausted its subcases".into())
}

/// No adjacent pairs: try a distinct color per core edge; if discrepancy
/// blocks that, color a maximum-discrepancy set with repeated colors on the
/// packs' diagonal-free pairs and extend the rest by distinct
/// representatives.
fn case_no_pairs(
    g: &MultiGraph,
    cg: &ConflictGraph,
    lists: &ListAssignment,
    ctx: &FourCycleContext,
    pendant_list: &[EdgeId],
    cycle_sorted: &[EdgeId],
) -> HandlerResult {
    let mut pc = greedy_off_cycle(g, cg, lists, &ctx.cycle_edges, pendant_list)?;
    let core = ctx.all_core_edges();
    let free_pairs: Vec<(EdgeId, EdgeId)> = (0..2)
        .filter_map(|k| diagonal_free_pair(g, ctx, k))
        .collect();
    if free_pairs.len() != 2 {
        return Err("no diagonal-free pair in some pack".into());
    }
    let cycle_edges = ctx.cycle_edges;

    let mut used_disc_path = false;
    let used = &mut used_disc_path;
    hall::color_max_disc_then_extend(&mut pc, &core, |pc, s| {
        *used = true;
        let s_has_cycle = s.iter().any(|e| cycle_edges.contains(e));
        if s_has_cycle {
            // Same color on each fully-contained diagonal-free pair.
            for &(p, q) in &free_pairs {
                if !(s.contains(&p) && s.contains(&q)) {
                    continue;
                }
                let ap = pc.available_colors_unchecked(p);
                let aq = pc.available_colors_unchecked(q);
                let y = ap
                    .iter()
                    .copied()
                    .find(|y| aq.contains(y))
                    .ok_or_else(|| format!("no common color for pair ({p}, {q})"))?;
                pc.assign(p, y).map_err(|e| e.to_string())?;
                pc.assign(q, y).map_err(|e| e.to_string())?;
            }
            let s_pendants: Vec<EdgeId> = s
                .iter()
                .copied()
                .filter(|e| !cycle_edges.contains(e))
                .collect();
            let s_cycle: Vec<EdgeId> = s
                .iter()
                .copied()
                .filter(|e| cycle_edges.contains(e))
                .collect();
            finish_greedy(pc, &s_pendants)?;
            finish_greedy(pc, &s_cycle)
        } else {
            finish_greedy(pc, s)
        }
    })
    .map_err(|e| e.to_string())?;

    // color_max_disc_then_extend only covers `core`; everything else was
    // colored by the greedy phase, so the coloring is now complete.
    let _ = cycle_sorted;
    let trace = if used_disc_path {
        vec!["4-cycle case 3: discrepancy set colored then extended".to_string()]
    } else {
        vec!["4-cycle case 3: distinct representatives completed the core".to_string()]
    };
    Ok((pc.into_complete(), trace))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// A 4-cycle with 8 pendant edges to 8 distinct leaves: no adjacent
    /// pairs, no diagonals. Not 4-regular overall (leaves have degree 1),
    /// which analyze_4cycle tolerates as long as cycle vertices are full.
    fn plain_c4_core() -> (MultiGraph, CycleWitness) {
        let mut edges = vec![(0, 1), (1, 2), (2, 3), (3, 0)];
        let mut next = 4;
        for v in 0..4 {
            edges.push((v, next));
            edges.push((v, next + 1));
            next += 2;
        }
        let g = MultiGraph::build(next, &edges).unwrap();
        let w = CycleWitness {
            vertices: vec![0, 1, 2, 3],
            edges: vec![0, 1, 2, 3],
        };
        (g, w)
    }

    #[test]
    fn analyze_plain_core() {
        let (g, w) = plain_c4_core();
        let ctx = analyze_4cycle(&g, &w).unwrap();
        assert!(ctx.adjacent_pairs.is_empty());
        assert_eq!(ctx.pendants[0], [4, 5]);
        assert!(ctx.pack_diagonals[0].is_empty());
        assert_eq!(ctx.nonadjacent_pairs(0).len(), 4);
    }

    #[test]
    fn analyze_detects_adjacent_pair() {
        // a-pendants of vertices 0 and 2 meet at a shared far vertex.
        let mut edges = vec![(0, 1), (1, 2), (2, 3), (3, 0)];
        edges.push((0, 4)); // e4 = a1
        edges.push((0, 5));
        edges.push((2, 4)); // e6 = a3, shares vertex 4 with e4
        edges.push((2, 6));
        edges.push((1, 7));
        edges.push((1, 8));
        edges.push((3, 9));
        edges.push((3, 10));
        let g = MultiGraph::build(11, &edges).unwrap();
        let w = CycleWitness {
            vertices: vec![0, 1, 2, 3],
            edges: vec![0, 1, 2, 3],
        };
        let ctx = analyze_4cycle(&g, &w).unwrap();
        assert_eq!(ctx.adjacent_pairs, vec![(4, 6)]);
    }

    #[test]
    fn analyze_detects_diagonals() {
        let (g0, _) = plain_c4_core();
        // Add a diagonal between the far ends of pendants 4 (at v0) and 8
        // (at v2): vertices 4 and 8.
        let mut edges = g0.edges().to_vec();
        edges.push((4, 8));
        let g = MultiGraph::build(g0.vertex_count(), &edges).unwrap();
        let w = CycleWitness {
            vertices: vec![0, 1, 2, 3],
            edges: vec![0, 1, 2, 3],
        };
        let ctx = analyze_4cycle(&g, &w).unwrap();
        assert_eq!(ctx.pack_diagonals[0], vec![12]);
        assert!(ctx.pack_diagonals[1].is_empty());
        // The blocked pair is (4, 8); the other three remain free.
        assert_eq!(diagonal_free_pair(&g, &ctx, 0), Some((4, 9)));
    }

    #[test]
    fn colors_plain_core_with_22_lists() {
        let (g, w) = plain_c4_core();
        let cg = g.conflict_graph();
        let lists = ListAssignment::uniform(g.edge_count(), 22);
        let (colors, trace) = handle_4cycle(&g, &cg, &lists, &w).unwrap();
        assert!(crate::coloring::verify_strong_complete(&g, &lists, &colors).is_ok());
        assert!(trace[0].contains("case 3"));
    }
}
