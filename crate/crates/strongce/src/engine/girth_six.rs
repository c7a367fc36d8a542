//! The 4-regular girth-at-least-6 case. Around a chosen vertex v with star
//! edges e1..e4 to neighbors u1..u4, the set A_i holds the three other
//! edges at u_i. The girth bound keeps edges of different A_i at distance
//! at least 2, so a color may be repeated across distinct A_i. The handler
//! precolors a few A-edges to starve the star edges' neighborhoods of
//! colors and finishes e1..e4 last in a chosen order; a small catalog of
//! precoloring strategies covers the case analysis over how the union lists
//! L(A_i) intersect each other and the star lists.

use crate::coloring::{ColorId, ListAssignment, PartialColoring};
use crate::graph::{ConflictGraph, EdgeId, MultiGraph, VertexId};
use crate::ordering::{compatible_order_vertex, greedy_color};

use super::{edges_at, HandlerResult};

/// The labeled star of the chosen center vertex: star edges in ascending id
/// order, their far endpoints, and the three non-star edges at each far
/// endpoint.
#[derive(Debug, Clone)]
pub struct VertexContext {
    pub v: VertexId,
    pub e: [EdgeId; 4],
    pub u: [VertexId; 4],
    pub a_sets: [[EdgeId; 3]; 4],
}

pub fn analyze_vertex(g: &MultiGraph, v: VertexId) -> Result<VertexContext, String> {
    let e: [EdgeId; 4] = edges_at(g, v)
        .try_into()
        .map_err(|_| format!("vertex {v} does not have 4 distinct edges"))?;
    let mut u = [0usize; 4];
    let mut a_sets = [[0usize; 3]; 4];
    for i in 0..4 {
        u[i] = g.other_endpoint(e[i], v);
        let aset: [EdgeId; 3] = edges_at(g, u[i])
            .into_iter()
            .filter(|&f| f != e[i])
            .collect::<Vec<_>>()
            .try_into()
            .map_err(|_| format!("neighbor {} does not have 3 outer edges", u[i]))?;
        a_sets[i] = aset;
    }
    // Distinct neighbors and disjoint A-sets; otherwise a cycle of length
    // at most 4 exists and a higher-priority handler applies.
    let mut all: Vec<EdgeId> = a_sets.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    if all.len() != 12 {
        return Err("A-sets overlap: a cycle shorter than 6 passes through the star".into());
    }
    Ok(VertexContext { v, e, u, a_sets })
}

/// Union of the full lists over one A-set, ascending.
fn union_list(lists: &ListAssignment, a_set: &[EdgeId; 3]) -> Vec<ColorId> {
    let mut out: Vec<ColorId> = a_set
        .iter()
        .flat_map(|&a| lists.list(a).iter().copied())
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn intersect(a: &[ColorId], b: &[ColorId]) -> Vec<ColorId> {
    a.iter().copied().filter(|c| b.contains(c)).collect()
}

fn minus(a: &[ColorId], b: &[ColorId]) -> Vec<ColorId> {
    a.iter().copied().filter(|c| !b.contains(c)).collect()
}

/// First edge of the A-set whose list holds `x`.
fn host(lists: &ListAssignment, a_set: &[EdgeId; 3], x: ColorId) -> Option<EdgeId> {
    a_set.iter().copied().find(|&a| lists.list(a).contains(&x))
}

/// One complete attempt: precolor, greedy everything off the star, then the
/// star edges in the given index order, each with its first available
/// color. The attempt self-verifies through the assignment checks.
fn attempt(
    g: &MultiGraph,
    cg: &ConflictGraph,
    lists: &ListAssignment,
    ctx: &VertexContext,
    precolor: &[(EdgeId, ColorId)],
    finish: &[usize; 4],
) -> Option<Vec<ColorId>> {
    let mut pc = PartialColoring::new(g, cg, lists).ok()?;
    for &(f, c) in precolor {
        pc.assign(f, c).ok()?;
    }
    let order = compatible_order_vertex(g, ctx.v);
    greedy_color(&mut pc, &order.order, None).ok()?;
    for &i in finish {
        let avail = pc.available_colors(ctx.e[i]).ok()?;
        pc.assign(ctx.e[i], *avail.first()?).ok()?;
    }
    Some(pc.into_complete())
}

/// All finish orders ending with the given index.
fn finish_ending_at(last: usize) -> [usize; 4] {
    let mut order = [0usize; 4];
    let mut k = 0;
    for i in 0..4 {
        if i != last {
            order[k] = i;
            k += 1;
        }
    }
    order[3] = last;
    order
}

const PERMS: [[usize; 4]; 24] = {
    let mut out = [[0usize; 4]; 24];
    let mut idx = 0;
    let mut a = 0;
    while a < 4 {
        let mut b = 0;
        while b < 4 {
            let mut c = 0;
            while c < 4 {
                let mut d = 0;
                while d < 4 {
                    if a != b && a != c && a != d && b != c && b != d && c != d {
                        out[idx] = [a, b, c, d];
                        idx += 1;
                    }
                    d += 1;
                }
                c += 1;
            }
            b += 1;
        }
        a += 1;
    }
    out
};

pub fn handle_regular_girth6(
    g: &MultiGraph,
    cg: &ConflictGraph,
    lists: &ListAssignment,
) -> HandlerResult {
    let ctx = analyze_vertex(g, 0)?;
    let la: Vec<Vec<ColorId>> = ctx
        .a_sets
        .iter()
        .map(|s| union_list(lists, s))
        .collect();
    let le: Vec<&[ColorId]> = ctx.e.iter().map(|&e| lists.list(e)).collect();

    let mut attempts = 0usize;
    let mut run = |precolor: &[(EdgeId, ColorId)], finish: &[usize; 4]| -> Option<Vec<ColorId>> {
        if attempts >= 300 {
            return None;
        }
        attempts += 1;
        attempt(g, cg, lists, &ctx, precolor, finish)
    };

    // Plain: no precoloring, finish ascending.
    if let Some(colors) = run(&[], &[0, 1, 2, 3]) {
        return Ok((colors, vec!["girth-6 star: plain finish".to_string()]));
    }

    // One shared color across all four A-sets removes a color from every
    // star edge's neighborhood budget at once.
    for &x in intersect(&intersect(&la[0], &la[1]), &intersect(&la[2], &la[3])).iter().take(4) {
        let pre: Vec<(EdgeId, ColorId)> = (0..4)
            .filter_map(|i| host(lists, &ctx.a_sets[i], x).map(|h| (h, x)))
            .collect();
        if pre.len() == 4 {
            if let Some(colors) = run(&pre, &[0, 1, 2, 3]) {
                return Ok((
                    colors,
                    vec![format!("girth-6 star: color {x} repeated on all four branch sets")],
                ));
            }
        }
    }

    // A color shared by three A-sets but absent from the fourth.
    for s in 0..4 {
        let t: Vec<usize> = (0..4).filter(|&i| i != s).collect();
        let common = intersect(&intersect(&la[t[0]], &la[t[1]]), &la[t[2]]);
        for &x in minus(&common, &la[s]).iter().take(3) {
            let pre_t: Vec<(EdgeId, ColorId)> = t
                .iter()
                .filter_map(|&i| host(lists, &ctx.a_sets[i], x).map(|h| (h, x)))
                .collect();
            if pre_t.len() != 3 {
                continue;
            }
            for &t_last in &t {
                let finish = finish_ending_at(t_last);
                for &y in minus(&la[s], le[t_last]).iter().take(2) {
                    if let Some(h) = host(lists, &ctx.a_sets[s], y) {
                        let mut pre = pre_t.clone();
                        pre.push((h, y));
                        if let Some(colors) = run(&pre, &finish) {
                            return Ok((
                                colors,
                                vec![format!(
                                    "girth-6 star: triple color {x}, spare color {y}"
                                )],
                            ));
                        }
                    }
                }
                if !le[t_last].contains(&x) {
                    if let Some(colors) = run(&pre_t, &finish) {
                        return Ok((
                            colors,
                            vec![format!("girth-6 star: triple color {x} off list of a star edge")],
                        ));
                    }
                }
            }
        }
    }

    // A color shared by a pair of A-sets, combined with further savings on
    // the other two branches, finishing at a star edge missing some color.
    for i in 0..4 {
        for j in (i + 1)..4 {
            let others: Vec<usize> = (0..4).filter(|&k| k != i && k != j).collect();
            for &x in intersect(&la[i], &la[j]).iter().take(2) {
                let (hi, hj) = match (
                    host(lists, &ctx.a_sets[i], x),
                    host(lists, &ctx.a_sets[j], x),
                ) {
                    (Some(a), Some(b)) => (a, b),
                    _ => continue,
                };
                let base = vec![(hi, x), (hj, x)];
                for m in 0..4 {
                    if le[m].contains(&x) {
                        continue;
                    }
                    let finish = finish_ending_at(m);
                    for &(a, b) in &[(others[0], others[1]), (others[1], others[0])] {
                        if let Some(&y) = minus(&la[a], le[m]).first() {
                            if let Some(ha) = host(lists, &ctx.a_sets[a], y) {
                                let mut pre = base.clone();
                                pre.push((ha, y));
                                if let Some(&z) = minus(&la[b], le[m]).first() {
                                    if let Some(hb) = host(lists, &ctx.a_sets[b], z) {
                                        let mut pre2 = pre.clone();
                                        pre2.push((hb, z));
                                        if let Some(colors) = run(&pre2, &finish) {
                                            return Ok((
                                                colors,
                                                vec![format!(
                                                    "girth-6 star: pair color {x} plus spares {y}, {z}"
                                                )],
                                            ));
                                        }
                                    }
                                }
                                if let Some(colors) = run(&pre, &finish) {
                                    return Ok((
                                        colors,
                                        vec![format!(
                                            "girth-6 star: pair color {x} plus spare {y}"
                                        )],
                                    ));
                                }
                            }
                        }
                        if let Some(&w) = intersect(&la[a], &la[b]).first() {
                            if let (Some(ha), Some(hb)) = (
                                host(lists, &ctx.a_sets[a], w),
                                host(lists, &ctx.a_sets[b], w),
                            ) {
                                let mut pre = base.clone();
                                pre.push((ha, w));
                                pre.push((hb, w));
                                if let Some(colors) = run(&pre, &finish) {
                                    return Ok((
                                        colors,
                                        vec![format!(
                                            "girth-6 star: pair colors {x} and {w}"
                                        )],
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    // Last resort catalog: per finish permutation, pick branch colors that
    // avoid the lists of the star edges finished after them.
    for perm in &PERMS {
        let [p0, p1, p2, p3] = *perm;
        let x1 = minus(&minus(&minus(&la[p0], le[p0]), le[p1]), le[p2]);
        let x2 = minus(&minus(&la[p1], le[p0]), le[p1]);
        let x3 = minus(&la[p2], le[p0]);
        let mut pre = Vec::new();
        for (idx, xs) in [(p0, &x1), (p1, &x2), (p2, &x3)] {
            if let Some(&x) = xs.first() {
                if let Some(h) = host(lists, &ctx.a_sets[idx], x) {
                    pre.push((h, x));
                }
            }
        }
        if pre.is_empty() {
            continue;
        }
        if let Some(colors) = run(&pre, &[p3, p2, p1, p0]) {
            return Ok((
                colors,
                vec![format!(
                    "girth-6 star: staged branch colors for finish order {:?}",
                    [p3, p2, p1, p0]
                )],
            ));
        }
    }

    Err(format!("girth-6 strategy catalog exhausted after {attempts} attempts"))
}
