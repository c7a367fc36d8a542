//! Seeded instance generation: random multigraphs of maximum degree 4,
//! random 4-regular simple graphs (pairing model), girth-controlled
//! 4-regular graphs by edge-swap local search, named fixtures, and random
//! list assignments. Everything is deterministic for a fixed RNG state.

use crate::coloring::{ColorId, ListAssignment};
use crate::graph::MultiGraph;
use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("invalid parameters: {0}")]
    BadParameters(String),
    #[error("generation failed after {0} attempts")]
    Exhausted(usize),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

/// Random multigraph with maximum degree 4: loops and parallel edges
/// allowed. Aims for roughly 3n/2 edges but stops early when no endpoint
/// capacity is left.
pub fn random_maxdeg4<R: Rng>(n: usize, rng: &mut R) -> Result<MultiGraph, GenError> {
    if n == 0 {
        return Err(GenError::BadParameters("need at least one vertex".into()));
    }
    let target = 3 * n / 2 + 1;
    let mut degrees = vec![0usize; n];
    let mut edges = Vec::new();
    let mut misses = 0;
    while edges.len() < target && misses < 200 {
        let u = rng.gen_range(0..n);
        // A loop costs 2 degrees at one vertex.
        let make_loop = rng.gen_ratio(1, 12);
        if make_loop {
            if degrees[u] + 2 <= 4 {
                degrees[u] += 2;
                edges.push((u, u));
            } else {
                misses += 1;
            }
            continue;
        }
        let v = rng.gen_range(0..n);
        if u == v || degrees[u] >= 4 || degrees[v] >= 4 {
            misses += 1;
            continue;
        }
        degrees[u] += 1;
        degrees[v] += 1;
        edges.push((u, v));
    }
    MultiGraph::build(n, &edges).map_err(|e| GenError::BadParameters(e.to_string()))
}

/// Random 4-regular simple graph by the pairing model: 4 points per vertex,
/// a random perfect matching on the points, rejected and retried whenever it
/// produces a loop or parallel edge.
pub fn random_regular4<R: Rng>(n: usize, rng: &mut R) -> Result<MultiGraph, GenError> {
    if n < 5 {
        return Err(GenError::BadParameters(
            "a 4-regular simple graph needs at least 5 vertices".into(),
        ));
    }
    const ATTEMPTS: usize = 2000;
    for _ in 0..ATTEMPTS {
        let mut points: Vec<usize> = (0..4 * n).collect();
        points.shuffle(rng);
        let mut edges = Vec::with_capacity(2 * n);
        let mut seen = std::collections::HashSet::new();
        let mut ok = true;
        for pair in points.chunks(2) {
            let (u, v) = (pair[0] / 4, pair[1] / 4);
            if u == v || !seen.insert((u.min(v), u.max(v))) {
                ok = false;
                break;
            }
            edges.push((u, v));
        }
        if ok {
            return MultiGraph::build(n, &edges).map_err(|e| GenError::BadParameters(e.to_string()));
        }
    }
    Err(GenError::Exhausted(ATTEMPTS))
}

/// Neighbor bitsets for fast short-cycle counting.
fn bitsets(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<u64>> {
    let words = n.div_ceil(64);
    let mut sets = vec![vec![0u64; words]; n];
    for &(u, v) in edges {
        sets[u][v / 64] |= 1 << (v % 64);
        sets[v][u / 64] |= 1 << (u % 64);
    }
    sets
}

fn common_neighbors(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
}

/// Weighted count of 3- and 4-cycles below the girth target: each triangle
/// and (for target 6) each 4-cycle contributes once.
fn short_cycle_score(n: usize, edges: &[(usize, usize)], girth_target: usize) -> usize {
    let sets = bitsets(n, edges);
    let mut triangles = 0usize;
    for &(u, v) in edges {
        triangles += common_neighbors(&sets[u], &sets[v]) as usize;
    }
    triangles /= 3; // each triangle counted once per edge
    let mut squares = 0usize;
    if girth_target >= 5 {
        for u in 0..n {
            for v in (u + 1)..n {
                let c = common_neighbors(&sets[u], &sets[v]) as usize;
                squares += c * c.saturating_sub(1) / 2;
            }
        }
    }
    triangles + squares
}

/// 4-regular simple graph with girth at least `girth_target` (4, 5, or 6):
/// start from a random 4-regular graph and do degree-preserving 2-edge
/// swaps that never increase the number of short cycles.
pub fn regular4_girth<R: Rng>(
    n: usize,
    girth_target: usize,
    rng: &mut R,
) -> Result<MultiGraph, GenError> {
    if !(4..=6).contains(&girth_target) {
        return Err(GenError::BadParameters(format!(
            "girth target {girth_target} not in 4..=6"
        )));
    }
    let min_n = match girth_target {
        4 => 8,
        5 => 19, // no smaller 4-regular girth-5 graph exists
        _ => 26,
    };
    if n < min_n {
        return Err(GenError::BadParameters(format!(
            "girth {girth_target} needs at least {min_n} vertices"
        )));
    }
    if girth_target == 6 {
        return bipartite_regular4_girth6(n, rng);
    }
    const RESTARTS: usize = 40;
    for _ in 0..RESTARTS {
        let g = random_regular4(n, rng)?;
        let mut edges = g.edges().to_vec();
        let mut score = short_cycle_score(n, &edges, girth_target);
        let budget = 4000 * n;
        let mut stale = 0usize;
        for _ in 0..budget {
            if score == 0 {
                break;
            }
            let i = rng.gen_range(0..edges.len());
            let j = rng.gen_range(0..edges.len());
            if i == j {
                continue;
            }
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if a == c || a == d || b == c || b == d {
                continue;
            }
            // Two rewirings preserve all degrees; pick one at random.
            let (x, y) = if rng.gen_bool(0.5) {
                ((a, c), (b, d))
            } else {
                ((a, d), (b, c))
            };
            let exists = |p: usize, q: usize| {
                edges
                    .iter()
                    .any(|&(s, t)| (s == p && t == q) || (s == q && t == p))
            };
            if exists(x.0, x.1) || exists(y.0, y.1) {
                continue;
            }
            let mut next = edges.clone();
            next[i] = x;
            next[j] = y;
            let next_score = short_cycle_score(n, &next, girth_target);
            // Accept improvements, and occasionally sideways moves to
            // escape plateaus.
            if next_score < score || (next_score == score && rng.gen_ratio(1, 4)) {
                edges = next;
                score = next_score;
                stale = 0;
            } else {
                stale += 1;
                if stale > 2000 {
                    break;
                }
            }
        }
        if score == 0 {
            return MultiGraph::build(n, &edges).map_err(|e| GenError::BadParameters(e.to_string()));
        }
    }
    Err(GenError::Exhausted(RESTARTS))
}

/// Girth >= 6 via a bipartite construction: the union of four random
/// perfect matchings between two sides is 4-regular and bipartite (no odd
/// cycles), so eliminating parallel edges and 4-cycles by endpoint swaps
/// yields girth at least 6. Needs an even n with at least 13 vertices per
/// side (the girth-6 size bound for degree 4).
fn bipartite_regular4_girth6<R: Rng>(n: usize, rng: &mut R) -> Result<MultiGraph, GenError> {
    if n % 2 != 0 || n < 26 {
        return Err(GenError::BadParameters(
            "girth 6 needs an even vertex count of at least 26".into(),
        ));
    }
    let m = n / 2;
    // Duplicate edges weigh far more than 4-cycles so they vanish first.
    let score = |edges: &[(usize, usize)]| -> usize {
        let mut sorted = edges.to_vec();
        sorted.sort_unstable();
        let mut dup = 0;
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                dup += 1;
            }
        }
        let distinct: Vec<(usize, usize)> = {
            sorted.dedup();
            sorted
        };
        let sets = bitsets(n, &distinct);
        let mut squares = 0usize;
        for u in 0..m {
            for v in (u + 1)..m {
                let c = common_neighbors(&sets[u], &sets[v]) as usize;
                squares += c * c.saturating_sub(1) / 2;
            }
        }
        dup * 1000 + squares
    };

    const RESTARTS: usize = 40;
    for _ in 0..RESTARTS {
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(4 * m);
        for _ in 0..4 {
            let mut perm: Vec<usize> = (0..m).collect();
            perm.shuffle(rng);
            edges.extend((0..m).map(|i| (i, m + perm[i])));
        }
        let mut s = score(&edges);
        let mut stale = 0usize;
        for _ in 0..4000 * n {
            if s == 0 {
                break;
            }
            let i = rng.gen_range(0..edges.len());
            let j = rng.gen_range(0..edges.len());
            let ((a, b), (c, d)) = (edges[i], edges[j]);
            if i == j || a == c || b == d {
                continue;
            }
            // Swap right endpoints: stays bipartite and degree-preserving.
            let mut next = edges.clone();
            next[i] = (a, d);
            next[j] = (c, b);
            let ns = score(&next);
            if ns < s || (ns == s && rng.gen_ratio(1, 4)) {
                edges = next;
                s = ns;
                stale = 0;
            } else {
                stale += 1;
                if stale > 3000 {
                    break;
                }
            }
        }
        if s == 0 {
            return MultiGraph::build(n, &edges).map_err(|e| GenError::BadParameters(e.to_string()));
        }
    }
    Err(GenError::Exhausted(RESTARTS))
}

/// An edge whose neighborhood attains the extremal size 24 for maximum
/// degree 4: center edge (0,1), three more edges at each endpoint, and
/// three leaves behind each of those six vertices.
pub fn fig1_witness() -> MultiGraph {
    let mut edges = vec![(0usize, 1usize)];
    let mut next = 8;
    for v in [0, 1] {
        for w in 0..3 {
            edges.push((v, 2 + 3 * v + w));
        }
    }
    for mid in 2..8 {
        for _ in 0..3 {
            edges.push((mid, next));
            next += 1;
        }
    }
    MultiGraph::build(next, &edges).unwrap()
}

/// The smallest 4-regular graph of girth 5 (19 vertices, 38 edges).
pub fn cage_4_5() -> MultiGraph {
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

/// The smallest 4-regular graph of girth 6 (26 vertices, 52 edges): the
/// point-line incidence graph of the projective plane of order 3.
pub fn cage_4_6() -> MultiGraph {
    let mut points = Vec::new();
    for a in 0..3i32 {
        for b in 0..3i32 {
            for c in 0..3i32 {
                let p = [a, b, c];
                if p == [0, 0, 0] {
                    continue;
                }
                if *p.iter().find(|&&x| x != 0).unwrap() == 1 {
                    points.push(p);
                }
            }
        }
    }
    let mut edges = Vec::new();
    for (pi, p) in points.iter().enumerate() {
        for (li, l) in points.iter().enumerate() {
            let dot: i32 = p.iter().zip(l).map(|(x, y)| x * y).sum();
            if dot % 3 == 0 {
                edges.push((pi, 13 + li));
            }
        }
    }
    MultiGraph::build(26, &edges).unwrap()
}

/// A 4-cycle core fixture: the cycle 0-1-2-3 with two pendant edges per
/// cycle vertex. `shared_far_pairs` merges the far endpoints of that many
/// opposite pendant pairs (0, 1, or 2), controlling how many adjacent pairs
/// the core has.
pub fn c4_core(shared_far_pairs: usize) -> Result<MultiGraph, GenError> {
    if shared_far_pairs > 2 {
        return Err(GenError::BadParameters(
            "at most two opposite pendant pairs can share endpoints".into(),
        ));
    }
    let mut edges = vec![(0usize, 1usize), (1, 2), (2, 3), (3, 0)];
    let mut next = 4;
    for v in 0..4 {
        edges.push((v, next));
        edges.push((v, next + 1));
        next += 2;
    }
    // Pendant a at vertex 0 goes to vertex 4; rerouting pendant a at vertex
    // 2 (vertex 8) onto vertex 4 creates one adjacent pair, similarly for
    // vertices 1 and 3 (5 and 9... actually 6 and 10).
    if shared_far_pairs >= 1 {
        edges[8] = (2, 4); // was (2, 8)
    }
    if shared_far_pairs == 2 {
        edges[10] = (3, 6); // was (3, 10)
    }
    MultiGraph::build(next, &edges).map_err(|e| GenError::BadParameters(e.to_string()))
}

/// Named fixture lookup used by the CLI.
pub fn fixture(name: &str) -> Result<MultiGraph, GenError> {
    match name {
        "fig1-witness" => Ok(fig1_witness()),
        "cage-4-5" => Ok(cage_4_5()),
        "cage-4-6" => Ok(cage_4_6()),
        "c4-no-pairs" => c4_core(0),
        "c4-one-pair" => c4_core(1),
        "c4-two-pairs" => c4_core(2),
        other => Err(GenError::UnknownFixture(other.to_string())),
    }
}

pub const FIXTURE_NAMES: [&str; 6] = [
    "fig1-witness",
    "cage-4-5",
    "cage-4-6",
    "c4-no-pairs",
    "c4-one-pair",
    "c4-two-pairs",
];

/// One sorted list of `k` distinct colors drawn from `{0..palette-1}` per
/// edge.
pub fn random_lists<R: Rng>(
    edge_count: usize,
    k: u32,
    palette: u32,
    rng: &mut R,
) -> Result<ListAssignment, GenError> {
    if palette < k {
        return Err(GenError::BadParameters(format!(
            "palette of {palette} colors cannot supply lists of size {k}"
        )));
    }
    let mut lists = Vec::with_capacity(edge_count);
    for _ in 0..edge_count {
        let mut colors: Vec<ColorId> =
            rand::seq::index::sample(rng, palette as usize, k as usize)
                .into_iter()
                .map(|c| c as ColorId)
                .collect();
        colors.sort_unstable();
        lists.push(colors);
    }
    ListAssignment::new(lists).map_err(|e| GenError::BadParameters(e.to_string()))
}
