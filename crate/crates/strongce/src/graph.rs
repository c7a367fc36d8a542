//! Multigraph representation with the edge-distance metric, neighborhoods,
//! girth/cycle detection and conflict-graph construction.
//!
//! Loops and parallel edges are allowed. A loop contributes 2 to the degree
//! of its vertex, so a vertex carrying a loop plus two plain edges is
//! saturated at degree 4. Edge ids are dense 0-based indices in input order
//! and are stable for the lifetime of the graph.

use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {edge} endpoint {endpoint} out of range (vertex count {vertex_count})")]
    EndpointOutOfRange {
        edge: usize,
        endpoint: VertexId,
        vertex_count: usize,
    },
    #[error("operation requires at least one vertex")]
    EmptyGraph,
}

/// An undirected multigraph. Immutable after build; all operations are pure
/// reads, so shared references are safe across threads.
#[derive(Debug, Clone)]
pub struct MultiGraph {
    vertex_count: usize,
    edges: Vec<(VertexId, VertexId)>,
    /// vertex -> incident edge ids; a loop appears twice.
    incidence: Vec<Vec<EdgeId>>,
}

/// A cycle reported by girth / cycle search. `vertices` lists the cycle
/// vertices in order; `edges` the edge ids, with `edges[i]` joining
/// `vertices[i]` and `vertices[(i+1) % len]`. A loop is a 1-cycle, a
/// parallel pair a 2-cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleWitness {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl CycleWitness {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Girth report: length of a shortest cycle with a witness, or acyclic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Girth {
    Acyclic,
    Cycle(CycleWitness),
}

/// The "distance <= 1 between edges" relation: vertices are edge ids of the
/// underlying graph, adjacency lists are sorted ascending. Strong colorings
/// of the graph are exactly proper vertex colorings of this graph.
#[derive(Debug, Clone)]
pub struct ConflictGraph {
    pub adj: Vec<Vec<EdgeId>>,
}

impl ConflictGraph {
    pub fn edge_count(&self) -> usize {
        self.adj.len()
    }

    pub fn are_adjacent(&self, e1: EdgeId, e2: EdgeId) -> bool {
        self.adj[e1].binary_search(&e2).is_ok()
    }
}

impl MultiGraph {
    /// Builds a graph from endpoint pairs; edge ids are assigned in input order.
    pub fn build(
        vertex_count: usize,
        endpoint_pairs: &[(VertexId, VertexId)],
    ) -> Result<Self, GraphError> {
        let mut incidence = vec![Vec::new(); vertex_count];
        for (idx, &(u, v)) in endpoint_pairs.iter().enumerate() {
            for endpoint in [u, v] {
                if endpoint >= vertex_count {
                    return Err(GraphError::EndpointOutOfRange {
                        edge: idx,
                        endpoint,
                        vertex_count,
                    });
                }
            }
            incidence[u].push(idx);
            incidence[v].push(idx);
        }
        Ok(MultiGraph {
            vertex_count,
            edges: endpoint_pairs.to_vec(),
            incidence,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        let (u, v) = self.edges[e];
        u == v
    }

    /// The endpoint of `e` other than `at`; for a loop this is `at` itself.
    pub fn other_endpoint(&self, e: EdgeId, at: VertexId) -> VertexId {
        let (u, v) = self.edges[e];
        if u == at {
            v
        } else {
            u
        }
    }

    pub fn incident_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v]
    }

    /// Degree of `v`; a loop counts twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v].len()
    }

    pub fn max_degree(&self) -> Result<usize, GraphError> {
        if self.vertex_count == 0 {
            return Err(GraphError::EmptyGraph);
        }
        Ok((0..self.vertex_count).map(|v| self.degree(v)).max().unwrap())
    }

    /// Minimum-degree vertex, ties broken by smallest vertex id.
    pub fn min_degree_vertex(&self) -> Result<(VertexId, usize), GraphError> {
        if self.vertex_count == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let v = (0..self.vertex_count)
            .min_by_key(|&v| self.degree(v))
            .unwrap();
        Ok((v, self.degree(v)))
    }

    pub fn is_simple(&self) -> bool {
        self.find_loop().is_none() && self.find_parallel_pair().is_none()
    }

    pub fn find_loop(&self) -> Option<EdgeId> {
        (0..self.edge_count()).find(|&e| self.is_loop(e))
    }

    /// First pair of parallel (same-endpoints, non-loop) edges in id order.
    pub fn find_parallel_pair(&self) -> Option<(EdgeId, EdgeId)> {
        let mut seen: std::collections::HashMap<(VertexId, VertexId), EdgeId> =
            std::collections::HashMap::new();
        for e in 0..self.edge_count() {
            let (u, v) = self.edges[e];
            if u == v {
                continue;
            }
            let key = (u.min(v), u.max(v));
            match seen.get(&key) {
                Some(&first) => return Some((first, e)),
                None => {
                    seen.insert(key, e);
                }
            }
        }
        None
    }

    /// Whether vertices `u` and `v` are joined by an edge (loop if `u == v`).
    pub fn has_edge_between(&self, u: VertexId, v: VertexId) -> bool {
        self.incidence[u]
            .iter()
            .any(|&e| self.other_endpoint(e, u) == v || (u == v && self.is_loop(e)))
    }

    /// BFS vertex distances from `source`; `None` for unreachable vertices.
    pub fn vertex_distances(&self, source: VertexId) -> Vec<Option<usize>> {
        self.multi_source_distances(&[source])
    }

    pub fn multi_source_distances(&self, sources: &[VertexId]) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count];
        let mut queue = std::collections::VecDeque::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &e in &self.incidence[u] {
                let w = self.other_endpoint(e, u);
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Minimum vertex distance between the endpoint sets of `e1` and `e2`.
    /// Adjacent or identical edges are at distance 0; `None` if unreachable.
    pub fn edge_distance(&self, e1: EdgeId, e2: EdgeId) -> Option<usize> {
        if e1 == e2 {
            return Some(0);
        }
        let (u1, v1) = self.edges[e1];
        let dist = self.multi_source_distances(&[u1, v1]);
        let (u2, v2) = self.edges[e2];
        match (dist[u2], dist[v2]) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (Some(a), None) => Some(a),
            (None, Some(b)) => Some(b),
            (None, None) => None,
        }
    }

    /// N(e): edges other than `e` at distance at most one from it, ascending.
    pub fn neighborhood(&self, e: EdgeId) -> Vec<EdgeId> {
        let (u, v) = self.edges[e];
        // Vertices within distance 1 of an endpoint of e.
        let mut near = vec![false; self.vertex_count];
        for x in [u, v] {
            near[x] = true;
            for &f in &self.incidence[x] {
                near[self.other_endpoint(f, x)] = true;
            }
        }
        let mut out = Vec::new();
        for f in 0..self.edge_count() {
            if f == e {
                continue;
            }
            let (a, b) = self.edges[f];
            if near[a] || near[b] {
                out.push(f);
            }
        }
        out
    }

    /// Adjacency over edge ids: e1 ~ e2 iff edge_distance(e1, e2) <= 1.
    pub fn conflict_graph(&self) -> ConflictGraph {
        let adj = (0..self.edge_count()).map(|e| self.neighborhood(e)).collect();
        ConflictGraph { adj }
    }

    /// Shortest cycle with a witness. A loop is a 1-cycle, a parallel pair
    /// a 2-cycle; forests report `Acyclic`.
    pub fn girth_and_witness(&self) -> Girth {
        if let Some(e) = self.find_loop() {
            let (v, _) = self.edges[e];
            return Girth::Cycle(CycleWitness {
                vertices: vec![v],
                edges: vec![e],
            });
        }
        let mut best: Option<CycleWitness> = None;
        // The shortest cycle through edge e = (u, v) has length
        // 1 + shortest u-v path avoiding e itself.
        for e in 0..self.edge_count() {
            let (u, v) = self.edges[e];
            if let Some(path) = self.shortest_path_avoiding(u, v, e) {
                let len = path.len() + 1;
                if best.as_ref().map_or(true, |b| len < b.len()) {
                    let mut edges = path;
                    edges.push(e);
                    let mut witness = CycleWitness {
                        vertices: Vec::new(),
                        edges,
                    };
                    normalize_cycle(self, &mut witness);
                    best = Some(witness);
                }
            }
        }
        match best {
            Some(w) => Girth::Cycle(w),
            None => Girth::Acyclic,
        }
    }

    /// Girth as a number: `None` for acyclic graphs.
    pub fn girth(&self) -> Option<usize> {
        match self.girth_and_witness() {
            Girth::Acyclic => None,
            Girth::Cycle(w) => Some(w.len()),
        }
    }

    /// Shortest u-v path as an edge list, not using edge `forbidden`.
    fn shortest_path_avoiding(
        &self,
        u: VertexId,
        v: VertexId,
        forbidden: EdgeId,
    ) -> Option<Vec<EdgeId>> {
        let mut parent: Vec<Option<(VertexId, EdgeId)>> = vec![None; self.vertex_count];
        let mut dist = vec![None; self.vertex_count];
        let mut queue = std::collections::VecDeque::new();
        dist[u] = Some(0usize);
        queue.push_back(u);
        while let Some(x) = queue.pop_front() {
            if x == v {
                break;
            }
            let dx = dist[x].unwrap();
            for &e in &self.incidence[x] {
                if e == forbidden {
                    continue;
                }
                let w = self.other_endpoint(e, x);
                if dist[w].is_none() {
                    dist[w] = Some(dx + 1);
                    parent[w] = Some((x, e));
                    queue.push_back(w);
                }
            }
        }
        dist[v]?;
        let mut path = Vec::new();
        let mut at = v;
        while at != u {
            let (p, e) = parent[at].unwrap();
            path.push(e);
            at = p;
        }
        path.reverse();
        Some(path)
    }

    /// Some cycle of length exactly `k` (vertices distinct), or `None`.
    /// Deterministic given edge order. Intended for k in {3, 4, 5} on
    /// simple graphs.
    pub fn find_cycle_of_length(&self, k: usize) -> Option<CycleWitness> {
        assert!(k >= 3, "find_cycle_of_length expects k >= 3");
        for start in 0..self.vertex_count {
            let mut vertices = vec![start];
            let mut edges = Vec::new();
            if self.cycle_dfs(start, k, &mut vertices, &mut edges) {
                return Some(CycleWitness { vertices, edges });
            }
        }
        None
    }

    fn cycle_dfs(
        &self,
        start: VertexId,
        k: usize,
        vertices: &mut Vec<VertexId>,
        edges: &mut Vec<EdgeId>,
    ) -> bool {
        let at = *vertices.last().unwrap();
        if vertices.len() == k {
            // Close the cycle with the smallest-id edge back to start.
            for &e in &self.incidence[at] {
                if !self.is_loop(e)
                    && self.other_endpoint(e, at) == start
                    && !edges.contains(&e)
                {
                    edges.push(e);
                    return true;
                }
            }
            return false;
        }
        for &e in &self.incidence[at] {
            if self.is_loop(e) || edges.contains(&e) {
                continue;
            }
            let w = self.other_endpoint(e, at);
            if vertices.contains(&w) {
                continue;
            }
            // Only start cycles at their smallest vertex to cut duplicates.
            if w < start {
                continue;
            }
            vertices.push(w);
            edges.push(e);
            if self.cycle_dfs(start, k, vertices, edges) {
                return true;
            }
            vertices.pop();
            edges.pop();
        }
        false
    }

    /// Connected components as vertex sets (by BFS, ascending order).
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.vertex_count];
        let mut out = Vec::new();
        for s in 0..self.vertex_count {
            if seen[s] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = std::collections::VecDeque::new();
            seen[s] = true;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &e in &self.incidence[u] {
                    let w = self.other_endpoint(e, u);
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// Re-orders a cycle witness so `edges[i]` joins `vertices[i]` and
/// `vertices[(i+1) % len]`, starting from the smallest vertex id.
fn normalize_cycle(g: &MultiGraph, w: &mut CycleWitness) {
    let k = w.edges.len();
    if k == 1 {
        w.vertices = vec![g.endpoints(w.edges[0]).0];
        return;
    }
    // Rebuild the vertex sequence by walking the edges from scratch.
    let edges = w.edges.clone();
    // Walk: find an ordering of the edge set forming a closed walk.
    let mut remaining: Vec<EdgeId> = edges.clone();
    remaining.sort_unstable();
    let start_edge = remaining[0];
    let (start, _) = g.endpoints(start_edge);
    let mut vertices = vec![start];
    let mut ordered = vec![start_edge];
    let mut used = vec![start_edge];
    let mut at = g.other_endpoint(start_edge, start);
    while ordered.len() < k {
        vertices.push(at);
        let next = remaining
            .iter()
            .copied()
            .find(|e| !used.contains(e) && {
                let (a, b) = g.endpoints(*e);
                a == at || b == at
            })
            .expect("cycle witness edges must form a closed walk");
        used.push(next);
        ordered.push(next);
        at = g.other_endpoint(next, at);
    }
    debug_assert_eq!(at, start);
    w.vertices = vertices;
    w.edges = ordered;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> MultiGraph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        MultiGraph::build(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> MultiGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        MultiGraph::build(n, &edges).unwrap()
    }

    fn star4() -> MultiGraph {
        MultiGraph::build(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap()
    }

    #[test]
    fn build_basic_shapes() {
        let k2 = MultiGraph::build(2, &[(0, 1)]).unwrap();
        assert_eq!(k2.edge_count(), 1);

        let looped = MultiGraph::build(1, &[(0, 0)]).unwrap();
        assert_eq!(looped.degree(0), 2);

        let parallel = MultiGraph::build(2, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(parallel.degree(0), 2);
        assert_eq!(parallel.degree(1), 2);
    }

    #[test]
    fn build_rejects_bad_endpoint() {
        let err = MultiGraph::build(2, &[(0, 2)]).unwrap_err();
        assert!(matches!(err, GraphError::EndpointOutOfRange { .. }));
    }

    #[test]
    fn degrees() {
        let g = star4();
        assert_eq!(g.max_degree().unwrap(), 4);
        let (v, d) = g.min_degree_vertex().unwrap();
        assert_eq!(d, 1);
        assert_eq!(v, 1); // smallest leaf id

        let c6 = cycle(6);
        assert_eq!(c6.max_degree().unwrap(), 2);
        assert_eq!(c6.min_degree_vertex().unwrap().1, 2);

        let looped = MultiGraph::build(1, &[(0, 0)]).unwrap();
        assert_eq!(looped.max_degree().unwrap(), 2);
    }

    #[test]
    fn edge_distances_on_paths() {
        let p4 = path(4);
        assert_eq!(p4.edge_distance(0, 1), Some(0));
        assert_eq!(p4.edge_distance(0, 2), Some(1));
        let p5 = path(5);
        assert_eq!(p5.edge_distance(0, 3), Some(2));
    }

    #[test]
    fn edge_distance_unreachable() {
        let g = MultiGraph::build(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.edge_distance(0, 1), None);
    }

    #[test]
    fn edge_distance_symmetric_small() {
        let g = MultiGraph::build(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (4, 5)]).unwrap();
        for e1 in 0..g.edge_count() {
            for e2 in 0..g.edge_count() {
                assert_eq!(g.edge_distance(e1, e2), g.edge_distance(e2, e1));
            }
        }
    }

    #[test]
    fn neighborhoods() {
        let g = star4();
        for e in 0..4 {
            assert_eq!(g.neighborhood(e).len(), 3);
        }
        let c6 = cycle(6);
        for e in 0..6 {
            assert_eq!(c6.neighborhood(e).len(), 4);
        }
    }

    #[test]
    fn girth_cases() {
        assert_eq!(cycle(5).girth(), Some(5));
        let parallel = MultiGraph::build(2, &[(0, 1), (0, 1)]).unwrap();
        match parallel.girth_and_witness() {
            Girth::Cycle(w) => {
                assert_eq!(w.len(), 2);
                let mut es = w.edges.clone();
                es.sort_unstable();
                assert_eq!(es, vec![0, 1]);
            }
            Girth::Acyclic => panic!("parallel pair is a 2-cycle"),
        }
        assert_eq!(path(5).girth(), None);
        let looped = MultiGraph::build(2, &[(0, 0), (0, 1)]).unwrap();
        assert_eq!(looped.girth(), Some(1));
    }

    #[test]
    fn girth_witness_is_genuine() {
        let g = MultiGraph::build(
            7,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (2, 5), (5, 6), (6, 3)],
        )
        .unwrap();
        match g.girth_and_witness() {
            Girth::Cycle(w) => {
                assert_eq!(w.len(), 4); // 2-3-6-5 via edges 2,7,6,5
                // Consecutive witness edges share the listed vertices.
                for i in 0..w.len() {
                    let (a, b) = g.endpoints(w.edges[i]);
                    let u = w.vertices[i];
                    let v = w.vertices[(i + 1) % w.len()];
                    assert!((a, b) == (u, v) || (a, b) == (v, u));
                }
            }
            Girth::Acyclic => panic!(),
        }
    }

    #[test]
    fn find_cycles_fixed_length() {
        let c4 = cycle(4);
        let w = c4.find_cycle_of_length(4).unwrap();
        assert_eq!(w.len(), 4);
        assert!(cycle(6).find_cycle_of_length(5).is_none());
        assert!(cycle(6).find_cycle_of_length(3).is_none());
    }

    #[test]
    fn petersen_has_5_cycle() {
        // Petersen: outer C5, inner 5-star polygon, spokes.
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, 5 + i));
        }
        let g = MultiGraph::build(10, &edges).unwrap();
        let w = g.find_cycle_of_length(5).unwrap();
        assert_eq!(w.len(), 5);
        // Witness is a genuine 5-cycle.
        let mut vs = w.vertices.clone();
        vs.sort_unstable();
        vs.dedup();
        assert_eq!(vs.len(), 5);
        for i in 0..5 {
            let (a, b) = g.endpoints(w.edges[i]);
            let u = w.vertices[i];
            let v = w.vertices[(i + 1) % 5];
            assert!((a, b) == (u, v) || (a, b) == (v, u));
        }
    }

    #[test]
    fn conflict_graph_matches_pairwise_distance() {
        let c5 = cycle(5);
        let cg = c5.conflict_graph();
        for e in 0..5 {
            assert_eq!(cg.adj[e].len(), 4); // K5
        }
        let g = MultiGraph::build(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        let cg = g.conflict_graph();
        for e1 in 0..g.edge_count() {
            for e2 in 0..g.edge_count() {
                if e1 == e2 {
                    continue;
                }
                let near = g.edge_distance(e1, e2).map_or(false, |d| d <= 1);
                assert_eq!(cg.are_adjacent(e1, e2), near);
            }
        }
    }

    #[test]
    fn components_split() {
        let g = MultiGraph::build(5, &[(0, 1), (2, 3)]).unwrap();
        let comps = g.components();
        assert_eq!(comps, vec![vec![0, 1], vec![2, 3], vec![4]]);
    }
}
