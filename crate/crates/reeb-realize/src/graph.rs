//! Finite connected multigraphs, degree-two smoothing, and homeomorphism
//! testing (two graphs are homeomorphic iff their smoothings are isomorphic
//! as multigraphs).

use std::collections::HashSet;
use std::fmt;

/// Connected finite multigraph. Parallel edges are allowed everywhere;
/// self-loops only in the internal smoothed form (`allow_loops`).
#[derive(Clone, Debug)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    SelfLoop(usize),
    VertexOutOfRange(usize),
    Disconnected,
    Empty,
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::SelfLoop(v) => write!(f, "self-loop at vertex {v}"),
            GraphError::VertexOutOfRange(v) => write!(f, "vertex id {v} out of range"),
            GraphError::Disconnected => write!(f, "graph is not connected"),
            GraphError::Empty => write!(f, "graph has no vertices"),
        }
    }
}

impl std::error::Error for GraphError {}

impl MultiGraph {
    /// User-facing constructor: connected, no self-loops.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        for &(u, v) in &edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
        }
        let g = MultiGraph { n, edges };
        if g.n == 0 {
            return Err(GraphError::Empty);
        }
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    /// Internal form: self-loops permitted (smoothing can create them).
    pub fn new_with_loops(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange(u.max(v)));
            }
        }
        let g = MultiGraph { n, edges };
        if g.n == 0 {
            return Err(GraphError::Empty);
        }
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Degree counts loops twice.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// First Betti number `E - V + 1` of a connected graph.
    pub fn betti1(&self) -> i64 {
        self.edges.len() as i64 - self.n as i64 + 1
    }

    /// Euler characteristic `V - E`.
    pub fn euler_characteristic(&self) -> i64 {
        self.n as i64 - self.edges.len() as i64
    }

    /// Subdivide edge `e` once (insert a fresh degree-2 vertex).
    pub fn subdivide_edge(&self, e: usize) -> MultiGraph {
        let (u, v) = self.edges[e];
        let w = self.n;
        let mut edges = self.edges.clone();
        edges.swap_remove(e);
        edges.push((u, w));
        edges.push((w, v));
        MultiGraph { n: self.n + 1, edges }
    }
}

/// Replace every maximal chain through degree-2 vertices by a single edge.
///
/// A cycle consisting entirely of degree-2 vertices becomes a single vertex
/// carrying a loop. Idempotent.
pub fn smooth_degree_two(g: &MultiGraph) -> MultiGraph {
    let deg: Vec<usize> = (0..g.n).map(|v| g.degree(v)).collect();
    // Keep all vertices of degree != 2; loops count twice so a loop vertex
    // (degree 2 via its own loop) must be kept as well.
    let mut keep: Vec<bool> = (0..g.n).map(|v| deg[v] != 2).collect();
    for &(u, v) in &g.edges {
        if u == v {
            keep[u] = true;
        }
    }
    if keep.iter().all(|&k| !k) {
        // pure cycle: one loop marker
        return MultiGraph {
            n: 1,
            edges: vec![(0, 0)],
        };
    }

    // incidence: vertex -> list of (edge index, endpoint slot)
    let mut inc: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.n];
    for (i, &(u, v)) in g.edges.iter().enumerate() {
        inc[u].push((i, 0));
        if u != v {
            inc[v].push((i, 1));
        } else {
            inc[u].push((i, 1));
        }
    }

    let mut new_id = vec![usize::MAX; g.n];
    let mut next = 0usize;
    for v in 0..g.n {
        if keep[v] {
            new_id[v] = next;
            next += 1;
        }
    }

    let mut used = vec![false; g.edges.len()];
    let mut new_edges = Vec::new();
    for v in 0..g.n {
        if !keep[v] {
            continue;
        }
        for &(e0, slot0) in &inc[v] {
            if used[e0] {
                continue;
            }
            // walk from v along the chain through degree-2 vertices
            used[e0] = true;
            let (a, b) = g.edges[e0];
            if a == b {
                new_edges.push((new_id[v], new_id[v]));
                continue;
            }
            let mut prev = v;
            let mut cur = if slot0 == 0 { b } else { a };
            let mut last_edge = e0;
            while !keep[cur] {
                let &(e1, _) = inc[cur]
                    .iter()
                    .find(|&&(e, _)| e != last_edge)
                    .expect("degree-2 vertex must have a second incidence");
                used[e1] = true;
                let (x, y) = g.edges[e1];
                let nxt = if x == cur { y } else { x };
                prev = cur;
                cur = nxt;
                last_edge = e1;
            }
            let _ = prev;
            new_edges.push((new_id[v], new_id[cur]));
        }
    }
    // marking edges used means each chain is emitted exactly once
    MultiGraph {
        n: next,
        edges: new_edges,
    }
}

/// Multigraph isomorphism via backtracking with degree pruning.
pub fn isomorphic(g1: &MultiGraph, g2: &MultiGraph) -> bool {
    if g1.n != g2.n || g1.edges.len() != g2.edges.len() {
        return false;
    }
    let n = g1.n;
    let mut d1: Vec<usize> = (0..n).map(|v| g1.degree(v)).collect();
    let mut d2: Vec<usize> = (0..n).map(|v| g2.degree(v)).collect();
    {
        let mut s1 = d1.clone();
        let mut s2 = d2.clone();
        s1.sort_unstable();
        s2.sort_unstable();
        if s1 != s2 {
            return false;
        }
    }
    // adjacency multiplicity matrices (loops on the diagonal)
    let adj = |g: &MultiGraph| -> Vec<Vec<usize>> {
        let mut m = vec![vec![0usize; n]; n];
        for &(u, v) in &g.edges {
            if u == v {
                m[u][u] += 1;
            } else {
                m[u][v] += 1;
                m[v][u] += 1;
            }
        }
        m
    };
    let a1 = adj(g1);
    let a2 = adj(g2);
    d1.sort_unstable();
    d2.sort_unstable();

    // order g1 vertices by decreasing degree for faster pruning
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g1.degree(v)));

    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn try_map(
        idx: usize,
        order: &[usize],
        a1: &[Vec<usize>],
        a2: &[Vec<usize>],
        g1deg: &dyn Fn(usize) -> usize,
        g2deg: &dyn Fn(usize) -> usize,
        mapping: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if idx == order.len() {
            return true;
        }
        let v = order[idx];
        for w in 0..used.len() {
            if used[w] || g1deg(v) != g2deg(w) || a1[v][v] != a2[w][w] {
                continue;
            }
            // all previously mapped vertices must have matching multiplicities
            let ok = order[..idx]
                .iter()
                .all(|&u| a1[v][u] == a2[w][mapping[u]]);
            if !ok {
                continue;
            }
            mapping[v] = w;
            used[w] = true;
            if try_map(idx + 1, order, a1, a2, g1deg, g2deg, mapping, used) {
                return true;
            }
            mapping[v] = usize::MAX;
            used[w] = false;
        }
        false
    }

    let g1d = |v: usize| g1.degree(v);
    let g2d = |v: usize| g2.degree(v);
    try_map(0, &order, &a1, &a2, &g1d, &g2d, &mut mapping, &mut used)
}

/// Two connected multigraphs are homeomorphic iff their degree-two smoothings
/// are isomorphic.
pub fn homeomorphic(g1: &MultiGraph, g2: &MultiGraph) -> bool {
    isomorphic(&smooth_degree_two(g1), &smooth_degree_two(g2))
}

/// Brute-force isomorphism over all permutations; test oracle for small n.
pub fn isomorphic_brute_force(g1: &MultiGraph, g2: &MultiGraph) -> bool {
    if g1.n != g2.n || g1.edges.len() != g2.edges.len() {
        return false;
    }
    let n = g1.n;
    let canon = |g: &MultiGraph, perm: &[usize]| -> Vec<(usize, usize)> {
        let mut es: Vec<(usize, usize)> = g
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u], perm[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        es.sort_unstable();
        es
    };
    let id: Vec<usize> = (0..n).collect();
    let target = canon(g2, &id);
    let mut perm: Vec<usize> = (0..n).collect();
    permute_all(&mut perm, 0, &mut |p| canon(g1, p) == target)
}

fn permute_all(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if k == perm.len() {
        return f(perm);
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        if permute_all(perm, k + 1, f) {
            perm.swap(k, i);
            return true;
        }
        perm.swap(k, i);
    }
    false
}

/// Canonical-ish sorted degree sequence after smoothing; quick census helper.
pub fn smoothed_degree_sequence(g: &MultiGraph) -> Vec<usize> {
    let s = smooth_degree_two(g);
    let mut d: Vec<usize> = (0..s.vertex_count()).map(|v| s.degree(v)).collect();
    d.sort_unstable();
    d
}

/// Deduplicated vertex set of an edge list, for building graphs from ids.
pub fn graph_from_edge_list(pairs: &[(u64, u64)]) -> Result<MultiGraph, GraphError> {
    let mut ids: Vec<u64> = pairs
        .iter()
        .flat_map(|&(a, b)| [a, b])
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    ids.sort_unstable();
    let index = |x: u64| ids.binary_search(&x).unwrap();
    let edges: Vec<(usize, usize)> = pairs.iter().map(|&(a, b)| (index(a), index(b))).collect();
    MultiGraph::new_with_loops(ids.len(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> MultiGraph {
        MultiGraph::new(n, (0..n - 1).map(|i| (i, i + 1)).collect()).unwrap()
    }

    fn cycle(n: usize) -> MultiGraph {
        let mut e: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        e.push((n - 1, 0));
        MultiGraph::new(n, e).unwrap()
    }

    fn theta() -> MultiGraph {
        MultiGraph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap()
    }

    #[test]
    fn constructor_rejects_loops_and_disconnection() {
        assert!(matches!(
            MultiGraph::new(2, vec![(0, 0)]),
            Err(GraphError::SelfLoop(0))
        ));
        assert!(matches!(
            MultiGraph::new(3, vec![(0, 1)]),
            Err(GraphError::Disconnected)
        ));
    }

    #[test]
    fn smoothing_path_to_edge() {
        let s = smooth_degree_two(&path(3));
        assert_eq!(s.vertex_count(), 2);
        assert_eq!(s.edge_count(), 1);
    }

    #[test]
    fn smoothing_theta_unchanged() {
        let s = smooth_degree_two(&theta());
        assert_eq!(s.vertex_count(), 2);
        assert_eq!(s.edge_count(), 3);
    }

    #[test]
    fn smoothing_cycle_to_loop() {
        let s = smooth_degree_two(&cycle(5));
        assert_eq!(s.vertex_count(), 1);
        assert_eq!(s.edge_count(), 1);
        assert_eq!(s.edges()[0], (0, 0));
    }

    #[test]
    fn smoothing_idempotent() {
        for g in [path(5), cycle(6), theta()] {
            let s1 = smooth_degree_two(&g);
            let s2 = smooth_degree_two(&s1);
            assert!(isomorphic(&s1, &s2));
        }
    }

    #[test]
    fn homeomorphism_examples() {
        assert!(homeomorphic(&path(3), &path(2)));
        assert!(!homeomorphic(&theta(), &cycle(4)));
        // 3-star vs path of 4 vertices
        let star = MultiGraph::new(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(!homeomorphic(&star, &path(4)));
        assert!(homeomorphic(&cycle(3), &cycle(7)));
    }

    #[test]
    fn homeomorphic_after_subdivision() {
        let g = theta();
        let mut h = g.clone();
        for _ in 0..4 {
            h = h.subdivide_edge(0);
        }
        assert!(homeomorphic(&g, &h));
    }

    #[test]
    fn iso_matches_brute_force_small() {
        let gs = [
            path(4),
            cycle(4),
            theta(),
            MultiGraph::new(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap(),
            MultiGraph::new(3, vec![(0, 1), (1, 2), (0, 2), (0, 1)]).unwrap(),
        ];
        for a in &gs {
            for b in &gs {
                if a.vertex_count() <= 7 && b.vertex_count() <= 7 {
                    assert_eq!(
                        isomorphic(a, b),
                        isomorphic_brute_force(a, b),
                        "mismatch on pair"
                    );
                }
            }
        }
    }
}
