//! Plane embeddings of multigraphs with exact rational coordinates, the
//! line-oriented input format, and the genericity validators.
//!
//! An embedding is generic when the first coordinate is strictly monotone
//! along every edge route; it is M-generic when additionally every vertex of
//! degree at least two has incident edges leaving to both sides of its
//! abscissa.

use std::collections::BTreeMap;
use std::fmt;

use crate::geom::{segments_cross_improperly, Pt, Seg};
use crate::graph::MultiGraph;
use crate::num::parse_rat;

#[derive(Clone, Debug)]
pub struct EmbeddedGraph {
    vertex_names: Vec<String>,
    positions: Vec<Pt>,
    edge_names: Vec<String>,
    /// endpoint indices per edge
    endpoints: Vec<(usize, usize)>,
    /// interior bend points per edge
    bends: Vec<Vec<Pt>>,
}

#[derive(Debug, Clone)]
pub enum EmbedError {
    Parse { line: usize, msg: String },
    DuplicateVertex(String),
    DuplicateEdge(String),
    UnknownVertex(String),
    SelfLoop(String),
    CoincidentPoints(String),
    Disconnected,
    /// Two routes share a point other than a common endpoint; this is a
    /// structural failure, not a genericity failure.
    CrossingRoutes(String, String),
}

impl fmt::Display for EmbedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbedError::Parse { line, msg } => write!(f, "line {line}: {msg}"),
            EmbedError::DuplicateVertex(v) => write!(f, "duplicate vertex id `{v}`"),
            EmbedError::DuplicateEdge(e) => write!(f, "duplicate edge id `{e}`"),
            EmbedError::UnknownVertex(v) => write!(f, "unknown vertex id `{v}`"),
            EmbedError::SelfLoop(e) => write!(f, "edge `{e}` is a self-loop"),
            EmbedError::CoincidentPoints(m) => write!(f, "coincident points: {m}"),
            EmbedError::Disconnected => write!(f, "embedded graph is not connected"),
            EmbedError::CrossingRoutes(a, b) => {
                write!(f, "routes of edges `{a}` and `{b}` cross")
            }
        }
    }
}

impl std::error::Error for EmbedError {}

#[derive(Clone, Debug)]
pub struct GenericityReport {
    pub is_generic: bool,
    pub is_m_generic: bool,
    /// (vertex or edge id, reason)
    pub violations: Vec<(String, String)>,
}

impl EmbeddedGraph {
    pub fn new(
        vertices: Vec<(String, Pt)>,
        edges: Vec<(String, String, String, Vec<Pt>)>,
    ) -> Result<Self, EmbedError> {
        let mut name_to_idx: BTreeMap<String, usize> = BTreeMap::new();
        let mut vertex_names = Vec::new();
        let mut positions = Vec::new();
        for (name, p) in vertices {
            if name_to_idx.contains_key(&name) {
                return Err(EmbedError::DuplicateVertex(name));
            }
            name_to_idx.insert(name.clone(), vertex_names.len());
            vertex_names.push(name);
            positions.push(p);
        }
        let mut edge_names = Vec::new();
        let mut endpoints = Vec::new();
        let mut bends = Vec::new();
        let mut seen_edges = BTreeMap::new();
        for (ename, u, v, bpts) in edges {
            if seen_edges.contains_key(&ename) {
                return Err(EmbedError::DuplicateEdge(ename));
            }
            seen_edges.insert(ename.clone(), ());
            let ui = *name_to_idx
                .get(&u)
                .ok_or_else(|| EmbedError::UnknownVertex(u.clone()))?;
            let vi = *name_to_idx
                .get(&v)
                .ok_or_else(|| EmbedError::UnknownVertex(v.clone()))?;
            if ui == vi {
                return Err(EmbedError::SelfLoop(ename));
            }
            edge_names.push(ename);
            endpoints.push((ui, vi));
            bends.push(bpts);
        }
        let g = EmbeddedGraph {
            vertex_names,
            positions,
            edge_names,
            endpoints,
            bends,
        };
        g.check_structure()?;
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.positions.len()
    }

    pub fn edge_count(&self) -> usize {
        self.endpoints.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertex_names[v]
    }

    pub fn edge_name(&self, e: usize) -> &str {
        &self.edge_names[e]
    }

    pub fn position(&self, v: usize) -> &Pt {
        &self.positions[v]
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.endpoints[e]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.endpoints
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    /// Full polyline of an edge, from the first endpoint to the second.
    pub fn route(&self, e: usize) -> Vec<Pt> {
        let (u, v) = self.endpoints[e];
        let mut pts = vec![self.positions[u].clone()];
        pts.extend(self.bends[e].iter().cloned());
        pts.push(self.positions[v].clone());
        pts
    }

    pub fn graph(&self) -> MultiGraph {
        MultiGraph::new(self.vertex_count(), self.endpoints.clone())
            .expect("embedding invariants ensure a valid graph")
    }

    fn route_segments(&self, e: usize) -> Vec<Seg> {
        let pts = self.route(e);
        pts.windows(2)
            .map(|w| Seg::new(w[0].clone(), w[1].clone()))
            .collect()
    }

    fn check_structure(&self) -> Result<(), EmbedError> {
        for (i, p) in self.positions.iter().enumerate() {
            for q in self.positions.iter().skip(i + 1) {
                if p == q {
                    return Err(EmbedError::CoincidentPoints(format!(
                        "two vertices at {:?}",
                        p
                    )));
                }
            }
        }
        for e in 0..self.edge_count() {
            let pts = self.route(e);
            for w in pts.windows(2) {
                if w[0] == w[1] {
                    return Err(EmbedError::CoincidentPoints(format!(
                        "repeated route point on edge `{}`",
                        self.edge_names[e]
                    )));
                }
            }
        }
        // routes must be simple and pairwise disjoint except shared endpoints
        let all_segs: Vec<Vec<Seg>> = (0..self.edge_count())
            .map(|e| self.route_segments(e))
            .collect();
        for e in 0..self.edge_count() {
            let segs = &all_segs[e];
            for i in 0..segs.len() {
                for j in i + 1..segs.len() {
                    if j == i + 1 {
                        // consecutive pieces share exactly the bend point
                        continue;
                    }
                    if segments_cross_improperly(&segs[i], &segs[j]) {
                        return Err(EmbedError::CrossingRoutes(
                            self.edge_names[e].clone(),
                            self.edge_names[e].clone(),
                        ));
                    }
                }
            }
        }
        for e1 in 0..self.edge_count() {
            for e2 in e1 + 1..self.edge_count() {
                for s1 in &all_segs[e1] {
                    for s2 in &all_segs[e2] {
                        if segments_cross_improperly(s1, s2) {
                            return Err(EmbedError::CrossingRoutes(
                                self.edge_names[e1].clone(),
                                self.edge_names[e2].clone(),
                            ));
                        }
                    }
                }
            }
        }
        let g = MultiGraph::new(self.vertex_count(), self.endpoints.clone());
        match g {
            Ok(_) => Ok(()),
            Err(crate::graph::GraphError::Disconnected) => Err(EmbedError::Disconnected),
            Err(crate::graph::GraphError::Empty) => Err(EmbedError::Disconnected),
            Err(e) => panic!("unreachable graph error: {e}"),
        }
    }

    /// x-direction of edge `e` seen from vertex `v`: +1 if the route leaves
    /// `v` toward larger abscissae. Only meaningful for generic embeddings.
    pub fn departure_sign(&self, e: usize, v: usize) -> i32 {
        let (u, w) = self.endpoints[e];
        let route = self.route(e);
        if v == u {
            if route[1].x > route[0].x {
                1
            } else {
                -1
            }
        } else {
            debug_assert_eq!(v, w);
            let k = route.len();
            if route[k - 2].x > route[k - 1].x {
                1
            } else {
                -1
            }
        }
    }
}

/// Strict monotonicity of the first coordinate along every route.
pub fn validate_generic(emb: &EmbeddedGraph) -> GenericityReport {
    let mut violations = Vec::new();
    for e in 0..emb.edge_count() {
        let pts = emb.route(e);
        let increasing = pts.windows(2).all(|w| w[0].x < w[1].x);
        let decreasing = pts.windows(2).all(|w| w[0].x > w[1].x);
        if !increasing && !decreasing {
            violations.push((
                emb.edge_name(e).to_string(),
                "first coordinate not strictly monotone along the route".to_string(),
            ));
        }
    }
    GenericityReport {
        is_generic: violations.is_empty(),
        is_m_generic: false,
        violations,
    }
}

/// Genericity plus: every vertex of degree >= 2 has incident edges on both
/// sides of its abscissa. Degree-1 vertices are exempt.
pub fn validate_m_generic(emb: &EmbeddedGraph) -> GenericityReport {
    let mut report = validate_generic(emb);
    if !report.is_generic {
        report.is_m_generic = false;
        return report;
    }
    let mut violations = Vec::new();
    for v in 0..emb.vertex_count() {
        if emb.degree(v) < 2 {
            continue;
        }
        let mut left = false;
        let mut right = false;
        for e in 0..emb.edge_count() {
            let (u, w) = emb.endpoints(e);
            if u != v && w != v {
                continue;
            }
            // парallel edges can hit both slots
            for end in [u, w] {
                if end == v {
                    match emb.departure_sign(e, v) {
                        1 => right = true,
                        _ => left = true,
                    }
                }
            }
            // an edge u==w is impossible (no self-loops)
        }
        if !(left && right) {
            violations.push((
                emb.vertex_name(v).to_string(),
                format!(
                    "degree {} vertex has all incident edges on one side",
                    emb.degree(v)
                ),
            ));
        }
    }
    let ok = violations.is_empty();
    report.violations.extend(violations);
    report.is_m_generic = ok;
    report
}

/// Parse the line-oriented graph-embedding format.
///
/// ```text
/// # comment
/// vertex <id> <x> <y>
/// edge <id> <v1> <v2> [bend <x> <y>]...
/// ```
pub fn parse_embedding(input: &str) -> Result<EmbeddedGraph, EmbedError> {
    let mut vertices: Vec<(String, Pt)> = Vec::new();
    let mut edges: Vec<(String, String, String, Vec<Pt>)> = Vec::new();
    for (lineno, raw) in input.lines().enumerate() {
        let line = raw.trim();
        let lineno = lineno + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let err = |msg: String| EmbedError::Parse { line: lineno, msg };
        match toks[0] {
            "vertex" => {
                if toks.len() != 4 {
                    return Err(err("expected: vertex <id> <x> <y>".to_string()));
                }
                let x = parse_rat(toks[2]).map_err(&err)?;
                let y = parse_rat(toks[3]).map_err(&err)?;
                vertices.push((toks[1].to_string(), Pt::new(x, y)));
            }
            "edge" => {
                if toks.len() < 4 {
                    return Err(err(
                        "expected: edge <id> <v1> <v2> [bend <x> <y>]...".to_string()
                    ));
                }
                let mut bends = Vec::new();
                let mut i = 4;
                while i < toks.len() {
                    if toks[i] != "bend" || i + 2 >= toks.len() {
                        return Err(err("expected: bend <x> <y>".to_string()));
                    }
                    let x = parse_rat(toks[i + 1]).map_err(&err)?;
                    let y = parse_rat(toks[i + 2]).map_err(&err)?;
                    bends.push(Pt::new(x, y));
                    i += 3;
                }
                edges.push((
                    toks[1].to_string(),
                    toks[2].to_string(),
                    toks[3].to_string(),
                    bends,
                ));
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    EmbeddedGraph::new(vertices, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat_i;

    pub fn y_graph() -> EmbeddedGraph {
        parse_embedding(
            "vertex a 0 1\nvertex b 0 -1\nvertex c 1 0\nvertex d 2 0\n\
             edge ac a c\nedge bc b c\nedge cd c d\n",
        )
        .unwrap()
    }

    #[test]
    fn single_edge_generic() {
        let g = parse_embedding("vertex u 0 0\nvertex v 1 0\nedge e u v\n").unwrap();
        assert!(validate_generic(&g).is_generic);
    }

    #[test]
    fn bent_edge_not_generic() {
        let g = parse_embedding(
            "vertex u 0 0\nvertex v 0 2\nedge e u v bend 1 1\n",
        )
        .unwrap();
        let r = validate_generic(&g);
        assert!(!r.is_generic);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].0, "e");
    }

    #[test]
    fn y_graph_m_generic() {
        let r = validate_m_generic(&y_graph());
        assert!(r.is_generic);
        assert!(r.is_m_generic);
    }

    #[test]
    fn leftward_path_not_m_generic() {
        // b has degree 2 with both edges leaving to smaller abscissae... here
        // both edges of b point left of b.
        let g = parse_embedding(
            "vertex a 0 0\nvertex b 1 0\nvertex c 0 1\nedge ab a b\nedge bc b c\n",
        )
        .unwrap();
        let r = validate_m_generic(&g);
        assert!(r.is_generic);
        assert!(!r.is_m_generic);
        assert_eq!(r.violations[0].0, "b");
    }

    #[test]
    fn diamond_not_m_generic() {
        let g = parse_embedding(
            "vertex l 0 0\nvertex t 1 1\nvertex b 1 -1\nvertex r 2 0\n\
             edge lt l t\nedge lb l b\nedge tr t r\nedge br b r\n",
        )
        .unwrap();
        let r = validate_m_generic(&g);
        assert!(r.is_generic);
        assert!(!r.is_m_generic);
    }

    #[test]
    fn crossing_routes_structural_error() {
        let res = parse_embedding(
            "vertex a 0 0\nvertex b 2 2\nvertex c 0 2\nvertex d 2 0\n\
             edge ab a b\nedge cd c d\n",
        );
        assert!(matches!(res, Err(EmbedError::CrossingRoutes(_, _))));
    }

    #[test]
    fn decimal_coordinates_exact() {
        let g = parse_embedding("vertex u 0.5 0\nvertex v 1 0.25\nedge e u v\n").unwrap();
        assert_eq!(g.position(0).x, crate::num::rat(1, 2));
        assert_eq!(g.position(1).y, crate::num::rat(1, 4));
        let _ = rat_i(0);
    }
}
