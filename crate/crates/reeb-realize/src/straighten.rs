//! Straighten a generic embedding into a union of straight segments while
//! preserving every vertex position exactly and the vertical order of edge
//! pieces in every slab (the order-preservation certificate).
//!
//! Walls are erected at every vertex and bend abscissa; each edge route is
//! replaced by the polyline through its exact wall crossings. Orders at walls
//! equal the input orders and interpolation is linear, so slab orders are
//! preserved and no two output segments cross.

use std::collections::BTreeMap;
use std::fmt;

use crate::embed::{validate_generic, validate_m_generic, EmbeddedGraph};
use crate::geom::{segments_cross_improperly, Pt, Seg};
use crate::num::{rat_i, Rat};

#[derive(Clone, Debug, PartialEq)]
pub enum PointOrigin {
    /// Original graph vertex (index into the input embedding).
    Vertex(usize),
    /// Bend created on an original edge (index into the input edges).
    Bend(usize),
}

#[derive(Clone, Debug)]
pub struct SlabOrder {
    pub mid: Rat,
    /// edge ids bottom-to-top in the input drawing
    pub input: Vec<usize>,
    /// edge ids bottom-to-top in the straightened drawing
    pub output: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct StraightEmbedding {
    /// all points: original vertices first, then bend vertices
    pub points: Vec<Pt>,
    pub origin: Vec<PointOrigin>,
    /// straight segments (point, point, original edge id)
    pub segments: Vec<(usize, usize, usize)>,
    /// per original edge: its chain of point ids from the left endpoint
    pub threads: Vec<Vec<usize>>,
    /// wall abscissae, sorted
    pub walls: Vec<Rat>,
    /// per-slab vertical orders, input vs output
    pub certificate: Vec<SlabOrder>,
    pub original_vertex_count: usize,
}

#[derive(Debug, Clone)]
pub enum StraightenError {
    NotGeneric(Vec<(String, String)>),
    OrderViolation { slab: usize },
    OutputCrossing(usize, usize),
}

impl fmt::Display for StraightenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StraightenError::NotGeneric(v) => {
                write!(f, "input embedding is not generic: {} violations", v.len())
            }
            StraightenError::OrderViolation { slab } => {
                write!(f, "vertical order changed in slab {slab}")
            }
            StraightenError::OutputCrossing(a, b) => {
                write!(f, "straightened segments {a} and {b} cross")
            }
        }
    }
}

impl std::error::Error for StraightenError {}

impl StraightEmbedding {
    /// The straightened drawing as an embedding whose edges are the single
    /// segments (bends promoted to degree-2 vertices).
    pub fn as_embedded_graph(&self) -> EmbeddedGraph {
        let vertices: Vec<(String, Pt)> = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| (format!("p{i}"), p.clone()))
            .collect();
        let edges: Vec<(String, String, String, Vec<Pt>)> = self
            .segments
            .iter()
            .enumerate()
            .map(|(i, &(a, b, _))| (format!("s{i}"), format!("p{a}"), format!("p{b}"), vec![]))
            .collect();
        EmbeddedGraph::new(vertices, edges).expect("straightened drawing is a valid embedding")
    }

    pub fn certificate_holds(&self) -> bool {
        self.certificate.iter().all(|s| s.input == s.output)
    }

    pub fn position(&self, point: usize) -> &Pt {
        &self.points[point]
    }

    /// y-value of an edge's straight route at abscissa x (inside its span).
    pub fn thread_y_at(&self, edge: usize, x: &Rat) -> Rat {
        let chain = &self.threads[edge];
        for w in chain.windows(2) {
            let (a, b) = (&self.points[w[0]], &self.points[w[1]]);
            let (lo, hi) = if a.x <= b.x { (a, b) } else { (b, a) };
            if &lo.x <= x && x <= &hi.x && lo.x != hi.x {
                return Seg::new(lo.clone(), hi.clone()).y_at(x);
            }
        }
        panic!("abscissa outside the thread span");
    }

    /// Thread point chain ordered left-to-right.
    pub fn thread_left_to_right(&self, edge: usize) -> Vec<usize> {
        let chain = &self.threads[edge];
        if self.points[chain[0]].x < self.points[*chain.last().unwrap()].x {
            chain.clone()
        } else {
            chain.iter().rev().cloned().collect()
        }
    }

    /// Incident edges of an original vertex with their departure sign
    /// (+1 rightward) and the slope of the adjacent segment.
    pub fn incident_fan(&self, v: usize) -> Vec<(usize, i32, Rat)> {
        let mut out = Vec::new();
        for (e, chain) in self.threads.iter().enumerate() {
            for (end, adj) in [(0usize, 1usize), (chain.len() - 1, chain.len() - 2)] {
                if chain[end] == v {
                    let p = &self.points[v];
                    let q = &self.points[chain[adj]];
                    let sign = if q.x > p.x { 1 } else { -1 };
                    let slope = (&q.y - &p.y) / (&q.x - &p.x);
                    out.push((e, sign, slope));
                }
            }
        }
        out
    }
}

/// piecewise-linear y of an input route at abscissa x strictly inside span
fn route_y_at(route: &[Pt], x: &Rat) -> Rat {
    for w in route.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let (lo, hi) = if a.x <= b.x { (a, b) } else { (b, a) };
        if &lo.x <= x && x <= &hi.x && lo.x != hi.x {
            return Seg::new(lo.clone(), hi.clone()).y_at(x);
        }
    }
    panic!("abscissa outside the route span");
}

/// Straighten a generic embedding: subdivide every route at the global wall
/// set and join the exact crossings by straight segments.
pub fn straighten(emb: &EmbeddedGraph) -> Result<StraightEmbedding, StraightenError> {
    let rep = validate_generic(emb);
    if !rep.is_generic {
        return Err(StraightenError::NotGeneric(rep.violations));
    }

    let mut walls: Vec<Rat> = (0..emb.vertex_count())
        .map(|v| emb.position(v).x.clone())
        .collect();
    for e in 0..emb.edge_count() {
        let route = emb.route(e);
        for p in route.iter().skip(1).take(route.len().saturating_sub(2)) {
            walls.push(p.x.clone());
        }
    }
    walls.sort();
    walls.dedup();

    let spans: Vec<(Rat, Rat)> = (0..emb.edge_count())
        .map(|e| {
            let r = emb.route(e);
            let (a, b) = (&r[0].x, &r[r.len() - 1].x);
            if a < b {
                (a.clone(), b.clone())
            } else {
                (b.clone(), a.clone())
            }
        })
        .collect();
    let routes: Vec<Vec<Pt>> = (0..emb.edge_count()).map(|e| emb.route(e)).collect();

    let mut points: Vec<Pt> = (0..emb.vertex_count())
        .map(|v| emb.position(v).clone())
        .collect();
    let mut origin: Vec<PointOrigin> = (0..emb.vertex_count()).map(PointOrigin::Vertex).collect();
    let mut threads: Vec<Vec<usize>> = Vec::new();
    let mut segments: Vec<(usize, usize, usize)> = Vec::new();
    for e in 0..emb.edge_count() {
        let (u, v) = emb.endpoints(e);
        let (lo, hi) = &spans[e];
        let (left_v, right_v) = if &emb.position(u).x == lo { (u, v) } else { (v, u) };
        let mut chain = vec![left_v];
        for t in walls.iter() {
            if lo < t && t < hi {
                points.push(Pt::new(t.clone(), route_y_at(&routes[e], t)));
                origin.push(PointOrigin::Bend(e));
                chain.push(points.len() - 1);
            }
        }
        chain.push(right_v);
        for w in chain.windows(2) {
            segments.push((w[0], w[1], e));
        }
        threads.push(chain);
    }

    let out = StraightEmbedding {
        points,
        origin,
        segments,
        threads,
        walls: walls.clone(),
        certificate: Vec::new(),
        original_vertex_count: emb.vertex_count(),
    };

    // order-preservation certificate per slab
    let mut cert = Vec::new();
    for (si, w) in walls.windows(2).enumerate() {
        let mid = (&w[0] + &w[1]) / rat_i(2);
        let mut spanning: Vec<usize> = (0..emb.edge_count())
            .filter(|&e| spans[e].0 < mid && mid < spans[e].1)
            .collect();
        if spanning.is_empty() {
            continue;
        }
        let mut input = spanning.clone();
        input.sort_by(|&a, &b| route_y_at(&routes[a], &mid).cmp(&route_y_at(&routes[b], &mid)));
        spanning.sort_by(|&a, &b| out.thread_y_at(a, &mid).cmp(&out.thread_y_at(b, &mid)));
        let holds = input == spanning;
        cert.push(SlabOrder {
            mid,
            input,
            output: spanning,
        });
        if !holds {
            return Err(StraightenError::OrderViolation { slab: si });
        }
    }

    // output segments in the same slab must not cross
    let seg_geom: Vec<Seg> = out
        .segments
        .iter()
        .map(|&(a, b, _)| Seg::new(out.points[a].clone(), out.points[b].clone()))
        .collect();
    let mut by_slab: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, s) in seg_geom.iter().enumerate() {
        let (lo, _) = s.x_range();
        let slab = walls.partition_point(|t| t <= &lo).saturating_sub(1);
        by_slab.entry(slab).or_default().push(i);
    }
    for group in by_slab.values() {
        for (ai, &a) in group.iter().enumerate() {
            for &b in group.iter().skip(ai + 1) {
                if segments_cross_improperly(&seg_geom[a], &seg_geom[b]) {
                    return Err(StraightenError::OutputCrossing(a, b));
                }
            }
        }
    }

    Ok(StraightEmbedding {
        certificate: cert,
        ..out
    })
}

/// Preservation checks packaged for reports: exact vertex positions, slab
/// orders, genericity, and M-genericity equivalence.
pub fn straighten_checks(emb: &EmbeddedGraph, se: &StraightEmbedding) -> bool {
    for v in 0..emb.vertex_count() {
        if emb.position(v).x != se.points[v].x {
            return false;
        }
    }
    if !se.certificate_holds() {
        return false;
    }
    let out_emb = se.as_embedded_graph();
    if !validate_generic(&out_emb).is_generic {
        return false;
    }
    let in_m = validate_m_generic(emb).is_m_generic;
    let out_m = validate_m_generic(&out_emb).is_m_generic;
    if in_m != out_m {
        return false;
    }
    crate::graph::homeomorphic(&emb.graph(), &out_emb.graph())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::parse_embedding;
    use crate::graph::homeomorphic;

    fn y_graph() -> EmbeddedGraph {
        parse_embedding(
            "vertex a 0 1\nvertex b 0 -1\nvertex c 1 0\nvertex d 2 0\n\
             edge ac a c\nedge bc b c\nedge cd c d\n",
        )
        .unwrap()
    }

    #[test]
    fn straight_input_fixed_point() {
        let g = y_graph();
        let se = straighten(&g).unwrap();
        for v in 0..4 {
            assert_eq!(se.points[v], *g.position(v));
        }
        assert!(se.certificate_holds());
        assert!(straighten_checks(&g, &se));
    }

    #[test]
    fn bent_edge_gets_bend_vertices() {
        let g = parse_embedding("vertex u 0 0\nvertex v 2 0\nedge e u v bend 1 1\n").unwrap();
        let se = straighten(&g).unwrap();
        let bends = se
            .origin
            .iter()
            .filter(|o| matches!(o, PointOrigin::Bend(_)))
            .count();
        assert_eq!(bends, 1);
        assert!(straighten_checks(&g, &se));
        assert!(homeomorphic(&g.graph(), &se.as_embedded_graph().graph()));
    }

    #[test]
    fn double_edge_disjoint_chains() {
        let g = parse_embedding(
            "vertex u 0 0\nvertex v 2 0\n\
             edge top u v bend 1 1\nedge bot u v bend 1 -1\n",
        )
        .unwrap();
        let se = straighten(&g).unwrap();
        assert!(straighten_checks(&g, &se));
        assert!(se.threads[0].len() >= 3);
        assert!(se.threads[1].len() >= 3);
        // distinct doorway heights at every shared wall
        let mid = rat_i(1);
        assert!(se.thread_y_at(0, &mid) != se.thread_y_at(1, &mid));
    }

    #[test]
    fn rejects_non_generic() {
        let g = parse_embedding("vertex u 0 0\nvertex v 0 2\nedge e u v bend 1 1\n").unwrap();
        assert!(matches!(
            straighten(&g),
            Err(StraightenError::NotGeneric(_))
        ));
    }

    #[test]
    fn incident_fan_reports_sides() {
        let g = y_graph();
        let se = straighten(&g).unwrap();
        let fan_c = se.incident_fan(2);
        assert_eq!(fan_c.len(), 3);
        let left = fan_c.iter().filter(|(_, s, _)| *s < 0).count();
        let right = fan_c.iter().filter(|(_, s, _)| *s > 0).count();
        assert_eq!((left, right), (2, 1));
    }
}
