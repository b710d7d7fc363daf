//! Reeb graphs of the first-coordinate projection on arc regions: exact
//! sweep construction, an independent sampling oracle, and serialization.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_traits::Zero;

use crate::graph::{homeomorphic, smooth_degree_two, MultiGraph};
use crate::num::{rational_between, QuadReal, Rat};
use crate::region::{ArcRegion, FeatureTag};
use crate::sweep::{run_sweep, SweepError, SweepPiece, SweepResult, Toggle, UnionFind};

/// Multigraph with exact projection values and sweep provenance per vertex.
#[derive(Clone, Debug)]
pub struct LabeledReebGraph {
    pub graph: MultiGraph,
    pub values: Vec<QuadReal>,
    pub tags: Vec<Vec<FeatureTag>>,
    /// per edge: chain of (gap, interval) slices it covers, left to right
    pub lineage: Vec<Vec<(usize, usize)>>,
}

impl LabeledReebGraph {
    /// Vertices of degree >= 3, with values.
    pub fn branch_vertices(&self) -> Vec<(usize, QuadReal)> {
        (0..self.graph.vertex_count())
            .filter(|&v| self.graph.degree(v) >= 3)
            .map(|v| (v, self.values[v].clone()))
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.graph.euler_characteristic()
    }

    /// Edge list with 30-digit decimal vertex values and the exact defining
    /// quadruple (a, b, c, branch) of each value as a root of a x^2 + b x + c.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for v in 0..self.graph.vertex_count() {
            let val = &self.values[v];
            let (a, b, c, branch) = defining_quadruple(val);
            out.push_str(&format!(
                "vertex {} {} quad {} {} {} {}\n",
                v,
                val.to_decimal(30),
                a,
                b,
                c,
                branch
            ));
        }
        for &(u, v) in self.graph.edges() {
            out.push_str(&format!("edge {} {}\n", u, v));
        }
        out
    }
}

/// Monic-cleared quadratic (a, b, c) with `a x^2 + b x + c = 0` at the value,
/// plus the branch sign; rational values get (0, 1, -p, 0).
fn defining_quadruple(v: &QuadReal) -> (Rat, Rat, Rat, i32) {
    if let Some(r) = v.as_rat() {
        return (Rat::zero(), crate::num::rat_i(1), -r.clone(), 0);
    }
    let p = v.rational_part();
    let q = v.radical_coeff();
    let d = v.radicand();
    // x = p + q sqrt(d)  =>  x^2 - 2p x + (p^2 - q^2 d) = 0
    let a = crate::num::rat_i(1);
    let b = crate::num::rat_i(-2) * p;
    let c = p * p - q * q * d;
    let branch = if q.is_positive() { 1 } else { -1 };
    (a, b, c, branch)
}

use num_traits::Signed;

/// Build the suppressed Reeb graph from a sweep, optionally restricted to
/// one connected component (by representative id).
pub fn reeb_from_sweep(
    sweep: &SweepResult,
    component: Option<usize>,
) -> Result<LabeledReebGraph, SweepError> {
    // collect intervals we keep
    let keep_interval = |g: usize, i: usize| -> bool {
        match component {
            None => true,
            Some(root) => sweep.component_of(g, i) == root,
        }
    };

    // node usage and degree bookkeeping
    let mut node_in: Vec<Vec<(usize, usize)>> = vec![Vec::new(); sweep.nodes.len()];
    let mut node_out: Vec<Vec<(usize, usize)>> = vec![Vec::new(); sweep.nodes.len()];
    for g in 0..sweep.gaps.len() {
        for i in 0..sweep.gaps[g].intervals.len() {
            if !keep_interval(g, i) {
                continue;
            }
            let (ln, rn) = sweep.end_nodes[g][i];
            assert!(ln != usize::MAX && rn != usize::MAX, "unlinked interval");
            node_out[ln].push((g, i));
            node_in[rn].push((g, i));
        }
    }

    // chase chains through pass-through nodes (1 in, 1 out)
    let passthrough = |n: usize| node_in[n].len() == 1 && node_out[n].len() == 1;
    let mut vertex_id: HashMap<usize, usize> = HashMap::new();
    let mut values: Vec<QuadReal> = Vec::new();
    let mut tags: Vec<Vec<FeatureTag>> = Vec::new();
    for n in 0..sweep.nodes.len() {
        let used = !node_in[n].is_empty() || !node_out[n].is_empty();
        if used && !passthrough(n) {
            vertex_id.insert(n, values.len());
            values.push(sweep.events[sweep.nodes[n].event].clone());
            tags.push(sweep.nodes[n].tags.clone());
        }
    }

    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut lineage: Vec<Vec<(usize, usize)>> = Vec::new();
    for n in 0..sweep.nodes.len() {
        if !vertex_id.contains_key(&n) {
            continue;
        }
        for &(g0, i0) in &node_out[n] {
            // walk right through pass-through nodes
            let mut chain = vec![(g0, i0)];
            let (mut g, mut i) = (g0, i0);
            loop {
                let (_, rn) = sweep.end_nodes[g][i];
                if passthrough(rn) {
                    let (g1, i1) = node_out[rn][0];
                    chain.push((g1, i1));
                    g = g1;
                    i = i1;
                } else {
                    edges.push((vertex_id[&n], vertex_id[&rn]));
                    lineage.push(chain);
                    break;
                }
            }
        }
    }

    // a pure cycle of pass-through nodes never reaches a kept node; regions
    // always have extreme events, so every interval chain terminates
    let graph = MultiGraph::new_with_loops(values.len(), edges).map_err(|e| {
        SweepError::OddSlice {
            gap: 0,
            detail: format!("reeb graph assembly failed: {e}"),
        }
    })?;
    Ok(LabeledReebGraph {
        graph,
        values,
        tags,
        lineage,
    })
}

/// Pieces of an explicit region, all toggling region parity.
pub fn region_sweep_pieces(region: &ArcRegion) -> Vec<SweepPiece> {
    region
        .all_pieces()
        .cloned()
        .map(|piece| SweepPiece {
            piece,
            toggle: Toggle::Region,
        })
        .collect()
}

/// Exact Reeb graph of the first-coordinate projection on a region.
pub fn reeb_graph_of_projection(region: &ArcRegion) -> Result<LabeledReebGraph, SweepError> {
    let pieces = region_sweep_pieces(region);
    let sweep = run_sweep(&pieces, &[])?;
    reeb_from_sweep(&sweep, None)
}

/// Number of connected components of the region (via the sweep).
pub fn region_component_count(region: &ArcRegion) -> Result<usize, SweepError> {
    let pieces = region_sweep_pieces(region);
    let sweep = run_sweep(&pieces, &[])?;
    let mut roots = std::collections::HashSet::new();
    for g in 0..sweep.gaps.len() {
        for i in 0..sweep.gaps[g].intervals.len() {
            roots.insert(sweep.component_of(g, i));
        }
    }
    Ok(roots.len())
}

/// Independent sampling oracle: slice the region at many rational abscissae,
/// isolate the fiber intervals exactly, link consecutive slices by interval
/// overlap, and return the smoothed component graph.
pub fn brute_force_reeb(region: &ArcRegion, resolution: usize) -> Result<MultiGraph, SweepError> {
    assert!(resolution >= 64, "oracle resolution must be at least 64");
    let pieces = region_sweep_pieces(region);
    let mut events: Vec<QuadReal> = Vec::new();
    for sp in &pieces {
        events.push(sp.piece.x_lo());
        events.push(sp.piece.x_hi());
    }
    events.sort();
    events.dedup();
    let gap_count = events.len() - 1;
    let per_gap = (resolution / gap_count.max(1)).max(4);

    // sample abscissae: uniform interior points plus dyadic clustering
    // toward both gap ends so drift near events stays below feature size
    let mut samples: Vec<Rat> = Vec::new();
    for g in 0..gap_count {
        let a = rational_between(&events[g], &events[g + 1]);
        let b = rational_between(&QuadReal::from_rat(a.clone()), &events[g + 1]);
        // now events[g] < a < b < events[g+1]
        let a_end = {
            // approach the left event dyadically
            let mut lo = a.clone();
            for _ in 0..8 {
                lo = rational_between(&events[g], &QuadReal::from_rat(lo.clone()));
            }
            lo
        };
        let b_end = {
            let mut hi = b.clone();
            for _ in 0..8 {
                hi = rational_between(&QuadReal::from_rat(hi.clone()), &events[g + 1]);
            }
            hi
        };
        samples.push(a_end);
        let n = per_gap;
        for j in 0..=n {
            let t = Rat::new(j.into(), (n as i64).into());
            samples.push(&a + (&b - &a) * t);
        }
        samples.push(b_end);
    }
    samples.sort();
    samples.dedup();

    // slice extraction (region parity only)
    struct Slice {
        intervals: Vec<(QuadReal, QuadReal)>,
        base: usize,
    }
    let mut slices: Vec<Slice> = Vec::new();
    let mut total = 0usize;
    for s in &samples {
        let mut crossings: Vec<QuadReal> = Vec::new();
        for sp in &pieces {
            if sp.piece.x_lo().cmp_rat(s) == Ordering::Less
                && sp.piece.x_hi().cmp_rat(s) == Ordering::Greater
            {
                crossings.push(sp.piece.y_at_rat(s));
            }
        }
        crossings.sort();
        if crossings.len() % 2 != 0 {
            return Err(SweepError::OddSlice {
                gap: 0,
                detail: format!("odd crossing count at oracle sample {s}"),
            });
        }
        let intervals: Vec<(QuadReal, QuadReal)> = crossings
            .chunks(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect();
        let base = total;
        total += intervals.len();
        slices.push(Slice { intervals, base });
    }

    // link consecutive slices by closed-interval overlap
    let mut uf = UnionFind::new(total);
    let mut adjacency: Vec<(usize, usize)> = Vec::new();
    for w in 0..slices.len().saturating_sub(1) {
        let (l, r) = (&slices[w], &slices[w + 1]);
        for (i, (llo, lhi)) in l.intervals.iter().enumerate() {
            for (j, (rlo, rhi)) in r.intervals.iter().enumerate() {
                if llo <= rhi && rlo <= lhi {
                    adjacency.push((l.base + i, r.base + j));
                    uf.union(l.base + i, r.base + j);
                }
            }
        }
    }

    if total == 0 {
        return Err(SweepError::OddSlice {
            gap: 0,
            detail: "empty region in oracle".to_string(),
        });
    }
    let graph = MultiGraph::new_with_loops(total, adjacency).map_err(|e| SweepError::OddSlice {
        gap: 0,
        detail: format!("oracle graph disconnected or invalid: {e}"),
    })?;
    Ok(smooth_degree_two(&graph))
}

/// Sweep-vs-oracle agreement up to homeomorphism.
pub fn oracle_agrees(region: &ArcRegion, resolution: usize) -> Result<bool, SweepError> {
    let sweep = reeb_graph_of_projection(region)?;
    let oracle = brute_force_reeb(region, resolution)?;
    Ok(homeomorphic(&sweep.graph, &oracle))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::CircleGeom;
    use crate::num::{rat, rat_i};
    use crate::region::{disk_region, disk_with_holes, hexagon_region};

    #[test]
    fn disk_reeb_single_edge() {
        let region = disk_region(CircleGeom::new(rat_i(0), rat_i(0), rat_i(1)));
        let rg = reeb_graph_of_projection(&region).unwrap();
        assert_eq!(rg.graph.vertex_count(), 2);
        assert_eq!(rg.graph.edge_count(), 1);
        let mut vals = rg.values.clone();
        vals.sort();
        assert_eq!(vals[0], QuadReal::from_rat(rat_i(-1)));
        assert_eq!(vals[1], QuadReal::from_rat(rat_i(1)));
    }

    #[test]
    fn annulus_reeb_double_edge() {
        let region = disk_with_holes(
            CircleGeom::new(rat_i(0), rat_i(0), rat_i(4)),
            vec![CircleGeom::new(rat_i(0), rat_i(0), rat_i(1))],
        );
        let rg = reeb_graph_of_projection(&region).unwrap();
        // two degree-1 vertices at ±2, two degree-3 vertices at ±1,
        // double edge between the 3-valent pair
        assert_eq!(rg.graph.vertex_count(), 4);
        assert_eq!(rg.graph.edge_count(), 4);
        let mut deg: Vec<usize> = (0..4).map(|v| rg.graph.degree(v)).collect();
        deg.sort_unstable();
        assert_eq!(deg, vec![1, 1, 3, 3]);
        let mut vals = rg.values.clone();
        vals.sort();
        assert_eq!(vals[0], QuadReal::from_rat(rat_i(-2)));
        assert_eq!(vals[1], QuadReal::from_rat(rat_i(-1)));
        assert_eq!(vals[2], QuadReal::from_rat(rat_i(1)));
        assert_eq!(vals[3], QuadReal::from_rat(rat_i(2)));
        // Euler characteristic: annulus has chi 0
        assert_eq!(rg.euler_characteristic(), 0);
    }

    #[test]
    fn hexagon_reeb_is_edge() {
        let region = hexagon_region(rat_i(0), rat_i(2), rat_i(0), rat_i(1), rat(1, 2));
        let rg = reeb_graph_of_projection(&region).unwrap();
        assert!(homeomorphic(
            &rg.graph,
            &MultiGraph::new(2, vec![(0, 1)]).unwrap()
        ));
    }

    #[test]
    fn oracle_matches_sweep_on_fixtures() {
        let fixtures: Vec<ArcRegion> = vec![
            disk_region(CircleGeom::new(rat_i(0), rat_i(0), rat_i(2))),
            disk_with_holes(
                CircleGeom::new(rat_i(0), rat_i(0), rat_i(9)),
                vec![CircleGeom::new(rat_i(1), rat_i(0), rat_i(1))],
            ),
            disk_with_holes(
                CircleGeom::new(rat_i(0), rat_i(0), rat_i(25)),
                vec![
                    CircleGeom::new(rat_i(-2), rat_i(1), rat_i(1)),
                    CircleGeom::new(rat_i(2), rat_i(-1), rat_i(1)),
                ],
            ),
            hexagon_region(rat_i(0), rat_i(3), rat_i(0), rat_i(1), rat(1, 2)),
        ];
        for (i, region) in fixtures.iter().enumerate() {
            assert!(
                oracle_agrees(region, 128).unwrap(),
                "oracle mismatch on fixture {i}"
            );
        }
    }

    #[test]
    fn scaled_region_scales_values() {
        let r1 = disk_with_holes(
            CircleGeom::new(rat_i(0), rat_i(0), rat_i(4)),
            vec![CircleGeom::new(rat_i(0), rat_i(0), rat_i(1))],
        );
        // scale by 3: centers and radii scale; r2 scales by 9
        let r3 = disk_with_holes(
            CircleGeom::new(rat_i(0), rat_i(0), rat_i(36)),
            vec![CircleGeom::new(rat_i(0), rat_i(0), rat_i(9))],
        );
        let g1 = reeb_graph_of_projection(&r1).unwrap();
        let g3 = reeb_graph_of_projection(&r3).unwrap();
        assert!(homeomorphic(&g1.graph, &g3.graph));
        let mut v1 = g1.values.clone();
        let mut v3 = g3.values.clone();
        v1.sort();
        v3.sort();
        for (a, b) in v1.iter().zip(v3.iter()) {
            assert_eq!(a.scale(&rat_i(3)), *b);
        }
    }

    #[test]
    fn serialization_roundtrip_values() {
        let region = disk_region(CircleGeom::new(rat_i(0), rat_i(0), rat_i(2)));
        let rg = reeb_graph_of_projection(&region).unwrap();
        let s = rg.serialize();
        assert!(s.contains("vertex 0"));
        assert!(s.contains("edge 0 1"));
        // value -sqrt(2): quadruple x^2 + 0x - 2, branch -1
        assert!(s.contains("quad 1 0 -2 -1"));
    }
}
