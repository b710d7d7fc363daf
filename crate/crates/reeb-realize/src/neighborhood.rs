//! Polygonal regular neighborhood of a straightened embedding.
//!
//! Each edge gets a staircase tube of half-thickness delta; each vertex gets
//! a solid blob spanning its incident tubes. Between consecutive same-side
//! tube doorways the blob boundary pinches at horizontal distance at most
//! delta/2 from the vertex line: these pinches and the cap tips are exactly
//! the projection extrema of the boundary (the turning vertices). Boundary
//! junctions alternate horizontal/slanted pieces throughout.
//!
//! Inside a blob the incident edges are rerouted to approach their doorway
//! level horizontally and dive to the vertex just right of the pinches, so
//! the graph stays inside the neighborhood while the boundary walls thread
//! between the doorways.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;

use crate::graph::{homeomorphic, MultiGraph};
use crate::num::{rat, rat_i, Rat};
use crate::geom::{segments_cross_improperly, Pt, Seg};
use crate::reeb::{reeb_from_sweep, region_sweep_pieces, LabeledReebGraph};
use crate::region::{ArcRegion, Curve, FeatureTag, Piece, PieceGeom};
use crate::straighten::StraightEmbedding;
use crate::sweep::run_sweep;

#[derive(Debug, Clone)]
pub enum NbhdError {
    DeltaTooLarge { max_admissible: Rat },
    NoEdges,
    Assembly(String),
    MissingProvenance(String),
}

impl fmt::Display for NbhdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NbhdError::DeltaTooLarge { max_admissible } => {
                write!(f, "delta too large; largest admissible is {max_admissible}")
            }
            NbhdError::NoEdges => write!(f, "embedding has no edges"),
            NbhdError::Assembly(m) => write!(f, "neighborhood assembly failed: {m}"),
            NbhdError::MissingProvenance(m) => write!(f, "missing provenance: {m}"),
        }
    }
}

impl std::error::Error for NbhdError {}

#[derive(Clone, Debug, PartialEq)]
pub enum VertexKind {
    /// Local extremum of the projection along its boundary curve.
    Turning { vertex: usize, sector: SectorId },
    RegularBend,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SectorId {
    /// Cap sector of a side with no incident edges (leaf side).
    Cap { left_side: bool },
    /// Wedge between consecutive same-side incident edges.
    Wedge { left_side: bool, index: usize },
}

#[derive(Clone, Debug)]
pub struct BoundaryVertexClass {
    pub position: Pt,
    pub kind: VertexKind,
}

#[derive(Clone, Debug)]
pub struct WallInfo {
    pub pinch: Pt,
    pub below_edge: usize,
    pub above_edge: usize,
}

#[derive(Clone, Debug)]
pub struct SideInfo {
    /// (edge id, doorway ordinate), sorted bottom to top; empty for a cap side
    pub doorways: Vec<(usize, Rat)>,
    pub walls: Vec<WallInfo>,
    pub cap_tip: Option<Pt>,
    pub width: Rat,
}

#[derive(Clone, Debug)]
pub struct VertexBox {
    pub vertex: usize,
    pub center: Pt,
    pub left: SideInfo,
    pub right: SideInfo,
    pub y_top: Rat,
    pub y_bot: Rat,
}

#[derive(Clone, Debug)]
pub struct Neighborhood {
    pub region: ArcRegion,
    pub classification: Vec<BoundaryVertexClass>,
    pub delta: Rat,
    pub boxes: Vec<VertexBox>,
    /// per original edge: final polyline inside the neighborhood
    pub adjusted_routes: Vec<Vec<Pt>>,
    /// region side per piece, aligned with region.all_pieces() order:
    /// true when the region lies above the piece
    pub region_above: Vec<bool>,
}

/// Minimum feature separation of the straightened drawing: vertical
/// clearance between distinct wall crossers and the fan-splitting capacity
/// of every vertex side.
pub fn min_feature_gap(se: &StraightEmbedding) -> Result<Rat, NbhdError> {
    if se.threads.is_empty() {
        return Err(NbhdError::NoEdges);
    }
    let mut gap: Option<Rat> = None;
    let mut push = |g: Rat| {
        if g.is_zero() {
            return;
        }
        match &gap {
            Some(cur) if *cur <= g => {}
            _ => gap = Some(g),
        }
    };
    // vertical clearance at walls
    for t in &se.walls {
        let mut ys: Vec<Rat> = Vec::new();
        for v in 0..se.original_vertex_count {
            if &se.points[v].x == t {
                ys.push(se.points[v].y.clone());
            }
        }
        for (e, chain) in se.threads.iter().enumerate() {
            let l2r = se.thread_left_to_right(e);
            let lo = &se.points[l2r[0]].x;
            let hi = &se.points[*l2r.last().unwrap()].x;
            if lo < t && t < hi {
                let _ = chain;
                ys.push(se.thread_y_at(e, t));
            }
        }
        ys.sort();
        for w in ys.windows(2) {
            push(&w[1] - &w[0]);
        }
    }
    let clearance = gap.unwrap_or_else(|| rat_i(2));
    // slab widths
    let min_slab = se
        .walls
        .windows(2)
        .map(|w| &w[1] - &w[0])
        .min()
        .unwrap_or_else(|| rat_i(1));
    // fan splitting capacity per vertex side
    let mut fan_term: Option<Rat> = None;
    for v in 0..se.original_vertex_count {
        let a = &se.points[v].x;
        for side in [-1i32, 1] {
            let mut slopes: Vec<Rat> = se
                .incident_fan(v)
                .into_iter()
                .filter(|(_, s, _)| *s == side)
                .map(|(_, _, slope)| slope)
                .collect();
            if slopes.len() < 2 {
                continue;
            }
            slopes.sort();
            let ds_min = slopes
                .windows(2)
                .map(|w| &w[1] - &w[0])
                .min()
                .expect("two or more slopes");
            // adjacent slab width on this side
            let slab = adjacent_slab_width(se, a, side);
            let cap = ds_min * slab / rat_i(2);
            match &fan_term {
                Some(cur) if *cur <= cap => {}
                _ => fan_term = Some(cap),
            }
        }
    }
    let mut out = std::cmp::min(clearance / rat_i(2), min_slab / rat_i(2));
    if let Some(f) = fan_term {
        out = std::cmp::min(out, f / rat_i(4));
    }
    Ok(out)
}

fn adjacent_slab_width(se: &StraightEmbedding, a: &Rat, side: i32) -> Rat {
    let idx = se.walls.partition_point(|t| t < a);
    debug_assert!(se.walls.get(idx).map(|t| t == a).unwrap_or(false));
    if side > 0 {
        if idx + 1 < se.walls.len() {
            &se.walls[idx + 1] - a
        } else {
            rat_i(1)
        }
    } else if idx > 0 {
        a - &se.walls[idx - 1]
    } else {
        rat_i(1)
    }
}

/// Default thickness: a quarter of the minimum feature gap.
pub fn default_delta(se: &StraightEmbedding) -> Result<Rat, NbhdError> {
    Ok(min_feature_gap(se)? / rat_i(4))
}

pub fn max_admissible_delta(se: &StraightEmbedding) -> Result<Rat, NbhdError> {
    Ok(min_feature_gap(se)? / rat_i(2))
}

struct PieceBuf {
    pieces: Vec<Piece>,
    region_above: Vec<bool>,
}

impl PieceBuf {
    fn push_seg(&mut self, a: Pt, b: Pt, region_above: bool) -> usize {
        assert!(a.x != b.x, "vertical boundary piece at {:?}", a);
        self.pieces.push(Piece::seg(a, b));
        self.region_above.push(region_above);
        self.pieces.len() - 1
    }

    fn tag(&mut self, idx: usize, at: &Pt, tag: FeatureTag) {
        let q = crate::geom::QPt::from_rat(at.x.clone(), at.y.clone());
        let piece = &mut self.pieces[idx];
        if piece.lo_point() == q {
            piece.tag_lo = tag;
        } else if piece.hi_point() == q {
            piece.tag_hi = tag;
        } else {
            panic!("tag point is not an endpoint of the piece");
        }
    }
}

/// Build the neighborhood with the requested half-thickness.
pub fn build_neighborhood(
    se: &StraightEmbedding,
    delta: &Rat,
) -> Result<Neighborhood, NbhdError> {
    let max_delta = max_admissible_delta(se)?;
    if delta <= &Rat::zero() || delta >= &max_delta {
        return Err(NbhdError::DeltaTooLarge {
            max_admissible: max_delta,
        });
    }
    let d = delta.clone();
    let nv = se.original_vertex_count;

    // per-vertex, per-side geometry
    let mut boxes: Vec<VertexBox> = Vec::new();
    for v in 0..nv {
        let a = se.points[v].x.clone();
        let yv = se.points[v].y.clone();
        let mut sides: Vec<SideInfo> = Vec::new();
        for side in [-1i32, 1] {
            let mut fan: Vec<(usize, Rat)> = se
                .incident_fan(v)
                .into_iter()
                .filter(|(_, s, _)| *s == side)
                .map(|(e, _, slope)| (e, slope))
                .collect();
            fan.sort_by(|x, y| x.1.cmp(&y.1));
            let slab = adjacent_slab_width(se, &a, side);
            let width = if fan.len() >= 2 {
                let ds_min = fan
                    .windows(2)
                    .map(|w| &w[1].1 - &w[0].1)
                    .min()
                    .expect("pairs");
                std::cmp::min(slab / rat_i(4), rat_i(4) * &d / ds_min)
            } else {
                std::cmp::min(slab / rat_i(4), rat_i(8) * &d)
            };
            let door_x = if side < 0 { &a - &width } else { &a + &width };
            let mut doorways: Vec<(usize, Rat)> = fan
                .iter()
                .map(|(e, _)| (*e, se.thread_y_at(*e, &door_x)))
                .collect();
            doorways.sort_by(|x, y| x.1.cmp(&y.1));
            // doorway spacing must leave room for walls and tangent disks
            for w in doorways.windows(2) {
                if &w[1].1 - &w[0].1 < rat_i(4) * &d {
                    return Err(NbhdError::DeltaTooLarge {
                        max_admissible: (&w[1].1 - &w[0].1) / rat_i(8),
                    });
                }
            }
            let pinch_depth = std::cmp::min(&d / rat_i(2), &width / rat_i(2));
            let walls: Vec<WallInfo> = doorways
                .windows(2)
                .map(|w| {
                    let m = (&w[0].1 + &w[1].1) / rat_i(2);
                    let px = if side < 0 {
                        &a - &pinch_depth
                    } else {
                        &a + &pinch_depth
                    };
                    WallInfo {
                        pinch: Pt::new(px, m),
                        below_edge: w[0].0,
                        above_edge: w[1].0,
                    }
                })
                .collect();
            let cap_tip = if doorways.is_empty() {
                let c = &width / rat_i(2);
                let tip_x = if side < 0 {
                    &a - &width - &c
                } else {
                    &a + &width + &c
                };
                Some(Pt::new(tip_x, yv.clone()))
            } else {
                None
            };
            sides.push(SideInfo {
                doorways,
                walls,
                cap_tip,
                width,
            });
        }
        let right = sides.pop().expect("right side");
        let left = sides.pop().expect("left side");
        let top_of = |s: &SideInfo| -> Rat {
            s.doorways
                .last()
                .map(|(_, g)| g.clone())
                .unwrap_or_else(|| yv.clone())
        };
        let bot_of = |s: &SideInfo| -> Rat {
            s.doorways
                .first()
                .map(|(_, g)| g.clone())
                .unwrap_or_else(|| yv.clone())
        };
        let y_top = std::cmp::max(std::cmp::max(top_of(&left), top_of(&right)), yv.clone())
            + &d
            + &d / rat_i(4);
        let y_bot = std::cmp::min(std::cmp::min(bot_of(&left), bot_of(&right)), yv.clone())
            - &d
            - &d / rat_i(4);
        boxes.push(VertexBox {
            vertex: v,
            center: Pt::new(a, yv),
            left,
            right,
            y_top,
            y_bot,
        });
    }

    let mut buf = PieceBuf {
        pieces: Vec::new(),
        region_above: Vec::new(),
    };
    let mut classification: Vec<BoundaryVertexClass> = Vec::new();

    // tubes
    for (e, _) in se.threads.iter().enumerate() {
        let l2r = se.thread_left_to_right(e);
        let lv = l2r[0];
        let rv = *l2r.last().unwrap();
        let trunc_l = &se.points[lv].x + &boxes[lv].right.width;
        let trunc_r = &se.points[rv].x - &boxes[rv].left.width;
        assert!(trunc_l < trunc_r, "tube span collapsed on edge {e}");
        // truncated core polyline
        let mut core: Vec<Pt> = vec![Pt::new(trunc_l.clone(), se.thread_y_at(e, &trunc_l))];
        for &p in &l2r {
            let x = &se.points[p].x;
            if &trunc_l < x && x < &trunc_r {
                core.push(se.points[p].clone());
            }
        }
        core.push(Pt::new(trunc_r.clone(), se.thread_y_at(e, &trunc_r)));
        for (upper, region_above) in [(true, false), (false, true)] {
            let off = if upper { d.clone() } else { -d.clone() };
            // merged staircase: horizontals through the walls, one slant per
            // non-flat sub-segment, horizontal stubs on both sides of it
            let mut cursor = Pt::new(core[0].x.clone(), &core[0].y + &off);
            for wpair in core.windows(2) {
                let (p, q) = (&wpair[0], &wpair[1]);
                if p.y == q.y {
                    continue; // the pending horizontal extends through
                }
                let dx = &q.x - &p.x;
                let dy = if q.y >= p.y { &q.y - &p.y } else { &p.y - &q.y };
                let h = std::cmp::min(&dx / rat_i(4), &d * &dx / (rat_i(2) * (&dx + &dy)));
                let s_start = Pt::new(&p.x + &h, &p.y + &off);
                let s_end = Pt::new(&q.x - &h, &q.y + &off);
                debug_assert_eq!(cursor.y, s_start.y, "horizontal level mismatch");
                buf.push_seg(cursor.clone(), s_start.clone(), region_above);
                buf.push_seg(s_start, s_end.clone(), region_above);
                cursor = s_end;
            }
            let end = Pt::new(core.last().unwrap().x.clone(), &core.last().unwrap().y + &off);
            buf.push_seg(cursor, end, region_above);
        }
    }

    // vertex blobs: walls, caps, tents

    for b in &boxes {
        let a = &b.center.x;
        let yv = &b.center.y;
        for (side_sign, side) in [(-1i32, &b.left), (1i32, &b.right)] {
            let left_side = side_sign < 0;
            let door_x = if left_side { a - &side.width } else { a + &side.width };
            // walls between consecutive doorways
            for (j, wall) in side.walls.iter().enumerate() {
                let gi = &side.doorways[j].1;
                let gi1 = &side.doorways[j + 1].1;
                let p = &wall.pinch;
                let depth = if left_side { a - &p.x } else { &p.x - a };
                let eta = &depth / rat_i(4);
                let a_j = if left_side {
                    Pt::new(&p.x - &eta, p.y.clone())
                } else {
                    Pt::new(&p.x + &eta, p.y.clone())
                };
                let e1 = Pt::new(door_x.clone(), gi + &d);
                let e2 = Pt::new(door_x.clone(), gi1 - &d);
                let s1 = buf.push_seg(e1, a_j.clone(), !left_side == false);
                // region below the lower wall is the lower strip: region side
                // for the lower S and the H is below; for the upper S above.
                buf.region_above[s1] = false;
                let hidx = buf.push_seg(a_j, p.clone(), false);
                let s2 = buf.push_seg(p.clone(), e2, true);
                let _ = (hidx, s2);
                buf.tag(
                    hidx,
                    p,
                    FeatureTag::Pinch {
                        vertex: b.vertex,
                        left_side,
                    },
                );
                buf.tag(
                    s2,
                    p,
                    FeatureTag::Pinch {
                        vertex: b.vertex,
                        left_side,
                    },
                );
                classification.push(BoundaryVertexClass {
                    position: p.clone(),
                    kind: VertexKind::Turning {
                        vertex: b.vertex,
                        sector: SectorId::Wedge { left_side, index: j },
                    },
                });
            }
            // cap when the side has no doorways
            if let Some(tip) = &side.cap_tip {
                let c = &side.width / rat_i(2);
                let eta_c = &c / rat_i(4);
                let d1 = Pt::new(door_x.clone(), yv - &d);
                let d2 = Pt::new(door_x.clone(), yv + &d);
                let kb = if left_side {
                    Pt::new(&tip.x + &eta_c, yv.clone())
                } else {
                    Pt::new(&tip.x - &eta_c, yv.clone())
                };
                let s1 = buf.push_seg(d1, kb.clone(), true);
                let h = buf.push_seg(tip.clone(), kb, true);
                let s2 = buf.push_seg(tip.clone(), d2, false);
                let _ = s1;
                buf.tag(h, tip, FeatureTag::CapTip { vertex: b.vertex });
                buf.tag(s2, tip, FeatureTag::CapTip { vertex: b.vertex });
                classification.push(BoundaryVertexClass {
                    position: tip.clone(),
                    kind: VertexKind::Turning {
                        vertex: b.vertex,
                        sector: SectorId::Cap { left_side },
                    },
                });
            }
        }
        // tents (top and bottom)
        for top in [true, false] {
            let level = if top { &b.y_top } else { &b.y_bot };
            let sgn = if top { d.clone() } else { -d.clone() };
            let region_above = !top;
            let lend = match b.left.doorways.last() {
                Some(_) if top => Pt::new(a - &b.left.width, &b.left.doorways.last().unwrap().1 + &sgn),
                Some(_) => Pt::new(a - &b.left.width, &b.left.doorways.first().unwrap().1 + &sgn),
                None => Pt::new(a - &b.left.width, yv + &sgn),
            };
            let rend = match b.right.doorways.last() {
                Some(_) if top => Pt::new(a + &b.right.width, &b.right.doorways.last().unwrap().1 + &sgn),
                Some(_) => Pt::new(a + &b.right.width, &b.right.doorways.first().unwrap().1 + &sgn),
                None => Pt::new(a + &b.right.width, yv + &sgn),
            };
            let q_l = Pt::new(a - &b.left.width / rat_i(2), level.clone());
            let q_r = Pt::new(a + &b.right.width / rat_i(2), level.clone());
            if b.left.doorways.is_empty() {
                // start with a horizontal stub so the cap S attaches cleanly
                let stub = Pt::new(a - &b.left.width * rat(3, 4), lend.y.clone());
                buf.push_seg(lend.clone(), stub.clone(), region_above);
                buf.push_seg(stub, q_l.clone(), region_above);
            } else {
                buf.push_seg(lend.clone(), q_l.clone(), region_above);
            }
            buf.push_seg(q_l, q_r.clone(), region_above);
            if b.right.doorways.is_empty() {
                let stub = Pt::new(a + &b.right.width * rat(3, 4), rend.y.clone());
                buf.push_seg(q_r, stub.clone(), region_above);
                buf.push_seg(stub, rend, region_above);
            } else {
                buf.push_seg(q_r, rend, region_above);
            }
        }
    }

    // assemble curves by exact endpoint matching
    let region = assemble_region(&buf.pieces).map_err(NbhdError::Assembly)?;
    // structural checks: alternation and extremum census
    check_alternation(&region).map_err(NbhdError::Assembly)?;
    let extrema = boundary_extrema(&region);
    if extrema.len() != classification.len() {
        return Err(NbhdError::Assembly(format!(
            "extremum census mismatch: found {}, classified {}",
            extrema.len(),
            classification.len()
        )));
    }
    for cls in &classification {
        if !extrema.iter().any(|p| p == &cls.position) {
            return Err(NbhdError::Assembly(format!(
                "classified turning vertex {:?} is not a projection extremum",
                cls.position
            )));
        }
    }
    // boundary component count = 1 + first Betti number
    let g = se.as_embedded_graph().graph();
    let expect_curves = 1 + crate::graph::smooth_degree_two(&g).betti1();
    if region.curves.len() as i64 != expect_curves {
        return Err(NbhdError::Assembly(format!(
            "boundary has {} curves, expected {}",
            region.curves.len(),
            expect_curves
        )));
    }

    // adjusted routes: truncated thread + horizontal approach + dive
    let mut adjusted_routes: Vec<Vec<Pt>> = Vec::new();
    for (e, _) in se.threads.iter().enumerate() {
        let l2r = se.thread_left_to_right(e);
        let lv = l2r[0];
        let rv = *l2r.last().unwrap();
        let trunc_l = &se.points[lv].x + &boxes[lv].right.width;
        let trunc_r = &se.points[rv].x - &boxes[rv].left.width;
        let gamma_l = se.thread_y_at(e, &trunc_l);
        let gamma_r = se.thread_y_at(e, &trunc_r);
        let eps_l = std::cmp::min(&d / rat_i(8), &boxes[lv].right.width / rat_i(4));
        let eps_r = std::cmp::min(&d / rat_i(8), &boxes[rv].left.width / rat_i(4));
        let mut route = vec![
            se.points[lv].clone(),
            Pt::new(&se.points[lv].x + &eps_l, gamma_l.clone()),
            Pt::new(trunc_l.clone(), gamma_l.clone()),
        ];
        for &p in &l2r {
            let x = &se.points[p].x;
            if &trunc_l < x && x < &trunc_r {
                route.push(se.points[p].clone());
            }
        }
        route.push(Pt::new(trunc_r.clone(), gamma_r.clone()));
        route.push(Pt::new(&se.points[rv].x - &eps_r, gamma_r.clone()));
        route.push(se.points[rv].clone());
        // drop zero-length duplicates
        route.dedup();
        adjusted_routes.push(route);
    }
    check_routes_inside(&region, &adjusted_routes).map_err(NbhdError::Assembly)?;

    // derive exact region-side flags in assembled order
    let region_above = derive_region_sides(&region, &d)?;

    Ok(Neighborhood {
        region,
        classification,
        delta: d,
        boxes,
        adjusted_routes,
        region_above,
    })
}

fn key_of(p: &Pt) -> (String, String) {
    (p.x.to_string(), p.y.to_string())
}

fn assemble_region(pieces: &[Piece]) -> Result<ArcRegion, String> {
    let mut incidence: HashMap<(String, String), Vec<usize>> = HashMap::new();
    let ends: Vec<(Pt, Pt)> = pieces
        .iter()
        .map(|p| match &p.geom {
            PieceGeom::Seg(s) => (s.a.clone(), s.b.clone()),
            PieceGeom::Arc { .. } => unreachable!("neighborhood pieces are segments"),
        })
        .collect();
    for (i, (pa, pb)) in ends.iter().enumerate() {
        incidence.entry(key_of(pa)).or_default().push(i);
        incidence.entry(key_of(pb)).or_default().push(i);
    }
    for (k, v) in &incidence {
        if v.len() != 2 {
            return Err(format!(
                "boundary endpoint {:?} has {} incident pieces",
                k,
                v.len()
            ));
        }
    }
    let mut used = vec![false; pieces.len()];
    let mut curves = Vec::new();
    for start in 0..pieces.len() {
        if used[start] {
            continue;
        }
        let mut loop_pieces = Vec::new();
        let mut cur = start;
        let mut at = ends[start].1.clone();
        used[start] = true;
        loop_pieces.push(pieces[start].clone());
        loop {
            let inc = &incidence[&key_of(&at)];
            let nxt = if inc[0] == cur { inc[1] } else { inc[0] };
            if nxt == start {
                break;
            }
            if used[nxt] {
                return Err("boundary walk revisited a piece".to_string());
            }
            used[nxt] = true;
            loop_pieces.push(pieces[nxt].clone());
            at = if ends[nxt].0 == at {
                ends[nxt].1.clone()
            } else {
                ends[nxt].0.clone()
            };
            cur = nxt;
        }
        curves.push(Curve {
            pieces: loop_pieces,
        });
    }
    ArcRegion::new(curves).map_err(|e| e.to_string())
}

/// Every boundary junction must join exactly one horizontal and one
/// non-horizontal piece.
pub fn check_alternation(region: &ArcRegion) -> Result<(), String> {
    let mut at_point: HashMap<(String, String), Vec<bool>> = HashMap::new();
    for p in region.all_pieces() {
        if let PieceGeom::Seg(s) = &p.geom {
            for end in [&s.a, &s.b] {
                at_point
                    .entry(key_of(end))
                    .or_default()
                    .push(s.is_horizontal());
            }
        }
    }
    for (k, flags) in &at_point {
        if flags.len() != 2 || flags[0] == flags[1] {
            return Err(format!(
                "alternation violated at {:?}: horizontals {:?}",
                k, flags
            ));
        }
    }
    Ok(())
}

/// Junction points that are local extrema of the projection along their
/// boundary curve (both incident pieces on the same side).
pub fn boundary_extrema(region: &ArcRegion) -> Vec<Pt> {
    let mut at_point: HashMap<(String, String), (Pt, Vec<i32>)> = HashMap::new();
    for p in region.all_pieces() {
        if let PieceGeom::Seg(s) = &p.geom {
            let (l, r) = if s.a.x < s.b.x { (&s.a, &s.b) } else { (&s.b, &s.a) };
            at_point
                .entry(key_of(l))
                .or_insert_with(|| (l.clone(), Vec::new()))
                .1
                .push(1); // piece extends rightward from l
            at_point
                .entry(key_of(r))
                .or_insert_with(|| (r.clone(), Vec::new()))
                .1
                .push(-1);
        }
    }
    at_point
        .into_values()
        .filter(|(_, dirs)| dirs.len() == 2 && dirs[0] == dirs[1])
        .map(|(p, _)| p)
        .collect()
}

fn check_routes_inside(region: &ArcRegion, routes: &[Vec<Pt>]) -> Result<(), String> {
    let segs: Vec<Seg> = region
        .all_pieces()
        .map(|p| match &p.geom {
            PieceGeom::Seg(s) => s.clone(),
            PieceGeom::Arc { .. } => unreachable!(),
        })
        .collect();
    for (e, route) in routes.iter().enumerate() {
        for w in route.windows(2) {
            let rs = Seg::new(w[0].clone(), w[1].clone());
            for bs in &segs {
                if segments_cross_improperly(&rs, bs) {
                    return Err(format!("route of edge {e} crosses the boundary"));
                }
            }
            let mid_x = (&w[0].x + &w[1].x) / rat_i(2);
            let mid_y = (&w[0].y + &w[1].y) / rat_i(2);
            match region.contains(&mid_x, &mid_y) {
                Some(true) => {}
                _ => return Err(format!("route of edge {e} leaves the neighborhood")),
            }
        }
    }
    Ok(())
}

fn derive_region_sides(region: &ArcRegion, delta: &Rat) -> Result<Vec<bool>, NbhdError> {
    let probe = delta / rat_i(64);
    let mut out = Vec::new();
    for p in region.all_pieces() {
        let (mx, my) = match &p.geom {
            PieceGeom::Seg(s) => (
                (&s.a.x + &s.b.x) / rat_i(2),
                (&s.a.y + &s.b.y) / rat_i(2),
            ),
            PieceGeom::Arc { .. } => unreachable!(),
        };
        let above = region.contains(&mx, &(&my + &probe));
        let below = region.contains(&mx, &(&my - &probe));
        match (above, below) {
            (Some(true), Some(false)) => out.push(true),
            (Some(false), Some(true)) => out.push(false),
            _ => {
                return Err(NbhdError::Assembly(format!(
                    "cannot determine region side at ({mx}, {my})"
                )))
            }
        }
    }
    Ok(out)
}

/// Quotient of the region by the first-coordinate projection.
pub fn poincare_reeb(region: &ArcRegion) -> Result<LabeledReebGraph, crate::sweep::SweepError> {
    let pieces = region_sweep_pieces(region);
    let sweep = run_sweep(&pieces, &[])?;
    reeb_from_sweep(&sweep, None)
}

#[derive(Clone, Debug)]
pub struct CollapseWitness {
    /// graph vertex -> contracted Reeb edge (indices into q.graph.edges())
    pub e_star: Vec<(usize, usize)>,
    pub contracted_is_homeomorphic: bool,
    pub expected_pairs: usize,
}

/// Identify the Reeb edges joining a left-pinch node to a right-pinch node
/// of the same graph vertex, contract them, and compare with the input graph.
pub fn collapse_check(
    q: &LabeledReebGraph,
    se: &StraightEmbedding,
) -> Result<CollapseWitness, NbhdError> {
    let mut e_star: Vec<(usize, usize)> = Vec::new();
    for (ei, &(u, w)) in q.graph.edges().iter().enumerate() {
        // orient by value
        let (lo, hi) = if q.values[u] <= q.values[w] { (u, w) } else { (w, u) };
        for tag_l in &q.tags[lo] {
            if let FeatureTag::Pinch {
                vertex,
                left_side: true,
            } = tag_l
            {
                let matches_right = q.tags[hi].iter().any(|t| {
                    matches!(t, FeatureTag::Pinch { vertex: v2, left_side: false } if v2 == vertex)
                });
                if matches_right {
                    e_star.push((*vertex, ei));
                }
            }
        }
    }
    e_star.sort();
    e_star.dedup();
    // expected: vertices with at least two edges on both sides
    let mut expected = 0usize;
    for v in 0..se.original_vertex_count {
        let fan = se.incident_fan(v);
        let l = fan.iter().filter(|(_, s, _)| *s < 0).count();
        let r = fan.iter().filter(|(_, s, _)| *s > 0).count();
        if l >= 2 && r >= 2 {
            expected += 1;
        }
    }
    if e_star.len() != expected {
        return Err(NbhdError::MissingProvenance(format!(
            "found {} contractible box edges, expected {}",
            e_star.len(),
            expected
        )));
    }
    // contract
    let n = q.graph.vertex_count();
    let mut repr: Vec<usize> = (0..n).collect();
    let find = |repr: &mut Vec<usize>, mut x: usize| -> usize {
        while repr[x] != x {
            x = repr[x];
        }
        x
    };
    let contracted: Vec<usize> = e_star.iter().map(|&(_, e)| e).collect();
    for &e in &contracted {
        let (u, w) = q.graph.edges()[e];
        let (ru, rw) = (find(&mut repr, u), find(&mut repr, w));
        if ru != rw {
            repr[ru] = rw;
        }
    }
    let mut remap: HashMap<usize, usize> = HashMap::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut next = 0usize;
    let id = |remap: &mut HashMap<usize, usize>, next: &mut usize, x: usize| -> usize {
        *remap.entry(x).or_insert_with(|| {
            let v = *next;
            *next += 1;
            v
        })
    };
    for (ei, &(u, w)) in q.graph.edges().iter().enumerate() {
        if contracted.contains(&ei) {
            continue;
        }
        let (ru, rw) = (find(&mut repr, u), find(&mut repr, w));
        let (mu, mw) = (id(&mut remap, &mut next, ru), id(&mut remap, &mut next, rw));
        edges.push((mu, mw));
    }
    // vertices that appear in no remaining edge vanish only if isolated
    let g_small = MultiGraph::new_with_loops(next.max(1), edges)
        .map_err(|e| NbhdError::Assembly(format!("contracted graph invalid: {e}")))?;
    let input_graph = se.as_embedded_graph().graph();
    let ok = homeomorphic(&g_small, &input_graph);
    Ok(CollapseWitness {
        e_star,
        contracted_is_homeomorphic: ok,
        expected_pairs: expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::parse_embedding;
    use crate::straighten::straighten;

    fn nbhd_of(src: &str) -> Neighborhood {
        let g = parse_embedding(src).unwrap();
        let se = straighten(&g).unwrap();
        let d = default_delta(&se).unwrap();
        build_neighborhood(&se, &d).unwrap()
    }

    #[test]
    fn single_edge_strip() {
        let n = nbhd_of("vertex u 0 0\nvertex v 1 0\nedge e u v\n");
        assert_eq!(n.region.curves.len(), 1);
        let turning = n
            .classification
            .iter()
            .filter(|c| matches!(c.kind, VertexKind::Turning { .. }))
            .count();
        assert_eq!(turning, 2);
        let q = poincare_reeb(&n.region).unwrap();
        assert!(homeomorphic(
            &q.graph,
            &MultiGraph::new(2, vec![(0, 1)]).unwrap()
        ));
    }

    #[test]
    fn y_graph_neighborhood() {
        let n = nbhd_of(
            "vertex a 0 1\nvertex b 0 -1\nvertex c 1 0\nvertex d 2 0\n\
             edge ac a c\nedge bc b c\nedge cd c d\n",
        );
        assert_eq!(n.region.curves.len(), 1);
        // three cap tips plus one wedge pinch at c
        assert_eq!(n.classification.len(), 4);
        let wedges = n
            .classification
            .iter()
            .filter(|c| matches!(&c.kind, VertexKind::Turning { sector: SectorId::Wedge { .. }, .. }))
            .count();
        assert_eq!(wedges, 1);
        let q = poincare_reeb(&n.region).unwrap();
        let y = MultiGraph::new(4, vec![(0, 2), (1, 2), (2, 3)]).unwrap();
        assert!(homeomorphic(&q.graph, &y));
    }

    #[test]
    fn star22_collapse() {
        let src = "vertex p 0 1\nvertex q 0 -1\nvertex c 1 0\nvertex r 2 1\nvertex s 2 -1\n\
                   edge pc p c\nedge qc q c\nedge cr c r\nedge cs c s\n";
        let g = parse_embedding(src).unwrap();
        let se = straighten(&g).unwrap();
        let d = default_delta(&se).unwrap();
        let n = build_neighborhood(&se, &d).unwrap();
        let q = poincare_reeb(&n.region).unwrap();
        let w = collapse_check(&q, &se).unwrap();
        assert_eq!(w.e_star.len(), 1);
        assert!(w.contracted_is_homeomorphic);
    }

    #[test]
    fn theta_boundary_curves() {
        // generic but not M-generic embedding of the theta graph
        let src = "vertex u 0 0\nvertex v 3 0\n\
                   edge top u v bend 1 1 bend 2 1\n\
                   edge mid u v\n\
                   edge bot u v bend 1 -1 bend 2 -1\n";
        let n = nbhd_of(src);
        assert_eq!(n.region.curves.len(), 3);
    }

    #[test]
    fn delta_too_large_rejected() {
        let g = parse_embedding("vertex u 0 0\nvertex v 1 0\nedge e u v\n").unwrap();
        let se = straighten(&g).unwrap();
        let too_big = rat_i(10);
        match build_neighborhood(&se, &too_big) {
            Err(NbhdError::DeltaTooLarge { max_admissible }) => {
                assert!(max_admissible < too_big);
            }
            other => panic!("expected DeltaTooLarge, got {other:?}"),
        }
    }

    #[test]
    fn euler_characteristic_matches() {
        let n = nbhd_of(
            "vertex a 0 1\nvertex b 0 -1\nvertex c 1 0\nvertex d 2 0\n\
             edge ac a c\nedge bc b c\nedge cd c d\n",
        );
        let q = poincare_reeb(&n.region).unwrap();
        // tree: chi = 1
        assert_eq!(q.euler_characteristic(), 1);
    }
}
