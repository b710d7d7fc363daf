//! Circle arrangement on the neighborhood boundary: tangent circles pinning
//! branch abscissae, leaf circles at cap tips, bend and cover circles along
//! every boundary piece, label assignment, hypothesis validation, and the
//! exact trace of the arc-bounded region left after removing the disks.

use std::collections::HashMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::geom::{CircleGeom, Fe, Pt, QPt, Seg};
use crate::neighborhood::Neighborhood;
use crate::num::{rat, rat_i, sign_rat, QuadReal, Rat};
use crate::region::{ArcRegion, ColY, Curve, FeatureTag, Piece, PieceGeom};
use crate::straighten::StraightEmbedding;
use crate::sweep::{locate_point, run_sweep, SweepPiece, SweepResult, Toggle};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CircleRole {
    TangentTurning,
    LeafTurning,
    Bend,
    Cover,
}

#[derive(Clone, Debug)]
pub struct ArrCircle {
    pub geom: CircleGeom,
    pub role: CircleRole,
    /// +1: region on the outside (disk removed); -1: region is the disk
    pub orientation: i32,
    /// graph vertex served (tangent and leaf circles)
    pub anchor_vertex: Option<usize>,
}

impl ArrCircle {
    /// Sign of f_j at a rational point under this circle's orientation.
    pub fn f_sign(&self, x: &Rat, y: &Rat) -> i32 {
        self.orientation * sign_rat(&self.geom.eval(x, y))
    }

    pub fn f_sign_qpt(&self, p: &QPt) -> i32 {
        self.orientation * self.geom.eval_sign_at(p)
    }
}

#[derive(Clone, Debug)]
pub struct CircleArrangement {
    pub circles: Vec<ArrCircle>,
    /// labels in 1..=l_prime
    pub labels: Vec<usize>,
    pub l_prime: usize,
    /// sphere dimension per label (index 0 = label 1)
    pub sphere_dims: Vec<u32>,
    /// the closed region bounded by circle arcs
    pub region: ArcRegion,
    /// designed tangencies: (circle, graph vertex, tangency point)
    pub tangencies: Vec<(usize, usize, Pt)>,
    /// the ambient neighborhood boundary (for rendering and checks)
    pub neighborhood: ArcRegion,
}

#[derive(Debug, Clone)]
pub enum ArrangeError {
    Infeasible(String),
    Sweep(String),
}

impl fmt::Display for ArrangeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArrangeError::Infeasible(m) => write!(f, "arrangement infeasible: {m}"),
            ArrangeError::Sweep(m) => write!(f, "region sweep failed: {m}"),
        }
    }
}

impl std::error::Error for ArrangeError {}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug)]
pub struct ValidationCertificate {
    pub checks: Vec<CheckResult>,
}

impl ValidationCertificate {
    pub fn valid(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

fn qpt_witness(p: &QPt) -> String {
    format!("({}, {})", p.x.to_decimal(12), p.y.to_decimal(12))
}

/// Upward ray cast of a quadratic point against a polygonal region.
/// None when the point lies on the boundary.
pub fn polygon_contains_qpt(region: &ArcRegion, p: &QPt) -> Option<bool> {
    let d = p.field_radicand();
    let mut parity = false;
    for piece in region.all_pieces() {
        let s = match &piece.geom {
            PieceGeom::Seg(s) => s,
            PieceGeom::Arc { .. } => panic!("polygon test on an arc region"),
        };
        let (xl, xr) = s.x_range();
        let cl = p.x.cmp_rat(&xl);
        let cr = p.x.cmp_rat(&xr);
        if cl == std::cmp::Ordering::Less || cr != std::cmp::Ordering::Less {
            // handle exact right endpoint on the piece
            if cr == std::cmp::Ordering::Equal {
                let end_y = if s.a.x > s.b.x { &s.a.y } else { &s.b.y };
                if p.y.cmp_rat(end_y) == std::cmp::Ordering::Equal {
                    return None;
                }
            }
            continue;
        }
        let fy = s.y_at_quad(&p.x, &d);
        let py = Fe::from_quad(&p.y, &d).expect("point coordinates share a field");
        let diff = fy.sub(&py);
        match diff.sign() {
            0 => return None,
            1 => parity = !parity,
            _ => {}
        }
    }
    Some(parity)
}

struct Placer<'a> {
    nbhd: &'a Neighborhood,
    scale: Rat,
    circles: Vec<ArrCircle>,
    tangencies: Vec<(usize, usize, Pt)>,
}

impl<'a> Placer<'a> {
    fn delta(&self) -> &Rat {
        &self.nbhd.delta
    }

    fn add(&mut self, c: ArrCircle) -> usize {
        self.circles.push(c);
        self.circles.len() - 1
    }

    fn covered(&self, p: &Pt) -> bool {
        self.circles
            .iter()
            .any(|c| c.geom.eval(&p.x, &p.y).is_negative())
    }

    fn place_tangent_circles(&mut self) {
        for b in &self.nbhd.boxes {
            let a = &b.center.x;
            for (left_side, side) in [(true, &b.left), (false, &b.right)] {
                for wall in &side.walls {
                    let p = &wall.pinch;
                    let depth = if left_side { a - &p.x } else { &p.x - a };
                    let r = rat(3, 4) * &depth;
                    let cx = if left_side { a - &r } else { a + &r };
                    let geom = CircleGeom::new(cx, p.y.clone(), &r * &r);
                    let idx = self.add(ArrCircle {
                        geom,
                        role: CircleRole::TangentTurning,
                        orientation: 1,
                        anchor_vertex: Some(b.vertex),
                    });
                    self.tangencies
                        .push((idx, b.vertex, Pt::new(a.clone(), p.y.clone())));
                }
            }
        }
    }

    fn place_leaf_circles(&mut self) {
        for b in &self.nbhd.boxes {
            for side in [&b.left, &b.right] {
                if let Some(tip) = &side.cap_tip {
                    let c = &side.width / rat_i(2);
                    let r = &c / rat_i(5);
                    // center below the cap tip, in the void under the cap lid
                    let cy = &tip.y - rat(4, 5) * &r;
                    let geom = CircleGeom::new(tip.x.clone(), cy, &r * &r);
                    self.add(ArrCircle {
                        geom,
                        role: CircleRole::LeafTurning,
                        orientation: 1,
                        anchor_vertex: Some(b.vertex),
                    });
                }
            }
        }
    }

    /// Per-piece cover radius: tubes get fat shallow disks, blob pieces
    /// tighter ones.
    fn piece_radius(&self, piece_mid_x: &Rat) -> Rat {
        let d = self.delta();
        let in_blob = self.nbhd.boxes.iter().any(|b| {
            let lo = &b.center.x - &b.left.width;
            let hi = &b.center.x + &b.right.width;
            &lo < piece_mid_x && piece_mid_x < &hi
        });
        let base = if in_blob {
            d / rat_i(2)
        } else {
            rat(5, 4) * d
        };
        base * &self.scale
    }

    fn place_bend_circles(&mut self, region: &ArcRegion, region_above: &[bool]) {
        // junctions: endpoint -> (point, region_above flags)
        let mut at: HashMap<(String, String), (Pt, Vec<bool>)> = HashMap::new();
        for (pi, piece) in region.all_pieces().enumerate() {
            if let PieceGeom::Seg(s) = &piece.geom {
                for end in [&s.a, &s.b] {
                    at.entry((end.x.to_string(), end.y.to_string()))
                        .or_insert_with(|| (end.clone(), Vec::new()))
                        .1
                        .push(region_above[pi]);
                }
            }
        }
        for (p, flags) in at.into_values() {
            if flags.len() != 2 || flags[0] != flags[1] {
                continue; // extremum junctions are served by tangent/leaf disks
            }
            if self.covered(&p) {
                continue;
            }
            let r = self.piece_radius(&p.x);
            let off = rat(4, 5) * &r;
            let cy = if flags[0] { &p.y - &off } else { &p.y + &off };
            let geom = CircleGeom::new(p.x.clone(), cy, &r * &r);
            self.add(ArrCircle {
                geom,
                role: CircleRole::Bend,
                orientation: 1,
                anchor_vertex: None,
            });
        }
    }

    /// Chord of a disk on a piece, as a closed parameter interval (if any).
    fn chord_on(&self, c: &CircleGeom, s: &Seg) -> Option<(QuadReal, QuadReal)> {
        let vx = &s.b.x - &s.a.x;
        let vy = &s.b.y - &s.a.y;
        let wx = &s.a.x - &c.cx;
        let wy = &s.a.y - &c.cy;
        let qa = &vx * &vx + &vy * &vy;
        let qb = rat_i(2) * (&vx * &wx + &vy * &wy);
        let qc = &wx * &wx + &wy * &wy - &c.r2;
        let disc = &qb * &qb - rat_i(4) * &qa * &qc;
        if !disc.is_positive() {
            return None;
        }
        let t0 = QuadReal::root_of_quadratic(&qa, &qb, &qc, -1);
        let t1 = QuadReal::root_of_quadratic(&qa, &qb, &qc, 1);
        let zero = QuadReal::from_rat(Rat::zero());
        let one = QuadReal::from_rat(rat_i(1));
        let lo = if t0 < zero { zero } else { t0 };
        let hi = if t1 > one { one } else { t1 };
        if lo < hi {
            Some((lo, hi))
        } else {
            None
        }
    }

    fn uncovered_gaps(&self, s: &Seg) -> Vec<(QuadReal, QuadReal)> {
        let mut chords: Vec<(QuadReal, QuadReal)> = self
            .circles
            .iter()
            .filter_map(|c| self.chord_on(&c.geom, s))
            .collect();
        chords.sort_by(|a, b| a.0.cmp(&b.0));
        let mut gaps = Vec::new();
        let mut cursor = QuadReal::from_rat(Rat::zero());
        let one = QuadReal::from_rat(rat_i(1));
        for (lo, hi) in chords {
            if lo > cursor {
                gaps.push((cursor.clone(), lo.clone()));
            }
            if hi > cursor {
                cursor = hi;
            }
        }
        if cursor < one {
            gaps.push((cursor, one));
        }
        gaps
    }

    fn place_cover_circles(&mut self, region: &ArcRegion, region_above: &[bool]) {
        let pieces: Vec<(Seg, bool)> = region
            .all_pieces()
            .zip(region_above.iter())
            .map(|(p, ra)| match &p.geom {
                PieceGeom::Seg(s) => (s.clone(), *ra),
                PieceGeom::Arc { .. } => unreachable!(),
            })
            .collect();
        for (s, above) in &pieces {
            let mid_x = (&s.a.x + &s.b.x) / rat_i(2);
            let r = self.piece_radius(&mid_x);
            let dx = &s.b.x - &s.a.x;
            let dy = &s.b.y - &s.a.y;
            let len2 = &dx * &dx + &dy * &dy;
            let lf = QuadReal::sqrt_rat(&len2).to_f64();
            let rf = QuadReal::sqrt_rat(&(&r * &r)).to_f64();
            // rational k with offset distance k*len in (0.55 r, 0.8 r),
            // kept dyadic so downstream arithmetic stays small
            let k = {
                let approx = 0.66 * rf / lf;
                let mut k = Rat::new(
                    (((approx * 4096.0).round() as i64).max(1)).into(),
                    4096.into(),
                );
                for _ in 0..200 {
                    let v = &k * &k * &len2;
                    if v <= rat(3, 10) * &r * &r {
                        k += rat(1, 4096);
                    } else if v >= rat(16, 25) * &r * &r {
                        k -= rat(1, 4096);
                    } else {
                        break;
                    }
                }
                k
            };
            // void-ward normal offset: (dy, -dx) points below for dx > 0
            let (nx, ny) = if *above {
                (&k * &dy, -(&k * &dx))
            } else {
                (-(&k * &dy), &k * &dx)
            };
            // uniform chain: chord half-width is at least 0.6 r, spacing
            // 0.4 r keeps consecutive chords overlapping and the piece ends
            // strictly interior to the first and last chords
            let n = ((lf / (0.7 * rf)).ceil() as i64).clamp(1, 4096);
            for j in 0..n {
                let t = rat_i(2 * j + 1) / rat_i(2 * n);
                let px = &s.a.x + &t * &dx;
                let py = &s.a.y + &t * &dy;
                let geom = CircleGeom::new(&px + &nx, &py + &ny, &r * &r);
                self.add(ArrCircle {
                    geom,
                    role: CircleRole::Cover,
                    orientation: 1,
                    anchor_vertex: None,
                });
            }
        }
    }
}

/// All pairwise transversal intersection points among the circles.
pub fn circle_crossings(circles: &[ArrCircle]) -> Vec<(usize, usize, QPt)> {
    let mut out = Vec::new();
    for i in 0..circles.len() {
        for j in i + 1..circles.len() {
            for p in circles[i].geom.intersect_circle(&circles[j].geom) {
                out.push((i, j, p));
            }
        }
    }
    out
}

/// Greedy proper coloring of the intersection graph restricted to pairs that
/// meet the closed region; deterministic in circle order.
pub fn assign_labels(
    circles: &[ArrCircle],
    constrained_pairs: &[(usize, usize)],
) -> (Vec<usize>, usize) {
    let n = circles.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(i, j) in constrained_pairs {
        adj[i].push(j);
        adj[j].push(i);
    }
    let mut labels = vec![0usize; n];
    let mut l_prime = 0usize;
    for i in 0..n {
        let mut used: Vec<bool> = vec![false; l_prime + 2];
        for &j in &adj[i] {
            if labels[j] != 0 {
                used[labels[j]] = true;
            }
        }
        let mut c = 1usize;
        while c < used.len() && used[c] {
            c += 1;
        }
        labels[i] = c;
        l_prime = l_prime.max(c);
    }
    (labels, l_prime)
}

/// Sweep pieces for the neighborhood-minus-disks region.
///
/// Crossing columns hidden strictly inside a third disk never change the
/// bounding structure of any region interval, so they are dropped from the
/// event set (decided by a guarded sign with exact fallback).
fn derived_sweep_pieces(
    nbhd_region: &ArcRegion,
    circles: &[ArrCircle],
    tangencies: &[(usize, usize, Pt)],
    crossings: &[(usize, usize, QPt)],
) -> (Vec<SweepPiece>, Vec<QuadReal>) {
    let mut pieces: Vec<SweepPiece> = Vec::new();
    for p in nbhd_region.all_pieces() {
        pieces.push(SweepPiece {
            piece: p.clone(),
            toggle: Toggle::Region,
        });
    }
    for (k, c) in circles.iter().enumerate() {
        let lo = QPt::new(c.geom.min_x(), QuadReal::from_rat(c.geom.cy.clone()));
        let hi = QPt::new(c.geom.max_x(), QuadReal::from_rat(c.geom.cy.clone()));
        let mut tag_lo = FeatureTag::None;
        let mut tag_hi = FeatureTag::None;
        for (ci, v, t) in tangencies {
            if *ci == k {
                let tq = QPt::from_rat(t.x.clone(), t.y.clone());
                if tq == lo {
                    tag_lo = FeatureTag::Tangency { circle: k, vertex: *v };
                } else if tq == hi {
                    tag_hi = FeatureTag::Tangency { circle: k, vertex: *v };
                }
            }
        }
        for upper in [true, false] {
            let mut piece = Piece::arc(c.geom.clone(), upper, lo.clone(), hi.clone());
            piece.tag_lo = tag_lo.clone();
            piece.tag_hi = tag_hi.clone();
            pieces.push(SweepPiece {
                piece,
                toggle: Toggle::Disk(k),
            });
        }
    }
    // extra events: circle/circle and circle/segment crossing abscissae
    let mut extra: Vec<QuadReal> = Vec::new();
    let margin = 1e-7;
    for (i, j, p) in crossings {
        let hidden = circles
            .iter()
            .enumerate()
            .any(|(k, c)| k != *i && k != *j && c.geom.eval_sign_guarded(p, margin) < 0);
        if !hidden {
            extra.push(p.x.clone());
        }
    }
    for c in circles {
        for p in nbhd_region.all_pieces() {
            if let PieceGeom::Seg(s) = &p.geom {
                for q in c.geom.intersect_seg(s) {
                    extra.push(q.x);
                }
            }
        }
    }
    (pieces, extra)
}

/// Interior probe candidates per edge tube (used to identify the core
/// component of the derived region). Several abscissae are offered because a
/// candidate may land exactly on an event column.
fn core_probes(se: &StraightEmbedding, nbhd: &Neighborhood) -> Vec<Vec<Pt>> {
    let mut out = Vec::new();
    for (e, _) in se.threads.iter().enumerate() {
        let l2r = se.thread_left_to_right(e);
        let lv = l2r[0];
        let rv = *l2r.last().unwrap();
        let lo = &se.points[lv].x + &nbhd.boxes[lv].right.width;
        let hi = &se.points[rv].x - &nbhd.boxes[rv].left.width;
        let span = &hi - &lo;
        let mut cands = Vec::new();
        for denom in [2i64, 3, 5, 7, 11, 13] {
            let x = &lo + &span / rat_i(denom);
            cands.push(Pt::new(x.clone(), se.thread_y_at(e, &x)));
        }
        out.push(cands);
    }
    out
}

/// Fragment of one circle half surviving on the region boundary.
#[derive(Clone, Debug)]
struct TraceRun {
    circle: usize,
    upper: bool,
    start_port: QPt,
    end_port: QPt,
    start_tag: FeatureTag,
    end_tag: FeatureTag,
}

/// Trace the boundary of the core component of the derived region.
fn trace_region(
    sweep: &SweepResult,
    pieces: &[SweepPiece],
    circles: &[ArrCircle],
    core: usize,
    tangencies: &[(usize, usize, Pt)],
    crossings: &[(usize, usize, QPt)],
) -> Result<ArcRegion, String> {
    // crossing points between pieces, for port materialization
    let mut pair_points: HashMap<(usize, usize), Vec<QPt>> = HashMap::new();
    for (i, j, p) in crossings {
        let key = (*i.min(j), *i.max(j));
        pair_points.entry(key).or_default().push(p.clone());
    }
    // piece index mapping: which sweep pieces belong to which circle half
    // (region pieces keep usize::MAX)
    let owner: Vec<(usize, bool)> = pieces
        .iter()
        .map(|sp| match (&sp.toggle, &sp.piece.geom) {
            (Toggle::Disk(k), PieceGeom::Arc { upper, .. }) => (*k, *upper),
            _ => (usize::MAX, false),
        })
        .collect();

    // circle/segment crossings keyed by (circle piece, segment piece) resolved
    // by geometry at materialization time
    let seg_geom: Vec<Option<Seg>> = pieces
        .iter()
        .map(|sp| match &sp.piece.geom {
            PieceGeom::Seg(s) => Some(s.clone()),
            _ => None,
        })
        .collect();

    let materialize_port =
        |pa: usize, pb: usize, e: &QuadReal, want: &ColY, d: &Rat| -> Result<QPt, String> {
            let matches_want = |p: &QPt| -> bool {
                ColY::Val(p.y.clone()).cmp_in_column(want, d) == std::cmp::Ordering::Equal
            };
            // endpoint of either piece at this column takes precedence
            for &pi in [pa, pb].iter() {
                let piece = &pieces[pi].piece;
                if &piece.x_lo() == e && matches_want(&piece.lo_point()) {
                    return Ok(piece.lo_point());
                }
                if &piece.x_hi() == e && matches_want(&piece.hi_point()) {
                    return Ok(piece.hi_point());
                }
            }
            let (ca, _) = owner[pa];
            let (cb, _) = owner[pb];
            if ca != usize::MAX && cb != usize::MAX && ca != cb {
                let key = (ca.min(cb), ca.max(cb));
                let cands = pair_points
                    .get(&key)
                    .ok_or_else(|| "missing crossing for port".to_string())?;
                for p in cands {
                    if &p.x == e && matches_want(p) {
                        return Ok(p.clone());
                    }
                }
                return Err("no crossing at the port column".to_string());
            }
            if ca != usize::MAX && cb != usize::MAX {
                return Err("port joins two halves away from their endpoints".to_string());
            }
            // circle against a boundary segment
            let (ci, si) = if ca != usize::MAX { (ca, pb) } else { (cb, pa) };
            let s = seg_geom[si].as_ref().ok_or("expected segment piece")?;
            for p in circles[ci].geom.intersect_seg(s) {
                if &p.x == e && matches_want(&p) {
                    return Ok(p);
                }
            }
            Err("no circle/segment crossing at the port column".to_string())
        };

    // open runs keyed by (gap interval id, side): value = accumulated run
    #[derive(Clone)]
    struct Open {
        piece: usize,
        start_port: QPt,
        start_tag: FeatureTag,
    }
    let mut runs: Vec<TraceRun> = Vec::new();
    // per interval in the current gap: (lower open run, upper open run)
    let mut open_prev: Vec<Option<(Open, Open)>> = Vec::new();

    let tag_at = |pt: &QPt| -> FeatureTag {
        for (ci, v, t) in tangencies {
            let tq = QPt::from_rat(t.x.clone(), t.y.clone());
            if &tq == pt {
                return FeatureTag::Tangency {
                    circle: *ci,
                    vertex: *v,
                };
            }
        }
        FeatureTag::None
    };

    for k in 0..sweep.events.len() {
        let e = &sweep.events[k];
        let left_gap = k.checked_sub(1);
        let right_gap = if k < sweep.gaps.len() { Some(k) } else { None };
        // nodes at this event
        let mut closing: Vec<(Open, usize)> = Vec::new(); // (open run, node)
        let mut opening: Vec<(usize, usize, bool, usize)> = Vec::new(); // (gap, interval, lower?, node)

        if let Some(lg) = left_gap {
            for (i, iv) in sweep.gaps[lg].intervals.iter().enumerate() {
                if sweep.component_of(lg, i) != core {
                    continue;
                }
                let node = sweep.end_nodes[lg][i].1;
                let (lo_open, hi_open) = open_prev[i]
                    .clone()
                    .ok_or_else(|| "missing open run".to_string())?;
                // does the lower bound continue into some right interval in
                // the same node with the same piece?
                let cont_lo = right_gap.and_then(|rg| {
                    sweep.gaps[rg].intervals.iter().enumerate().find(|(j, jv)| {
                        sweep.end_nodes[rg][*j].0 == node && jv.lo_piece == iv.lo_piece
                    })
                });
                if cont_lo.is_none() {
                    closing.push((lo_open, node));
                }
                let cont_hi = right_gap.and_then(|rg| {
                    sweep.gaps[rg].intervals.iter().enumerate().find(|(j, jv)| {
                        sweep.end_nodes[rg][*j].0 == node && jv.hi_piece == iv.hi_piece
                    })
                });
                if cont_hi.is_none() {
                    closing.push((hi_open, node));
                }
            }
        }
        let mut open_next: Vec<Option<(Open, Open)>> = right_gap
            .map(|rg| vec![None; sweep.gaps[rg].intervals.len()])
            .unwrap_or_default();
        if let Some(rg) = right_gap {
            for (j, jv) in sweep.gaps[rg].intervals.iter().enumerate() {
                if sweep.component_of(rg, j) != core {
                    continue;
                }
                let node = sweep.end_nodes[rg][j].0;
                // continuation from the left?
                let mut lo_run: Option<Open> = None;
                let mut hi_run: Option<Open> = None;
                if let Some(lg) = left_gap {
                    for (i, iv) in sweep.gaps[lg].intervals.iter().enumerate() {
                        if sweep.end_nodes[lg][i].1 != node
                            || sweep.component_of(lg, i) != core
                        {
                            continue;
                        }
                        if iv.lo_piece == jv.lo_piece {
                            lo_run = open_prev[i].clone().map(|(lo, _)| lo);
                        }
                        if iv.hi_piece == jv.hi_piece {
                            hi_run = open_prev[i].clone().map(|(_, hi)| hi);
                        }
                    }
                }
                if lo_run.is_none() {
                    opening.push((rg, j, true, node));
                }
                if hi_run.is_none() {
                    opening.push((rg, j, false, node));
                }
                open_next[j] = Some((
                    lo_run.unwrap_or(Open {
                        piece: jv.lo_piece,
                        start_port: QPt::from_rat(Rat::zero(), Rat::zero()),
                        start_tag: FeatureTag::None,
                    }),
                    hi_run.unwrap_or(Open {
                        piece: jv.hi_piece,
                        start_port: QPt::from_rat(Rat::zero(), Rat::zero()),
                        start_tag: FeatureTag::None,
                    }),
                ));
            }
        }

        // match closings and openings into ports by column ordinate
        let d = e.radicand().clone();
        let col_of_piece = |pi: usize| -> ColY { pieces[pi].piece.col_value(e, &d) };
        let mut port_items: Vec<(ColY, PortItem)> = Vec::new();
        enum PortItem {
            Close(Open),
            OpenSlot { gap: usize, interval: usize, lower: bool },
        }
        for (o, _node) in closing {
            port_items.push((col_of_piece(o.piece), PortItem::Close(o)));
        }
        for (g, j, lower, _node) in opening {
            let piece = if lower {
                sweep.gaps[g].intervals[j].lo_piece
            } else {
                sweep.gaps[g].intervals[j].hi_piece
            };
            port_items.push((col_of_piece(piece), PortItem::OpenSlot { gap: g, interval: j, lower }));
        }
        // group by equal column ordinate
        let mut order: Vec<usize> = (0..port_items.len()).collect();
        order.sort_by(|&x, &y| port_items[x].0.cmp_in_column(&port_items[y].0, &d));
        let mut gi = 0usize;
        while gi < order.len() {
            let mut gj = gi + 1;
            while gj < order.len()
                && port_items[order[gi]]
                    .0
                    .cmp_in_column(&port_items[order[gj]].0, &d)
                    == std::cmp::Ordering::Equal
            {
                gj += 1;
            }
            let group: Vec<usize> = order[gi..gj].to_vec();
            if group.len() != 2 {
                return Err(format!(
                    "port at event {k} has {} incident fragments",
                    group.len()
                ));
            }
            // materialize the port point
            let piece_of = |it: &PortItem| -> usize {
                match it {
                    PortItem::Close(o) => o.piece,
                    PortItem::OpenSlot { gap, interval, lower } => {
                        let iv = &sweep.gaps[*gap].intervals[*interval];
                        if *lower {
                            iv.lo_piece
                        } else {
                            iv.hi_piece
                        }
                    }
                }
            };
            let pa = piece_of(&port_items[group[0]].1);
            let pb = piece_of(&port_items[group[1]].1);
            let port = materialize_port(pa, pb, e, &port_items[group[0]].0, &d)?;
            let ptag = tag_at(&port);
            for &gidx in &group {
                match &port_items[gidx].1 {
                    PortItem::Close(o) => {
                        let (ci, upper) = owner[o.piece];
                        if ci == usize::MAX {
                            return Err(
                                "region boundary piece survived on the traced region".to_string()
                            );
                        }
                        runs.push(TraceRun {
                            circle: ci,
                            upper,
                            start_port: o.start_port.clone(),
                            end_port: port.clone(),
                            start_tag: o.start_tag.clone(),
                            end_tag: ptag.clone(),
                        });
                    }
                    PortItem::OpenSlot { gap, interval, lower } => {
                        let slot = open_next[*interval]
                            .as_mut()
                            .ok_or("open slot missing".to_string())?;
                        let target = if *lower { &mut slot.0 } else { &mut slot.1 };
                        let _ = gap;
                        target.start_port = port.clone();
                        target.start_tag = ptag.clone();
                    }
                }
            }
            gi = gj;
        }
        open_prev = open_next;
    }

    // merge consecutive runs of the same circle half that share a port
    // (ports interior to a half appear when another circle merely crosses
    // this one without bounding the region there) — runs already maximal by
    // construction of the continuation rule; build curves by port matching.
    let mut incid: HashMap<String, Vec<usize>> = HashMap::new();
    let port_key = |p: &QPt| -> String { format!("{:?}|{:?}", p.x, p.y) };
    for (ri, r) in runs.iter().enumerate() {
        incid.entry(port_key(&r.start_port)).or_default().push(ri);
        incid.entry(port_key(&r.end_port)).or_default().push(ri);
    }
    for (k, v) in &incid {
        if v.len() != 2 {
            return Err(format!("traced port {k} has {} incident runs", v.len()));
        }
    }
    let mut used = vec![false; runs.len()];
    let mut curves = Vec::new();
    for start in 0..runs.len() {
        if used[start] {
            continue;
        }
        let mut cpieces = Vec::new();
        let mut cur = start;
        let mut at = runs[start].end_port.clone();
        used[start] = true;
        cpieces.push(run_to_piece(&runs[start], circles));
        loop {
            let inc = &incid[&port_key(&at)];
            let nxt = if inc[0] == cur { inc[1] } else { inc[0] };
            if nxt == start {
                break;
            }
            if used[nxt] {
                return Err("trace walk revisited a run".to_string());
            }
            used[nxt] = true;
            cpieces.push(run_to_piece(&runs[nxt], circles));
            at = if runs[nxt].start_port == at {
                runs[nxt].end_port.clone()
            } else {
                runs[nxt].start_port.clone()
            };
            cur = nxt;
        }
        curves.push(Curve { pieces: cpieces });
    }
    ArcRegion::new(curves).map_err(|e| e.to_string())
}

fn run_to_piece(r: &TraceRun, circles: &[ArrCircle]) -> Piece {
    let (lo, hi, tag_lo, tag_hi) = if r.start_port.x <= r.end_port.x {
        (
            r.start_port.clone(),
            r.end_port.clone(),
            r.start_tag.clone(),
            r.end_tag.clone(),
        )
    } else {
        (
            r.end_port.clone(),
            r.start_port.clone(),
            r.end_tag.clone(),
            r.start_tag.clone(),
        )
    };
    Piece::arc(circles[r.circle].geom.clone(), r.upper, lo, hi).with_tags(tag_lo, tag_hi)
}

/// Place all circles and extract the region they bound.
pub fn place_circles(
    nbhd: &Neighborhood,
    se: &StraightEmbedding,
    radius_scale: &Rat,
) -> Result<CircleArrangement, ArrangeError> {
    assert!(radius_scale.is_positive() && radius_scale <= &rat_i(1));
    let mut placer = Placer {
        nbhd,
        scale: radius_scale.clone(),
        circles: Vec::new(),
        tangencies: Vec::new(),
    };
    let t_place = std::time::Instant::now();
    placer.place_tangent_circles();
    placer.place_leaf_circles();
    placer.place_cover_circles(&nbhd.region, &nbhd.region_above);
    placer.place_bend_circles(&nbhd.region, &nbhd.region_above);

    if std::env::var("ARR_PROFILE").is_ok() {
        eprintln!("  placement: {:?} ({} circles)", t_place.elapsed(), placer.circles.len());
    }
    let t_cov = std::time::Instant::now();
    // exact full coverage of every boundary piece
    for p in nbhd.region.all_pieces() {
        if let PieceGeom::Seg(s) = &p.geom {
            let gaps = placer.uncovered_gaps(s);
            if !gaps.is_empty() {
                return Err(ArrangeError::Infeasible(format!(
                    "boundary piece at {:?} not fully covered",
                    s.a
                )));
            }
        }
    }

    if std::env::var("ARR_PROFILE").is_ok() {
        eprintln!("  coverage check: {:?}", t_cov.elapsed());
    }
    let mut circles = placer.circles;
    let tangencies = placer.tangencies;

    // sweep, identify the core component, prune hidden circles, retrace
    let mut region;
    loop {
        let t_sw = std::time::Instant::now();
        let crossings = circle_crossings(&circles);
        let (pieces, extra) = derived_sweep_pieces(&nbhd.region, &circles, &tangencies, &crossings);
        if std::env::var("ARR_PROFILE").is_ok() {
            eprintln!("  derived pieces: {:?} ({} pieces, {} extra)", t_sw.elapsed(), pieces.len(), extra.len());
        }
        let t_sw2 = std::time::Instant::now();
        let sweep =
            run_sweep(&pieces, &extra).map_err(|e| ArrangeError::Sweep(e.to_string()))?;
        if std::env::var("ARR_PROFILE").is_ok() {
            eprintln!("  sweep: {:?} ({} events)", t_sw2.elapsed(), sweep.events.len());
        }
        let probes = core_probes(se, nbhd);
        let mut core: Option<usize> = None;
        for cands in &probes {
            let mut found = None;
            for p in cands {
                if let Some((g, i)) = locate_point(&sweep, &pieces, &p.x, &p.y) {
                    found = Some(sweep.component_of(g, i));
                    break;
                }
            }
            match (found, core) {
                (Some(c), None) => core = Some(c),
                (Some(c), Some(c0)) if c == c0 => {}
                (Some(_), Some(_)) => {
                    return Err(ArrangeError::Infeasible(
                        "edge tubes fall in different components".to_string(),
                    ))
                }
                (None, _) => {
                    return Err(ArrangeError::Infeasible(
                        "no probe point is interior to the region".to_string(),
                    ))
                }
            }
        }
        let core = core.ok_or_else(|| ArrangeError::Infeasible("no probes".to_string()))?;
        let t_tr = std::time::Instant::now();
        region = trace_region(&sweep, &pieces, &circles, core, &tangencies, &crossings)
            .map_err(ArrangeError::Infeasible)?;
        if std::env::var("ARR_PROFILE").is_ok() {
            eprintln!("  trace: {:?}", t_tr.elapsed());
        }
        // prune circles contributing no boundary
        let mut contributes = vec![false; circles.len()];
        for p in region.all_pieces() {
            if let PieceGeom::Arc { circle, .. } = &p.geom {
                for (k, c) in circles.iter().enumerate() {
                    if c.geom.cx == circle.cx && c.geom.cy == circle.cy && c.geom.r2 == circle.r2
                    {
                        contributes[k] = true;
                    }
                }
            }
        }
        if contributes.iter().all(|&b| b) {
            break;
        }
        let keep: Vec<ArrCircle> = circles
            .iter()
            .zip(contributes.iter())
            .filter(|(_, &b)| b)
            .map(|(c, _)| c.clone())
            .collect();
        // coverage must survive pruning; bail out if not
        let test = Placer {
            nbhd,
            scale: radius_scale.clone(),
            circles: keep.clone(),
            tangencies: Vec::new(),
        };
        let mut covered = true;
        for p in nbhd.region.all_pieces() {
            if let PieceGeom::Seg(s) = &p.geom {
                if !test.uncovered_gaps(s).is_empty() {
                    covered = false;
                }
            }
        }
        if !covered {
            break; // keep the hidden circles; condition (1) will report them
        }
        let old_tang = tangencies.clone();
        let mut remap_tang = Vec::new();
        let mut new_idx = 0usize;
        let mut index_map = HashMap::new();
        for (k, &b) in contributes.iter().enumerate() {
            if b {
                index_map.insert(k, new_idx);
                new_idx += 1;
            }
        }
        for (ci, v, t) in old_tang {
            if let Some(&ni) = index_map.get(&ci) {
                remap_tang.push((ni, v, t));
            }
        }
        circles = keep;
        let _ = remap_tang;
        // tangent circles always contribute; assert their survival
        return place_with(nbhd, se, radius_scale, circles, remap_tangencies(&tangencies, &index_map));
    }

    finish_arrangement(nbhd, circles, tangencies, region)
}

fn remap_tangencies(
    tangencies: &[(usize, usize, Pt)],
    index_map: &HashMap<usize, usize>,
) -> Vec<(usize, usize, Pt)> {
    tangencies
        .iter()
        .filter_map(|(ci, v, t)| index_map.get(ci).map(|&ni| (ni, *v, t.clone())))
        .collect()
}

fn place_with(
    nbhd: &Neighborhood,
    se: &StraightEmbedding,
    _radius_scale: &Rat,
    circles: Vec<ArrCircle>,
    tangencies: Vec<(usize, usize, Pt)>,
) -> Result<CircleArrangement, ArrangeError> {
    let crossings = circle_crossings(&circles);
    let (pieces, extra) = derived_sweep_pieces(&nbhd.region, &circles, &tangencies, &crossings);
    let sweep = run_sweep(&pieces, &extra).map_err(|e| ArrangeError::Sweep(e.to_string()))?;
    let probes = core_probes(se, nbhd);
    let mut core: Option<usize> = None;
    'outer: for cands in &probes {
        for p in cands {
            if let Some((g, i)) = locate_point(&sweep, &pieces, &p.x, &p.y) {
                core = Some(sweep.component_of(g, i));
                break 'outer;
            }
        }
    }
    let core = core.ok_or_else(|| ArrangeError::Infeasible("no core after prune".to_string()))?;
    let region = trace_region(&sweep, &pieces, &circles, core, &tangencies, &crossings)
        .map_err(ArrangeError::Infeasible)?;
    finish_arrangement(nbhd, circles, tangencies, region)
}

fn finish_arrangement(
    nbhd: &Neighborhood,
    circles: Vec<ArrCircle>,
    tangencies: Vec<(usize, usize, Pt)>,
    region: ArcRegion,
) -> Result<CircleArrangement, ArrangeError> {
    // label constraints: pairs whose intersection points can meet the closed
    // region (inside the neighborhood, not strictly inside a third disk)
    let mut constrained: Vec<(usize, usize)> = Vec::new();
    let margin = 1e-7;
    for (i, j, p) in circle_crossings(&circles) {
        let hidden = circles.iter().enumerate().any(|(k, c)| {
            k != i && k != j && c.orientation * c.geom.eval_sign_guarded(&p, margin) < 0
        });
        if hidden || polygon_contains_qpt(&nbhd.region, &p) != Some(true) {
            continue;
        }
        constrained.push((i, j));
    }
    constrained.sort();
    constrained.dedup();
    let (labels, l_prime) = assign_labels(&circles, &constrained);
    let sphere_dims = vec![1u32; l_prime];
    Ok(CircleArrangement {
        circles,
        labels,
        l_prime,
        sphere_dims,
        region,
        tangencies,
        neighborhood: nbhd.region.clone(),
    })
}

/// Exact verification of the region/circle hypotheses.
pub fn validate_theorem2(arr: &CircleArrangement) -> ValidationCertificate {
    let mut checks: Vec<CheckResult> = Vec::new();
    let mut push = |name: &str, pass: bool, witness: Option<String>| {
        checks.push(CheckResult {
            name: name.to_string(),
            pass,
            witness,
        });
    };

    // (1) every circle contributes boundary (hence meets the closed region)
    let mut contributes = vec![false; arr.circles.len()];
    for p in arr.region.all_pieces() {
        if let PieceGeom::Arc { circle, .. } = &p.geom {
            for (k, c) in arr.circles.iter().enumerate() {
                if c.geom.cx == circle.cx && c.geom.cy == circle.cy && c.geom.r2 == circle.r2 {
                    contributes[k] = true;
                }
            }
        }
    }
    let missing: Vec<usize> = contributes
        .iter()
        .enumerate()
        .filter(|(_, &b)| !b)
        .map(|(k, _)| k)
        .collect();
    push(
        "every-circle-meets-region",
        missing.is_empty(),
        if missing.is_empty() {
            None
        } else {
            Some(format!("circles without boundary arcs: {:?}", missing))
        },
    );

    // (2a) transversality of pairs meeting the region
    let mut transversal_ok = true;
    let mut transversal_witness = None;
    for i in 0..arr.circles.len() {
        for j in i + 1..arr.circles.len() {
            let a = &arr.circles[i].geom;
            let b = &arr.circles[j].geom;
            if a.tangent_to(b) {
                // exact tangency point
                let t_num = &a.r2 - QuadReal::sqrt_rat(&(&a.r2 * &b.r2)).rational_part().clone();
                let _ = t_num;
                let d2 = a.center_dist2(b);
                // t = r1/(r1+r2) = (r1^2 - sqrt(r1^2 r2^2)signed)/(r1^2 - r2^2)
                let t = if a.r2 == b.r2 {
                    QuadReal::from_rat(rat(1, 2))
                } else {
                    QuadReal::new(
                        a.r2.clone() / (&a.r2 - &b.r2),
                        -rat_i(1) / (&a.r2 - &b.r2),
                        &a.r2 * &b.r2,
                    )
                };
                let px = t.scale(&(&b.cx - &a.cx)).add_rat(&a.cx);
                let py = t.scale(&(&b.cy - &a.cy)).add_rat(&a.cy);
                let p = QPt::new(px, py);
                let in_region = polygon_contains_qpt(&arr.neighborhood, &p) == Some(true)
                    && arr
                        .circles
                        .iter()
                        .enumerate()
                        .all(|(k, c)| k == i || k == j || c.f_sign_qpt(&p) >= 0);
                let _ = d2;
                if in_region {
                    transversal_ok = false;
                    transversal_witness = Some(format!(
                        "circles {i} and {j} tangent at {}",
                        qpt_witness(&p)
                    ));
                }
            }
        }
    }
    push("pairwise-transversality", transversal_ok, transversal_witness);

    // (2b) no point of the closed region on three circles
    let mut triple_ok = true;
    let mut triple_witness = None;
    let margin = 1e-7;
    for (i, j, p) in circle_crossings(&arr.circles) {
        let mut through = 0usize;
        for (k, c) in arr.circles.iter().enumerate() {
            if k == i || k == j {
                continue;
            }
            if c.geom.eval_sign_guarded(&p, margin) == 0 {
                through += 1;
            }
        }
        if through > 0 {
            // candidate triple point; in the region iff inside the
            // neighborhood and not strictly inside any other disk
            let inside_other = arr.circles.iter().enumerate().any(|(k, c)| {
                k != i && k != j && c.orientation * c.geom.eval_sign_guarded(&p, margin) < 0
            });
            if !inside_other && polygon_contains_qpt(&arr.neighborhood, &p) == Some(true) {
                triple_ok = false;
                triple_witness = Some(format!(
                    "point {} lies on circles {i}, {j} and {} more",
                    qpt_witness(&p),
                    through
                ));
            }
        }
    }
    push("no-triple-points", triple_ok, triple_witness);

    // (3) labels: constrained pairs have distinct labels; all labels used
    let mut label_ok = true;
    let mut label_witness = None;
    for (i, j, p) in circle_crossings(&arr.circles) {
        let hidden = arr.circles.iter().enumerate().any(|(k, c)| {
            k != i && k != j && c.orientation * c.geom.eval_sign_guarded(&p, margin) < 0
        });
        if hidden || polygon_contains_qpt(&arr.neighborhood, &p) != Some(true) {
            continue;
        }
        if arr.labels[i] == arr.labels[j] {
            label_ok = false;
            label_witness = Some(format!(
                "intersecting circles {i}, {j} share label {} at {}",
                arr.labels[i],
                qpt_witness(&p)
            ));
        }
    }
    for l in 1..=arr.l_prime {
        if !arr.labels.iter().any(|&x| x == l) {
            label_ok = false;
            label_witness = Some(format!("label {l} unused"));
        }
    }
    push("label-map", label_ok, label_witness);

    // (4) defining polynomials have degree 2 by construction; record radii
    push("degree-two-defining-polynomials", true, None);

    // (5) sign check: f_j >= 0 at the region's corners and interior samples
    let mut sign_ok = true;
    let mut sign_witness = None;
    for p in arr.region.all_pieces() {
        for q in [p.lo_point(), p.hi_point()] {
            for (k, c) in arr.circles.iter().enumerate() {
                if c.f_sign_qpt(&q) < 0 {
                    sign_ok = false;
                    sign_witness =
                        Some(format!("f_{k} negative at corner {}", qpt_witness(&q)));
                }
            }
        }
    }
    if let Some((x0, x1, y0, y1)) = Some(arr.region.bounding_box()) {
        let steps = 12i64;
        for ix in 0..=steps {
            for iy in 0..=steps {
                let x = &x0 + (&x1 - &x0) * rat_i(ix) / rat_i(steps);
                let y = &y0 + (&y1 - &y0) * rat_i(iy) / rat_i(steps);
                if arr.region.contains(&x, &y) == Some(true) {
                    for (k, c) in arr.circles.iter().enumerate() {
                        if c.f_sign(&x, &y) < 0 {
                            sign_ok = false;
                            sign_witness = Some(format!(
                                "f_{k} negative at interior sample ({x}, {y})"
                            ));
                        }
                    }
                }
            }
        }
    }
    push("nonnegative-on-region", sign_ok, sign_witness);

    // region bounded by arcs only, inside the neighborhood
    let mut arcs_ok = true;
    for p in arr.region.all_pieces() {
        if matches!(p.geom, PieceGeom::Seg(_)) {
            arcs_ok = false;
        }
    }
    push("boundary-arcs-only", arcs_ok, None);
    let mut inside_ok = true;
    let mut inside_witness = None;
    for p in arr.region.all_pieces() {
        for q in [p.lo_point(), p.hi_point()] {
            if polygon_contains_qpt(&arr.neighborhood, &q) != Some(true) {
                inside_ok = false;
                inside_witness = Some(format!("corner {} not interior", qpt_witness(&q)));
            }
        }
    }
    push("region-inside-neighborhood", inside_ok, inside_witness);

    // monotone arcs except the designed tangencies: a circle's extreme point
    // may lie on the region boundary only if it is a designed tangency
    let mut mono_ok = true;
    let mut mono_witness = None;
    for p in arr.region.all_pieces() {
        if let PieceGeom::Arc { circle, lo, hi, .. } = &p.geom {
            for ext in [
                QPt::new(circle.min_x(), QuadReal::from_rat(circle.cy.clone())),
                QPt::new(circle.max_x(), QuadReal::from_rat(circle.cy.clone())),
            ] {
                let interior = lo.x < ext.x && ext.x < hi.x;
                if interior {
                    let designed = arr.tangencies.iter().any(|(_, _, t)| {
                        QPt::from_rat(t.x.clone(), t.y.clone()) == ext
                    });
                    if !designed {
                        mono_ok = false;
                        mono_witness = Some(format!(
                            "undesigned vertical tangent at {}",
                            qpt_witness(&ext)
                        ));
                    }
                }
            }
        }
    }
    push("arcs-monotone-except-tangencies", mono_ok, mono_witness);

    // designed tangency points must appear as arc endpoints of the region
    let mut tang_ok = true;
    let mut tang_witness = None;
    for (ci, v, t) in &arr.tangencies {
        let tq = QPt::from_rat(t.x.clone(), t.y.clone());
        let found = arr.region.all_pieces().any(|p| {
            p.lo_point() == tq || p.hi_point() == tq
        });
        if !found {
            tang_ok = false;
            tang_witness = Some(format!(
                "tangency of circle {ci} for vertex {v} missing from the boundary"
            ));
        }
    }
    push("tangencies-on-boundary", tang_ok, tang_witness);

    ValidationCertificate { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::parse_embedding;
    use crate::neighborhood::{build_neighborhood, default_delta};
    use crate::straighten::straighten;

    fn arrangement_for(src: &str) -> (CircleArrangement, StraightEmbedding) {
        let g = parse_embedding(src).unwrap();
        let se = straighten(&g).unwrap();
        let d = default_delta(&se).unwrap();
        let nbhd = build_neighborhood(&se, &d).unwrap();
        let arr = place_circles(&nbhd, &se, &rat_i(1)).unwrap();
        (arr, se)
    }

    #[test]
    fn tangency_algebra_example() {
        // degree-3 vertex at abscissa 1, radius 1/8: center abscissa 7/8 or 9/8
        let r = rat(1, 8);
        let left = CircleGeom::new(rat(7, 8), rat_i(0), &r * &r);
        assert_eq!(left.max_x(), QuadReal::from_rat(rat_i(1)));
        let right = CircleGeom::new(rat(9, 8), rat_i(0), &r * &r);
        assert_eq!(right.min_x(), QuadReal::from_rat(rat_i(1)));
    }

    #[test]
    fn greedy_label_examples() {
        let mk = |n: usize| -> Vec<ArrCircle> {
            (0..n)
                .map(|i| ArrCircle {
                    geom: CircleGeom::new(rat_i(10 * i as i64), rat_i(0), rat_i(1)),
                    role: CircleRole::Cover,
                    orientation: 1,
                    anchor_vertex: None,
                })
                .collect()
        };
        // no intersections
        let (l, lp) = assign_labels(&mk(3), &[]);
        assert_eq!(lp, 1);
        assert!(l.iter().all(|&x| x == 1));
        // one intersecting pair
        let (_, lp) = assign_labels(&mk(2), &[(0, 1)]);
        assert_eq!(lp, 2);
        // odd cycle: chromatic number 3
        let cycle = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
        let (l, lp) = assign_labels(&mk(5), &cycle);
        assert_eq!(lp, 3);
        for &(a, b) in &cycle {
            assert_ne!(l[a], l[b]);
        }
    }

    #[test]
    fn external_tangency_rejected() {
        // two circles tangent externally inside a big hexagonal region
        let nb = crate::region::hexagon_region(rat_i(-10), rat_i(10), rat_i(0), rat_i(8), rat_i(2));
        let circles = vec![
            ArrCircle {
                geom: CircleGeom::new(rat_i(0), rat_i(0), rat_i(1)),
                role: CircleRole::Cover,
                orientation: 1,
                anchor_vertex: None,
            },
            ArrCircle {
                geom: CircleGeom::new(rat_i(3), rat_i(0), rat_i(4)),
                role: CircleRole::Cover,
                orientation: 1,
                anchor_vertex: None,
            },
        ];
        let arr = CircleArrangement {
            circles,
            labels: vec![1, 2],
            l_prime: 2,
            sphere_dims: vec![1, 1],
            region: nb.clone(),
            tangencies: vec![],
            neighborhood: nb,
        };
        let cert = validate_theorem2(&arr);
        let trans = cert
            .checks
            .iter()
            .find(|c| c.name == "pairwise-transversality")
            .unwrap();
        assert!(!trans.pass);
        let w = trans.witness.as_ref().unwrap();
        assert!(w.contains("tangent at (1.0"), "witness: {w}");
    }

    #[test]
    fn single_edge_arrangement_valid() {
        let (arr, _se) = arrangement_for("vertex u 0 0\nvertex v 1 0\nedge e u v\n");
        assert!(arr.circles.len() >= 3);
        assert!(arr.l_prime >= 1);
        let cert = validate_theorem2(&arr);
        for c in cert.failures() {
            eprintln!("FAIL {}: {:?}", c.name, c.witness);
        }
        assert!(cert.valid());
        // the region is a single curve of arcs
        assert_eq!(arr.region.curves.len(), 1);
    }

    #[test]
    fn y_graph_arrangement_valid() {
        let (arr, _se) = arrangement_for(
            "vertex a 0 1\nvertex b 0 -1\nvertex c 1 0\nvertex d 2 0\n\
             edge ac a c\nedge bc b c\nedge cd c d\n",
        );
        let cert = validate_theorem2(&arr);
        for c in cert.failures() {
            eprintln!("FAIL {}: {:?}", c.name, c.witness);
        }
        assert!(cert.valid());
        // exactly one designed tangency (the left wedge at c), at abscissa 1
        assert_eq!(arr.tangencies.len(), 1);
        assert_eq!(arr.tangencies[0].2.x, rat_i(1));
        // the reeb graph of the region is homeomorphic to Y with branch at 1
        let rg = crate::reeb::reeb_graph_of_projection(&arr.region).unwrap();
        let y = crate::graph::MultiGraph::new(4, vec![(0, 2), (1, 2), (2, 3)]).unwrap();
        assert!(crate::graph::homeomorphic(&rg.graph, &y));
        let branches = rg.branch_vertices();
        assert_eq!(branches.len(), 1);
        assert_eq!(branches[0].1, QuadReal::from_rat(rat_i(1)));
    }
}
