//! Exact sweep over x-monotone boundary pieces.
//!
//! Events are the piece endpoint abscissae plus any externally supplied
//! crossing abscissae; between consecutive events the vertical order of
//! crossings is constant, so one exact slice per gap determines the interval
//! structure there. Interval lineage across an event is decided by overlap of
//! closed interval closures evaluated exactly at the event column.

use std::cmp::Ordering;
use std::fmt;

use crate::num::{rational_between, QuadReal, Rat};
use crate::region::{ColY, FeatureTag, Piece};

/// What a crossing of this piece toggles in the slice classifier.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Toggle {
    /// Region boundary parity.
    Region,
    /// Membership parity of one removed disk.
    Disk(usize),
}

#[derive(Clone, Debug)]
pub struct SweepPiece {
    pub piece: Piece,
    pub toggle: Toggle,
}

#[derive(Debug, Clone)]
pub enum SweepError {
    VerticalPiece(usize),
    DegenerateSpan(usize),
    OddSlice { gap: usize, detail: String },
    CoincidentCrossings { gap: usize, piece_a: usize, piece_b: usize },
    FieldMismatch(String),
}

impl fmt::Display for SweepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweepError::VerticalPiece(i) => write!(f, "piece {i} is vertical"),
            SweepError::DegenerateSpan(i) => write!(f, "piece {i} has an empty x-span"),
            SweepError::OddSlice { gap, detail } => {
                write!(f, "inconsistent slice parity in gap {gap}: {detail}")
            }
            SweepError::CoincidentCrossings { gap, piece_a, piece_b } => write!(
                f,
                "pieces {piece_a} and {piece_b} cross inside gap {gap} (missing event)"
            ),
            SweepError::FieldMismatch(m) => write!(f, "column field mismatch: {m}"),
        }
    }
}

impl std::error::Error for SweepError {}

/// Region interval in one gap slice.
#[derive(Clone, Debug)]
pub struct Interval {
    pub lo_piece: usize,
    pub hi_piece: usize,
    pub lo_y: QuadReal,
    pub hi_y: QuadReal,
    pub global_id: usize,
}

#[derive(Clone, Debug)]
pub struct GapSlice {
    pub sample: Rat,
    pub intervals: Vec<Interval>,
}

/// Fiber component at one event column.
#[derive(Clone, Debug)]
pub struct SweepNode {
    pub event: usize,
    /// interval indices in the gap left of the event
    pub left_members: Vec<usize>,
    /// interval indices in the gap right of the event
    pub right_members: Vec<usize>,
    pub tags: Vec<FeatureTag>,
}

pub struct SweepResult {
    pub events: Vec<QuadReal>,
    pub gaps: Vec<GapSlice>,
    pub nodes: Vec<SweepNode>,
    /// per (gap, interval): node index at the left and right ends
    pub end_nodes: Vec<Vec<(usize, usize)>>,
    uf_parent: Vec<usize>,
    pub interval_total: usize,
}

pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != c {
            let nxt = self.parent[c];
            self.parent[c] = r;
            c = nxt;
        }
        r
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

impl SweepResult {
    /// Component representative of a gap interval.
    pub fn component_of(&self, gap: usize, interval: usize) -> usize {
        let gid = self.gaps[gap].intervals[interval].global_id;
        // path-compressed find on an immutable structure: walk up
        let mut r = gid;
        while self.uf_parent[r] != r {
            r = self.uf_parent[r];
        }
        r
    }
}

/// Run the sweep. `extra_events` must contain every abscissa where two
/// pieces cross away from their endpoints (circle/circle and circle/segment
/// crossing columns in the derived model).
pub fn run_sweep(
    pieces: &[SweepPiece],
    extra_events: &[QuadReal],
) -> Result<SweepResult, SweepError> {
    for (i, sp) in pieces.iter().enumerate() {
        let lo = sp.piece.x_lo();
        let hi = sp.piece.x_hi();
        match lo.cmp(&hi) {
            Ordering::Less => {}
            Ordering::Equal => return Err(SweepError::VerticalPiece(i)),
            Ordering::Greater => return Err(SweepError::DegenerateSpan(i)),
        }
    }
    // event abscissae
    let mut events: Vec<QuadReal> = Vec::new();
    for sp in pieces {
        events.push(sp.piece.x_lo());
        events.push(sp.piece.x_hi());
    }
    events.extend(extra_events.iter().cloned());
    events.sort();
    events.dedup();
    if events.len() < 2 {
        return Err(SweepError::DegenerateSpan(0));
    }

    // active piece maintenance: pieces sorted by x_lo and by x_hi
    let mut by_lo: Vec<usize> = (0..pieces.len()).collect();
    by_lo.sort_by(|&a, &b| pieces[a].piece.x_lo().cmp(&pieces[b].piece.x_lo()));
    let mut by_hi: Vec<usize> = (0..pieces.len()).collect();
    by_hi.sort_by(|&a, &b| pieces[a].piece.x_hi().cmp(&pieces[b].piece.x_hi()));

    let disk_count = pieces
        .iter()
        .filter_map(|sp| match sp.toggle {
            Toggle::Disk(k) => Some(k + 1),
            Toggle::Region => None,
        })
        .max()
        .unwrap_or(0);

    let mut gaps: Vec<GapSlice> = Vec::new();
    let mut active: Vec<bool> = vec![false; pieces.len()];
    let mut ptr_lo = 0usize;
    let mut ptr_hi = 0usize;
    let mut next_global = 0usize;

    for g in 0..events.len() - 1 {
        let e_l = &events[g];
        let e_r = &events[g + 1];
        // activate pieces with x_lo <= e_l, deactivate with x_hi <= e_l
        while ptr_lo < by_lo.len() && pieces[by_lo[ptr_lo]].piece.x_lo().cmp(e_l) != Ordering::Greater
        {
            active[by_lo[ptr_lo]] = true;
            ptr_lo += 1;
        }
        while ptr_hi < by_hi.len() && pieces[by_hi[ptr_hi]].piece.x_hi().cmp(e_l) != Ordering::Greater
        {
            active[by_hi[ptr_hi]] = false;
            ptr_hi += 1;
        }
        // A sample can land exactly on a crossing column of two pieces that
        // never bound the region (such columns are dropped from the event
        // set); retry with a fresh sample before reporting coincidence.
        let mut sample = rational_between(e_l, e_r);
        let mut crossings: Vec<(QuadReal, usize)> = Vec::new();
        let mut attempt = 0usize;
        loop {
            crossings.clear();
            for (i, sp) in pieces.iter().enumerate() {
                if active[i] {
                    crossings.push((sp.piece.y_at_rat(&sample), i));
                }
            }
            // order by floating point, then verify adjacent pairs exactly
            crossings.sort_by(|a, b| {
                a.0.to_f64()
                    .partial_cmp(&b.0.to_f64())
                    .unwrap_or(std::cmp::Ordering::Equal)
            });
            let mut verified = true;
            let mut coincident = None;
            for w in crossings.windows(2) {
                match w[0].0.cmp(&w[1].0) {
                    Ordering::Less => {}
                    Ordering::Greater => {
                        verified = false;
                        break;
                    }
                    Ordering::Equal => {
                        coincident = Some((w[0].1, w[1].1));
                        break;
                    }
                }
            }
            if !verified {
                crossings.sort_by(|a, b| a.0.cmp(&b.0));
                coincident = None;
                for w in crossings.windows(2) {
                    if w[0].0 == w[1].0 {
                        coincident = Some((w[0].1, w[1].1));
                        break;
                    }
                }
            }
            match coincident {
                None => break,
                Some((pa, pb)) => {
                    attempt += 1;
                    if attempt > 4 {
                        return Err(SweepError::CoincidentCrossings {
                            gap: g,
                            piece_a: pa,
                            piece_b: pb,
                        });
                    }
                    sample = rational_between(e_l, &QuadReal::from_rat(sample));
                }
            }
        }
        // classify atoms
        let mut in_region = false;
        let mut disk_parity = vec![false; disk_count];
        let mut odd_disks = 0usize;
        let mut intervals: Vec<Interval> = Vec::new();
        let mut open: Option<(usize, QuadReal)> = None;
        for (y, pi) in &crossings {
            let was_inside = in_region && odd_disks == 0;
            match pieces[*pi].toggle {
                Toggle::Region => in_region = !in_region,
                Toggle::Disk(k) => {
                    if disk_parity[k] {
                        disk_parity[k] = false;
                        odd_disks -= 1;
                    } else {
                        disk_parity[k] = true;
                        odd_disks += 1;
                    }
                }
            }
            let now_inside = in_region && odd_disks == 0;
            if !was_inside && now_inside {
                open = Some((*pi, y.clone()));
            } else if was_inside && !now_inside {
                let (lp, ly) = open.take().expect("interval must be open");
                intervals.push(Interval {
                    lo_piece: lp,
                    hi_piece: *pi,
                    lo_y: ly,
                    hi_y: y.clone(),
                    global_id: next_global,
                });
                next_global += 1;
            }
        }
        if in_region || odd_disks != 0 || open.is_some() {
            return Err(SweepError::OddSlice {
                gap: g,
                detail: format!(
                    "region parity {} open-disk count {} at sample {}",
                    in_region, odd_disks, sample
                ),
            });
        }
        gaps.push(GapSlice { sample, intervals });
    }

    // event linking
    let mut uf = UnionFind::new(next_global);
    let mut nodes: Vec<SweepNode> = Vec::new();
    let mut end_nodes: Vec<Vec<(usize, usize)>> = gaps
        .iter()
        .map(|g| vec![(usize::MAX, usize::MAX); g.intervals.len()])
        .collect();

    // endpoint tags per event, collected up front
    let mut tagged_endpoints: Vec<Vec<(QuadReal, FeatureTag)>> = vec![Vec::new(); events.len()];
    for sp in pieces {
        for (x, pt, tag) in [
            (sp.piece.x_lo(), sp.piece.lo_point(), sp.piece.tag_lo.clone()),
            (sp.piece.x_hi(), sp.piece.hi_point(), sp.piece.tag_hi.clone()),
        ] {
            if tag == FeatureTag::None {
                continue;
            }
            if let Ok(k) = events.binary_search(&x) {
                tagged_endpoints[k].push((pt.y, tag));
            }
        }
    }

    for k in 0..events.len() {
        let e = &events[k];
        let d = e.radicand().clone();
        let left_gap = if k > 0 { Some(k - 1) } else { None };
        let right_gap = if k < gaps.len() { Some(k) } else { None };

        let closure = |gap: usize| -> Vec<(ColY, ColY)> {
            gaps[gap]
                .intervals
                .iter()
                .map(|iv| {
                    (
                        pieces[iv.lo_piece].piece.col_value(e, &d),
                        pieces[iv.hi_piece].piece.col_value(e, &d),
                    )
                })
                .collect()
        };
        let lc: Vec<(ColY, ColY)> = left_gap.map(&closure).unwrap_or_default();
        let rc: Vec<(ColY, ColY)> = right_gap.map(&closure).unwrap_or_default();
        let nl = lc.len();
        let nr = rc.len();
        if nl + nr == 0 {
            continue;
        }

        let mut local = UnionFind::new(nl + nr);
        let leq = |a: &ColY, b: &ColY| a.cmp_in_column(b, &d) != Ordering::Greater;
        // bipartite overlap links
        let mut i = 0usize;
        let mut j = 0usize;
        while i < nl && j < nr {
            let overlap = leq(&lc[i].0, &rc[j].1) && leq(&rc[j].0, &lc[i].1);
            if overlap {
                local.union(i, nl + j);
            }
            if leq(&lc[i].1, &rc[j].1) {
                i += 1;
            } else {
                j += 1;
            }
        }
        // same-side touching closures merge at the column as well
        for t in 1..nl {
            if lc[t - 1].1.cmp_in_column(&lc[t].0, &d) == Ordering::Equal {
                local.union(t - 1, t);
            }
        }
        for t in 1..nr {
            if rc[t - 1].1.cmp_in_column(&rc[t].0, &d) == Ordering::Equal {
                local.union(nl + t - 1, nl + t);
            }
        }

        // cluster -> node
        let mut cluster_node: Vec<Option<usize>> = vec![None; nl + nr];
        for t in 0..nl + nr {
            let root = local.find(t);
            let node_idx = match cluster_node[root] {
                Some(n) => n,
                None => {
                    nodes.push(SweepNode {
                        event: k,
                        left_members: Vec::new(),
                        right_members: Vec::new(),
                        tags: Vec::new(),
                    });
                    cluster_node[root] = Some(nodes.len() - 1);
                    nodes.len() - 1
                }
            };
            if t < nl {
                nodes[node_idx].left_members.push(t);
                let lg = left_gap.unwrap();
                end_nodes[lg][t].1 = node_idx;
            } else {
                nodes[node_idx].right_members.push(t - nl);
                let rg = right_gap.unwrap();
                end_nodes[rg][t - nl].0 = node_idx;
            }
        }
        // union global component ids within each cluster
        for t in 0..nl + nr {
            let root = local.find(t);
            if root == t {
                continue;
            }
            let gid_of = |s: usize| -> usize {
                if s < nl {
                    gaps[left_gap.unwrap()].intervals[s].global_id
                } else {
                    gaps[right_gap.unwrap()].intervals[s - nl].global_id
                }
            };
            uf.union(gid_of(t), gid_of(root));
        }

        // attach tags: an endpoint belongs to the node whose closure range
        // contains its ordinate
        for (y, tag) in &tagged_endpoints[k] {
            let ycol = ColY::Val(y.clone());
            let mut found = None;
            'outer: for t in 0..nl + nr {
                let (lo, hi) = if t < nl { &lc[t] } else { &rc[t - nl] };
                if leq(lo, &ycol) && leq(&ycol, hi) {
                    found = Some(local.find(t));
                    break 'outer;
                }
            }
            if let Some(root) = found {
                let node_idx = cluster_node[root].expect("cluster has node");
                if !nodes[node_idx].tags.contains(tag) {
                    nodes[node_idx].tags.push(tag.clone());
                }
            }
        }
    }

    Ok(SweepResult {
        events,
        gaps,
        nodes,
        end_nodes,
        uf_parent: uf.parent,
        interval_total: next_global,
    })
}

/// Locate a rational point: gap index and interval index if strictly inside.
pub fn locate_point(
    result: &SweepResult,
    pieces: &[SweepPiece],
    x: &Rat,
    y: &Rat,
) -> Option<(usize, usize)> {
    // find gap with e_g < x < e_{g+1}
    let mut lo = 0usize;
    let mut hi = result.events.len();
    while lo < hi {
        let mid = (lo + hi) / 2;
        if result.events[mid].cmp_rat(x) == Ordering::Less {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    // events[lo] >= x; gap index lo-1 when strictly between
    if lo == 0 || lo >= result.events.len() {
        return None;
    }
    if result.events[lo].cmp_rat(x) == Ordering::Equal {
        return None; // on an event column: caller should perturb
    }
    let gap = lo - 1;
    // rebuild the crossing order at x and walk the classifier
    let mut crossings: Vec<(QuadReal, usize)> = Vec::new();
    for (i, sp) in pieces.iter().enumerate() {
        let plo = sp.piece.x_lo();
        let phi = sp.piece.x_hi();
        if plo.cmp_rat(x) == Ordering::Less && phi.cmp_rat(x) == Ordering::Greater {
            crossings.push((sp.piece.y_at_rat(x), i));
        }
    }
    crossings.sort_by(|a, b| a.0.cmp(&b.0));
    let disk_count = pieces
        .iter()
        .filter_map(|sp| match sp.toggle {
            Toggle::Disk(k) => Some(k + 1),
            Toggle::Region => None,
        })
        .max()
        .unwrap_or(0);
    let mut in_region = false;
    let mut disk_parity = vec![false; disk_count];
    let mut odd = 0usize;
    let mut idx = 0usize;
    for (cy, pi) in &crossings {
        match cy.cmp_rat(y) {
            Ordering::Equal => return None, // on the boundary
            Ordering::Greater => {
                // first crossing above y: inside iff state says so
                return if in_region && odd == 0 {
                    Some((gap, idx))
                } else {
                    None
                };
            }
            Ordering::Less => {}
        }
        let was = in_region && odd == 0;
        match pieces[*pi].toggle {
            Toggle::Region => in_region = !in_region,
            Toggle::Disk(k) => {
                if disk_parity[k] {
                    disk_parity[k] = false;
                    odd -= 1;
                } else {
                    disk_parity[k] = true;
                    odd += 1;
                }
            }
        }
        let now = in_region && odd == 0;
        if was && !now {
            idx += 1;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::CircleGeom;
    use crate::num::rat_i;
    use crate::region::disk_region;

    fn disk_pieces(r2: i64) -> Vec<SweepPiece> {
        disk_region(CircleGeom::new(rat_i(0), rat_i(0), rat_i(r2)))
            .curves
            .into_iter()
            .flat_map(|c| c.pieces)
            .map(|piece| SweepPiece {
                piece,
                toggle: Toggle::Region,
            })
            .collect()
    }

    #[test]
    fn disk_sweep_structure() {
        let pieces = disk_pieces(4);
        let res = run_sweep(&pieces, &[]).unwrap();
        assert_eq!(res.events.len(), 2);
        assert_eq!(res.gaps.len(), 1);
        assert_eq!(res.gaps[0].intervals.len(), 1);
        assert_eq!(res.nodes.len(), 2); // birth at -2, death at 2
        assert_eq!(res.events[0], QuadReal::from_rat(rat_i(-2)));
        assert_eq!(res.events[1], QuadReal::from_rat(rat_i(2)));
    }

    #[test]
    fn locate_in_disk() {
        let pieces = disk_pieces(4);
        let res = run_sweep(&pieces, &[]).unwrap();
        assert!(locate_point(&res, &pieces, &rat_i(1), &rat_i(1)).is_some());
        assert!(locate_point(&res, &pieces, &rat_i(1), &rat_i(3)).is_none());
    }
}
