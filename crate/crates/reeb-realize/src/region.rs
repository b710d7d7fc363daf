//! Planar regions bounded by straight segments and circular arcs.
//!
//! Boundary curves are cyclic sequences of x-monotone pieces: segments with
//! rational endpoints and arcs of circles with rational center and squared
//! radius, endpoints given as exact quadratic points. No piece is vertical.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::geom::{CircleGeom, Fe, Pt, QPt, Seg};
use crate::num::{QuadReal, Rat};

/// Construction features carried by piece endpoints; the sweep copies them
/// onto Reeb vertices.
#[derive(Clone, Debug, PartialEq)]
pub enum FeatureTag {
    None,
    /// Wedge turning vertex of a graph vertex (merge side if `left_side`).
    Pinch { vertex: usize, left_side: bool },
    /// Cap tip turning vertex of a leaf-like box side.
    CapTip { vertex: usize },
    /// Designed tangency of a circle with the vertical line at a graph vertex.
    Tangency { circle: usize, vertex: usize },
    /// Plain boundary corner.
    Corner { id: usize },
}

/// One x-monotone boundary piece.
#[derive(Clone, Debug)]
pub enum PieceGeom {
    /// Straight segment, stored left-to-right (a.x < b.x), never vertical.
    Seg(Seg),
    /// x-monotone arc of the `upper` (y >= cy) or lower circle half,
    /// spanning `x_lo..x_hi` with explicit endpoints.
    Arc {
        circle: CircleGeom,
        upper: bool,
        lo: QPt,
        hi: QPt,
    },
}

#[derive(Clone, Debug)]
pub struct Piece {
    pub geom: PieceGeom,
    /// Feature at the left (lo) endpoint.
    pub tag_lo: FeatureTag,
    /// Feature at the right (hi) endpoint.
    pub tag_hi: FeatureTag,
}

impl Piece {
    pub fn seg(a: Pt, b: Pt) -> Self {
        assert!(a.x != b.x, "vertical segment piece");
        let (a, b) = if a.x < b.x { (a, b) } else { (b, a) };
        Piece {
            geom: PieceGeom::Seg(Seg::new(a, b)),
            tag_lo: FeatureTag::None,
            tag_hi: FeatureTag::None,
        }
    }

    pub fn arc(circle: CircleGeom, upper: bool, lo: QPt, hi: QPt) -> Self {
        assert!(lo.x < hi.x, "arc must be stored left-to-right");
        Piece {
            geom: PieceGeom::Arc {
                circle,
                upper,
                lo,
                hi,
            },
            tag_lo: FeatureTag::None,
            tag_hi: FeatureTag::None,
        }
    }

    pub fn with_tags(mut self, lo: FeatureTag, hi: FeatureTag) -> Self {
        self.tag_lo = lo;
        self.tag_hi = hi;
        self
    }

    pub fn x_lo(&self) -> QuadReal {
        match &self.geom {
            PieceGeom::Seg(s) => QuadReal::from_rat(s.a.x.clone()),
            PieceGeom::Arc { lo, .. } => lo.x.clone(),
        }
    }

    pub fn x_hi(&self) -> QuadReal {
        match &self.geom {
            PieceGeom::Seg(s) => QuadReal::from_rat(s.b.x.clone()),
            PieceGeom::Arc { hi, .. } => hi.x.clone(),
        }
    }

    pub fn lo_point(&self) -> QPt {
        match &self.geom {
            PieceGeom::Seg(s) => QPt::from_rat(s.a.x.clone(), s.a.y.clone()),
            PieceGeom::Arc { lo, .. } => lo.clone(),
        }
    }

    pub fn hi_point(&self) -> QPt {
        match &self.geom {
            PieceGeom::Seg(s) => QPt::from_rat(s.b.x.clone(), s.b.y.clone()),
            PieceGeom::Arc { hi, .. } => hi.clone(),
        }
    }

    pub fn is_horizontal(&self) -> bool {
        matches!(&self.geom, PieceGeom::Seg(s) if s.is_horizontal())
    }

    /// Crossing ordinate at a rational abscissa strictly inside the span.
    pub fn y_at_rat(&self, x: &Rat) -> QuadReal {
        match &self.geom {
            PieceGeom::Seg(s) => QuadReal::from_rat(s.y_at(x)),
            PieceGeom::Arc { circle, upper, .. } => {
                let dx = x - &circle.cx;
                let rem = &circle.r2 - &dx * &dx;
                debug_assert!(!rem.is_negative(), "abscissa outside arc circle");
                let q = if *upper { crate::num::rat_i(1) } else { crate::num::rat_i(-1) };
                QuadReal::new(circle.cy.clone(), q, rem)
            }
        }
    }

    /// Value at a column abscissa `e` (possibly quadratic, with field
    /// radicand `d`); exact but possibly non-materializable.
    pub fn col_value(&self, e: &QuadReal, d: &Rat) -> ColY {
        // Prefer stored endpoints: exact and already materialized.
        if &self.x_lo() == e {
            return ColY::Val(self.lo_point().y);
        }
        if &self.x_hi() == e {
            return ColY::Val(self.hi_point().y);
        }
        match &self.geom {
            PieceGeom::Seg(s) => ColY::Val(s.y_at_quad(e, d).to_quad()),
            PieceGeom::Arc { circle, upper, .. } => {
                let ef = Fe::from_quad(e, d).expect("column field mismatch");
                let dx = ef.sub(&Fe::rat(circle.cx.clone(), d));
                let rad = Fe::rat(circle.r2.clone(), d).sub(&dx.mul(&dx));
                ColY::ArcRoot {
                    cy: circle.cy.clone(),
                    sign: if *upper { 1 } else { -1 },
                    rad,
                }
            }
        }
    }
}

/// Exact ordinate of a boundary crossing at one column, possibly represented
/// as `cy + s*sqrt(rad)` with `rad` a field element (nested radical avoided).
#[derive(Clone, Debug)]
pub enum ColY {
    Val(QuadReal),
    ArcRoot { cy: Rat, sign: i32, rad: Fe },
}

impl ColY {
    /// Exact comparison within one column whose field radicand is `d`.
    ///
    /// A `Val` whose own radicand differs from `d` can only occur at a
    /// rational column (equal abscissae from incompatible fields are
    /// rational); there the arc radicands are rational and the comparison
    /// drops to the two-radical sign over the rationals.
    pub fn cmp_in_column(&self, other: &ColY, d: &Rat) -> std::cmp::Ordering {
        use crate::geom::{sign_1rad_fe, sign_2rad_fe};
        use crate::num::sign_2rad;
        let s = match (self, other) {
            (ColY::Val(a), ColY::Val(b)) => return a.cmp(b),
            (ColY::Val(a), ColY::ArcRoot { cy, sign, rad }) => {
                match Fe::from_quad(a, d) {
                    Some(af) => {
                        // a - cy - sign*sqrt(rad)
                        let diff = af.sub(&Fe::rat(cy.clone(), d));
                        let coef = Fe::rat(crate::num::rat_i(-(*sign as i64)), d);
                        sign_1rad_fe(&diff, &coef, rad)
                    }
                    None => {
                        assert!(rad.b.is_zero(), "mixed fields at an irrational column");
                        sign_2rad(
                            &(a.rational_part() - cy),
                            a.radical_coeff(),
                            a.radicand(),
                            &crate::num::rat_i(-(*sign as i64)),
                            &rad.a,
                        )
                    }
                }
            }
            (ColY::ArcRoot { .. }, ColY::Val(_)) => {
                return other.cmp_in_column(self, d).reverse();
            }
            (
                ColY::ArcRoot { cy: c1, sign: s1, rad: r1 },
                ColY::ArcRoot { cy: c2, sign: s2, rad: r2 },
            ) => {
                let a = Fe::rat(c1 - c2, d);
                let b = Fe::rat(crate::num::rat_i(*s1 as i64), d);
                let c = Fe::rat(crate::num::rat_i(-(*s2 as i64)), d);
                sign_2rad_fe(&a, &b, r1, &c, r2)
            }
        };
        s.cmp(&0)
    }
}

/// A closed boundary curve: consecutive pieces share endpoints; the last
/// piece closes back to the first.
#[derive(Clone, Debug)]
pub struct Curve {
    pub pieces: Vec<Piece>,
}

/// Region bounded by disjoint simple closed curves; membership is by
/// crossing parity, so holes are curves contained in the outer curve.
#[derive(Clone, Debug)]
pub struct ArcRegion {
    pub curves: Vec<Curve>,
}

#[derive(Debug, Clone)]
pub enum RegionError {
    VerticalPiece(String),
    OpenCurve(String),
    NotXMonotone(String),
}

impl fmt::Display for RegionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionError::VerticalPiece(m) => write!(f, "vertical boundary piece: {m}"),
            RegionError::OpenCurve(m) => write!(f, "boundary curve not closed: {m}"),
            RegionError::NotXMonotone(m) => write!(f, "piece not x-monotone: {m}"),
        }
    }
}

impl std::error::Error for RegionError {}

impl ArcRegion {
    pub fn new(curves: Vec<Curve>) -> Result<Self, RegionError> {
        let region = ArcRegion { curves };
        region.check_closed()?;
        Ok(region)
    }

    pub fn all_pieces(&self) -> impl Iterator<Item = &Piece> {
        self.curves.iter().flat_map(|c| c.pieces.iter())
    }

    pub fn piece_count(&self) -> usize {
        self.curves.iter().map(|c| c.pieces.len()).sum()
    }

    fn check_closed(&self) -> Result<(), RegionError> {
        for (ci, curve) in self.curves.iter().enumerate() {
            if curve.pieces.is_empty() {
                return Err(RegionError::OpenCurve(format!("curve {ci} empty")));
            }
            // every endpoint must appear exactly twice among the curve's
            // piece endpoints (pieces are stored left-to-right, so we match
            // as an undirected 2-regular endpoint graph)
            let mut pts: Vec<QPt> = Vec::new();
            for p in &curve.pieces {
                pts.push(p.lo_point());
                pts.push(p.hi_point());
            }
            let mut used = vec![false; pts.len()];
            for i in 0..pts.len() {
                if used[i] {
                    continue;
                }
                let mut mate = None;
                for j in i + 1..pts.len() {
                    if !used[j] && pts[i] == pts[j] {
                        mate = Some(j);
                        break;
                    }
                }
                match mate {
                    Some(j) => {
                        used[i] = true;
                        used[j] = true;
                    }
                    None => {
                        return Err(RegionError::OpenCurve(format!(
                            "curve {ci} has an unmatched endpoint {:?}",
                            pts[i]
                        )))
                    }
                }
            }
        }
        Ok(())
    }

    /// Exact membership of a rational point (parity of crossings above).
    /// Returns None when the point lies on the boundary.
    pub fn contains(&self, x: &Rat, y: &Rat) -> Option<bool> {
        let qx = QuadReal::from_rat(x.clone());
        let mut parity = false;
        for p in self.all_pieces() {
            let lo = p.x_lo();
            let hi = p.x_hi();
            // half-open span [lo, hi) so shared endpoints count once
            if !(lo.cmp_rat(x) != std::cmp::Ordering::Greater
                && hi.cmp_rat(x) == std::cmp::Ordering::Greater)
            {
                // handle point exactly at a right endpoint lying on the piece
                if hi.cmp_rat(x) == std::cmp::Ordering::Equal {
                    let py = p.hi_point().y;
                    if py.cmp_rat(y) == std::cmp::Ordering::Equal {
                        return None;
                    }
                }
                continue;
            }
            let _ = &qx;
            let cy = p.y_at_rat(x);
            match cy.cmp_rat(y) {
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Greater => parity = !parity,
                std::cmp::Ordering::Less => {}
            }
        }
        Some(parity)
    }

    /// Bounding box of all piece endpoints plus arc extents (rational).
    pub fn bounding_box(&self) -> (Rat, Rat, Rat, Rat) {
        let mut xs: Vec<Rat> = Vec::new();
        let mut ys: Vec<Rat> = Vec::new();
        for p in self.all_pieces() {
            match &p.geom {
                PieceGeom::Seg(s) => {
                    xs.push(s.a.x.clone());
                    xs.push(s.b.x.clone());
                    ys.push(s.a.y.clone());
                    ys.push(s.b.y.clone());
                }
                PieceGeom::Arc { circle, .. } => {
                    // conservative: full circle box
                    let r_ceil = {
                        // smallest rational >= sqrt(r2): use r2+1 bound, cheap
                        use num_traits::One;
                        (&circle.r2 + Rat::one()) / crate::num::rat_i(2) + Rat::one()
                    };
                    xs.push(&circle.cx - &r_ceil);
                    xs.push(&circle.cx + &r_ceil);
                    ys.push(&circle.cy - &r_ceil);
                    ys.push(&circle.cy + &r_ceil);
                }
            }
        }
        let min = |v: &Vec<Rat>| v.iter().cloned().min().unwrap();
        let max = |v: &Vec<Rat>| v.iter().cloned().max().unwrap();
        (min(&xs), max(&xs), min(&ys), max(&ys))
    }
}

/// Region for a full disk: one curve made of the two circle halves.
pub fn disk_region(circle: CircleGeom) -> ArcRegion {
    let lo = QPt::new(circle.min_x(), QuadReal::from_rat(circle.cy.clone()));
    let hi = QPt::new(circle.max_x(), QuadReal::from_rat(circle.cy.clone()));
    let upper = Piece::arc(circle.clone(), true, lo.clone(), hi.clone());
    let lower = Piece::arc(circle, false, lo, hi);
    ArcRegion::new(vec![Curve {
        pieces: vec![upper, lower],
    }])
    .expect("disk region is closed")
}

/// Disk with disjoint circular holes (holes must be strictly inside and
/// pairwise disjoint; the caller guarantees this).
pub fn disk_with_holes(outer: CircleGeom, holes: Vec<CircleGeom>) -> ArcRegion {
    let mut curves = disk_region(outer).curves;
    for h in holes {
        curves.extend(disk_region(h).curves);
    }
    ArcRegion::new(curves).expect("hole curves are closed")
}

/// Hexagonal strip: a rectangle with triangular caps (vertical sides are not
/// allowed, so axis-aligned rectangles are modeled this way).
pub fn hexagon_region(x0: Rat, x1: Rat, ymid: Rat, half_h: Rat, cap_w: Rat) -> ArcRegion {
    let top = &ymid + &half_h;
    let bot = &ymid - &half_h;
    let l = Pt::new(&x0 - &cap_w, ymid.clone());
    let r = Pt::new(&x1 + &cap_w, ymid.clone());
    let tl = Pt::new(x0.clone(), top.clone());
    let tr = Pt::new(x1.clone(), top.clone());
    let bl = Pt::new(x0.clone(), bot.clone());
    let br = Pt::new(x1.clone(), bot.clone());
    let pieces = vec![
        Piece::seg(l.clone(), tl.clone()),
        Piece::seg(tl, tr.clone()),
        Piece::seg(tr, r.clone()),
        Piece::seg(r, br.clone()),
        Piece::seg(br, bl.clone()),
        Piece::seg(bl, l),
    ];
    ArcRegion::new(vec![Curve { pieces }]).expect("hexagon closes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{rat, rat_i};

    #[test]
    fn disk_region_membership() {
        let r = disk_region(CircleGeom::new(rat_i(0), rat_i(0), rat_i(4)));
        assert_eq!(r.contains(&rat_i(0), &rat_i(0)), Some(true));
        assert_eq!(r.contains(&rat_i(3), &rat_i(0)), Some(false));
        assert_eq!(r.contains(&rat_i(0), &rat_i(2)), None); // on boundary
        assert_eq!(r.contains(&rat_i(1), &rat_i(1)), Some(true));
    }

    #[test]
    fn annulus_membership() {
        let r = disk_with_holes(
            CircleGeom::new(rat_i(0), rat_i(0), rat_i(4)),
            vec![CircleGeom::new(rat_i(0), rat_i(0), rat_i(1))],
        );
        assert_eq!(r.contains(&rat_i(0), &rat_i(0)), Some(false));
        assert_eq!(r.contains(&rat(3, 2), &rat_i(0)), Some(true));
        assert_eq!(r.contains(&rat_i(3), &rat_i(0)), Some(false));
    }

    #[test]
    fn hexagon_membership() {
        let r = hexagon_region(rat_i(0), rat_i(2), rat_i(0), rat_i(1), rat(1, 2));
        assert_eq!(r.contains(&rat_i(1), &rat_i(0)), Some(true));
        assert_eq!(r.contains(&rat_i(1), &rat_i(2)), Some(false));
        assert_eq!(r.contains(&rat(-1, 4), &rat_i(0)), Some(true));
    }

    #[test]
    fn col_values_order() {
        let c = CircleGeom::new(rat_i(0), rat_i(0), rat_i(4));
        let reg = disk_region(c);
        let upper = &reg.curves[0].pieces[0];
        let lower = &reg.curves[0].pieces[1];
        // at column sqrt(2): upper y = sqrt(2), lower = -sqrt(2)
        let e = QuadReal::sqrt_rat(&rat_i(2));
        let d = rat_i(2);
        let u = upper.col_value(&e, &d);
        let l = lower.col_value(&e, &d);
        assert_eq!(l.cmp_in_column(&u, &d), std::cmp::Ordering::Less);
        // compare against zero (a Val)
        let zero = ColY::Val(QuadReal::from_rat(rat_i(0)));
        assert_eq!(zero.cmp_in_column(&u, &d), std::cmp::Ordering::Less);
        assert_eq!(zero.cmp_in_column(&l, &d), std::cmp::Ordering::Greater);
    }
}
