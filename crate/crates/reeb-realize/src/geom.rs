//! Exact planar primitives: rational points, segments, circles, and the
//! intersection/sign computations the sweep and validators are built on.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::num::{rat_i, sign_1rad, sign_rat, QuadReal, Rat};

/// Point with exact rational coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct Pt {
    pub x: Rat,
    pub y: Rat,
}

impl Pt {
    pub fn new(x: Rat, y: Rat) -> Self {
        Pt { x, y }
    }
}

impl fmt::Debug for Pt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Point whose coordinates live in a common real quadratic field Q(sqrt(d)).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QPt {
    pub x: QuadReal,
    pub y: QuadReal,
}

impl QPt {
    pub fn new(x: QuadReal, y: QuadReal) -> Self {
        QPt { x, y }
    }

    pub fn from_rat(x: Rat, y: Rat) -> Self {
        QPt {
            x: QuadReal::from_rat(x),
            y: QuadReal::from_rat(y),
        }
    }

    /// Radicand of the field both coordinates live in (0 when rational).
    pub fn field_radicand(&self) -> Rat {
        if !self.x.radicand().is_zero() {
            self.x.radicand().clone()
        } else {
            self.y.radicand().clone()
        }
    }
}

/// Element `a + b*sqrt(d)` of a fixed real quadratic field.
///
/// Used for exact evaluation of rational polynomials at quadratic points.
#[derive(Clone, Debug)]
pub struct Fe {
    pub a: Rat,
    pub b: Rat,
    pub d: Rat,
}

impl Fe {
    pub fn rat(a: Rat, d: &Rat) -> Self {
        Fe {
            a,
            b: Rat::zero(),
            d: d.clone(),
        }
    }

    pub fn zero(d: &Rat) -> Self {
        Fe::rat(Rat::zero(), d)
    }

    /// Convert a QuadReal into this field if its radicand is compatible
    /// (equal, zero, or differing by an exact rational square).
    pub fn from_quad(v: &QuadReal, d: &Rat) -> Option<Fe> {
        if v.radical_coeff().is_zero() {
            return Some(Fe::rat(v.rational_part().clone(), d));
        }
        if d.is_zero() {
            return None;
        }
        let ratio = v.radicand() / d;
        let s = crate::num::rat_sqrt_exact(&ratio)?;
        Some(Fe {
            a: v.rational_part().clone(),
            b: v.radical_coeff() * s,
            d: d.clone(),
        })
    }

    pub fn to_quad(&self) -> QuadReal {
        QuadReal::new(self.a.clone(), self.b.clone(), self.d.clone())
    }

    pub fn add(&self, o: &Fe) -> Fe {
        Fe {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
            d: self.pick_d(o),
        }
    }

    pub fn sub(&self, o: &Fe) -> Fe {
        Fe {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
            d: self.pick_d(o),
        }
    }

    pub fn mul(&self, o: &Fe) -> Fe {
        let d = self.pick_d(o);
        Fe {
            a: &self.a * &o.a + &self.b * &o.b * &d,
            b: &self.a * &o.b + &self.b * &o.a,
            d,
        }
    }

    pub fn scale(&self, r: &Rat) -> Fe {
        Fe {
            a: &self.a * r,
            b: &self.b * r,
            d: self.d.clone(),
        }
    }

    pub fn sign(&self) -> i32 {
        sign_1rad(&self.a, &self.b, &self.d)
    }

    fn pick_d(&self, o: &Fe) -> Rat {
        debug_assert!(
            self.b.is_zero() || o.b.is_zero() || self.d == o.d,
            "mixed quadratic fields"
        );
        if self.b.is_zero() {
            o.d.clone()
        } else {
            self.d.clone()
        }
    }
}

/// Sign of `a + b*sqrt(r)` where all of `a`, `b`, `r` are field elements
/// over a common Q(sqrt(d)) and `r >= 0`.
pub fn sign_1rad_fe(a: &Fe, b: &Fe, r: &Fe) -> i32 {
    let sr = r.sign();
    debug_assert!(sr >= 0, "negative radicand in field");
    if b.sign() == 0 || sr == 0 {
        return a.sign();
    }
    let sa = a.sign();
    let sb = b.sign();
    if sa == 0 {
        return sb;
    }
    if sa == sb {
        return sa;
    }
    let t = a.mul(a).sub(&b.mul(b).mul(r));
    sa * t.sign()
}

/// Sign of `a + b*sqrt(r1) + c*sqrt(r2)` over a common Q(sqrt(d)).
pub fn sign_2rad_fe(a: &Fe, b: &Fe, r1: &Fe, c: &Fe, r2: &Fe) -> i32 {
    if b.sign() == 0 || r1.sign() == 0 {
        return sign_1rad_fe(a, c, r2);
    }
    if c.sign() == 0 || r2.sign() == 0 {
        return sign_1rad_fe(a, b, r1);
    }
    let s1 = sign_1rad_fe(a, b, r1);
    let sc = c.sign();
    if s1 == 0 {
        return sc;
    }
    if s1 == sc {
        return s1;
    }
    let lhs = a.mul(a).add(&b.mul(b).mul(r1)).sub(&c.mul(c).mul(r2));
    let cross = a.mul(b).scale(&rat_i(2));
    let t = sign_1rad_fe(&lhs, &cross, r1);
    s1 * t
}

/// Segment with rational endpoints; never vertical in region boundaries.
#[derive(Clone, Debug)]
pub struct Seg {
    pub a: Pt,
    pub b: Pt,
}

impl Seg {
    pub fn new(a: Pt, b: Pt) -> Self {
        Seg { a, b }
    }

    pub fn is_vertical(&self) -> bool {
        self.a.x == self.b.x
    }

    pub fn is_horizontal(&self) -> bool {
        self.a.y == self.b.y
    }

    /// y-value at rational x (requires non-vertical and x within span).
    pub fn y_at(&self, x: &Rat) -> Rat {
        let t = (x - &self.a.x) / (&self.b.x - &self.a.x);
        &self.a.y + t * (&self.b.y - &self.a.y)
    }

    /// y-value at a quadratic x, as a field element over x's field.
    pub fn y_at_quad(&self, x: &QuadReal, d: &Rat) -> Fe {
        let dx = &self.b.x - &self.a.x;
        let dy = &self.b.y - &self.a.y;
        let slope = dy / dx;
        let xf = Fe::from_quad(x, d).expect("x not in column field");
        // y = ya + slope*(x - xa)
        Fe::rat(&self.a.y - &slope * &self.a.x, d).add(&xf.scale(&slope))
    }

    pub fn x_range(&self) -> (Rat, Rat) {
        if self.a.x <= self.b.x {
            (self.a.x.clone(), self.b.x.clone())
        } else {
            (self.b.x.clone(), self.a.x.clone())
        }
    }
}

/// Orientation of the triple (p, q, r): sign of the cross product.
pub fn orient(p: &Pt, q: &Pt, r: &Pt) -> i32 {
    let v = (&q.x - &p.x) * (&r.y - &p.y) - (&q.y - &p.y) * (&r.x - &p.x);
    sign_rat(&v)
}

/// Do closed segments share a point other than a common endpoint?
pub fn segments_cross_improperly(s1: &Seg, s2: &Seg) -> bool {
    let shared = |p: &Pt| (p == &s2.a) || (p == &s2.b);
    let endpoints_shared = (shared(&s1.a) as u8) + (shared(&s1.b) as u8);
    if endpoints_shared == 2 {
        return true; // identical segments overlap everywhere
    }

    let o1 = orient(&s1.a, &s1.b, &s2.a);
    let o2 = orient(&s1.a, &s1.b, &s2.b);
    let o3 = orient(&s2.a, &s2.b, &s1.a);
    let o4 = orient(&s2.a, &s2.b, &s1.b);

    if o1 != o2 && o3 != o4 && o1 * o2 < 0 && o3 * o4 < 0 {
        return true; // proper crossing
    }
    // collinear overlap or endpoint-in-interior cases
    let on_seg = |p: &Pt, s: &Seg| -> bool {
        if orient(&s.a, &s.b, p) != 0 {
            return false;
        }
        let (xl, xr) = s.x_range();
        let (yl, yr) = if s.a.y <= s.b.y {
            (s.a.y.clone(), s.b.y.clone())
        } else {
            (s.b.y.clone(), s.a.y.clone())
        };
        &xl <= &p.x && &p.x <= &xr && &yl <= &p.y && &p.y <= &yr
    };
    let mut touches = 0;
    for p in [&s2.a, &s2.b] {
        if on_seg(p, s1) {
            touches += 1;
        }
    }
    for p in [&s1.a, &s1.b] {
        if on_seg(p, s2) {
            touches += 1;
        }
    }
    // A shared endpoint lies on both segments, contributing two touches.
    touches > 2 * endpoints_shared as usize
}

impl QPt {
    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

/// Circle with rational center and rational squared radius.
#[derive(Clone, Debug)]
pub struct CircleGeom {
    pub cx: Rat,
    pub cy: Rat,
    pub r2: Rat,
}

impl CircleGeom {
    pub fn new(cx: Rat, cy: Rat, r2: Rat) -> Self {
        assert!(r2.is_positive(), "circle needs positive squared radius");
        CircleGeom { cx, cy, r2 }
    }

    /// `||p - c||^2 - r^2` at a rational point.
    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        let dx = x - &self.cx;
        let dy = y - &self.cy;
        &dx * &dx + &dy * &dy - &self.r2
    }

    /// Floating-point value of the defining polynomial at a quadratic point.
    pub fn eval_f64(&self, p: &QPt) -> f64 {
        use num_traits::ToPrimitive;
        let (x, y) = p.to_f64();
        let cx = self.cx.to_f64().unwrap_or(f64::NAN);
        let cy = self.cy.to_f64().unwrap_or(f64::NAN);
        let r2 = self.r2.to_f64().unwrap_or(f64::NAN);
        (x - cx) * (x - cx) + (y - cy) * (y - cy) - r2
    }

    /// Sign with a floating-point fast path; values within the margin are
    /// decided exactly.
    pub fn eval_sign_guarded(&self, p: &QPt, margin: f64) -> i32 {
        let v = self.eval_f64(p);
        if v.is_finite() && v.abs() > margin {
            return if v > 0.0 { 1 } else { -1 };
        }
        self.eval_sign_at(p)
    }

    /// Same, at a quadratic point; exact sign via field arithmetic.
    pub fn eval_sign_at(&self, p: &QPt) -> i32 {
        let d = p.field_radicand();
        let xf = Fe::from_quad(&p.x, &d).expect("x field");
        let yf = Fe::from_quad(&p.y, &d).expect("y field");
        let dx = xf.sub(&Fe::rat(self.cx.clone(), &d));
        let dy = yf.sub(&Fe::rat(self.cy.clone(), &d));
        let v = dx.mul(&dx).add(&dy.mul(&dy)).sub(&Fe::rat(self.r2.clone(), &d));
        v.sign()
    }

    pub fn min_x(&self) -> QuadReal {
        QuadReal::new(self.cx.clone(), -Rat::one(), self.r2.clone())
    }

    pub fn max_x(&self) -> QuadReal {
        QuadReal::new(self.cx.clone(), Rat::one(), self.r2.clone())
    }

    /// Squared distance between centers.
    pub fn center_dist2(&self, o: &CircleGeom) -> Rat {
        let dx = &o.cx - &self.cx;
        let dy = &o.cy - &self.cy;
        &dx * &dx + &dy * &dy
    }

    /// Strict transversal crossing: (r1 - r2)^2 < dist^2 < (r1 + r2)^2.
    pub fn crosses_transversally(&self, o: &CircleGeom) -> bool {
        let d2 = self.center_dist2(o);
        let s = &self.r2 + &o.r2;
        let prod = &self.r2 * &o.r2;
        // d2 - r1^2 - r2^2 + 2 sqrt(r1^2 r2^2) > 0  (left inequality)
        let left = sign_1rad(&(&d2 - &s), &rat_i(2), &prod) > 0;
        // d2 - r1^2 - r2^2 - 2 sqrt(...) < 0  (right inequality)
        let right = sign_1rad(&(&d2 - &s), &rat_i(-2), &prod) < 0;
        left && right
    }

    /// Exact tangency test (internal or external).
    pub fn tangent_to(&self, o: &CircleGeom) -> bool {
        let d2 = self.center_dist2(o);
        let s = &self.r2 + &o.r2;
        let prod = &self.r2 * &o.r2;
        sign_1rad(&(&d2 - &s), &rat_i(2), &prod) == 0
            || sign_1rad(&(&d2 - &s), &rat_i(-2), &prod) == 0
    }

    /// Intersection points of two transversally crossing circles.
    ///
    /// Both coordinates of each point lie in one quadratic field.
    pub fn intersect_circle(&self, o: &CircleGeom) -> Vec<QPt> {
        if !self.crosses_transversally(o) {
            return Vec::new();
        }
        // Radical line: 2(ox-cx) x + 2(oy-cy) y = (r1^2 - r2^2) + (|o|^2 - |c|^2)
        let a = rat_i(2) * (&o.cx - &self.cx);
        let b = rat_i(2) * (&o.cy - &self.cy);
        let e = (&self.r2 - &o.r2) + (&o.cx * &o.cx + &o.cy * &o.cy)
            - (&self.cx * &self.cx + &self.cy * &self.cy);
        if !b.is_zero() {
            // y = (e - a x) / b; substitute into this circle.
            let m = -(&a / &b);
            let k = &e / &b;
            // (x-cx)^2 + (m x + k - cy)^2 = r^2
            let t = &k - &self.cy;
            let qa = Rat::one() + &m * &m;
            let qb = rat_i(-2) * &self.cx + rat_i(2) * &m * &t;
            let qc = &self.cx * &self.cx + &t * &t - &self.r2;
            let mut out = Vec::new();
            for branch in [-1, 1] {
                let x = QuadReal::root_of_quadratic(&qa, &qb, &qc, branch);
                let y = x.scale(&m).add_rat(&k);
                out.push(QPt::new(x, y));
            }
            out
        } else {
            // vertical radical line x = e/a
            let x = &e / &a;
            let rem = &self.r2 - (&x - &self.cx) * (&x - &self.cx);
            let mut out = Vec::new();
            for branch in [-1, 1] {
                let y = QuadReal::new(
                    self.cy.clone(),
                    if branch > 0 { Rat::one() } else { -Rat::one() },
                    rem.clone(),
                );
                out.push(QPt::new(QuadReal::from_rat(x.clone()), y));
            }
            out
        }
    }

    /// Intersections with a segment, as points (both coordinates in one field).
    pub fn intersect_seg(&self, s: &Seg) -> Vec<QPt> {
        // p(t) = a + t v, t in [0,1]
        let vx = &s.b.x - &s.a.x;
        let vy = &s.b.y - &s.a.y;
        let wx = &s.a.x - &self.cx;
        let wy = &s.a.y - &self.cy;
        let qa = &vx * &vx + &vy * &vy;
        let qb = rat_i(2) * (&vx * &wx + &vy * &wy);
        let qc = &wx * &wx + &wy * &wy - &self.r2;
        let disc = &qb * &qb - rat_i(4) * &qa * &qc;
        if !disc.is_positive() {
            // tangent or missing; tangential touches are rejected elsewhere
            return Vec::new();
        }
        let mut out = Vec::new();
        for branch in [-1, 1] {
            let t = QuadReal::root_of_quadratic(&qa, &qb, &qc, branch);
            if t.cmp_rat(&Rat::zero()) != std::cmp::Ordering::Less
                && t.cmp_rat(&Rat::one()) != std::cmp::Ordering::Greater
            {
                let x = t.scale(&vx).add_rat(&s.a.x);
                let y = t.scale(&vy).add_rat(&s.a.y);
                out.push(QPt::new(x, y));
            }
        }
        out
    }

    /// Squared distance from the center to the closest point of a segment.
    pub fn center_seg_dist2(&self, s: &Seg) -> Rat {
        let vx = &s.b.x - &s.a.x;
        let vy = &s.b.y - &s.a.y;
        let wx = &self.cx - &s.a.x;
        let wy = &self.cy - &s.a.y;
        let len2 = &vx * &vx + &vy * &vy;
        let mut t = (&wx * &vx + &wy * &vy) / &len2;
        if t.is_negative() {
            t = Rat::zero();
        }
        if t > Rat::one() {
            t = Rat::one();
        }
        let px = &s.a.x + &t * &vx;
        let py = &s.a.y + &t * &vy;
        let dx = &self.cx - &px;
        let dy = &self.cy - &py;
        &dx * &dx + &dy * &dy
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    fn c(cx: i64, cy: i64, r2: i64) -> CircleGeom {
        CircleGeom::new(rat_i(cx), rat_i(cy), rat_i(r2))
    }

    #[test]
    fn circle_circle_transversal() {
        // unit circles centered at 0 and (1,0): cross at (1/2, ±sqrt(3)/2)
        let a = c(0, 0, 1);
        let b = c(1, 0, 1);
        assert!(a.crosses_transversally(&b));
        let pts = a.intersect_circle(&b);
        assert_eq!(pts.len(), 2);
        for p in &pts {
            assert_eq!(p.x.as_rat().unwrap(), &rat(1, 2));
            assert_eq!(a.eval_sign_at(p), 0);
            assert_eq!(b.eval_sign_at(p), 0);
        }
    }

    #[test]
    fn tangency_detected() {
        // externally tangent: centers 3 apart, radii 1 and 2
        let a = c(0, 0, 1);
        let b = c(3, 0, 4);
        assert!(!a.crosses_transversally(&b));
        assert!(a.tangent_to(&b));
        // internally tangent: centers 1 apart, radii 1 and 2
        let d = c(1, 0, 4);
        assert!(a.tangent_to(&d));
        assert!(!a.crosses_transversally(&d));
    }

    #[test]
    fn circle_seg_crossings() {
        let a = c(0, 0, 2);
        let s = Seg::new(Pt::new(rat_i(-3), rat_i(1)), Pt::new(rat_i(3), rat_i(1)));
        let pts = a.intersect_seg(&s);
        assert_eq!(pts.len(), 2);
        for p in &pts {
            assert_eq!(p.y.as_rat().unwrap(), &rat_i(1));
            assert_eq!(a.eval_sign_at(p), 0);
        }
        // x = ±1 exactly
        let xs: Vec<_> = pts.iter().map(|p| p.x.clone()).collect();
        assert!(xs.contains(&QuadReal::from_rat(rat_i(1))));
        assert!(xs.contains(&QuadReal::from_rat(rat_i(-1))));
    }

    #[test]
    fn segment_crossing_predicate() {
        let s1 = Seg::new(Pt::new(rat_i(0), rat_i(0)), Pt::new(rat_i(2), rat_i(2)));
        let s2 = Seg::new(Pt::new(rat_i(0), rat_i(2)), Pt::new(rat_i(2), rat_i(0)));
        assert!(segments_cross_improperly(&s1, &s2));
        let s3 = Seg::new(Pt::new(rat_i(2), rat_i(2)), Pt::new(rat_i(3), rat_i(0)));
        assert!(!segments_cross_improperly(&s1, &s3)); // shared endpoint only
        let s4 = Seg::new(Pt::new(rat_i(1), rat_i(1)), Pt::new(rat_i(5), rat_i(1)));
        assert!(segments_cross_improperly(&s1, &s4)); // endpoint interior to s1
    }

    #[test]
    fn field_eval_mixed() {
        // point on x^2+y^2=2 with coordinates (1,1): rational case
        let a = c(0, 0, 2);
        let p = QPt::from_rat(rat_i(1), rat_i(1));
        assert_eq!(a.eval_sign_at(&p), 0);
        // (sqrt(2), 0)
        let p2 = QPt::new(QuadReal::sqrt_rat(&rat_i(2)), QuadReal::from_rat(rat_i(0)));
        assert_eq!(a.eval_sign_at(&p2), 0);
        let p3 = QPt::new(QuadReal::sqrt_rat(&rat_i(3)), QuadReal::from_rat(rat_i(0)));
        assert_eq!(a.eval_sign_at(&p3), 1);
    }
}
