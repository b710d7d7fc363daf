//! Exact scalar arithmetic: arbitrary-precision rationals and real roots of
//! rational quadratics.
//!
//! Every coordinate that appears in the pipeline is either rational or of the
//! form `p + q*sqrt(d)` with `p`, `q`, `d` rational (circle/circle and
//! circle/line intersections are degree 2 over the rationals). All comparisons
//! are exact sign computations; no floating point is used for decisions.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational n/d.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn sign_rat(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Parse an integer, `p/q` fraction, or finite decimal into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty number".to_string());
    }
    if let Some(idx) = s.find('/') {
        let num: BigInt = s[..idx]
            .parse()
            .map_err(|_| format!("bad numerator in `{s}`"))?;
        let den: BigInt = s[idx + 1..]
            .parse()
            .map_err(|_| format!("bad denominator in `{s}`"))?;
        if den.is_zero() {
            return Err(format!("zero denominator in `{s}`"));
        }
        return Ok(Rat::new(num, den));
    }
    if let Some(idx) = s.find('.') {
        let (int_part, frac_part) = (&s[..idx], &s[idx + 1..]);
        if frac_part.is_empty() || !frac_part.chars().all(|c| c.is_ascii_digit()) {
            return Err(format!("bad decimal `{s}`"));
        }
        let neg = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        let int_val: BigInt = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            int_digits.parse().map_err(|_| format!("bad decimal `{s}`"))?
        };
        let frac_val: BigInt = frac_part.parse().map_err(|_| format!("bad decimal `{s}`"))?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let mut v = Rat::new(int_val * &scale + frac_val, scale);
        if neg {
            v = -v;
        }
        return Ok(v);
    }
    let n: BigInt = s.parse().map_err(|_| format!("bad integer `{s}`"))?;
    Ok(Rat::from_integer(n))
}

/// Floor of the exact square root if `n` is a perfect square.
fn perfect_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    if &(&s * &s) == n {
        Some(s)
    } else {
        None
    }
}

/// Exact rational square root, if one exists.
pub fn rat_sqrt_exact(r: &Rat) -> Option<Rat> {
    let sn = perfect_sqrt(r.numer())?;
    let sd = perfect_sqrt(r.denom())?;
    Some(Rat::new(sn, sd))
}

/// Sign of `a + b*sqrt(d)` for rationals with `d >= 0`.
pub fn sign_1rad(a: &Rat, b: &Rat, d: &Rat) -> i32 {
    debug_assert!(!d.is_negative());
    if b.is_zero() || d.is_zero() {
        return sign_rat(a);
    }
    let sa = sign_rat(a);
    let sb = sign_rat(b);
    if sa == 0 {
        return sb;
    }
    if sa == sb {
        return sa;
    }
    let t = a * a - b * b * d;
    sa * sign_rat(&t)
}

/// Sign of `a + b*sqrt(d1) + c*sqrt(d2)` for rationals with `d1, d2 >= 0`.
pub fn sign_2rad(a: &Rat, b: &Rat, d1: &Rat, c: &Rat, d2: &Rat) -> i32 {
    if b.is_zero() || d1.is_zero() {
        return sign_1rad(a, c, d2);
    }
    if c.is_zero() || d2.is_zero() {
        return sign_1rad(a, b, d1);
    }
    let s1 = sign_1rad(a, b, d1);
    let sc = sign_rat(c);
    if s1 == 0 {
        return sc;
    }
    if s1 == sc {
        return s1;
    }
    // |a + b*sqrt(d1)| vs |c|*sqrt(d2): square the binomial side.
    let lhs = a * a + b * b * d1 - c * c * d2;
    let cross = rat_i(2) * a * b;
    let t = sign_1rad(&lhs, &cross, d1);
    s1 * t
}

/// A real number of the form `p + q*sqrt(d)` with `p`, `q`, `d` rational.
///
/// Normalized so that `q == 0 <=> d == 0`, `d >= 0`, and `d` is never an
/// exact rational square (those fold into `p`). Ordering and equality are
/// exact.
#[derive(Clone)]
pub struct QuadReal {
    p: Rat,
    q: Rat,
    d: Rat,
}

impl QuadReal {
    pub fn from_rat(p: Rat) -> Self {
        QuadReal {
            p,
            q: Rat::zero(),
            d: Rat::zero(),
        }
    }

    /// `p + q*sqrt(d)`, normalizing rational cases.
    pub fn new(p: Rat, q: Rat, d: Rat) -> Self {
        assert!(!d.is_negative(), "negative radicand");
        if q.is_zero() || d.is_zero() {
            return QuadReal::from_rat(p);
        }
        if let Some(s) = rat_sqrt_exact(&d) {
            return QuadReal::from_rat(p + q * s);
        }
        QuadReal { p, q, d }
    }

    /// Exact square root of a nonnegative rational.
    pub fn sqrt_rat(r: &Rat) -> Self {
        assert!(!r.is_negative(), "sqrt of negative rational");
        QuadReal::new(Rat::zero(), Rat::one(), r.clone())
    }

    /// The root `(-b + branch*sqrt(b^2 - 4ac)) / (2a)` of `a x^2 + b x + c`.
    ///
    /// `branch` is `+1` or `-1`; the discriminant must be nonnegative.
    pub fn root_of_quadratic(a: &Rat, b: &Rat, c: &Rat, branch: i32) -> Self {
        assert!(!a.is_zero(), "not a quadratic");
        let disc = b * b - rat_i(4) * a * c;
        assert!(!disc.is_negative(), "negative discriminant");
        let two_a = rat_i(2) * a;
        let q = Rat::new(BigInt::from(branch), BigInt::one()) / &two_a;
        QuadReal::new(-b / &two_a, q, disc)
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        if self.is_rational() {
            Some(&self.p)
        } else {
            None
        }
    }

    pub fn rational_part(&self) -> &Rat {
        &self.p
    }

    pub fn radical_coeff(&self) -> &Rat {
        &self.q
    }

    pub fn radicand(&self) -> &Rat {
        &self.d
    }

    pub fn sign(&self) -> i32 {
        sign_1rad(&self.p, &self.q, &self.d)
    }

    pub fn neg(&self) -> Self {
        QuadReal {
            p: -self.p.clone(),
            q: -self.q.clone(),
            d: self.d.clone(),
        }
    }

    pub fn add_rat(&self, r: &Rat) -> Self {
        QuadReal {
            p: &self.p + r,
            q: self.q.clone(),
            d: self.d.clone(),
        }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        QuadReal::new(&self.p * r, &self.q * r, self.d.clone())
    }

    /// Exact comparison against a rational.
    pub fn cmp_rat(&self, r: &Rat) -> Ordering {
        let s = sign_1rad(&(&self.p - r), &self.q, &self.d);
        s.cmp(&0)
    }

    pub fn to_f64(&self) -> f64 {
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        if self.q.is_zero() {
            return p;
        }
        p + self.q.to_f64().unwrap_or(f64::NAN) * self.d.to_f64().unwrap_or(f64::NAN).sqrt()
    }

    /// `floor(self * 10^k)` computed exactly.
    pub fn floor_scaled(&self, k: u32) -> BigInt {
        let scale = BigInt::from(10u32).pow(k);
        let ps = &self.p * Rat::from_integer(scale.clone());
        if self.q.is_zero() {
            return ps.floor().to_integer();
        }
        // self*10^k = ps + sgn * sqrt(w), w = q^2 * d * 10^(2k)
        let w = &self.q * &self.q * &self.d * Rat::from_integer(&scale * &scale);
        let sgn = sign_rat(&self.q);
        // Refine sqrt(w) by integer square roots at growing precision until the
        // floor is unambiguous.
        let mut prec = BigInt::one();
        loop {
            // sqrt(w) in [s/(denw*prec), (s+1)/(denw*prec))
            let scaled = &w * Rat::from_integer(&prec * &prec);
            let num_floor = (scaled.numer() / scaled.denom()).sqrt();
            let denom = prec.clone();
            // bounds for w as rationals: lo = num_floor/prec relative to sqrt(scaled)/prec
            let lo = Rat::new(num_floor.clone(), denom.clone());
            let hi = Rat::new(&num_floor + 1, denom.clone());
            let (xlo, xhi) = if sgn > 0 {
                (&ps + &lo, &ps + &hi)
            } else {
                (&ps - &hi, &ps - &lo)
            };
            let flo = xlo.floor().to_integer();
            let fhi = xhi.floor().to_integer();
            if flo == fhi {
                return flo;
            }
            prec *= BigInt::from(16u32);
        }
    }

    /// Decimal rendering with `digits` places after the point.
    pub fn to_decimal(&self, digits: u32) -> String {
        let neg = self.sign() < 0;
        let v = if neg { self.neg() } else { self.clone() };
        let scaled = v.floor_scaled(digits);
        let ten = BigInt::from(10u32).pow(digits);
        let int = &scaled / &ten;
        let frac = &scaled % &ten;
        let frac_str = format!("{:0>width$}", frac.to_string(), width = digits as usize);
        let s = format!("{int}.{frac_str}");
        if neg {
            format!("-{s}")
        } else {
            s
        }
    }
}

impl PartialEq for QuadReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for QuadReal {}

impl PartialOrd for QuadReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadReal {
    fn cmp(&self, other: &Self) -> Ordering {
        let a = &self.p - &other.p;
        let s = sign_2rad(&a, &self.q, &self.d, &(-other.q.clone()), &other.d);
        s.cmp(&0)
    }
}

impl fmt::Debug for QuadReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{} + {}*sqrt({})", self.p, self.q, self.d)
        }
    }
}

impl fmt::Display for QuadReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(12))
    }
}

impl From<Rat> for QuadReal {
    fn from(r: Rat) -> Self {
        QuadReal::from_rat(r)
    }
}

/// A strictly rational value between two distinct exact values.
pub fn rational_between(a: &QuadReal, b: &QuadReal) -> Rat {
    assert!(a < b, "rational_between needs a < b");
    if let (Some(ra), Some(rb)) = (a.as_rat(), b.as_rat()) {
        return (ra + rb) / rat_i(2);
    }
    // Fast path: coarsest dyadic rational strictly between, so downstream
    // arithmetic keeps small denominators.
    let mid = (a.to_f64() + b.to_f64()) / 2.0;
    if mid.is_finite() {
        for k in 0..64u32 {
            let scale = (1u64 << k.min(62)) as f64;
            let num = (mid * scale).round();
            if !num.is_finite() {
                break;
            }
            let cand = Rat::new(
                BigInt::from(num as i128),
                BigInt::from(1u128 << k.min(62)),
            );
            let qc = QuadReal::from_rat(cand.clone());
            if a < &qc && &qc < b {
                return cand;
            }
        }
    }
    // Exact digit refinement.
    let mut k = 8u32;
    loop {
        let fa = a.floor_scaled(k);
        let fb = b.floor_scaled(k);
        if fb > fa {
            // candidate (fa + 1) / 10^k lies in (a, b] — nudge to the midpoint
            // of the cell to avoid landing exactly on b.
            let ten = BigInt::from(10u32).pow(k);
            let cand = Rat::new(&fa * 2 + 1, &ten * 2);
            let qc = QuadReal::from_rat(cand.clone());
            if a < &qc && &qc < b {
                return cand;
            }
            let cand2 = Rat::new(&fa + 1, ten);
            let qc2 = QuadReal::from_rat(cand2.clone());
            if a < &qc2 && &qc2 < b {
                return cand2;
            }
        }
        k *= 2;
        assert!(k < 1 << 20, "rational_between failed to separate values");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("3").unwrap(), rat_i(3));
        assert_eq!(parse_rat("-7/2").unwrap(), rat(-7, 2));
        assert_eq!(parse_rat("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rat("-1.5").unwrap(), rat(-3, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn perfect_squares_fold() {
        let v = QuadReal::new(rat_i(1), rat_i(3), rat_i(4));
        assert!(v.is_rational());
        assert_eq!(v.as_rat().unwrap(), &rat_i(7));
    }

    #[test]
    fn sqrt2_ordering() {
        let s2 = QuadReal::sqrt_rat(&rat_i(2));
        let s3 = QuadReal::sqrt_rat(&rat_i(3));
        assert!(s2 < s3);
        assert!(s2.cmp_rat(&rat(3, 2)) == Ordering::Less);
        assert!(s2.cmp_rat(&rat(7, 5)) == Ordering::Greater);
        // 1 + sqrt(2) vs 2*sqrt(3) - 1: lhs ~ 2.414, rhs ~ 2.464
        let lhs = QuadReal::new(rat_i(1), rat_i(1), rat_i(2));
        let rhs = QuadReal::new(rat_i(-1), rat_i(2), rat_i(3));
        assert!(lhs < rhs);
    }

    #[test]
    fn mixed_radicands_equality() {
        // sqrt(8) == 2*sqrt(2)
        let a = QuadReal::sqrt_rat(&rat_i(8));
        let b = QuadReal::new(rat_i(0), rat_i(2), rat_i(2));
        assert_eq!(a, b);
    }

    #[test]
    fn quadratic_roots() {
        // x^2 - 2 = 0
        let r = QuadReal::root_of_quadratic(&rat_i(1), &rat_i(0), &rat_i(-2), 1);
        assert_eq!(r, QuadReal::sqrt_rat(&rat_i(2)));
        // x^2 - 3x + 2 = (x-1)(x-2)
        let lo = QuadReal::root_of_quadratic(&rat_i(1), &rat_i(-3), &rat_i(2), -1);
        let hi = QuadReal::root_of_quadratic(&rat_i(1), &rat_i(-3), &rat_i(2), 1);
        assert_eq!(lo.as_rat().unwrap(), &rat_i(1));
        assert_eq!(hi.as_rat().unwrap(), &rat_i(2));
    }

    #[test]
    fn decimal_rendering() {
        let s2 = QuadReal::sqrt_rat(&rat_i(2));
        assert_eq!(s2.to_decimal(6), "1.414213");
        let neg = s2.neg();
        assert_eq!(neg.to_decimal(6), "-1.414213"); // truncation toward zero
        assert_eq!(QuadReal::from_rat(rat(1, 4)).to_decimal(3), "0.250");
    }

    #[test]
    fn between_values() {
        let a = QuadReal::sqrt_rat(&rat_i(2));
        let b = QuadReal::sqrt_rat(&rat_i(3));
        let m = rational_between(&a, &b);
        let qm = QuadReal::from_rat(m);
        assert!(a < qm && qm < b);
        // very close pair: sqrt(2) and 577/408 (a convergent, slightly above)
        let c = QuadReal::from_rat(rat(577, 408));
        let m2 = rational_between(&a, &c);
        let qm2 = QuadReal::from_rat(m2);
        assert!(a < qm2 && qm2 < c);
    }

    #[test]
    fn sign_agreement_with_floats() {
        // randomized cross-check of sign_2rad against f64
        let cases = [
            (1i64, 1i64, 2i64, -1i64, 3i64),
            (0, 2, 5, -3, 2),
            (-4, 1, 7, 1, 11),
            (2, -1, 2, -1, 2),
            (10, -3, 5, -2, 7),
        ];
        for (a, b, d1, c, d2) in cases {
            let exact = sign_2rad(&rat_i(a), &rat_i(b), &rat_i(d1), &rat_i(c), &rat_i(d2));
            let approx = a as f64 + b as f64 * (d1 as f64).sqrt() + c as f64 * (d2 as f64).sqrt();
            if approx.abs() > 1e-9 {
                assert_eq!(exact, if approx > 0.0 { 1 } else { -1 }, "case {a}+{b}√{d1}+{c}√{d2}");
            }
        }
    }
}
