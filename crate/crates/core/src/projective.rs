//! Homogeneous-coordinate kernel for the extended Euclidean plane.
//!
//! Points `(x : y : w)` and lines `[u0 : u1 : u2]` are stored as primitive
//! integer triples whose first nonzero entry is positive, so structural
//! equality is projective equality. Points at infinity have `w = 0` and the
//! line at infinity is `[0 : 0 : 1]`; neither is special-cased anywhere.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::GeomError;
use crate::linalg::{self, Mat3, Vec3};
use crate::rational::{format_rational, parse_rational, Rational};

fn canonical(mut v: Vec3) -> Result<Vec3, GeomError> {
    if linalg::normalize(&mut v) {
        Ok(v)
    } else {
        Err(GeomError::ZeroVector)
    }
}

fn canonical_from_rationals(v: &[Rational; 3]) -> Result<Vec3, GeomError> {
    let ints = linalg::clear_denominators(v);
    canonical([ints[0].clone(), ints[1].clone(), ints[2].clone()])
}

macro_rules! triple_type {
    ($name:ident, $open:literal, $close:literal) => {
        #[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
        pub struct $name(Vec3);

        impl $name {
            pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self, GeomError> {
                Self::from_coords([a, b, c].map(BigInt::from))
            }

            pub fn from_coords(v: Vec3) -> Result<Self, GeomError> {
                canonical(v).map(Self)
            }

            pub fn from_rationals(v: &[Rational; 3]) -> Result<Self, GeomError> {
                canonical_from_rationals(v).map(Self)
            }

            pub fn coords(&self) -> &Vec3 {
                &self.0
            }

            pub fn to_rationals(&self) -> [Rational; 3] {
                self.0.clone().map(Rational::from_integer)
            }

            pub fn to_strings(&self) -> [String; 3] {
                self.0.clone().map(|x| x.to_string())
            }

            pub fn from_strings<S: AsRef<str>>(parts: &[S]) -> Result<Self, String> {
                if parts.len() != 3 {
                    return Err(format!("expected 3 entries, found {}", parts.len()));
                }
                let mut vals: [Rational; 3] = Default::default();
                for (slot, text) in vals.iter_mut().zip(parts) {
                    *slot = parse_rational(text.as_ref()).map_err(|e| e.to_string())?;
                }
                Self::from_rationals(&vals).map_err(|e| e.to_string())
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(
                    f,
                    concat!($open, "{}:{}:{}", $close),
                    self.0[0], self.0[1], self.0[2]
                )
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                self.to_strings().serialize(s)
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let parts = Vec::<String>::deserialize(d)?;
                Self::from_strings(&parts).map_err(serde::de::Error::custom)
            }
        }
    };
}

triple_type!(HPoint, "(", ")");
triple_type!(HLine, "[", "]");

impl HPoint {
    pub fn is_at_infinity(&self) -> bool {
        self.0[2].is_zero()
    }
}

impl HLine {
    /// The line at infinity `[0:0:1]`.
    pub fn omega() -> Self {
        HLine([0, 0, 1].map(BigInt::from))
    }
}

pub fn join(p: &HPoint, q: &HPoint) -> Result<HLine, GeomError> {
    canonical(linalg::cross(&p.0, &q.0))
        .map(HLine)
        .map_err(|_| GeomError::IdenticalPoints)
}

pub fn meet(l: &HLine, m: &HLine) -> Result<HPoint, GeomError> {
    canonical(linalg::cross(&l.0, &m.0))
        .map(HPoint)
        .map_err(|_| GeomError::IdenticalLines)
}

pub fn incident(p: &HPoint, l: &HLine) -> bool {
    linalg::dot(&p.0, &l.0).is_zero()
}

pub fn collinear(p: &HPoint, q: &HPoint, r: &HPoint) -> bool {
    linalg::det3([&p.0, &q.0, &r.0]).is_zero()
}

pub fn concurrent(l: &HLine, m: &HLine, n: &HLine) -> bool {
    linalg::det3([&l.0, &m.0, &n.0]).is_zero()
}

/// The common point of `lines` if they are concurrent: the meet of the first
/// two distinct lines, provided every line passes through it. `Ok(None)`
/// means all lines coincide.
pub fn common_point(lines: &[HLine]) -> Result<Option<HPoint>, ()> {
    let Some(first) = lines.first() else {
        return Ok(None);
    };
    let Some(second) = lines.iter().find(|l| *l != first) else {
        return Ok(None);
    };
    let p = meet(first, second).expect("distinct lines meet");
    if lines.iter().all(|l| incident(&p, l)) {
        Ok(Some(p))
    } else {
        Err(())
    }
}

pub fn all_concurrent(lines: &[HLine]) -> bool {
    common_point(lines).is_ok()
}

/// The common line of `points` if they are collinear (dual of
/// [`common_point`]).
pub fn common_line(points: &[HPoint]) -> Result<Option<HLine>, ()> {
    let Some(first) = points.first() else {
        return Ok(None);
    };
    let Some(second) = points.iter().find(|p| *p != first) else {
        return Ok(None);
    };
    let l = join(first, second).expect("distinct points join");
    if points.iter().all(|p| incident(p, &l)) {
        Ok(Some(l))
    } else {
        Err(())
    }
}

pub fn all_collinear(points: &[HPoint]) -> bool {
    common_line(points).is_ok()
}

/// Homogeneous coefficients `(alpha : beta)` with `p ~ alpha*a + beta*b`,
/// using the stored representatives of `a` and `b`. Requires `a != b` and
/// `p` on the line `ab`.
pub(crate) fn pencil_coefficients(a: &HPoint, b: &HPoint, p: &HPoint) -> (BigInt, BigInt) {
    let l = linalg::cross(&a.0, &b.0);
    let alpha = linalg::dot(&linalg::cross(&p.0, &b.0), &l);
    let beta = linalg::dot(&linalg::cross(&a.0, &p.0), &l);
    (alpha, beta)
}

pub(crate) fn combine(a: &HPoint, alpha: &BigInt, b: &HPoint, beta: &BigInt) -> Vec3 {
    std::array::from_fn(|i| alpha * &a.0[i] + beta * &b.0[i])
}

/// Value of a cross-ratio; `Infinity` when the formula's denominator vanishes
/// (C coincides with B, or D with A).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CrossRatio {
    Finite(Rational),
    Infinity,
}

impl CrossRatio {
    pub fn is_harmonic(&self) -> bool {
        matches!(self, CrossRatio::Finite(v) if *v == Rational::from_integer(BigInt::from(-1)))
    }
}

impl fmt::Display for CrossRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrossRatio::Finite(v) => f.write_str(&format_rational(v)),
            CrossRatio::Infinity => f.write_str("inf"),
        }
    }
}

/// `(A,B;C,D) = ((c-a)(d-b)) / ((c-b)(d-a))`, evaluated in the chart of the
/// common line with base points A (parameter 0) and B (parameter infinity),
/// where it reduces to `c / d`.
pub fn cross_ratio(
    a: &HPoint,
    b: &HPoint,
    c: &HPoint,
    d: &HPoint,
) -> Result<CrossRatio, GeomError> {
    if a == b || c == d {
        return Err(GeomError::DegenerateTuple);
    }
    let line = join(a, b)?;
    if !incident(c, &line) || !incident(d, &line) {
        return Err(GeomError::NotCollinear);
    }
    let (ac, bc) = pencil_coefficients(a, b, c);
    let (ad, bd) = pencil_coefficients(a, b, d);
    let num = bc * ad;
    let den = ac * bd;
    if den.is_zero() {
        Ok(CrossRatio::Infinity)
    } else {
        Ok(CrossRatio::Finite(Rational::new(num, den)))
    }
}

/// The fourth harmonic point D with `(A,B;C,D) = -1`.
pub fn harmonic_conjugate(a: &HPoint, b: &HPoint, c: &HPoint) -> Result<HPoint, GeomError> {
    if a == b {
        return Err(GeomError::DegenerateTuple);
    }
    if !incident(c, &join(a, b)?) {
        return Err(GeomError::NotCollinear);
    }
    if c == a || c == b {
        return Err(GeomError::CoincidesWithEndpoint);
    }
    let (alpha, beta) = pencil_coefficients(a, b, c);
    HPoint::from_coords(combine(a, &alpha, b, &(-beta)))
}

/// Affine view of a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Affine {
    Finite(Rational, Rational),
    AtInfinity { dx: BigInt, dy: BigInt },
}

pub fn euclidean_embed(x: &Rational, y: &Rational) -> HPoint {
    HPoint::from_rationals(&[x.clone(), y.clone(), Rational::from_integer(1.into())])
        .expect("w = 1 is nonzero")
}

pub fn euclidean_extract(p: &HPoint) -> Affine {
    let [x, y, w] = &p.0;
    if w.is_zero() {
        Affine::AtInfinity {
            dx: x.clone(),
            dy: y.clone(),
        }
    } else {
        Affine::Finite(
            Rational::new(x.clone(), w.clone()),
            Rational::new(y.clone(), w.clone()),
        )
    }
}

/// Invertible collineation of the plane, as a primitive integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjMap(Mat3);

impl ProjMap {
    pub fn from_matrix(m: Mat3) -> Result<Self, GeomError> {
        if linalg::det(&m).is_zero() {
            return Err(GeomError::SingularMatrix);
        }
        let mut flat: Vec<BigInt> = m.iter().flatten().cloned().collect();
        linalg::normalize(&mut flat);
        Ok(ProjMap(std::array::from_fn(|r| {
            std::array::from_fn(|c| flat[3 * r + c].clone())
        })))
    }

    pub fn from_ints(m: [[i64; 3]; 3]) -> Result<Self, GeomError> {
        Self::from_matrix(m.map(|row| row.map(BigInt::from)))
    }

    pub fn identity() -> Self {
        ProjMap(linalg::identity())
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.0
    }

    pub fn to_strings(&self) -> [[String; 3]; 3] {
        self.0.clone().map(|row| row.map(|x| x.to_string()))
    }

    pub fn compose(&self, inner: &ProjMap) -> ProjMap {
        ProjMap::from_matrix(linalg::mat_mul(&self.0, &inner.0)).expect("product of invertibles")
    }
}

impl Serialize for ProjMap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProjMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = <[[String; 3]; 3]>::deserialize(d)?;
        let mut m: [[Rational; 3]; 3] = Default::default();
        for (r, row) in rows.iter().enumerate() {
            for (c, text) in row.iter().enumerate() {
                m[r][c] = parse_rational(text).map_err(serde::de::Error::custom)?;
            }
        }
        let flat: Vec<Rational> = m.iter().flatten().cloned().collect();
        let ints = linalg::clear_denominators(&flat);
        ProjMap::from_matrix(std::array::from_fn(|r| {
            std::array::from_fn(|c| ints[3 * r + c].clone())
        }))
        .map_err(serde::de::Error::custom)
    }
}

pub fn apply_map(t: &ProjMap, p: &HPoint) -> HPoint {
    HPoint::from_coords(linalg::mat_vec(&t.0, &p.0)).expect("invertible map")
}

/// Lines transform by the inverse transpose; the adjugate keeps it integral.
pub fn apply_map_line(t: &ProjMap, l: &HLine) -> HLine {
    let adj_t = linalg::transpose(&linalg::adjugate(&t.0));
    HLine::from_coords(linalg::mat_vec(&adj_t, &l.0)).expect("invertible map")
}

/// The perspective collineation with the given center and axis that sends
/// `pre_image` to `image`, as `I + lambda * center * axis^T`.
pub fn homology_from(
    center: &HPoint,
    axis: &HLine,
    pre_image: &HPoint,
    image: &HPoint,
) -> Result<ProjMap, GeomError> {
    if incident(pre_image, axis) {
        return Err(GeomError::InvalidPair("pre-image lies on the axis"));
    }
    if incident(image, axis) {
        return Err(GeomError::InvalidPair("image lies on the axis"));
    }
    if pre_image == center || image == center {
        return Err(GeomError::InvalidPair("point coincides with the center"));
    }
    if !collinear(center, pre_image, image) {
        return Err(GeomError::InvalidPair("image not on the line through center and pre-image"));
    }
    // image ~ mu * pre_image + nu * center
    let (mu, nu) = pencil_coefficients(pre_image, center, image);
    let scale = &mu * linalg::dot(&axis.0, &pre_image.0);
    let c = &center.0;
    let a = &axis.0;
    let m: Mat3 = std::array::from_fn(|r| {
        std::array::from_fn(|k| {
            let diag = if r == k { scale.clone() } else { BigInt::zero() };
            diag + &nu * &c[r] * &a[k]
        })
    });
    ProjMap::from_matrix(m).map_err(|_| GeomError::DegenerateHomology)
}

/// Euclidean midpoint of two finite points.
pub fn midpoint(p: &HPoint, q: &HPoint) -> Option<HPoint> {
    match (euclidean_extract(p), euclidean_extract(q)) {
        (Affine::Finite(x1, y1), Affine::Finite(x2, y2)) => {
            let two = Rational::from_integer(2.into());
            Some(euclidean_embed(&((x1 + x2) / &two), &((y1 + y2) / two)))
        }
        _ => None,
    }
}

pub(crate) fn sign(v: &BigInt) -> i32 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn pt(x: i64, y: i64, w: i64) -> HPoint {
        HPoint::from_ints(x, y, w).unwrap()
    }
    fn ln(a: i64, b: i64, c: i64) -> HLine {
        HLine::from_ints(a, b, c).unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(pt(-2, 4, 0), pt(1, -2, 0));
        assert_eq!(pt(0, -3, 6).coords().clone(), [0, 1, -2].map(BigInt::from));
        assert_eq!(HPoint::from_ints(0, 0, 0), Err(GeomError::ZeroVector));
        let p = HPoint::from_rationals(&[frac(1, 2), frac(-1, 3), int(1)]).unwrap();
        assert_eq!(p, pt(3, -2, 6));
    }

    #[test]
    fn join_examples() {
        assert_eq!(join(&pt(1, 0, 0), &pt(0, 1, 0)).unwrap(), ln(0, 0, 1));
        assert_eq!(join(&pt(0, 0, 1), &pt(1, 0, 1)).unwrap(), ln(0, 1, 0));
        // cross product (0,0,1) x (1,4,1) = (-4, 1, 0) -> canonical [4:-1:0]
        assert_eq!(join(&pt(0, 0, 1), &pt(1, 4, 1)).unwrap(), ln(4, -1, 0));
        assert_eq!(
            join(&pt(1, 1, 1), &pt(2, 2, 2)),
            Err(GeomError::IdenticalPoints)
        );
    }

    #[test]
    fn meet_examples() {
        assert_eq!(meet(&ln(1, 0, 0), &ln(0, 1, 0)).unwrap(), pt(0, 0, 1));
        assert_eq!(meet(&ln(0, 1, 0), &ln(0, 0, 1)).unwrap(), pt(1, 0, 0));
        assert_eq!(meet(&ln(1, 1, -2), &ln(1, -1, 0)).unwrap(), pt(1, 1, 1));
        assert_eq!(
            meet(&ln(1, 1, 1), &ln(-1, -1, -1)),
            Err(GeomError::IdenticalLines)
        );
    }

    #[test]
    fn incidence_examples() {
        assert!(incident(&pt(0, 0, 1), &ln(1, 0, 0)));
        assert!(incident(&pt(1, 0, 0), &HLine::omega()));
        assert!(!incident(&pt(1, 1, 1), &ln(1, 1, -1)));
    }

    #[test]
    fn collinear_examples() {
        assert!(collinear(&pt(0, 0, 1), &pt(1, 0, 1), &pt(2, 0, 1)));
        assert!(!collinear(&pt(0, 0, 1), &pt(1, 0, 1), &pt(0, 1, 1)));
        assert!(concurrent(&ln(1, 0, 0), &ln(1, 0, 0), &ln(0, 1, 0)));
    }

    #[test]
    fn pappus_on_parallel_lines() {
        let (a, b, c) = (pt(0, 0, 1), pt(1, 0, 1), pt(2, 0, 1));
        let (a2, b2, c2) = (pt(0, 1, 1), pt(1, 1, 1), pt(2, 1, 1));
        let x = |p: &HPoint, q: &HPoint, r: &HPoint, s: &HPoint| {
            meet(&join(p, q).unwrap(), &join(r, s).unwrap()).unwrap()
        };
        let p = x(&b, &c2, &c, &b2);
        let q = x(&a, &c2, &c, &a2);
        let r = x(&a, &b2, &b, &a2);
        assert!(collinear(&p, &q, &r));
    }

    #[test]
    fn cross_ratio_examples() {
        let a = pt(0, 0, 1);
        let cr = cross_ratio(&a, &pt(2, 0, 1), &pt(1, 0, 1), &pt(1, 0, 0)).unwrap();
        assert_eq!(cr, CrossRatio::Finite(int(-1)));
        assert_eq!(
            cross_ratio(&a, &pt(2, 0, 1), &pt(1, 0, 1), &pt(1, 0, 1)),
            Err(GeomError::DegenerateTuple)
        );
        // ratio-of-ratios on x-coordinates 0, 3, 1, 2: (1)(-1) / ((-2)(2)) = 1/4
        let b = pt(3, 0, 1);
        let (c, d) = (pt(1, 0, 1), pt(2, 0, 1));
        assert_eq!(cross_ratio(&a, &b, &c, &d).unwrap(), CrossRatio::Finite(frac(1, 4)));
        assert_eq!(cross_ratio(&a, &b, &d, &c).unwrap(), CrossRatio::Finite(int(4)));
        assert_eq!(
            cross_ratio(&a, &b, &c, &pt(0, 1, 1)),
            Err(GeomError::NotCollinear)
        );
        // D = A hits the pole of the formula
        assert_eq!(cross_ratio(&a, &b, &c, &a).unwrap(), CrossRatio::Infinity);
    }

    #[test]
    fn harmonic_examples() {
        let (a, b) = (pt(0, 0, 1), pt(2, 0, 1));
        assert_eq!(harmonic_conjugate(&a, &b, &pt(1, 0, 1)).unwrap(), pt(1, 0, 0));
        assert_eq!(harmonic_conjugate(&a, &b, &pt(1, 0, 0)).unwrap(), pt(1, 0, 1));
        // (0, 3; 1, d) = -1  ->  (1)(d-3) = -(-2)(d)  ->  d = -3
        let d = harmonic_conjugate(&a, &pt(3, 0, 1), &pt(1, 0, 1)).unwrap();
        assert_eq!(d, pt(-3, 0, 1));
        assert_eq!(
            harmonic_conjugate(&a, &b, &a),
            Err(GeomError::CoincidesWithEndpoint)
        );
        assert_eq!(
            harmonic_conjugate(&a, &b, &pt(1, 1, 1)),
            Err(GeomError::NotCollinear)
        );
    }

    #[test]
    fn homothety_as_homology() {
        let h = homology_from(&pt(0, 0, 1), &HLine::omega(), &pt(1, 0, 1), &pt(2, 0, 1)).unwrap();
        assert_eq!(apply_map(&h, &pt(0, 1, 1)), pt(0, 2, 1));
        assert_eq!(apply_map_line(&h, &ln(1, 0, -2)), ln(1, 0, -4));
        let id = homology_from(&pt(0, 0, 1), &HLine::omega(), &pt(1, 0, 1), &pt(1, 0, 1)).unwrap();
        assert_eq!(id, ProjMap::identity());
    }

    #[test]
    fn homology_rejects_bad_pairs() {
        let c = pt(0, 0, 1);
        let axis = ln(1, 0, -5);
        assert!(matches!(
            homology_from(&c, &axis, &pt(5, 1, 1), &pt(1, 1, 1)),
            Err(GeomError::InvalidPair(_))
        ));
        assert!(matches!(
            homology_from(&c, &axis, &pt(1, 1, 1), &pt(1, 2, 1)),
            Err(GeomError::InvalidPair(_))
        ));
        assert!(matches!(
            homology_from(&c, &axis, &c, &pt(1, 2, 1)),
            Err(GeomError::InvalidPair(_))
        ));
    }

    #[test]
    fn elation_when_center_on_axis() {
        let axis = ln(0, 1, 0);
        let h = homology_from(&pt(1, 0, 0), &axis, &pt(0, 1, 1), &pt(3, 1, 1)).unwrap();
        // horizontal shear x -> x + 3y
        assert_eq!(apply_map(&h, &pt(1, 2, 1)), pt(7, 2, 1));
        assert_eq!(apply_map(&h, &pt(5, 0, 1)), pt(5, 0, 1));
    }

    #[test]
    fn embed_and_extract() {
        assert_eq!(euclidean_embed(&int(4), &int(0)), pt(4, 0, 1));
        assert_eq!(
            euclidean_extract(&pt(80, 48, 17)),
            Affine::Finite(frac(80, 17), frac(48, 17))
        );
        assert_eq!(
            euclidean_extract(&pt(1, 4, 0)),
            Affine::AtInfinity {
                dx: 1.into(),
                dy: 4.into()
            }
        );
    }

    #[test]
    fn serde_round_trip() {
        let p = pt(3, -2, 6);
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"["3","-2","6"]"#);
        let back: HPoint = serde_json::from_str(r#"["1/2","-1/3","1"]"#).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<HLine>(r#"["0","0","0"]"#).is_err());
    }
}
