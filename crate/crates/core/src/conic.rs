//! Conics as symmetric quadratic forms.
//!
//! A conic is stored through its six coefficients `[a, b, c, d, e, f]` of
//! `a x² + b y² + c w² + 2d xy + 2e xw + 2f yw`, i.e. the symmetric matrix
//! `[[a, d, e], [d, b, f], [e, f, c]]`, reduced to a primitive integer form
//! whose first nonzero entry (row-major) is positive.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::GeomError;
use crate::linalg::{self, Mat3, Vec3};
use crate::projective::{collinear, incident, join, meet, HLine, HPoint, ProjMap};
use crate::rational::{parse_rational, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Conic {
    matrix: Mat3,
    degenerate: bool,
}

impl Conic {
    pub fn from_coefficients(c: [BigInt; 6]) -> Result<Self, GeomError> {
        let [a, b, cc, d, e, f] = c;
        Self::from_matrix([
            [a, d.clone(), e.clone()],
            [d, b, f.clone()],
            [e, f, cc],
        ])
    }

    pub fn from_int_coefficients(c: [i64; 6]) -> Result<Self, GeomError> {
        Self::from_coefficients(c.map(BigInt::from))
    }

    /// Builds from a symmetric matrix; asymmetric input is symmetrized.
    pub fn from_matrix(m: Mat3) -> Result<Self, GeomError> {
        let mut flat = Vec::with_capacity(9);
        for r in 0..3 {
            for c in 0..3 {
                flat.push(&m[r][c] + &m[c][r]);
            }
        }
        if !linalg::normalize(&mut flat) {
            return Err(GeomError::ZeroVector);
        }
        let matrix: Mat3 = std::array::from_fn(|r| std::array::from_fn(|c| flat[3 * r + c].clone()));
        let degenerate = linalg::det(&matrix).is_zero();
        Ok(Conic { matrix, degenerate })
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.matrix
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// `[a, b, c, d, e, f]`.
    pub fn coefficients(&self) -> [BigInt; 6] {
        let m = &self.matrix;
        [
            m[0][0].clone(),
            m[1][1].clone(),
            m[2][2].clone(),
            m[0][1].clone(),
            m[0][2].clone(),
            m[1][2].clone(),
        ]
    }

    pub fn value_at(&self, p: &HPoint) -> BigInt {
        let mp = linalg::mat_vec(&self.matrix, p.coords());
        linalg::dot(p.coords(), &mp)
    }

    pub(crate) fn bilinear(&self, p: &Vec3, q: &Vec3) -> BigInt {
        linalg::dot(p, &linalg::mat_vec(&self.matrix, q))
    }

    /// Image of the conic under a collineation `T`: `adj(T)^T M adj(T)`.
    pub fn transformed(&self, t: &ProjMap) -> Conic {
        let adj = linalg::adjugate(t.matrix());
        let m = linalg::mat_mul(&linalg::transpose(&adj), &linalg::mat_mul(&self.matrix, &adj));
        Conic::from_matrix(m).expect("invertible map keeps a nonzero form")
    }

    /// Discriminant sign of the quadratic part: negative for ellipses,
    /// zero for parabolas, positive for hyperbolas (`d² - ab`).
    pub fn affine_type_sign(&self) -> i32 {
        let m = &self.matrix;
        crate::projective::sign(&(&m[0][1] * &m[0][1] - &m[0][0] * &m[1][1]))
    }
}

impl fmt::Display for Conic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coefficients();
        write!(f, "<{}, {}, {}, {}, {}, {}>", c[0], c[1], c[2], c[3], c[4], c[5])
    }
}

impl Serialize for Conic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coefficients().map(|x| x.to_string()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Conic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts = <[String; 6]>::deserialize(d)?;
        let mut vals: Vec<Rational> = Vec::with_capacity(6);
        for p in &parts {
            vals.push(parse_rational(p).map_err(serde::de::Error::custom)?);
        }
        let ints = linalg::clear_denominators(&vals);
        let arr: [BigInt; 6] = std::array::from_fn(|i| ints[i].clone());
        Conic::from_coefficients(arr).map_err(serde::de::Error::custom)
    }
}

fn five_point_row(p: &HPoint) -> Vec<BigInt> {
    let [x, y, w] = p.coords();
    vec![
        x * x,
        y * y,
        w * w,
        x * y * 2,
        x * w * 2,
        y * w * 2,
    ]
}

/// The unique conic through five points. A degenerate solution is returned
/// with its flag set; a rank-deficient system is `NotUnique`.
pub fn conic_through_five(points: [&HPoint; 5]) -> Result<Conic, GeomError> {
    let rows: Vec<Vec<BigInt>> = points.iter().map(|p| five_point_row(p)).collect();
    let basis = linalg::null_space(&rows, 6);
    if basis.len() != 1 {
        return Err(GeomError::NotUnique);
    }
    let v = &basis[0];
    Conic::from_coefficients(std::array::from_fn(|i| v[i].clone()))
}

pub fn on_conic(p: &HPoint, c: &Conic) -> bool {
    c.value_at(p).is_zero()
}

pub fn polar(p: &HPoint, c: &Conic) -> Result<HLine, GeomError> {
    HLine::from_coords(linalg::mat_vec(&c.matrix, p.coords())).map_err(|_| GeomError::PolarUndefined)
}

pub fn pole(l: &HLine, c: &Conic) -> Result<HPoint, GeomError> {
    if c.degenerate {
        return Err(GeomError::DegenerateConic);
    }
    let adj = linalg::adjugate(&c.matrix);
    Ok(HPoint::from_coords(linalg::mat_vec(&adj, l.coords())).expect("nonsingular"))
}

/// The three opposite-side meets of the hexagon `h[0] .. h[5]`: sides
/// (01, 34), (12, 45), (23, 50).
pub fn pascal_points(h: [&HPoint; 6]) -> Result<[HPoint; 3], GeomError> {
    for i in 0..6 {
        if h[i] == h[(i + 1) % 6] {
            return Err(GeomError::DegenerateHexagon);
        }
    }
    let side = |i: usize| join(h[i], h[(i + 1) % 6]);
    let mut out: Vec<HPoint> = Vec::with_capacity(3);
    for i in 0..3 {
        let p = meet(&side(i)?, &side(i + 3)?).map_err(|_| GeomError::DegenerateHexagon)?;
        out.push(p);
    }
    Ok([out[0].clone(), out[1].clone(), out[2].clone()])
}

/// The Pascal line of a hexagon inscribed in a non-degenerate conic.
pub fn pascal_line(h: [&HPoint; 6], c: &Conic) -> Result<HLine, GeomError> {
    if c.degenerate {
        return Err(GeomError::DegenerateConic);
    }
    if h.iter().any(|p| !on_conic(p, c)) {
        return Err(GeomError::NotOnConic);
    }
    let [p, q, r] = pascal_points(h)?;
    if !collinear(&p, &q, &r) {
        return Err(GeomError::PascalViolation);
    }
    let line = if p != q {
        join(&p, &q)?
    } else if p != r {
        join(&p, &r)?
    } else {
        return Err(GeomError::PascalLineUndetermined);
    };
    Ok(line)
}

pub fn is_self_polar_triangle(
    p: &HPoint,
    q: &HPoint,
    r: &HPoint,
    c: &Conic,
) -> Result<bool, GeomError> {
    if c.degenerate {
        return Err(GeomError::DegenerateConic);
    }
    if collinear(p, q, r) {
        return Ok(false);
    }
    let ok = |v: &HPoint, a: &HPoint, b: &HPoint| -> Result<bool, GeomError> {
        Ok(polar(v, c)? == join(a, b)?)
    };
    Ok(ok(p, q, r)? && ok(q, p, r)? && ok(r, p, q)?)
}

/// Second intersection of the conic with the line through `base` (a point on
/// the conic) and `through`. Exact: `(D^T M D) B - 2 (B^T M D) D`. Returns
/// `base` itself when the line is tangent there.
pub fn second_intersection(c: &Conic, base: &HPoint, through: &HPoint) -> HPoint {
    let b = base.coords();
    let d = through.coords();
    let dd = c.bilinear(d, d);
    let bd = c.bilinear(b, d) * 2;
    let v: Vec3 = std::array::from_fn(|i| &dd * &b[i] - &bd * &d[i]);
    HPoint::from_coords(v).unwrap_or_else(|_| base.clone())
}

/// Sign of a point's conic value relative to the conic, used to classify
/// side-of-conic tests in rendering.
pub fn side(c: &Conic, p: &HPoint) -> i32 {
    let v = c.value_at(p);
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

pub fn tangent_at(p: &HPoint, c: &Conic) -> Result<HLine, GeomError> {
    if !on_conic(p, c) {
        return Err(GeomError::NotOnConic);
    }
    polar(p, c)
}

pub fn on_line_and_conic(p: &HPoint, l: &HLine, c: &Conic) -> bool {
    incident(p, l) && on_conic(p, c)
}
