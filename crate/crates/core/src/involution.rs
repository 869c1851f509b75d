//! Projectivities and involutions of a line.
//!
//! A [`LineChart`] fixes two base points on a line so that every point of
//! the line gets homogeneous parameters `(alpha : beta)` with
//! `P ~ alpha * base0 + beta * base1`. Involutions act on those parameters
//! through a 2×2 integer matrix.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::GeomError;
use crate::linalg;
use crate::projective::{combine, incident, join, pencil_coefficients, HLine, HPoint};

pub type Param = [BigInt; 2];
pub type Mat2 = [[BigInt; 2]; 2];

fn canonical_param(mut p: Vec<BigInt>) -> Param {
    linalg::normalize(&mut p);
    [p[0].clone(), p[1].clone()]
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LineChart {
    line: HLine,
    base0: HPoint,
    base1: HPoint,
}

impl LineChart {
    pub fn new(base0: HPoint, base1: HPoint) -> Result<Self, GeomError> {
        let line = join(&base0, &base1)?;
        Ok(LineChart { line, base0, base1 })
    }

    pub fn on_line(line: &HLine, base0: HPoint, base1: HPoint) -> Result<Self, GeomError> {
        if !incident(&base0, line) || !incident(&base1, line) {
            return Err(GeomError::NotOnLine);
        }
        Self::new(base0, base1)
    }

    pub fn line(&self) -> &HLine {
        &self.line
    }

    pub fn bases(&self) -> (&HPoint, &HPoint) {
        (&self.base0, &self.base1)
    }

    pub fn param(&self, p: &HPoint) -> Result<Param, GeomError> {
        if !incident(p, &self.line) {
            return Err(GeomError::NotOnLine);
        }
        let (a, b) = pencil_coefficients(&self.base0, &self.base1, p);
        Ok(canonical_param(vec![a, b]))
    }

    pub fn point(&self, param: &Param) -> Result<HPoint, GeomError> {
        HPoint::from_coords(combine(&self.base0, &param[0], &self.base1, &param[1]))
    }
}

fn mat2_apply(m: &Mat2, p: &Param) -> Param {
    canonical_param(vec![
        &m[0][0] * &p[0] + &m[0][1] * &p[1],
        &m[1][0] * &p[0] + &m[1][1] * &p[1],
    ])
}

fn mat2_square_is_scalar(m: &Mat2) -> bool {
    // M² = [[a²+bc, b(a+d)], [c(a+d), d²+bc]]
    let (a, b, c, d) = (&m[0][0], &m[0][1], &m[1][0], &m[1][1]);
    let tr = a + d;
    let off_zero = (b * &tr).is_zero() && (c * &tr).is_zero();
    let diag_equal = a * a == d * d;
    off_zero && diag_equal
}

fn mat2_det(m: &Mat2) -> BigInt {
    &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LineInvolution {
    chart: LineChart,
    #[serde(serialize_with = "ser_mat2")]
    matrix: Mat2,
}

fn ser_mat2<S: serde::Serializer>(m: &Mat2, s: S) -> Result<S::Ok, S::Error> {
    m.clone().map(|r| r.map(|x| x.to_string())).serialize(s)
}

impl LineInvolution {
    pub fn chart(&self) -> &LineChart {
        &self.chart
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.matrix
    }

    pub fn from_matrix(chart: LineChart, m: Mat2) -> Result<Self, GeomError> {
        if mat2_det(&m).is_zero() || !mat2_square_is_scalar(&m) {
            return Err(GeomError::NotInvolution);
        }
        let mut flat: Vec<BigInt> = m.iter().flatten().cloned().collect();
        linalg::normalize(&mut flat);
        let matrix = [
            [flat[0].clone(), flat[1].clone()],
            [flat[2].clone(), flat[3].clone()],
        ];
        Ok(LineInvolution { chart, matrix })
    }
}

impl fmt::Display for LineInvolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.matrix;
        write!(f, "[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

/// Linear condition on `(m00, m01, m10, m11)` expressing `M p ~ q`:
/// `q0 (M p)_1 - q1 (M p)_0 = 0`.
fn maps_to_row(p: &Param, q: &Param) -> Vec<BigInt> {
    vec![
        -(&q[1] * &p[0]),
        -(&q[1] * &p[1]),
        &q[0] * &p[0],
        &q[0] * &p[1],
    ]
}

/// The involution swapping `p1 <-> q1` and `p2 <-> q2` (a pair with `p = q`
/// makes that point a fixed point).
pub fn involution_from_pairs(
    chart: &LineChart,
    (p1, q1): (&HPoint, &HPoint),
    (p2, q2): (&HPoint, &HPoint),
) -> Result<LineInvolution, GeomError> {
    let [a1, b1, a2, b2] = [p1, q1, p2, q2].map(|p| chart.param(p));
    let (a1, b1, a2, b2) = (a1?, b1?, a2?, b2?);
    let same_pair = (a1 == a2 && b1 == b2) || (a1 == b2 && b1 == a2);
    if same_pair {
        return Err(GeomError::InconsistentPairs);
    }
    let mut rows = vec![
        maps_to_row(&a1, &b1),
        maps_to_row(&b1, &a1),
        maps_to_row(&a2, &b2),
        maps_to_row(&b2, &a2),
    ];
    let mut basis = linalg::null_space(&rows, 4);
    if basis.len() > 1 {
        // Fixed-point pairs leave the identity in the solution set; the
        // non-identity involutions are the trace-free ones.
        rows.push([1, 0, 0, 1].map(BigInt::from).to_vec());
        basis = linalg::null_space(&rows, 4);
    }
    if basis.len() != 1 {
        return Err(GeomError::InconsistentPairs);
    }
    let v = &basis[0];
    let m = [[v[0].clone(), v[1].clone()], [v[2].clone(), v[3].clone()]];
    LineInvolution::from_matrix(chart.clone(), m)
}

pub fn apply_involution(inv: &LineInvolution, p: &HPoint) -> Result<HPoint, GeomError> {
    let param = inv.chart.param(p)?;
    inv.chart.point(&mat2_apply(&inv.matrix, &param))
}

pub fn is_conjugate_pair(inv: &LineInvolution, p: &HPoint, q: &HPoint) -> Result<bool, GeomError> {
    if !incident(q, &inv.chart.line) {
        return Err(GeomError::NotOnLine);
    }
    Ok(apply_involution(inv, p)? == *q)
}
