//! Constructions attached to a complete quadrangle `A1 A2 A3 A4` and a line
//! `g` avoiding its vertices and diagonal points.
//!
//! Vertices are indexed `1..=4`. For distinct indices:
//!
//! * `U_ab = g ∩ A_a A_b` (symmetric in `a`, `b`);
//! * the Sharygin point `M_ab^c = A_a U_bd ∩ A_b A_c`, where `d` is the
//!   fourth index; there are 24 of them;
//! * `G_ab = A_a A_b ∩ M_ab^c M_ab^d`, the G-point of the side `A_a A_b`.
//!
//! Functions named after an object compute it directly; the ones that carry
//! a theorem as postcondition (`g_point`, `sharygin_curve`,
//! `nine_point_conic`, `nine_point_pole`, `centers`, `homologies`) check it
//! and report a violation instead of returning a wrong value.

mod cases;

pub use cases::{enumerate_cases, CaseDescriptor};

use std::fmt;

use thiserror::Error;

use crate::conic::{conic_through_five, on_conic, pole, Conic};
use crate::error::GeomError;
use crate::involution::{apply_involution, involution_from_pairs, LineChart, LineInvolution};
use crate::projective::{
    apply_map, collinear, common_point, homology_from, incident, join, meet, HLine, HPoint,
    ProjMap,
};

pub type Index = u8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QlError {
    #[error("vertices A{0}, A{1}, A{2} are collinear")]
    ThreeCollinearVertices(Index, Index, Index),
    #[error("line g passes through vertex A{0}")]
    LineThroughVertex(Index),
    #[error("line g passes through the diagonal point {0}")]
    LineThroughDiagonalPoint(DiagonalPoint),
    #[error("indices must be a permutation of 1, 2, 3, 4")]
    InvalidSelection,
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("concurrency violated: {0}")]
    ConcurrencyViolation(String),
    #[error("incidence violated: {0}")]
    IncidenceViolation(String),
    #[error("mapping violated: {0}")]
    MappingViolation(String),
    #[error("third pair of the quadrangle involution does not correspond")]
    ThirdPairMismatch,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// One of the three diagonal points, named by its two opposite sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagonalPoint {
    /// `A1A2 ∩ A3A4`
    D12_34,
    /// `A1A3 ∩ A2A4`
    D13_24,
    /// `A1A4 ∩ A2A3`
    D14_23,
}

impl DiagonalPoint {
    pub const ALL: [DiagonalPoint; 3] = [Self::D12_34, Self::D13_24, Self::D14_23];

    pub fn sides(self) -> ((Index, Index), (Index, Index)) {
        match self {
            Self::D12_34 => ((1, 2), (3, 4)),
            Self::D13_24 => ((1, 3), (2, 4)),
            Self::D14_23 => ((1, 4), (2, 3)),
        }
    }
}

impl fmt::Display for DiagonalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ((a, b), (c, d)) = self.sides();
        write!(f, "A{a}A{b}∩A{c}A{d}")
    }
}

pub const PAIRS: [(Index, Index); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

/// The two indices of `1..=4` not in `{a, b}`, ascending.
pub fn others(a: Index, b: Index) -> (Index, Index) {
    let mut rest = (1..=4).filter(|&x| x != a && x != b);
    (rest.next().unwrap(), rest.next().unwrap())
}

/// The index of `1..=4` not in `{a, b, c}`.
pub fn fourth(a: Index, b: Index, c: Index) -> Index {
    10 - a - b - c
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompleteQuadrangle {
    vertices: [HPoint; 4],
}

impl CompleteQuadrangle {
    pub fn new(vertices: [HPoint; 4]) -> Result<Self, QlError> {
        for (a, b, c) in [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)] {
            let v = |i: Index| &vertices[i as usize - 1];
            if collinear(v(a), v(b), v(c)) {
                return Err(QlError::ThreeCollinearVertices(a, b, c));
            }
        }
        Ok(CompleteQuadrangle { vertices })
    }

    pub fn vertex(&self, i: Index) -> &HPoint {
        &self.vertices[i as usize - 1]
    }

    pub fn vertices(&self) -> &[HPoint; 4] {
        &self.vertices
    }

    pub fn side(&self, a: Index, b: Index) -> HLine {
        join(self.vertex(a), self.vertex(b)).expect("distinct vertices")
    }

    pub fn diagonal_point(&self, which: DiagonalPoint) -> HPoint {
        let ((a, b), (c, d)) = which.sides();
        meet(&self.side(a, b), &self.side(c, d)).expect("opposite sides are distinct")
    }

    /// `[A1A2∩A3A4, A1A3∩A2A4, A1A4∩A2A3]`.
    pub fn diagonal_points(&self) -> [HPoint; 3] {
        DiagonalPoint::ALL.map(|d| self.diagonal_point(d))
    }
}

/// A complete quadrangle together with a line that avoids its four vertices
/// and its three diagonal points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QlPair {
    quad: CompleteQuadrangle,
    g: HLine,
}

pub fn make_qlpair(vertices: [HPoint; 4], g: HLine) -> Result<QlPair, QlError> {
    let quad = CompleteQuadrangle::new(vertices)?;
    for i in 1..=4 {
        if incident(quad.vertex(i), &g) {
            return Err(QlError::LineThroughVertex(i));
        }
    }
    for d in DiagonalPoint::ALL {
        if incident(&quad.diagonal_point(d), &g) {
            return Err(QlError::LineThroughDiagonalPoint(d));
        }
    }
    Ok(QlPair { quad, g })
}

impl QlPair {
    pub fn quad(&self) -> &CompleteQuadrangle {
        &self.quad
    }

    pub fn g(&self) -> &HLine {
        &self.g
    }

    pub fn vertex(&self, i: Index) -> &HPoint {
        self.quad.vertex(i)
    }

    pub fn side(&self, a: Index, b: Index) -> HLine {
        self.quad.side(a, b)
    }

    /// `U_ab = g ∩ A_a A_b`.
    pub fn u(&self, a: Index, b: Index) -> HPoint {
        meet(&self.g, &self.side(a, b)).expect("g is not a side")
    }

    /// All six `U` points, in [`PAIRS`] order.
    pub fn u_points(&self) -> [HPoint; 6] {
        PAIRS.map(|(a, b)| self.u(a, b))
    }

    /// Sharygin point `M_ab^c = A_a U_bd ∩ A_b A_c`.
    pub fn m(&self, a: Index, b: Index, c: Index) -> HPoint {
        let d = fourth(a, b, c);
        let through_u = join(self.vertex(a), &self.u(b, d)).expect("U_bd is not a vertex");
        meet(&through_u, &self.side(b, c)).expect("distinct lines")
    }

    /// `G_ab` from its defining meet `A_a A_b ∩ M_ab^c M_ab^d`.
    pub fn g_point_raw(&self, a: Index, b: Index) -> HPoint {
        let (c, d) = others(a, b);
        let l = join(&self.m(a, b, c), &self.m(a, b, d)).expect("distinct Sharygin points");
        meet(&l, &self.side(a, b)).expect("distinct lines")
    }

    /// Relabel vertices: vertex `i` of the result is vertex `perm[i-1]` here.
    pub fn relabeled(&self, perm: [Index; 4]) -> QlPair {
        let vertices = perm.map(|p| self.vertex(p).clone());
        make_qlpair(vertices, self.g.clone()).expect("relabeling preserves validity")
    }
}

/// A permutation `(i, j, k, s)` of `1..=4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSelection {
    pub i: Index,
    pub j: Index,
    pub k: Index,
    pub s: Index,
}

impl IndexSelection {
    pub fn new(i: Index, j: Index, k: Index, s: Index) -> Result<Self, QlError> {
        let mut sorted = [i, j, k, s];
        sorted.sort_unstable();
        if sorted != [1, 2, 3, 4] {
            return Err(QlError::InvalidSelection);
        }
        Ok(IndexSelection { i, j, k, s })
    }

    /// All 24 permutations in lexicographic order.
    pub fn all() -> Vec<IndexSelection> {
        let mut out = Vec::with_capacity(24);
        for i in 1..=4 {
            for j in 1..=4 {
                for k in 1..=4 {
                    if i != j && j != k && i != k {
                        out.push(IndexSelection { i, j, k, s: fourth(i, j, k) });
                    }
                }
            }
        }
        out
    }

    pub fn swapped_ij(self) -> Self {
        IndexSelection { i: self.j, j: self.i, ..self }
    }

    pub fn swapped_ks(self) -> Self {
        IndexSelection { k: self.s, s: self.k, ..self }
    }
}

impl fmt::Display for IndexSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.i, self.j, self.k, self.s)
    }
}

/// The four Sharygin points of a vertex pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharyginQuartet {
    pub m_ij_k: HPoint,
    pub m_ji_s: HPoint,
    pub m_ij_s: HPoint,
    pub m_ji_k: HPoint,
}

pub fn sharygin_quartet(ql: &QlPair, sel: IndexSelection) -> Result<SharyginQuartet, QlError> {
    let IndexSelection { i, j, k, s } = sel;
    let q = SharyginQuartet {
        m_ij_k: ql.m(i, j, k),
        m_ji_s: ql.m(j, i, s),
        m_ij_s: ql.m(i, j, s),
        m_ji_k: ql.m(j, i, k),
    };
    let checks = [
        (&q.m_ij_k, j, k),
        (&q.m_ji_s, i, s),
        (&q.m_ij_s, j, s),
        (&q.m_ji_k, i, k),
    ];
    for (p, a, b) in checks {
        if !incident(p, &ql.side(a, b)) {
            return Err(QlError::IncidenceViolation(format!("{p} not on A{a}A{b}")));
        }
        if (1..=4).any(|v| ql.vertex(v) == p) {
            return Err(QlError::DegenerateConfiguration(format!(
                "Sharygin point {p} coincides with a vertex"
            )));
        }
    }
    Ok(q)
}

/// The quartet attached to the opposite pair `(s, k)`, i.e. `M_sk^j`,
/// `M_ks^i`, `M_sk^i`, `M_ks^j`.
pub fn dual_quartet(ql: &QlPair, sel: IndexSelection) -> Result<SharyginQuartet, QlError> {
    let IndexSelection { i, j, k, s } = sel;
    sharygin_quartet(ql, IndexSelection { i: s, j: k, k: j, s: i })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxPoints {
    pub i: HPoint,
    pub i_prime: HPoint,
    pub j: HPoint,
    pub j_prime: HPoint,
    pub l: HPoint,
    pub l_prime: HPoint,
    pub i_bar: HPoint,
    pub j_bar: HPoint,
    pub j_check: HPoint,
}

pub fn aux_points(ql: &QlPair, sel: IndexSelection) -> Result<AuxPoints, QlError> {
    let IndexSelection { i, j, k, s } = sel;
    let a = |x: Index| ql.vertex(x);
    let side = |x, y| ql.side(x, y);
    let cev = |x: Index, p: Index, q: Index| join(a(x), &ql.u(p, q));
    Ok(AuxPoints {
        i: meet(&side(i, k), &side(j, s))?,
        i_prime: meet(&side(i, s), &side(j, k))?,
        j: meet(&cev(i, j, s)?, &cev(j, i, k)?)?,
        j_prime: meet(&cev(i, j, k)?, &cev(j, i, s)?)?,
        l: meet(&cev(k, j, s)?, &cev(s, i, k)?)?,
        l_prime: meet(&cev(s, j, k)?, &cev(k, i, s)?)?,
        i_bar: meet(&side(i, j), &side(s, k))?,
        j_bar: meet(&cev(j, s, k)?, &cev(s, i, j)?)?,
        j_check: meet(&cev(j, i, s)?, &cev(s, j, k)?)?,
    })
}

fn line(p: &HPoint, q: &HPoint, what: &str) -> Result<HLine, QlError> {
    join(p, q).map_err(|_| QlError::DegenerateConfiguration(format!("{what}: points coincide")))
}

fn assert_concurrent(lines: &[HLine], at: &HPoint, what: &str) -> Result<(), QlError> {
    match lines.iter().position(|l| !incident(at, l)) {
        None => Ok(()),
        Some(n) => Err(QlError::ConcurrencyViolation(format!(
            "{what}: line #{} misses {at}",
            n + 1
        ))),
    }
}

/// The five lines through `G_ij`: `M_ij^k M_ij^s`, `M_ji^s M_ji^k`,
/// `A_i A_j`, `J I`, `J' I'`.
pub fn g_point_lines(ql: &QlPair, sel: IndexSelection) -> Result<[HLine; 5], QlError> {
    let q = sharygin_quartet(ql, sel)?;
    let aux = aux_points(ql, sel)?;
    Ok([
        line(&q.m_ij_k, &q.m_ij_s, "M_ij^k M_ij^s")?,
        line(&q.m_ji_s, &q.m_ji_k, "M_ji^s M_ji^k")?,
        ql.side(sel.i, sel.j),
        line(&aux.j, &aux.i, "J I")?,
        line(&aux.j_prime, &aux.i_prime, "J' I'")?,
    ])
}

/// `G_ij`, checked against the five-fold concurrency of its defining lines.
pub fn g_point(ql: &QlPair, i: Index, j: Index) -> Result<HPoint, QlError> {
    let (k, s) = others(i, j);
    let sel = IndexSelection::new(i, j, k, s)?;
    let g = ql.g_point_raw(i, j);
    assert_concurrent(&g_point_lines(ql, sel)?, &g, &format!("G{i}{j}"))?;
    Ok(g)
}

/// The six points `[A_i, A_j, M_ij^k, M_ij^s, M_ji^k, M_ji^s]` with `k < s`.
pub fn sharygin_curve_points(ql: &QlPair, i: Index, j: Index) -> [HPoint; 6] {
    let (k, s) = others(i, j);
    [
        ql.vertex(i).clone(),
        ql.vertex(j).clone(),
        ql.m(i, j, k),
        ql.m(i, j, s),
        ql.m(j, i, k),
        ql.m(j, i, s),
    ]
}

/// Fit the conic through all of `points` except `points[omit]`, then check
/// the omitted one lies on it.
pub fn fit_and_check(points: &[HPoint], omit: usize, what: &str) -> Result<Conic, QlError> {
    let chosen: Vec<&HPoint> = points
        .iter()
        .enumerate()
        .filter(|(n, _)| *n != omit)
        .map(|(_, p)| p)
        .take(5)
        .collect();
    let conic = conic_through_five([chosen[0], chosen[1], chosen[2], chosen[3], chosen[4]])
        .map_err(|_| QlError::DegenerateConfiguration(format!("{what}: five points fix no unique conic")))?;
    if !on_conic(&points[omit], &conic) {
        return Err(QlError::IncidenceViolation(format!(
            "{what}: {} not on fitted conic",
            points[omit]
        )));
    }
    Ok(conic)
}

/// Sharygin's curve `k_ij`: fitted through `A_i, A_j, M_ij^k, M_ij^s,
/// M_ji^k` and checked on `M_ji^s`. May be degenerate (flag set).
pub fn sharygin_curve(ql: &QlPair, i: Index, j: Index) -> Result<Conic, QlError> {
    fit_and_check(&sharygin_curve_points(ql, i, j), 5, &format!("k{i}{j}"))
}

/// All six G-points in [`PAIRS`] order, without postcondition checks.
pub fn g_points_raw(ql: &QlPair) -> [HPoint; 6] {
    PAIRS.map(|(a, b)| ql.g_point_raw(a, b))
}

/// The nine-point conic: fitted through `G12, G13, G14, G23, G24`, checked on
/// `G34` and the three diagonal points.
pub fn nine_point_conic(ql: &QlPair) -> Result<Conic, QlError> {
    let g = g_points_raw(ql);
    let conic = fit_and_check(&g, 5, "nine-point conic")?;
    for d in ql.quad.diagonal_points() {
        if !on_conic(&d, &conic) {
            return Err(QlError::IncidenceViolation(format!(
                "nine-point conic misses diagonal point {d}"
            )));
        }
    }
    Ok(conic)
}

/// `G = G12G34 ∩ G13G24`, checked on `G14G23` and against the pole of `g`.
pub fn nine_point_pole(ql: &QlPair) -> Result<HPoint, QlError> {
    let [g12, g13, g14, g23, g24, g34] = g_points_raw(ql);
    let lines = [
        line(&g12, &g34, "G12 G34")?,
        line(&g13, &g24, "G13 G24")?,
        line(&g14, &g23, "G14 G23")?,
    ];
    let center = meet(&lines[0], &lines[1])
        .map_err(|_| QlError::DegenerateConfiguration("G12G34 = G13G24".into()))?;
    assert_concurrent(&lines, &center, "G")?;
    let k9 = nine_point_conic(ql)?;
    let p = pole(ql.g(), &k9)?;
    if p != center {
        return Err(QlError::IncidenceViolation(format!(
            "pole of g is {p}, diagonal meet is {center}"
        )));
    }
    Ok(center)
}

/// The six lines of each of the two six-fold concurrencies at `O` and `O'`.
pub fn center_lines(ql: &QlPair, sel: IndexSelection) -> Result<([HLine; 6], [HLine; 6]), QlError> {
    let IndexSelection { i, j, k, s } = sel;
    let a = |x: Index| ql.vertex(x);
    let aux = aux_points(ql, sel)?;
    let o = [
        line(a(i), &ql.m(k, s, j), "A_i M_ks^j")?,
        line(a(j), &ql.m(s, k, i), "A_j M_sk^i")?,
        line(a(s), &ql.m(i, j, k), "A_s M_ij^k")?,
        line(a(k), &ql.m(j, i, s), "A_k M_ji^s")?,
        line(&aux.j, &aux.i, "J I")?,
        line(&aux.i_prime, &aux.l_prime, "I' L'")?,
    ];
    let o_prime = [
        line(a(i), &ql.m(s, k, j), "A_i M_sk^j")?,
        line(a(j), &ql.m(k, s, i), "A_j M_ks^i")?,
        line(a(s), &ql.m(j, i, k), "A_s M_ji^k")?,
        line(a(k), &ql.m(i, j, s), "A_k M_ij^s")?,
        line(&aux.i_prime, &aux.j_prime, "I' J'")?,
        line(&aux.l, &aux.i, "L I")?,
    ];
    Ok((o, o_prime))
}

/// The perspective centers `O` and `O'`, each checked on its six lines.
pub fn centers(ql: &QlPair, sel: IndexSelection) -> Result<(HPoint, HPoint), QlError> {
    let (lo, lo_prime) = center_lines(ql, sel)?;
    let pick = |lines: &[HLine; 6], name: &str| -> Result<HPoint, QlError> {
        match common_point(lines) {
            Ok(Some(p)) => Ok(p),
            Ok(None) => Err(QlError::DegenerateConfiguration(format!("{name}: all lines coincide"))),
            Err(()) => Err(QlError::ConcurrencyViolation(format!("{name}: six lines not concurrent"))),
        }
    };
    Ok((pick(&lo, "O")?, pick(&lo_prime, "O'")?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homologies {
    pub o: HPoint,
    pub o_prime: HPoint,
    pub phi: ProjMap,
    pub phi_prime: ProjMap,
}

/// The six correspondences of each homology: `(pre-image, image, label)`.
pub fn homology_correspondences(
    ql: &QlPair,
    sel: IndexSelection,
) -> Result<(Vec<(HPoint, HPoint, String)>, Vec<(HPoint, HPoint, String)>), QlError> {
    let IndexSelection { i, j, k, s } = sel;
    let a = |x: Index| ql.vertex(x).clone();
    let aux = aux_points(ql, sel)?;
    let phi = vec![
        (a(i), ql.m(k, s, j), "A_i -> M_ks^j".to_string()),
        (a(j), ql.m(s, k, i), "A_j -> M_sk^i".to_string()),
        (ql.m(j, i, s), a(k), "M_ji^s -> A_k".to_string()),
        (ql.m(i, j, k), a(s), "M_ij^k -> A_s".to_string()),
        (aux.j.clone(), aux.i.clone(), "J -> I".to_string()),
        (aux.i_prime.clone(), aux.l_prime.clone(), "I' -> L'".to_string()),
    ];
    let phi_prime = vec![
        (a(i), ql.m(s, k, j), "A_i -> M_sk^j".to_string()),
        (a(j), ql.m(k, s, i), "A_j -> M_ks^i".to_string()),
        (ql.m(i, j, s), a(k), "M_ij^s -> A_k".to_string()),
        (ql.m(j, i, k), a(s), "M_ji^k -> A_s".to_string()),
        (aux.j_prime.clone(), aux.i_prime.clone(), "J' -> I'".to_string()),
        (aux.i.clone(), aux.l.clone(), "I -> L".to_string()),
    ];
    Ok((phi, phi_prime))
}

/// `Phi` with center `O` and `Phi'` with center `O'`, both with axis `g`,
/// fixed by `A_i -> M_ks^j` and `A_i -> M_sk^j`; the remaining five
/// correspondences of each are checked.
pub fn homologies(ql: &QlPair, sel: IndexSelection) -> Result<Homologies, QlError> {
    let (o, o_prime) = centers(ql, sel)?;
    let (rows, rows_prime) = homology_correspondences(ql, sel)?;
    let build = |center: &HPoint, rows: &[(HPoint, HPoint, String)], name: &str| {
        let map = homology_from(center, ql.g(), &rows[0].0, &rows[0].1)?;
        for (pre, img, label) in rows {
            let got = apply_map(&map, pre);
            if got != *img {
                return Err(QlError::MappingViolation(format!("{name}: {label} gives {got}")));
            }
        }
        Ok::<_, QlError>(map)
    };
    let phi = build(&o, &rows, "Phi")?;
    let phi_prime = build(&o_prime, &rows_prime, "Phi'")?;
    Ok(Homologies { o, o_prime, phi, phi_prime })
}

/// Chart on `g` with base points on the coordinate axes when that is
/// possible, else `U12` and `U13`.
pub fn canonical_chart(ql: &QlPair) -> LineChart {
    let g = ql.g();
    let x0 = HLine::from_ints(1, 0, 0).unwrap();
    let y0 = HLine::from_ints(0, 1, 0).unwrap();
    if *g != x0 && *g != y0 {
        let b0 = meet(g, &x0).unwrap();
        let b1 = meet(g, &y0).unwrap();
        if b0 != b1 {
            return LineChart::on_line(g, b0, b1).expect("both meets lie on g");
        }
    }
    LineChart::on_line(g, ql.u(1, 2), ql.u(1, 3)).expect("U12 != U13")
}

/// The involution the quadrangle cuts on `g`, fitted from `(U12, U34)` and
/// `(U13, U24)` and checked on `(U14, U23)`.
pub fn pappus_desargues_involution(ql: &QlPair) -> Result<LineInvolution, QlError> {
    involution_on_chart(ql, &canonical_chart(ql))
}

pub fn involution_on_chart(ql: &QlPair, chart: &LineChart) -> Result<LineInvolution, QlError> {
    let u = |a, b| ql.u(a, b);
    let inv = involution_from_pairs(chart, (&u(1, 2), &u(3, 4)), (&u(1, 3), &u(2, 4)))?;
    if apply_involution(&inv, &u(1, 4))? != u(2, 3) {
        return Err(QlError::ThirdPairMismatch);
    }
    Ok(inv)
}

#[cfg(test)]
mod tests;
