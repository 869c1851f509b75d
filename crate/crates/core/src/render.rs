//! Static SVG figures of a configuration.
//!
//! All geometry stays exact until the final pixel transform, which rounds
//! to three decimals. Conics are drawn through a rational parametrization
//! from a known point on the curve, so every path vertex is an exact point
//! of the conic (see [`sample_conic`]).

use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::conic::{on_conic, Conic};
use crate::linalg::{dot, mat_vec, Vec3};
use crate::projective::{euclidean_extract, join, Affine, HLine, HPoint};
use crate::rational::{int, parse_rational, to_fixed, Rational};
use crate::sharygin::{
    aux_points, center_lines, centers, dual_quartet, g_point, g_point_lines, nine_point_conic,
    nine_point_pole, sharygin_curve, sharygin_quartet, DiagonalPoint, Index, IndexSelection,
    QlError, QlPair, PAIRS,
};

/// Parameter samples per full turn of the pencil through the base point.
pub const CONIC_SAMPLES: i64 = 128;
pub const DEFAULT_SIZE_PX: u32 = 800;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("invalid viewport: {0}")]
    InvalidViewport(String),
    #[error("no finite element intersects the viewport")]
    EmptyViewport,
    #[error("unknown preset '{0}' (expected one of quartets, theorem6, curves, prop4, ninepoint)")]
    UnknownPreset(String),
    #[error("cannot sample conic: {0}")]
    Sampling(&'static str),
    #[error(transparent)]
    Construction(#[from] QlError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Viewport {
    pub x_min: Rational,
    pub y_min: Rational,
    pub x_max: Rational,
    pub y_max: Rational,
    pub width_px: u32,
    pub height_px: u32,
}

impl Viewport {
    pub fn new(
        x_min: Rational,
        y_min: Rational,
        x_max: Rational,
        y_max: Rational,
        width_px: u32,
        height_px: u32,
    ) -> Result<Self, RenderError> {
        if x_min >= x_max || y_min >= y_max {
            return Err(RenderError::InvalidViewport("need x_min < x_max and y_min < y_max".into()));
        }
        if width_px == 0 || height_px == 0 {
            return Err(RenderError::InvalidViewport("pixel size must be positive".into()));
        }
        Ok(Viewport { x_min, y_min, x_max, y_max, width_px, height_px })
    }

    /// `"x_min,y_min,x_max,y_max"` with rational entries.
    pub fn parse(bounds: &str, width_px: u32, height_px: u32) -> Result<Self, RenderError> {
        let parts: Vec<&str> = bounds.split(',').collect();
        if parts.len() != 4 {
            return Err(RenderError::InvalidViewport(format!("expected 4 comma-separated bounds, got '{bounds}'")));
        }
        let mut v = Vec::with_capacity(4);
        for p in parts {
            v.push(parse_rational(p).map_err(|e| RenderError::InvalidViewport(e.to_string()))?);
        }
        let [a, b, c, d]: [Rational; 4] = v.try_into().expect("four bounds");
        Viewport::new(a, b, c, d, width_px, height_px)
    }

    /// Bounding box of the finite points with a margin, widened to the
    /// pixel aspect ratio so circles stay round.
    pub fn around(points: &[HPoint], width_px: u32, height_px: u32) -> Result<Self, RenderError> {
        let finite: Vec<(Rational, Rational)> = points.iter().filter_map(finite_xy).collect();
        let Some((x0, y0)) = finite.first().cloned() else {
            return Err(RenderError::EmptyViewport);
        };
        let (mut x_min, mut x_max, mut y_min, mut y_max) = (x0.clone(), x0, y0.clone(), y0);
        for (x, y) in &finite {
            x_min = x_min.min(x.clone());
            x_max = x_max.max(x.clone());
            y_min = y_min.min(y.clone());
            y_max = y_max.max(y.clone());
        }
        let mut span = (&x_max - &x_min).max(&y_max - &y_min);
        if span.is_zero() {
            span = int(1);
        }
        let margin = span / int(8);
        let (mut w, mut h) = (&x_max - &x_min + &margin * int(2), &y_max - &y_min + &margin * int(2));
        let (cx, cy) = ((&x_min + &x_max) / int(2), (&y_min + &y_max) / int(2));
        let aspect = Rational::new(width_px.into(), height_px.max(1).into());
        if &w / &h < aspect {
            w = &h * &aspect;
        } else {
            h = &w / &aspect;
        }
        let (hw, hh) = (w / int(2), h / int(2));
        Viewport::new(&cx - &hw, &cy - &hh, cx + hw, cy + hh, width_px, height_px)
    }

    fn contains(&self, x: &Rational, y: &Rational) -> bool {
        *x >= self.x_min && *x <= self.x_max && *y >= self.y_min && *y <= self.y_max
    }

    /// The viewport grown by its own size on every side.
    fn expanded_contains(&self, x: &Rational, y: &Rational) -> bool {
        let w = &self.x_max - &self.x_min;
        let h = &self.y_max - &self.y_min;
        *x >= &self.x_min - &w && *x <= &self.x_max + &w && *y >= &self.y_min - &h && *y <= &self.y_max + &h
    }

    fn to_px(&self, x: &Rational, y: &Rational) -> (Rational, Rational) {
        let px = (x - &self.x_min) * int(self.width_px.into()) / (&self.x_max - &self.x_min);
        let py = (&self.y_max - y) * int(self.height_px.into()) / (&self.y_max - &self.y_min);
        (px, py)
    }

    fn center(&self) -> (Rational, Rational) {
        ((&self.x_min + &self.x_max) / int(2), (&self.y_min + &self.y_max) / int(2))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    /// Sides, g, the Sharygin quartets of a selection and the lines MN, A_sM, A_kN and IJ.
    Quartets,
    /// Quartets, auxiliary points, the centers `O`, `O'` and their lines.
    Theorem6,
    /// The six Sharygin curves with their G-points.
    Curves,
    /// G-points, U-points and the lines `G_ij G_js`.
    Prop4,
    /// The nine-point conic, its nine points and `G`.
    NinePoint,
}

impl Preset {
    pub const ALL: [Preset; 5] = [Preset::Quartets, Preset::Theorem6, Preset::Curves, Preset::Prop4, Preset::NinePoint];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Quartets => "quartets",
            Preset::Theorem6 => "theorem6",
            Preset::Curves => "curves",
            Preset::Prop4 => "prop4",
            Preset::NinePoint => "ninepoint",
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = RenderError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| RenderError::UnknownPreset(s.to_string()))
    }
}

/// One connected piece of a sampled conic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    pub points: Vec<HPoint>,
    /// True for an ellipse traversed once without passing through ω.
    pub closed: bool,
}

fn sgn(v: &BigInt) -> i32 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// Samples a non-degenerate conic through a finite point `base` on it.
///
/// Line directions `(1 - u², 2u)` for `u = -1 + 2t/N` sweep every line of
/// the pencil at `base` once; each meets the conic again at
/// `Q(D)·B - 2(BᵀMD)·D`. The unnormalized `w` of that vector changes sign
/// exactly where the point crosses ω, which is where branches split.
pub fn sample_conic(c: &Conic, base: &HPoint) -> Result<Vec<Branch>, RenderError> {
    if c.is_degenerate() {
        return Err(RenderError::Sampling("degenerate conic"));
    }
    if !on_conic(base, c) {
        return Err(RenderError::Sampling("base point is not on the conic"));
    }
    if base.is_at_infinity() {
        return Err(RenderError::Sampling("base point is at infinity"));
    }
    let m = c.matrix();
    let mut b: Vec3 = base.coords().clone();
    if b[2].is_negative() {
        b = b.map(|x| -x);
    }
    let mb = mat_vec(m, &b);
    let n = CONIC_SAMPLES;
    let dir = |t: i64| -> Vec3 {
        let u = 2 * t - n;
        [BigInt::from(n * n - u * u), BigInt::from(2 * u * n), BigInt::zero()]
    };
    let point = |d: &Vec3| -> (Vec3, BigInt) {
        let q = dot(d, &mat_vec(m, d));
        let l2 = dot(&mb, d) * 2;
        (std::array::from_fn(|i| &q * &b[i] - &l2 * &d[i]), q)
    };

    // Raw samples, with the base point slotted in where the tangent falls.
    let mut raw: Vec<Vec3> = Vec::with_capacity(n as usize + 1);
    for t in 0..n {
        let d = dir(t);
        let (v, q) = point(&d);
        raw.push(v);
        let here = sgn(&dot(&mb, &d));
        let next = sgn(&dot(&mb, &dir(t + 1)));
        if here != 0 && next != 0 && here != next {
            let s = if q.is_negative() { -1 } else { 1 };
            raw.push(b.clone().map(|x| x * s));
        }
    }

    let affine = c.affine_type_sign();
    let w_sign: Vec<i32> = raw.iter().map(|v| sgn(&v[2])).collect();
    let len = raw.len();
    // Start right after a crossing of ω so no branch wraps around the end.
    let mut start = (0..len).find(|&k| w_sign[k] == 0 || w_sign[k] != w_sign[(k + 1) % len]).map(|k| (k + 1) % len);
    if start.is_none() && affine == 0 {
        // Parabola: the single point at infinity was not sampled exactly.
        // Break where the sweep passes its axis direction.
        let (a, h, bb) = (&m[0][0], &m[0][1], &m[1][1]);
        let axis = if bb.is_zero() && h.is_zero() { [h.clone(), -a.clone()] } else { [bb.clone(), -h.clone()] };
        let side = |v: &Vec3| {
            // direction of the raw point from the base point
            let dx = &v[0] * &b[2] - &b[0] * &v[2];
            let dy = &v[1] * &b[2] - &b[1] * &v[2];
            sgn(&(dx * &axis[1] - dy * &axis[0]))
        };
        let s: Vec<i32> = raw.iter().map(side).collect();
        start = Some((0..len).find(|&k| s[k] != 0 && s[(k + 1) % len] != 0 && s[k] != s[(k + 1) % len]).map_or(0, |k| k + 1) % len);
    }

    let mut branches = Vec::new();
    let Some(start) = start else {
        let points = raw.into_iter().filter_map(|v| HPoint::from_coords(v).ok()).collect();
        return Ok(vec![Branch { points, closed: true }]);
    };
    let mut current: Vec<HPoint> = Vec::new();
    let mut prev = 0;
    for k in 0..len {
        let idx = (start + k) % len;
        let s = w_sign[idx];
        if (s == 0 || (prev != 0 && s != prev)) && !current.is_empty() {
            branches.push(Branch { points: std::mem::take(&mut current), closed: false });
        }
        if s != 0 {
            if let Ok(p) = HPoint::from_coords(raw[idx].clone()) {
                current.push(p);
            }
        }
        prev = s;
    }
    if !current.is_empty() {
        branches.push(Branch { points: current, closed: false });
    }
    Ok(branches)
}

fn finite_xy(p: &HPoint) -> Option<(Rational, Rational)> {
    match euclidean_extract(p) {
        Affine::Finite(x, y) => Some((x, y)),
        Affine::AtInfinity { .. } => None,
    }
}

pub fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn fx(v: &Rational) -> String {
    to_fixed(v, 3)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mark {
    Vertex,
    Plain,
    Center,
}

/// What a preset draws, before any pixel work.
struct Figure {
    title: String,
    sides: Vec<HLine>,
    g: HLine,
    lines: Vec<(String, HLine)>,
    conics: Vec<(String, Conic, Vec<HPoint>)>,
    points: Vec<(String, HPoint, Mark)>,
}

impl Figure {
    fn point(&mut self, label: impl Into<String>, p: &HPoint, mark: Mark) {
        let label = label.into();
        if !self.points.iter().any(|(l, _, _)| *l == label) {
            self.points.push((label, p.clone(), mark));
        }
    }

    fn line(&mut self, label: impl Into<String>, l: HLine) {
        if !self.lines.iter().any(|(_, m)| *m == l) && !self.sides.contains(&l) && l != self.g {
            self.lines.push((label.into(), l));
        }
    }

    fn join(&mut self, label: impl Into<String>, p: &HPoint, q: &HPoint) {
        if let Ok(l) = join(p, q) {
            self.line(label, l);
        }
    }
}

fn m_label(a: Index, b: Index, c: Index) -> String {
    format!("M_{a}{b}^{c}")
}

fn diagonal_label(d: DiagonalPoint) -> String {
    let ((a, b), (c, e)) = d.sides();
    format!("D{a}{b}_{c}{e}")
}

fn quartet_points(fig: &mut Figure, ql: &QlPair, sel: IndexSelection) {
    let IndexSelection { i, j, k, s } = sel;
    for (a, b, c) in [(i, j, k), (j, i, s), (i, j, s), (j, i, k), (s, k, j), (k, s, i), (s, k, i), (k, s, j)] {
        fig.point(m_label(a, b, c), &ql.m(a, b, c), Mark::Plain);
    }
}

fn build(ql: &QlPair, preset: Preset, sel: IndexSelection) -> Result<Figure, RenderError> {
    let IndexSelection { i, j, k, s } = sel;
    let mut fig = Figure {
        title: format!("{preset} ({sel})"),
        sides: PAIRS.iter().map(|&(a, b)| ql.side(a, b)).collect(),
        g: ql.g().clone(),
        lines: Vec::new(),
        conics: Vec::new(),
        points: Vec::new(),
    };
    for v in 1..=4 {
        fig.point(format!("A{v}"), ql.vertex(v), Mark::Vertex);
    }
    match preset {
        Preset::Quartets => {
            sharygin_quartet(ql, sel)?;
            dual_quartet(ql, sel)?;
            quartet_points(&mut fig, ql, sel);
            for (a, b) in PAIRS {
                fig.point(format!("U{a}{b}"), &ql.u(a, b), Mark::Plain);
            }
            let aux = aux_points(ql, sel)?;
            fig.point("I", &aux.i, Mark::Plain);
            fig.point("J", &aux.j, Mark::Plain);
            let (mm, nn) = (ql.m(i, j, k), ql.m(j, i, s));
            fig.join("MN", &mm, &nn);
            fig.join("A_sM", ql.vertex(s), &mm);
            fig.join("A_kN", ql.vertex(k), &nn);
            fig.join("IJ", &aux.i, &aux.j);
        }
        Preset::Theorem6 => {
            quartet_points(&mut fig, ql, sel);
            let aux = aux_points(ql, sel)?;
            for (label, p) in [
                ("I", &aux.i),
                ("I′", &aux.i_prime),
                ("Ī", &aux.i_bar),
                ("J", &aux.j),
                ("J′", &aux.j_prime),
                ("J̄", &aux.j_bar),
                ("L", &aux.l),
                ("L′", &aux.l_prime),
            ] {
                fig.point(label, p, Mark::Plain);
            }
            let (o, o_prime) = centers(ql, sel)?;
            fig.point("O", &o, Mark::Plain);
            fig.point("O′", &o_prime, Mark::Plain);
            let (lo, lo_prime) = center_lines(ql, sel)?;
            for l in lo {
                fig.line("O", l);
            }
            for l in lo_prime {
                fig.line("O′", l);
            }
            let opposite = IndexSelection { i: s, j: k, k: j, s: i };
            for (a, b, pick) in [(i, j, sel), (s, k, opposite)] {
                let label = format!("G{}{}", a.min(b), a.max(b));
                fig.point(&label, &g_point(ql, a, b)?, Mark::Plain);
                for l in g_point_lines(ql, pick)? {
                    fig.line(&label, l);
                }
            }
        }
        Preset::Curves => {
            for (a, b) in PAIRS {
                let label = format!("G{a}{b}");
                fig.point(&label, &g_point(ql, a, b)?, Mark::Center);
                if let Ok(c) = sharygin_curve(ql, a, b) {
                    let (x, y) = crate::sharygin::others(a, b);
                    let bases = vec![ql.vertex(a).clone(), ql.vertex(b).clone(), ql.m(a, b, x), ql.m(a, b, y)];
                    fig.conics.push((format!("k{a}{b}"), c, bases));
                }
            }
        }
        Preset::Prop4 => {
            let gs: Vec<((Index, Index), HPoint)> =
                PAIRS.iter().map(|&(a, b)| g_point(ql, a, b).map(|p| ((a, b), p))).collect::<Result<_, _>>()?;
            for ((a, b), p) in &gs {
                fig.point(format!("G{a}{b}"), p, Mark::Plain);
                fig.point(format!("U{a}{b}"), &ql.u(*a, *b), Mark::Plain);
            }
            for (x, (pa, p)) in gs.iter().enumerate() {
                for (pb, q) in &gs[x + 1..] {
                    let shares = pa.0 == pb.0 || pa.0 == pb.1 || pa.1 == pb.0 || pa.1 == pb.1;
                    if shares {
                        fig.join(format!("G{}{}G{}{}", pa.0, pa.1, pb.0, pb.1), p, q);
                    }
                }
            }
        }
        Preset::NinePoint => {
            let mut bases = Vec::new();
            for (a, b) in PAIRS {
                let p = g_point(ql, a, b)?;
                fig.point(format!("G{a}{b}"), &p, Mark::Plain);
                bases.push(p);
            }
            for (d, p) in DiagonalPoint::ALL.into_iter().zip(ql.quad().diagonal_points()) {
                fig.point(diagonal_label(d), &p, Mark::Plain);
                bases.push(p);
            }
            fig.point("G", &nine_point_pole(ql)?, Mark::Center);
            fig.conics.push(("k9".into(), nine_point_conic(ql)?, bases));
        }
    }
    Ok(fig)
}

/// Default viewport: the vertices, plus every figure point not absurdly far
/// from them.
pub fn default_viewport(ql: &QlPair, preset: Preset, sel: IndexSelection) -> Result<Viewport, RenderError> {
    let fig = build(ql, preset, sel)?;
    let core = Viewport::around(ql.quad().vertices(), 1, 1)?;
    let anchors: Vec<HPoint> = fig
        .points
        .iter()
        .filter(|(_, p, _)| finite_xy(p).is_some_and(|(x, y)| core.expanded_contains(&x, &y)))
        .map(|(_, p, _)| p.clone())
        .collect();
    Viewport::around(&anchors, DEFAULT_SIZE_PX, DEFAULT_SIZE_PX)
}

/// Exact endpoints of the part of `l` inside the viewport.
fn clip_line(l: &HLine, vp: &Viewport) -> Option<[(Rational, Rational); 2]> {
    let [a, b, c] = l.to_rationals();
    let mut hits: Vec<(Rational, Rational)> = Vec::new();
    if !b.is_zero() {
        for x in [&vp.x_min, &vp.x_max] {
            let y = -(&a * x + &c) / &b;
            if y >= vp.y_min && y <= vp.y_max {
                hits.push((x.clone(), y));
            }
        }
    }
    if !a.is_zero() {
        for y in [&vp.y_min, &vp.y_max] {
            let x = -(&b * y + &c) / &a;
            if x >= vp.x_min && x <= vp.x_max {
                hits.push((x, y.clone()));
            }
        }
    }
    hits.sort();
    hits.dedup();
    if hits.len() < 2 {
        return None;
    }
    let last = hits.pop().unwrap();
    Some([hits.swap_remove(0), last])
}

/// Where the ray from the viewport center in direction `(dx, dy)` leaves it.
fn edge_hit(vp: &Viewport, dx: &BigInt, dy: &BigInt) -> Option<Rational> {
    let (cx, cy) = vp.center();
    let (dx, dy) = (Rational::from_integer(dx.clone()), Rational::from_integer(dy.clone()));
    let mut t: Option<Rational> = None;
    let mut take = |bound: &Rational, c: &Rational, d: &Rational| {
        if !d.is_zero() {
            let v = (bound - c) / d;
            if v.is_positive() && t.as_ref().is_none_or(|t| v < *t) {
                t = Some(v);
            }
        }
    };
    take(&vp.x_min, &cx, &dx);
    take(&vp.x_max, &cx, &dx);
    take(&vp.y_min, &cy, &dy);
    take(&vp.y_max, &cy, &dy);
    t
}

struct Layers {
    vp: Viewport,
    visible: usize,
    sides: String,
    g: String,
    lines: String,
    conics: String,
    points: String,
    arrows: String,
    labels: String,
}

impl Layers {
    fn px(&self, x: &Rational, y: &Rational) -> (Rational, Rational) {
        self.vp.to_px(x, y)
    }

    fn segment(&mut self, l: &HLine, class: &str, which: Layer) {
        let Some([(x1, y1), (x2, y2)]) = clip_line(l, &self.vp) else {
            return;
        };
        self.visible += 1;
        let (p1, q1) = self.px(&x1, &y1);
        let (p2, q2) = self.px(&x2, &y2);
        let out = match which {
            Layer::Sides => &mut self.sides,
            Layer::G => &mut self.g,
            Layer::Lines => &mut self.lines,
        };
        let _ = writeln!(
            out,
            r#"<line class="{}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            xml_escape(class),
            fx(&p1),
            fx(&q1),
            fx(&p2),
            fx(&q2)
        );
    }

    fn label(&mut self, text: &str, px: &Rational, py: &Rational) {
        let _ = writeln!(
            self.labels,
            r#"<text x="{}" y="{}">{}</text>"#,
            fx(&(px + int(5))),
            fx(&(py - int(5))),
            xml_escape(text)
        );
    }

    fn point(&mut self, label: &str, p: &HPoint, mark: Mark) {
        match euclidean_extract(p) {
            Affine::Finite(x, y) => {
                if !self.vp.contains(&x, &y) {
                    return;
                }
                self.visible += 1;
                let (px, py) = self.px(&x, &y);
                let (sx, sy) = (fx(&px), fx(&py));
                let _ = match mark {
                    Mark::Vertex => writeln!(self.points, r#"<circle class="vertex" cx="{sx}" cy="{sy}" r="4"/>"#),
                    Mark::Plain => writeln!(self.points, r#"<circle cx="{sx}" cy="{sy}" r="2.5"/>"#),
                    Mark::Center => writeln!(
                        self.points,
                        r#"<path class="center" d="M{} {}L{} {}M{} {}L{} {}"/>"#,
                        fx(&(&px - int(5))),
                        sy,
                        fx(&(&px + int(5))),
                        sy,
                        sx,
                        fx(&(&py - int(5))),
                        sx,
                        fx(&(&py + int(5)))
                    ),
                };
                self.label(label, &px, &py);
            }
            Affine::AtInfinity { dx, dy } => {
                let Some(t) = edge_hit(&self.vp, &dx, &dy) else {
                    return;
                };
                let (cx, cy) = self.vp.center();
                let at = |f: Rational| {
                    let x = &cx + &f * &t * Rational::from_integer(dx.clone());
                    let y = &cy + &f * &t * Rational::from_integer(dy.clone());
                    self.px(&x, &y)
                };
                let (x1, y1) = at(Rational::new(17.into(), 20.into()));
                let (x2, y2) = at(Rational::new(19.into(), 20.into()));
                let _ = writeln!(
                    self.arrows,
                    r#"<line class="infinite" x1="{}" y1="{}" x2="{}" y2="{}" marker-end="url(#arrow)"/>"#,
                    fx(&x1),
                    fx(&y1),
                    fx(&x2),
                    fx(&y2)
                );
                self.label(&format!("{label}∞"), &x1, &y1);
            }
        }
    }

    fn conic(&mut self, label: &str, c: &Conic, bases: &[HPoint]) {
        let Some(base) = bases.iter().find(|p| !p.is_at_infinity() && on_conic(p, c)) else {
            return;
        };
        let Ok(branches) = sample_conic(c, base) else {
            return;
        };
        let mut first_visible: Option<(Rational, Rational)> = None;
        for (n, branch) in branches.iter().enumerate() {
            let mut d = String::new();
            let mut run = 0usize;
            let mut all_in = true;
            for p in &branch.points {
                let (x, y) = finite_xy(p).expect("branch points are finite");
                if !self.vp.expanded_contains(&x, &y) {
                    run = 0;
                    all_in = false;
                    continue;
                }
                let (px, py) = self.px(&x, &y);
                if self.vp.contains(&x, &y) && first_visible.is_none() {
                    first_visible = Some((px.clone(), py.clone()));
                }
                d.push(if run == 0 { 'M' } else { 'L' });
                let _ = write!(d, "{} {}", fx(&px), fx(&py));
                run += 1;
            }
            if d.is_empty() {
                continue;
            }
            if branch.closed && all_in {
                d.push('Z');
            }
            let _ = writeln!(
                self.conics,
                r#"<path class="{}" data-branch="{n}" d="{d}"/>"#,
                xml_escape(label)
            );
        }
        if let Some((px, py)) = first_visible {
            self.visible += 1;
            self.label(label, &px, &py);
        }
    }
}

#[derive(Clone, Copy)]
enum Layer {
    Sides,
    G,
    Lines,
}

/// Renders a preset as an SVG 1.1 document. Output depends only on the
/// inputs.
pub fn render_svg(
    ql: &QlPair,
    preset: Preset,
    sel: IndexSelection,
    viewport: Option<&Viewport>,
) -> Result<String, RenderError> {
    let fig = build(ql, preset, sel)?;
    let vp = match viewport {
        Some(v) => v.clone(),
        None => default_viewport(ql, preset, sel)?,
    };
    let mut ly = Layers {
        vp,
        visible: 0,
        sides: String::new(),
        g: String::new(),
        lines: String::new(),
        conics: String::new(),
        points: String::new(),
        arrows: String::new(),
        labels: String::new(),
    };
    for l in &fig.sides {
        ly.segment(l, "side", Layer::Sides);
    }
    if fig.g == HLine::omega() {
        let _ = writeln!(ly.labels, r#"<text class="g" x="8" y="16">g = ω</text>"#);
    } else {
        ly.segment(&fig.g, "g", Layer::G);
    }
    for (label, l) in &fig.lines {
        ly.segment(l, label, Layer::Lines);
    }
    for (label, c, bases) in &fig.conics {
        ly.conic(label, c, bases);
    }
    for (label, p, mark) in &fig.points {
        ly.point(label, p, *mark);
    }
    if ly.visible == 0 {
        return Err(RenderError::EmptyViewport);
    }

    let (w, h) = (ly.vp.width_px, ly.vp.height_px);
    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(svg, "<title>{}</title>", xml_escape(&fig.title));
    let _ = writeln!(
        svg,
        r##"<defs><clipPath id="view"><rect x="0" y="0" width="{w}" height="{h}"/></clipPath><marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="6" markerHeight="6" orient="auto"><path d="M0 0L10 5L0 10z"/></marker></defs>"##
    );
    let _ = writeln!(svg, r##"<rect x="0" y="0" width="{w}" height="{h}" fill="#ffffff"/>"##);
    let layers = [
        ("sides", r##"stroke="#777777" stroke-width="1""##, &ly.sides),
        ("g", r##"stroke="#cc2222" stroke-width="1.5""##, &ly.g),
        ("lines", r##"stroke="#3366cc" stroke-width="0.8" stroke-dasharray="4 3""##, &ly.lines),
        ("conics", r##"fill="none" stroke="#118811" stroke-width="1.2""##, &ly.conics),
        ("points", r##"fill="#000000" stroke="#000000""##, &ly.points),
        ("infinite", r##"stroke="#aa5500" stroke-width="1.2""##, &ly.arrows),
        ("labels", r##"font-family="sans-serif" font-size="12" fill="#000000""##, &ly.labels),
    ];
    for (id, style, body) in layers {
        let _ = write!(svg, "<g id=\"{id}\" clip-path=\"url(#view)\" {style}>\n{body}</g>\n");
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
