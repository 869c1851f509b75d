// Expected coordinates below were computed with an independent null-space
// implementation (sympy) of joins and meets, not with this crate's kernel.

use super::*;
use crate::conic::{on_conic, polar};
use crate::involution::is_conjugate_pair;
use crate::projective::{cross_ratio, midpoint, CrossRatio};
use crate::rational::int;

fn pt(x: i64, y: i64, w: i64) -> HPoint {
    HPoint::from_ints(x, y, w).unwrap()
}

fn reference_vertices() -> [HPoint; 4] {
    [pt(0, 0, 1), pt(4, 0, 1), pt(5, 3, 1), pt(1, 4, 1)]
}

fn reference() -> QlPair {
    make_qlpair(reference_vertices(), HLine::from_ints(0, 1, 1).unwrap()).unwrap()
}

fn reference_omega() -> QlPair {
    make_qlpair(reference_vertices(), HLine::omega()).unwrap()
}

fn sel(i: Index, j: Index, k: Index, s: Index) -> IndexSelection {
    IndexSelection::new(i, j, k, s).unwrap()
}

#[test]
fn reference_pair_is_valid() {
    let ql = reference();
    assert_eq!(ql.g(), &HLine::from_ints(0, 1, 1).unwrap());
}

#[test]
fn rejects_line_through_vertex() {
    let v = reference_vertices();
    let g = join(&v[0], &v[1]).unwrap();
    assert_eq!(make_qlpair(v, g), Err(QlError::LineThroughVertex(1)));
}

#[test]
fn rejects_line_through_diagonal_point() {
    let v = reference_vertices();
    let quad = CompleteQuadrangle::new(v.clone()).unwrap();
    let d = quad.diagonal_point(DiagonalPoint::D13_24);
    assert_eq!(d, pt(80, 48, 29));
    let g = join(&d, &pt(-7, 2, 1)).unwrap();
    assert_eq!(
        make_qlpair(v, g),
        Err(QlError::LineThroughDiagonalPoint(DiagonalPoint::D13_24))
    );
}

#[test]
fn rejects_three_collinear_vertices() {
    let v = [pt(0, 0, 1), pt(1, 1, 1), pt(2, 2, 1), pt(0, 5, 1)];
    assert_eq!(
        make_qlpair(v, HLine::omega()),
        Err(QlError::ThreeCollinearVertices(1, 2, 3))
    );
}

#[test]
fn parallelogram_cannot_pair_with_omega() {
    // Opposite sides of a parallelogram meet on omega.
    let v = [pt(0, 0, 1), pt(2, 0, 1), pt(3, 1, 1), pt(1, 1, 1)];
    assert!(matches!(
        make_qlpair(v, HLine::omega()),
        Err(QlError::LineThroughDiagonalPoint(_))
    ));
}

#[test]
fn square_diagonal_points() {
    let quad = CompleteQuadrangle::new([pt(0, 0, 1), pt(1, 0, 1), pt(1, 1, 1), pt(0, 1, 1)]).unwrap();
    let [d12_34, d13_24, d14_23] = quad.diagonal_points();
    assert_eq!(d12_34, pt(1, 0, 0));
    assert_eq!(d13_24, pt(1, 1, 2));
    assert_eq!(d14_23, pt(0, 1, 0));
}

#[test]
fn reference_diagonal_points() {
    let ql = reference();
    let d = ql.quad().diagonal_points();
    assert_eq!(d, [pt(17, 0, 1), pt(80, 48, 29), pt(12, 48, -1)]);
    for p in &d {
        assert!(!ql.quad().vertices().contains(p));
    }
}

#[test]
fn reference_u_points() {
    let ql = reference();
    assert_eq!(
        ql.u_points(),
        [
            pt(1, 0, 0),
            pt(5, 3, -3),
            pt(1, 4, -4),
            pt(11, -3, 3),
            pt(19, -4, 4),
            pt(21, -1, 1),
        ]
    );
    let omega = reference_omega();
    for (a, b) in PAIRS {
        let u = omega.u(a, b);
        assert!(u.is_at_infinity());
        assert!(incident(&u, &omega.side(a, b)));
    }
}

#[test]
fn problem_one_instance() {
    // ABCD = A1A2A3A4, g = omega, (i, j, k, s) = (1, 2, 4, 3)
    let ql = reference_omega();
    let q = sharygin_quartet(&ql, sel(1, 2, 4, 3)).unwrap();
    let m = &q.m_ji_s; // B V ∩ AC
    let n = &q.m_ij_k; // A U ∩ BD
    assert_eq!(*m, pt(80, 48, 17));
    assert_eq!(*n, pt(16, 48, 13));
    let mn = join(m, n).unwrap();
    let cd = ql.side(3, 4);
    assert_eq!(meet(&mn, &cd).unwrap(), pt(4, -1, 0));
}

#[test]
fn quartet_symmetry_under_ij_swap() {
    let ql = reference();
    let s = sel(1, 2, 3, 4);
    let a = sharygin_quartet(&ql, s).unwrap();
    let b = sharygin_quartet(&ql, s.swapped_ij()).unwrap();
    assert_eq!(a.m_ij_k, b.m_ji_k);
    assert_eq!(a.m_ji_s, b.m_ij_s);
    assert_eq!(a.m_ij_s, b.m_ji_s);
    assert_eq!(a.m_ji_k, b.m_ij_k);
}

#[test]
fn reference_quartet_values() {
    let ql = reference();
    let q = sharygin_quartet(&ql, sel(1, 2, 3, 4)).unwrap();
    assert_eq!(q.m_ij_k, pt(228, -48, 61));
    assert_eq!(q.m_ij_s, pt(176, -48, 35));
    assert_eq!(q.m_ji_k, pt(80, 48, -31));
    assert_eq!(q.m_ji_s, pt(12, 48, -65));
    let d = dual_quartet(&ql, sel(1, 2, 3, 4)).unwrap();
    assert_eq!(d.m_ij_k, pt(113, 231, 9)); // M_43^2
    assert_eq!(d.m_ji_s, pt(77, 308, 12)); // M_34^1
}

#[test]
fn reference_aux_points() {
    let aux = aux_points(&reference(), sel(1, 2, 3, 4)).unwrap();
    assert_eq!(aux.i, pt(80, 48, 29));
    assert_eq!(aux.i_prime, pt(12, 48, -1));
    assert_eq!(aux.i_bar, pt(17, 0, 1));
    assert_eq!(aux.j, pt(228, -48, 125));
    assert_eq!(aux.j_prime, pt(176, -48, 95));
    assert_eq!(aux.l, pt(633, 1427, 113));
    assert_eq!(aux.l_prime, pt(1123, 497, 443));
}

#[test]
fn i_prime_equals_i_check() {
    // I' = A_iA_s ∩ A_jA_k is the same point as the one written Ǐ.
    let ql = reference();
    for s in IndexSelection::all() {
        let aux = aux_points(&ql, s).unwrap();
        let check = meet(&ql.side(s.i, s.s), &ql.side(s.j, s.k)).unwrap();
        assert_eq!(aux.i_prime, check);
    }
}

#[test]
fn omega_parallelograms_share_midpoints() {
    let ql = reference_omega();
    let s = sel(1, 2, 3, 4);
    let aux = aux_points(&ql, s).unwrap();
    let mid = midpoint(ql.vertex(1), ql.vertex(2)).unwrap();
    assert_eq!(midpoint(&aux.i, &aux.j).unwrap(), mid);
    assert_eq!(midpoint(&aux.i_prime, &aux.j_prime).unwrap(), mid);
}

#[test]
fn reference_g_points() {
    let ql = reference();
    let expected = [
        pt(2, 0, 1),
        pt(5, 3, 5),
        pt(1, 4, 6),
        pt(21, 3, 5),
        pt(21, 4, 6),
        pt(29, 31, 9),
    ];
    for ((a, b), e) in PAIRS.iter().zip(&expected) {
        assert_eq!(g_point(&ql, *a, *b).unwrap(), *e, "G{a}{b}");
        assert_eq!(g_point(&ql, *b, *a).unwrap(), *e, "G{b}{a}");
    }
}

#[test]
fn omega_g_points_are_midpoints() {
    let ql = reference_omega();
    for (a, b) in PAIRS {
        let g = g_point(&ql, a, b).unwrap();
        assert_eq!(Some(g), midpoint(ql.vertex(a), ql.vertex(b)));
    }
}

#[test]
fn g_point_is_harmonic_to_u() {
    for ql in [reference(), reference_omega()] {
        for (a, b) in PAIRS {
            let cr = cross_ratio(&ql.g_point_raw(a, b), &ql.u(a, b), ql.vertex(a), ql.vertex(b))
                .unwrap();
            assert_eq!(cr, CrossRatio::Finite(int(-1)));
        }
    }
}

#[test]
fn reference_sharygin_curves() {
    let ql = reference();
    let expected: [[i64; 6]; 6] = [
        [93, -944, 0, -33, -186, -306],
        [96, -1966, 0, -75, -51, 3009],
        [30, -846, 0, -33, 17, 1717],
        [96, 2498, 1848, 33, -423, -3915],
        [30, 402, 376, 3, -107, -831],
        [14400, 2328, 123046, -4059, -32419, -9673],
    ];
    for ((a, b), e) in PAIRS.iter().zip(expected) {
        let k = sharygin_curve(&ql, *a, *b).unwrap();
        assert_eq!(k, Conic::from_int_coefficients(e).unwrap(), "k{a}{b}");
        assert!(!k.is_degenerate());
        for p in sharygin_curve_points(&ql, *a, *b) {
            assert!(on_conic(&p, &k));
        }
        // G_ab is the pole of g
        assert_eq!(polar(&ql.g_point_raw(*a, *b), &k).unwrap(), *ql.g());
    }
}

#[test]
fn omega_curve_center_is_g_point() {
    let ql = reference_omega();
    let k12 = sharygin_curve(&ql, 1, 2).unwrap();
    assert_eq!(k12, Conic::from_int_coefficients([84, 11, 0, -24, -168, 48]).unwrap());
    assert_eq!(pole(&HLine::omega(), &k12).unwrap(), pt(2, 0, 1));
}

#[test]
fn reference_nine_point_conic() {
    let ql = reference();
    let k9 = nine_point_conic(&ql).unwrap();
    assert_eq!(
        k9,
        Conic::from_int_coefficients([48, -330, 1632, 552, -456, -1093]).unwrap()
    );
    assert_eq!(nine_point_pole(&ql).unwrap(), pt(109, 31, 49));
    let g = g_points_raw(&ql);
    // hexagon G13 G23 G12 G24 G14 G34 has Pascal line g
    let hex = [&g[1], &g[3], &g[0], &g[4], &g[2], &g[5]];
    assert_eq!(crate::conic::pascal_line(hex, &k9).unwrap(), *ql.g());
}

#[test]
fn omega_nine_point_center() {
    let ql = reference_omega();
    let k9 = nine_point_conic(&ql).unwrap();
    assert_eq!(
        k9,
        Conic::from_int_coefficients([48, -116, 1632, 192, -456, -277]).unwrap()
    );
    // centroid of the vertices
    assert_eq!(nine_point_pole(&ql).unwrap(), pt(10, 7, 4));
}

#[test]
fn reference_centers_and_homologies() {
    let ql = reference();
    let s = sel(1, 2, 3, 4);
    let (o, o_prime) = centers(&ql, s).unwrap();
    assert_eq!(o, pt(4644, 2256, 1805));
    assert_eq!(o_prime, pt(1808, 3696, 365));
    let h = homologies(&ql, s).unwrap();
    assert_eq!(apply_map(&h.phi, ql.vertex(2)), ql.m(4, 3, 1));
    assert_eq!(apply_map(&h.phi, &ql.u(1, 2)), ql.u(1, 2));
    let aux = aux_points(&ql, s).unwrap();
    assert_eq!(apply_map(&h.phi, &aux.i_prime), aux.l_prime);
    assert_eq!(apply_map(&h.phi, &o), o);
    assert_eq!(apply_map(&h.phi_prime, &aux.i), aux.l);
}

#[test]
fn every_selection_constructs() {
    for ql in [reference(), reference_omega()] {
        for s in IndexSelection::all() {
            homologies(&ql, s).unwrap();
            for l in g_point_lines(&ql, s).unwrap() {
                assert!(incident(&ql.g_point_raw(s.i, s.j), &l));
            }
        }
    }
}

#[test]
fn pappus_desargues_on_reference() {
    let ql = reference();
    let inv = pappus_desargues_involution(&ql).unwrap();
    assert!(is_conjugate_pair(&inv, &ql.u(1, 4), &ql.u(2, 3)).unwrap());
    assert!(is_conjugate_pair(&inv, &ql.u(1, 2), &ql.u(3, 4)).unwrap());
}

#[test]
fn involution_is_chart_independent() {
    let ql = reference();
    let a = pappus_desargues_involution(&ql).unwrap();
    let other = LineChart::on_line(ql.g(), ql.u(2, 4), ql.u(3, 4)).unwrap();
    let b = involution_on_chart(&ql, &other).unwrap();
    for x in -6..6 {
        let p = pt(x, -1, 1);
        assert_eq!(apply_involution(&a, &p).unwrap(), apply_involution(&b, &p).unwrap());
    }
}

#[test]
fn omega_involution_pairs_directions() {
    let ql = reference_omega();
    let inv = pappus_desargues_involution(&ql).unwrap();
    assert!(is_conjugate_pair(&inv, &ql.u(1, 3), &ql.u(2, 4)).unwrap());
    assert!(is_conjugate_pair(&inv, &pt(1, 0, 0), &apply_involution(&inv, &pt(1, 0, 0)).unwrap()).unwrap());
}

#[test]
fn relabeling_permutes_g_points() {
    let ql = reference();
    let perm = [3, 1, 4, 2];
    let rl = ql.relabeled(perm);
    for (a, b) in PAIRS {
        let orig = ql.g_point_raw(perm[a as usize - 1], perm[b as usize - 1]);
        assert_eq!(rl.g_point_raw(a, b), orig);
    }
}

#[test]
fn invalid_selection_rejected() {
    assert_eq!(IndexSelection::new(1, 1, 2, 3), Err(QlError::InvalidSelection));
    assert_eq!(IndexSelection::all().len(), 24);
}
