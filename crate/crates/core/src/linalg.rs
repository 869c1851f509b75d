//! Small exact linear algebra over the integers.
//!
//! Everything here works on `BigInt` so that the canonical forms used by the
//! kernel (coprime integer entries, first nonzero entry positive) fall out of
//! a single gcd pass.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

pub type Vec3 = [BigInt; 3];
pub type Mat3 = [[BigInt; 3]; 3];

pub fn dot(a: &Vec3, b: &Vec3) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub fn det3(rows: [&Vec3; 3]) -> BigInt {
    dot(rows[0], &cross(rows[1], rows[2]))
}

pub fn is_zero(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Divides out the content and makes the first nonzero entry positive.
/// Returns `false` (leaving `v` untouched) when every entry is zero.
pub fn normalize(v: &mut [BigInt]) -> bool {
    let Some(lead) = v.iter().find(|x| !x.is_zero()) else {
        return false;
    };
    let mut g = BigInt::zero();
    for x in v.iter() {
        g = g.gcd(x);
    }
    if lead.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    true
}

/// Clears denominators of a rational vector into a primitive integer vector.
pub fn clear_denominators(v: &[Rational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    v.iter()
        .map(|x| x.numer() * (&l / x.denom()))
        .collect()
}

pub fn mat_vec(m: &Mat3, v: &Vec3) -> Vec3 {
    [dot(&m[0], v), dot(&m[1], v), dot(&m[2], v)]
}

pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|r| {
        std::array::from_fn(|c| (0..3).map(|k| &a[r][k] * &b[k][c]).sum())
    })
}

pub fn transpose(m: &Mat3) -> Mat3 {
    std::array::from_fn(|r| std::array::from_fn(|c| m[c][r].clone()))
}

pub fn det(m: &Mat3) -> BigInt {
    det3([&m[0], &m[1], &m[2]])
}

/// Adjugate: `m * adj(m) = det(m) * I`.
pub fn adjugate(m: &Mat3) -> Mat3 {
    let cols = transpose(m);
    // Row r of the adjugate is cross of the two other columns of m.
    [
        cross(&cols[1], &cols[2]),
        cross(&cols[2], &cols[0]),
        cross(&cols[0], &cols[1]),
    ]
}

pub fn identity() -> Mat3 {
    std::array::from_fn(|r| {
        std::array::from_fn(|c| if r == c { BigInt::one() } else { BigInt::zero() })
    })
}

/// Reduced echelon form by fraction-free elimination. Each row is kept
/// primitive after every update. Returns the pivot columns.
pub fn echelon(rows: &mut [Vec<BigInt>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let g = rows[r][c].gcd(&rows[i][c]);
            let fp = &rows[i][c] / &g;
            let fi = &rows[r][c] / &g;
            let pivot_row = rows[r].clone();
            for (x, y) in rows[i].iter_mut().zip(pivot_row.iter()) {
                *x = &*x * &fi - y * &fp;
            }
            normalize(&mut rows[i]);
        }
        normalize(&mut rows[r]);
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Integer basis of the right null space of `rows` (each basis vector
/// primitive, leading entry positive). One vector per free column.
pub fn null_space(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut work = rows.to_vec();
    let pivots = echelon(&mut work);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            // x_f = 1, x_pivot = -row[f] / row[pivot]; scale by lcm of pivots.
            let mut scale = BigInt::one();
            for (r, &pc) in pivots.iter().enumerate() {
                if !work[r][f].is_zero() {
                    scale = scale.lcm(&work[r][pc]);
                }
            }
            let mut v = vec![BigInt::zero(); ncols];
            v[f] = scale.clone();
            for (r, &pc) in pivots.iter().enumerate() {
                if !work[r][f].is_zero() {
                    v[pc] = -(&work[r][f] * &scale) / &work[r][pc];
                }
            }
            normalize(&mut v);
            v
        })
        .collect()
}

pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    let mut work = rows.to_vec();
    echelon(&mut work).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn normalize_makes_primitive_and_positive() {
        let mut v = bi(&[0, -4, 6]);
        assert!(normalize(&mut v));
        assert_eq!(v, bi(&[0, 2, -3]));
        let mut z = bi(&[0, 0, 0]);
        assert!(!normalize(&mut z));
    }

    #[test]
    fn null_space_of_rank_two() {
        // x + y + z = 0, x - y = 0  ->  (1, 1, -2)
        let rows = vec![bi(&[1, 1, 1]), bi(&[1, -1, 0])];
        let ns = null_space(&rows, 3);
        assert_eq!(ns, vec![bi(&[1, 1, -2])]);
        for v in &ns {
            for r in &rows {
                let s: BigInt = r.iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn null_space_dimension_tracks_rank() {
        let rows = vec![bi(&[2, 4, 6, 8]), bi(&[1, 2, 3, 4])];
        assert_eq!(rank(&rows), 1);
        assert_eq!(null_space(&rows, 4).len(), 3);
    }

    #[test]
    fn adjugate_inverts_up_to_det() {
        let m: Mat3 = [
            [2, 1, 0].map(BigInt::from),
            [1, 3, 1].map(BigInt::from),
            [0, 1, 4].map(BigInt::from),
        ];
        let d = det(&m);
        let prod = mat_mul(&m, &adjugate(&m));
        for r in 0..3 {
            for c in 0..3 {
                let expect = if r == c { d.clone() } else { BigInt::zero() };
                assert_eq!(prod[r][c], expect);
            }
        }
    }
}
