//! Seeded instance generators.
//!
//! Every random draw goes through [`ChaCha8Rng`]. The generator for trial
//! `t` of a run with seed `s` is `ChaCha8Rng::seed_from_u64(s ^ salt)` with
//! its stream set to `t`, where `salt` is the 64-bit FNV-1a hash of the
//! consumer's name (zero for the shared (q,l)-pair instances). Streams are
//! independent, so trials can be generated in any order.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::VerifyError;
use crate::conic::{conic_through_five, second_intersection, Conic};
use crate::projective::{euclidean_embed, join, HLine, HPoint};
use crate::rational::Rational;
use crate::sharygin::{make_qlpair, CompleteQuadrangle, QlPair};

/// Rejection-sampling budget for every generator.
pub const ATTEMPT_BUDGET: usize = 10_000;

pub fn fnv1a(text: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in text.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

pub fn trial_rng(seed: u64, salt: &str, trial: u64) -> ChaCha8Rng {
    let salt = if salt.is_empty() { 0 } else { fnv1a(salt) };
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt);
    rng.set_stream(trial);
    rng
}

pub fn int_point(rng: &mut impl Rng, bound: i64) -> HPoint {
    let x = rng.random_range(-bound..=bound);
    let y = rng.random_range(-bound..=bound);
    HPoint::from_ints(x, y, 1).expect("w = 1")
}

/// Nonzero rational with numerator in `[-bound, bound]` and denominator in
/// `[1, bound]`, avoiding the values in `exclude`.
pub fn rational(rng: &mut impl Rng, bound: i64, exclude: &[Rational]) -> Rational {
    loop {
        let n = rng.random_range(-bound..=bound);
        let d = rng.random_range(1..=bound);
        let r = Rational::new(BigInt::from(n), BigInt::from(d));
        if !exclude.contains(&r) {
            return r;
        }
    }
}

/// The finite point `p + t (q - p)` for finite `p`, `q`.
pub fn affine_combination(p: &HPoint, q: &HPoint, t: &Rational) -> HPoint {
    let [px, py, pw] = p.to_rationals();
    let [qx, qy, qw] = q.to_rationals();
    let (px, py) = (px / &pw, py / &pw);
    let (qx, qy) = (qx / &qw, qy / &qw);
    let one = Rational::from_integer(1.into());
    let s = &one - t;
    euclidean_embed(&(&px * &s + &qx * t), &(&py * &s + &qy * t))
}

/// A random finite point of line `pq`, distinct from `p` and `q`.
pub fn point_between(rng: &mut impl Rng, p: &HPoint, q: &HPoint, bound: i64) -> HPoint {
    let zero = Rational::from_integer(0.into());
    let one = Rational::from_integer(1.into());
    let t = rational(rng, bound, &[zero, one]);
    affine_combination(p, q, &t)
}

pub fn quadrangle(rng: &mut impl Rng, bound: i64) -> Result<CompleteQuadrangle, VerifyError> {
    for _ in 0..ATTEMPT_BUDGET {
        let v = std::array::from_fn(|_| int_point(rng, bound));
        if let Ok(q) = CompleteQuadrangle::new(v) {
            return Ok(q);
        }
    }
    Err(VerifyError::ExhaustedAttempts)
}

/// Four integer vertices in `[-bound, bound]²` and a line through two fresh
/// integer points (or the line at infinity), redrawn until they form a
/// valid (q,l)-pair.
pub fn generate_qlpair(
    rng: &mut impl Rng,
    bound: i64,
    omega: bool,
) -> Result<QlPair, VerifyError> {
    for _ in 0..ATTEMPT_BUDGET {
        let v: [HPoint; 4] = std::array::from_fn(|_| int_point(rng, bound));
        let g = if omega {
            HLine::omega()
        } else {
            let (p, q) = (int_point(rng, bound), int_point(rng, bound));
            match join(&p, &q) {
                Ok(l) => l,
                Err(_) => continue,
            }
        };
        if let Ok(ql) = make_qlpair(v, g) {
            return Ok(ql);
        }
    }
    Err(VerifyError::ExhaustedAttempts)
}

/// A non-degenerate conic through five random integer points, together with
/// one of those points.
pub fn conic(rng: &mut impl Rng, bound: i64) -> Result<(Conic, HPoint), VerifyError> {
    for _ in 0..ATTEMPT_BUDGET {
        let p: [HPoint; 5] = std::array::from_fn(|_| int_point(rng, bound));
        if let Ok(c) = conic_through_five([&p[0], &p[1], &p[2], &p[3], &p[4]]) {
            if !c.is_degenerate() {
                return Ok((c, p[0].clone()));
            }
        }
    }
    Err(VerifyError::ExhaustedAttempts)
}

/// `n` pairwise distinct rational points on `c`, sampled through the pencil
/// of lines at `base`. The base point itself is the first sample.
pub fn points_on_conic(
    rng: &mut impl Rng,
    c: &Conic,
    base: &HPoint,
    n: usize,
    bound: i64,
) -> Result<Vec<HPoint>, VerifyError> {
    let mut out = vec![base.clone()];
    for _ in 0..ATTEMPT_BUDGET {
        if out.len() == n {
            return Ok(out);
        }
        let dir = HPoint::from_ints(
            rng.random_range(-bound..=bound),
            rng.random_range(-bound..=bound),
            0,
        );
        let Ok(dir) = dir else { continue };
        let p = second_intersection(c, base, &dir);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    Err(VerifyError::ExhaustedAttempts)
}
