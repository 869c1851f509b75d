use std::fmt;

use serde::Serialize;

use super::{others, Index, PAIRS};

/// One concrete variant of the generalized Sharygin problem: a vertex pair
/// `(i, j)` with `i < j`, an assignment of the other two indices to `k` and
/// `s`, and whether each of `U_js`, `U_ik` is a point at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CaseDescriptor {
    pub i: Index,
    pub j: Index,
    pub k: Index,
    pub s: Index,
    pub u_js_infinite: bool,
    pub u_ik_infinite: bool,
}

impl CaseDescriptor {
    /// Sharygin's original problem: `ABCD = A1A2A3A4`, `i=1, j=2, s=3, k=4`,
    /// both `U23` and `U14` at infinity.
    pub fn original_problem() -> Self {
        CaseDescriptor {
            i: 1,
            j: 2,
            k: 4,
            s: 3,
            u_js_infinite: true,
            u_ik_infinite: true,
        }
    }
}

fn pair_name(a: Index, b: Index) -> String {
    format!("U{}{}", a.min(b), a.max(b))
}

impl fmt::Display for CaseDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = |inf: bool| if inf { "infinite" } else { "finite" };
        write!(
            f,
            "i={} j={} k={} s={} {}={} {}={}",
            self.i,
            self.j,
            self.k,
            self.s,
            pair_name(self.j, self.s),
            kind(self.u_js_infinite),
            pair_name(self.i, self.k),
            kind(self.u_ik_infinite),
        )
    }
}

/// All 6 · 2 · 4 = 48 variants in lexicographic order.
pub fn enumerate_cases() -> Vec<CaseDescriptor> {
    let mut out = Vec::with_capacity(48);
    for (i, j) in PAIRS {
        let (lo, hi) = others(i, j);
        for (k, s) in [(lo, hi), (hi, lo)] {
            for u_js_infinite in [false, true] {
                for u_ik_infinite in [false, true] {
                    out.push(CaseDescriptor {
                        i,
                        j,
                        k,
                        s,
                        u_js_infinite,
                        u_ik_infinite,
                    });
                }
            }
        }
    }
    out
}
