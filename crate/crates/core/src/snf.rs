//! Integral Smith normal form and abelian-group invariants.
//!
//! Elimination runs in `i64` with checked arithmetic; on overflow the whole
//! computation restarts over `BigInt`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// `Z^free_rank ⊕ Z/t1 ⊕ ... ⊕ Z/tk` with `t1 | t2 | ... | tk`, all `ti ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianInvariants {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".into() } else { format!("Z^{}", self.free_rank) });
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Invariants of the cokernel of the relation matrix: the group with
/// `cols` generators and one relation per row.
pub fn abelian_invariants(rows: &[Vec<i64>], cols: usize) -> AbelianInvariants {
    let diag = smith_diagonal(rows, cols);
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    let torsion = diag
        .iter()
        .filter(|d| !d.is_zero() && !d.is_one())
        .map(|d| d.to_u64().expect("torsion coefficient exceeds u64"))
        .collect();
    AbelianInvariants { free_rank: cols - rank, torsion }
}

/// Nonzero diagonal of the Smith normal form, each entry dividing the next.
pub fn smith_diagonal(rows: &[Vec<i64>], cols: usize) -> Vec<BigInt> {
    let small: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), cols, "ragged relation matrix");
            r.clone()
        })
        .collect();
    if let Some(d) = eliminate(small, cols) {
        return d.into_iter().map(BigInt::from).collect();
    }
    let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    eliminate(big, cols).expect("big-integer elimination cannot overflow")
}

/// Returns `None` when an intermediate value overflows `T`.
fn eliminate<T>(mut m: Vec<Vec<T>>, cols: usize) -> Option<Vec<T>>
where
    T: Integer + Signed + Clone + CheckedAdd + CheckedSub + CheckedMul,
{
    let nrows = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nrows.min(cols) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let Some((pr, pc)) = min_entry(&m, t, cols) else { break };
        m.swap(t, pr);
        for row in m.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut dirty = false;
            for r in t + 1..nrows {
                if !m[r][t].is_zero() {
                    let q = m[r][t].div_floor(&m[t][t]);
                    for c in t..cols {
                        let v = m[r][c].checked_sub(&q.checked_mul(&m[t][c])?)?;
                        m[r][c] = v;
                    }
                    if !m[r][t].is_zero() {
                        dirty = true;
                    }
                }
            }
            for c in t + 1..cols {
                if !m[t][c].is_zero() {
                    let q = m[t][c].div_floor(&m[t][t]);
                    for row in m.iter_mut().skip(t) {
                        let v = row[c].checked_sub(&q.checked_mul(&row[t])?)?;
                        row[c] = v;
                    }
                    if !m[t][c].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                let (pr, pc) = min_entry_cross(&m, t, cols);
                m.swap(t, pr);
                for row in m.iter_mut() {
                    row.swap(t, pc);
                }
                continue;
            }
            // Pivot must divide the rest of the block; otherwise fold the
            // offending row in and keep reducing.
            let bad = (t + 1..nrows).find(|&r| (t + 1..cols).any(|c| !m[r][c].is_multiple_of(&m[t][t])));
            match bad {
                Some(r) => {
                    for c in t..cols {
                        let v = m[t][c].checked_add(&m[r][c])?;
                        m[t][c] = v;
                    }
                }
                None => break,
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    Some(diag)
}

fn min_entry<T: Integer + Signed + Clone>(m: &[Vec<T>], t: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for (r, row) in m.iter().enumerate().skip(t) {
        for (c, v) in row.iter().enumerate().take(cols).skip(t) {
            if !v.is_zero() && best.as_ref().is_none_or(|b| v.abs() < b.2) {
                best = Some((r, c, v.abs()));
            }
        }
    }
    best.map(|(r, c, _)| (r, c))
}

/// Smallest nonzero entry on row `t` and column `t` of the trailing block.
fn min_entry_cross<T: Integer + Signed + Clone>(m: &[Vec<T>], t: usize, cols: usize) -> (usize, usize) {
    let mut best = (t, t, m[t][t].abs());
    for (r, row) in m.iter().enumerate().skip(t) {
        let v = &row[t];
        if !v.is_zero() && v.abs() < best.2 {
            best = (r, t, v.abs());
        }
    }
    for c in t..cols {
        let v = &m[t][c];
        if !v.is_zero() && v.abs() < best.2 {
            best = (t, c, v.abs());
        }
    }
    (best.0, best.1)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Determinantal divisors: `d_k = gcd of all k×k minors`; invariant
    /// factors are `d_k / d_{k-1}`. Independent of any elimination order.
    fn oracle(rows: &[Vec<i64>], cols: usize) -> AbelianInvariants {
        fn det(m: &[Vec<i128>]) -> i128 {
            let n = m.len();
            if n == 1 {
                return m[0][0];
            }
            (0..n)
                .map(|j| {
                    let minor: Vec<Vec<i128>> = m[1..]
                        .iter()
                        .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                        .collect();
                    let s = if j % 2 == 0 { 1 } else { -1 };
                    s * m[0][j] * det(&minor)
                })
                .sum()
        }
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = subsets(n - 1, k);
            for mut s in subsets(n - 1, k - 1) {
                s.push(n - 1);
                out.push(s);
            }
            out
        }
        let mut divisors: Vec<i128> = vec![1];
        for k in 1..=rows.len().min(cols) {
            let mut g: i128 = 0;
            for rs in subsets(rows.len(), k) {
                for cs in subsets(cols, k) {
                    let m: Vec<Vec<i128>> =
                        rs.iter().map(|&r| cs.iter().map(|&c| rows[r][c] as i128).collect()).collect();
                    g = g.gcd(&det(&m));
                }
            }
            if g == 0 {
                break;
            }
            divisors.push(g);
        }
        let rank = divisors.len() - 1;
        let torsion = (1..divisors.len())
            .map(|k| (divisors[k] / divisors[k - 1]) as u64)
            .filter(|&t| t > 1)
            .collect();
        AbelianInvariants { free_rank: cols - rank, torsion }
    }

    #[test]
    fn oracle_fixtures() {
        let m = vec![vec![2, 2, 1, 1], vec![0, 0, 3, 0], vec![0, 0, 0, 3]];
        let want = AbelianInvariants { free_rank: 1, torsion: vec![3, 6] };
        assert_eq!(oracle(&m, 4), want);
        assert_eq!(abelian_invariants(&m, 4), want);

        let m = vec![vec![1, 1, 1], vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 7]];
        let want = AbelianInvariants { free_rank: 0, torsion: vec![] };
        assert_eq!(oracle(&m, 3), want);
        assert_eq!(abelian_invariants(&m, 3), want);
    }

    #[test]
    fn empty_and_zero() {
        assert_eq!(abelian_invariants(&[], 3), AbelianInvariants { free_rank: 3, torsion: vec![] });
        assert_eq!(abelian_invariants(&[vec![0, 0]], 2).free_rank, 2);
        assert_eq!(abelian_invariants(&[vec![2]], 1).torsion, vec![2]);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 2 + 1;
        let m = vec![vec![big, big - 1], vec![big - 1, big - 2]];
        let d = smith_diagonal(&m, 2);
        // det = big(big-2) - (big-1)^2 = -1
        assert_eq!(d, vec![BigInt::one(), BigInt::one()]);
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn matches_determinantal_divisors(
            rows in proptest::collection::vec(proptest::collection::vec(-9i64..10, 4), 0..4)
        ) {
            prop_assert_eq!(abelian_invariants(&rows, 4), oracle(&rows, 4));
        }

        #[test]
        fn divisibility_chain(rows in proptest::collection::vec(proptest::collection::vec(-30i64..30, 5), 1..6)) {
            let inv = abelian_invariants(&rows, 5);
            for w in inv.torsion.windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
        }
    }
}
