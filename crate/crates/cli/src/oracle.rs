//! A deliberately naive dense Smith form, kept independent of the sparse
//! implementation in the core crate so the two can be compared.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use relchar_core::Int;

/// Invariant factors (the nonzero diagonal of the Smith form) of a dense
/// matrix given by rows.
pub fn invariant_factors(rows: &[Vec<Int>]) -> Vec<Int> {
    let mut m: Vec<Vec<Int>> = rows.to_vec();
    let nr = m.len();
    let nc = if nr == 0 { 0 } else { m[0].len() };
    let mut out = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        // Smallest nonzero entry of the remaining block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                if !m[i][j].is_zero() && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        let p = m[t][t].clone();
        let mut dirty = false;
        for i in t + 1..nr {
            let q = m[i][t].div_floor(&p);
            if !q.is_zero() {
                for j in t..nc {
                    let v = &m[t][j] * &q;
                    m[i][j] -= v;
                }
            }
            dirty |= !m[i][t].is_zero();
        }
        for j in t + 1..nc {
            let q = m[t][j].div_floor(&p);
            if !q.is_zero() {
                for i in t..nr {
                    let v = &m[i][t] * &q;
                    m[i][j] -= v;
                }
            }
            dirty |= !m[t][j].is_zero();
        }
        if dirty {
            continue;
        }
        // Pivot must divide the rest; otherwise fold an offending row in.
        if let Some(i) = (t + 1..nr).find(|&i| (t + 1..nc).any(|j| !(&m[i][j] % &p).is_zero())) {
            for j in t..nc {
                let v = m[i][j].clone();
                m[t][j] += v;
            }
            continue;
        }
        out.push(p.abs());
        t += 1;
    }
    out
}

/// `(free rank, torsion orders)` of `ker ∂_n / im ∂_{n+1}` from dense
/// boundary matrices of shapes `c_{n-1} x c_n` and `c_n x c_{n+1}`.
pub fn homology(dim_n: usize, d_n: &[Vec<Int>], d_next: &[Vec<Int>]) -> (usize, Vec<Int>) {
    let rank_n = invariant_factors(d_n).len();
    let f_next = invariant_factors(d_next);
    let free = dim_n - rank_n - f_next.len();
    let one = Int::from(1);
    (free, f_next.into_iter().filter(|v| v != &one).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Int>> {
        rows.iter().map(|r| r.iter().map(|&v| Int::from(v)).collect()).collect()
    }

    #[test]
    fn small_smith_forms() {
        assert_eq!(invariant_factors(&m(&[&[2, 4], &[6, 8]])), vec![Int::from(2), Int::from(4)]);
        assert_eq!(invariant_factors(&m(&[&[2, 0], &[0, 3]])), vec![Int::from(1), Int::from(6)]);
        assert!(invariant_factors(&m(&[&[0, 0]])).is_empty());
    }
}
