//! Exact dense Gaussian elimination over the rationals.

use crate::rat::Rat;
use num::traits::Zero;

/// Solves a square system `A x = b` exactly. Returns `None` if `A` is
/// singular. Pivots on the first nonzero entry in each column (lexicographic
/// preference keeps the elimination deterministic).
#[allow(clippy::needless_range_loop)]
pub fn solve_unique(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    assert_eq!(b.len(), n, "solve_unique: shape mismatch");
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b.iter())
        .map(|(row, rhs)| {
            assert_eq!(row.len(), n, "solve_unique: non-square matrix");
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot_row);
        let p = m[col][col].clone();
        for k in col..=n {
            m[col][k] = &m[col][k] / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for k in col..=n {
                    let delta = &factor * &m[col][k];
                    m[r][k] = &m[r][k] - &delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Greedy maximal linearly independent subset of the given rows, preferring
/// earlier indices (the result is sorted ascending).
pub fn independent_rows(rows: &[Vec<Rat>]) -> Vec<usize> {
    let mut basis: Vec<Vec<Rat>> = Vec::new();
    let mut picked = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut reduced = row.clone();
        for b in &basis {
            let lead = b.iter().position(|x| !x.is_zero()).expect("basis rows nonzero");
            if !reduced[lead].is_zero() {
                let factor = &reduced[lead] / &b[lead];
                for k in 0..reduced.len() {
                    let delta = &factor * &b[k];
                    reduced[k] = &reduced[k] - &delta;
                }
            }
        }
        if reduced.iter().any(|x| !x.is_zero()) {
            basis.push(reduced);
            picked.push(idx);
        }
    }
    picked
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    #[test]
    fn solves_small_system() {
        // x + y = 3, x - y = 1  =>  x = 2, y = 1
        let a = vec![
            vec![rat_int(1), rat_int(1)],
            vec![rat_int(1), rat_int(-1)],
        ];
        let b = vec![rat_int(3), rat_int(1)];
        assert_eq!(solve_unique(&a, &b).unwrap(), vec![rat_int(2), rat_int(1)]);
    }

    #[test]
    fn detects_singularity() {
        let a = vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(2), rat_int(4)],
        ];
        let b = vec![rat_int(1), rat_int(2)];
        assert!(solve_unique(&a, &b).is_none());
    }

    #[test]
    fn exact_fractions_survive() {
        // (1/3) x = 5  =>  x = 15
        let a = vec![vec![rat(1, 3)]];
        let b = vec![rat_int(5)];
        assert_eq!(solve_unique(&a, &b).unwrap(), vec![rat_int(15)]);
    }

    #[test]
    fn independent_rows_prefers_earlier() {
        let rows = vec![
            vec![rat_int(1), rat_int(0)],
            vec![rat_int(2), rat_int(0)], // dependent on row 0
            vec![rat_int(0), rat_int(1)],
        ];
        assert_eq!(independent_rows(&rows), vec![0, 2]);
    }
}
