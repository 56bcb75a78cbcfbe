//! Exact integer matrix algorithms: Smith normal form invariants and integral
//! kernel bases. Matrices are dense row-major `Vec<Vec<i64>>`; arithmetic is
//! done in `i128`.

use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<i64>>;

fn to_wide(m: &[Vec<i64>]) -> Vec<Vec<i128>> {
    m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()
}

fn narrow(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Arithmetic(format!("entry {x} overflows i64")))
}

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![0; cols]; rows]
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>], inner: usize, cols: usize) -> Matrix {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

pub fn is_zero(m: &[Vec<i64>]) -> bool {
    m.iter().all(|r| r.iter().all(|&x| x == 0))
}

/// Nonzero diagonal entries of the Smith normal form, positive and each
/// dividing the next. Their count is the rank.
pub fn smith_invariants(m: &[Vec<i64>], cols: usize) -> Vec<i128> {
    let mut a = to_wide(m);
    let rows = a.len();
    let mut out = vec![];
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t] != 0 {
                    let q = a[i][t].div_euclid(a[t][t]);
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                    if a[i][t] != 0 {
                        a.swap(t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if a[t][j] != 0 {
                    let q = a[t][j].div_euclid(a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                    if a[t][j] != 0 {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the remaining block by the pivot
            let p = a[t][t];
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        a[t][j] += a[i][j];
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

pub fn rank(m: &[Vec<i64>], cols: usize) -> usize {
    smith_invariants(m, cols).len()
}

/// A basis of the integer kernel `{v in Z^cols : m v = 0}`, by column
/// echelon reduction with a tracked unimodular transform.
pub fn kernel_basis(m: &[Vec<i64>], cols: usize) -> Result<Vec<Vec<i64>>> {
    let mut a = to_wide(m);
    let mut q: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();
    let col_op = |a: &mut Vec<Vec<i128>>, q: &mut Vec<Vec<i128>>, dst: usize, src: usize, f: i128| {
        for row in a.iter_mut() {
            row[dst] -= f * row[src];
        }
        for row in q.iter_mut() {
            row[dst] -= f * row[src];
        }
    };
    let swap = |a: &mut Vec<Vec<i128>>, q: &mut Vec<Vec<i128>>, x: usize, y: usize| {
        for row in a.iter_mut() {
            row.swap(x, y);
        }
        for row in q.iter_mut() {
            row.swap(x, y);
        }
    };
    let mut c = 0;
    for r in 0..a.len() {
        if c == cols {
            break;
        }
        loop {
            let piv = (c..cols)
                .filter(|&j| a[r][j] != 0)
                .min_by_key(|&j| a[r][j].abs());
            let Some(pj) = piv else { break };
            swap(&mut a, &mut q, c, pj);
            let mut cleared = true;
            for j in c + 1..cols {
                if a[r][j] != 0 {
                    let f = a[r][j].div_euclid(a[r][c]);
                    col_op(&mut a, &mut q, j, c, f);
                    if a[r][j] != 0 {
                        cleared = false;
                    }
                }
            }
            if cleared {
                c += 1;
                break;
            }
        }
    }
    (c..cols)
        .map(|j| q.iter().map(|row| narrow(row[j])).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn smith_examples() {
        assert_eq!(smith_invariants(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3), vec![2, 6, 12]);
        assert_eq!(smith_invariants(&[vec![0, 0], vec![0, 0]], 2), Vec::<i128>::new());
        assert_eq!(smith_invariants(&[vec![2, 0], vec![0, 3]], 2), vec![1, 6]);
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]], 2), 1);
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&[vec![1, 1]], 2).unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0] + k[0][1], 0);
        assert_eq!(kernel_basis(&[vec![1, 0], vec![0, 1]], 2).unwrap().len(), 0);
        assert_eq!(kernel_basis(&[], 3).unwrap().len(), 3);
    }

    /// Determinant of a small square matrix by cofactor expansion.
    fn det(m: &[Vec<i128>]) -> i128 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum()
    }

    proptest! {
        #[test]
        fn kernel_is_saturated_and_complete(entries in proptest::collection::vec(-3i64..4, 12)) {
            let m: Matrix = entries.chunks(4).map(|c| c.to_vec()).collect();
            let basis = kernel_basis(&m, 4).unwrap();
            prop_assert_eq!(basis.len() + rank(&m, 4), 4);
            for v in &basis {
                prop_assert!(mat_vec(&m, v).iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn square_determinant_matches_invariants(entries in proptest::collection::vec(-4i64..5, 9)) {
            let m: Matrix = entries.chunks(3).map(|c| c.to_vec()).collect();
            let inv = smith_invariants(&m, 3);
            let d = det(&to_wide(&m)).abs();
            if inv.len() == 3 {
                prop_assert_eq!(inv.iter().product::<i128>(), d);
                prop_assert!(inv.windows(2).all(|w| w[1] % w[0] == 0));
            } else {
                prop_assert_eq!(d, 0);
            }
        }
    }
}
