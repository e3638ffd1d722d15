//! Exact rank of integer matrices via fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Rank over the integers (equivalently over Q) of a rectangular matrix.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    if m.is_empty() || m[0].is_empty() {
        return 0;
    }
    let (nr, nc) = (m.len(), m[0].len());
    debug_assert!(m.iter().all(|r| r.len() == nc));

    let mut rank = 0;
    let mut prev = BigInt::one();
    let mut row = 0;
    for col in 0..nc {
        let Some(pivot) = (row..nr).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, pivot);
        for i in row + 1..nr {
            for j in col + 1..nc {
                let t = &m[row][col] * &m[i][j] - &m[i][col] * &m[row][j];
                m[i][j] = &t / &prev;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[row][col].clone();
        rank += 1;
        row += 1;
        if row == nr {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    /// Independent oracle: Gaussian elimination over exact rationals.
    fn rational_rank(rows: &[Vec<i64>]) -> usize {
        let mut m: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        if m.is_empty() || m[0].is_empty() {
            return 0;
        }
        let (nr, nc) = (m.len(), m[0].len());
        let mut rank = 0;
        let mut row = 0;
        for col in 0..nc {
            let Some(p) = (row..nr).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(row, p);
            let inv = m[row][col].recip();
            for j in col..nc {
                m[row][j] = &m[row][j] * &inv;
            }
            for i in 0..nr {
                if i != row && !m[i][col].is_zero() {
                    let f = m[i][col].clone();
                    for j in col..nc {
                        m[i][j] = &m[i][j] - &f * &m[row][j];
                    }
                }
            }
            rank += 1;
            row += 1;
            if row == nr {
                break;
            }
        }
        rank
    }

    #[test]
    fn small_cases() {
        assert_eq!(integer_rank(&[]), 0);
        assert_eq!(integer_rank(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(integer_rank(&[vec![2, 4], vec![1, 2]]), 1);
        assert_eq!(integer_rank(&[vec![1, 0, 3], vec![0, 5, 1], vec![1, 5, 4]]), 2);
        assert_eq!(integer_rank(&[vec![3]]), 1);
    }

    proptest! {
        #[test]
        fn matches_rational_elimination(
            rows in prop::collection::vec(
                prop::collection::vec(-6i64..=6, 1..=5),
                1..=5,
            )
        ) {
            let nc = rows[0].len();
            let rows: Vec<Vec<i64>> =
                rows.into_iter().map(|mut r| { r.resize(nc, 0); r }).collect();
            prop_assert_eq!(integer_rank(&rows), rational_rank(&rows));
        }
    }
}
