//! Exact matrix rank over the rationals.

use num_bigint::BigInt;
use num_traits::Zero;

/// Rank of an integer matrix, by fraction-free (Bareiss) elimination.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), width, "ragged matrix");
            r.iter().map(|&v| BigInt::from(v)).collect()
        })
        .collect();
    let m = a.len();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..width {
        if rank == m {
            break;
        }
        let Some(p) = (rank..m).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (top, bottom) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in bottom.iter_mut() {
            for j in (col + 1)..width {
                let v = (&pivot_row[col] * &row[j] - &row[col] * &pivot_row[j]) / &prev;
                row[j] = v;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot_row[col].clone();
        rank += 1;
    }
    rank
}
