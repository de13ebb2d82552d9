//! Exact rank of small integer matrices.

/// Rank by fraction-free (Bareiss) elimination.
///
/// Every intermediate value is a minor of the input, so for the tiny matrices
/// used here (entries below 2^31, at most a handful of rows and columns) the
/// arithmetic stays well inside `i128`. Overflow panics rather than wraps.
pub fn rank(rows: &[Vec<i128>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let n_rows = m.len();
    if n_rows == 0 {
        return 0;
    }
    let n_cols = m[0].len();
    debug_assert!(m.iter().all(|r| r.len() == n_cols));
    let mut rank = 0;
    let mut prev = 1i128;
    for col in 0..n_cols {
        if rank == n_rows {
            break;
        }
        let Some(pivot) = (rank..n_rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..n_rows {
            for c in col + 1..n_cols {
                let v = m[rank][col]
                    .checked_mul(m[r][c])
                    .and_then(|a| {
                        m[r][col]
                            .checked_mul(m[rank][c])
                            .and_then(|b| a.checked_sub(b))
                    })
                    .expect("overflow in exact elimination");
                debug_assert_eq!(v % prev, 0);
                m[r][c] = v / prev;
            }
            m[r][col] = 0;
        }
        prev = m[rank][col];
        rank += 1;
    }
    rank
}

/// Whether `v` lies outside the row span of `rows`.
pub fn outside_span(rows: &[Vec<i128>], v: &[i128]) -> bool {
    let mut ext = rows.to_vec();
    ext.push(v.to_vec());
    rank(&ext) > rank(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[vec![0, 0]]), 0);
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank(&[vec![1, 2], vec![2, 5]]), 2);
        assert_eq!(rank(&[vec![0, 3], vec![0, 7], vec![1, 1]]), 2);
        assert_eq!(rank(&[vec![2, 4, 6], vec![1, 2, 3], vec![3, 6, 10]]), 2);
    }

    #[test]
    fn span_membership() {
        let rows = vec![vec![3, 5]];
        assert!(!outside_span(&rows, &[6, 10]));
        assert!(outside_span(&rows, &[6, 11]));
        assert!(outside_span(&[], &[0, 1]));
        assert!(!outside_span(&[], &[0, 0]));
    }

    #[test]
    fn large_entries() {
        let big = (1i128 << 31) - 1;
        assert_eq!(rank(&[vec![big, big - 1], vec![big - 1, big - 2]]), 2);
        assert_eq!(rank(&[vec![big, big], vec![big, big], vec![1, 2]]), 2);
    }
}
