//! Gaussian elimination over the exact scalar field.

use crate::scalars::Scalar;

/// Rank of a matrix given by rows.
pub(crate) fn rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].inv().expect("nonzero pivot");
        let pivot_row: Vec<Scalar> = m[rank].iter().map(|x| x * &inv).collect();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let factor = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&factor * p);
                }
            }
        }
        m[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// Whether `target` lies in the column space of the matrix with these rows.
pub(crate) fn in_column_space(rows: &[Vec<Scalar>], target: &[Scalar]) -> bool {
    let augmented: Vec<Vec<Scalar>> = rows
        .iter()
        .zip(target)
        .map(|(r, t)| r.iter().cloned().chain(std::iter::once(t.clone())).collect())
        .collect();
    rank(&augmented) == rank(rows)
}
