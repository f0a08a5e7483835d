//! Dense Gaussian elimination over a [`FieldSpec`].
//!
//! Matrices here are plain row vectors; this is the workhorse behind kernel
//! computations for invariant subspaces, quotient ranks and form checks.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

pub type DenseRows = Vec<Vec<Scalar>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn row_reduce(rows: &mut DenseRows, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = &*x - &(&factor * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Scalar>], ncols: usize) -> usize {
    let mut work = rows.to_vec();
    row_reduce(&mut work, ncols).len()
}

/// A sparse row: column index to nonzero entry.
pub type SparseRow = BTreeMap<usize, Scalar>;

/// Rank of a set of sparse rows by incremental elimination against pivots
/// keyed on their leading column. Suited to very sparse presentations such
/// as `{ e_w - e_{sigma w} }`, where fill-in stays small.
pub fn sparse_rank(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for mut row in rows {
        while let Some((&lead, coeff)) = row.iter().next() {
            let Some(pivot) = pivots.get(&lead) else {
                let inv = coeff.inv().expect("entries are nonzero");
                for x in row.values_mut() {
                    *x = &*x * &inv;
                }
                pivots.insert(lead, row);
                break;
            };
            let factor = coeff.clone();
            for (&c, y) in pivot {
                let updated = match row.get(&c) {
                    Some(x) => x - &(&factor * y),
                    None => -(&factor * y),
                };
                if updated.is_zero() {
                    row.remove(&c);
                } else {
                    row.insert(c, updated);
                }
            }
        }
    }
    pivots.len()
}

/// A basis of `{ v : A v = 0 }` for the `nrows x ncols` matrix `rows`.
pub fn kernel(rows: &[Vec<Scalar>], ncols: usize, field: FieldSpec) -> Vec<Vec<Scalar>> {
    let mut work = rows.to_vec();
    let pivots = row_reduce(&mut work, ncols);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Scalar::zero(field); ncols];
        v[free] = Scalar::one(field);
        for (row, &pc) in work.iter().zip(&pivots) {
            v[pc] = -&row[free];
        }
        basis.push(v);
    }
    basis
}

/// Inverse of a square matrix, or [`Error::Singular`].
pub fn inverse(rows: &[Vec<Scalar>], field: FieldSpec) -> Result<DenseRows> {
    let n = rows.len();
    let mut aug: DenseRows = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Scalar::one(field)
                } else {
                    Scalar::zero(field)
                }
            }));
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug, n);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
        return Err(Error::Singular);
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(field: FieldSpec, data: &[&[i64]]) -> DenseRows {
        data.iter()
            .map(|r| r.iter().map(|&x| Scalar::from_i64(field, x)).collect())
            .collect()
    }

    fn mul_vec(a: &DenseRows, v: &[Scalar]) -> Vec<Scalar> {
        a.iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(Scalar::zero(v[0].field()), |acc, (x, y)| &acc + &(x * y))
            })
            .collect()
    }

    #[test]
    fn sparse_rank_matches_dense() {
        for field in [FieldSpec::RATIONALS, FieldSpec::prime(2).unwrap(), FieldSpec::prime(3).unwrap()] {
            let dense = m(field, &[&[1, -1, 0, 0], &[0, 1, -1, 0], &[-1, 0, 1, 0], &[0, 0, 2, 2], &[1, 1, 1, 1]]);
            let sparse = dense.iter().map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(c, x)| (c, x.clone()))
                    .collect::<SparseRow>()
            });
            assert_eq!(sparse_rank(sparse), rank(&dense, 4), "{field}");
        }
    }

    #[test]
    fn rank_depends_on_characteristic() {
        let q = FieldSpec::RATIONALS;
        let f2 = FieldSpec::prime(2).unwrap();
        let data: &[&[i64]] = &[&[1, 1], &[1, -1]];
        assert_eq!(rank(&m(q, data), 2), 2);
        assert_eq!(rank(&m(f2, data), 2), 1);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let q = FieldSpec::RATIONALS;
        let a = m(q, &[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let ker = kernel(&a, 4, q);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(mul_vec(&a, v).iter().all(Scalar::is_zero));
        }
        assert_eq!(rank(&ker, 4), 2);
    }

    #[test]
    fn inverse_roundtrip_and_singular() {
        let f7 = FieldSpec::prime(7).unwrap();
        let a = m(f7, &[&[2, 1], &[5, 3]]);
        let inv = inverse(&a, f7).unwrap();
        let col0 = mul_vec(&a, &[inv[0][0].clone(), inv[1][0].clone()]);
        assert!(col0[0].is_one() && col0[1].is_zero());
        let s = m(f7, &[&[1, 2], &[2, 4]]);
        assert_eq!(inverse(&s, f7), Err(Error::Singular));
    }
}
