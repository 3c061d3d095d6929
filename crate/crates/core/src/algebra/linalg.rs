//! Exact Gaussian elimination.
//!
//! Matrices are plain row vectors (`Vec<Vec<E>>`). Subspaces are stored as
//! [`EchelonSpace`]s, whose reduced row-echelon basis is canonical, so two
//! spaces are equal exactly when their representations are equal.

use crate::error::{Error, Result};
use crate::field::Field;

/// Row-reduces `rows` in place, looking for pivots in the column order given
/// by `order`. Zero rows are dropped; the remaining rows are sorted by the
/// position of their pivot in `order`. Returns the pivot columns.
pub fn rref_with_order<F: Field>(field: &F, rows: &mut Vec<Vec<F::Elem>>, order: &[usize]) -> Vec<usize> {
    field.row_reduce(rows, order)
}

/// Plain Gauss-Jordan elimination; the default [`Field::row_reduce`].
pub fn gauss_jordan<F: Field>(field: &F, rows: &mut Vec<Vec<F::Elem>>, order: &[usize]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in order {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, found);
        let inv = field.inv(&rows[r][c]).expect("nonzero pivot");
        if inv != field.one() {
            for x in rows[r].iter_mut() {
                *x = field.mul(x, &inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !field.is_zero(p) {
                    *x = field.sub(x, &field.mul(&factor, p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Row-reduces with the standard column order.
pub fn rref<F: Field>(field: &F, rows: &mut Vec<Vec<F::Elem>>) -> Vec<usize> {
    let n = rows.first().map_or(0, |r| r.len());
    let order: Vec<usize> = (0..n).collect();
    rref_with_order(field, rows, &order)
}

pub fn rank<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m).len()
}

/// Rank of the matrix and its (right) kernel `{x : M x = 0}`.
pub fn rref_rank_kernel<F: Field>(
    field: &F,
    rows: &[Vec<F::Elem>],
    ncols: usize,
) -> Result<(usize, EchelonSpace<F::Elem>)> {
    if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
        return Err(Error::Dimension(format!("row of length {} in a matrix with {ncols} columns", bad.len())));
    }
    let mut m = rows.to_vec();
    let order: Vec<usize> = (0..ncols).collect();
    let pivots = rref_with_order(field, &mut m, &order);
    let rank = pivots.len();
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::with_capacity(ncols - rank);
    for f in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); ncols];
        v[f] = field.one();
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = field.neg(&row[f]);
        }
        basis.push(v);
    }
    Ok((rank, EchelonSpace::from_vectors(field, ncols, basis)))
}

pub fn kernel<F: Field>(field: &F, rows: &[Vec<F::Elem>], ncols: usize) -> EchelonSpace<F::Elem> {
    rref_rank_kernel(field, rows, ncols).expect("well-formed matrix").1
}

pub fn determinant<F: Field>(field: &F, mut rows: Vec<Vec<F::Elem>>) -> F::Elem {
    let n = rows.len();
    let mut det = field.one();
    for c in 0..n {
        let Some(found) = (c..n).find(|&i| !field.is_zero(&rows[i][c])) else {
            return field.zero();
        };
        if found != c {
            rows.swap(c, found);
            det = field.neg(&det);
        }
        det = field.mul(&det, &rows[c][c]);
        let inv = field.inv(&rows[c][c]).expect("nonzero pivot");
        for i in c + 1..n {
            if field.is_zero(&rows[i][c]) {
                continue;
            }
            let factor = field.mul(&rows[i][c], &inv);
            for j in c..n {
                let t = field.mul(&factor, &rows[c][j]);
                rows[i][j] = field.sub(&rows[i][j], &t);
            }
        }
    }
    det
}

pub fn transpose<E: Clone>(rows: &[Vec<E>]) -> Vec<Vec<E>> {
    let Some(first) = rows.first() else {
        return Vec::new();
    };
    (0..first.len()).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_mul<F: Field>(field: &F, a: &[Vec<F::Elem>], b: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let bt = transpose(b);
    a.iter().map(|row| bt.iter().map(|col| field.dot(row, col)).collect()).collect()
}

pub fn mat_vec<F: Field>(field: &F, a: &[Vec<F::Elem>], v: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().map(|row| field.dot(row, v)).collect()
}

pub fn identity<F: Field>(field: &F, n: usize) -> Vec<Vec<F::Elem>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect())
        .collect()
}

pub fn inverse<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> Option<Vec<Vec<F::Elem>>> {
    let n = m.len();
    let id = identity(field, n);
    let mut aug: Vec<Vec<F::Elem>> = m
        .iter()
        .zip(&id)
        .map(|(r, e)| r.iter().chain(e.iter()).cloned().collect())
        .collect();
    let order: Vec<usize> = (0..n).collect();
    let pivots = rref_with_order(field, &mut aug, &order);
    if pivots.len() < n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Some `x` with `sum_j x_j cols[j] = rhs`, if one exists.
pub fn solve_columns<F: Field>(field: &F, cols: &[Vec<F::Elem>], rhs: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let nvars = cols.len();
    let mut aug: Vec<Vec<F::Elem>> = (0..rhs.len())
        .map(|i| {
            let mut row: Vec<F::Elem> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let pivots = rref(field, &mut aug);
    if pivots.last() == Some(&nvars) {
        return None;
    }
    let mut x = vec![field.zero(); nvars];
    for (row, &p) in aug.iter().zip(&pivots) {
        x[p] = row[nvars].clone();
    }
    Some(x)
}

/// A subspace of `F^n` with its canonical reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EchelonSpace<E> {
    ambient: usize,
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone + PartialEq + Eq + std::hash::Hash + std::fmt::Debug> EchelonSpace<E> {
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full<F: Field<Elem = E>>(field: &F, ambient: usize) -> Self {
        Self { ambient, rows: identity(field, ambient), pivots: (0..ambient).collect() }
    }

    pub fn from_vectors<F: Field<Elem = E>>(field: &F, ambient: usize, vectors: Vec<Vec<E>>) -> Self {
        debug_assert!(vectors.iter().all(|v| v.len() == ambient));
        let mut rows = vectors;
        let pivots = rref(field, &mut rows);
        Self { ambient, rows, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<E>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after clearing the pivot columns; zero iff `v` lies
    /// in the space.
    pub fn reduce<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if field.is_zero(&out[p]) {
                continue;
            }
            let c = out[p].clone();
            for (x, r) in out.iter_mut().zip(row) {
                if !field.is_zero(r) {
                    *x = field.sub(x, &field.mul(&c, r));
                }
            }
        }
        out
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> bool {
        self.reduce(field, v).iter().all(|x| field.is_zero(x))
    }

    pub fn contains_space<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> bool {
        other.rows.iter().all(|v| self.contains(field, v))
    }

    pub fn sum<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let vectors = self.rows.iter().chain(&other.rows).cloned().collect();
        Self::from_vectors(field, self.ambient, vectors)
    }

    /// The space of functionals vanishing on `self`, in dual coordinates.
    pub fn annihilator<F: Field<Elem = E>>(&self, field: &F) -> Self {
        kernel(field, &self.rows, self.ambient)
    }

    pub fn intersection<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.annihilator(field).sum(field, &other.annihilator(field)).annihilator(field)
    }
}
