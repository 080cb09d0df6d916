//! Exact sparse linear algebra over [`Scalar`].
//!
//! Vectors are sorted `(column, value)` lists without zero entries. The
//! central type is [`RowEchelon`], an incrementally maintained fully reduced
//! row echelon form.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::scalar::Scalar;

pub type SparseVec = Vec<(usize, Scalar)>;

/// Builds a sparse vector from arbitrary entries, summing duplicates.
pub fn sparse_from<I: IntoIterator<Item = (usize, Scalar)>>(entries: I) -> SparseVec {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (c, v) in entries {
        add_into(&mut acc, c, &v);
    }
    acc.into_iter().collect()
}

fn add_into(acc: &mut BTreeMap<usize, Scalar>, c: usize, v: &Scalar) {
    if v.is_zero() {
        return;
    }
    match acc.entry(c) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(v.clone());
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get() + v;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// `x + a*y`
pub fn axpy(x: &[(usize, Scalar)], a: &Scalar, y: &[(usize, Scalar)]) -> SparseVec {
    if a.is_zero() {
        return x.to_vec();
    }
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push(x[i].clone());
            i += 1;
        } else if i == x.len() || y[j].0 < x[i].0 {
            out.push((y[j].0, a * &y[j].1));
            j += 1;
        } else {
            let v = &x[i].1 + &(a * &y[j].1);
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(x: &[(usize, Scalar)], a: &Scalar) -> SparseVec {
    if a.is_zero() {
        return Vec::new();
    }
    x.iter().map(|(c, v)| (*c, v * a)).collect()
}

pub fn entry(x: &[(usize, Scalar)], c: usize) -> Option<&Scalar> {
    x.binary_search_by_key(&c, |e| e.0).ok().map(|i| &x[i].1)
}

/// Fully reduced row echelon form, grown one vector at a time.
///
/// Every row has leading entry 1 at its pivot column, and no row has a
/// nonzero entry in another row's pivot column.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RowEchelon {
    rows: Vec<SparseVec>,
    pivots: BTreeMap<usize, usize>,
}

impl RowEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vectors<'a, I: IntoIterator<Item = &'a SparseVec>>(vectors: I) -> Self {
        let mut out = Self::new();
        for v in vectors {
            out.insert(v);
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Rows sorted by pivot column.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.pivots.values().map(move |&i| &self.rows[i])
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Rows whose pivot column is at least `first` (for RREF these rows are
    /// supported entirely on columns `>= first`).
    pub fn rows_from(&self, first: usize) -> impl Iterator<Item = &SparseVec> {
        self.pivots.range(first..).map(move |(_, &i)| &self.rows[i])
    }

    pub fn rank_from(&self, first: usize) -> usize {
        self.pivots.range(first..).count()
    }

    /// Canonical representative of `v` modulo the row space.
    pub fn reduce(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let hits: Vec<(usize, Scalar)> = v
            .iter()
            .filter(|(c, _)| self.pivots.contains_key(c))
            .cloned()
            .collect();
        if hits.is_empty() {
            return v.to_vec();
        }
        let mut acc: BTreeMap<usize, Scalar> = v.iter().cloned().collect();
        for (c, a) in hits {
            let neg = -&a;
            for (j, b) in &self.rows[self.pivots[&c]] {
                add_into(&mut acc, *j, &(&neg * b));
            }
        }
        acc.into_iter().collect()
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the row space; returns the pivot column if the rank grew.
    pub fn insert(&mut self, v: &[(usize, Scalar)]) -> Option<usize> {
        let r = self.reduce(v);
        self.insert_reduced(r)
    }

    /// Like [`insert`](Self::insert) for a vector already reduced by `self`.
    pub fn insert_reduced(&mut self, r: SparseVec) -> Option<usize> {
        let (p, lead) = r.first()?.clone();
        let inv = lead.inv().expect("nonzero leading entry");
        let r = scale(&r, &inv);
        for row in &mut self.rows {
            if let Some(a) = entry(row, p) {
                let neg = -a;
                *row = axpy(row, &neg, &r);
            }
        }
        self.pivots.insert(p, self.rows.len());
        self.rows.push(r);
        Some(p)
    }

    /// Null space basis of the matrix whose rows are these rows, with
    /// `ncols` columns.
    pub fn kernel(&self, ncols: usize) -> Vec<SparseVec> {
        let mut out = Vec::new();
        for f in (0..ncols).filter(|c| !self.pivots.contains_key(c)) {
            let mut v = vec![(f, Scalar::one())];
            for (&p, &i) in &self.pivots {
                if let Some(a) = entry(&self.rows[i], f) {
                    v.push((p, -a));
                }
            }
            v.sort_by_key(|e| e.0);
            out.push(v);
        }
        out
    }
}

/// Exact coordinates of `rhs` in terms of `columns`, if it lies in their span.
/// Free variables are set to zero.
pub fn solve(columns: &[SparseVec], rhs: &[(usize, Scalar)]) -> Option<Vec<Scalar>> {
    let m = columns.len();
    // transpose: one equation per coordinate, with the right-hand side in column m
    let mut eqs: BTreeMap<usize, SparseVec> = BTreeMap::new();
    for (j, col) in columns.iter().enumerate() {
        for (pos, v) in col {
            eqs.entry(*pos).or_default().push((j, v.clone()));
        }
    }
    for (pos, v) in rhs {
        eqs.entry(*pos).or_default().push((m, v.clone()));
    }
    let mut ech = RowEchelon::new();
    for eq in eqs.values() {
        ech.insert(eq);
    }
    if ech.pivots.contains_key(&m) {
        return None;
    }
    let mut out = vec![Scalar::zero(); m];
    for (&p, &i) in &ech.pivots {
        if let Some(a) = entry(&ech.rows[i], m) {
            out[p] = a.clone();
        }
    }
    Some(out)
}

/// Exact rank of a dense rational matrix.
pub fn rank_dense(m: &[Vec<BigRational>]) -> usize {
    let mut ech = RowEchelon::new();
    for row in m {
        let v: SparseVec = row
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(j, a)| (j, Scalar::rational(a.clone())))
            .collect();
        ech.insert(&v);
    }
    ech.rank()
}

/// Strict diagonal dominance by rows: `|a_ii| > sum_{j != i} |a_ij|`.
pub fn is_strictly_diagonally_dominant(m: &[Vec<BigRational>]) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        assert_eq!(row.len(), m.len(), "matrix must be square");
        let off = row
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(BigRational::zero(), |acc, (_, a)| acc + a.abs());
        row[i].abs() > off
    })
}

/// Whether `m` is strictly diagonally dominant, together with its exact rank.
/// Dominance is expected to force full rank.
pub fn diag_dominant_full_rank(m: &[Vec<BigRational>]) -> (bool, usize) {
    (is_strictly_diagonally_dominant(m), rank_dense(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn axpy_with_zero_keeps_x() {
        let y = vec![(0, Scalar::from_int(-1))];
        assert!(axpy(&[], &Scalar::zero(), &y).is_empty());
    }

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        sparse_from(entries.iter().map(|&(c, v)| (c, Scalar::from_int(v))))
    }

    #[test]
    fn echelon_is_fully_reduced() {
        let mut e = RowEchelon::new();
        assert_eq!(e.insert(&sv(&[(1, 1), (2, 2)])), Some(1));
        assert_eq!(e.insert(&sv(&[(2, 1), (3, 1)])), Some(2));
        let rows: Vec<_> = e.rows().cloned().collect();
        assert_eq!(rows[0], sv(&[(1, 1), (3, -2)]));
        assert_eq!(rows[1], sv(&[(2, 1), (3, 1)]));
        assert_eq!(e.insert(&sv(&[(1, 1), (2, 5), (3, 3)])), None);
        assert!(e.contains(&sv(&[(1, 2), (2, 2), (3, -2)])));
    }

    #[test]
    fn kernel_of_rank_one() {
        let e = RowEchelon::from_vectors(&[sv(&[(0, 1), (1, 1)])]);
        let k = e.kernel(3);
        assert_eq!(k.len(), 2);
        assert_eq!(k[0], sv(&[(0, -1), (1, 1)]));
        assert_eq!(k[1], sv(&[(2, 1)]));
    }

    #[test]
    fn solve_finds_coordinates() {
        let cols = vec![sv(&[(0, 1), (1, 1)]), sv(&[(1, 1)])];
        let a = solve(&cols, &sv(&[(0, 2), (1, 5)])).unwrap();
        assert_eq!(a, vec![Scalar::from_int(2), Scalar::from_int(3)]);
        assert!(solve(&cols, &sv(&[(2, 1)])).is_none());
        assert_eq!(solve(&cols, &[]).unwrap(), vec![Scalar::zero(), Scalar::zero()]);
    }

    #[test]
    fn dominance_examples() {
        let id = vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)], vec![q(0), q(0), q(1)]];
        assert_eq!(diag_dominant_full_rank(&id), (true, 3));
        let m = vec![vec![q(2), q(1)], vec![q(1), q(2)]];
        assert_eq!(diag_dominant_full_rank(&m), (true, 2));
        let m = vec![vec![q(1), q(1)], vec![q(1), q(1)]];
        assert_eq!(diag_dominant_full_rank(&m), (false, 1));
    }
}
