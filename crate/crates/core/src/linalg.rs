//! Exact linear algebra over `Q(i)`: sparse echelon bases with coordinate
//! tracking, and small dense matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Index, IndexMut, Mul, Sub};

use num_traits::{One, Zero};

use crate::scalars::Q;

/// Sparse vector keyed by coordinate index. Zeros are never stored.
pub type SparseVec = BTreeMap<usize, Q>;

/// `v += c·w`.
pub fn axpy(v: &mut SparseVec, c: &Q, w: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (&k, x) in w {
        let term = c * x;
        match v.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(term);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &term;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

pub fn dense_to_sparse(v: &[Q]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (k, x.clone())).collect()
}

/// Outcome of expressing a vector in a span.
#[derive(Debug, Clone, PartialEq)]
pub enum Membership {
    /// Coefficients with respect to the spanning vectors, in insertion order.
    Member(Vec<Q>),
    /// The nonzero remainder after reduction.
    NotMember(SparseVec),
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }

    pub fn coefficients(&self) -> Option<&[Q]> {
        match self {
            Membership::Member(c) => Some(c),
            Membership::NotMember(_) => None,
        }
    }
}

/// A reduced row echelon basis of a subspace, together with the expression
/// of every echelon row in terms of the independent vectors that were
/// inserted. Pivots are the first nonzero coordinate in index order.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
    combos: Vec<Vec<Q>>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Pivot coordinates in ascending order.
    pub fn pivots(&self) -> Vec<usize> {
        let mut p = self.pivots.clone();
        p.sort_unstable();
        p
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    fn reduce(&self, v: &SparseVec) -> (Vec<Q>, SparseVec) {
        let mut residual = v.clone();
        let mut coeffs = vec![Q::zero(); self.rows.len()];
        for (k, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if let Some(c) = residual.get(&p).cloned() {
                axpy(&mut residual, &-c.clone(), row);
                coeffs[k] = c;
            }
        }
        (coeffs, residual)
    }

    pub fn coordinates(&self, v: &SparseVec) -> Membership {
        let (coeffs, residual) = self.reduce(v);
        if !residual.is_empty() {
            return Membership::NotMember(residual);
        }
        let n = self.rows.len();
        let mut out = vec![Q::zero(); n];
        for (c, combo) in coeffs.iter().zip(&self.combos) {
            if c.is_zero() {
                continue;
            }
            for (o, t) in out.iter_mut().zip(combo) {
                *o += &(c * t);
            }
        }
        Membership::Member(out)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).1.is_empty()
    }

    /// Inserts `v`; returns false (and leaves the basis unchanged) when `v`
    /// is already in the span.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let (coeffs, residual) = self.reduce(v);
        let Some((&p, piv)) = residual.iter().next() else {
            return false;
        };
        let inv = piv.checked_inv().expect("pivot is nonzero");
        let n = self.rows.len();
        let mut new_row = SparseVec::new();
        axpy(&mut new_row, &inv, &residual);

        // new_row = (v − Σ coeffs_k row_k) / piv in terms of inserted vectors.
        let mut combo = vec![Q::zero(); n + 1];
        combo[n] = Q::one();
        for (c, old) in coeffs.iter().zip(&self.combos) {
            if c.is_zero() {
                continue;
            }
            for (o, t) in combo.iter_mut().zip(old) {
                *o -= &(c * t);
            }
        }
        for x in combo.iter_mut() {
            *x *= &inv;
        }

        for (row, old) in self.rows.iter_mut().zip(self.combos.iter_mut()) {
            old.push(Q::zero());
            if let Some(c) = row.get(&p).cloned() {
                axpy(row, &-c.clone(), &new_row);
                for (o, t) in old.iter_mut().zip(&combo) {
                    *o -= &(&c * t);
                }
            }
        }
        self.rows.push(new_row);
        self.pivots.push(p);
        self.combos.push(combo);
        true
    }
}

/// Dense row-major matrix over `Q(i)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix unit with a 1 at zero-based `(row, col)`.
    pub fn unit(n: usize, row: usize, col: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(row, col)] = Q::one();
        m
    }

    pub fn diagonal(d: &[Q]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (k, x) in d.iter().enumerate() {
            m[(k, k)] = x.clone();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn diag(&self) -> Vec<Q> {
        (0..self.rows.min(self.cols)).map(|k| self[(k, k)].clone()).collect()
    }

    pub fn trace(&self) -> Q {
        self.diag().into_iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self[(r, c)].is_zero()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn bracket(&self, rhs: &Self) -> Self {
        &(self * rhs) - &(rhs * self)
    }

    /// Entries flattened row by row.
    pub fn as_slice(&self) -> &[Q] {
        &self.data
    }

    /// First nonzero entry in row-major order, zero-based.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &Q)> {
        self.data.iter().position(|x| !x.is_zero()).map(|k| (k / self.cols, k % self.cols, &self.data[k]))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&k| !m[(k, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].checked_inv().expect("nonzero pivot");
            for k in c..m.cols {
                m[(r, k)] = &m[(r, k)] * &inv;
            }
            for k in 0..m.rows {
                if k == r || m[(k, c)].is_zero() {
                    continue;
                }
                let f = m[(k, c)].clone();
                for t in c..m.cols {
                    let d = &f * &m[(r, t)];
                    m[(k, t)] -= &d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : self·x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Q::zero(); self.cols];
                x[f] = Q::one();
                for (r, &p) in pivots.iter().enumerate() {
                    x[p] = -m[(r, f)].clone();
                }
                x
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = Q;
    fn index(&self, (r, c): (usize, usize)) -> &Q {
        assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Q {
        assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &DenseMatrix {
    type Output = DenseMatrix;
    fn mul(self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = DenseMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl Sub for &DenseMatrix {
    type Output = DenseMatrix;
    fn sub(self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for r in 0..self.rows {
            let line: Vec<String> =
                (0..self.cols).map(|c| format!("{:>width$}", cells[r * self.cols + c])).collect();
            writeln!(f, "{}", line.join("  "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\n{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(k, x)| (k, Q::from(x))).collect()
    }

    #[test]
    fn echelon_tracks_coordinates() {
        let mut e = Echelon::new();
        let a = sv(&[(0, 1), (2, 3)]);
        let b = sv(&[(0, 2), (1, 1)]);
        assert!(e.insert(&a));
        assert!(e.insert(&b));
        let mut target = SparseVec::new();
        axpy(&mut target, &Q::from(5), &a);
        axpy(&mut target, &Q::imag_frac(-1, 2), &b);
        assert!(!e.insert(&target));
        assert_eq!(e.coordinates(&target), Membership::Member(vec![Q::from(5), Q::imag_frac(-1, 2)]));
        assert_eq!(e.coordinates(&SparseVec::new()), Membership::Member(vec![Q::zero(), Q::zero()]));
        assert!(!e.coordinates(&sv(&[(3, 1)])).is_member());
        assert_eq!(e.pivots(), vec![0, 1]);
    }

    #[test]
    fn rank_and_nullspace() {
        let m = DenseMatrix::from_rows(vec![
            vec![Q::from(1), Q::from(2), Q::from(3)],
            vec![Q::from(2), Q::from(4), Q::from(6)],
            vec![Q::from(0), Q::from(1), Q::i()],
        ]);
        assert_eq!(m.rank(), 2);
        let ker = m.nullspace();
        assert_eq!(ker.len(), 1);
        let x = DenseMatrix::from_rows(ker[0].iter().map(|v| vec![v.clone()]).collect());
        assert!((&m * &x).is_zero());
    }

    #[test]
    fn identity_is_full_rank() {
        assert_eq!(DenseMatrix::identity(6).rank(), 6);
        assert!(DenseMatrix::identity(4).nullspace().is_empty());
    }
}
