//! Dense and sparse exact linear algebra.
//!
//! Kernel bases are always read off a reduced row echelon form, one vector per
//! free column in increasing column order. Everything downstream that
//! enumerates a basis (hom spaces in particular) inherits this ordering.

use std::collections::BTreeMap;
use std::fmt;

use crate::field::Field;

/// A dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| F::from_i64(x)).collect()).collect())
    }

    /// The matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn scalar(a: F) -> Self {
        Matrix { rows: 1, cols: 1, data: vec![a] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Panics on a shape mismatch; callers check typing first.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let orow = other.row(k);
                let base = i * other.cols;
                for (j, b) in orow.iter().enumerate() {
                    if !b.is_zero() {
                        let cur = std::mem::replace(&mut out.data[base + j], F::zero());
                        out.data[base + j] = cur + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + a.clone() * b.clone();
                    }
                }
                acc
            })
            .collect()
    }

    /// Kronecker product; the left factor indexes the slow coordinate.
    pub fn kron(&self, other: &Self) -> Self {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Self::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a.clone() * b.clone());
                        }
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "matrix difference shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }

    pub fn scale(&self, a: &F) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| a.clone() * x.clone()).collect() }
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(rows.len(), self.cols, |i, j| self.get(rows[i], j).clone())
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
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j).clone() * inv.clone();
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let pv = m.get(r, j);
                    if !pv.is_zero() {
                        let v = m.get(i, j).clone() - f.clone() * pv.clone();
                        m.set(i, j, v);
                    }
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

    /// Basis of `{v : self * v = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        kernel_from_rref(self.cols, |k, j| r.get(k, j).clone(), &pivots)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&Self::identity(n)).rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Some `x` with `self * x = b`.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Self::from_columns(self.rows, &[b.to_vec()]));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (k, &p) in pivots.iter().enumerate() {
            x[p] = r.get(k, self.cols).clone();
        }
        Some(x)
    }

    /// Some `X` with `self * X = b`.
    pub fn solve_matrix(&self, b: &Self) -> Option<Self> {
        assert_eq!(b.rows, self.rows);
        let (r, pivots) = self.hstack(b).rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(self.cols, b.cols);
        for (k, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, r.get(k, self.cols + j).clone());
            }
        }
        Some(x)
    }

    /// Basis of the column space, taken from the pivot columns.
    pub fn column_space(&self) -> Vec<Vec<F>> {
        let (_, pivots) = self.rref();
        pivots.iter().map(|&j| self.column(j)).collect()
    }
}

fn kernel_from_rref<F: Field>(ncols: usize, entry: impl Fn(usize, usize) -> F, pivots: &[usize]) -> Vec<Vec<F>> {
    let mut is_pivot = vec![None; ncols];
    for (k, &p) in pivots.iter().enumerate() {
        is_pivot[p] = Some(k);
    }
    (0..ncols)
        .filter(|&j| is_pivot[j].is_none())
        .map(|free| {
            let mut v = vec![F::zero(); ncols];
            v[free] = F::one();
            for (k, &p) in pivots.iter().enumerate() {
                if p < free {
                    v[p] = -entry(k, free);
                }
            }
            v
        })
        .collect()
}

impl<F: fmt::Display> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> =
                self.data[i * self.cols..(i + 1) * self.cols].iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> =
                self.data[i * self.cols..(i + 1) * self.cols].iter().map(|x| format!("{x:?}")).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Quotient of `F^n` by the span of some vectors.
///
/// The quotient basis is the set of standard vectors at non-pivot positions
/// of the reduced spanning set, so `lift` is a coordinate inclusion.
#[derive(Clone, Debug)]
pub struct Quotient<F> {
    pub ambient: usize,
    /// `dim(quotient) x ambient`.
    pub map: Matrix<F>,
    /// Ambient index of each quotient basis vector.
    pub complement: Vec<usize>,
}

impl<F: Field> Quotient<F> {
    pub fn new(ambient: usize, relations: &[Vec<F>]) -> Self {
        let mut sys = SparseEchelon::new(ambient);
        for r in relations {
            sys.push_dense(r);
        }
        Self::from_echelon(sys)
    }

    /// Quotient by the span of sparse relation rows.
    pub fn from_sparse(ambient: usize, relations: impl IntoIterator<Item = Vec<(usize, F)>>) -> Self {
        let mut sys = SparseEchelon::new(ambient);
        for r in relations {
            sys.push(r);
        }
        Self::from_echelon(sys)
    }

    fn from_echelon(mut sys: SparseEchelon<F>) -> Self {
        let ambient = sys.ncols;
        sys.reduce_fully();
        let complement: Vec<usize> = (0..ambient).filter(|j| !sys.pivots.contains_key(j)).collect();
        let mut index = vec![usize::MAX; ambient];
        for (k, &j) in complement.iter().enumerate() {
            index[j] = k;
        }
        let mut map = Matrix::zeros(complement.len(), ambient);
        for (k, &j) in complement.iter().enumerate() {
            map.set(k, j, F::one());
        }
        for (&p, row) in &sys.pivots {
            for (j, v) in row {
                if *j != p {
                    map.set(index[*j], p, -v.clone());
                }
            }
        }
        Quotient { ambient, map, complement }
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn project(&self, v: &[F]) -> Vec<F> {
        self.map.apply(v)
    }
}

/// Incremental sparse row echelon form, for systems with many unknowns and
/// very sparse equations (intertwiner and commutant constraints).
#[derive(Clone, Debug)]
pub struct SparseEchelon<F> {
    ncols: usize,
    /// pivot column -> normalized row (pivot entry 1, all entries at columns >= pivot)
    pivots: BTreeMap<usize, Vec<(usize, F)>>,
}

impl<F: Field> SparseEchelon<F> {
    pub fn new(ncols: usize) -> Self {
        SparseEchelon { ncols, pivots: BTreeMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn push_dense(&mut self, row: &[F]) -> bool {
        self.push(row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, v)| (j, v.clone())).collect())
    }

    /// Adds an equation; returns whether it raised the rank.
    pub fn push(&mut self, row: Vec<(usize, F)>) -> bool {
        let mut work: BTreeMap<usize, F> = BTreeMap::new();
        for (j, v) in row {
            assert!(j < self.ncols, "column out of range");
            if v.is_zero() {
                continue;
            }
            let cur = work.remove(&j).unwrap_or_else(F::zero) + v;
            if !cur.is_zero() {
                work.insert(j, cur);
            }
        }
        loop {
            let Some((&lead, _)) = work.iter().next() else { return false };
            let Some(prow) = self.pivots.get(&lead) else { break };
            let coef = work.remove(&lead).unwrap();
            for (j, v) in prow.iter().skip(1) {
                let cur = work.remove(j).unwrap_or_else(F::zero) - coef.clone() * v.clone();
                if !cur.is_zero() {
                    work.insert(*j, cur);
                }
            }
        }
        // the leading entry has no pivot yet, but later entries might
        let mut row: Vec<(usize, F)> = Vec::with_capacity(work.len());
        let mut rest: BTreeMap<usize, F> = work;
        let (lead, lv) = rest.pop_first().unwrap();
        let inv = lv.inv().unwrap();
        row.push((lead, F::one()));
        // partially reduce the tail for sparsity of later steps
        loop {
            let next = rest.iter().find(|(j, _)| self.pivots.contains_key(j)).map(|(j, _)| *j);
            let Some(j) = next else { break };
            let coef = rest.remove(&j).unwrap();
            for (k, v) in self.pivots[&j].iter().skip(1) {
                let cur = rest.remove(k).unwrap_or_else(F::zero) - coef.clone() * v.clone();
                if !cur.is_zero() {
                    rest.insert(*k, cur);
                }
            }
        }
        row.extend(rest.into_iter().map(|(j, v)| (j, v * inv.clone())));
        self.pivots.insert(lead, row);
        true
    }

    /// Brings the system to reduced echelon form.
    pub fn reduce_fully(&mut self) {
        let keys: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for p in keys {
            let row = self.pivots.remove(&p).unwrap();
            let mut work: BTreeMap<usize, F> = row.into_iter().collect();
            let mut changed = true;
            while changed {
                changed = false;
                let hit = work.keys().copied().find(|j| *j != p && self.pivots.contains_key(j));
                if let Some(j) = hit {
                    let coef = work.remove(&j).unwrap();
                    for (k, v) in &self.pivots[&j] {
                        if *k == j {
                            continue;
                        }
                        let cur = work.remove(k).unwrap_or_else(F::zero) - coef.clone() * v.clone();
                        if !cur.is_zero() {
                            work.insert(*k, cur);
                        }
                    }
                    changed = true;
                }
            }
            self.pivots.insert(p, work.into_iter().collect());
        }
    }

    /// Kernel basis in the same ordering as [`Matrix::nullspace`].
    pub fn nullspace(&mut self) -> Vec<Vec<F>> {
        self.reduce_fully();
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|j| !self.pivots.contains_key(j)) {
            let mut v = vec![F::zero(); self.ncols];
            v[free] = F::one();
            out.push(v);
        }
        let frees: Vec<usize> = (0..self.ncols).filter(|j| !self.pivots.contains_key(j)).collect();
        let mut index = vec![usize::MAX; self.ncols];
        for (k, &j) in frees.iter().enumerate() {
            index[j] = k;
        }
        for (&p, row) in &self.pivots {
            for (j, v) in row {
                if *j != p {
                    out[index[*j]][p] = -v.clone();
                }
            }
        }
        out
    }

    /// Columns without a pivot, ascending. A kernel vector is determined by
    /// its entries at these positions.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|j| !self.pivots.contains_key(j)).collect()
    }

    /// Whether the system has a solution with `x[col] = 1` forced; used for
    /// affine constraints encoded with an extra constant column.
    pub fn is_consistent_with_constant(&self, constant_col: usize) -> bool {
        !self.pivots.contains_key(&constant_col)
    }
}

/// Coordinates of `v` in the basis `basis` (vectors of equal length), if `v`
/// lies in their span.
pub fn coordinates<F: Field>(basis: &[Vec<F>], v: &[F]) -> Option<Vec<F>> {
    if basis.is_empty() {
        return v.iter().all(F::is_zero).then(Vec::new);
    }
    Matrix::from_columns(v.len(), basis).solve(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    fn naive_product(a: &Matrix<Q>, b: &Matrix<Q>) -> Matrix<Q> {
        Matrix::from_fn(a.rows(), b.cols(), |i, j| {
            (0..a.cols()).fold(Q::zero(), |acc, k| acc + a.get(i, k).clone() * b.get(k, j).clone())
        })
    }

    #[test]
    fn product_matches_triple_loop() {
        let a = Matrix::<Q>::from_i64(&[&[1, -2], &[0, 3], &[5, 7]]);
        let b = Matrix::<Q>::from_i64(&[&[2, 0, 1, -1], &[4, 1, 0, 9]]);
        assert_eq!(a.mul(&b), naive_product(&a, &b));
    }

    #[test]
    fn dense_and_sparse_kernels_agree() {
        let a = Matrix::<Q>::from_i64(&[&[1, 2, 0, -1, 3], &[2, 4, 1, 0, 0], &[3, 6, 1, -1, 3]]);
        let mut s = SparseEchelon::new(5);
        for i in 0..3 {
            s.push_dense(a.row(i));
        }
        assert_eq!(a.nullspace(), s.nullspace());
        for v in a.nullspace() {
            assert!(a.apply(&v).iter().all(Q::is_zero));
        }
    }

    #[test]
    fn quotient_kills_relations() {
        let rel = vec![vec![Q::one(), Q::from_i64(-1), Q::zero()], vec![Q::zero(), Q::one(), Q::from_i64(2)]];
        let q = Quotient::new(3, &rel);
        assert_eq!(q.dim(), 1);
        for r in &rel {
            assert!(q.project(r).iter().all(Q::is_zero));
        }
        // lift is a coordinate inclusion
        let mut e = vec![Q::zero(); 3];
        e[q.complement[0]] = Q::one();
        assert_eq!(q.project(&e), vec![Q::one()]);
    }

    #[test]
    fn inverse_round_trip() {
        let a = Matrix::<Q>::from_i64(&[&[2, 1], &[7, 4]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(Matrix::<Q>::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}
