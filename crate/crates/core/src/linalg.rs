//! Exact linear algebra over the rationals.
//!
//! Dense matrices handle the small structure computations; sparse vectors and
//! column-sparse matrices carry the operators on form spaces, which can have
//! tens of thousands of basis vectors.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::scalar::Scalar;

/// Errors from linear solves and shape checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinAlgError {
    NoSolution,
    Singular,
    ShapeMismatch { expected: usize, found: usize },
}

impl fmt::Display for LinAlgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinAlgError::NoSolution => write!(f, "linear system has no solution"),
            LinAlgError::Singular => write!(f, "matrix is singular"),
            LinAlgError::ShapeMismatch { expected, found } => {
                write!(f, "shape mismatch: expected {expected}, found {found}")
            }
        }
    }
}

/// A sparse vector: coordinate index to nonzero value.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SparseVec(BTreeMap<usize, Scalar>);

impl SparseVec {
    pub fn new() -> Self {
        SparseVec(BTreeMap::new())
    }

    pub fn unit(i: usize) -> Self {
        let mut v = SparseVec::new();
        v.0.insert(i, Scalar::one());
        v
    }

    pub fn from_dense(d: &[Scalar]) -> Self {
        let mut v = SparseVec::new();
        for (i, x) in d.iter().enumerate() {
            if !x.is_zero() {
                v.0.insert(i, x.clone());
            }
        }
        v
    }

    pub fn to_dense(&self, n: usize) -> Vec<Scalar> {
        let mut d = vec![Scalar::zero(); n];
        for (i, x) in &self.0 {
            d[*i] = x.clone();
        }
        d
    }

    pub fn get(&self, i: usize) -> Scalar {
        self.0.get(&i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.0.iter().map(|(i, x)| (*i, x))
    }

    /// Adds `c` at coordinate `i`, dropping the entry if it cancels.
    pub fn add_at(&mut self, i: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.0.get_mut(&i) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.0.remove(&i);
                }
            }
            None => {
                self.0.insert(i, c.clone());
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &SparseVec, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (i, x) in other.iter() {
            self.add_at(i, &(x * c));
        }
    }

    pub fn scaled(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec(self.0.iter().map(|(i, x)| (*i, x * c)).collect())
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        let mut r = self.clone();
        r.add_scaled(other, &-Scalar::one());
        r
    }

    pub fn first(&self) -> Option<(usize, &Scalar)> {
        self.0.iter().next().map(|(i, x)| (*i, x))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.keys().next_back().copied()
    }

    pub fn dot(&self, other: &SparseVec) -> Scalar {
        let (small, large) = if self.nnz() <= other.nnz() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Scalar::zero();
        for (i, x) in small.iter() {
            if let Some(y) = large.0.get(&i) {
                acc += &(x * y);
            }
        }
        acc
    }
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.0.iter()).finish()
    }
}

impl FromIterator<(usize, Scalar)> for SparseVec {
    fn from_iter<T: IntoIterator<Item = (usize, Scalar)>>(iter: T) -> Self {
        let mut v = SparseVec::new();
        for (i, x) in iter {
            v.add_at(i, &x);
        }
        v
    }
}

/// A dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self[(r, c)])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl core::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.data[r * self.cols + c]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Matrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, x) in r.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    /// Builds the matrix whose `j`-th column is `cols[j]`.
    pub fn from_cols(rows: usize, cols: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged columns");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "vector length differs");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn apply_left(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.rows, v.len(), "vector length differs");
        let mut out = vec![Scalar::zero(); self.cols];
        for (r, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for c in 0..self.cols {
                let a = &self[(r, c)];
                if !a.is_zero() {
                    out[c] += &(x * a);
                }
            }
        }
        out
    }

    /// Reduced row echelon form, pivot columns, and rank.
    pub fn rref(&self) -> (Matrix, Vec<usize>, usize) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    m.data.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let inv = m[(row, col)].inv().expect("nonzero pivot");
            for c in col..m.cols {
                let x = &m[(row, c)] * &inv;
                m[(row, c)] = x;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].clone();
                for c in col..m.cols {
                    if m[(row, c)].is_zero() {
                        continue;
                    }
                    let x = &m[(r, c)] - &(&f * &m[(row, c)]);
                    m[(r, c)] = x;
                }
            }
            pivots.push(col);
            row += 1;
        }
        let rank = pivots.len();
        (m, pivots, rank)
    }

    pub fn rank(&self) -> usize {
        self.rref().2
    }

    /// A basis of the null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots, _) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -&r[(i, free)];
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = Scalar::one();
        }
        let (red, pivots, _) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = red[(r, n + c)].clone();
            }
        }
        Some(inv)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Fraction of nonzero entries.
    pub fn fill(&self) -> (usize, usize) {
        let nnz = self.data.iter().filter(|x| !x.is_zero()).count();
        (nnz, self.data.len())
    }
}

/// Solves `a x = b`, setting free variables to zero.
pub fn solve_linear(a: &Matrix, b: &[Scalar]) -> Result<Vec<Scalar>, LinAlgError> {
    if b.len() != a.rows() {
        return Err(LinAlgError::ShapeMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let n = a.cols();
    let mut aug = Matrix::zeros(a.rows(), n + 1);
    for r in 0..a.rows() {
        for c in 0..n {
            aug[(r, c)] = a[(r, c)].clone();
        }
        aug[(r, n)] = b[r].clone();
    }
    let (red, pivots, _) = aug.rref();
    if pivots.last() == Some(&n) {
        return Err(LinAlgError::NoSolution);
    }
    let mut x = vec![Scalar::zero(); n];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = red[(i, n)].clone();
    }
    Ok(x)
}

/// A matrix stored as sparse columns; column `j` is the image of basis vector `j`.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<SparseVec>,
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix {}x{} nnz={}", self.rows, self.cols.len(), self.nnz())
    }
}

/// Above this fill ratio (in percent) rank computations switch to dense storage.
pub const DENSE_FILL_PERCENT: usize = 25;

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols: vec![SparseVec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: (0..n).map(SparseVec::unit).collect(),
        }
    }

    pub fn from_cols(rows: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.max_index().is_none_or(|i| i < rows)));
        SparseMatrix { rows, cols }
    }

    /// Builds a matrix column by column from the image of each basis vector.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize) -> SparseVec) -> Self {
        SparseMatrix::from_cols(rows, (0..cols).map(&mut f).collect())
    }

    pub fn from_dense(m: &Matrix) -> Self {
        SparseMatrix {
            rows: m.rows(),
            cols: (0..m.cols()).map(|c| SparseVec::from_dense(&m.col(c))).collect(),
        }
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols.len());
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c.iter() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn col(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.cols[j].get(i)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(SparseVec::nnz).sum()
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, x) in v.iter() {
            out.add_scaled(&self.cols[j], x);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols.len(), other.rows, "composition shape mismatch");
        SparseMatrix {
            rows: self.rows,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        self.lin_comb(other, &Scalar::one())
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.lin_comb(other, &-Scalar::one())
    }

    fn lin_comb(&self, other: &SparseMatrix, c: &Scalar) -> SparseMatrix {
        assert_eq!(self.rows, other.rows, "row mismatch");
        assert_eq!(self.cols.len(), other.cols.len(), "column mismatch");
        SparseMatrix {
            rows: self.rows,
            cols: self
                .cols
                .iter()
                .zip(&other.cols)
                .map(|(a, b)| {
                    let mut r = a.clone();
                    r.add_scaled(b, c);
                    r
                })
                .collect(),
        }
    }

    pub fn scaled(&self, c: &Scalar) -> SparseMatrix {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols.iter().map(|v| v.scaled(c)).collect(),
        }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = vec![SparseVec::new(); self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c.iter() {
                t[i].add_at(j, x);
            }
        }
        SparseMatrix {
            rows: self.cols.len(),
            cols: t,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    /// First column where the two matrices differ.
    pub fn first_difference(&self, other: &SparseMatrix) -> Option<usize> {
        self.cols.iter().zip(&other.cols).position(|(a, b)| a != b)
    }

    fn dense_preferred(&self) -> bool {
        let total = self.rows * self.cols.len();
        total > 0 && self.nnz() * 100 > total * DENSE_FILL_PERCENT
    }

    pub fn rank(&self) -> usize {
        if self.dense_preferred() && self.rows * self.cols.len() <= 1 << 20 {
            return self.to_dense().rank();
        }
        let mut e = Echelon::new(self.rows);
        for c in &self.cols {
            e.insert(c.clone());
        }
        e.rank()
    }

    /// A basis of the null space.
    pub fn kernel(&self) -> Vec<SparseVec> {
        if self.dense_preferred() && self.rows * self.cols.len() <= 1 << 20 {
            return self
                .to_dense()
                .kernel()
                .iter()
                .map(|v| SparseVec::from_dense(v))
                .collect();
        }
        let mut e = Echelon::with_tracking(self.rows);
        let mut ker = Vec::new();
        for (j, c) in self.cols.iter().enumerate() {
            if let Some(combo) = e.insert_tracked(c.clone(), SparseVec::unit(j)) {
                ker.push(combo);
            }
        }
        ker
    }

    /// Two-sided inverse, when it exists.
    pub fn inverse(&self) -> Option<SparseMatrix> {
        if self.rows != self.cols.len() {
            return None;
        }
        let n = self.rows;
        let mut e = Echelon::with_tracking(n);
        for (j, c) in self.cols.iter().enumerate() {
            if e.insert_tracked(c.clone(), SparseVec::unit(j)).is_some() {
                return None;
            }
        }
        // Each stored row is a unit vector e_p = M * combo_p, so column p of the inverse is combo_p.
        let cols = (0..n)
            .map(|p| e.combo_for_pivot(p).cloned().unwrap_or_default())
            .collect();
        Some(SparseMatrix { rows: n, cols })
    }
}

/// An incrementally built, fully reduced echelon basis of a subspace.
///
/// Every stored vector has a leading 1 at its pivot, and no other stored
/// vector has a nonzero entry at that pivot, so reduction is a single pass.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: BTreeMap<usize, SparseVec>,
    combos: Option<BTreeMap<usize, SparseVec>>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            rows: BTreeMap::new(),
            combos: None,
        }
    }

    fn with_tracking(dim: usize) -> Self {
        Echelon {
            dim,
            rows: BTreeMap::new(),
            combos: Some(BTreeMap::new()),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.rows.contains_key(&i)
    }

    pub fn basis(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    /// `v` minus its component along the stored span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for (i, x) in v.iter() {
            if let Some(r) = self.rows.get(&i) {
                out.add_scaled(r, &-x);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        self.insert_tracked(v, SparseVec::new()).is_none()
    }

    // Returns the reduced combination when `v` is already in the span.
    fn insert_tracked(&mut self, v: SparseVec, combo: SparseVec) -> Option<SparseVec> {
        let mut w = v.clone();
        let mut c = combo;
        for (i, x) in v.iter() {
            if let Some(r) = self.rows.get(&i) {
                w.add_scaled(r, &-x);
                if let Some(cs) = &self.combos {
                    c.add_scaled(&cs[&i], &-x);
                }
            }
        }
        let Some((p, lead)) = w.first().map(|(p, x)| (p, x.clone())) else {
            return Some(c);
        };
        let inv = lead.inv().expect("nonzero lead");
        let w = w.scaled(&inv);
        let c = c.scaled(&inv);
        let touched: Vec<usize> = self
            .rows
            .iter()
            .filter(|(_, r)| !r.get(p).is_zero())
            .map(|(k, _)| *k)
            .collect();
        for k in touched {
            let f = self.rows[&k].get(p);
            self.rows.get_mut(&k).unwrap().add_scaled(&w, &-&f);
            if let Some(cs) = &mut self.combos {
                cs.get_mut(&k).unwrap().add_scaled(&c, &-&f);
            }
        }
        self.rows.insert(p, w);
        if let Some(cs) = &mut self.combos {
            cs.insert(p, c);
        }
        None
    }

    fn combo_for_pivot(&self, p: usize) -> Option<&SparseVec> {
        self.combos.as_ref().and_then(|c| c.get(&p))
    }
}

/// A quotient `V / W` presented by the non-pivot coordinates of an echelon basis of `W`.
#[derive(Clone, Debug)]
pub struct Quotient {
    sub: Echelon,
    reps: Vec<usize>,
    index: BTreeMap<usize, usize>,
}

impl Quotient {
    pub fn new(sub: Echelon) -> Self {
        let reps: Vec<usize> = (0..sub.dim()).filter(|i| !sub.is_pivot(*i)).collect();
        let index = reps.iter().enumerate().map(|(k, i)| (*i, k)).collect();
        Quotient { sub, reps, index }
    }

    pub fn ambient_dim(&self) -> usize {
        self.sub.dim()
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of the class of `v`.
    pub fn project(&self, v: &SparseVec) -> SparseVec {
        let r = self.sub.reduce(v);
        r.iter().map(|(i, x)| (self.index[&i], x.clone())).collect()
    }

    /// The representative in the ambient space of quotient basis vector `k`.
    pub fn lift(&self, k: usize) -> SparseVec {
        SparseVec::unit(self.reps[k])
    }

    pub fn lift_vec(&self, v: &SparseVec) -> SparseVec {
        v.iter().map(|(k, x)| (self.reps[k], x.clone())).collect()
    }

    pub fn subspace(&self) -> &Echelon {
        &self.sub
    }

    /// The induced map on quotients, given the ambient map and the target quotient.
    pub fn induced(&self, map: &SparseMatrix, target: &Quotient) -> SparseMatrix {
        SparseMatrix::from_fn(target.dim(), self.dim(), |k| {
            target.project(&map.apply(&self.lift(k)))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qf};

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            &rows
                .iter()
                .map(|r| r.iter().map(|x| q(*x)).collect())
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn rref_reports_pivots_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let (r, p, k) = a.rref();
        assert_eq!(k, 2);
        assert_eq!(p, vec![0, 1]);
        assert_eq!(r.row(0), &[q(1), q(0), q(1)]);
        assert_eq!(r.row(1), &[q(0), q(1), q(1)]);
    }

    #[test]
    fn solve_sets_free_variables_to_zero() {
        let a = m(&[&[1, 1, 0], &[0, 0, 1]]);
        let x = solve_linear(&a, &[q(3), q(2)]).unwrap();
        assert_eq!(x, vec![q(3), q(0), q(2)]);
        let inconsistent = m(&[&[1, 1], &[1, 1]]);
        assert_eq!(
            solve_linear(&inconsistent, &[q(1), q(2)]),
            Err(LinAlgError::NoSolution)
        );
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1], &[7, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
        let s = SparseMatrix::from_dense(&a);
        assert_eq!(s.inverse().unwrap().to_dense(), inv);
    }

    #[test]
    fn sparse_kernel_matches_dense() {
        let a = m(&[&[1, 2, 3, 4], &[0, 1, 1, 0], &[1, 3, 4, 4]]);
        let s = SparseMatrix::from_dense(&a);
        assert_eq!(s.rank(), a.rank());
        let ker = {
            let mut e = Echelon::with_tracking(3);
            let mut ker = Vec::new();
            for (j, c) in s.columns().iter().enumerate() {
                if let Some(k) = e.insert_tracked(c.clone(), SparseVec::unit(j)) {
                    ker.push(k);
                }
            }
            ker
        };
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(s.apply(v).is_zero());
        }
    }

    #[test]
    fn quotient_projection_kills_subspace() {
        let mut e = Echelon::new(3);
        e.insert(SparseVec::from_dense(&[q(1), q(1), q(0)]));
        let quo = Quotient::new(e);
        assert_eq!(quo.dim(), 2);
        let v = SparseVec::from_dense(&[q(2), q(2), q(0)]);
        assert!(quo.project(&v).is_zero());
        let w = SparseVec::from_dense(&[q(1), q(0), qf(1, 2)]);
        assert_eq!(quo.project(&w), SparseVec::from_dense(&[q(-1), qf(1, 2)]));
    }
}
