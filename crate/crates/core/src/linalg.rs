//! Dense vectors and matrices over a [`Field`].
//!
//! Entries are stored as canonical element indexes so that matrices hash and
//! compare cheaply; accessors hand out [`FieldElement`]s.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

/// Dimension cap for vector spaces handled by the library.
pub const MAX_DIM: usize = 12;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    field: Field,
    entries: Vec<u32>,
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.entries)
    }
}

impl Vector {
    pub fn zero(field: Field, n: usize) -> Self {
        Vector { field, entries: vec![0; n] }
    }

    /// The `i`-th standard basis vector (0-based).
    pub fn basis(field: Field, n: usize, i: usize) -> Self {
        let mut v = Self::zero(field, n);
        v.entries[i] = 1;
        v
    }

    /// Builds a vector from element indexes, checking range and the dimension cap.
    pub fn from_indices(field: Field, entries: &[u32]) -> Result<Self> {
        if entries.is_empty() || entries.len() > MAX_DIM {
            return Err(Error::DimensionTooLarge(entries.len()));
        }
        if let Some(&bad) = entries.iter().find(|&&e| e >= field.order()) {
            return Err(Error::ElementOutOfRange(bad as u64));
        }
        Ok(Vector { field, entries: entries.to_vec() })
    }

    pub fn from_elements(entries: &[FieldElement]) -> Result<Self> {
        let field = entries.first().ok_or(Error::DimensionTooLarge(0))?.field();
        if entries.iter().any(|e| e.field() != field) {
            return Err(Error::FieldMismatch);
        }
        let idx: Vec<u32> = entries.iter().map(|e| e.index()).collect();
        Self::from_indices(field, &idx)
    }

    /// Unchecked constructor for internal hot paths.
    pub(crate) fn from_raw(field: Field, entries: Vec<u32>) -> Self {
        Vector { field, entries }
    }

    /// The vector whose coordinates are the base-`q` digits of `rank`, first
    /// coordinate most significant. This is the lexicographic scan order.
    pub fn from_rank(field: Field, n: usize, mut rank: u64) -> Self {
        let q = field.order() as u64;
        let mut entries = vec![0u32; n];
        for slot in entries.iter_mut().rev() {
            *slot = (rank % q) as u32;
            rank /= q;
        }
        Vector { field, entries }
    }

    /// Inverse of [`Vector::from_rank`].
    pub fn rank_in_scan(&self) -> u64 {
        let q = self.field.order() as u64;
        self.entries.iter().fold(0u64, |acc, &e| acc * q + e as u64)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn indices(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> FieldElement {
        self.field.elem(self.entries[i])
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    fn check(&self, other: &Vector) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.len() != other.len() {
            return Err(Error::ShapeMismatch(format!(
                "vectors of length {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        self.check(other)?;
        let f = self.field;
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Vector { field: f, entries })
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        self.check(other)?;
        let f = self.field;
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(Vector { field: f, entries })
    }

    pub fn scale(&self, c: u32) -> Vector {
        let f = self.field;
        Vector { field: f, entries: self.entries.iter().map(|&a| f.mul(a, c)).collect() }
    }

    /// Standard dot product `sum u_i v_i`.
    pub fn dot(&self, other: &Vector) -> Result<u32> {
        self.check(other)?;
        Ok(dot_raw(self.field, &self.entries, &other.entries))
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: u32, other: &Vector) -> Result<Vector> {
        self.check(other)?;
        let f = self.field;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f.add(a, f.mul(c, b)))
            .collect();
        Ok(Vector { field: f, entries })
    }
}

#[inline]
pub(crate) fn dot_raw(f: Field, a: &[u32], b: &[u32]) -> u32 {
    a.iter().zip(b).fold(0u32, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_index_rows())
    }
}

impl PartialOrd for Matrix {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical ordering: shape first, then row-major entries.
impl Ord for Matrix {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.rows, self.cols, &self.data).cmp(&(other.rows, other.cols, &other.data))
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn diagonal(field: Field, diag: &[u32]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(field, n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = d;
        }
        m
    }

    /// Builds a matrix from rows of element indexes.
    pub fn from_index_rows<R: AsRef<[u32]>>(field: Field, rows: &[R]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|x| x.as_ref().len()).unwrap_or(0);
        if r == 0 || c == 0 {
            return Err(Error::ShapeMismatch("empty matrix".into()));
        }
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            let row = row.as_ref();
            if row.len() != c {
                return Err(Error::ShapeMismatch("ragged rows".into()));
            }
            if let Some(&bad) = row.iter().find(|&&e| e >= field.order()) {
                return Err(Error::ElementOutOfRange(bad as u64));
            }
            data.extend_from_slice(row);
        }
        Ok(Matrix { field, rows: r, cols: c, data })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, cols: &[Vector]) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map(|v| v.len()).ok_or_else(|| Error::ShapeMismatch("no columns".into()))?;
        let mut m = Self::zeros(field, r, c);
        for (j, v) in cols.iter().enumerate() {
            if v.field != field {
                return Err(Error::FieldMismatch);
            }
            if v.len() != r {
                return Err(Error::ShapeMismatch("columns of unequal length".into()));
            }
            for i in 0..r {
                m.data[i * c + j] = v.entries[i];
            }
        }
        Ok(m)
    }

    pub(crate) fn from_raw(field: Field, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Matrix { field, rows, cols, data }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.field.elem(self.at(i, j))
    }

    pub fn row(&self, i: usize) -> Vector {
        Vector::from_raw(self.field, self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector::from_raw(self.field, (0..self.rows).map(|i| self.at(i, j)).collect())
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_index_rows(&self) -> Vec<Vec<u32>> {
        self.data.chunks(self.cols).map(|r| r.to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.at(i, j) == u32::from(i == j)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&e| e == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.at(i, j);
            }
        }
        t
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        let (r, m, c) = (self.rows, self.cols, other.cols);
        let mut data = vec![0u32; r * c];
        for i in 0..r {
            for t in 0..m {
                let a = self.data[i * m + t];
                if a == 0 {
                    continue;
                }
                let orow = &other.data[t * c..(t + 1) * c];
                let out = &mut data[i * c..(i + 1) * c];
                for (o, &b) in out.iter_mut().zip(orow) {
                    *o = f.add(*o, f.mul(a, b));
                }
            }
        }
        Matrix { field: f, rows: r, cols: c, data }
    }

    pub fn matvec(&self, v: &Vector) -> Result<Vector> {
        if self.field != v.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != v.len() {
            return Err(Error::ShapeMismatch(format!("{}x{} times vector of length {}", self.rows, self.cols, v.len())));
        }
        Ok(self.matvec_unchecked(v))
    }

    pub(crate) fn matvec_unchecked(&self, v: &Vector) -> Vector {
        let entries = (0..self.rows)
            .map(|i| dot_raw(self.field, &self.data[i * self.cols..(i + 1) * self.cols], &v.entries))
            .collect();
        Vector::from_raw(self.field, entries)
    }

    pub fn scalar_mul(&self, c: u32) -> Matrix {
        let f = self.field;
        Matrix { data: self.data.iter().map(|&a| f.mul(a, c)).collect(), ..self.clone() }
    }

    fn zip_with(&self, other: &Matrix, op: impl Fn(u32, u32) -> u32) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch("matrices of different shape".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| op(a, b)).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        let f = self.field;
        self.zip_with(other, |a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        let f = self.field;
        self.zip_with(other, |a, b| f.sub(a, b))
    }

    /// Reduced row echelon form and the pivot columns.
    ///
    /// Pivoting is deterministic: columns are scanned left to right and the
    /// first row (from the current one down) with a nonzero entry is used.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| m.at(r, col) != 0) else {
                continue;
            };
            m.swap_rows(p, row);
            let inv = f.inv(m.at(row, col)).unwrap();
            for j in 0..m.cols {
                let v = m.at(row, j);
                m.set(row, j, f.mul(v, inv));
            }
            for r in 0..m.rows {
                if r != row {
                    let factor = m.at(r, col);
                    if factor != 0 {
                        for j in 0..m.cols {
                            let v = f.sub(m.at(r, j), f.mul(factor, m.at(row, j)));
                            m.set(r, j, v);
                        }
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{v : M v = 0}`.
    ///
    /// One vector per free column, in increasing column order, with a 1 in its
    /// free coordinate and zeros in the other free coordinates.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let f = self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0u32; self.cols];
                v[fc] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.at(row, fc));
                }
                Vector::from_raw(f, v)
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.at(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.at(i, n + j));
            }
        }
        Ok(inv)
    }

    /// A particular solution of `M x = b` with free variables set to zero.
    pub fn solve(&self, b: &Vector) -> Option<Vector> {
        if b.len() != self.rows || b.field != self.field {
            return None;
        }
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j));
            }
            aug.set(i, self.cols, b.entries[i]);
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.at(row, self.cols);
        }
        Some(Vector::from_raw(self.field, x))
    }

    pub fn determinant(&self) -> Result<u32> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("determinant of a non-square matrix".into()));
        }
        let f = self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1u32;
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| m.at(r, col) != 0) else {
                return Ok(0);
            };
            if p != col {
                m.swap_rows(p, col);
                det = f.neg(det);
            }
            let pivot = m.at(col, col);
            det = f.mul(det, pivot);
            let inv = f.inv(pivot).unwrap();
            for r in col + 1..n {
                let factor = f.mul(m.at(r, col), inv);
                if factor != 0 {
                    for j in col..n {
                        let v = f.sub(m.at(r, j), f.mul(factor, m.at(col, j)));
                        m.set(r, j, v);
                    }
                }
            }
        }
        Ok(det)
    }

    /// Principal submatrix with the given row/column indexes removed.
    pub fn delete_row_col(&self, i: usize, j: usize) -> Matrix {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for r in (0..self.rows).filter(|&r| r != i) {
            for c in (0..self.cols).filter(|&c| c != j) {
                data.push(self.at(r, c));
            }
        }
        Matrix { field: self.field, rows: self.rows - 1, cols: self.cols - 1, data }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    fn m(field: Field, rows: &[&[u32]]) -> Matrix {
        Matrix::from_index_rows(field, rows).unwrap()
    }

    #[test]
    fn product_examples() {
        let f2 = make_field(2, 1).unwrap();
        let a = m(f2, &[&[1, 1], &[0, 1]]);
        assert!(a.matmul(&a).unwrap().is_identity());
        let f3 = make_field(3, 1).unwrap();
        let b = m(f3, &[&[1, 2, 0], &[2, 2, 1], &[0, 1, 1]]);
        assert_eq!(Matrix::identity(f3, 3).matmul(&b).unwrap(), b);
        assert_eq!(b.transpose().transpose(), b);
        assert!(matches!(a.matmul(&b), Err(Error::FieldMismatch)));
        let c = m(f3, &[&[1, 2]]);
        assert!(matches!(c.matmul(&c), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn rank_examples() {
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(Matrix::zeros(f3, 3, 3).rank(), 0);
        assert_eq!(Matrix::identity(f3, 4).rank(), 4);
        // det = 1 - 4 = -3 = 0 in GF(3): second row is 2 * first row
        assert_eq!(m(f3, &[&[1, 2], &[2, 1]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        let f3 = make_field(3, 1).unwrap();
        assert!(Matrix::identity(f3, 3).kernel_basis().is_empty());
        let k = Matrix::zeros(f3, 3, 3).kernel_basis();
        assert_eq!(k, (0..3).map(|i| Vector::basis(f3, 3, i)).collect::<Vec<_>>());
        let f2 = make_field(2, 1).unwrap();
        let k = m(f2, &[&[1, 1]]).kernel_basis();
        assert_eq!(k, vec![Vector::from_indices(f2, &[1, 1]).unwrap()]);
    }

    #[test]
    fn inverse_examples() {
        let f3 = make_field(3, 1).unwrap();
        assert!(Matrix::identity(f3, 3).inverse().unwrap().is_identity());
        let d = m(f3, &[&[2, 0], &[0, 2]]);
        assert_eq!(d.inverse().unwrap(), d);
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(m(f2, &[&[1, 1], &[1, 1]]).inverse().unwrap_err(), Error::Singular);
    }

    #[test]
    fn solve_examples() {
        let f3 = make_field(3, 1).unwrap();
        let b = Vector::from_indices(f3, &[2, 1]).unwrap();
        assert_eq!(Matrix::identity(f3, 2).solve(&b), Some(b.clone()));
        assert_eq!(Matrix::zeros(f3, 2, 2).solve(&b), None);
        // exhaustive oracle over the 9 candidates
        let a = m(f3, &[&[1, 2], &[0, 1]]);
        let x = a.solve(&b).unwrap();
        let all: Vec<Vector> = (0..9).map(|r| Vector::from_rank(f3, 2, r)).filter(|x| a.matvec(x).unwrap() == b).collect();
        assert_eq!(all, vec![x]);
    }

    #[test]
    fn determinant_matches_rank() {
        let f5 = make_field(5, 1).unwrap();
        let a = m(f5, &[&[1, 2, 3], &[0, 4, 1], &[2, 2, 2]]);
        // 1*(8-2) - 2*(0-2) + 3*(0-8) = 6 + 4 - 24 = -14 = 1 mod 5
        assert_eq!(a.determinant().unwrap(), 1);
        let s = m(f5, &[&[1, 2], &[2, 4]]);
        assert_eq!(s.determinant().unwrap(), 0);
    }

    #[test]
    fn scan_order_round_trip() {
        let f3 = make_field(3, 1).unwrap();
        let v = Vector::from_rank(f3, 3, 5);
        assert_eq!(v.indices(), &[0, 1, 2]);
        assert_eq!(v.rank_in_scan(), 5);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matrix_strategy() -> impl Strategy<Value = (u64, usize, usize, Vec<u32>)> {
            (prop::sample::select(vec![2u64, 3, 5, 7]), 1usize..5, 1usize..5).prop_flat_map(|(p, r, c)| {
                (Just(p), Just(r), Just(c), prop::collection::vec(0u32..p as u32, r * c))
            })
        }

        fn square_strategy() -> impl Strategy<Value = (u64, usize, Vec<u32>)> {
            (prop::sample::select(vec![2u64, 3, 5]), 1usize..5)
                .prop_flat_map(|(p, n)| (Just(p), Just(n), prop::collection::vec(0u32..p as u32, n * n)))
        }

        proptest! {
            #[test]
            fn rank_nullity((p, r, c, data) in matrix_strategy()) {
                let f = make_field(p, 1).unwrap();
                let a = Matrix::from_raw(f, r, c, data);
                let kernel = a.kernel_basis();
                prop_assert_eq!(a.rank() + kernel.len(), c);
                for v in &kernel {
                    prop_assert!(a.matvec(v).unwrap().is_zero());
                }
            }

            #[test]
            fn inverse_two_sided((p, n, data) in square_strategy()) {
                let f = make_field(p, 1).unwrap();
                let a = Matrix::from_raw(f, n, n, data);
                match a.inverse() {
                    Ok(inv) => {
                        prop_assert!(a.matmul(&inv).unwrap().is_identity());
                        prop_assert!(inv.matmul(&a).unwrap().is_identity());
                        prop_assert_ne!(a.determinant().unwrap(), 0);
                    }
                    Err(e) => {
                        prop_assert_eq!(e, Error::Singular);
                        prop_assert!(a.rank() < n);
                    }
                }
            }
        }
    }
}
