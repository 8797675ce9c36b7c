use std::fmt;

use super::echelon::Echelon;
use super::scalar::{Field, Scalar};

/// Dense matrix over a [`Field`], stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix {
            field,
            rows: n,
            cols,
            data,
        }
    }

    /// Convenience constructor from integer rows, reduced into `field`.
    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            field,
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_int(v)).collect())
                .collect(),
        )
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

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Scalar] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = self.get(r, c);
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if !v.is_zero() {
                    t.set(c, r, v.clone());
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * out.cols + c;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.rows);
        let f = self.field;
        let mut out = vec![Scalar::zero(); self.cols];
        for (k, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            axpy(f, &mut out, a, self.row(k));
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(&self.field.from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.mul(a, s)).collect(),
        }
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, s: &Scalar, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if s.is_zero() {
            return;
        }
        axpy(self.field, &mut self.data, s, &other.data);
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_rows(
            self.field,
            self.cols,
            idx.iter().map(|&r| self.row(r).to_vec()).collect(),
        )
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        Matrix::from_rows(
            self.field,
            idx.len(),
            (0..self.rows)
                .map(|r| idx.iter().map(|&c| self.get(r, c).clone()).collect())
                .collect(),
        )
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(self.field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, self.get(r0 + r, c0 + c).clone());
            }
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn block_diagonal(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        m
    }

    /// Reduced row-echelon form and strictly increasing pivot columns.
    ///
    /// Gauss-Jordan with the leftmost nonzero column as pivot column and the
    /// first nonzero row (at or below the current one) as pivot row.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(lead, p);
            let inv = f.inv(m.get(lead, c));
            for v in m.row_mut(lead) {
                if !v.is_zero() {
                    *v = f.mul(v, &inv);
                }
            }
            let pivot_row = m.row(lead).to_vec();
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let factor = m.get(r, c).clone();
                if factor.is_zero() {
                    continue;
                }
                let neg = f.neg(&factor);
                axpy(f, m.row_mut(r), &neg, &pivot_row);
            }
            pivots.push(c);
            lead += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        Echelon::from_matrix(self).rank()
    }

    /// Rows form a basis of `{ v : self · vᵀ = 0 }`.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        kernel_from_rref(&r, &pivots, self.cols)
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Matrix::identity(self.field, n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.submatrix(0, n, n, n))
    }
}

pub(crate) fn kernel_from_rref(r: &Matrix, pivots: &[usize], cols: usize) -> Matrix {
    let f = r.field();
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Scalar::zero(); cols];
        v[free] = Scalar::one();
        for (k, &p) in pivots.iter().enumerate() {
            let x = r.get(k, free);
            if !x.is_zero() {
                v[p] = f.neg(x);
            }
        }
        basis.push(v);
    }
    Matrix::from_rows(f, cols, basis)
}

/// `y += a * x`
#[inline]
pub fn axpy(f: Field, y: &mut [Scalar], a: &Scalar, x: &[Scalar]) {
    debug_assert_eq!(y.len(), x.len());
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = f.add(yi, &f.mul(a, xi));
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            write!(f, "]")?;
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}

/// A quotient `kⁿ / span`, with coordinates on the non-pivot ("free") columns.
#[derive(Clone, Debug)]
pub struct QuotientBasis {
    ambient: usize,
    span: Echelon,
    free_coords: Vec<usize>,
    /// position of each ambient coordinate among `free_coords`
    free_pos: Vec<Option<usize>>,
}

/// Quotient of the ambient space by the row span of `span_rows`.
pub fn quotient_basis(span_rows: &Matrix, ambient_dim: usize) -> QuotientBasis {
    assert_eq!(span_rows.cols(), ambient_dim);
    QuotientBasis::from_echelon(Echelon::from_matrix(span_rows))
}

impl QuotientBasis {
    pub fn from_echelon(span: Echelon) -> Self {
        let ambient = span.cols();
        let mut free_pos = vec![None; ambient];
        let mut free_coords = Vec::new();
        let mut is_pivot = vec![false; ambient];
        for &p in span.pivots() {
            is_pivot[p] = true;
        }
        for (c, pivot) in is_pivot.into_iter().enumerate() {
            if !pivot {
                free_pos[c] = Some(free_coords.len());
                free_coords.push(c);
            }
        }
        QuotientBasis {
            ambient,
            span,
            free_coords,
            free_pos,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.free_coords.len()
    }

    pub fn field(&self) -> Field {
        self.span.field()
    }

    pub fn free_coords(&self) -> &[usize] {
        &self.free_coords
    }

    /// Position of an ambient coordinate in the quotient basis, if it is free.
    pub fn position(&self, ambient_coord: usize) -> Option<usize> {
        self.free_pos[ambient_coord]
    }

    pub fn span(&self) -> &Echelon {
        &self.span
    }

    /// Coordinates of the class of `v`.
    pub fn coords(&self, v: &[Scalar]) -> Vec<Scalar> {
        let r = self.span.reduce(v.to_vec());
        self.free_coords.iter().map(|&c| r[c].clone()).collect()
    }

    /// Coordinates of the class of a sparse vector.
    pub fn coords_sparse(&self, v: &[(usize, Scalar)]) -> Vec<Scalar> {
        let f = self.field();
        let mut dense = vec![Scalar::zero(); self.ambient];
        for (i, s) in v {
            dense[*i] = f.add(&dense[*i], s);
        }
        self.coords(&dense)
    }

    /// The free-coordinate representative of a class.
    pub fn lift(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.ambient];
        for (k, &c) in self.free_coords.iter().enumerate() {
            v[c] = coords[k].clone();
        }
        v
    }

    /// `reduce` as a `dim × ambient` matrix: column `c` holds the class of `e_c`.
    pub fn reduce_matrix(&self) -> Matrix {
        let f = self.field();
        let mut m = Matrix::zeros(f, self.dim(), self.ambient);
        for c in 0..self.ambient {
            let mut e = vec![Scalar::zero(); self.ambient];
            e[c] = Scalar::one();
            for (k, v) in self.coords(&e).into_iter().enumerate() {
                m.set(k, c, v);
            }
        }
        m
    }
}
