use super::matrix::{axpy, kernel_from_rref, Matrix};
use super::scalar::{Field, Scalar};

/// A subspace of `kⁿ` held in reduced row-echelon form and grown one vector at a time.
///
/// Rows are kept sorted by pivot column, every pivot is 1, and every pivot
/// column is zero outside its row, so the stored rows always equal the unique
/// RREF of everything inserted so far.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    cols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: Field, cols: usize) -> Self {
        Echelon {
            field,
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        let mut e = Echelon::new(m.field(), m.cols());
        for r in 0..m.rows() {
            e.insert(m.row(r).to_vec());
        }
        e
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn row(&self, k: usize) -> &[Scalar] {
        &self.rows[k]
    }

    /// Subtracts the span's components, leaving zeros in every pivot column.
    pub fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        let f = self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let factor = f.neg(&v[p]);
            axpy(f, &mut v, &factor, row);
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v.to_vec()).iter().all(Scalar::is_zero)
    }

    /// Coordinates of `v` with respect to the stored rows, if `v` lies in the span.
    pub fn coords_in_span(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Adds `v` to the span. Returns `true` if the rank grew.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let f = self.field;
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = f.inv(&v[p]);
        for x in v.iter_mut().skip(p) {
            if !x.is_zero() {
                *x = f.mul(x, &inv);
            }
        }
        for row in &mut self.rows {
            if row[p].is_zero() {
                continue;
            }
            let factor = f.neg(&row[p]);
            axpy(f, row, &factor, &v);
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(self.field, self.cols, self.rows.clone())
    }

    /// Basis of the orthogonal complement `{ x : r · x = 0 for every row r }`.
    pub fn kernel_basis(&self) -> Matrix {
        kernel_from_rref(&self.to_matrix(), &self.pivots, self.cols)
    }
}
