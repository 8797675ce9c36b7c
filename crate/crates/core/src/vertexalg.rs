//! Bound quiver algebras `kΣ/Ω` with an explicit basis of path classes, and
//! their finite-dimensional right modules.
//!
//! Modules use row vectors: an element is a row `m`, and the action of an
//! algebra element `a` is the matrix `X_a` with `m·a = m X_a`. With this
//! convention `X_x X_y = X_{xy}`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Field, Matrix, QuotientBasis, Scalar};
use crate::quiver::{Path, Quiver, RelationCombo};

/// Default bound on path lengths explored when checking finite dimensionality.
pub const DEFAULT_MAX_PATH_LEN: usize = 64;

/// Cap on the size of the truncated path space explored for cyclic quivers.
const MAX_PATH_SPACE: usize = 20_000;

/// A finite-dimensional algebra `kΣ/Ω`.
#[derive(Clone, Debug)]
pub struct VertexAlgebra {
    field: Field,
    sigma: Quiver,
    omega: Vec<RelationCombo>,
    max_len: usize,
    /// paths of length ≤ `truncation`, the ambient space of `quotient`
    paths: Vec<Path>,
    path_index: HashMap<Path, usize>,
    truncation: usize,
    quotient: QuotientBasis,
    basis: Vec<Path>,
    table: Vec<Vec<(usize, Scalar)>>,
    idempotents: Vec<usize>,
}

impl PartialEq for VertexAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.sigma == other.sigma
            && self.omega == other.omega
            && self.basis == other.basis
    }
}

impl Eq for VertexAlgebra {}

/// The algebra with basis the path classes of `sigma` modulo the ideal generated by `omega`.
pub fn build_vertex_algebra(
    field: Field,
    sigma: Quiver,
    omega: Vec<RelationCombo>,
    max_len: usize,
) -> Result<VertexAlgebra> {
    for rel in &omega {
        rel.validate(&sigma)?;
        for (c, _) in rel.terms() {
            if !field.contains(c) {
                return Err(Error::InvalidRelation(format!(
                    "coefficient {c} is not an element of {field}"
                )));
            }
        }
    }
    if let Some(longest) = sigma.longest_path_len() {
        let paths = sigma.paths_up_to(longest);
        let (quotient, index) = ideal_quotient(field, &paths, &omega, longest);
        return Ok(VertexAlgebra::assemble(
            field, sigma, omega, max_len, paths, index, longest, quotient,
        ));
    }
    for n in 2..=max_len.max(2) {
        let paths = sigma.paths_up_to(n);
        if paths.len() > MAX_PATH_SPACE {
            return Err(Error::NotFiniteDimensional { max_len: n });
        }
        let (quotient, index) = ideal_quotient(field, &paths, &omega, n);
        let killed = |len: usize| {
            paths
                .iter()
                .filter(|p| p.len() == len)
                .all(|p| quotient.position(index[p]).is_none())
        };
        if (2..=n).any(killed) {
            return Ok(VertexAlgebra::assemble(
                field, sigma, omega, max_len, paths, index, n, quotient,
            ));
        }
    }
    Err(Error::NotFiniteDimensional { max_len })
}

/// Span of `u·ρ·v` truncated at length `n`, for all relations ρ and paths u, v.
fn ideal_quotient(
    field: Field,
    paths: &[Path],
    omega: &[RelationCombo],
    n: usize,
) -> (QuotientBasis, HashMap<Path, usize>) {
    let index: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut span = Echelon::new(field, paths.len());
    for rel in omega {
        let min_len = rel.terms().iter().map(|(_, p)| p.len()).min().unwrap_or(0);
        for u in paths.iter().filter(|u| u.end() == rel.start()) {
            for v in paths.iter().filter(|v| v.start() == rel.end()) {
                if u.len() + min_len + v.len() > n {
                    continue;
                }
                let mut vec = vec![Scalar::zero(); paths.len()];
                for (c, p) in rel.terms() {
                    let full = u.compose(p).and_then(|up| up.compose(v)).expect("parallel");
                    if let Some(&k) = index.get(&full) {
                        vec[k] = field.add(&vec[k], c);
                    }
                }
                span.insert(vec);
            }
        }
    }
    (QuotientBasis::from_echelon(span), index)
}

impl VertexAlgebra {
    #[allow(clippy::too_many_arguments)]
    fn assemble(
        field: Field,
        sigma: Quiver,
        omega: Vec<RelationCombo>,
        max_len: usize,
        paths: Vec<Path>,
        path_index: HashMap<Path, usize>,
        truncation: usize,
        quotient: QuotientBasis,
    ) -> VertexAlgebra {
        let basis: Vec<Path> = quotient.free_coords().iter().map(|&c| paths[c].clone()).collect();
        let idempotents = (0..sigma.vertex_count())
            .map(|v| {
                basis
                    .iter()
                    .position(|p| *p == Path::trivial(v))
                    .expect("trivial paths survive an ideal inside the square of the arrow ideal")
            })
            .collect();
        let mut alg = VertexAlgebra {
            field,
            sigma,
            omega,
            max_len,
            paths,
            path_index,
            truncation,
            quotient,
            basis,
            table: Vec::new(),
            idempotents,
        };
        let d = alg.basis.len();
        let mut table = Vec::with_capacity(d * d);
        for x in 0..d {
            for y in 0..d {
                let coords = match alg.basis[x].compose(&alg.basis[y]) {
                    Some(p) => alg.reduce_path(&p),
                    None => vec![Scalar::zero(); d],
                };
                table.push(sparse(coords));
            }
        }
        alg.table = table;
        alg
    }

    /// The base field as an algebra: one vertex, no arrows.
    pub fn base_field(field: Field, vertex: &str) -> VertexAlgebra {
        build_vertex_algebra(field, Quiver::point(vertex), Vec::new(), DEFAULT_MAX_PATH_LEN)
            .expect("k is finite dimensional")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn sigma(&self) -> &Quiver {
        &self.sigma
    }

    pub fn omega(&self) -> &[RelationCombo] {
        &self.omega
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_name(&self, b: usize) -> String {
        self.sigma.render_path(&self.basis[b])
    }

    /// Basis index of the trivial path `e_j`.
    pub fn idempotent(&self, j: usize) -> usize {
        self.idempotents[j]
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.sigma.vertex_index(name)
    }

    /// Coordinates of the identity `Σ_j e_j`.
    pub fn unit(&self) -> Vec<Scalar> {
        let mut u = vec![Scalar::zero(); self.dim()];
        for &e in &self.idempotents {
            u[e] = Scalar::one();
        }
        u
    }

    /// Basis indices of positive-length classes; they span the radical.
    pub fn radical_basis(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&b| !self.basis[b].is_trivial()).collect()
    }

    /// Basis indices of length ≤ 1: idempotents and arrows generate the algebra.
    pub fn generators(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.basis[b].len() <= 1).collect()
    }

    /// Coordinates of the class of an arbitrary path.
    pub fn reduce_path(&self, p: &Path) -> Vec<Scalar> {
        match self.path_index.get(p) {
            Some(&k) => {
                let mut v = vec![Scalar::zero(); self.paths.len()];
                v[k] = Scalar::one();
                self.quotient.coords(&v)
            }
            None => {
                debug_assert!(p.len() > self.truncation);
                vec![Scalar::zero(); self.dim()]
            }
        }
    }

    /// Product of two basis elements as sparse coordinates.
    pub fn mult(&self, x: usize, y: usize) -> &[(usize, Scalar)] {
        &self.table[x * self.dim() + y]
    }

    pub fn mul_coords(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let f = self.field;
        let mut out = vec![Scalar::zero(); self.dim()];
        for (x, ax) in a.iter().enumerate() {
            if ax.is_zero() {
                continue;
            }
            for (y, by) in b.iter().enumerate() {
                if by.is_zero() {
                    continue;
                }
                let c = f.mul(ax, by);
                for (z, s) in self.mult(x, y) {
                    out[*z] = f.add(&out[*z], &f.mul(&c, s));
                }
            }
        }
        out
    }

    /// The algebra of the opposite bound quiver and the anti-isomorphism
    /// `path ↦ reversed path` as a `dim × dim` matrix (row `b` = image of basis `b`).
    pub fn opposite(&self) -> Result<(VertexAlgebra, Matrix)> {
        let (sigma, omega) = crate::quiver::opposite(&self.sigma, &self.omega);
        let op = build_vertex_algebra(self.field, sigma, omega, self.max_len)?;
        let rows = self.basis.iter().map(|p| op.reduce_path(&p.reversed())).collect();
        Ok((op, Matrix::from_rows(self.field, self.dim(), rows)))
    }
}

fn sparse(v: Vec<Scalar>) -> Vec<(usize, Scalar)> {
    v.into_iter().enumerate().filter(|(_, s)| !s.is_zero()).collect()
}

/// A finite-dimensional right module over a [`VertexAlgebra`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexModule {
    algebra: Arc<VertexAlgebra>,
    dim: usize,
    action: Vec<Matrix>,
}

impl VertexModule {
    /// Checks shapes and that the action is an algebra homomorphism.
    pub fn new(algebra: Arc<VertexAlgebra>, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        let m = Self::new_unchecked(algebra, dim, action)?;
        m.check_compatible()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(
        algebra: Arc<VertexAlgebra>,
        dim: usize,
        action: Vec<Matrix>,
    ) -> Result<Self> {
        if action.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} action matrices for an algebra of dimension {}",
                action.len(),
                algebra.dim()
            )));
        }
        if action.iter().any(|x| x.rows() != dim || x.cols() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "action matrices must be {dim}x{dim}"
            )));
        }
        Ok(VertexModule {
            algebra,
            dim,
            action,
        })
    }

    pub fn zero(algebra: Arc<VertexAlgebra>) -> Self {
        let f = algebra.field();
        let action = vec![Matrix::zeros(f, 0, 0); algebra.dim()];
        VertexModule {
            algebra,
            dim: 0,
            action,
        }
    }

    pub fn algebra(&self) -> &Arc<VertexAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Action matrix of basis element `b`.
    pub fn action(&self, b: usize) -> &Matrix {
        &self.action[b]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// Action matrix of an arbitrary element given by coordinates.
    pub fn action_of(&self, coords: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.dim, self.dim);
        for (b, c) in coords.iter().enumerate() {
            m.add_scaled(c, &self.action[b]);
        }
        m
    }

    /// `action(1) = id` and `X_x X_g = X_{xg}` for every basis `x` and generator `g`;
    /// since idempotents and arrows generate the algebra this gives the whole table.
    pub fn check_compatible(&self) -> Result<()> {
        let a = &self.algebra;
        if !self.action_of(&a.unit()).is_identity() {
            return Err(Error::ActionIncompatible("the identity does not act as 1".into()));
        }
        for x in 0..a.dim() {
            for y in a.generators() {
                let lhs = self.action[x].mul(&self.action[y]);
                let mut rhs = Matrix::zeros(self.field(), self.dim, self.dim);
                for (z, s) in a.mult(x, y) {
                    rhs.add_scaled(s, &self.action[*z]);
                }
                if lhs != rhs {
                    return Err(Error::ActionIncompatible(format!(
                        "X({}) X({}) differs from X({} * {})",
                        a.basis_name(x),
                        a.basis_name(y),
                        a.basis_name(x),
                        a.basis_name(y)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Module given by a representation of the bound quiver: a space per vertex of Σ
    /// and a map per arrow (row convention, `dim source × dim target`).
    pub fn from_quiver_representation(
        algebra: Arc<VertexAlgebra>,
        dims: &[usize],
        arrow_maps: &[Matrix],
    ) -> Result<Self> {
        let sigma = algebra.sigma();
        let f = algebra.field();
        if dims.len() != sigma.vertex_count() || arrow_maps.len() != sigma.arrow_count() {
            return Err(Error::DimensionMismatch(
                "one space per vertex and one map per arrow required".into(),
            ));
        }
        for (a, m) in sigma.arrows().iter().zip(arrow_maps) {
            if m.rows() != dims[a.source] || m.cols() != dims[a.target] {
                return Err(Error::DimensionMismatch(format!(
                    "map for `{}` must be {}x{} (source x target)",
                    a.name, dims[a.source], dims[a.target]
                )));
            }
        }
        let offsets: Vec<usize> = dims
            .iter()
            .scan(0, |acc, &d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect();
        let total: usize = dims.iter().sum();
        let path_action = |p: &Path| -> Matrix {
            let mut m = Matrix::zeros(f, total, total);
            let block = if p.is_trivial() {
                Matrix::identity(f, dims[p.start()])
            } else {
                p.arrows()
                    .iter()
                    .map(|&a| arrow_maps[a].clone())
                    .reduce(|acc, x| acc.mul(&x))
                    .unwrap()
            };
            m.set_block(offsets[p.start()], offsets[p.end()], &block);
            m
        };
        for (r, rel) in algebra.omega().iter().enumerate() {
            let mut sum = Matrix::zeros(f, total, total);
            for (c, p) in rel.terms() {
                sum.add_scaled(c, &path_action(p));
            }
            if !sum.is_zero() {
                return Err(Error::RelationViolation {
                    relation: r,
                    detail: format!("`{}` does not act as zero", rel.render(sigma)),
                });
            }
        }
        let action = algebra.basis().iter().map(path_action).collect();
        VertexModule::new(algebra, total, action)
    }

    /// The regular module `A_A`.
    pub fn regular(algebra: Arc<VertexAlgebra>) -> Self {
        let all: Vec<usize> = (0..algebra.dim()).collect();
        Self::right_ideal_on(algebra, &all)
    }

    /// Right ideal spanned by a set of basis classes closed under right multiplication.
    fn right_ideal_on(algebra: Arc<VertexAlgebra>, idx: &[usize]) -> Self {
        let f = algebra.field();
        let pos: HashMap<usize, usize> = idx.iter().enumerate().map(|(k, &b)| (b, k)).collect();
        let action = (0..algebra.dim())
            .map(|b| {
                let mut m = Matrix::zeros(f, idx.len(), idx.len());
                for (r, &x) in idx.iter().enumerate() {
                    for (z, s) in algebra.mult(x, b) {
                        m.set(r, pos[z], s.clone());
                    }
                }
                m
            })
            .collect();
        VertexModule {
            dim: idx.len(),
            algebra,
            action,
        }
    }

    /// Restriction of the action to a submodule spanned by the rows of `span`.
    ///
    /// Returns the submodule (in the RREF basis of the span) and that basis.
    pub fn submodule(&self, span: &Matrix) -> Result<(VertexModule, Matrix)> {
        let basis = Echelon::from_matrix(span);
        let action = self
            .action
            .iter()
            .map(|x| restrict(&basis, x))
            .collect::<Result<Vec<_>>>()?;
        let sub = VertexModule {
            algebra: self.algebra.clone(),
            dim: basis.rank(),
            action,
        };
        Ok((sub, basis.to_matrix()))
    }

    /// Quotient by the submodule spanned by the rows of `span`.
    pub fn quotient(&self, span: &Matrix) -> Result<(VertexModule, QuotientBasis)> {
        let q = QuotientBasis::from_echelon(Echelon::from_matrix(span));
        let f = self.field();
        let mut action = Vec::with_capacity(self.action.len());
        for x in &self.action {
            for r in 0..span.rows() {
                if !q.coords(&x.apply_row(span.row(r))).iter().all(Scalar::is_zero) {
                    return Err(Error::ActionIncompatible("span is not a submodule".into()));
                }
            }
            let rows = q
                .free_coords()
                .iter()
                .map(|&c| q.coords(x.row(c)))
                .collect();
            action.push(Matrix::from_rows(f, q.dim(), rows));
        }
        Ok((
            VertexModule {
                algebra: self.algebra.clone(),
                dim: q.dim(),
                action,
            },
            q,
        ))
    }

    pub fn direct_sum(&self, other: &VertexModule) -> Result<VertexModule> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        Ok(VertexModule {
            algebra: self.algebra.clone(),
            dim: self.dim + other.dim,
            action: self
                .action
                .iter()
                .zip(&other.action)
                .map(|(a, b)| a.block_diagonal(b))
                .collect(),
        })
    }

    /// Whether `f` (row convention, `dim self × dim other`) commutes with the actions.
    pub fn is_homomorphism(&self, other: &VertexModule, f: &Matrix) -> bool {
        f.rows() == self.dim
            && f.cols() == other.dim
            && self
                .action
                .iter()
                .zip(&other.action)
                .all(|(x, y)| x.mul(f) == f.mul(y))
    }

    /// The dual `D(M) = Hom_k(M, k)` as a module over an algebra anti-isomorphic to
    /// this one. `back` maps coordinates over `target` to coordinates over this
    /// algebra (row `b'` = preimage of basis element `b'`).
    pub fn dual(&self, target: Arc<VertexAlgebra>, back: &Matrix) -> VertexModule {
        let transposed: Vec<Matrix> = self.action.iter().map(Matrix::transpose).collect();
        let f = self.field();
        let action = (0..target.dim())
            .map(|b| {
                let mut m = Matrix::zeros(f, self.dim, self.dim);
                for (k, c) in back.row(b).iter().enumerate() {
                    m.add_scaled(c, &transposed[k]);
                }
                m
            })
            .collect();
        VertexModule {
            algebra: target,
            dim: self.dim,
            action,
        }
    }
}

/// Matrix of `x` restricted to the row span held by `basis`, in that basis.
pub(crate) fn restrict(basis: &Echelon, x: &Matrix) -> Result<Matrix> {
    let f = x.field();
    let rows = (0..basis.rank())
        .map(|k| {
            basis
                .coords_in_span(&x.apply_row(basis.row(k)))
                .ok_or_else(|| Error::ActionIncompatible("subspace is not invariant".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(f, basis.rank(), rows))
}

/// `e_j A`: classes of paths starting at `j`, acted on by right multiplication.
pub fn projective(a: &Arc<VertexAlgebra>, j: usize) -> Result<VertexModule> {
    check_vertex(a, j)?;
    let idx: Vec<usize> = (0..a.dim()).filter(|&b| a.basis()[b].start() == j).collect();
    Ok(VertexModule::right_ideal_on(a.clone(), &idx))
}

/// `D(A e_j)`: dual of the classes of paths ending at `j`; the action is the
/// transpose of left multiplication.
pub fn injective(a: &Arc<VertexAlgebra>, j: usize) -> Result<VertexModule> {
    check_vertex(a, j)?;
    let f = a.field();
    let idx: Vec<usize> = (0..a.dim()).filter(|&b| a.basis()[b].end() == j).collect();
    let pos: HashMap<usize, usize> = idx.iter().enumerate().map(|(k, &b)| (b, k)).collect();
    let action = (0..a.dim())
        .map(|b| {
            // left multiplication x ↦ b·x in row convention, then transpose
            let mut left = Matrix::zeros(f, idx.len(), idx.len());
            for (r, &x) in idx.iter().enumerate() {
                for (z, s) in a.mult(b, x) {
                    left.set(r, pos[z], s.clone());
                }
            }
            left.transpose()
        })
        .collect();
    Ok(VertexModule {
        algebra: a.clone(),
        dim: idx.len(),
        action,
    })
}

/// The one-dimensional module at vertex `j`, killed by every arrow.
pub fn simple(a: &Arc<VertexAlgebra>, j: usize) -> Result<VertexModule> {
    check_vertex(a, j)?;
    let f = a.field();
    let e = a.idempotent(j);
    let action = (0..a.dim())
        .map(|b| {
            let v = if b == e { Scalar::one() } else { Scalar::zero() };
            Matrix::from_rows(f, 1, vec![vec![v]])
        })
        .collect();
    Ok(VertexModule {
        algebra: a.clone(),
        dim: 1,
        action,
    })
}

/// `m · rad(A)` and its basis rows inside `m`.
pub fn radical(m: &VertexModule) -> (VertexModule, Matrix) {
    let a = m.algebra();
    let mut span = Echelon::new(m.field(), m.dim());
    for b in a.radical_basis() {
        for r in 0..m.dim() {
            span.insert(m.action(b).row(r).to_vec());
        }
    }
    m.submodule(&span.to_matrix())
        .expect("m·rad(A) is a submodule")
}

fn check_vertex(a: &VertexAlgebra, j: usize) -> Result<()> {
    if j >= a.sigma().vertex_count() {
        return Err(Error::UnknownVertex(j.to_string()));
    }
    Ok(())
}
