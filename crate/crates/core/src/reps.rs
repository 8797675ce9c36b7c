//! Representations of `Λ`, right `Λ`-modules, and the functors between them.
//!
//! Maps are stored in the row convention: `M_α` is a `dim M_{s(α)} × dim M_{e(α)}`
//! matrix acting on row vectors, so `m ↦ m·M_α`. Displays transpose it.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gbp::GbpAlgebra;
use crate::linalg::{Echelon, Field, Matrix, Scalar};
use crate::vertexalg::{restrict, VertexModule};

/// A family of `A_i`-modules with a linear map per arrow of Γ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    lambda: Arc<GbpAlgebra>,
    modules: Vec<VertexModule>,
    maps: Vec<Matrix>,
}

/// The first relation instance that a representation fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationWitness {
    pub relation: usize,
    /// For each term, the basis indices intercalated at its internal junctions.
    pub choice: Vec<Vec<usize>>,
}

impl Representation {
    /// Checks shapes and the relations.
    pub fn new(lambda: Arc<GbpAlgebra>, modules: Vec<VertexModule>, maps: Vec<Matrix>) -> Result<Self> {
        let r = Self::new_unchecked(lambda, modules, maps)?;
        if let Some(w) = r.relation_witness() {
            let rel = &r.lambda.relations()[w.relation];
            return Err(Error::RelationViolation {
                relation: w.relation,
                detail: format!(
                    "`{}` with intercalations {:?} does not vanish",
                    rel.render(r.lambda.gamma()),
                    w.choice
                ),
            });
        }
        Ok(r)
    }

    /// Checks shapes only.
    pub fn new_unchecked(lambda: Arc<GbpAlgebra>, modules: Vec<VertexModule>, maps: Vec<Matrix>) -> Result<Self> {
        let gamma = lambda.gamma();
        if modules.len() != gamma.vertex_count() || maps.len() != gamma.arrow_count() {
            return Err(Error::DimensionMismatch(
                "one module per vertex and one map per arrow required".into(),
            ));
        }
        for (i, m) in modules.iter().enumerate() {
            if **m.algebra() != **lambda.algebra(i) {
                return Err(Error::AlgebraMismatch);
            }
        }
        for (a, m) in gamma.arrows().iter().zip(&maps) {
            if m.rows() != modules[a.source].dim() || m.cols() != modules[a.target].dim() {
                return Err(Error::DimensionMismatch(format!(
                    "map for `{}` must be {}x{} (target x source)",
                    a.name,
                    modules[a.target].dim(),
                    modules[a.source].dim()
                )));
            }
        }
        Ok(Representation { lambda, modules, maps })
    }

    pub fn zero(lambda: Arc<GbpAlgebra>) -> Self {
        let modules: Vec<VertexModule> = lambda
            .algebras()
            .iter()
            .map(|a| VertexModule::zero(a.clone()))
            .collect();
        let maps = vec![Matrix::zeros(lambda.field(), 0, 0); lambda.gamma().arrow_count()];
        Representation { lambda, modules, maps }
    }

    pub fn lambda(&self) -> &Arc<GbpAlgebra> {
        &self.lambda
    }

    pub fn field(&self) -> Field {
        self.lambda.field()
    }

    pub fn module(&self, i: usize) -> &VertexModule {
        &self.modules[i]
    }

    pub fn modules(&self) -> &[VertexModule] {
        &self.modules
    }

    /// `M_α` in the row convention.
    pub fn map(&self, alpha: usize) -> &Matrix {
        &self.maps[alpha]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn dimension_vector(&self) -> Vec<usize> {
        self.modules.iter().map(VertexModule::dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.modules.iter().map(VertexModule::dim).sum()
    }

    /// Composite `M_{β_1} X_{γ_1} M_{β_2} … M_{β_m}` for one term.
    fn term_composite(&self, arrows: &[usize], choice: &[usize]) -> Matrix {
        let gamma = self.lambda.gamma();
        let mut m = self.maps[arrows[0]].clone();
        for (k, &a) in arrows[1..].iter().enumerate() {
            let junction = gamma.arrow(arrows[k]).target;
            m = m.mul(self.modules[junction].action(choice[k])).mul(&self.maps[a]);
        }
        m
    }

    /// The first relation instance, over every independent choice of intercalated
    /// basis classes, whose composite is nonzero.
    pub fn relation_witness(&self) -> Option<RelationWitness> {
        let f = self.field();
        let gamma = self.lambda.gamma();
        for (ri, rel) in self.lambda.relations().iter().enumerate() {
            let per_term: Vec<Vec<(Vec<usize>, Matrix)>> = rel
                .terms()
                .iter()
                .map(|(_, p)| {
                    let dims: Vec<usize> = p.arrows()[..p.len() - 1]
                        .iter()
                        .map(|&a| self.lambda.algebra(gamma.arrow(a).target).dim())
                        .collect();
                    tuples(&dims)
                        .into_iter()
                        .map(|c| {
                            let m = self.term_composite(p.arrows(), &c);
                            (c, m)
                        })
                        .collect()
                })
                .collect();
            let counts: Vec<usize> = per_term.iter().map(Vec::len).collect();
            let (s, e) = (rel.start(), rel.end());
            for choice in tuples(&counts) {
                let mut sum = Matrix::zeros(f, self.modules[s].dim(), self.modules[e].dim());
                for (r, (lambda, _)) in rel.terms().iter().enumerate() {
                    sum.add_scaled(lambda, &per_term[r][choice[r]].1);
                }
                if !sum.is_zero() {
                    return Some(RelationWitness {
                        relation: ri,
                        choice: choice
                            .iter()
                            .enumerate()
                            .map(|(r, &c)| per_term[r][c].0.clone())
                            .collect(),
                    });
                }
            }
        }
        None
    }

    pub fn satisfies_relations(&self) -> bool {
        self.relation_witness().is_none()
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        if self.lambda != other.lambda {
            return Err(Error::AlgebraMismatch);
        }
        let modules = self
            .modules
            .iter()
            .zip(&other.modules)
            .map(|(a, b)| a.direct_sum(b))
            .collect::<Result<Vec<_>>>()?;
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| a.block_diagonal(b))
            .collect();
        Ok(Representation {
            lambda: self.lambda.clone(),
            modules,
            maps,
        })
    }

    /// Subrepresentation spanned per vertex by the rows of `spans[i]`, with the
    /// chosen RREF bases.
    pub fn subrepresentation(&self, spans: &[Matrix]) -> Result<(Representation, Vec<Matrix>)> {
        let mut modules = Vec::new();
        let mut frames = Vec::new();
        for (m, s) in self.modules.iter().zip(spans) {
            let (sub, basis) = m.submodule(s)?;
            modules.push(sub);
            frames.push(basis);
        }
        let echelons: Vec<Echelon> = frames.iter().map(Echelon::from_matrix).collect();
        let gamma = self.lambda.gamma();
        let maps = gamma
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let rows = (0..frames[a.source].rows())
                    .map(|r| {
                        echelons[a.target]
                            .coords_in_span(&self.maps[k].apply_row(frames[a.source].row(r)))
                            .ok_or_else(|| {
                                Error::ActionIncompatible(format!("span not closed under `{}`", a.name))
                            })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Matrix::from_rows(self.field(), frames[a.target].rows(), rows))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((
            Representation {
                lambda: self.lambda.clone(),
                modules,
                maps,
            },
            frames,
        ))
    }

    /// Quotient by the subrepresentation spanned per vertex by `spans[i]`.
    pub fn quotient(&self, spans: &[Matrix]) -> Result<Representation> {
        let mut modules = Vec::new();
        let mut qs = Vec::new();
        for (m, s) in self.modules.iter().zip(spans) {
            let (quo, q) = m.quotient(s)?;
            modules.push(quo);
            qs.push(q);
        }
        let gamma = self.lambda.gamma();
        let mut maps = Vec::new();
        for (k, a) in gamma.arrows().iter().enumerate() {
            let (qs_, qe) = (&qs[a.source], &qs[a.target]);
            for r in 0..spans[a.source].rows() {
                let img = self.maps[k].apply_row(spans[a.source].row(r));
                if !qe.coords(&img).iter().all(Scalar::is_zero) {
                    return Err(Error::ActionIncompatible(format!("span not closed under `{}`", a.name)));
                }
            }
            let rows = qs_
                .free_coords()
                .iter()
                .map(|&c| qe.coords(self.maps[k].row(c)))
                .collect();
            maps.push(Matrix::from_rows(self.field(), qe.dim(), rows));
        }
        Ok(Representation {
            lambda: self.lambda.clone(),
            modules,
            maps,
        })
    }
}

pub(crate) fn tuples(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &d in dims {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..d).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// A right `Λ`-module given by an action matrix per basis element of `Λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaModule {
    lambda: Arc<GbpAlgebra>,
    dim: usize,
    action: Vec<Matrix>,
}

impl LambdaModule {
    pub fn new(lambda: Arc<GbpAlgebra>, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        let m = Self::new_unchecked(lambda, dim, action)?;
        m.check_compatible()?;
        Ok(m)
    }

    pub fn new_unchecked(lambda: Arc<GbpAlgebra>, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        if action.len() != lambda.dim() || action.iter().any(|x| x.rows() != dim || x.cols() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "need {} action matrices of size {dim}x{dim}",
                lambda.dim()
            )));
        }
        Ok(LambdaModule { lambda, dim, action })
    }

    /// `Λ_Λ`: right multiplication on the quotient basis.
    pub fn regular(lambda: Arc<GbpAlgebra>) -> Self {
        let d = lambda.dim();
        let f = lambda.field();
        let action = (0..d)
            .map(|b| {
                let mut m = Matrix::zeros(f, d, d);
                for x in 0..d {
                    for (z, s) in lambda.mult(x, b) {
                        m.set(x, *z, s.clone());
                    }
                }
                m
            })
            .collect();
        LambdaModule { lambda, dim: d, action }
    }

    pub fn lambda(&self) -> &Arc<GbpAlgebra> {
        &self.lambda
    }

    pub fn field(&self) -> Field {
        self.lambda.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, b: usize) -> &Matrix {
        &self.action[b]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    pub fn action_of(&self, coords: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.dim, self.dim);
        for (b, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                m.add_scaled(c, &self.action[b]);
            }
        }
        m
    }

    /// `X_1 = id` and `X_x X_g = X_{xg}` for every basis `x` and every generator `g`
    /// (monomials of length ≤ 1 whose coefficients are generators of the vertex algebras);
    /// by induction on products of generators this forces the full table.
    pub fn check_compatible(&self) -> Result<()> {
        let l = &self.lambda;
        if !self.action_of(&l.identity()).is_identity() {
            return Err(Error::ActionIncompatible("the identity does not act as 1".into()));
        }
        let gens = generator_indices(l);
        for x in 0..l.dim() {
            for &g in &gens {
                let lhs = self.action[x].mul(&self.action[g]);
                let mut rhs = Matrix::zeros(self.field(), self.dim, self.dim);
                for (z, s) in l.mult(x, g) {
                    rhs.add_scaled(s, &self.action[*z]);
                }
                if lhs != rhs {
                    return Err(Error::ActionIncompatible(format!(
                        "X({}) X({}) differs from the action of their product",
                        l.basis_name(x),
                        l.basis_name(g)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Submodule spanned by the rows of `span`, in its RREF basis.
    pub fn submodule(&self, span: &Matrix) -> Result<(LambdaModule, Matrix)> {
        let basis = Echelon::from_matrix(span);
        let action = self
            .action
            .iter()
            .map(|x| restrict(&basis, x))
            .collect::<Result<Vec<_>>>()?;
        Ok((
            LambdaModule {
                lambda: self.lambda.clone(),
                dim: basis.rank(),
                action,
            },
            basis.to_matrix(),
        ))
    }

    /// The cyclic submodule `v·Λ`.
    pub fn cyclic_span(&self, v: &[Scalar]) -> Matrix {
        let mut e = Echelon::new(self.field(), self.dim);
        for x in &self.action {
            e.insert(x.apply_row(v));
        }
        e.to_matrix()
    }

    pub fn direct_sum(&self, other: &LambdaModule) -> Result<LambdaModule> {
        if self.lambda != other.lambda {
            return Err(Error::AlgebraMismatch);
        }
        Ok(LambdaModule {
            lambda: self.lambda.clone(),
            dim: self.dim + other.dim,
            action: self
                .action
                .iter()
                .zip(&other.action)
                .map(|(a, b)| a.block_diagonal(b))
                .collect(),
        })
    }

    /// Whether `f` (`dim self × dim other`) intertwines the actions.
    pub fn is_homomorphism(&self, other: &LambdaModule, f: &Matrix) -> bool {
        f.rows() == self.dim
            && f.cols() == other.dim
            && self
                .action
                .iter()
                .zip(&other.action)
                .all(|(x, y)| x.mul(f) == f.mul(y))
    }

    /// `D(M)` over an anti-isomorphic algebra; `back` has row `b'` = preimage of
    /// `target`'s basis element `b'` in this algebra's coordinates.
    pub fn dual(&self, target: Arc<GbpAlgebra>, back: &Matrix) -> LambdaModule {
        let transposed: Vec<Matrix> = self.action.iter().map(Matrix::transpose).collect();
        let f = self.field();
        let action = (0..target.dim())
            .map(|b| {
                let mut m = Matrix::zeros(f, self.dim, self.dim);
                for (k, c) in back.row(b).iter().enumerate() {
                    if !c.is_zero() {
                        m.add_scaled(c, &transposed[k]);
                    }
                }
                m
            })
            .collect();
        LambdaModule {
            lambda: target,
            dim: self.dim,
            action,
        }
    }
}

/// Basis indices of `Λ` that generate it as an algebra: all monomials of length ≤ 1
/// whose coefficients are idempotents or arrows of the vertex algebras.
fn generator_indices(l: &GbpAlgebra) -> Vec<usize> {
    (0..l.dim())
        .filter(|&b| {
            let m = &l.basis()[b];
            m.len() <= 1
                && m.coeffs().iter().enumerate().all(|(k, &c)| {
                    let v = if k == 0 { m.start() } else { m.end() };
                    l.algebra(v).basis()[c].len() <= 1
                })
        })
        .collect()
}

/// The functor `F`: the direct sum of the vertex modules in Γ-vertex order, where a
/// basis monomial `a_0 β_1 a_1 … β_n a_n` acts as `X_{a_0} M_{β_1} X_{a_1} … X_{a_n}`
/// from block `s(β_1)` to block `e(β_n)`.
pub fn functor_f(r: &Representation) -> LambdaModule {
    let l = r.lambda.clone();
    let f = l.field();
    let offsets = offsets(&r.dimension_vector());
    let total = r.total_dim();
    let gamma = l.gamma();
    let action = l
        .basis()
        .iter()
        .map(|m| {
            let mut block = r.modules[m.start()].action(m.coeffs()[0]).clone();
            for (k, &a) in m.arrows().iter().enumerate() {
                let t = gamma.arrow(a).target;
                block = block.mul(&r.maps[a]).mul(r.modules[t].action(m.coeffs()[k + 1]));
            }
            let mut x = Matrix::zeros(f, total, total);
            x.set_block(offsets[m.start()], offsets[m.end()], &block);
            x
        })
        .collect();
    LambdaModule {
        lambda: l,
        dim: total,
        action,
    }
}

pub(crate) fn offsets(dims: &[usize]) -> Vec<usize> {
    dims.iter()
        .scan(0, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect()
}

/// The functor `G`: `M_i = M·1_i` with the restricted `A_i`-action and
/// `M_α = (m ↦ m·α)`.
pub fn functor_g(m: &LambdaModule) -> Result<Representation> {
    functor_g_with_frames(m).map(|(r, _)| r)
}

/// `G(m)` together with, per vertex, the basis of `M·1_i` inside `m` (rows).
/// Stacking the frames gives an isomorphism `F(G(m)) → m`.
pub fn functor_g_with_frames(m: &LambdaModule) -> Result<(Representation, Vec<Matrix>)> {
    let l = m.lambda.clone();
    let gamma = l.gamma();
    let mut frames = Vec::new();
    let mut echelons = Vec::new();
    let mut modules = Vec::new();
    for i in 0..gamma.vertex_count() {
        let proj = m.action_of(&l.vertex_identity(i));
        let basis = Echelon::from_matrix(&proj);
        let a = l.algebra(i);
        let action = (0..a.dim())
            .map(|b| {
                let mut coords = vec![Scalar::zero(); a.dim()];
                coords[b] = Scalar::one();
                restrict(&basis, &m.action_of(&l.embed(i, &coords)))
            })
            .collect::<Result<Vec<_>>>()?;
        modules.push(VertexModule::new_unchecked(a.clone(), basis.rank(), action)?);
        frames.push(basis.to_matrix());
        echelons.push(basis);
    }
    let maps = gamma
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let x = m.action_of(&l.arrow_class(k));
            let rows = (0..echelons[a.source].rank())
                .map(|r| {
                    echelons[a.target]
                        .coords_in_span(&x.apply_row(echelons[a.source].row(r)))
                        .ok_or_else(|| {
                            Error::ActionIncompatible(format!("`{}` leaves M·1_{}", a.name, gamma.vertex_name(a.target)))
                        })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_rows(l.field(), echelons[a.target].rank(), rows))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((
        Representation {
            lambda: l,
            modules,
            maps,
        },
        frames,
    ))
}

/// A morphism of representations: one `A_i`-linear map per vertex (row convention).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMorphism {
    pub components: Vec<Matrix>,
}

impl RepMorphism {
    pub fn identity(r: &Representation) -> Self {
        RepMorphism {
            components: r
                .modules
                .iter()
                .map(|m| Matrix::identity(r.field(), m.dim()))
                .collect(),
        }
    }

    pub fn zero(from: &Representation, to: &Representation) -> Self {
        RepMorphism {
            components: from
                .modules
                .iter()
                .zip(&to.modules)
                .map(|(a, b)| Matrix::zeros(from.field(), a.dim(), b.dim()))
                .collect(),
        }
    }

    pub fn compose(&self, then: &RepMorphism) -> RepMorphism {
        RepMorphism {
            components: self
                .components
                .iter()
                .zip(&then.components)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    /// Checks `A_i`-linearity of every component and every commuting square.
    pub fn check(&self, from: &Representation, to: &Representation) -> Result<()> {
        if from.lambda != to.lambda {
            return Err(Error::AlgebraMismatch);
        }
        let gamma = from.lambda.gamma();
        for (i, f) in self.components.iter().enumerate() {
            if f.rows() != from.modules[i].dim() || f.cols() != to.modules[i].dim() {
                return Err(Error::DimensionMismatch(format!(
                    "component at `{}` has the wrong shape",
                    gamma.vertex_name(i)
                )));
            }
            if !from.modules[i].is_homomorphism(&to.modules[i], f) {
                return Err(Error::NotAHomomorphism(format!(
                    "component at `{}` is not linear over the vertex algebra",
                    gamma.vertex_name(i)
                )));
            }
        }
        for (k, a) in gamma.arrows().iter().enumerate() {
            let lhs = from.maps[k].mul(&self.components[a.target]);
            let rhs = self.components[a.source].mul(&to.maps[k]);
            if lhs != rhs {
                return Err(Error::NotAHomomorphism(format!("square at `{}` does not commute", a.name)));
            }
        }
        Ok(())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.components
            .iter()
            .all(|f| f.is_square() && f.rank() == f.rows())
    }

    pub fn is_monomorphism(&self) -> bool {
        self.components.iter().all(|f| f.rank() == f.rows())
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.components.iter().map(Matrix::rank).collect()
    }
}

/// Basis of `Hom(M, N)`: the kernel of the linear system given by linearity over the
/// generators of each `A_i` and the commuting squares.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<Vec<RepMorphism>> {
    if m.lambda != n.lambda {
        return Err(Error::AlgebraMismatch);
    }
    let f = m.field();
    let mdims = m.dimension_vector();
    let ndims = n.dimension_vector();
    let sizes: Vec<usize> = mdims.iter().zip(&ndims).map(|(a, b)| a * b).collect();
    let var_off = offsets(&sizes);
    let nvars: usize = sizes.iter().sum();
    let var = |i: usize, r: usize, c: usize| var_off[i] + r * ndims[i] + c;
    let mut eqs = Echelon::new(f, nvars);

    for i in 0..mdims.len() {
        let a = m.lambda.algebra(i);
        for g in a.generators() {
            // X f − f Y = 0
            let (x, y) = (m.modules[i].action(g), n.modules[i].action(g));
            for r in 0..mdims[i] {
                for c in 0..ndims[i] {
                    let mut row = vec![Scalar::zero(); nvars];
                    for k in 0..mdims[i] {
                        let v = var(i, k, c);
                        row[v] = f.add(&row[v], x.get(r, k));
                    }
                    for k in 0..ndims[i] {
                        let v = var(i, r, k);
                        row[v] = f.sub(&row[v], y.get(k, c));
                    }
                    eqs.insert(row);
                }
            }
        }
    }
    for (k, a) in m.lambda.gamma().arrows().iter().enumerate() {
        // M_α f_e − f_s N_α = 0
        let (s, e) = (a.source, a.target);
        let (ma, na) = (&m.maps[k], &n.maps[k]);
        for r in 0..mdims[s] {
            for c in 0..ndims[e] {
                let mut row = vec![Scalar::zero(); nvars];
                for t in 0..mdims[e] {
                    let v = var(e, t, c);
                    row[v] = f.add(&row[v], ma.get(r, t));
                }
                for t in 0..ndims[s] {
                    let v = var(s, r, t);
                    row[v] = f.sub(&row[v], na.get(t, c));
                }
                eqs.insert(row);
            }
        }
    }
    let kernel = eqs.kernel_basis();
    Ok((0..kernel.rows())
        .map(|k| {
            let sol = kernel.row(k);
            RepMorphism {
                components: (0..mdims.len())
                    .map(|i| {
                        let rows = (0..mdims[i])
                            .map(|r| (0..ndims[i]).map(|c| sol[var(i, r, c)].clone()).collect())
                            .collect();
                        Matrix::from_rows(f, ndims[i], rows)
                    })
                    .collect(),
            }
        })
        .collect())
}

/// Outcome of [`find_isomorphism`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoSearch {
    Found(RepMorphism),
    /// Certified: dimension vectors differ, no nonzero morphism exists, or every
    /// element of a finite Hom-space was tried.
    NotIsomorphic,
    /// The sampling budget ran out; no conclusion.
    Inconclusive,
}

impl IsoSearch {
    pub fn found(&self) -> Option<&RepMorphism> {
        match self {
            IsoSearch::Found(f) => Some(f),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct IsoSearchOptions {
    pub seed: u64,
    pub attempts: usize,
    /// Over GF(p), enumerate the whole Hom-space when it has at most this many elements.
    pub enumerate_limit: u64,
}

impl Default for IsoSearchOptions {
    fn default() -> Self {
        IsoSearchOptions {
            seed: 0x5eed,
            attempts: 64,
            enumerate_limit: 4096,
        }
    }
}

pub fn find_isomorphism(m: &Representation, n: &Representation) -> Result<IsoSearch> {
    find_isomorphism_with(m, n, &IsoSearchOptions::default())
}

/// Samples random combinations of a Hom-space basis until one is invertible on every
/// vertex. Over ℚ the integer coefficient window doubles every few attempts.
pub fn find_isomorphism_with(m: &Representation, n: &Representation, opts: &IsoSearchOptions) -> Result<IsoSearch> {
    if m.lambda != n.lambda {
        return Err(Error::AlgebraMismatch);
    }
    if m.dimension_vector() != n.dimension_vector() {
        return Ok(IsoSearch::NotIsomorphic);
    }
    if m.total_dim() == 0 {
        return Ok(IsoSearch::Found(RepMorphism::zero(m, n)));
    }
    let basis = hom_space(m, n)?;
    if basis.is_empty() {
        return Ok(IsoSearch::NotIsomorphic);
    }
    let f = m.field();
    let combine = |coeffs: &[Scalar]| RepMorphism {
        components: (0..basis[0].components.len())
            .map(|i| {
                let c0 = &basis[0].components[i];
                let mut acc = Matrix::zeros(f, c0.rows(), c0.cols());
                for (h, c) in basis.iter().zip(coeffs) {
                    if !c.is_zero() {
                        acc.add_scaled(c, &h.components[i]);
                    }
                }
                acc
            })
            .collect(),
    };
    if let Field::Prime(p) = f {
        let size = (p as u128).checked_pow(basis.len() as u32);
        if size.is_some_and(|s| s <= opts.enumerate_limit as u128) {
            for digits in tuples(&vec![p as usize; basis.len()]) {
                let coeffs: Vec<Scalar> = digits.iter().map(|&d| f.from_int(d as i64)).collect();
                let cand = combine(&coeffs);
                if cand.is_isomorphism() {
                    return Ok(IsoSearch::Found(cand));
                }
            }
            return Ok(IsoSearch::NotIsomorphic);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for attempt in 0..opts.attempts {
        let window: i64 = 1 << (attempt / 8).min(20);
        let coeffs: Vec<Scalar> = (0..basis.len())
            .map(|_| f.from_int(rng.gen_range(-window..=window)))
            .collect();
        let cand = combine(&coeffs);
        if cand.is_isomorphism() {
            return Ok(IsoSearch::Found(cand));
        }
    }
    Ok(IsoSearch::Inconclusive)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gbp::tests::{line_example, two_copies};
    use crate::vertexalg::{projective, simple};

    fn p11_line(l: &Arc<GbpAlgebra>) -> Representation {
        // k --[1 0 … 0]ᵀ--> A --> 0
        let f = l.field();
        let a = l.algebra(1);
        let mut alpha = Matrix::zeros(f, 1, a.dim());
        alpha.set(0, 0, Scalar::one());
        Representation::new(
            l.clone(),
            vec![
                simple(l.algebra(0), 0).unwrap(),
                projective(a, 0).unwrap(),
                VertexModule::zero(l.algebra(2).clone()),
            ],
            vec![alpha, Matrix::zeros(f, a.dim(), 0)],
        )
        .unwrap()
    }

    #[test]
    fn relation_check() {
        let l = Arc::new(line_example(2));
        let p = p11_line(&l);
        assert!(p.satisfies_relations());
        assert_eq!(p.dimension_vector(), vec![1, 2, 0]);

        let f = l.field();
        let mut alpha = Matrix::zeros(f, 1, 2);
        alpha.set(0, 0, Scalar::one());
        let mut beta = Matrix::zeros(f, 2, 1);
        beta.set(0, 0, Scalar::one());
        let bad = Representation::new_unchecked(
            l.clone(),
            vec![
                simple(l.algebra(0), 0).unwrap(),
                projective(l.algebra(1), 0).unwrap(),
                simple(l.algebra(2), 0).unwrap(),
            ],
            vec![alpha, beta],
        )
        .unwrap();
        let w = bad.relation_witness().unwrap();
        assert_eq!(w.relation, 0);
        assert_eq!(w.choice, vec![vec![0]]);
        assert!(matches!(
            Representation::new(l.clone(), bad.modules.clone(), bad.maps.clone()),
            Err(Error::RelationViolation { .. })
        ));

        let l2 = Arc::new(two_copies());
        assert!(Representation::zero(l2).satisfies_relations());
    }

    #[test]
    fn f_then_g_is_identity() {
        let l = Arc::new(line_example(3));
        let p = p11_line(&l);
        let m = functor_f(&p);
        m.check_compatible().unwrap();
        assert_eq!(m.dim(), 4);
        assert_eq!(functor_g(&m).unwrap(), p);
        let z = Representation::zero(l.clone());
        assert_eq!(functor_f(&z).dim(), 0);
        assert_eq!(functor_g(&functor_f(&z)).unwrap(), z);
    }

    #[test]
    fn g_of_regular() {
        for l in [Arc::new(line_example(2)), Arc::new(two_copies())] {
            let reg = LambdaModule::regular(l.clone());
            reg.check_compatible().unwrap();
            let (r, frames) = functor_g_with_frames(&reg).unwrap();
            assert!(r.satisfies_relations());
            assert_eq!(r.total_dim(), l.dim());
            let t = frames
                .iter()
                .skip(1)
                .fold(frames[0].clone(), |acc, x| acc.vstack(x));
            assert!(functor_f(&r).is_homomorphism(&reg, &t));
            assert!(t.inverse().is_some());
        }
    }

    #[test]
    fn hom_spaces() {
        let l = Arc::new(two_copies());
        let p = functor_g(&LambdaModule::regular(l.clone())).unwrap();
        let id = RepMorphism::identity(&p);
        id.check(&p, &p).unwrap();
        let h = hom_space(&p, &p).unwrap();
        assert_eq!(h.len(), l.dim());

        let simples: Vec<Representation> = l
            .vertex_pairs()
            .into_iter()
            .map(|(i, j)| {
                let mut modules: Vec<VertexModule> =
                    l.algebras().iter().map(|a| VertexModule::zero(a.clone())).collect();
                modules[i] = simple(l.algebra(i), j).unwrap();
                let maps = l
                    .gamma()
                    .arrows()
                    .iter()
                    .map(|a| Matrix::zeros(l.field(), modules[a.source].dim(), modules[a.target].dim()))
                    .collect();
                Representation::new(l.clone(), modules, maps).unwrap()
            })
            .collect();
        for (x, s) in simples.iter().enumerate() {
            for (y, t) in simples.iter().enumerate() {
                let dim = hom_space(s, t).unwrap().len();
                assert_eq!(dim, usize::from(x == y));
                let iso = find_isomorphism(s, t).unwrap();
                if x == y {
                    assert!(iso.found().is_some());
                } else {
                    assert_eq!(iso, IsoSearch::NotIsomorphic);
                }
            }
        }
        for b in &h {
            b.check(&p, &p).unwrap();
            for c in &h[..3] {
                b.compose(c).check(&p, &p).unwrap();
            }
        }
    }

    #[test]
    fn direct_sums_and_quotients() {
        let l = Arc::new(line_example(2));
        let p = p11_line(&l);
        let z = Representation::zero(l.clone());
        assert_eq!(p.direct_sum(&z).unwrap(), p);
        let pp = p.direct_sum(&p).unwrap();
        assert_eq!(pp.dimension_vector(), vec![2, 4, 0]);
        assert!(pp.satisfies_relations());
        // the socle-side piece: γ at vertex 2
        let f = l.field();
        let spans = vec![
            Matrix::zeros(f, 0, 1),
            Matrix::from_ints(f, &[&[0, 1]]),
            Matrix::zeros(f, 0, 0),
        ];
        let (sub, frames) = p.subrepresentation(&spans).unwrap();
        assert_eq!(sub.dimension_vector(), vec![0, 1, 0]);
        assert_eq!(frames[1], spans[1]);
        let q = p.quotient(&spans).unwrap();
        assert_eq!(q.dimension_vector(), vec![1, 1, 0]);
        assert!(q.satisfies_relations());
    }

    #[test]
    fn iso_search_over_prime_field() {
        let f = Field::prime(3).unwrap();
        let a = Arc::new(crate::vertexalg::VertexAlgebra::base_field(f, "o"));
        let l = Arc::new(GbpAlgebra::build(f, crate::quiver::Quiver::point("p"), vec![a.clone()], vec![]).unwrap());
        let s = Representation::new(l.clone(), vec![simple(&a, 0).unwrap()], vec![]).unwrap();
        let ss = s.direct_sum(&s).unwrap();
        let found = find_isomorphism(&ss, &ss).unwrap();
        let iso = found.found().unwrap();
        iso.check(&ss, &ss).unwrap();
        assert!(iso.is_isomorphism());
    }
}
