//! Generalized bound path algebras `Λ = k(Γ,𝒜,I)`.
//!
//! The free algebra `k(Γ,𝒜)` has a basis of 𝒜-path monomials
//! `a_0 β_1 a_1 … β_n a_n` whose coefficients `a_k` are basis elements of the
//! vertex algebra at the junction. `Λ` is its quotient by the two-sided ideal
//! spanned by all intercalated versions of the relations in `I`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Field, QuotientBasis, Scalar};
use crate::quiver::{Path, Quiver, RelationCombo};
use crate::vertexalg::VertexAlgebra;

/// A monomial `a_0 β_1 a_1 … β_n a_n` of the free algebra.
///
/// `coeffs[k]` is a basis index into the vertex algebra at the `k`-th vertex
/// visited, so `coeffs.len() == arrows.len() + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct APath {
    start: usize,
    end: usize,
    arrows: Vec<usize>,
    coeffs: Vec<usize>,
}

impl APath {
    /// The length-zero monomial given by basis element `b` of `A_i`.
    pub fn vertex(i: usize, b: usize) -> Self {
        APath {
            start: i,
            end: i,
            arrows: Vec::new(),
            coeffs: vec![b],
        }
    }

    pub fn new(path: &Path, coeffs: Vec<usize>) -> Self {
        assert_eq!(coeffs.len(), path.len() + 1, "one coefficient per visited vertex");
        APath {
            start: path.start(),
            end: path.end(),
            arrows: path.arrows().to_vec(),
            coeffs,
        }
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.end
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn coeffs(&self) -> &[usize] {
        &self.coeffs
    }

    /// Length of the underlying Γ-path.
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn gamma_path(&self) -> Path {
        if self.arrows.is_empty() {
            Path::trivial(self.start)
        } else {
            Path::from_parts(self.start, self.end, self.arrows.clone())
        }
    }
}

/// Free monomials in deterministic order: Γ-paths by length then lexicographically,
/// then coefficient tuples lexicographically.
pub fn enumerate_free_basis(gamma: &Quiver, algebras: &[Arc<VertexAlgebra>]) -> Result<Vec<APath>> {
    let longest = gamma.longest_path_len().ok_or(Error::CyclicGamma)?;
    let mut out = Vec::new();
    for p in gamma.paths_up_to(longest) {
        let mut visited = vec![p.start()];
        visited.extend(p.arrows().iter().map(|&a| gamma.arrow(a).target));
        let dims: Vec<usize> = visited.iter().map(|&v| algebras[v].dim()).collect();
        for coeffs in tuples(&dims) {
            out.push(APath::new(&p, coeffs));
        }
    }
    Ok(out)
}

/// All index tuples below `dims`, lexicographically.
fn tuples(dims: &[usize]) -> Vec<Vec<usize>> {
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

pub type Sparse = Vec<(usize, Scalar)>;

/// The algebra `k(Γ,𝒜,I)` with an explicit quotient basis and multiplication table.
#[derive(Clone)]
pub struct GbpAlgebra {
    field: Field,
    gamma: Quiver,
    algebras: Vec<Arc<VertexAlgebra>>,
    relations: Vec<RelationCombo>,
    free: Vec<APath>,
    free_index: HashMap<APath, usize>,
    quotient: QuotientBasis,
    basis: Vec<APath>,
    table: Vec<Sparse>,
    idempotents: Vec<Vec<usize>>,
}

impl fmt::Debug for GbpAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GbpAlgebra")
            .field("field", &self.field)
            .field("gamma", &self.gamma)
            .field("free_dim", &self.free.len())
            .field("dim", &self.basis.len())
            .finish()
    }
}

impl PartialEq for GbpAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.gamma == other.gamma
            && self.algebras == other.algebras
            && self.relations == other.relations
    }
}

impl Eq for GbpAlgebra {}

impl GbpAlgebra {
    pub fn build(
        field: Field,
        gamma: Quiver,
        algebras: Vec<Arc<VertexAlgebra>>,
        relations: Vec<RelationCombo>,
    ) -> Result<Self> {
        if !gamma.is_acyclic() {
            return Err(Error::CyclicGamma);
        }
        if algebras.len() != gamma.vertex_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} vertex algebras for {} vertices",
                algebras.len(),
                gamma.vertex_count()
            )));
        }
        if algebras.iter().any(|a| a.field() != field) {
            return Err(Error::InvalidField("vertex algebras over different fields".into()));
        }
        for rel in &relations {
            rel.validate(&gamma)?;
            for (c, _) in rel.terms() {
                if !field.contains(c) {
                    return Err(Error::InvalidRelation(format!(
                        "coefficient {c} is not an element of {field}"
                    )));
                }
            }
        }
        let free = enumerate_free_basis(&gamma, &algebras)?;
        let free_index: HashMap<APath, usize> =
            free.iter().cloned().enumerate().map(|(k, p)| (p, k)).collect();
        let mut alg = GbpAlgebra {
            field,
            gamma,
            algebras,
            relations,
            free,
            free_index,
            quotient: QuotientBasis::from_echelon(Echelon::new(field, 0)),
            basis: Vec::new(),
            table: Vec::new(),
            idempotents: Vec::new(),
        };
        alg.quotient = QuotientBasis::from_echelon(alg.ideal_span());
        alg.basis = alg
            .quotient
            .free_coords()
            .iter()
            .map(|&c| alg.free[c].clone())
            .collect();
        let d = alg.basis.len();
        let mut table = Vec::with_capacity(d * d);
        for x in 0..d {
            for y in 0..d {
                let prod = alg.free_mul(&alg.basis[x], &alg.basis[y]);
                table.push(sparse(alg.quotient.coords_sparse(&prod)));
            }
        }
        alg.table = table;
        alg.idempotents = (0..alg.gamma.vertex_count())
            .map(|i| {
                let a = &alg.algebras[i];
                (0..a.sigma().vertex_count())
                    .map(|j| {
                        let m = APath::vertex(i, a.idempotent(j));
                        alg.basis
                            .iter()
                            .position(|p| *p == m)
                            .expect("length-zero monomials are never in the ideal")
                    })
                    .collect()
            })
            .collect();
        Ok(alg)
    }

    /// Product of two free monomials in free coordinates.
    pub fn free_mul(&self, x: &APath, y: &APath) -> Sparse {
        if x.end != y.start {
            return Vec::new();
        }
        let a = &self.algebras[x.end];
        let mut arrows = x.arrows.clone();
        arrows.extend_from_slice(&y.arrows);
        a.mult(*x.coeffs.last().unwrap(), y.coeffs[0])
            .iter()
            .map(|(z, c)| {
                let mut coeffs = x.coeffs[..x.coeffs.len() - 1].to_vec();
                coeffs.push(*z);
                coeffs.extend_from_slice(&y.coeffs[1..]);
                let m = APath {
                    start: x.start,
                    end: y.end,
                    arrows: arrows.clone(),
                    coeffs,
                };
                (self.free_index[&m], c.clone())
            })
            .collect()
    }

    fn free_mul_vec(&self, v: &Sparse, w: &Sparse) -> Sparse {
        let f = self.field;
        let mut acc: HashMap<usize, Scalar> = HashMap::new();
        for (x, cx) in v {
            for (y, cy) in w {
                for (z, cz) in self.free_mul(&self.free[*x], &self.free[*y]) {
                    let e = acc.entry(z).or_insert_with(Scalar::zero);
                    *e = f.add(e, &f.mul(&f.mul(cx, cy), &cz));
                }
            }
        }
        let mut out: Sparse = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_by_key(|(k, _)| *k);
        out
    }

    /// Free-coordinate vectors of `Σ_r λ_r β_{r1} γ_{r1} β_{r2} … β_{rm}`, one per
    /// independent choice of basis classes `γ` at each internal junction of each
    /// term; the boundary identities are expanded over the idempotents.
    pub fn relation_ideal_generators(&self) -> Vec<Sparse> {
        let f = self.field;
        let mut out = Vec::new();
        for rel in &self.relations {
            let s = rel.start();
            let e = rel.end();
            let per_term: Vec<Vec<Vec<usize>>> = rel
                .terms()
                .iter()
                .map(|(_, p)| {
                    let dims: Vec<usize> = p.arrows()[..p.len() - 1]
                        .iter()
                        .map(|&a| self.algebras[self.gamma.arrow(a).target].dim())
                        .collect();
                    tuples(&dims)
                })
                .collect();
            let choice_counts: Vec<usize> = per_term.iter().map(Vec::len).collect();
            for choice in tuples(&choice_counts) {
                let mut acc: HashMap<usize, Scalar> = HashMap::new();
                for (r, (lambda, p)) in rel.terms().iter().enumerate() {
                    let inner = &per_term[r][choice[r]];
                    for &es in self.algebras[s].idempotents() {
                        for &ee in self.algebras[e].idempotents() {
                            let mut coeffs = vec![es];
                            coeffs.extend_from_slice(inner);
                            coeffs.push(ee);
                            let k = self.free_index[&APath::new(p, coeffs)];
                            let c = acc.entry(k).or_insert_with(Scalar::zero);
                            *c = f.add(c, lambda);
                        }
                    }
                }
                let mut g: Sparse = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                g.sort_by_key(|(k, _)| *k);
                if !g.is_empty() {
                    out.push(g);
                }
            }
        }
        out
    }

    /// The span of `u·g·v` over generators `g` and monomials `u`, `v` (or the identity).
    fn ideal_span(&self) -> Echelon {
        let n = self.free.len();
        let mut span = Echelon::new(self.field, n);
        for g in self.relation_ideal_generators() {
            let gs = self.free[g[0].0].start;
            let ge = self.free[g[0].0].end;
            let lefts: Vec<Sparse> = std::iter::once(g.clone())
                .chain(
                    self.free
                        .iter()
                        .enumerate()
                        .filter(|(_, u)| u.end == gs)
                        .map(|(k, _)| self.free_mul_vec(&vec![(k, Scalar::one())], &g)),
                )
                .filter(|v| !v.is_empty())
                .collect();
            let rights: Vec<Option<usize>> = std::iter::once(None)
                .chain(
                    self.free
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| v.start == ge)
                        .map(|(k, _)| Some(k)),
                )
                .collect();
            for ug in &lefts {
                for r in &rights {
                    let ugv = match r {
                        None => ug.clone(),
                        Some(k) => self.free_mul_vec(ug, &vec![(*k, Scalar::one())]),
                    };
                    if ugv.is_empty() {
                        continue;
                    }
                    let mut dense = vec![Scalar::zero(); n];
                    for (k, c) in ugv {
                        dense[k] = c;
                    }
                    span.insert(dense);
                }
            }
        }
        span
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn gamma(&self) -> &Quiver {
        &self.gamma
    }

    pub fn algebra(&self, i: usize) -> &Arc<VertexAlgebra> {
        &self.algebras[i]
    }

    pub fn algebras(&self) -> &[Arc<VertexAlgebra>] {
        &self.algebras
    }

    pub fn relations(&self) -> &[RelationCombo] {
        &self.relations
    }

    /// Whether some relation has more than one term; the intercalations of
    /// different terms are then chosen independently.
    pub fn has_multi_term_relations(&self) -> bool {
        self.relations.iter().any(|r| !r.is_monomial())
    }

    pub fn free_basis(&self) -> &[APath] {
        &self.free
    }

    pub fn free_dim(&self) -> usize {
        self.free.len()
    }

    pub fn ideal_dim(&self) -> usize {
        self.quotient.span().rank()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[APath] {
        &self.basis
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.gamma.vertex_index(name)
    }

    /// Resolves a Γ-vertex name and a Σ-vertex name of its algebra.
    pub fn resolve(&self, vertex: &str, sub: &str) -> Result<(usize, usize)> {
        let i = self.gamma.vertex_index(vertex)?;
        let j = self.algebras[i].vertex_index(sub)?;
        Ok((i, j))
    }

    pub fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        if i >= self.gamma.vertex_count() {
            return Err(Error::UnknownVertex(i.to_string()));
        }
        if j >= self.algebras[i].sigma().vertex_count() {
            return Err(Error::UnknownVertex(format!("{j} in the algebra at {}", self.gamma.vertex_name(i))));
        }
        Ok(())
    }

    /// Basis index of `ē_{ij}`.
    pub fn idempotent(&self, i: usize, j: usize) -> usize {
        self.idempotents[i][j]
    }

    /// All `(i, j)` pairs in declaration order.
    pub fn vertex_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.gamma.vertex_count())
            .flat_map(|i| (0..self.algebras[i].sigma().vertex_count()).map(move |j| (i, j)))
            .collect()
    }

    pub fn mult(&self, x: usize, y: usize) -> &[(usize, Scalar)] {
        &self.table[x * self.dim() + y]
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let f = self.field;
        let mut out = vec![Scalar::zero(); self.dim()];
        for (a, ca) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (b, cb) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let c = f.mul(ca, cb);
                for (z, s) in self.mult(a, b) {
                    out[*z] = f.add(&out[*z], &f.mul(&c, s));
                }
            }
        }
        out
    }

    pub fn unit_vector(&self, b: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[b] = Scalar::one();
        v
    }

    /// `1_i = Σ_j ē_{ij}`.
    pub fn vertex_identity(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        for &e in &self.idempotents[i] {
            v[e] = Scalar::one();
        }
        v
    }

    pub fn identity(&self) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        for row in &self.idempotents {
            for &e in row {
                v[e] = Scalar::one();
            }
        }
        v
    }

    /// Quotient coordinates of a free-coordinate vector.
    pub fn reduce(&self, free: &[(usize, Scalar)]) -> Vec<Scalar> {
        self.quotient.coords_sparse(free)
    }

    pub fn class_of(&self, m: &APath) -> Vec<Scalar> {
        self.reduce(&[(self.free_index[m], Scalar::one())])
    }

    /// Class of `a_0 β_1 a_1 … β_n a_n` with arbitrary coefficient vectors, expanded
    /// multilinearly over the basis.
    pub fn class_of_general(&self, path: &Path, coeffs: &[Vec<Scalar>]) -> Vec<Scalar> {
        let f = self.field;
        let mut terms: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), Scalar::one())];
        for c in coeffs {
            terms = terms
                .into_iter()
                .flat_map(|(t, s)| {
                    c.iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(move |(b, x)| {
                            let mut t = t.clone();
                            t.push(b);
                            (t, f.mul(&s, x))
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
        }
        let free: Sparse = terms
            .into_iter()
            .map(|(t, s)| (self.free_index[&APath::new(path, t)], s))
            .collect();
        self.reduce(&free)
    }

    /// Class of `1_{s(α)} α 1_{e(α)}`.
    pub fn arrow_class(&self, alpha: usize) -> Vec<Scalar> {
        let arrow = self.gamma.arrow(alpha);
        let p = Path::from_parts(arrow.source, arrow.target, vec![alpha]);
        self.class_of_general(
            &p,
            &[
                self.algebras[arrow.source].unit(),
                self.algebras[arrow.target].unit(),
            ],
        )
    }

    /// Class of the length-zero monomial for `A_i`-coordinates `a`.
    pub fn embed(&self, i: usize, a: &[Scalar]) -> Vec<Scalar> {
        self.class_of_general(&Path::trivial(i), &[a.to_vec()])
    }

    pub fn render_monomial(&self, m: &APath) -> String {
        let coeff = |k: usize, v: usize| format!("({})", self.algebras[v].basis_name(m.coeffs[k]));
        if m.arrows.is_empty() {
            return format!("{}:{}", self.gamma.vertex_name(m.start), coeff(0, m.start));
        }
        let mut s = coeff(0, m.start);
        for (k, &a) in m.arrows.iter().enumerate() {
            let arrow = self.gamma.arrow(a);
            s.push(' ');
            s.push_str(&arrow.name);
            s.push(' ');
            s.push_str(&coeff(k + 1, arrow.target));
        }
        s
    }

    pub fn basis_name(&self, b: usize) -> String {
        self.render_monomial(&self.basis[b])
    }
}

fn sparse(v: Vec<Scalar>) -> Sparse {
    v.into_iter().enumerate().filter(|(_, s)| !s.is_zero()).collect()
}
