//! Inclusion, cone and dual cone functors, and transport to the opposite algebra.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gbp::GbpAlgebra;
use crate::linalg::{Echelon, Matrix, QuotientBasis, Scalar};
use crate::quiver::Path;
use crate::reps::{functor_g_with_frames, LambdaModule, RepMorphism, Representation};
use crate::vertexalg::{VertexAlgebra, VertexModule};

fn check_vertex_module(lambda: &GbpAlgebra, i: usize, m: &VertexModule) -> Result<()> {
    if i >= lambda.gamma().vertex_count() {
        return Err(Error::UnknownVertex(i.to_string()));
    }
    if **m.algebra() != **lambda.algebra(i) {
        return Err(Error::AlgebraMismatch);
    }
    Ok(())
}

/// `M` at vertex `i`, zero elsewhere.
pub fn inclusion(lambda: &Arc<GbpAlgebra>, i: usize, m: &VertexModule) -> Result<Representation> {
    check_vertex_module(lambda, i, m)?;
    let mut modules: Vec<VertexModule> = lambda
        .algebras()
        .iter()
        .map(|a| VertexModule::zero(a.clone()))
        .collect();
    modules[i] = VertexModule::new_unchecked(lambda.algebra(i).clone(), m.dim(), m.actions().to_vec())?;
    let maps = lambda
        .gamma()
        .arrows()
        .iter()
        .map(|a| Matrix::zeros(lambda.field(), modules[a.source].dim(), modules[a.target].dim()))
        .collect();
    Representation::new(lambda.clone(), modules, maps)
}

/// `𝒞_i(M) = M ⊗_{A_i} Λ`, kept with the data needed to push morphisms through it.
#[derive(Clone, Debug)]
pub struct Cone {
    pub rep: Representation,
    pub module: LambdaModule,
    vertex: usize,
    source_dim: usize,
    /// basis indices of `Λ` spanning `1_i Λ`
    tail: Vec<usize>,
    tensor: QuotientBasis,
    frames: Vec<Echelon>,
}

impl Cone {
    pub fn vertex(&self) -> usize {
        self.vertex
    }

    /// `𝒞_i(f)` for `f: M → N` (row convention), `self` being the cone of `M`.
    pub fn map_to(&self, target: &Cone, f: &Matrix) -> Result<RepMorphism> {
        if self.vertex != target.vertex || self.rep.lambda() != target.rep.lambda() {
            return Err(Error::AlgebraMismatch);
        }
        if f.rows() != self.source_dim || f.cols() != target.source_dim {
            return Err(Error::DimensionMismatch("morphism does not match the cone sources".into()));
        }
        let y = self.tail.len();
        let field = f.field();
        // f ⊗ id on the tensor representatives, then reduced in the target quotient
        let h_rows: Vec<Vec<Scalar>> = self
            .tensor
            .free_coords()
            .iter()
            .map(|&c| {
                let (p, q) = (c / y, c % y);
                let mut v = vec![Scalar::zero(); target.source_dim * y];
                for (p2, s) in f.row(p).iter().enumerate() {
                    v[p2 * y + q] = s.clone();
                }
                target.tensor.coords(&v)
            })
            .collect();
        let h = Matrix::from_rows(field, target.tensor.dim(), h_rows);
        let components = self
            .frames
            .iter()
            .zip(&target.frames)
            .map(|(src, dst)| {
                let rows = (0..src.rank())
                    .map(|r| {
                        dst.coords_in_span(&h.apply_row(src.row(r)))
                            .ok_or_else(|| Error::NotAHomomorphism("cone map leaves the vertex block".into()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Matrix::from_rows(field, dst.rank(), rows))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RepMorphism { components })
    }
}

/// Builds `M ⊗_{A_i} 1_iΛ` as the quotient of `M ⊗_k 1_iΛ` by
/// `{ m·a ⊗ y − m ⊗ ā·y }`; only the `A_i` component of the base ring matters since the
/// other vertex algebras kill both factors.
pub fn cone_full(lambda: &Arc<GbpAlgebra>, i: usize, m: &VertexModule) -> Result<Cone> {
    check_vertex_module(lambda, i, m)?;
    let f = lambda.field();
    let a = lambda.algebra(i);
    let tail: Vec<usize> = (0..lambda.dim()).filter(|&b| lambda.basis()[b].start() == i).collect();
    let y = tail.len();
    let mut pos = vec![usize::MAX; lambda.dim()];
    for (q, &b) in tail.iter().enumerate() {
        pos[b] = q;
    }
    let n = m.dim() * y;
    // left multiplication by ā on 1_iΛ, in tail coordinates
    let left: Vec<Vec<Vec<(usize, Scalar)>>> = (0..a.dim())
        .map(|ab| {
            let mut unit = vec![Scalar::zero(); a.dim()];
            unit[ab] = Scalar::one();
            let abar = lambda.embed(i, &unit);
            tail.iter()
                .map(|&b| {
                    lambda
                        .multiply(&abar, &lambda.unit_vector(b))
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(z, c)| (pos[z], c))
                        .collect()
                })
                .collect()
        })
        .collect();
    let mut span = Echelon::new(f, n);
    for p in 0..m.dim() {
        for ab in 0..a.dim() {
            let x = m.action(ab);
            for q in 0..y {
                let mut v = vec![Scalar::zero(); n];
                for p2 in 0..m.dim() {
                    v[p2 * y + q] = x.get(p, p2).clone();
                }
                for (q2, c) in &left[ab][q] {
                    let k = p * y + q2;
                    v[k] = f.sub(&v[k], c);
                }
                span.insert(v);
            }
        }
    }
    let tensor = QuotientBasis::from_echelon(span);
    // right action (m ⊗ y)·z = m ⊗ yz
    let action = (0..lambda.dim())
        .map(|z| {
            let rows = tensor
                .free_coords()
                .iter()
                .map(|&c| {
                    let (p, q) = (c / y, c % y);
                    let prod: Vec<(usize, Scalar)> = lambda
                        .mult(tail[q], z)
                        .iter()
                        .map(|(w, s)| (p * y + pos[*w], s.clone()))
                        .collect();
                    tensor.coords_sparse(&prod)
                })
                .collect();
            Matrix::from_rows(f, tensor.dim(), rows)
        })
        .collect();
    let module = LambdaModule::new_unchecked(lambda.clone(), tensor.dim(), action)?;
    let (rep, frames) = functor_g_with_frames(&module)?;
    Ok(Cone {
        rep,
        module,
        vertex: i,
        source_dim: m.dim(),
        tail,
        tensor,
        frames: frames.iter().map(Echelon::from_matrix).collect(),
    })
}

pub fn cone(lambda: &Arc<GbpAlgebra>, i: usize, m: &VertexModule) -> Result<Representation> {
    cone_full(lambda, i, m).map(|c| c.rep)
}

/// `𝒞_i(f)` for an `A_i`-linear `f: M → N` (row convention).
pub fn cone_map(
    lambda: &Arc<GbpAlgebra>,
    i: usize,
    m: &VertexModule,
    n: &VertexModule,
    f: &Matrix,
) -> Result<RepMorphism> {
    if !m.is_homomorphism(n, f) {
        return Err(Error::NotAHomomorphism("not linear over the vertex algebra".into()));
    }
    cone_full(lambda, i, m)?.map_to(&cone_full(lambda, i, n)?, f)
}

/// `Λ` together with `Λ^{op} = k(Γ^{op},𝒜^{op},I^{op})` and the anti-isomorphism
/// `φ[a_0 β_1 … β_r a_r] = [a_r β_r … β_1 a_0]`.
#[derive(Clone, Debug)]
pub struct Opposite {
    pub original: Arc<GbpAlgebra>,
    pub opposite: Arc<GbpAlgebra>,
    /// row `b` = `φ(b)` in the basis of the opposite algebra
    pub phi: Matrix,
    pub phi_inv: Matrix,
    pub vertex_phi: Vec<Matrix>,
    pub vertex_phi_inv: Vec<Matrix>,
}

pub fn opposite_algebra(lambda: &Arc<GbpAlgebra>) -> Result<Opposite> {
    let (gamma_op, rels_op) = crate::quiver::opposite(lambda.gamma(), lambda.relations());
    let mut ops: Vec<Arc<VertexAlgebra>> = Vec::new();
    let mut vertex_phi = Vec::new();
    for (i, a) in lambda.algebras().iter().enumerate() {
        // share the rebuilt algebra when vertices share one
        if let Some(k) = (0..i).find(|&k| Arc::ptr_eq(&lambda.algebras()[k], a)) {
            ops.push(ops[k].clone());
            let phi: &Matrix = &vertex_phi[k];
            vertex_phi.push(phi.clone());
            continue;
        }
        let (op, phi) = a.opposite()?;
        ops.push(Arc::new(op));
        vertex_phi.push(phi);
    }
    let vertex_phi_inv: Vec<Matrix> = vertex_phi
        .iter()
        .map(|p| p.inverse().expect("path reversal is bijective on classes"))
        .collect();
    let opposite = Arc::new(GbpAlgebra::build(lambda.field(), gamma_op, ops, rels_op)?);
    let rows = lambda
        .basis()
        .iter()
        .map(|m| {
            let coeffs: Vec<Vec<Scalar>> = m
                .coeffs()
                .iter()
                .enumerate()
                .rev()
                .map(|(k, &c)| {
                    let v = if k == 0 {
                        m.start()
                    } else {
                        lambda.gamma().arrow(m.arrows()[k - 1]).target
                    };
                    vertex_phi[v].row(c).to_vec()
                })
                .collect();
            let path = if m.is_empty() {
                Path::trivial(m.start())
            } else {
                Path::from_arrows(opposite.gamma(), m.arrows().iter().rev().copied().collect())
                    .expect("reversed path composes in the opposite quiver")
            };
            opposite.class_of_general(&path, &coeffs)
        })
        .collect();
    let phi = Matrix::from_rows(lambda.field(), opposite.dim(), rows);
    let phi_inv = phi
        .inverse()
        .ok_or_else(|| Error::DimensionMismatch("reversal is not bijective on the quotient".into()))?;
    Ok(Opposite {
        original: lambda.clone(),
        opposite,
        phi,
        phi_inv,
        vertex_phi,
        vertex_phi_inv,
    })
}

impl Opposite {
    /// Which side `lambda` is on: `Some(true)` for the original algebra.
    fn side(&self, lambda: &Arc<GbpAlgebra>) -> Option<bool> {
        if Arc::ptr_eq(lambda, &self.original) {
            Some(true)
        } else if Arc::ptr_eq(lambda, &self.opposite) {
            Some(false)
        } else if **lambda == *self.original {
            Some(true)
        } else if **lambda == *self.opposite {
            Some(false)
        } else {
            None
        }
    }

    fn other(&self, forward: bool) -> (&Arc<GbpAlgebra>, &Matrix, &[Matrix]) {
        if forward {
            (&self.opposite, &self.phi_inv, &self.vertex_phi_inv)
        } else {
            (&self.original, &self.phi, &self.vertex_phi)
        }
    }

    /// `D(M)` for an `A_i`-module (either side); the action of `b'` is `X_{φ⁻¹(b')}ᵀ`.
    pub fn dual_vertex_module(&self, lambda: &Arc<GbpAlgebra>, i: usize, m: &VertexModule) -> Result<VertexModule> {
        let forward = self.side(lambda).ok_or(Error::AlgebraMismatch)?;
        check_vertex_module(lambda, i, m)?;
        let (target, _, vphi) = self.other(forward);
        Ok(m.dual(target.algebra(i).clone(), &vphi[i]))
    }

    /// `D(M)` as a module over the other algebra.
    pub fn dual_module(&self, m: &LambdaModule) -> Result<LambdaModule> {
        let forward = self.side(m.lambda()).ok_or(Error::AlgebraMismatch)?;
        let (target, back, _) = self.other(forward);
        Ok(m.dual(target.clone(), back))
    }

    /// `((D M_i)_i, (M_αᵀ)_α)`: each vertex dualized and each map transposed onto the
    /// reversed arrow.
    pub fn dual_representation(&self, r: &Representation) -> Result<Representation> {
        let forward = self.side(r.lambda()).ok_or(Error::AlgebraMismatch)?;
        let (target, _, vphi) = self.other(forward);
        let modules = r
            .modules()
            .iter()
            .enumerate()
            .map(|(i, m)| m.dual(target.algebra(i).clone(), &vphi[i]))
            .collect();
        let maps = r.maps().iter().map(Matrix::transpose).collect();
        Representation::new_unchecked(target.clone(), modules, maps)
    }

    /// `𝒞*_i(M) = D(𝒞_i(DM))` with the inner cone taken over the other side.
    pub fn dual_cone(&self, lambda: &Arc<GbpAlgebra>, i: usize, m: &VertexModule) -> Result<Representation> {
        let forward = self.side(lambda).ok_or(Error::AlgebraMismatch)?;
        let dm = self.dual_vertex_module(lambda, i, m)?;
        let (target, _, _) = self.other(forward);
        let c = cone(target, i, &dm)?;
        self.dual_representation(&c)
    }
}

pub fn dual_representation(op: &Opposite, r: &Representation) -> Result<Representation> {
    op.dual_representation(r)
}

pub fn dual_cone(lambda: &Arc<GbpAlgebra>, i: usize, m: &VertexModule) -> Result<Representation> {
    opposite_algebra(lambda)?.dual_cone(lambda, i, m)
}
