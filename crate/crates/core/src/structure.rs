//! Simple, projective and injective representations of `Λ`, each computed two ways.

use std::sync::Arc;

use crate::error::Result;
use crate::functors::{cone, inclusion, Opposite};
use crate::gbp::GbpAlgebra;
use crate::linalg::{Echelon, Matrix, Scalar};
use crate::reps::{functor_f, functor_g, LambdaModule, Representation};
use crate::vertexalg::{self, radical};

/// The simple `S(i,j)`: the simple `A_i`-module at `j`, placed at vertex `i`.
pub fn simple_rep(lambda: &Arc<GbpAlgebra>, i: usize, j: usize) -> Result<Representation> {
    lambda.check_pair(i, j)?;
    inclusion(lambda, i, &vertexalg::simple(lambda.algebra(i), j)?)
}

/// `P(i,j) = 𝒞_i(P_i^j)`.
pub fn projective_rep(lambda: &Arc<GbpAlgebra>, i: usize, j: usize) -> Result<Representation> {
    lambda.check_pair(i, j)?;
    cone(lambda, i, &vertexalg::projective(lambda.algebra(i), j)?)
}

/// `ē_{ij}Λ` as a submodule of the regular module.
pub fn projective_direct(lambda: &Arc<GbpAlgebra>, i: usize, j: usize) -> Result<Representation> {
    lambda.check_pair(i, j)?;
    let e = lambda.idempotent(i, j);
    let reg = LambdaModule::regular(lambda.clone());
    let rows = (0..lambda.dim())
        .map(|x| lambda.multiply(&lambda.unit_vector(e), &lambda.unit_vector(x)))
        .collect();
    let span = Matrix::from_rows(lambda.field(), lambda.dim(), rows);
    let (sub, _) = reg.submodule(&span)?;
    functor_g(&sub)
}

/// `rad P(i,j)`: the vertex-`i` block replaced by `rad P_i^j`, everything else kept.
pub fn radical_of_projective(lambda: &Arc<GbpAlgebra>, i: usize, j: usize) -> Result<Representation> {
    let p = projective_rep(lambda, i, j)?;
    let spans = radical_spans(&p, i);
    Ok(p.subrepresentation(&spans)?.0)
}

fn radical_spans(p: &Representation, i: usize) -> Vec<Matrix> {
    p.modules()
        .iter()
        .enumerate()
        .map(|(l, m)| {
            if l == i {
                radical(m).1
            } else {
                Matrix::identity(p.field(), m.dim())
            }
        })
        .collect()
}

/// `P(i,j) / rad P(i,j)`.
pub fn top_of_projective(lambda: &Arc<GbpAlgebra>, i: usize, j: usize) -> Result<Representation> {
    let p = projective_rep(lambda, i, j)?;
    let spans = radical_spans(&p, i);
    p.quotient(&spans)
}

/// `M · rad Λ`, where `rad Λ` is spanned by the monomials with an arrow of Γ or a
/// radical coefficient.
pub fn radical_direct(r: &Representation) -> Result<Representation> {
    let l = r.lambda();
    let m = functor_f(r);
    let mut span = Echelon::new(l.field(), m.dim());
    for (b, mono) in l.basis().iter().enumerate() {
        let in_radical = !mono.is_empty() || !l.algebra(mono.start()).basis()[mono.coeffs()[0]].is_trivial();
        if !in_radical {
            continue;
        }
        for row in 0..m.dim() {
            span.insert(m.action(b).row(row).to_vec());
        }
    }
    let (sub, _) = m.submodule(&span.to_matrix())?;
    functor_g(&sub)
}

/// `I(i,j) = 𝒞*_i(I_i^j)`.
pub fn injective_rep(op: &Opposite, i: usize, j: usize) -> Result<Representation> {
    let lambda = &op.original;
    lambda.check_pair(i, j)?;
    op.dual_cone(lambda, i, &vertexalg::injective(lambda.algebra(i), j)?)
}

/// `D(Λ ē_{ij})`: the dual of the left ideal, with `f·λ = f(λ ·)`.
pub fn injective_direct(lambda: &Arc<GbpAlgebra>, i: usize, j: usize) -> Result<Representation> {
    lambda.check_pair(i, j)?;
    let f = lambda.field();
    let e = lambda.unit_vector(lambda.idempotent(i, j));
    let mut basis = Echelon::new(f, lambda.dim());
    for x in 0..lambda.dim() {
        basis.insert(lambda.multiply(&lambda.unit_vector(x), &e));
    }
    let n = basis.rank();
    let action = (0..lambda.dim())
        .map(|b| {
            let rows = (0..n)
                .map(|k| {
                    basis
                        .coords_in_span(&lambda.multiply(&lambda.unit_vector(b), basis.row(k)))
                        .expect("Λē is a left ideal")
                })
                .collect();
            Matrix::from_rows(f, n, rows).transpose()
        })
        .collect();
    functor_g(&LambdaModule::new_unchecked(lambda.clone(), n, action)?)
}

/// Number of paths of length ≥ 1 from `from` to `to`, each weighted by the dimensions
/// of the vertex algebras strictly inside it.
fn weighted_paths(lambda: &GbpAlgebra, from: usize, to: usize) -> usize {
    let g = lambda.gamma();
    let longest = g.longest_path_len().unwrap_or(0);
    g.enumerate_paths(from, to, longest)
        .iter()
        .filter(|p| !p.is_trivial())
        .map(|p| {
            p.arrows()[..p.len() - 1]
                .iter()
                .map(|&a| lambda.algebra(g.arrow(a).target).dim())
                .product::<usize>()
        })
        .sum()
}

/// Dimension vector of `𝒞_i(M)` when `I = 0`: `dim M` at `i` and
/// `n_l · dim A_l` at `l ≠ i`, with `n_l = dim M · Σ_{i ⇝ l} Π dim A_{inner}`.
pub fn cone_dimension_formula(lambda: &GbpAlgebra, i: usize, dim_m: usize) -> Vec<usize> {
    (0..lambda.gamma().vertex_count())
        .map(|l| {
            if l == i {
                dim_m
            } else {
                dim_m * weighted_paths(lambda, i, l) * lambda.algebra(l).dim()
            }
        })
        .collect()
}

/// Dimension vector of `𝒞*_i(M)` when `I = 0`, counting paths `l ⇝ i`.
pub fn dual_cone_dimension_formula(lambda: &GbpAlgebra, i: usize, dim_m: usize) -> Vec<usize> {
    (0..lambda.gamma().vertex_count())
        .map(|l| {
            if l == i {
                dim_m
            } else {
                dim_m * weighted_paths(lambda, l, i) * lambda.algebra(l).dim()
            }
        })
        .collect()
}

pub fn projective_dimension_formula(lambda: &GbpAlgebra, i: usize, j: usize) -> Vec<usize> {
    let a = lambda.algebra(i);
    let dim = (0..a.dim()).filter(|&b| a.basis()[b].start() == j).count();
    cone_dimension_formula(lambda, i, dim)
}

pub fn injective_dimension_formula(lambda: &GbpAlgebra, i: usize, j: usize) -> Vec<usize> {
    let a = lambda.algebra(i);
    let dim = (0..a.dim()).filter(|&b| a.basis()[b].end() == j).count();
    dual_cone_dimension_formula(lambda, i, dim)
}

/// How an arrow map is printed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArrowDisplay {
    /// The target splits into free `A_t`-chunks; cell `[c][s]` is `μ` (source basis
    /// vector `s` goes to the identity of chunk `c`) or `0`.
    Mu(Vec<Vec<bool>>),
    /// The source splits into dual free chunks; cell `[t][c]` is `D(μ)` (evaluation at
    /// the identity of chunk `c`, read at target coordinate `t`) or `0`.
    DualMu(Vec<Vec<bool>>),
    /// The column-convention matrix (target × source).
    Raw(Matrix),
}

/// Classifies `M_α` of `r` in the `μ` notation when possible.
pub fn arrow_display(r: &Representation, alpha: usize) -> ArrowDisplay {
    let arrow = r.lambda().gamma().arrow(alpha);
    let col = r.map(alpha).transpose();
    let (s, t) = (r.module(arrow.source), r.module(arrow.target));
    let mu = mu_cells(&col, t.actions(), &r.lambda().algebra(arrow.target).unit());
    let dual_actions: Vec<Matrix> = s.actions().iter().map(Matrix::transpose).collect();
    let dual = mu_cells(r.map(alpha), &dual_actions, &r.lambda().algebra(arrow.source).unit())
        .map(|c| transpose_cells(&c));
    // over k every 0/1 matrix reads as μ; keep whichever reading is more compact
    let size = |c: &Vec<Vec<bool>>| c.len() * c.first().map_or(0, Vec::len);
    match (mu, dual) {
        (Some(m), Some(d)) if size(&d) < size(&m) => ArrowDisplay::DualMu(d),
        (Some(m), _) => ArrowDisplay::Mu(m),
        (None, Some(d)) => ArrowDisplay::DualMu(d),
        (None, None) => ArrowDisplay::Raw(col),
    }
}

fn transpose_cells(c: &[Vec<bool>]) -> Vec<Vec<bool>> {
    if c.is_empty() {
        return Vec::new();
    }
    (0..c[0].len()).map(|j| c.iter().map(|row| row[j]).collect()).collect()
}

/// `m` is a (rows × cols) matrix whose rows index a module with the given actions.
/// Succeeds when the rows split into chunks of size `dim A` that are free on
/// `g_c = Σ_q u_q e_{c,q}` in the algebra's own basis, and every column restricted to
/// a chunk is `u` or zero.
fn mu_cells(m: &Matrix, actions: &[Matrix], unit: &[Scalar]) -> Option<Vec<Vec<bool>>> {
    let d = unit.len();
    if m.rows() == 0 || m.cols() == 0 || m.rows() % d != 0 {
        return None;
    }
    let chunks = m.rows() / d;
    for c in 0..chunks {
        let mut g = vec![Scalar::zero(); m.rows()];
        g[c * d..(c + 1) * d].clone_from_slice(unit);
        for (q, x) in actions.iter().enumerate() {
            let img = x.apply_row(&g);
            let ok = img
                .iter()
                .enumerate()
                .all(|(k, v)| if k == c * d + q { v.is_one() } else { v.is_zero() });
            if !ok {
                return None;
            }
        }
    }
    let mut cells = vec![vec![false; m.cols()]; chunks];
    for (c, row) in cells.iter_mut().enumerate() {
        for (s, cell) in row.iter_mut().enumerate() {
            let piece: Vec<&Scalar> = (0..d).map(|q| m.get(c * d + q, s)).collect();
            if piece.iter().all(|v| v.is_zero()) {
                *cell = false;
            } else if piece.iter().zip(unit).all(|(v, u)| *v == u) {
                *cell = true;
            } else {
                return None;
            }
        }
    }
    Some(cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::opposite_algebra;
    use crate::gbp::tests::{line_example, two_copies};
    use crate::reps::find_isomorphism;

    #[test]
    fn line_projectives() {
        let l = Arc::new(line_example(2));
        let p = projective_rep(&l, 0, 0).unwrap();
        assert_eq!(p.dimension_vector(), vec![1, 2, 0]);
        assert_eq!(arrow_display(&p, 0), ArrowDisplay::Mu(vec![vec![true]]));
        for (i, j) in l.vertex_pairs() {
            let a = projective_rep(&l, i, j).unwrap();
            let b = projective_direct(&l, i, j).unwrap();
            assert!(find_isomorphism(&a, &b).unwrap().found().is_some());
        }
    }

    #[test]
    fn two_copies_projectives_and_radicals() {
        let l = Arc::new(two_copies());
        let dims: Vec<Vec<usize>> = l
            .vertex_pairs()
            .into_iter()
            .map(|(i, j)| projective_rep(&l, i, j).unwrap().dimension_vector())
            .collect();
        assert_eq!(dims, vec![vec![2, 6], vec![1, 3], vec![0, 2], vec![0, 1]]);
        let p11 = projective_rep(&l, 0, 0).unwrap();
        assert_eq!(
            arrow_display(&p11, 0),
            ArrowDisplay::Mu(vec![vec![true, false], vec![false, true]])
        );
        let p12 = projective_rep(&l, 0, 1).unwrap();
        assert_eq!(arrow_display(&p12, 0), ArrowDisplay::Mu(vec![vec![true]]));

        let rad = radical_of_projective(&l, 0, 0).unwrap();
        assert_eq!(rad.dimension_vector(), vec![1, 6]);
        assert_eq!(arrow_display(&rad, 0), ArrowDisplay::Mu(vec![vec![false], vec![true]]));
        for (i, j) in l.vertex_pairs() {
            let rad = radical_of_projective(&l, i, j).unwrap();
            let direct = radical_direct(&projective_rep(&l, i, j).unwrap()).unwrap();
            assert!(find_isomorphism(&rad, &direct).unwrap().found().is_some());
            let top = top_of_projective(&l, i, j).unwrap();
            let s = simple_rep(&l, i, j).unwrap();
            assert!(find_isomorphism(&top, &s).unwrap().found().is_some());
        }
    }

    #[test]
    fn injectives_agree() {
        let l = Arc::new(line_example(2));
        let op = opposite_algebra(&l).unwrap();
        let mut total = 0;
        for (i, j) in l.vertex_pairs() {
            let a = injective_rep(&op, i, j).unwrap();
            let b = injective_direct(&l, i, j).unwrap();
            assert!(a.satisfies_relations());
            assert!(find_isomorphism(&a, &b).unwrap().found().is_some());
            total += a.total_dim();
        }
        assert_eq!(total, l.dim());
    }

    #[test]
    fn formulas_match_without_relations() {
        let l = Arc::new(two_copies());
        let op = opposite_algebra(&l).unwrap();
        for (i, j) in l.vertex_pairs() {
            assert_eq!(
                projective_rep(&l, i, j).unwrap().dimension_vector(),
                projective_dimension_formula(&l, i, j)
            );
            assert_eq!(
                injective_rep(&op, i, j).unwrap().dimension_vector(),
                injective_dimension_formula(&l, i, j)
            );
        }
    }

    #[test]
    fn raw_display_for_generic_maps() {
        let l = Arc::new(line_example(2));
        let f = l.field();
        let p = projective_rep(&l, 0, 0).unwrap();
        let twisted = Representation::new(
            l.clone(),
            p.modules().to_vec(),
            vec![Matrix::from_ints(f, &[&[2, 1]]), p.map(1).clone()],
        )
        .unwrap();
        assert_eq!(
            arrow_display(&twisted, 0),
            ArrowDisplay::Raw(Matrix::from_ints(f, &[&[2], &[1]]))
        );
    }
}
