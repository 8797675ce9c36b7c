#![allow(dead_code)]

use std::sync::Arc;

use gbpa::{
    build_vertex_algebra, Field, GbpAlgebra, Path, Quiver, RelationCombo, Scalar, VertexAlgebra,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const Q: Field = Field::Rationals;

pub fn quiver(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Quiver {
    let mut q = Quiver::new();
    for v in vertices {
        q.add_vertex(v).unwrap();
    }
    for (n, s, t) in arrows {
        q.add_arrow(n, s, t).unwrap();
    }
    q
}

pub fn monomials(q: &Quiver, paths: &[&[&str]]) -> Vec<RelationCombo> {
    paths
        .iter()
        .map(|p| RelationCombo::monomial(q, q.path_from_names(p).unwrap()).unwrap())
        .collect()
}

pub fn algebra(field: Field, q: Quiver, rels: &[&[&str]]) -> Arc<VertexAlgebra> {
    let omega = monomials(&q, rels);
    Arc::new(build_vertex_algebra(field, q, omega, 64).unwrap())
}

pub fn k() -> Arc<VertexAlgebra> {
    k_over(Q)
}

pub fn k_over(f: Field) -> Arc<VertexAlgebra> {
    Arc::new(VertexAlgebra::base_field(f, "o"))
}

/// `k[γ]/(γⁿ)`
pub fn truncated_loop(n: usize) -> Arc<VertexAlgebra> {
    truncated_loop_over(Q, n)
}

pub fn truncated_loop_over(f: Field, n: usize) -> Arc<VertexAlgebra> {
    let q = quiver(&["v"], &[("g", "v", "v")]);
    let rel = vec!["g"; n];
    algebra(f, q, &[rel.as_slice()])
}

/// `k(1→2)`
pub fn a2() -> Arc<VertexAlgebra> {
    a2_over(Q)
}

pub fn a2_over(f: Field) -> Arc<VertexAlgebra> {
    algebra(f, quiver(&["1", "2"], &[("x", "1", "2")]), &[])
}

/// `k(1←2)`
pub fn a2_rev() -> Arc<VertexAlgebra> {
    algebra(Q, quiver(&["1", "2"], &[("x", "2", "1")]), &[])
}

/// `k × k`
pub fn two_points() -> Arc<VertexAlgebra> {
    two_points_over(Q)
}

pub fn two_points_over(f: Field) -> Arc<VertexAlgebra> {
    algebra(f, quiver(&["1", "2"], &[]), &[])
}

/// `1 →α 2 →β 3` with `(k, k[γ]/γⁿ, k)`, bound by `αβ`.
pub fn line_example(n: usize) -> GbpAlgebra {
    line_example_over(Q, n)
}

pub fn line_example_over(f: Field, n: usize) -> GbpAlgebra {
    let g = quiver(&["1", "2", "3"], &[("alpha", "1", "2"), ("beta", "2", "3")]);
    let rels = monomials(&g, &[&["alpha", "beta"]]);
    let k = k_over(f);
    GbpAlgebra::build(f, g, vec![k.clone(), truncated_loop_over(f, n), k], rels).unwrap()
}

/// `A → A` with `A = k(1→2)`.
pub fn projective_example() -> GbpAlgebra {
    let a = a2();
    let g = quiver(&["1", "2"], &[("alpha", "1", "2")]);
    GbpAlgebra::build(Q, g, vec![a.clone(), a], vec![]).unwrap()
}

/// `A ← A` with `A = k(1←2)`.
pub fn injective_example() -> GbpAlgebra {
    let a = a2_rev();
    let g = quiver(&["1", "2"], &[("alpha", "2", "1")]);
    GbpAlgebra::build(Q, g, vec![a.clone(), a], vec![]).unwrap()
}

/// The six-vertex cone example: `B_left → x`, `x → B_top → A_topright`,
/// `x →α A_bottom →β B_bottomright`, bound by `αβ`.
pub fn cone_example(a: Arc<VertexAlgebra>, b: Arc<VertexAlgebra>, related: bool) -> GbpAlgebra {
    let g = quiver(
        &[
            "x",
            "B_top",
            "A_topright",
            "A_bottom",
            "B_bottomright",
            "B_left",
        ],
        &[
            ("lambda", "B_left", "x"),
            ("delta", "x", "B_top"),
            ("epsilon", "B_top", "A_topright"),
            ("alpha", "x", "A_bottom"),
            ("beta", "A_bottom", "B_bottomright"),
        ],
    );
    let rels = if related {
        monomials(&g, &[&["alpha", "beta"]])
    } else {
        vec![]
    };
    GbpAlgebra::build(Q, g, vec![k(), b.clone(), a.clone(), a, b.clone(), b], rels).unwrap()
}

/// Small vertex algebras used to populate random examples.
pub fn vertex_pool() -> Vec<Arc<VertexAlgebra>> {
    vertex_pool_over(Q)
}

pub fn vertex_pool_over(f: Field) -> Vec<Arc<VertexAlgebra>> {
    vec![
        k_over(f),
        truncated_loop_over(f, 2),
        truncated_loop_over(f, 3),
        a2_over(f),
        two_points_over(f),
    ]
}

pub struct RandomAlgebra {
    pub seed: u64,
    pub lambda: Arc<GbpAlgebra>,
    pub has_relations: bool,
}

/// A random acyclic Γ with 2–4 vertices, vertex algebras drawn from [`vertex_pool`],
/// and (for two seeds out of three) random monomial relations of length 2.
/// Candidates with `dim Λ > max_dim` are redrawn.
pub fn random_algebra(seed: u64, max_dim: usize) -> RandomAlgebra {
    random_algebra_over(Q, seed, max_dim)
}

pub fn random_algebra_over(field: Field, seed: u64, max_dim: usize) -> RandomAlgebra {
    let pool = vertex_pool_over(field);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n = rng.gen_range(2..=4);
        let names: Vec<String> = (0..n).map(|v| format!("v{v}")).collect();
        let mut g = Quiver::new();
        for v in &names {
            g.add_vertex(v).unwrap();
        }
        let arrow_count = rng.gen_range(1..=n + 1);
        for a in 0..arrow_count {
            let s = rng.gen_range(0..n - 1);
            let t = rng.gen_range(s + 1..n);
            g.add_arrow(&format!("b{a}"), &names[s], &names[t]).unwrap();
        }
        let algebras: Vec<Arc<VertexAlgebra>> = (0..n)
            .map(|_| pool.choose(&mut rng).unwrap().clone())
            .collect();
        let mut rels = Vec::new();
        if seed % 3 != 0 {
            let mut two: Vec<Path> = g
                .paths_up_to(2)
                .into_iter()
                .filter(|p| p.len() == 2)
                .collect();
            two.shuffle(&mut rng);
            let take = rng.gen_range(1..=2).min(two.len());
            for p in two.into_iter().take(take) {
                rels.push(RelationCombo::monomial(&g, p).unwrap());
            }
        }
        let has_relations = !rels.is_empty();
        let lambda = GbpAlgebra::build(field, g, algebras, rels).unwrap();
        if lambda.dim() <= max_dim {
            return RandomAlgebra {
                seed,
                lambda: Arc::new(lambda),
                has_relations,
            };
        }
    }
}

/// dim Λ for monomial relations, counted without any linear algebra: the free
/// monomials whose Γ-path contains no relation path as a contiguous piece.
pub fn monomial_dimension_oracle(lambda: &GbpAlgebra) -> usize {
    let g = lambda.gamma();
    let banned: Vec<Vec<usize>> = lambda
        .relations()
        .iter()
        .map(|r| {
            assert!(r.is_monomial());
            r.terms()[0].1.arrows().to_vec()
        })
        .collect();
    let longest = g.longest_path_len().unwrap();
    g.paths_up_to(longest)
        .iter()
        .filter(|p| {
            !banned
                .iter()
                .any(|b| p.arrows().windows(b.len()).any(|w| w == b.as_slice()))
        })
        .map(|p| {
            let mut count = lambda.algebra(p.start()).dim();
            for &a in p.arrows() {
                count *= lambda.algebra(g.arrow(a).target).dim();
            }
            count
        })
        .sum()
}

pub fn random_vector(rng: &mut ChaCha8Rng, field: Field, n: usize) -> Vec<Scalar> {
    (0..n)
        .map(|_| field.from_int(rng.gen_range(-2..=2)))
        .collect()
}

/// Checks `x(yz) = (xy)z` on all basis triples via the sparse table.
pub fn associative(lambda: &GbpAlgebra) -> bool {
    let d = lambda.dim();
    let f = lambda.field();
    let times_basis = |v: &[(usize, Scalar)], z: usize, left: bool| {
        let mut out = vec![Scalar::zero(); d];
        for (y, c) in v {
            let prods = if left {
                lambda.mult(z, *y)
            } else {
                lambda.mult(*y, z)
            };
            for (w, s) in prods {
                out[*w] = f.add(&out[*w], &f.mul(c, s));
            }
        }
        out
    };
    for x in 0..d {
        for y in 0..d {
            let xy = lambda.mult(x, y);
            for z in 0..d {
                let left = times_basis(xy, z, false);
                let right = times_basis(lambda.mult(y, z), x, true);
                if left != right {
                    return false;
                }
            }
        }
    }
    true
}
