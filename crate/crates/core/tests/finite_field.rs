//! The same constructions over GF(p), where exhaustive search certifies isomorphisms.

mod common;

use std::sync::Arc;

use gbpa::linalg::Echelon;
use gbpa::vertexalg::{injective, projective};
use gbpa::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

const GF2: Field = Field::Prime(2);
const GF3: Field = Field::Prime(3);
const GF5: Field = Field::Prime(5);

fn expect_iso(a: &Representation, b: &Representation, what: &str) -> RepMorphism {
    match find_isomorphism(a, b).unwrap() {
        IsoSearch::Found(f) => {
            f.check(a, b).unwrap();
            assert!(f.is_isomorphism(), "{what}");
            f
        }
        other => panic!("{what}: {other:?}"),
    }
}

#[test]
fn line_example_is_characteristic_free() {
    for f in [GF2, GF3, GF5] {
        for n in 2..=4 {
            let l = Arc::new(line_example_over(f, n));
            let q = Arc::new(line_example(n));
            assert_eq!(l.dim(), 3 * n + 2);
            assert_eq!(monomial_dimension_oracle(&l), l.dim());
            assert_eq!(l.basis(), q.basis(), "{f}: same monomial basis as over Q");
            let (lo, qo) = (opposite_algebra(&l).unwrap(), opposite_algebra(&q).unwrap());
            for (i, j) in l.vertex_pairs() {
                let p = projective_rep(&l, i, j).unwrap();
                assert_eq!(
                    p.dimension_vector(),
                    projective_rep(&q, i, j).unwrap().dimension_vector()
                );
                assert_eq!(
                    injective_rep(&lo, i, j).unwrap().dimension_vector(),
                    injective_rep(&qo, i, j).unwrap().dimension_vector()
                );
                assert!(p.satisfies_relations());
            }
        }
    }
}

/// Commutative square 1 → {2, 3} → 4 with k[γ]/γ² at 2 and 3, bound by `a·c − c₀·b·d`.
fn square(f: Field, c0: i64) -> GbpAlgebra {
    let g = quiver(
        &["1", "2", "3", "4"],
        &[
            ("a", "1", "2"),
            ("b", "1", "3"),
            ("c", "2", "4"),
            ("d", "3", "4"),
        ],
    );
    let ac = g.path_from_names(&["a", "c"]).unwrap();
    let bd = g.path_from_names(&["b", "d"]).unwrap();
    let rel = RelationCombo::new(&g, vec![(f.one(), ac), (f.neg(&f.from_int(c0)), bd)]).unwrap();
    let (k, t) = (k_over(f), truncated_loop_over(f, 2));
    GbpAlgebra::build(f, g, vec![k.clone(), t.clone(), t, k], vec![rel]).unwrap()
}

#[test]
fn two_term_relation_over_gf5() {
    // Vertices 1 + 2 + 2 + 1, arrows 2·4, length-two monomials a·x·c and b·y·d (x, y ∈
    // {1, γ}); the relation spans {a x c − 2 b y d}, three-dimensional when 2 ≠ 0.
    let l = square(GF5, 2);
    assert!(l.has_multi_term_relations());
    assert_eq!(l.free_dim(), 6 + 8 + 4);
    assert_eq!(l.ideal_dim(), 3);
    assert_eq!(l.dim(), 15);
    assert!(associative(&l));
    let identity = l.identity();
    for b in 0..l.dim() {
        let e = l.unit_vector(b);
        assert_eq!(l.multiply(&identity, &e), e);
        assert_eq!(l.multiply(&e, &identity), e);
    }
    // coefficient 5 vanishes in GF(5): the relation would lose a term
    let g = l.gamma().clone();
    let ac = g.path_from_names(&["a", "c"]).unwrap();
    let bd = g.path_from_names(&["b", "d"]).unwrap();
    let zero = GF5.from_int(5);
    assert!(RelationCombo::new(&g, vec![(GF5.one(), ac), (zero, bd)]).is_err());
}

#[test]
fn square_projectives_and_injectives_are_certified() {
    let l = Arc::new(square(GF3, 1));
    let op = opposite_algebra(&l).unwrap();
    let (mut pd, mut id) = (0, 0);
    for (i, j) in l.vertex_pairs() {
        let p = projective_rep(&l, i, j).unwrap();
        expect_iso(&p, &projective_direct(&l, i, j).unwrap(), "P");
        let inj = injective_rep(&op, i, j).unwrap();
        expect_iso(&inj, &injective_direct(&l, i, j).unwrap(), "I");
        assert!(p.satisfies_relations() && inj.satisfies_relations());
        let top = top_of_projective_rep(&l, i, j);
        expect_iso(&top, &simple_rep(&l, i, j).unwrap(), "top");
        pd += p.total_dim();
        id += inj.total_dim();
    }
    assert_eq!((pd, id), (l.dim(), l.dim()));
    // P(1,1) meets vertex 4 in the single class a·c = b·d
    assert_eq!(
        projective_rep(&l, 0, 0).unwrap().dimension_vector(),
        vec![1, 2, 2, 1]
    );
}

fn top_of_projective_rep(l: &Arc<GbpAlgebra>, i: usize, j: usize) -> Representation {
    gbpa::structure::top_of_projective(l, i, j).unwrap()
}

#[test]
fn exhaustive_search_separates_non_isomorphic() {
    // S(2,1) and S(3,1) have different supports
    let l = Arc::new(square(GF2, 1));
    let s2 = simple_rep(&l, 1, 0).unwrap();
    let s3 = simple_rep(&l, 2, 0).unwrap();
    assert!(matches!(
        find_isomorphism(&s2, &s3).unwrap(),
        IsoSearch::NotIsomorphic
    ));
    // same dimension vector, different structure: k[γ]/γ² ⊕ 0 against the semisimple
    // k ⊕ k at vertex 2
    let t = l.algebra(1);
    let reg = inclusion(&l, 1, &VertexModule::regular(t.clone())).unwrap();
    let s = gbpa::vertexalg::simple(t, 0).unwrap();
    let ss = inclusion(&l, 1, &s.direct_sum(&s).unwrap()).unwrap();
    assert_eq!(reg.dimension_vector(), ss.dimension_vector());
    let opts = IsoSearchOptions {
        enumerate_limit: 1 << 16,
        ..IsoSearchOptions::default()
    };
    assert!(matches!(
        find_isomorphism_with(&reg, &ss, &opts).unwrap(),
        IsoSearch::NotIsomorphic
    ));
}

#[test]
fn random_algebras_over_gf3() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for seed in 0..10 {
        let r = random_algebra_over(GF3, seed, 40);
        let l = &r.lambda;
        assert!(associative(l), "seed {seed}");
        if !r.has_relations {
            assert_eq!(monomial_dimension_oracle(l), l.dim());
        }
        let op = opposite_algebra(l).unwrap();
        // φ(xy) = φ(y)φ(x) on basis pairs
        for x in 0..l.dim() {
            for y in 0..l.dim() {
                let xy = l.multiply(&l.unit_vector(x), &l.unit_vector(y));
                let lhs = op.phi.apply_row(&xy);
                let rhs = op.opposite.multiply(op.phi.row(y), op.phi.row(x));
                assert_eq!(lhs, rhs, "seed {seed}: φ({x}·{y})");
            }
        }
        for (i, j) in l.vertex_pairs() {
            let p = projective_rep(l, i, j).unwrap();
            expect_iso(
                &p,
                &projective_direct(l, i, j).unwrap(),
                &format!("seed {seed} P({i},{j})"),
            );
            let inj = injective_rep(&op, i, j).unwrap();
            expect_iso(
                &inj,
                &injective_direct(l, i, j).unwrap(),
                &format!("seed {seed} I({i},{j})"),
            );
            // G(F(r)) = r and F(G(m)) ≅ m through the frames
            let m = functor_f(&inj);
            assert_eq!(functor_g(&m).unwrap(), inj);
        }
        let reg = LambdaModule::regular(l.clone());
        let v = random_vector(&mut rng, GF3, l.dim());
        let (sub, _) = reg.submodule(&reg.cyclic_span(&v)).unwrap();
        let (g, frames) = functor_g_with_frames(&sub).unwrap();
        assert!(g.satisfies_relations());
        let t = frames
            .iter()
            .skip(1)
            .fold(frames[0].clone(), |acc, f| acc.vstack(f));
        assert!(t.inverse().is_some());
        assert!(functor_f(&g).is_homomorphism(&sub, &t));
    }
}

#[test]
fn cone_exactness_over_gf3() {
    let l = Arc::new(line_example_over(GF3, 3));
    let a = l.algebra(1);
    let m = projective(a, 0)
        .unwrap()
        .direct_sum(&injective(a, 0).unwrap())
        .unwrap();
    // the socle-generated submodule: image of γ²
    let mut span = Echelon::new(GF3, m.dim());
    let g2 = a.reduce_path(&a.sigma().path_from_names(&["g", "g"]).unwrap());
    for r in 0..m.dim() {
        span.insert(m.action_of(&g2).row(r).to_vec());
    }
    let (sub, incl) = m.submodule(&span.to_matrix()).unwrap();
    let (quo, q) = m.quotient(&incl).unwrap();
    let proj = q.reduce_matrix().transpose();
    let (cs, cm, cq) = (
        cone_full(&l, 1, &sub).unwrap(),
        cone_full(&l, 1, &m).unwrap(),
        cone_full(&l, 1, &quo).unwrap(),
    );
    let f = cs.map_to(&cm, &incl).unwrap();
    let g = cm.map_to(&cq, &proj).unwrap();
    assert!(f.is_monomorphism());
    assert!(f.compose(&g).is_zero());
    for (v, ((fr, gr), d)) in f
        .ranks()
        .iter()
        .zip(g.ranks())
        .zip(cm.rep.dimension_vector())
        .enumerate()
    {
        assert_eq!(gr, cq.rep.dimension_vector()[v], "epi at {v}");
        assert_eq!(fr + gr, d, "exact at {v}");
    }
    // cones of projectives of A at the middle vertex are Λ-projectives
    expect_iso(
        &cone(&l, 1, &projective(a, 0).unwrap()).unwrap(),
        &projective_rep(&l, 1, 0).unwrap(),
        "C(P) = P",
    );
}
