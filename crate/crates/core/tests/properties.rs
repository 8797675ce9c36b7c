mod common;

use gbpa::linalg::Echelon;
use gbpa::*;
use proptest::prelude::*;

use common::*;

fn flatten(f: &RepMorphism) -> Vec<Scalar> {
    f.components
        .iter()
        .flat_map(|m| (0..m.rows()).flat_map(move |r| m.row(r).to_vec()))
        .collect()
}

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rationals),
        Just(Field::Prime(2)),
        Just(Field::Prime(3)),
        Just(Field::Prime(7))
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn unit_and_idempotents(seed in 0u64..500, f in field()) {
        let l = random_algebra_over(f, seed, 40).lambda;
        let one = l.identity();
        let mut sum = vec![f.zero(); l.dim()];
        for (i, j) in l.vertex_pairs() {
            let e = l.unit_vector(l.idempotent(i, j));
            prop_assert_eq!(l.multiply(&e, &e), e.clone());
            for (i2, j2) in l.vertex_pairs() {
                if (i2, j2) != (i, j) {
                    let e2 = l.unit_vector(l.idempotent(i2, j2));
                    prop_assert!(l.multiply(&e, &e2).iter().all(Scalar::is_zero));
                }
            }
            sum = sum.iter().zip(&e).map(|(a, b)| f.add(a, b)).collect();
        }
        prop_assert_eq!(&sum, &one);
        for b in 0..l.dim() {
            let x = l.unit_vector(b);
            prop_assert_eq!(l.multiply(&one, &x), x.clone());
            prop_assert_eq!(l.multiply(&x, &one), x);
        }
    }

    #[test]
    fn associativity_and_grading(seed in 0u64..500, f in field()) {
        let l = random_algebra_over(f, seed, 30).lambda;
        prop_assert!(associative(&l));
        // relations are monomial in Γ, so the number of Γ-arrows is additive
        let basis = l.basis();
        for x in 0..l.dim() {
            for y in 0..l.dim() {
                for (z, _) in l.mult(x, y) {
                    prop_assert_eq!(basis[*z].len(), basis[x].len() + basis[y].len());
                }
            }
        }
    }

    #[test]
    fn basis_is_complete(seed in 0u64..500, f in field()) {
        let r = random_algebra_over(f, seed, 40);
        let l = &r.lambda;
        for (b, m) in l.basis().iter().enumerate() {
            prop_assert_eq!(l.class_of(m), l.unit_vector(b));
        }
        // every free monomial reduces into the span of the basis
        for m in l.free_basis() {
            prop_assert_eq!(l.class_of(m).len(), l.dim());
        }
        prop_assert_eq!(l.free_dim() - l.ideal_dim(), l.dim());
        if !r.has_relations {
            prop_assert_eq!(l.ideal_dim(), 0);
        }
        prop_assert_eq!(monomial_dimension_oracle(l), l.dim());
        let total: usize = l.vertex_pairs().iter().map(|&(i, j)| projective_rep(l, i, j).unwrap().total_dim()).sum();
        prop_assert_eq!(total, l.dim());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn hom_spaces_compose_and_count(seed in 0u64..500, f in field(), picks in prop::collection::vec(0usize..64, 3)) {
        let l = random_algebra_over(f, seed, 24).lambda;
        let pairs = l.vertex_pairs();
        let [a, b, c] = [0, 1, 2].map(|k| {
            let (i, j) = pairs[picks[k] % pairs.len()];
            projective_rep(&l, i, j).unwrap()
        });
        let ab = hom_space(&a, &b).unwrap();
        let bc = hom_space(&b, &c).unwrap();
        let ac = hom_space(&a, &c).unwrap();
        let mut span = Echelon::new(f, flatten(&RepMorphism::zero(&a, &c)).len());
        for h in &ac {
            h.check(&a, &c).unwrap();
            prop_assert!(span.insert(flatten(h)), "basis is linearly independent");
        }
        for g in &ab {
            for h in &bc {
                prop_assert!(span.contains(&flatten(&g.compose(h))));
            }
        }
        // Hom(P(i,j), M) ≅ e_{ij}·M
        let (i, j) = pairs[picks[0] % pairs.len()];
        let m = functor_f(&c);
        let e = m.action(l.idempotent(i, j));
        prop_assert_eq!(ac.len(), e.rank());
    }

    #[test]
    fn duality_is_an_involution(seed in 0u64..500, f in field(), pick in 0usize..64) {
        let l = random_algebra_over(f, seed, 30).lambda;
        let op = opposite_algebra(&l).unwrap();
        let pairs = l.vertex_pairs();
        let (i, j) = pairs[pick % pairs.len()];
        for r in [projective_rep(&l, i, j).unwrap(), simple_rep(&l, i, j).unwrap(), cone(&l, i, &gbpa::vertexalg::injective(l.algebra(i), j).unwrap()).unwrap()] {
            let d = op.dual_representation(&r).unwrap();
            prop_assert!(d.satisfies_relations());
            prop_assert_eq!(d.dimension_vector(), r.dimension_vector());
            prop_assert_eq!(op.dual_representation(&d).unwrap(), r);
        }
    }
}
