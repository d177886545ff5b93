use proptest::prelude::*;

use ucr_core::channel::{apply_channel, build_channel, group_fixed_residual, Angles, GeneratorSet};
use ucr_core::combinatorics::{enumerate_partitions, semistandard_tableaux, standard_tableaux, Composition, Permutation};
use ucr_core::linalg::{rank, ComplexMatrix};
use ucr_core::spechtspace::{
    apply_permutation, isotypic_family, orthonormalize_isotypic, permutation_matrix, IntKetVector, KetIndex,
};
use ucr_core::{Limits, C64};

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

fn int_vector(d: usize, n: usize) -> impl Strategy<Value = IntKetVector> {
    prop::collection::vec((0..d.pow(n as u32), -3i64..=3), 1..6).prop_map(move |terms| {
        let mut v = IntKetVector::zero(d, n);
        for (index, c) in terms {
            v.add_term(KetIndex::from_linear(index, d, n), c);
        }
        v
    })
}

fn hermitian(d: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d * d).prop_map(move |entries| {
        let a = ComplexMatrix::from_fn(d, d, |i, j| {
            let (re, im) = entries[i * d + j];
            C64::new(re, im)
        });
        (&a + &a.adjoint()).scale_real(0.5)
    })
}

fn angle() -> impl Strategy<Value = f64> {
    prop_oneof![0.05f64..3.0, -3.0f64..-0.05]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn action_reverses_composition(
        (s, t, v) in (2usize..=5).prop_flat_map(|n| (permutation(n), permutation(n), int_vector(3, n)))
    ) {
        let lhs = apply_permutation(&t, &apply_permutation(&s, &v).unwrap()).unwrap();
        let rhs = apply_permutation(&s.compose(&t), &v).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn permutations_preserve_norm_and_weight(
        (s, v) in (1usize..=5).prop_flat_map(|n| (permutation(n), int_vector(2, n)))
    ) {
        let w = apply_permutation(&s, &v).unwrap();
        prop_assert_eq!(w.dot(&w), v.dot(&v));
        for (k, _) in w.terms() {
            let preimage_weight = k.weight(2);
            prop_assert!(v.terms().any(|(j, _)| j.weight(2) == preimage_weight));
        }
    }

    #[test]
    fn dense_and_sparse_actions_agree(
        (s, v) in (1usize..=4).prop_flat_map(|n| (permutation(n), int_vector(3, n)))
    ) {
        let dense = permutation_matrix(&s, 3).mul_vec(&v.to_dense());
        prop_assert_eq!(dense, apply_permutation(&s, &v).unwrap().to_dense());
    }

    #[test]
    fn polytabloid_span_is_invariant(
        (n, d, pick, s) in (2usize..=5, 2usize..=3).prop_flat_map(|(n, d)| (Just(n), Just(d), any::<prop::sample::Index>(), permutation(n)))
    ) {
        let limits = Limits::default();
        let shapes = enumerate_partitions(n, d).unwrap();
        let lambda = pick.get(&shapes);
        let family = isotypic_family(lambda, d, n, &limits).unwrap();
        for copy in &family.copies {
            let mut columns: Vec<Vec<C64>> = copy.basis.iter().map(|h| h.to_dense()).collect();
            let before = columns.len();
            for h in &copy.basis {
                columns.push(apply_permutation(&s, h).unwrap().to_dense());
            }
            let rows = columns[0].len();
            let m = ComplexMatrix::from_fn(rows, columns.len(), |i, j| columns[j][i]);
            prop_assert_eq!(rank(&m, 1e-12), before);
        }
    }

    #[test]
    fn orthonormal_blocks_are_equivariant(
        (n, d, pick, s) in (2usize..=4, 2usize..=3).prop_flat_map(|(n, d)| (Just(n), Just(d), any::<prop::sample::Index>(), permutation(n)))
    ) {
        let limits = Limits::default();
        let shapes = enumerate_partitions(n, d).unwrap();
        let lambda = pick.get(&shapes);
        let block = orthonormalize_isotypic(&isotypic_family(lambda, d, n, &limits).unwrap()).unwrap();
        prop_assert!(block.equivariance_residual(&s) <= 1e-9);
        let gram = block.basis.adjoint_mul(&block.basis);
        prop_assert!(gram.distance(&ComplexMatrix::identity(block.dim * block.mult)) <= 1e-10);
    }

    #[test]
    fn copies_lie_in_their_weight_space(n in 1usize..=5, d in 2usize..=3) {
        let limits = Limits::default();
        for lambda in enumerate_partitions(n, d).unwrap() {
            for copy in isotypic_family(&lambda, d, n, &limits).unwrap().copies {
                for h in &copy.basis {
                    prop_assert!(h.terms().all(|(k, _)| k.weight(d) == copy.composition));
                }
                prop_assert_eq!(copy.basis.len(), standard_tableaux(&lambda).len());
            }
        }
    }

    #[test]
    fn random_channels_are_unital_and_trace_preserving(
        gens in prop::collection::vec(hermitian(2), 1..4),
        angles in prop::collection::vec(angle(), 3),
        rho_seed in hermitian(8),
    ) {
        let limits = Limits::default();
        let k = gens.len();
        let set = GeneratorSet::new(gens, Angles::Explicit(angles[..k].to_vec())).unwrap();
        let ch = build_channel(&set, 3, &limits).unwrap();
        prop_assert!(ch.trace_preservation_residual() <= 1e-9);
        prop_assert!(ch.unitality_residual() <= 1e-9);
        let out = apply_channel(&ch, &rho_seed).unwrap();
        prop_assert!((out.trace() - rho_seed.trace()).norm() <= 1e-9);
        prop_assert!(out.hermitian_residual() <= 1e-9);
        prop_assert!(group_fixed_residual(&ch) <= 1e-9);
    }

    #[test]
    fn semistandard_counts_match_kostka_symmetry(content in prop::collection::vec(0usize..=2, 3)) {
        let n: usize = content.iter().sum();
        prop_assume!(n > 0);
        let sorted = Composition::new(content.clone()).unwrap().sorted();
        for lambda in enumerate_partitions(n, 3).unwrap() {
            prop_assert_eq!(
                semistandard_tableaux(&lambda, &content).len(),
                semistandard_tableaux(&lambda, sorted.parts()).len()
            );
        }
    }
}
