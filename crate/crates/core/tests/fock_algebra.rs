//! Structural checks on the truncated Fock machinery: basis enumeration,
//! ladder operators, tensor products, and arm reduction.

mod common;

use common::{random_density, random_sector_density, seeded};
use proptest::prelude::*;
use rate_core::fock::{annihilation_op, creation_op, number_projector};
use rate_core::{
    partial_trace, tensor_product, C64, CMatrix, DensityMatrix, FockBasis, ModeSpace,
};

const TOL: f64 = 1e-12;

fn space(arms: usize, pols: usize, bins: usize) -> ModeSpace {
    let spatial = (0..arms).map(|i| format!("arm{i}")).collect();
    let pol = ["H", "V"][..pols].iter().map(|s| s.to_string()).collect();
    ModeSpace::new(spatial, pol, bins).unwrap()
}

/// Tracing one arm out of a product state must return the other factor
/// exactly, entry for entry.
#[test]
fn partial_trace_inverts_tensor_product() {
    let mut rng = seeded(0xf0c0_0001);
    for (pols, bins) in [(0usize, 2usize), (2, 1), (2, 2)] {
        let left_basis = FockBasis::enumerate(
            ModeSpace::new(vec!["a".into()], space(1, pols, bins).polarization_labels().to_vec(), bins).unwrap(),
            2,
        )
        .unwrap();
        let right_basis = FockBasis::enumerate(
            ModeSpace::new(vec!["b".into()], space(1, pols, bins).polarization_labels().to_vec(), bins).unwrap(),
            2,
        )
        .unwrap();
        for _ in 0..10 {
            let left = random_sector_density(&left_basis, 1, 2, &mut rng);
            let right = random_sector_density(&right_basis, 1, 2, &mut rng);
            let joint = tensor_product(&left, &right).unwrap();
            assert_eq!(joint.basis().space().spatial_labels(), ["a", "b"]);

            let back_left = partial_trace(&joint, &["a"]).unwrap();
            let back_right = partial_trace(&joint, &["b"]).unwrap();
            assert_eq!(back_left.dim(), left.dim());
            for i in 0..left.dim() {
                for j in 0..left.dim() {
                    let d = (back_left.matrix()[(i, j)] - left.matrix()[(i, j)]).norm();
                    assert!(d < TOL, "left factor drifted at ({i},{j}) by {d}");
                }
            }
            for i in 0..right.dim() {
                for j in 0..right.dim() {
                    let d = (back_right.matrix()[(i, j)] - right.matrix()[(i, j)]).norm();
                    assert!(d < TOL, "right factor drifted at ({i},{j}) by {d}");
                }
            }
        }
    }
}

/// Reduction must preserve trace and validity even for correlated states.
#[test]
fn partial_trace_preserves_trace_on_correlated_states() {
    let mut rng = seeded(0xf0c0_0002);
    let basis = FockBasis::enumerate(space(2, 0, 2), 2).unwrap();
    for _ in 0..20 {
        let rho = random_density(&basis, &mut rng);
        let reduced = partial_trace(&rho, &["arm0"]).unwrap();
        assert!((reduced.trace() - 1.0).abs() < 1e-9);
        let check = reduced.validate(1e-9);
        assert!(check.passes, "reduced state failed validation: {check:?}");
    }
}

/// Ladder operator identities on every mode of a mixed-label space:
/// number operator diagonal, commutator identity below the cap, and the
/// number projectors resolving the identity.
#[test]
fn ladder_algebra_holds_on_every_mode() {
    let basis = FockBasis::enumerate(space(2, 2, 2), 2).unwrap();
    let dim = basis.dim();
    let mut projector_sum = CMatrix::zeros(dim, dim);
    for n in 0..=2 {
        projector_sum += number_projector(&basis, n).unwrap();
    }
    for i in 0..dim {
        for j in 0..dim {
            let expected = if i == j { 1.0 } else { 0.0 };
            assert!((projector_sum[(i, j)] - C64::new(expected, 0.0)).norm() < TOL);
        }
    }

    for mode in 0..basis.space().mode_count() {
        let up = creation_op(&basis, mode).unwrap();
        let down = annihilation_op(&basis, mode).unwrap();
        assert_eq!((&up.adjoint() - &down).norm(), 0.0);

        let number = &up * &down;
        for i in 0..dim {
            let n = basis.occupation(i)[mode] as f64;
            assert!((number[(i, i)] - C64::new(n, 0.0)).norm() < TOL);
            for j in 0..dim {
                if i != j {
                    assert!(number[(i, j)].norm() < TOL);
                }
            }
        }

        // [a, a_dag] = 1 wherever adding a photon stays below the cap.
        let commutator = &down * &up - &up * &down;
        for i in 0..dim {
            if basis.total_photons(i) < 2 {
                assert!((commutator[(i, i)] - C64::new(1.0, 0.0)).norm() < TOL);
            }
        }
    }
}

/// Two enumerations of the same space must produce identical state lists;
/// downstream byte determinism rests on this ordering being reproducible.
#[test]
fn enumeration_is_reproducible_and_graded() {
    for (arms, pols, bins, n_max) in [(1, 0, 3, 2), (2, 2, 2, 2), (1, 2, 4, 3)] {
        let first = FockBasis::enumerate(space(arms, pols, bins), n_max).unwrap();
        let second = FockBasis::enumerate(space(arms, pols, bins), n_max).unwrap();
        assert_eq!(first.states(), second.states());
        assert_eq!(
            first.dim(),
            FockBasis::dimension_for(first.space(), n_max),
            "closed-form dimension disagrees with the enumeration"
        );
        let mut last_grade = 0;
        for i in 0..first.dim() {
            let g = first.total_photons(i);
            assert!(g >= last_grade, "grades must ascend");
            last_grade = g;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// The closed-form dimension matches a direct stars-and-bars sum for
    /// arbitrary small spaces.
    #[test]
    fn dimension_formula_matches_enumeration(arms in 1usize..3, pols in 0usize..3, bins in 1usize..4, n_max in 0usize..4) {
        let sp = space(arms, pols, bins);
        let predicted = FockBasis::dimension_for(&sp, n_max);
        let basis = FockBasis::enumerate(sp, n_max).unwrap();
        prop_assert_eq!(predicted, basis.dim());

        // Every state is unique and within the cap.
        let mut seen = std::collections::HashSet::new();
        for i in 0..basis.dim() {
            prop_assert!(basis.total_photons(i) as usize <= n_max);
            prop_assert!(seen.insert(basis.occupation(i).to_vec()));
            prop_assert_eq!(basis.position(basis.occupation(i)), Some(i));
        }
    }

    /// Mixtures stay valid densities under random weights.
    #[test]
    fn mixtures_stay_valid(seed in any::<u64>(), terms in 2usize..5) {
        let mut rng = seeded(seed);
        let basis = FockBasis::enumerate(space(1, 2, 2), 2).unwrap();
        let parts: Vec<(f64, DensityMatrix)> = (0..terms)
            .map(|_| (1.0 / terms as f64, random_density(&basis, &mut rng)))
            .collect();
        let mixed = DensityMatrix::mixture(&parts).unwrap();
        let check = mixed.validate(1e-9);
        prop_assert!(check.passes, "mixture failed validation: {:?}", check);
    }
}
