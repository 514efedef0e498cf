//! Canonical-form properties under random permutations.

use proptest::prelude::*;

use effalg_core::matrix::{canonical_form, isomorphic, validate_matrix, MatrixRep};
use effalg_core::DecompVector;

/// Random grids, many of which are valid matrices after filtering.
fn small_grid() -> impl Strategy<Value = Vec<Vec<u32>>> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(rows, cols)| {
        proptest::collection::vec(proptest::collection::vec(0u32..=3, cols), rows)
    })
}

fn permutation(len: usize, seed: u64) -> Vec<usize> {
    // tiny deterministic shuffle, enough to exercise invariance
    let mut order: Vec<usize> = (0..len).collect();
    let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
    for i in (1..len).rev() {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let j = (state >> 33) as usize % (i + 1);
        order.swap(i, j);
    }
    order
}

proptest! {
    #[test]
    fn canonical_form_is_permutation_invariant(grid in small_grid(), seed in any::<u64>()) {
        let Ok(matrix) = MatrixRep::from_entries(grid) else { return Ok(()); };
        let row_order = permutation(matrix.row_count(), seed);
        let col_order = permutation(matrix.col_count(), seed ^ 0xabcdef);
        let permuted: Vec<DecompVector> = row_order
            .iter()
            .map(|&r| {
                DecompVector::new(
                    col_order.iter().map(|&c| matrix.rows()[r].get(c)).collect(),
                )
            })
            .collect();
        let permuted = MatrixRep::new(permuted).expect("permutation keeps rows distinct");
        prop_assert_eq!(canonical_form(&matrix), canonical_form(&permuted));
        if validate_matrix(&matrix).is_valid() {
            prop_assert!(isomorphic(&matrix, &permuted).unwrap());
        }
    }

    #[test]
    fn canonical_form_is_idempotent(grid in small_grid()) {
        let Ok(matrix) = MatrixRep::from_entries(grid) else { return Ok(()); };
        let canon = canonical_form(&matrix);
        prop_assert_eq!(canonical_form(&canon), canon.clone());
        prop_assert_eq!(canon.row_count(), matrix.row_count());
        prop_assert_eq!(canon.col_count(), matrix.col_count());
    }

    #[test]
    fn validity_is_a_permutation_invariant(grid in small_grid(), seed in any::<u64>()) {
        let Ok(matrix) = MatrixRep::from_entries(grid) else { return Ok(()); };
        let col_order = permutation(matrix.col_count(), seed);
        let permuted: Vec<DecompVector> = matrix
            .rows()
            .iter()
            .map(|row| DecompVector::new(col_order.iter().map(|&c| row.get(c)).collect()))
            .collect();
        let permuted = MatrixRep::new(permuted).expect("column permutation keeps rows distinct");
        prop_assert_eq!(
            validate_matrix(&matrix).is_valid(),
            validate_matrix(&permuted).is_valid()
        );
    }
}
