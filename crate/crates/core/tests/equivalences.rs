//! Equivalences between the definitional relations and their row-based
//! decision procedures, over every algebra with up to 8 elements.

use effalg_core::algebra::ElementId;
use effalg_core::enumeration::{classical_algebras, enumerate_algebras};
use effalg_core::matrix::reconstruct;
use effalg_core::observables::{
    compatible, compatible_via_rows, generating_row, is_classical, is_observable, measures,
    obs_leq, simultaneous, Observable,
};
use effalg_core::states::is_quantum;
use effalg_core::{EffectAlgebra, MatrixRep};

fn algebras_up_to(max: usize) -> Vec<EffectAlgebra> {
    let mut out = Vec::new();
    for n in 2..=max {
        for matrix in enumerate_algebras(n).unwrap() {
            out.push(reconstruct(&matrix).unwrap());
        }
    }
    out
}

/// Every multiset of nonzero effects that sums to the unit.
fn all_observables(algebra: &EffectAlgebra) -> Vec<Observable> {
    let mut out = Vec::new();
    let mut stack: Vec<ElementId> = Vec::new();
    fn go(
        algebra: &EffectAlgebra,
        from: usize,
        acc: ElementId,
        stack: &mut Vec<ElementId>,
        out: &mut Vec<Observable>,
    ) {
        if acc == algebra.one() {
            out.push(Observable::new(stack.clone()));
            return;
        }
        for next in from..algebra.size() {
            let x = ElementId::new(next);
            if x == algebra.zero() || x == algebra.one() {
                continue;
            }
            if let Some(sum) = algebra.oplus(acc, x) {
                stack.push(x);
                go(algebra, next, sum, stack, out);
                stack.pop();
            }
        }
    }
    go(algebra, 1, algebra.zero(), &mut stack, &mut out);
    // the unit alone is an observable as well
    out.push(Observable::new(vec![algebra.one()]));
    out
}

#[test]
fn compatible_agrees_with_the_row_criterion_everywhere() {
    let mut corpus = algebras_up_to(6);
    for n in 2..=16 {
        for matrix in classical_algebras(n) {
            corpus.push(reconstruct(&matrix).unwrap());
        }
    }
    for algebra in &corpus {
        for a in algebra.elements() {
            for b in algebra.elements() {
                assert_eq!(
                    compatible(algebra, a, b),
                    compatible_via_rows(algebra, a, b),
                    "compatibility criteria split on a {} element algebra",
                    algebra.size()
                );
            }
        }
    }
}

#[test]
fn orthogonal_and_ordered_effects_are_compatible() {
    for algebra in algebras_up_to(6) {
        for a in algebra.elements() {
            for b in algebra.elements() {
                if algebra.orthogonal(a, b) || algebra.leq(a, b) {
                    assert!(compatible(&algebra, a, b));
                }
            }
        }
    }
}

#[test]
fn classicality_criteria_agree_up_to_eight_elements() {
    let corpus = algebras_up_to(8);
    for algebra in &corpus {
        assert!(
            is_classical(algebra).is_ok(),
            "criteria disagree on a {} element algebra with rows {:?}",
            algebra.size(),
            algebra.rows()
        );
    }
    // regression pin: counts by element count, the last two beyond the
    // published range
    let mut by_size = [0usize; 9];
    for algebra in &corpus {
        by_size[algebra.size()] += 1;
    }
    assert_eq!(by_size[2..], [1, 1, 3, 4, 10, 14, 40]);
}

#[test]
fn simultaneous_observables_have_pairwise_compatible_effects() {
    for algebra in algebras_up_to(6) {
        let observables = all_observables(&algebra);
        for a in &observables {
            for b in &observables {
                if simultaneous(&algebra, a, b) {
                    for x in a.nonzero_effects() {
                        for y in b.nonzero_effects() {
                            assert!(compatible(&algebra, x, y));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn maximal_observable_generating_observable_and_simultaneity_coincide() {
    // three ways of saying "classical in the sense of a universal
    // observable": some observable refines every other, some observable
    // measures every element, and every pair of observables is
    // simultaneous
    for algebra in algebras_up_to(8) {
        let observables = all_observables(&algebra);
        let maximal = observables
            .iter()
            .any(|a| observables.iter().all(|b| obs_leq(&algebra, b, a)));
        let generating = observables
            .iter()
            .any(|a| algebra.elements().all(|x| measures(&algebra, a, x)));
        let all_simultaneous = observables.iter().enumerate().all(|(i, a)| {
            observables[i..]
                .iter()
                .all(|b| simultaneous(&algebra, a, b))
        });
        assert_eq!(maximal, generating, "on rows {:?}", algebra.rows());
        assert_eq!(generating, all_simultaneous, "on rows {:?}", algebra.rows());
        assert_eq!(generating, generating_row(&algebra).is_some());
    }
}

#[test]
fn a_generating_row_does_not_imply_classicality() {
    // The universal-observable property is strictly weaker than having a
    // single row: here the row (1,2) measures every element because the
    // doubled atom sums coincide, 2a = 2b, yet the matrix has two rows.
    // Classification therefore keys on the maximal-multiplicity
    // observable rather than on an arbitrary generating one.
    let algebra =
        reconstruct(&MatrixRep::from_entries(vec![vec![1, 2], vec![3, 0]]).unwrap()).unwrap();
    assert_eq!(
        generating_row(&algebra),
        Some(effalg_core::DecompVector::new(vec![1, 2]))
    );
    assert_eq!(is_classical(&algebra), Ok(false));
    assert!(!is_quantum(&algebra));
}

#[test]
fn the_generating_observable_refines_every_observable() {
    use effalg_core::observables::generating_observable;
    for algebra in algebras_up_to(6) {
        let Some(g) = generating_observable(&algebra).unwrap() else {
            continue;
        };
        for b in all_observables(&algebra) {
            assert!(obs_leq(&algebra, &b, &g));
        }
        for x in algebra.elements() {
            assert!(measures(&algebra, &g, x));
        }
    }
}

#[test]
fn atomic_observables_are_exactly_the_rows() {
    for algebra in algebras_up_to(6) {
        let atomic: std::collections::BTreeSet<Vec<u32>> = all_observables(&algebra)
            .into_iter()
            .filter(|o| o.nonzero_effects().all(|e| algebra.is_atom(e)))
            .map(|o| {
                let mut vector = vec![0u32; algebra.atom_count()];
                for e in o.nonzero_effects() {
                    let pos = algebra.atoms().iter().position(|&a| a == e).unwrap();
                    vector[pos] += 1;
                }
                vector
            })
            .collect();
        let rows: std::collections::BTreeSet<Vec<u32>> = algebra
            .rows()
            .iter()
            .map(|r| r.entries().to_vec())
            .collect();
        assert_eq!(atomic, rows);
    }
}

#[test]
fn classical_implies_quantum_on_the_corpus() {
    let mut corpus = algebras_up_to(6);
    for n in 2..=16 {
        for matrix in classical_algebras(n) {
            corpus.push(reconstruct(&matrix).unwrap());
        }
    }
    for algebra in corpus {
        if is_classical(&algebra).unwrap() {
            assert!(is_quantum(&algebra));
        }
    }
}

#[test]
fn refinement_is_reflexive_but_not_transitive() {
    for algebra in algebras_up_to(5) {
        for a in all_observables(&algebra) {
            assert!(is_observable(&algebra, &a));
            assert!(obs_leq(&algebra, &a, &a));
        }
    }

    // Chains of refinements do not compose: in the scale with 4a = 1,
    // {a,a,2a} refines into {a,a,a,a} and that refines into {a,3a}, but
    // 2a is not a sub-multiset sum of {a,3a}.
    let scale = reconstruct(&MatrixRep::from_entries(vec![vec![4]]).unwrap()).unwrap();
    let a = scale.element_by_name("a").unwrap();
    let b = scale.element_by_name("b").unwrap();
    let c = scale.element_by_name("c").unwrap();
    let low = Observable::new(vec![a, a, b]);
    let mid = Observable::new(vec![a, a, a, a]);
    let high = Observable::new(vec![a, c]);
    assert!(obs_leq(&scale, &low, &mid));
    assert!(obs_leq(&scale, &mid, &high));
    assert!(!obs_leq(&scale, &low, &high));
}
