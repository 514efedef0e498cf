//! Observables and the relations between them.
//!
//! An observable is a multiset of effects summing to the unit. The atomic
//! observables are exactly the rows of the matrix representation, and by
//! refinement every question about arbitrary observables reduces to a
//! search over rows: an observable measures an effect when some
//! sub-multiset sums to it, two effects are compatible when one observable
//! measures both, and two observables are simultaneous when a common
//! observable refines both.
//!
//! Classicality is decided three ways at once — the vector of maximal
//! atom multiplicities is a row, the matrix has a single row, and some row
//! measures every effect — and the three verdicts are required to agree.

use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{DecompVector, EffectAlgebra, ElementId};

/// A multiset of effects. Zero effects may be present (product
/// observables are padded with them) but are ignored by equality.
#[derive(Clone, Eq, Debug)]
pub struct Observable {
    effects: Vec<ElementId>,
}

impl Observable {
    pub fn new(mut effects: Vec<ElementId>) -> Self {
        effects.sort();
        Observable { effects }
    }

    /// All effects, including zeros, in sorted order.
    pub fn effects(&self) -> &[ElementId] {
        &self.effects
    }

    /// Structural effect count, zeros included.
    pub fn len(&self) -> usize {
        self.effects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.effects.is_empty()
    }

    pub fn nonzero_effects(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.effects
            .iter()
            .copied()
            .filter(|e| *e != ElementId::ZERO)
    }
}

impl PartialEq for Observable {
    fn eq(&self, other: &Self) -> bool {
        self.nonzero_effects().eq(other.nonzero_effects())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ObservablesError {
    /// The three classicality criteria returned different verdicts.
    CriteriaDisagree {
        max_multiplicity_row: bool,
        single_row: bool,
        generating_observable: bool,
    },
}

impl fmt::Display for ObservablesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObservablesError::CriteriaDisagree {
                max_multiplicity_row,
                single_row,
                generating_observable,
            } => write!(
                f,
                "classicality criteria disagree: max-multiplicity row {max_multiplicity_row}, \
                 single row {single_row}, generating observable {generating_observable}"
            ),
        }
    }
}

impl core::error::Error for ObservablesError {}

/// Whether the multiset sums to the unit.
pub fn is_observable(algebra: &EffectAlgebra, effects: &Observable) -> bool {
    let mut acc = ElementId::ZERO;
    for &e in effects.effects() {
        match algebra.oplus(acc, e) {
            Some(next) => acc = next,
            None => return false,
        }
    }
    acc == algebra.one()
}

/// Whether some sub-multiset of `a` sums to `b`.
///
/// Depth-first search over the effect list with memoisation on
/// (position, accumulated element); partial sums that go undefined prune
/// the branch, which loses nothing because any defined fold stays defined
/// on sub-multisets.
pub fn measures(algebra: &EffectAlgebra, a: &Observable, b: ElementId) -> bool {
    let effects: Vec<ElementId> = a.nonzero_effects().collect();
    let n = algebra.size();
    let mut seen = alloc::vec![false; (effects.len() + 1) * n];

    fn go(
        algebra: &EffectAlgebra,
        effects: &[ElementId],
        target: ElementId,
        pos: usize,
        acc: ElementId,
        seen: &mut [bool],
    ) -> bool {
        if acc == target {
            return true;
        }
        if pos == effects.len() {
            return false;
        }
        let slot = pos * algebra.size() + acc.index();
        if seen[slot] {
            return false;
        }
        seen[slot] = true;
        if let Some(next) = algebra.oplus(acc, effects[pos]) {
            if go(algebra, effects, target, pos + 1, next, seen) {
                return true;
            }
        }
        go(algebra, effects, target, pos + 1, acc, seen)
    }

    go(algebra, &effects, b, 0, ElementId::ZERO, &mut seen)
}

/// The refinement relation on observables: `B ≤ A` when `A` measures
/// every effect of `B`. Reflexive, but neither antisymmetric nor
/// transitive — in the scale with `4a = 1`, `{a,a,2a} ≤ {a,a,a,a} ≤
/// {a,3a}` while `{a,a,2a} ≰ {a,3a}`.
pub fn obs_leq(algebra: &EffectAlgebra, b: &Observable, a: &Observable) -> bool {
    b.nonzero_effects().all(|e| measures(algebra, a, e))
}

/// Definitional compatibility: some `c ≤ a, b` has
/// `(a ⊖ c) ⊕ (b ⊖ c) ⊕ c` defined.
pub fn compatible(algebra: &EffectAlgebra, a: ElementId, b: ElementId) -> bool {
    for c in algebra.elements() {
        if !(algebra.leq(c, a) && algebra.leq(c, b)) {
            continue;
        }
        let ra = algebra.ominus(a, c).expect("c <= a");
        let rb = algebra.ominus(b, c).expect("c <= b");
        if algebra
            .oplus(ra, rb)
            .and_then(|s| algebra.oplus(s, c))
            .is_some()
        {
            return true;
        }
    }
    false
}

/// A row under which both `a` and `b` decompose, if one exists.
///
/// Rows are the atomic observables, so this witnesses joint measurability.
pub fn row_compatibility_witness(
    algebra: &EffectAlgebra,
    a: ElementId,
    b: ElementId,
) -> Option<DecompVector> {
    algebra
        .rows()
        .iter()
        .find(|r| row_measures(algebra, r, a) && row_measures(algebra, r, b))
        .cloned()
}

/// Compatibility via atomic observables; agrees with [`compatible`] on
/// every valid algebra.
pub fn compatible_via_rows(algebra: &EffectAlgebra, a: ElementId, b: ElementId) -> bool {
    row_compatibility_witness(algebra, a, b).is_some()
}

/// Whether the atomic observable `row` measures `x`: some decomposition of
/// `x` fits under `row` componentwise.
pub fn row_measures(algebra: &EffectAlgebra, row: &DecompVector, x: ElementId) -> bool {
    algebra
        .decompositions(x)
        .iter()
        .any(|d| d.dominated_by(row))
}

/// A row that measures every effect of both observables, if one exists.
pub fn simultaneity_witness(
    algebra: &EffectAlgebra,
    a: &Observable,
    b: &Observable,
) -> Option<DecompVector> {
    debug_assert!(is_observable(algebra, a) && is_observable(algebra, b));
    algebra
        .rows()
        .iter()
        .find(|r| {
            a.nonzero_effects().all(|e| row_measures(algebra, r, e))
                && b.nonzero_effects().all(|e| row_measures(algebra, r, e))
        })
        .cloned()
}

/// Whether a common observable refines both `a` and `b`. Decided over
/// atomic rows: concatenating atomic decompositions of a common
/// observable's effects yields a row that dominates a decomposition of
/// every effect either observable measures, so restricting the search to
/// rows loses nothing.
pub fn simultaneous(algebra: &EffectAlgebra, a: &Observable, b: &Observable) -> bool {
    simultaneity_witness(algebra, a, b).is_some()
}

/// A row that measures every element, if one exists.
///
/// Beware: this is weaker than classicality. An algebra can have a row
/// measuring every element while still having several rows — `[[1 2],[3
/// 0]]` is the smallest case, where the row `(1,2)` covers the merged
/// element `2a = 2b` through its `(0,2)` decomposition. Classification
/// goes through [`is_classical`], which pins the generating observable to
/// the maximal-multiplicity one.
pub fn generating_row(algebra: &EffectAlgebra) -> Option<DecompVector> {
    algebra
        .rows()
        .iter()
        .find(|r| algebra.elements().all(|x| row_measures(algebra, r, x)))
        .cloned()
}

/// The vector of maximal atom multiplicities `(n(a_1), …, n(a_m))`.
fn max_multiplicity_vector(algebra: &EffectAlgebra) -> DecompVector {
    DecompVector::new(
        algebra
            .atoms()
            .iter()
            .map(|&a| algebra.n_max(a).expect("atom list"))
            .collect(),
    )
}

/// Whether the algebra is classical.
///
/// Three criteria are computed: the vector of maximal atom multiplicities
/// `(n(a_1), …, n(a_m))` is a row; the matrix representation has exactly
/// one row; and the observable made of `n(a)` copies of every atom `a`
/// exists and measures every element. They must agree; a disagreement is
/// reported rather than resolved.
pub fn is_classical(algebra: &EffectAlgebra) -> Result<bool, ObservablesError> {
    let max_vec = max_multiplicity_vector(algebra);
    let max_multiplicity_row = algebra.rows().contains(&max_vec);
    let single_row = algebra.rows().len() == 1;
    let generating = algebra.fold(&max_vec) == Some(algebra.one())
        && algebra
            .elements()
            .all(|x| row_measures(algebra, &max_vec, x));

    if max_multiplicity_row == single_row && single_row == generating {
        Ok(single_row)
    } else {
        Err(ObservablesError::CriteriaDisagree {
            max_multiplicity_row,
            single_row,
            generating_observable: generating,
        })
    }
}

/// For a classical algebra, the observable with `n(a)` copies of every
/// atom `a`; it measures every effect. `None` when not classical.
pub fn generating_observable(
    algebra: &EffectAlgebra,
) -> Result<Option<Observable>, ObservablesError> {
    if !is_classical(algebra)? {
        return Ok(None);
    }
    let mut effects = Vec::new();
    for &a in algebra.atoms() {
        for _ in 0..algebra.n_max(a).expect("atom list") {
            effects.push(a);
        }
    }
    Ok(Some(Observable::new(effects)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{reconstruct, MatrixRep};

    fn alg(rows: &[&[u32]]) -> EffectAlgebra {
        reconstruct(&MatrixRep::from_entries(rows.iter().map(|r| r.to_vec()).collect()).unwrap())
            .unwrap()
    }

    fn by_names(algebra: &EffectAlgebra, names: &[&str]) -> Observable {
        Observable::new(
            names
                .iter()
                .map(|n| algebra.element_by_name(n).unwrap())
                .collect(),
        )
    }

    #[test]
    fn observable_checks() {
        let e = alg(&[&[1, 1]]);
        assert!(is_observable(&e, &by_names(&e, &["1"])));
        assert!(is_observable(&e, &by_names(&e, &["a", "b"])));
        assert!(!is_observable(&e, &by_names(&e, &["a", "a"])));
        assert!(!is_observable(&e, &by_names(&e, &["a"])));
    }

    #[test]
    fn measures_follows_submultiset_sums() {
        let e = alg(&[&[1, 2]]);
        let a = by_names(&e, &["a", "b", "b"]);
        let d = e.element_by_name("d").unwrap();
        assert!(measures(&e, &a, d));
        assert!(measures(&e, &a, e.zero()));
        assert!(measures(&e, &a, e.one()));

        let five = alg(&[&[1, 0, 1], &[0, 2, 0]]);
        let ac = by_names(&five, &["a", "c"]);
        let b = five.element_by_name("b").unwrap();
        assert!(!measures(&five, &ac, b));
    }

    #[test]
    fn refinement_is_not_antisymmetric() {
        // In the scale with 3a = 1: {a,a,a} and {a,2a} refine each other
        // without being equal.
        let e = alg(&[&[3]]);
        let aaa = by_names(&e, &["a", "a", "a"]);
        let ab = by_names(&e, &["a", "b"]);
        assert!(is_observable(&e, &aaa) && is_observable(&e, &ab));
        assert!(obs_leq(&e, &aaa, &ab));
        assert!(obs_leq(&e, &ab, &aaa));
        assert_ne!(aaa, ab);
        assert!(obs_leq(&e, &by_names(&e, &["1"]), &aaa));
    }

    #[test]
    fn zero_effects_do_not_change_an_observable() {
        let e = alg(&[&[1, 1]]);
        let plain = by_names(&e, &["a", "b"]);
        let padded = by_names(&e, &["a", "0", "b", "0"]);
        assert_eq!(plain, padded);
        assert_eq!(padded.len(), 4);
        assert!(is_observable(&e, &padded));
    }

    #[test]
    fn compatibility_of_trivial_effects() {
        let e = alg(&[&[1, 0, 1], &[0, 2, 0]]);
        for x in e.elements() {
            assert!(compatible(&e, e.zero(), x));
            assert!(compatible(&e, e.one(), x));
            assert!(compatible_via_rows(&e, e.zero(), x));
            assert!(compatible_via_rows(&e, e.one(), x));
        }
        let a = e.element_by_name("a").unwrap();
        let b = e.element_by_name("b").unwrap();
        assert!(!compatible(&e, a, b));
        assert!(!compatible_via_rows(&e, a, b));
    }

    #[test]
    fn orthogonal_effects_are_compatible() {
        let e = alg(&[&[1, 2], &[3, 0]]);
        let a = e.element_by_name("a").unwrap();
        let b = e.element_by_name("b").unwrap();
        assert!(e.orthogonal(a, b));
        assert!(compatible(&e, a, b));
        assert_eq!(
            row_compatibility_witness(&e, a, b),
            Some(DecompVector::new(alloc::vec![1, 2]))
        );
    }

    #[test]
    fn simultaneity_in_the_five_element_algebra() {
        let e = alg(&[&[1, 0, 1], &[0, 2, 0]]);
        let a = by_names(&e, &["a", "c"]);
        let b = by_names(&e, &["b", "b"]);
        assert!(simultaneous(&e, &a, &a));
        assert!(!simultaneous(&e, &a, &b));
    }

    #[test]
    fn classicality_verdicts() {
        assert!(is_classical(&alg(&[&[3, 3]])).unwrap());
        assert!(is_classical(&alg(&[&[35]])).unwrap());
        assert!(!is_classical(&alg(&[&[2, 0], &[0, 2]])).unwrap());
    }

    #[test]
    fn generating_observables() {
        let e = alg(&[&[1, 2]]);
        let a = e.element_by_name("a").unwrap();
        let b = e.element_by_name("b").unwrap();
        let g = generating_observable(&e).unwrap().unwrap();
        assert_eq!(g, Observable::new(alloc::vec![a, b, b]));
        for x in e.elements() {
            assert!(measures(&e, &g, x));
        }

        let three = alg(&[&[1, 1, 1]]);
        let g3 = generating_observable(&three).unwrap().unwrap();
        assert_eq!(g3.len(), 3);

        assert_eq!(
            generating_observable(&alg(&[&[2, 0], &[0, 2]])).unwrap(),
            None
        );
    }
}
