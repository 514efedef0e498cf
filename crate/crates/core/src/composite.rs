//! Cartesian-product composites of effect algebras.
//!
//! The composite of `E` and `F` lives on all pairs with the componentwise
//! partial sum; it models two combined systems. Its atoms are the embedded
//! atoms `(a, 0)` and `(0, b)`, so the composite matrix has one column per
//! atom of either factor and one row per pair of factor rows — each row is
//! a concatenation `row(E) ∥ row(F)`.
//!
//! The composite algebra is materialised eagerly and relabelled by the
//! usual canonical naming rule; the pair view of every element stays
//! available through [`Composite::pair_of`].

use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{EffectAlgebra, ElementId, SumTable};
use crate::matrix::{validate_matrix, MatrixError, MatrixRep};
use crate::observables::{is_observable, Observable};

/// A composite algebra together with the pair structure it was built from.
#[derive(Clone, Debug)]
pub struct Composite {
    algebra: EffectAlgebra,
    left_size: usize,
    to_pair: Vec<(ElementId, ElementId)>,
    from_pair: Vec<ElementId>,
}

impl Composite {
    pub fn algebra(&self) -> &EffectAlgebra {
        &self.algebra
    }

    /// The composite element holding `(a, b)`.
    pub fn pair_id(&self, a: ElementId, b: ElementId) -> ElementId {
        self.from_pair[b.index() * self.left_size + a.index()]
    }

    /// The pair a composite element stands for.
    pub fn pair_of(&self, x: ElementId) -> (ElementId, ElementId) {
        self.to_pair[x.index()]
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CompositeError {
    /// A mixed observable needs the left observable to be no longer than
    /// the right one.
    SizeMismatch { left: usize, right: usize },
}

impl fmt::Display for CompositeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompositeError::SizeMismatch { left, right } => {
                write!(f, "left observable has {left} effects, right only {right}")
            }
        }
    }
}

impl core::error::Error for CompositeError {}

/// The composite of two algebras: all pairs under the componentwise sum.
///
/// Pair `(a, b)` with `a` from `E` and `b` from `F` is defined against
/// `(c, d)` exactly when both components are, and then sums componentwise.
/// The raw pair table lists the atoms of `E` before the atoms of `F`, so
/// composite matrix columns are `E` columns followed by `F` columns.
pub fn compose(left: &EffectAlgebra, right: &EffectAlgebra) -> Composite {
    let (ln, rn) = (left.size(), right.size());
    let size = ln * rn;
    let pair_index = |a: ElementId, b: ElementId| b.index() * ln + a.index();
    let one = ElementId::new(pair_index(left.one(), right.one()));

    let table = SumTable::from_fn(size, one, |x, y| {
        let (ax, bx) = (
            ElementId::new(x.index() % ln),
            ElementId::new(x.index() / ln),
        );
        let (ay, by) = (
            ElementId::new(y.index() % ln),
            ElementId::new(y.index() / ln),
        );
        match (left.oplus(ax, ay), right.oplus(bx, by)) {
            (Some(a), Some(b)) => Some(ElementId::new(pair_index(a, b))),
            _ => None,
        }
    })
    .expect("pair table is square with distinct zero and unit");

    let (algebra, relabel) = EffectAlgebra::from_table_with_relabel(table)
        .expect("componentwise sums over effect algebras satisfy the laws");

    let mut to_pair = alloc::vec![(ElementId::ZERO, ElementId::ZERO); size];
    let mut from_pair = alloc::vec![ElementId::ZERO; size];
    for b in 0..rn {
        for a in 0..ln {
            let raw = b * ln + a;
            let id = relabel[raw];
            from_pair[raw] = id;
            to_pair[id.index()] = (ElementId::new(a), ElementId::new(b));
        }
    }

    Composite {
        algebra,
        left_size: ln,
        to_pair,
        from_pair,
    }
}

/// The composite matrix directly from the factor matrices: every
/// concatenation of a row of `left` with a row of `right`, in nested
/// order. Agrees with extracting the matrix of [`compose`] up to
/// canonical form.
pub fn compose_matrix(left: &MatrixRep, right: &MatrixRep) -> Result<MatrixRep, MatrixError> {
    for m in [left, right] {
        let report = validate_matrix(m);
        if !report.is_valid() {
            return Err(MatrixError::Invalid(report));
        }
    }
    let mut rows = Vec::with_capacity(left.row_count() * right.row_count());
    for lr in left.rows() {
        for rr in right.rows() {
            let mut entries = lr.entries().to_vec();
            entries.extend_from_slice(rr.entries());
            rows.push(entries);
        }
    }
    MatrixRep::from_entries(rows)
}

/// The product observable: every effect of `a` embedded on the left and
/// every effect of `b` embedded on the right, `|a| + |b|` effects in all.
pub fn product_observable(
    composite: &Composite,
    left: &EffectAlgebra,
    right: &EffectAlgebra,
    a: &Observable,
    b: &Observable,
) -> Observable {
    let mut effects = Vec::with_capacity(a.len() + b.len());
    for &e in a.effects() {
        effects.push(composite.pair_id(e, right.zero()));
    }
    for &e in b.effects() {
        effects.push(composite.pair_id(left.zero(), e));
    }
    let result = Observable::new(effects);
    debug_assert!(is_observable(composite.algebra(), &result));
    result
}

/// A mixed observable: effects of `a` paired with the first `|a|`
/// effects of `b`, the rest of `b` embedded on the right. Requires
/// `|a| ≤ |b|`; the telescoping sum makes the result an observable.
pub fn mixed_observable(
    composite: &Composite,
    left: &EffectAlgebra,
    a: &Observable,
    b: &Observable,
) -> Result<Observable, CompositeError> {
    if a.len() > b.len() {
        return Err(CompositeError::SizeMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let mut effects = Vec::with_capacity(b.len());
    for (i, &be) in b.effects().iter().enumerate() {
        let ae = a.effects().get(i).copied().unwrap_or(left.zero());
        effects.push(composite.pair_id(ae, be));
    }
    let result = Observable::new(effects);
    debug_assert!(is_observable(composite.algebra(), &result));
    Ok(result)
}
