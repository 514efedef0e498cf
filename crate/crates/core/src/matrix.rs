//! Matrix representations of finite effect algebras.
//!
//! The rows of the matrix are exactly the atomic decompositions of the
//! unit; columns correspond to atoms. [`validate_matrix`] checks the three
//! conditions characterising which nonnegative integer matrices arise this
//! way, [`reconstruct`] rebuilds the explicit algebra from a valid matrix,
//! [`extract_matrix`] goes the other way, and [`canonical_form`] picks a
//! unique representative of each row/column-permutation class so that
//! [`isomorphic`] is a straight comparison.
//!
//! Reconstruction identifies two sub-row vectors exactly when their
//! residue sets agree: `{r - y : r row, r >= y}` is the decomposition set
//! of the complement of the element `y` denotes, so equal residue sets is
//! both necessary and sufficient for denoting the same element once
//! complements are unique. The sum is defined representative-wise and any
//! disagreement between representative choices is reported, never
//! accepted.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{AlgebraError, AxiomReport, DecompVector, EffectAlgebra, ElementId, SumTable};

/// An `n × m` grid of nonnegative integers with pairwise distinct, nonzero
/// rows of equal length.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MatrixRep {
    rows: Vec<DecompVector>,
}

impl MatrixRep {
    pub fn new(rows: Vec<DecompVector>) -> Result<Self, MatrixError> {
        let Some(first) = rows.first() else {
            return Err(MatrixError::Empty);
        };
        let cols = first.len();
        if cols == 0 {
            return Err(MatrixError::Empty);
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(MatrixError::RaggedRows { row: i });
            }
            if row.is_zero() {
                return Err(MatrixError::ZeroRow { row: i });
            }
        }
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                if rows[i] == rows[j] {
                    return Err(MatrixError::DuplicateRow {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        Ok(MatrixRep { rows })
    }

    pub fn from_entries(rows: Vec<Vec<u32>>) -> Result<Self, MatrixError> {
        MatrixRep::new(rows.into_iter().map(DecompVector::new).collect())
    }

    pub fn rows(&self) -> &[DecompVector] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.rows[0].len()
    }

    /// Rows as a sorted set, ignoring row order.
    pub fn row_set(&self) -> BTreeSet<DecompVector> {
        self.rows.iter().cloned().collect()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MatrixError {
    Empty,
    RaggedRows {
        row: usize,
    },
    ZeroRow {
        row: usize,
    },
    DuplicateRow {
        first: usize,
        second: usize,
    },
    /// The grid fails one of the three matrix-representation conditions.
    Invalid(ValidationReport),
    /// Two representative pairs of the same element pair disagree on their
    /// sum; the matrix does not describe an effect algebra.
    InconsistentSum {
        left: DecompVector,
        right: DecompVector,
        other_left: DecompVector,
        other_right: DecompVector,
    },
    /// The reconstructed table violates the algebra laws.
    Axioms(AxiomReport),
    /// The reconstructed algebra does not reproduce the input matrix.
    Reconstruction(&'static str),
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::Empty => write!(f, "matrix has no rows or no columns"),
            MatrixError::RaggedRows { row } => write!(f, "row {row} has a different length"),
            MatrixError::ZeroRow { row } => write!(f, "row {row} is all zero"),
            MatrixError::DuplicateRow { first, second } => {
                write!(f, "rows {first} and {second} are identical")
            }
            MatrixError::Invalid(report) => write!(f, "{report}"),
            MatrixError::InconsistentSum {
                left,
                right,
                other_left,
                other_right,
            } => write!(
                f,
                "sum of {:?} + {:?} disagrees with {:?} + {:?}",
                left.entries(),
                right.entries(),
                other_left.entries(),
                other_right.entries()
            ),
            MatrixError::Axioms(report) => {
                write!(f, "reconstructed table is not an effect algebra: {report}")
            }
            MatrixError::Reconstruction(msg) => write!(f, "reconstruction failed: {msg}"),
        }
    }
}

impl core::error::Error for MatrixError {}

impl From<AlgebraError> for MatrixError {
    fn from(err: AlgebraError) -> Self {
        match err {
            AlgebraError::AxiomsViolated(report) => MatrixError::Axioms(report),
            _ => MatrixError::Reconstruction("reconstructed table is malformed"),
        }
    }
}

/// A violation of condition (1): some row or column is all zero.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Cond1Violation {
    ZeroRow(usize),
    ZeroColumn(usize),
}

/// A violation of condition (2): `r_i − e_k ≤ r_j` with `r_i ≠ r_j`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Cond2Violation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

/// A violation of condition (3): `r_i + r_j ≥ r_k` but `r_i + r_j − r_k`
/// is not a row.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cond3Violation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub missing: DecompVector,
}

/// Result of checking the three matrix-representation conditions.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ValidationReport {
    pub cond1: Vec<Cond1Violation>,
    pub cond2: Vec<Cond2Violation>,
    pub cond3: Vec<Cond3Violation>,
}

impl ValidationReport {
    pub fn cond1_ok(&self) -> bool {
        self.cond1.is_empty()
    }

    pub fn cond2_ok(&self) -> bool {
        self.cond2.is_empty()
    }

    pub fn cond3_ok(&self) -> bool {
        self.cond3.is_empty()
    }

    pub fn is_valid(&self) -> bool {
        self.cond1_ok() && self.cond2_ok() && self.cond3_ok()
    }

    /// The lowest-numbered failed condition, if any.
    pub fn first_failure(&self) -> Option<usize> {
        if !self.cond1_ok() {
            Some(1)
        } else if !self.cond2_ok() {
            Some(2)
        } else if !self.cond3_ok() {
            Some(3)
        } else {
            None
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        match self.first_failure() {
            Some(1) => match self.cond1[0] {
                Cond1Violation::ZeroRow(i) => write!(f, "condition (1) fails: row {i} is zero"),
                Cond1Violation::ZeroColumn(k) => {
                    write!(f, "condition (1) fails: column {k} is zero")
                }
            },
            Some(2) => {
                let w = &self.cond2[0];
                write!(
                    f,
                    "condition (2) fails: row {} minus unit {} fits under row {}",
                    w.i, w.k, w.j
                )
            }
            _ => {
                let w = &self.cond3[0];
                write!(
                    f,
                    "condition (3) fails: rows {} + {} - {} = {:?} is not a row",
                    w.i,
                    w.j,
                    w.k,
                    w.missing.entries()
                )
            }
        }
    }
}

/// Check the three conditions for a grid to represent an effect algebra
/// with one atom per column.
///
/// Condition (2) is checked over all ordered row pairs including `i = j`,
/// where it holds vacuously. Condition (3) ranges over all ordered triples
/// with repetition.
pub fn validate_matrix(m: &MatrixRep) -> ValidationReport {
    let mut report = ValidationReport::default();
    let rows = m.rows();
    let cols = m.col_count();

    for (i, row) in rows.iter().enumerate() {
        if row.is_zero() {
            report.cond1.push(Cond1Violation::ZeroRow(i));
        }
    }
    for k in 0..cols {
        if rows.iter().all(|r| r.get(k) == 0) {
            report.cond1.push(Cond1Violation::ZeroColumn(k));
        }
    }

    for (i, ri) in rows.iter().enumerate() {
        for (j, rj) in rows.iter().enumerate() {
            if ri == rj {
                continue;
            }
            for k in 0..cols {
                if ri.get(k) >= 1 {
                    let reduced = ri
                        .checked_sub(&DecompVector::unit(cols, k))
                        .expect("entry >= 1");
                    if reduced.dominated_by(rj) {
                        report.cond2.push(Cond2Violation { i, j, k });
                    }
                }
            }
        }
    }

    for (i, ri) in rows.iter().enumerate() {
        for (j, rj) in rows.iter().enumerate() {
            let sum = ri.plus(rj);
            for (k, rk) in rows.iter().enumerate() {
                if let Some(diff) = sum.checked_sub(rk) {
                    if !rows.contains(&diff) {
                        report.cond3.push(Cond3Violation {
                            i,
                            j,
                            k,
                            missing: diff,
                        });
                    }
                }
            }
        }
    }

    report
}

/// All componentwise sub-vectors of the rows, i.e. every multiset of atoms
/// that fits under some decomposition of the unit.
fn sub_vectors(rows: &[DecompVector]) -> BTreeSet<DecompVector> {
    let mut out = BTreeSet::new();
    for row in rows {
        // odometer over 0..=row[k] per coordinate
        let cols = row.len();
        let mut current = alloc::vec![0u32; cols];
        loop {
            out.insert(DecompVector::new(current.clone()));
            let mut pos = 0;
            loop {
                if pos == cols {
                    break;
                }
                if current[pos] < row.get(pos) {
                    current[pos] += 1;
                    break;
                }
                current[pos] = 0;
                pos += 1;
            }
            if pos == cols {
                break;
            }
        }
    }
    out
}

/// The residue set of `y`: every `r − y` over rows `r ≥ y`. Two
/// sub-vectors denote the same element exactly when their residue sets
/// coincide.
fn residue_set(rows: &[DecompVector], y: &DecompVector) -> Vec<DecompVector> {
    let mut out: Vec<DecompVector> = rows.iter().filter_map(|r| r.checked_sub(y)).collect();
    out.sort();
    out
}

/// Rebuild the explicit algebra a valid matrix represents.
///
/// Elements are residue-set classes of sub-row vectors, the sum is lifted
/// through representatives (checked for consistency across all
/// representative pairs), and the result must pass the full axiom check
/// and reproduce the matrix it came from.
pub fn reconstruct(m: &MatrixRep) -> Result<EffectAlgebra, MatrixError> {
    let report = validate_matrix(m);
    if !report.is_valid() {
        return Err(MatrixError::Invalid(report));
    }
    let rows = m.rows();
    let cols = m.col_count();
    let subs = sub_vectors(rows);

    // Group sub-vectors into residue classes. Class ids are assigned with
    // the zero vector first and the unit vectors next, in column order, so
    // that the assembled table lists atoms in column order.
    let mut key_to_class: BTreeMap<Vec<DecompVector>, usize> = BTreeMap::new();
    let mut members: Vec<Vec<DecompVector>> = Vec::new();
    let mut class_of: BTreeMap<DecompVector, usize> = BTreeMap::new();

    let mut seed = Vec::with_capacity(cols + 1);
    seed.push(DecompVector::zero(cols));
    for k in 0..cols {
        seed.push(DecompVector::unit(cols, k));
    }
    for y in seed.iter().chain(subs.iter()) {
        if !subs.contains(y) || class_of.contains_key(y) {
            continue;
        }
        let key = residue_set(rows, y);
        let class = *key_to_class.entry(key).or_insert_with(|| {
            members.push(Vec::new());
            members.len() - 1
        });
        members[class].push(y.clone());
        class_of.insert(y.clone(), class);
    }

    let size = members.len();
    let one_class = class_of[&rows[0]];
    if one_class == 0 || size < 2 {
        return Err(MatrixError::Reconstruction(
            "zero and unit classes coincide",
        ));
    }

    // Lift the sum through representatives; every representative pair that
    // lands under a row must land in the same class.
    let mut entries: Vec<Option<ElementId>> = alloc::vec![None; size * size];
    for i in 0..size {
        for j in i..size {
            let mut value: Option<(usize, &DecompVector, &DecompVector)> = None;
            for y in &members[i] {
                for z in &members[j] {
                    let sum = y.plus(z);
                    if let Some(&class) = class_of.get(&sum) {
                        match value {
                            None => value = Some((class, y, z)),
                            Some((first, fy, fz)) if first != class => {
                                return Err(MatrixError::InconsistentSum {
                                    left: fy.clone(),
                                    right: fz.clone(),
                                    other_left: y.clone(),
                                    other_right: z.clone(),
                                });
                            }
                            _ => {}
                        }
                    }
                }
            }
            let cell = value.map(|(class, _, _)| ElementId::new(class));
            entries[i * size + j] = cell;
            entries[j * size + i] = cell;
        }
    }

    let table = SumTable::new(size, ElementId::new(one_class), entries)
        .map_err(|_| MatrixError::Reconstruction("class table is malformed"))?;
    let algebra = EffectAlgebra::from_table(table)?;

    if algebra.atom_count() != cols {
        return Err(MatrixError::Reconstruction(
            "atom count differs from column count",
        ));
    }
    for (k, &a) in algebra.atoms().iter().enumerate() {
        if *algebra.canonical_decomp(a) != DecompVector::unit(cols, k) {
            return Err(MatrixError::Reconstruction(
                "atoms do not line up with columns",
            ));
        }
    }
    let reconstructed: BTreeSet<DecompVector> = algebra.rows().iter().cloned().collect();
    if reconstructed != m.row_set() {
        return Err(MatrixError::Reconstruction(
            "rows of the rebuilt algebra differ",
        ));
    }
    Ok(algebra)
}

/// The matrix representation of an explicit algebra: every atomic
/// decomposition of the unit, one column per atom, rows in ascending
/// lexicographic order.
pub fn extract_matrix(algebra: &EffectAlgebra) -> MatrixRep {
    MatrixRep::new(algebra.rows().to_vec()).expect("unit decompositions form a matrix")
}

/// The canonical representative of a matrix under row and column
/// permutations: over all column permutations, rows are sorted ascending
/// and the lexicographically least flattened matrix wins. Idempotent, and
/// invariant under permutations of the input.
pub fn canonical_form(m: &MatrixRep) -> MatrixRep {
    let cols = m.col_count();
    let mut perm: Vec<usize> = (0..cols).collect();
    let mut best: Option<Vec<DecompVector>> = None;

    permute(&mut perm, 0, &mut |perm| {
        let mut rows: Vec<DecompVector> = m
            .rows()
            .iter()
            .map(|r| DecompVector::new(perm.iter().map(|&k| r.get(k)).collect()))
            .collect();
        rows.sort();
        match &best {
            Some(b) if rows >= *b => {}
            _ => best = Some(rows),
        }
    });

    MatrixRep::new(best.expect("at least one permutation")).expect("permuted rows stay distinct")
}

fn permute(perm: &mut Vec<usize>, at: usize, visit: &mut impl FnMut(&[usize])) {
    if at == perm.len() {
        visit(perm);
        return;
    }
    for i in at..perm.len() {
        perm.swap(at, i);
        permute(perm, at + 1, visit);
        perm.swap(at, i);
    }
}

/// Whether two valid matrices represent isomorphic algebras, i.e. agree up
/// to row and column permutation.
pub fn isomorphic(m1: &MatrixRep, m2: &MatrixRep) -> Result<bool, MatrixError> {
    for m in [m1, m2] {
        let report = validate_matrix(m);
        if !report.is_valid() {
            return Err(MatrixError::Invalid(report));
        }
    }
    Ok(canonical_form(m1) == canonical_form(m2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[u32]]) -> MatrixRep {
        MatrixRep::from_entries(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn single_unit_entry_is_valid() {
        assert!(validate_matrix(&mat(&[&[1]])).is_valid());
    }

    #[test]
    fn condition_two_catches_an_absorbed_row() {
        // (2,0) minus a unit fits under (1,1), so the two rows would have
        // to be equal.
        let report = validate_matrix(&mat(&[&[2, 0], &[1, 1]]));
        assert!(report.cond1_ok());
        assert!(!report.cond2_ok());
        assert_eq!(report.cond2[0], Cond2Violation { i: 0, j: 1, k: 0 });
    }

    #[test]
    fn condition_three_catches_a_missing_difference() {
        let report = validate_matrix(&mat(&[&[2, 2], &[4, 0]]));
        assert!(report.cond1_ok());
        assert!(report.cond2_ok());
        assert!(!report.cond3_ok());
        assert!(report
            .cond3
            .iter()
            .any(|w| w.missing == DecompVector::new(alloc::vec![0, 4])));
    }

    #[test]
    fn zero_column_violates_condition_one() {
        let report = validate_matrix(&mat(&[&[1, 0], &[2, 0]]));
        assert!(report.cond1.contains(&Cond1Violation::ZeroColumn(1)));
    }

    #[test]
    fn reconstruct_the_four_element_horizontal_algebra() {
        let algebra = reconstruct(&mat(&[&[1, 1]])).unwrap();
        assert_eq!(algebra.size(), 4);
        assert_eq!(algebra.names(), &["0", "a", "b", "1"]);
        let a = algebra.element_by_name("a").unwrap();
        let b = algebra.element_by_name("b").unwrap();
        assert_eq!(algebra.oplus(a, b), Some(algebra.one()));
        assert_eq!(algebra.oplus(a, a), None);
    }

    #[test]
    fn reconstruct_counts_six_elements_with_a_merged_double() {
        // 2a = 2b in this algebra, so the element set is {0, a, b, a+b, 2a, 1}.
        let algebra = reconstruct(&mat(&[&[1, 2], &[3, 0]])).unwrap();
        assert_eq!(algebra.size(), 6);
        let d = algebra.element_by_name("c").unwrap();
        // both (2,0) and (0,2) decompose the same element
        let decomps = algebra.decompositions(d);
        assert_eq!(
            decomps,
            &[
                DecompVector::new(alloc::vec![0, 2]),
                DecompVector::new(alloc::vec![2, 0])
            ]
        );
    }

    #[test]
    fn reconstruct_example_five_element_algebra() {
        let algebra = reconstruct(&mat(&[&[1, 0, 1], &[0, 2, 0]])).unwrap();
        assert_eq!(algebra.size(), 5);
        let a = algebra.element_by_name("a").unwrap();
        let b = algebra.element_by_name("b").unwrap();
        let c = algebra.element_by_name("c").unwrap();
        assert_eq!(algebra.oplus(a, c), Some(algebra.one()));
        assert_eq!(algebra.oplus(b, b), Some(algebra.one()));
        assert_eq!(algebra.oplus(a, b), None);
        assert_eq!(algebra.complement(b), b);
        assert_eq!(algebra.ominus(algebra.one(), a).unwrap(), c);
    }

    #[test]
    fn order_and_difference_in_the_skew_classical_algebra() {
        let algebra = reconstruct(&mat(&[&[1, 2]])).unwrap();
        let a = algebra.element_by_name("a").unwrap();
        let b = algebra.element_by_name("b").unwrap();
        let d = algebra.element_by_name("d").unwrap();
        assert!(algebra.leq(b, d));
        assert!(!algebra.leq(a, d));
        assert_eq!(algebra.ominus(d, b).unwrap(), b);
        assert_eq!(algebra.complement(a), d);
    }

    #[test]
    fn scale_algebra_round_trip() {
        let m = mat(&[&[3]]);
        let algebra = reconstruct(&m).unwrap();
        assert_eq!(algebra.size(), 4);
        assert_eq!(extract_matrix(&algebra), m);
        let a = algebra.element_by_name("a").unwrap();
        assert_eq!(algebra.n_max(a).unwrap(), 3);
    }

    #[test]
    fn n_max_on_reconstruction() {
        let algebra = reconstruct(&mat(&[&[1, 2]])).unwrap();
        let atoms = algebra.atoms().to_vec();
        assert_eq!(algebra.n_max(atoms[0]).unwrap(), 1);
        assert_eq!(algebra.n_max(atoms[1]).unwrap(), 2);
        let one = algebra.one();
        assert!(matches!(
            algebra.n_max(one),
            Err(AlgebraError::NotAnAtom(_))
        ));
    }

    #[test]
    fn decompositions_of_the_unit_are_the_rows() {
        let m = mat(&[&[1, 2], &[3, 0]]);
        let algebra = reconstruct(&m).unwrap();
        assert_eq!(algebra.rows(), m.rows());
        assert_eq!(
            algebra.decompositions(algebra.zero()),
            &[DecompVector::zero(2)]
        );
    }

    #[test]
    fn canonical_form_sorts_a_single_row() {
        assert_eq!(canonical_form(&mat(&[&[3, 1]])), mat(&[&[1, 3]]));
    }

    #[test]
    fn canonical_form_ignores_row_and_column_order() {
        let a = canonical_form(&mat(&[&[0, 2, 0], &[1, 0, 1]]));
        let b = canonical_form(&mat(&[&[1, 0, 1], &[0, 2, 0]]));
        assert_eq!(a, b);
        let c = canonical_form(&mat(&[&[1, 1, 0], &[0, 0, 2]]));
        assert_eq!(a, c);
    }

    #[test]
    fn isomorphism_examples() {
        assert!(!isomorphic(&mat(&[&[3]]), &mat(&[&[1, 1]])).unwrap());
        assert!(isomorphic(
            &mat(&[&[1, 1, 0], &[0, 0, 2]]),
            &mat(&[&[2, 0, 0], &[0, 1, 1]])
        )
        .unwrap());
        assert!(matches!(
            isomorphic(&mat(&[&[2, 0], &[1, 1]]), &mat(&[&[1]])),
            Err(MatrixError::Invalid(_))
        ));
    }

    #[test]
    fn duplicate_and_zero_rows_are_structural_errors() {
        assert!(matches!(
            MatrixRep::from_entries(alloc::vec![alloc::vec![1, 1], alloc::vec![1, 1]]),
            Err(MatrixError::DuplicateRow { .. })
        ));
        assert!(matches!(
            MatrixRep::from_entries(alloc::vec![alloc::vec![0, 0]]),
            Err(MatrixError::ZeroRow { .. })
        ));
        assert!(matches!(
            MatrixRep::from_entries(alloc::vec![alloc::vec![1], alloc::vec![1, 2]]),
            Err(MatrixError::RaggedRows { row: 1 })
        ));
    }
}
