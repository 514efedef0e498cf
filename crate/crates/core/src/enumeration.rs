//! Classification and exhaustive enumeration at small sizes.
//!
//! Classical algebras with `n` elements correspond one-to-one with the
//! unordered factorizations of `n` into factors `≥ 2`: the factorization
//! `n = x_1 · x_2 ⋯ x_m` gives the single-row matrix `[x_1−1 ⋯ x_m−1]`.
//!
//! General enumeration searches over candidate row sets: for each atom
//! count, all rows of bounded weight are generated, sets of rows are grown
//! in index order subject to the pairwise domination condition, closed
//! sets covering every column are reconstructed, and the survivors with
//! the right element count are deduplicated by canonical form. A row of
//! an `n`-element algebra has weight at most `n − 1`, since the partial
//! sums along a row form a strictly increasing chain.
//!
//! Real models build an algebra from a set of rationals strictly between
//! 0 and 1: the sum of two values is defined when it again lies in the
//! carrier (weak mode) or whenever it does not exceed 1 (strong mode,
//! which requires the carrier to be closed under such sums).

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::{AlgebraError, AxiomReport, DecompVector, EffectAlgebra, ElementId, SumTable};
use crate::matrix::{canonical_form, extract_matrix, reconstruct, MatrixError, MatrixRep};
use crate::observables::{is_classical, ObservablesError};
use crate::states::{is_quantum, Classification, Rational};

/// A multiset of integer factors `≥ 2`, stored nondecreasing.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Factorization {
    factors: Vec<u32>,
}

impl Factorization {
    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn product(&self) -> u64 {
        self.factors.iter().map(|&f| u64::from(f)).product()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for factor in &self.factors {
            if !first {
                write!(f, "*")?;
            }
            write!(f, "{factor}")?;
            first = false;
        }
        Ok(())
    }
}

/// All multisets of integers `≥ 2` with product `n`, including `{n}`
/// itself. Ordered by factor count, then lexicographically.
pub fn unordered_factorizations(n: u32) -> Vec<Factorization> {
    assert!(n >= 2, "factorizations are defined for n >= 2");
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn descend(n: u32, min: u32, current: &mut Vec<u32>, out: &mut Vec<Factorization>) {
        for d in min..=n {
            if d * d > n {
                break;
            }
            if n % d == 0 {
                current.push(d);
                descend(n / d, d, current, out);
                current.pop();
            }
        }
        current.push(n);
        out.push(Factorization {
            factors: current.clone(),
        });
        current.pop();
    }
    descend(n, 2, &mut current, &mut out);
    out.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.factors.cmp(&b.factors))
    });
    out
}

/// The factorization a classical single-row matrix encodes: a row entry
/// `x` stands for the factor `x + 1`. `None` for multi-row matrices.
pub fn row_factorization(m: &MatrixRep) -> Option<Factorization> {
    if m.row_count() != 1 {
        return None;
    }
    let mut factors: Vec<u32> = m.rows()[0].entries().iter().map(|&x| x + 1).collect();
    factors.sort_unstable();
    Some(Factorization { factors })
}

/// The classical algebras with `n` elements, one single-row matrix
/// `[x_1−1 ⋯ x_m−1]` per unordered factorization `n = x_1 ⋯ x_m`.
pub fn classical_algebras(n: u32) -> Vec<MatrixRep> {
    unordered_factorizations(n)
        .into_iter()
        .map(|f| {
            MatrixRep::from_entries(alloc::vec![f.factors().iter().map(|&x| x - 1).collect()])
                .expect("factors are at least two")
        })
        .collect()
}

/// Largest element count [`enumerate_algebras`] accepts.
pub const MAX_ENUMERATION_ELEMENTS: usize = 8;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EnumerationError {
    /// `n` lies outside `2..=MAX_ENUMERATION_ELEMENTS`.
    BoundExceeded { n: usize, max: usize },
    /// A candidate row set failed to reconstruct; this falsifies the row
    /// conditions and is reported, never skipped.
    Matrix(MatrixError),
    /// Classification could not be decided.
    Observables(ObservablesError),
}

impl fmt::Display for EnumerationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumerationError::BoundExceeded { n, max } => {
                write!(f, "element count {n} outside supported range 2..={max}")
            }
            EnumerationError::Matrix(e) => write!(f, "{e}"),
            EnumerationError::Observables(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for EnumerationError {}

impl From<MatrixError> for EnumerationError {
    fn from(e: MatrixError) -> Self {
        EnumerationError::Matrix(e)
    }
}

impl From<ObservablesError> for EnumerationError {
    fn from(e: ObservablesError) -> Self {
        EnumerationError::Observables(e)
    }
}

/// All effect algebras with exactly `n` elements, up to isomorphism, as
/// canonical matrices sorted by atom count, row count and entries.
pub fn enumerate_algebras(n: usize) -> Result<Vec<MatrixRep>, EnumerationError> {
    if !(2..=MAX_ENUMERATION_ELEMENTS).contains(&n) {
        return Err(EnumerationError::BoundExceeded {
            n,
            max: MAX_ENUMERATION_ELEMENTS,
        });
    }
    let mut found: BTreeSet<MatrixRep> = BTreeSet::new();
    let max_atoms = if n == 2 { 1 } else { n - 2 };
    for m in 1..=max_atoms {
        search_atom_count(n, m, &mut found)?;
    }
    let mut result: Vec<MatrixRep> = found.into_iter().collect();
    result.sort_by(|a, b| {
        (a.col_count(), a.row_count())
            .cmp(&(b.col_count(), b.row_count()))
            .then_with(|| a.rows().cmp(b.rows()))
    });
    Ok(result)
}

/// Candidate rows for an `n`-element algebra with `m` atoms, in
/// lexicographic order.
///
/// A row `r` forces `|r| − 1` pairwise distinct chain elements strictly
/// between 0 and 1, of which at most one is an atom: an atom's only
/// decomposition is its unit vector, so the weight-two-and-up chain
/// interiors are distinct from every atom. With 0, 1 and all `m` atoms
/// that gives `n ≥ m + |r|` whenever `m ≥ 2` and `|r| ≥ 2`; a single-atom
/// algebra is a chain, so there `|r| ≤ n − 1`.
fn candidate_rows(n: usize, m: usize) -> Vec<DecompVector> {
    let budget = if m == 1 {
        (n - 1) as u32
    } else {
        (n.saturating_sub(m)).max(1) as u32
    };
    let mut out = Vec::new();
    let mut current = alloc::vec![0u32; m];
    fn fill(pos: usize, left: u32, current: &mut Vec<u32>, out: &mut Vec<DecompVector>) {
        if pos == current.len() {
            if current.iter().any(|&e| e > 0) {
                out.push(DecompVector::new(current.clone()));
            }
            return;
        }
        for v in 0..=left {
            current[pos] = v;
            fill(pos + 1, left - v, current, out);
        }
        current[pos] = 0;
    }
    fill(0, budget, &mut current, &mut out);
    out.sort();
    out
}

/// Whether two distinct rows may coexist: neither may dominate the other
/// reduced by one unit anywhere.
fn rows_compatible(r: &DecompVector, s: &DecompVector) -> bool {
    fn one_sided(r: &DecompVector, s: &DecompVector) -> bool {
        // is there a k with r[k] >= 1 and r - e_k <= s?
        let mut excess = None;
        for k in 0..r.len() {
            if r.get(k) > s.get(k) {
                if excess.is_some() {
                    return false;
                }
                excess = Some(k);
            }
        }
        match excess {
            // r <= s componentwise; any k with r[k] >= 1 works
            None => true,
            Some(k) => r.get(k) - s.get(k) == 1,
        }
    }
    !one_sided(r, s) && !one_sided(s, r)
}

struct SearchContext<'a> {
    n: usize,
    cols: usize,
    candidates: &'a [DecompVector],
    compat: &'a [Vec<bool>],
    /// OR of column supports over candidates `i..`.
    suffix_support: &'a [u64],
    found: &'a mut BTreeSet<MatrixRep>,
}

fn search_atom_count(
    n: usize,
    m: usize,
    found: &mut BTreeSet<MatrixRep>,
) -> Result<(), EnumerationError> {
    let candidates = candidate_rows(n, m);
    let count = candidates.len();
    let compat: Vec<Vec<bool>> = (0..count)
        .map(|i| {
            (0..count)
                .map(|j| i != j && rows_compatible(&candidates[i], &candidates[j]))
                .collect()
        })
        .collect();
    let support = |r: &DecompVector| {
        (0..m)
            .filter(|&k| r.get(k) > 0)
            .fold(0u64, |acc, k| acc | 1 << k)
    };
    let mut suffix_support = alloc::vec![0u64; count + 1];
    for i in (0..count).rev() {
        suffix_support[i] = suffix_support[i + 1] | support(&candidates[i]);
    }
    let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };

    let mut ctx = SearchContext {
        n,
        cols: m,
        candidates: &candidates,
        compat: &compat,
        suffix_support: &suffix_support,
        found,
    };
    let mut chosen: Vec<usize> = Vec::new();
    extend(&mut ctx, &mut chosen, 0, 0, full)
}

fn extend(
    ctx: &mut SearchContext<'_>,
    chosen: &mut Vec<usize>,
    start: usize,
    covered: u64,
    full: u64,
) -> Result<(), EnumerationError> {
    if !chosen.is_empty() {
        match closure_state(ctx, chosen) {
            ClosureState::Dead => return Ok(()),
            ClosureState::Closed => {
                if covered == full {
                    accept(ctx, chosen)?;
                }
            }
            ClosureState::Open => {}
        }
    }
    for j in start..ctx.candidates.len() {
        // the missing columns must still be coverable
        if covered | ctx.suffix_support[j] != full {
            break;
        }
        if chosen.iter().any(|&i| !ctx.compat[i][j]) {
            continue;
        }
        chosen.push(j);
        let support = (0..ctx.cols)
            .filter(|&k| ctx.candidates[j].get(k) > 0)
            .fold(0u64, |acc, k| acc | 1 << k);
        extend(ctx, chosen, j + 1, covered | support, full)?;
        chosen.pop();
    }
    Ok(())
}

enum ClosureState {
    /// Every forced difference vector is present.
    Closed,
    /// Some difference is missing but may still be added later.
    Open,
    /// Some difference can never be added; no extension closes the set.
    Dead,
}

/// Check the difference-closure condition on the chosen rows: whenever
/// `r_i + r_j ≥ r_k`, the vector `r_i + r_j − r_k` must itself be a row.
fn closure_state(ctx: &SearchContext<'_>, chosen: &[usize]) -> ClosureState {
    let rows: Vec<&DecompVector> = chosen.iter().map(|&i| &ctx.candidates[i]).collect();
    let last = *chosen.last().expect("nonempty");
    let mut open = false;
    for (ai, a) in rows.iter().enumerate() {
        for b in &rows[ai..] {
            let sum = a.plus(b);
            for c in &rows {
                let Some(diff) = sum.checked_sub(c) else {
                    continue;
                };
                if rows.iter().any(|r| **r == diff) {
                    continue;
                }
                // the difference must become a row eventually
                match ctx.candidates.binary_search(&diff) {
                    Ok(idx) if idx > last && chosen.iter().all(|&i| ctx.compat[i][idx]) => {
                        open = true;
                    }
                    _ => return ClosureState::Dead,
                }
            }
        }
    }
    if open {
        ClosureState::Open
    } else {
        ClosureState::Closed
    }
}

fn accept(ctx: &mut SearchContext<'_>, chosen: &[usize]) -> Result<(), EnumerationError> {
    let rows: Vec<DecompVector> = chosen.iter().map(|&i| ctx.candidates[i].clone()).collect();
    let matrix = MatrixRep::new(rows).expect("candidate rows are distinct and nonzero");
    let algebra = reconstruct(&matrix)?;
    if algebra.size() == ctx.n {
        ctx.found.insert(canonical_form(&matrix));
    }
    Ok(())
}

/// Classify a valid matrix as classical, quantum-but-not-classical, or
/// non-quantum.
pub fn classify(m: &MatrixRep) -> Result<Classification, EnumerationError> {
    let algebra = reconstruct(m)?;
    if is_classical(&algebra)? {
        Ok(Classification::Classical)
    } else if is_quantum(&algebra) {
        Ok(Classification::QuantumNotClassical)
    } else {
        Ok(Classification::NonQuantum)
    }
}

/// Which sums a real model admits.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RealModelMode {
    /// `λ ⊕ μ` defined exactly when `λ + μ` lies in the carrier.
    Weak,
    /// `λ ⊕ μ` defined exactly when `λ + μ ≤ 1`; the carrier must be
    /// closed under such sums.
    Strong,
}

/// An algebra realised by rational values in `[0, 1]`.
#[derive(Clone, Debug)]
pub struct RealModel {
    pub algebra: EffectAlgebra,
    pub matrix: MatrixRep,
    /// Value of every element, indexed by canonical element id.
    pub element_values: Vec<Rational>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RealModelError {
    /// A value lies outside the open interval (0, 1).
    OutOfRange(Rational),
    /// The same value was given twice.
    DuplicateValue(Rational),
    /// `1 − λ` is missing for some value `λ`; complements would not exist.
    NotComplementClosed(Rational),
    /// Strong mode: a sum `λ + μ ≤ 1` falls outside the carrier.
    NotSumClosed(Rational, Rational),
    /// The induced table violates the algebra laws.
    Axioms(AxiomReport),
}

impl fmt::Display for RealModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealModelError::OutOfRange(v) => {
                write!(f, "value {v} is not strictly between 0 and 1")
            }
            RealModelError::DuplicateValue(v) => write!(f, "value {v} appears twice"),
            RealModelError::NotComplementClosed(v) => {
                write!(f, "complement of {v} is missing from the value set")
            }
            RealModelError::NotSumClosed(a, b) => {
                write!(f, "admissible sum {a} + {b} is missing from the carrier")
            }
            RealModelError::Axioms(report) => write!(f, "value set breaks the laws: {report}"),
        }
    }
}

impl core::error::Error for RealModelError {}

/// Build the real model over the given interior values.
///
/// The carrier is the values plus 0 and 1, ordered ascending; sums follow
/// the mode's rule. The table is checked against all laws — a value set
/// can break associativity under the weak rule, and that is surfaced, not
/// patched.
pub fn real_model(values: &[Rational], mode: RealModelMode) -> Result<RealModel, RealModelError> {
    let mut sorted: Vec<Rational> = Vec::with_capacity(values.len());
    for v in values {
        if !v.is_positive() || *v >= Rational::one() {
            return Err(RealModelError::OutOfRange(v.clone()));
        }
        if sorted.contains(v) {
            return Err(RealModelError::DuplicateValue(v.clone()));
        }
        sorted.push(v.clone());
    }
    sorted.sort();

    for v in &sorted {
        let complement = Rational::one() - v;
        if !sorted.contains(&complement) {
            return Err(RealModelError::NotComplementClosed(v.clone()));
        }
    }

    let mut carrier = Vec::with_capacity(sorted.len() + 2);
    carrier.push(Rational::zero());
    carrier.extend(sorted);
    carrier.push(Rational::one());

    if mode == RealModelMode::Strong {
        for (i, a) in carrier.iter().enumerate() {
            for b in &carrier[i..] {
                let sum = a + b;
                if sum <= Rational::one() && carrier.binary_search(&sum).is_err() {
                    return Err(RealModelError::NotSumClosed(a.clone(), b.clone()));
                }
            }
        }
    }

    let size = carrier.len();
    let one = ElementId::new(size - 1);
    let table = SumTable::from_fn(size, one, |x, y| {
        let sum = &carrier[x.index()] + &carrier[y.index()];
        match carrier.binary_search(&sum) {
            Ok(idx) => Some(ElementId::new(idx)),
            Err(_) => None,
        }
    })
    .expect("carrier has at least two elements");

    let (algebra, relabel) =
        EffectAlgebra::from_table_with_relabel(table).map_err(|e| match e {
            AlgebraError::AxiomsViolated(report) => RealModelError::Axioms(report),
            other => unreachable!("real-model table is structurally sound: {other}"),
        })?;
    let mut element_values = alloc::vec![Rational::zero(); size];
    for (old, value) in carrier.into_iter().enumerate() {
        element_values[relabel[old].index()] = value;
    }
    let matrix = extract_matrix(&algebra);
    Ok(RealModel {
        algebra,
        matrix,
        element_values,
    })
}
