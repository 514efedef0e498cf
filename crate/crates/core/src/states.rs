//! States in exact rational arithmetic.
//!
//! A state assigns a probability to every effect, additively over defined
//! sums. On a finite algebra a state is determined by its values on the
//! atoms, and those values range over the polytope `{s ≥ 0 : r · s = 1
//! for every row r}` — the row constraints are exactly additivity plus
//! normalisation. Vertices of that polytope are enumerated exactly by
//! solving every maximal-rank column subsystem; no floating point appears
//! anywhere in this module.
//!
//! A set of states is order-determining when the pointwise order on state
//! values implies the algebra order. Having an order-determining set is
//! the quantum criterion, and it suffices to test the polytope vertices:
//! the universal quantifier over a convex set reduces to its extreme
//! points for linear inequalities.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{DecompVector, EffectAlgebra, ElementId};
use crate::matrix::{extract_matrix, MatrixRep};

/// Exact rational scalar used for all state values.
pub type Rational = num_rational::BigRational;

fn rat(n: u32) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact fraction `n / d` with `d > 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A state restricted to the atoms: coordinate `i` is the value on atom
/// `i`. Values are exact rationals in `[0, 1]` whose dot product with
/// every atomic row is 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct StateVector {
    values: Vec<Rational>,
}

impl StateVector {
    pub fn new(values: Vec<Rational>) -> Self {
        StateVector { values }
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.values[i]
    }

    /// Dot product with an integer multiplicity vector.
    pub fn weigh(&self, decomp: &DecompVector) -> Rational {
        debug_assert_eq!(self.values.len(), decomp.len());
        let mut acc = Rational::zero();
        for (v, &m) in self.values.iter().zip(decomp.entries()) {
            if m != 0 {
                acc += v * rat(m);
            }
        }
        acc
    }

    /// Whether the vector lies in the state polytope of `m`: nonnegative
    /// with unit dot product against every row.
    pub fn is_state_for(&self, m: &MatrixRep) -> bool {
        self.values.len() == m.col_count()
            && self.values.iter().all(|v| !v.is_negative())
            && m.rows().iter().all(|r| self.weigh(r).is_one())
    }
}

/// Where an algebra sits in the classical / quantum hierarchy. The three
/// cases are mutually exclusive; classical algebras always pass the
/// quantum test as well.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Classification {
    Classical,
    QuantumNotClassical,
    NonQuantum,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Classical => write!(f, "classical"),
            Classification::QuantumNotClassical => write!(f, "quantum_not_classical"),
            Classification::NonQuantum => write!(f, "non_quantum"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum StatesError {
    /// Two decompositions of the same element evaluate differently; the
    /// vector is not a state.
    InconsistentState { element: ElementId },
    /// A single-row (classical) matrix was required.
    NotClassical,
    /// The vector violates a row constraint or nonnegativity.
    NotAState,
    /// The algebra has no order-determining set of states.
    NotQuantum,
    /// Value vector length does not match the atom count.
    WrongLength { expected: usize, got: usize },
}

impl fmt::Display for StatesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatesError::InconsistentState { element } => {
                write!(
                    f,
                    "decompositions of element {} evaluate differently",
                    element.index()
                )
            }
            StatesError::NotClassical => write!(f, "matrix is not classical (single-row)"),
            StatesError::NotAState => write!(f, "vector is not a state"),
            StatesError::NotQuantum => write!(f, "algebra is not quantum"),
            StatesError::WrongLength { expected, got } => {
                write!(f, "expected {expected} values, got {got}")
            }
        }
    }
}

impl core::error::Error for StatesError {}

/// All vertices of the state polytope `{s ≥ 0 : r · s = 1 ∀ rows r}`,
/// exact and sorted lexicographically.
///
/// Every column subset is solved as an equality system; a unique,
/// nonnegative solution supported on independent columns is a vertex, and
/// every vertex arises from its own support set. An empty result means
/// the algebra admits no states at all.
pub fn state_vertices(m: &MatrixRep) -> Vec<StateVector> {
    let cols = m.col_count();
    assert!(
        cols <= 24,
        "vertex enumeration is meant for desk-scale matrices"
    );
    let mut vertices: Vec<StateVector> = Vec::new();
    for mask in 1u32..(1 << cols) {
        let support: Vec<usize> = (0..cols).filter(|k| mask >> k & 1 == 1).collect();
        if let Some(solution) = solve_support(m, &support) {
            if solution.iter().all(|v| !v.is_negative()) {
                let mut full = alloc::vec![Rational::zero(); cols];
                for (slot, value) in support.iter().zip(solution) {
                    full[*slot] = value;
                }
                let candidate = StateVector::new(full);
                if !vertices.contains(&candidate) {
                    vertices.push(candidate);
                }
            }
        }
    }
    vertices.sort();
    vertices
}

/// Solve `r · x = 1` for every row `r`, with `x` supported on the given
/// columns. Returns the solution only when it is unique, i.e. the chosen
/// columns are linearly independent and the system is consistent.
fn solve_support(m: &MatrixRep, support: &[usize]) -> Option<Vec<Rational>> {
    let k = support.len();
    let mut aug: Vec<Vec<Rational>> = m
        .rows()
        .iter()
        .map(|r| {
            let mut row: Vec<Rational> = support.iter().map(|&c| rat(r.get(c))).collect();
            row.push(Rational::one());
            row
        })
        .collect();

    let nrows = aug.len();
    let mut pivot_row = 0;
    let mut pivots: Vec<usize> = Vec::with_capacity(k);
    for col in 0..k {
        if pivot_row == nrows {
            break;
        }
        let Some(found) = (pivot_row..nrows).find(|&r| !aug[r][col].is_zero()) else {
            continue;
        };
        aug.swap(pivot_row, found);
        let inv = aug[pivot_row][col].clone();
        for c in col..=k {
            let v = aug[pivot_row][c].clone() / inv.clone();
            aug[pivot_row][c] = v;
        }
        for r in 0..nrows {
            if r != pivot_row && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                for c in col..=k {
                    let v = aug[r][c].clone() - factor.clone() * aug[pivot_row][c].clone();
                    aug[r][c] = v;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }

    // rank < k: the solution space is not a single point
    if pivots.len() < k {
        return None;
    }
    // inconsistent leftover rows
    for r in pivot_row..nrows {
        if !aug[r][k].is_zero() {
            return None;
        }
    }
    let mut solution = alloc::vec![Rational::zero(); k];
    for (row, &col) in pivots.iter().enumerate() {
        solution[col] = aug[row][k].clone();
    }
    Some(solution)
}

/// Evaluate a state on an element, checking that every decomposition of
/// the element agrees on the value.
pub fn eval_state(
    algebra: &EffectAlgebra,
    s: &StateVector,
    x: ElementId,
) -> Result<Rational, StatesError> {
    if s.len() != algebra.atom_count() {
        return Err(StatesError::WrongLength {
            expected: algebra.atom_count(),
            got: s.len(),
        });
    }
    let decomps = algebra.decompositions(x);
    let value = s.weigh(&decomps[0]);
    for other in &decomps[1..] {
        if s.weigh(other) != value {
            return Err(StatesError::InconsistentState { element: x });
        }
    }
    Ok(value)
}

/// The table of state values: one row per element, one column per state.
fn value_table(algebra: &EffectAlgebra, states: &[StateVector]) -> Vec<Vec<Rational>> {
    algebra
        .elements()
        .map(|x| {
            let d = algebra.canonical_decomp(x);
            states.iter().map(|s| s.weigh(d)).collect()
        })
        .collect()
}

/// A pair `(x, y)` with `s(x) ≤ s(y)` for every given state but `x ≰ y`,
/// if one exists. `None` means the set is order-determining.
///
/// Every member must lie in the state polytope; membership makes the
/// evaluation independent of the chosen decomposition.
pub fn order_violation_witness(
    algebra: &EffectAlgebra,
    states: &[StateVector],
) -> Option<(ElementId, ElementId)> {
    let matrix = extract_matrix(algebra);
    for s in states {
        assert!(
            s.is_state_for(&matrix),
            "members must satisfy the row constraints"
        );
    }
    let table = value_table(algebra, states);
    let n = algebra.size();
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let dominated = (0..states.len()).all(|j| table[x][j] <= table[y][j]);
            if dominated && !algebra.leq(ElementId::new(x), ElementId::new(y)) {
                return Some((ElementId::new(x), ElementId::new(y)));
            }
        }
    }
    None
}

/// Whether pointwise order under `states` implies the algebra order.
pub fn is_order_determining(algebra: &EffectAlgebra, states: &[StateVector]) -> bool {
    order_violation_witness(algebra, states).is_none()
}

/// The quantum test: the vertex set of the state polytope is
/// order-determining. Vertices suffice by convexity.
pub fn is_quantum(algebra: &EffectAlgebra) -> bool {
    let vertices = state_vertices(&extract_matrix(algebra));
    is_order_determining(algebra, &vertices)
}

/// For a single-row matrix `[r_1 … r_m]`, the `m` extreme states
/// `s_i(a_j) = δ_ij / r_i`.
pub fn classical_extreme_states(m: &MatrixRep) -> Result<Vec<StateVector>, StatesError> {
    if m.row_count() != 1 {
        return Err(StatesError::NotClassical);
    }
    let row = &m.rows()[0];
    let cols = m.col_count();
    Ok((0..cols)
        .map(|i| {
            let mut values = alloc::vec![Rational::zero(); cols];
            values[i] = Rational::one() / rat(row.get(i));
            StateVector::new(values)
        })
        .collect())
}

/// Convex coefficients of a state over the classical extreme states:
/// `λ_i = r_i · s(a_i)`. The coefficients are nonnegative, sum to 1, and
/// reproduce `s` exactly.
pub fn decompose_state(m: &MatrixRep, s: &StateVector) -> Result<Vec<Rational>, StatesError> {
    if m.row_count() != 1 {
        return Err(StatesError::NotClassical);
    }
    if !s.is_state_for(m) {
        return Err(StatesError::NotAState);
    }
    let row = &m.rows()[0];
    Ok(s.values()
        .iter()
        .enumerate()
        .map(|(i, v)| v * rat(row.get(i)))
        .collect())
}

/// The element-by-vertex table of state values for a quantum algebra.
///
/// Row `x` is the vector of vertex values on `x`; the map is additive and
/// reflects the order both ways, so it embeds the algebra into diagonal
/// effects over the vertex coordinates.
pub fn quantum_embedding(algebra: &EffectAlgebra) -> Result<Vec<Vec<Rational>>, StatesError> {
    let vertices = state_vertices(&extract_matrix(algebra));
    if !is_order_determining(algebra, &vertices) {
        return Err(StatesError::NotQuantum);
    }
    Ok(value_table(algebra, &vertices))
}
