//! Explicit finite effect algebras.
//!
//! A [`SumTable`] is the raw object: a square partial map recording which
//! sums are defined and what they equal. [`axioms_check`] verifies the four
//! effect-algebra laws on a table exhaustively, together with the derived
//! cancellation and positivity laws. An [`EffectAlgebra`] is a table that
//! passed the checker, enriched with everything the rest of the crate
//! needs: the derived order, the complement map, the atom list, and every
//! atomic decomposition of every element.
//!
//! Elements of an algebra are canonically labelled: id 0 is the zero
//! effect, the unit comes last, and the elements in between are sorted by
//! their canonical decomposition (total weight ascending, then descending
//! lexicographic over the atom order). Display names follow the same
//! order: `0`, `a`, `b`, …, `1`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// Index of an element within one algebra.
///
/// Id 0 is always the zero effect; the unit's id is recorded by the table
/// that owns the element.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ElementId(usize);

impl ElementId {
    /// The zero effect of any algebra.
    pub const ZERO: ElementId = ElementId(0);

    pub fn new(index: usize) -> Self {
        ElementId(index)
    }

    pub fn index(self) -> usize {
        self.0
    }
}

/// A multiset of atoms, encoded as one multiplicity per atom.
///
/// Comparison via `Ord` is plain lexicographic on the entries; the order
/// used for canonical naming is [`DecompVector::naming_cmp`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DecompVector {
    entries: Vec<u32>,
}

impl DecompVector {
    pub fn new(entries: Vec<u32>) -> Self {
        DecompVector { entries }
    }

    pub fn zero(len: usize) -> Self {
        DecompVector {
            entries: alloc::vec![0; len],
        }
    }

    /// The vector with a single 1 in position `pos`.
    pub fn unit(len: usize, pos: usize) -> Self {
        let mut entries = alloc::vec![0; len];
        entries[pos] = 1;
        DecompVector { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> u32 {
        self.entries[i]
    }

    /// Total number of atoms in the multiset.
    pub fn weight(&self) -> u64 {
        self.entries.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// Componentwise `≤`.
    pub fn dominated_by(&self, other: &Self) -> bool {
        self.entries.len() == other.entries.len()
            && self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }

    pub fn plus(&self, other: &Self) -> Self {
        debug_assert_eq!(self.entries.len(), other.entries.len());
        DecompVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Componentwise subtraction, defined only when the result is nonnegative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        if !other.dominated_by(self) {
            return None;
        }
        Some(DecompVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// The total order behind canonical element naming: total weight
    /// ascending, ties broken by descending lexicographic comparison.
    pub fn naming_cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.entries.cmp(&self.entries))
    }
}

/// A square partial sum map on `size` elements.
///
/// Id 0 is the zero effect and `one` is the unit; `size >= 2` so the two
/// are distinct. The table records definedness only — whether it actually
/// satisfies the effect-algebra laws is the job of [`axioms_check`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SumTable {
    size: usize,
    one: ElementId,
    entries: Vec<Option<ElementId>>,
}

impl SumTable {
    pub fn new(
        size: usize,
        one: ElementId,
        entries: Vec<Option<ElementId>>,
    ) -> Result<Self, AlgebraError> {
        if size < 2 {
            return Err(AlgebraError::MalformedTable(
                "carrier must have at least two elements",
            ));
        }
        if one.0 == 0 || one.0 >= size {
            return Err(AlgebraError::MalformedTable(
                "unit index out of range or equal to zero",
            ));
        }
        if entries.len() != size * size {
            return Err(AlgebraError::MalformedTable("entry grid is not square"));
        }
        if entries.iter().flatten().any(|id| id.0 >= size) {
            return Err(AlgebraError::MalformedTable("sum value out of range"));
        }
        Ok(SumTable { size, one, entries })
    }

    /// Build a table by evaluating `f` on every ordered pair.
    pub fn from_fn(
        size: usize,
        one: ElementId,
        mut f: impl FnMut(ElementId, ElementId) -> Option<ElementId>,
    ) -> Result<Self, AlgebraError> {
        let mut entries = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                entries.push(f(ElementId(x), ElementId(y)));
            }
        }
        SumTable::new(size, one, entries)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> ElementId {
        ElementId::ZERO
    }

    pub fn one(&self) -> ElementId {
        self.one
    }

    /// The sum `x ⊕ y`, or `None` when it is not defined.
    pub fn get(&self, x: ElementId, y: ElementId) -> Option<ElementId> {
        debug_assert!(x.0 < self.size && y.0 < self.size);
        self.entries[x.0 * self.size + y.0]
    }

    fn defined(&self, x: ElementId, y: ElementId) -> bool {
        self.get(x, y).is_some()
    }
}

/// One witness of a violated law in a sum table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AxiomViolation {
    /// `x ⊕ y` and `y ⊕ x` disagree on definedness or value.
    Commutativity { x: ElementId, y: ElementId },
    /// `b ⊕ c` and `a ⊕ (b ⊕ c)` are defined but `(a ⊕ b) ⊕ c` is not, or differs.
    Associativity {
        a: ElementId,
        b: ElementId,
        c: ElementId,
    },
    /// No `x` with `a ⊕ x = 1`.
    MissingComplement { a: ElementId },
    /// Two distinct complements of `a`.
    AmbiguousComplement {
        a: ElementId,
        first: ElementId,
        second: ElementId,
    },
    /// `e ⊕ 1` is defined for a nonzero `e`.
    UnitSummand { e: ElementId },
    /// `a ⊕ c = b ⊕ c` with `a ≠ b`.
    Cancellation {
        a: ElementId,
        b: ElementId,
        c: ElementId,
    },
    /// `a ⊕ b = 0` with `a` or `b` nonzero.
    Positivity { a: ElementId, b: ElementId },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::Commutativity { x, y } => {
                write!(f, "commutativity fails on ({}, {})", x.0, y.0)
            }
            AxiomViolation::Associativity { a, b, c } => {
                write!(f, "associativity fails on ({}, {}, {})", a.0, b.0, c.0)
            }
            AxiomViolation::MissingComplement { a } => {
                write!(f, "element {} has no complement", a.0)
            }
            AxiomViolation::AmbiguousComplement { a, first, second } => {
                write!(
                    f,
                    "element {} has complements {} and {}",
                    a.0, first.0, second.0
                )
            }
            AxiomViolation::UnitSummand { e } => {
                write!(f, "nonzero element {} sums with the unit", e.0)
            }
            AxiomViolation::Cancellation { a, b, c } => {
                write!(
                    f,
                    "cancellation fails: {} + {} = {} + {}",
                    a.0, c.0, b.0, c.0
                )
            }
            AxiomViolation::Positivity { a, b } => {
                write!(f, "positivity fails: {} + {} = 0", a.0, b.0)
            }
        }
    }
}

/// Outcome of the exhaustive law check on a sum table.
///
/// The per-law flags summarise `witnesses`; the report is all-ok exactly
/// when the witness list is empty. Cancellation and positivity are
/// consequences of the four axioms but are checked and reported
/// separately.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AxiomReport {
    pub e1_ok: bool,
    pub e2_ok: bool,
    pub e3_ok: bool,
    pub e4_ok: bool,
    pub cancellation_ok: bool,
    pub positivity_ok: bool,
    pub witnesses: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn all_ok(&self) -> bool {
        self.witnesses.is_empty()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.all_ok() {
            return write!(f, "all laws hold");
        }
        let mut first = true;
        for w in &self.witnesses {
            if !first {
                write!(f, "; ")?;
            }
            write!(f, "{w}")?;
            first = false;
        }
        Ok(())
    }
}

/// Exhaustively verify the effect-algebra laws on a sum table.
///
/// E1 commutativity, E2 associativity (over all ordered triples), E3
/// existence and uniqueness of complements, E4 (`e ⊕ 1` defined only for
/// `e = 0`), plus derived cancellation and positivity. Every violation is
/// recorded with a witness tuple.
pub fn axioms_check(table: &SumTable) -> AxiomReport {
    let n = table.size;
    let one = table.one;
    let zero = ElementId::ZERO;
    let mut witnesses = Vec::new();
    let (mut e1, mut e2, mut e3, mut e4, mut canc, mut pos) = (true, true, true, true, true, true);

    let ids = |i: usize| ElementId(i);

    // E1: symmetric definedness and value.
    for x in 0..n {
        for y in x..n {
            let xy = table.get(ids(x), ids(y));
            let yx = table.get(ids(y), ids(x));
            if xy != yx {
                e1 = false;
                witnesses.push(AxiomViolation::Commutativity {
                    x: ids(x),
                    y: ids(y),
                });
            }
        }
    }

    // E2: a ⊕ (b ⊕ c) defined forces (a ⊕ b) ⊕ c defined and equal.
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (a, b, c) = (ids(a), ids(b), ids(c));
                let Some(bc) = table.get(b, c) else { continue };
                let Some(lhs) = table.get(a, bc) else {
                    continue;
                };
                let rhs = table.get(a, b).and_then(|ab| table.get(ab, c));
                if rhs != Some(lhs) {
                    e2 = false;
                    witnesses.push(AxiomViolation::Associativity { a, b, c });
                }
            }
        }
    }

    // E3: exactly one complement per element.
    for a in 0..n {
        let a = ids(a);
        let mut found: Option<ElementId> = None;
        for x in 0..n {
            let x = ids(x);
            if table.get(a, x) == Some(one) {
                match found {
                    None => found = Some(x),
                    Some(first) => {
                        e3 = false;
                        witnesses.push(AxiomViolation::AmbiguousComplement {
                            a,
                            first,
                            second: x,
                        });
                    }
                }
            }
        }
        if found.is_none() {
            e3 = false;
            witnesses.push(AxiomViolation::MissingComplement { a });
        }
    }

    // E4: the unit is a summand of zero only.
    for e in 0..n {
        let e = ids(e);
        if e != zero && table.defined(e, one) {
            e4 = false;
            witnesses.push(AxiomViolation::UnitSummand { e });
        }
    }

    // Cancellation, derived from E1-E4 but reported on its own.
    for c in 0..n {
        let c = ids(c);
        let mut seen: BTreeMap<ElementId, ElementId> = BTreeMap::new();
        for a in 0..n {
            let a = ids(a);
            if let Some(s) = table.get(a, c) {
                if let Some(&b) = seen.get(&s) {
                    canc = false;
                    witnesses.push(AxiomViolation::Cancellation { a: b, b: a, c });
                } else {
                    seen.insert(s, a);
                }
            }
        }
    }

    // Positivity: a ⊕ b = 0 only for a = b = 0.
    for a in 0..n {
        for b in 0..n {
            let (a, b) = (ids(a), ids(b));
            if table.get(a, b) == Some(zero) && (a != zero || b != zero) {
                pos = false;
                witnesses.push(AxiomViolation::Positivity { a, b });
            }
        }
    }

    AxiomReport {
        e1_ok: e1,
        e2_ok: e2,
        e3_ok: e3,
        e4_ok: e4,
        cancellation_ok: canc,
        positivity_ok: pos,
        witnesses,
    }
}

/// Errors from table construction and element operations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AlgebraError {
    /// The table is not structurally a square partial map with distinct 0 and 1.
    MalformedTable(&'static str),
    /// The table fails the effect-algebra laws.
    AxiomsViolated(AxiomReport),
    /// `ominus(y, x)` with `x ≰ y`.
    NotComparable { y: ElementId, x: ElementId },
    /// An atom was required.
    NotAnAtom(ElementId),
    /// A nonzero element admits no atomic decomposition; the table is not
    /// a finite effect algebra even though the law check passed.
    NoDecomposition(ElementId),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::MalformedTable(msg) => write!(f, "malformed table: {msg}"),
            AlgebraError::AxiomsViolated(report) => write!(f, "axioms violated: {report}"),
            AlgebraError::NotComparable { y, x } => {
                write!(f, "element {} is not above {}", y.index(), x.index())
            }
            AlgebraError::NotAnAtom(a) => write!(f, "element {} is not an atom", a.index()),
            AlgebraError::NoDecomposition(b) => {
                write!(f, "element {} has no atomic decomposition", b.index())
            }
        }
    }
}

impl core::error::Error for AlgebraError {}

/// A finite effect algebra in canonical labelling.
///
/// Construction always runs [`axioms_check`]; an `EffectAlgebra` value is
/// a witness that every law holds. All data is immutable after
/// construction and every operation is a pure lookup or search.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EffectAlgebra {
    table: SumTable,
    atoms: Vec<ElementId>,
    names: Vec<String>,
    canonical_decomp: Vec<DecompVector>,
    decomps: Vec<Vec<DecompVector>>,
    complement: Vec<ElementId>,
    below: Vec<bool>,
}

impl EffectAlgebra {
    /// Build an algebra from a raw sum table.
    ///
    /// Checks the axioms, derives order, complements, atoms and all atomic
    /// decompositions, then relabels the elements canonically: zero first,
    /// unit last, everything else sorted by canonical decomposition. The
    /// atom order is the ascending original-id order of the minimal
    /// elements, which the relabelling preserves.
    pub fn from_table(table: SumTable) -> Result<Self, AlgebraError> {
        Self::from_table_with_relabel(table).map(|(algebra, _)| algebra)
    }

    /// Same as [`EffectAlgebra::from_table`], also returning the map from
    /// original table ids to canonical ids.
    pub fn from_table_with_relabel(
        table: SumTable,
    ) -> Result<(Self, Vec<ElementId>), AlgebraError> {
        let report = axioms_check(&table);
        if !report.all_ok() {
            return Err(AlgebraError::AxiomsViolated(report));
        }
        let n = table.size;
        let one = table.one;
        let ids = |i: usize| ElementId(i);

        // Derived order: x ≤ y iff some c has x ⊕ c = y.
        let mut below = alloc::vec![false; n * n];
        for x in 0..n {
            for c in 0..n {
                if let Some(y) = table.get(ids(x), ids(c)) {
                    below[x * n + y.0] = true;
                }
            }
        }

        // Atoms: minimal nonzero elements, in original id order.
        let mut atoms = Vec::new();
        for x in 1..n {
            let minimal = (1..n).all(|y| y == x || !below[y * n + x]);
            if minimal {
                atoms.push(ids(x));
            }
        }
        let m = atoms.len();

        // Every atomic decomposition of every element, by depth-first
        // search over atom multiplicities; an undefined partial sum prunes
        // the branch, and cancellation + positivity bound each multiplicity.
        let mut decomps: Vec<Vec<DecompVector>> = alloc::vec![Vec::new(); n];
        let mut stack = alloc::vec![0u32; m];
        fn search(
            table: &SumTable,
            atoms: &[ElementId],
            pos: usize,
            acc: ElementId,
            stack: &mut Vec<u32>,
            out: &mut Vec<Vec<DecompVector>>,
        ) {
            if pos == atoms.len() {
                out[acc.index()].push(DecompVector::new(stack.clone()));
                return;
            }
            let mut current = acc;
            let mut mult = 0u32;
            loop {
                stack[pos] = mult;
                search(table, atoms, pos + 1, current, stack, out);
                match table.get(current, atoms[pos]) {
                    Some(next) => {
                        current = next;
                        mult += 1;
                    }
                    None => break,
                }
            }
            stack[pos] = 0;
        }
        search(&table, &atoms, 0, ElementId::ZERO, &mut stack, &mut decomps);

        for x in 0..n {
            if decomps[x].is_empty() {
                return Err(AlgebraError::NoDecomposition(ids(x)));
            }
            decomps[x].sort();
        }

        let canonical: Vec<DecompVector> = decomps
            .iter()
            .map(|ds| {
                ds.iter()
                    .min_by(|a, b| a.naming_cmp(b))
                    .expect("nonempty")
                    .clone()
            })
            .collect();

        // Canonical order: zero, then by naming key, unit last.
        let mut middle: Vec<usize> = (1..n).filter(|&x| x != one.0).collect();
        middle.sort_by(|&x, &y| canonical[x].naming_cmp(&canonical[y]));
        let mut order = Vec::with_capacity(n);
        order.push(0);
        order.extend(middle);
        order.push(one.0);

        // old id -> new id
        let mut relabel = alloc::vec![ElementId::ZERO; n];
        for (new, &old) in order.iter().enumerate() {
            relabel[old] = ids(new);
        }

        let new_table = SumTable::from_fn(n, ids(n - 1), |x, y| {
            table
                .get(ids(order[x.0]), ids(order[y.0]))
                .map(|s| relabel[s.0])
        })?;
        let new_atoms: Vec<ElementId> = atoms.iter().map(|a| relabel[a.0]).collect();
        let new_decomps: Vec<Vec<DecompVector>> =
            order.iter().map(|&old| decomps[old].clone()).collect();
        let new_canonical: Vec<DecompVector> =
            order.iter().map(|&old| canonical[old].clone()).collect();
        let mut new_below = alloc::vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                if below[order[x] * n + order[y]] {
                    new_below[x * n + y] = true;
                }
            }
        }
        let mut complement = alloc::vec![ElementId::ZERO; n];
        for x in 0..n {
            let c = (0..n)
                .find(|&c| new_table.get(ids(x), ids(c)) == Some(ids(n - 1)))
                .expect("complements exist once E3 holds");
            complement[x] = ids(c);
        }
        let names = canonical_names(n);

        // Atoms occupy ids 1..=m: their canonical decompositions are the
        // unit vectors, which sort before everything of weight two or more
        // and among themselves in atom order.
        debug_assert!(new_atoms
            .iter()
            .enumerate()
            .all(|(k, a)| n == 2 || a.index() == k + 1));

        let algebra = EffectAlgebra {
            table: new_table,
            atoms: new_atoms,
            names,
            canonical_decomp: new_canonical,
            decomps: new_decomps,
            complement,
            below: new_below,
        };
        Ok((algebra, relabel))
    }

    pub fn size(&self) -> usize {
        self.table.size
    }

    pub fn zero(&self) -> ElementId {
        ElementId::ZERO
    }

    pub fn one(&self) -> ElementId {
        self.table.one
    }

    pub fn table(&self) -> &SumTable {
        &self.table
    }

    /// The sum `x ⊕ y`, or `None` when undefined.
    pub fn oplus(&self, x: ElementId, y: ElementId) -> Option<ElementId> {
        self.table.get(x, y)
    }

    /// Whether `x ⊕ y` is defined (`x ⊥ y`).
    pub fn orthogonal(&self, x: ElementId, y: ElementId) -> bool {
        self.table.defined(x, y)
    }

    /// The derived order: `x ≤ y` iff some `c` has `x ⊕ c = y`.
    pub fn leq(&self, x: ElementId, y: ElementId) -> bool {
        self.below[x.index() * self.size() + y.index()]
    }

    /// The unique `c` with `y = x ⊕ c`.
    pub fn ominus(&self, y: ElementId, x: ElementId) -> Result<ElementId, AlgebraError> {
        let n = self.size();
        (0..n)
            .map(ElementId)
            .find(|&c| self.table.get(x, c) == Some(y))
            .ok_or(AlgebraError::NotComparable { y, x })
    }

    /// The unique `x'` with `x ⊕ x' = 1`.
    pub fn complement(&self, x: ElementId) -> ElementId {
        self.complement[x.index()]
    }

    /// The atoms, in canonical order (ids `1..=m` except in the
    /// two-element algebra, where the unit is the only atom).
    pub fn atoms(&self) -> &[ElementId] {
        &self.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_atom(&self, x: ElementId) -> bool {
        self.atoms.contains(&x)
    }

    /// The largest `k` such that the `k`-fold sum of atom `a` is defined.
    pub fn n_max(&self, a: ElementId) -> Result<u32, AlgebraError> {
        let pos = self
            .atoms
            .iter()
            .position(|&x| x == a)
            .ok_or(AlgebraError::NotAnAtom(a))?;
        Ok(self.rows().iter().map(|r| r.get(pos)).max().unwrap_or(0))
    }

    /// All atomic decompositions of `b`. For `b = 0` this is the zero
    /// vector alone.
    pub fn decompositions(&self, b: ElementId) -> &[DecompVector] {
        &self.decomps[b.index()]
    }

    /// The canonical (naming-minimal) decomposition of `x`.
    pub fn canonical_decomp(&self, x: ElementId) -> &DecompVector {
        &self.canonical_decomp[x.index()]
    }

    /// The decompositions of the unit; these are the rows of the matrix
    /// representation, in ascending lexicographic order.
    pub fn rows(&self) -> &[DecompVector] {
        &self.decomps[self.table.one.index()]
    }

    /// Fold a multiset of atoms; `None` when the sum is undefined.
    pub fn fold(&self, v: &DecompVector) -> Option<ElementId> {
        assert_eq!(
            v.len(),
            self.atoms.len(),
            "vector length must match atom count"
        );
        let mut acc = ElementId::ZERO;
        for (pos, &mult) in v.entries().iter().enumerate() {
            for _ in 0..mult {
                acc = self.oplus(acc, self.atoms[pos])?;
            }
        }
        Some(acc)
    }

    pub fn name(&self, x: ElementId) -> &str {
        &self.names[x.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_by_name(&self, name: &str) -> Option<ElementId> {
        self.names.iter().position(|n| n == name).map(ElementId)
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        (0..self.size()).map(ElementId)
    }
}

/// Canonical display names for `n` elements: `0`, `a`, `b`, …, `1`.
fn canonical_names(n: usize) -> Vec<String> {
    let mut names = Vec::with_capacity(n);
    names.push(String::from("0"));
    for i in 0..n - 2 {
        names.push(letters(i));
    }
    names.push(String::from("1"));
    names
}

/// Bijective base-26 letter names: a..z, aa, ab, …
fn letters(mut i: usize) -> String {
    let mut buf = Vec::new();
    loop {
        buf.push(b'a' + (i % 26) as u8);
        i /= 26;
        if i == 0 {
            break;
        }
        i -= 1;
    }
    buf.reverse();
    String::from_utf8(buf).expect("ascii")
}
