//! Text renderers: sum tables, element listings and the info report.

use effalg_core::algebra::EffectAlgebra;
use effalg_core::enumeration::Factorization;
use effalg_core::{Classification, DecompVector, ElementId};

use crate::format::rational_str;
use effalg_core::Rational;

/// Render the sum table of an algebra.
///
/// Sums with 0 and 1 are trivial, so the table covers the remaining
/// elements only: a header `+ | a b …` and one line per element, cells
/// holding the sum's name or `N` when the sum is undefined. Cells are
/// padded to a common width when names grow beyond one character.
pub fn render_sum_table(algebra: &EffectAlgebra) -> String {
    let body: Vec<ElementId> = algebra
        .elements()
        .filter(|&x| x != algebra.zero() && x != algebra.one())
        .collect();
    if body.is_empty() {
        return String::from("+\n");
    }
    let width = body
        .iter()
        .map(|&x| algebra.name(x).len())
        .max()
        .expect("nonempty body");

    let pad = |s: &str| format!("{s:<width$}");
    let mut out = String::new();
    let mut line = pad("+");
    line.push_str(" |");
    for &x in &body {
        line.push(' ');
        line.push_str(&pad(algebra.name(x)));
    }
    out.push_str(line.trim_end());
    out.push('\n');
    for &x in &body {
        let mut line = pad(algebra.name(x));
        line.push_str(" |");
        for &y in &body {
            let cell = match algebra.oplus(x, y) {
                Some(s) => algebra.name(s).to_string(),
                None => String::from("N"),
            };
            line.push(' ');
            line.push_str(&pad(&cell));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// `name = decomposition` lines for every element, in canonical order.
/// Decompositions print as sums of atoms, `2b` style for repeats.
pub fn render_elements(algebra: &EffectAlgebra) -> String {
    let mut out = String::new();
    for x in algebra.elements() {
        out.push_str(algebra.name(x));
        out.push_str(" = ");
        out.push_str(&decomp_str(algebra, algebra.canonical_decomp(x)));
        out.push('\n');
    }
    out
}

/// A decomposition as a sum over atom names: `a+2b`, or `0` for the
/// empty sum.
pub fn decomp_str(algebra: &EffectAlgebra, decomp: &DecompVector) -> String {
    if decomp.is_zero() {
        return String::from("0");
    }
    let mut parts = Vec::new();
    for (pos, &mult) in decomp.entries().iter().enumerate() {
        if mult == 0 {
            continue;
        }
        let atom = algebra.name(algebra.atoms()[pos]);
        if mult == 1 {
            parts.push(atom.to_string());
        } else {
            parts.push(format!("{mult}{atom}"));
        }
    }
    parts.join("+")
}

/// Summary facts about one algebra.
#[derive(Clone, Debug)]
pub struct InfoReport {
    pub elements: usize,
    pub atoms: usize,
    pub rows: usize,
    /// `(atom name, n(a))` per atom, in atom order.
    pub max_multiplicities: Vec<(String, u32)>,
    pub classification: Classification,
    pub state_vertices: usize,
    /// For classical algebras, the factorization the single row encodes.
    pub factorization: Option<Factorization>,
}

impl InfoReport {
    /// Human-readable `key: value` lines.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("elements: {}\n", self.elements));
        out.push_str(&format!("atoms: {}\n", self.atoms));
        out.push_str(&format!("rows: {}\n", self.rows));
        for (name, n) in &self.max_multiplicities {
            out.push_str(&format!("n({name}): {n}\n"));
        }
        out.push_str(&format!("classification: {}\n", self.classification));
        out.push_str(&format!("state_vertices: {}\n", self.state_vertices));
        if let Some(f) = &self.factorization {
            out.push_str(&format!("factorization: {f}\n"));
        }
        out
    }

    /// The same facts as a flat JSON object.
    pub fn render_json(&self) -> String {
        let mut doc = serde_json::Map::new();
        doc.insert("elements".into(), self.elements.into());
        doc.insert("atoms".into(), self.atoms.into());
        doc.insert("rows".into(), self.rows.into());
        for (name, n) in &self.max_multiplicities {
            doc.insert(format!("n_{name}"), (*n).into());
        }
        doc.insert(
            "classification".into(),
            self.classification.to_string().into(),
        );
        doc.insert("state_vertices".into(), self.state_vertices.into());
        if let Some(f) = &self.factorization {
            doc.insert("factorization".into(), f.to_string().into());
        }
        let mut text = serde_json::Value::Object(doc).to_string();
        text.push('\n');
        text
    }
}

/// One state vector as space-separated rationals.
pub fn render_state_vector(values: &[Rational]) -> String {
    values
        .iter()
        .map(rational_str)
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use effalg_core::matrix::{reconstruct, MatrixRep};

    fn alg(rows: &[&[u32]]) -> EffectAlgebra {
        reconstruct(&MatrixRep::from_entries(rows.iter().map(|r| r.to_vec()).collect()).unwrap())
            .unwrap()
    }

    #[test]
    fn single_cell_table() {
        assert_eq!(render_sum_table(&alg(&[&[2]])), "+ | a\na | 1\n");
    }

    #[test]
    fn horizontal_pair_table() {
        assert_eq!(
            render_sum_table(&alg(&[&[1, 1]])),
            "+ | a b\na | N 1\nb | 1 N\n"
        );
    }

    #[test]
    fn two_element_table_has_no_body() {
        assert_eq!(render_sum_table(&alg(&[&[1]])), "+\n");
    }

    #[test]
    fn element_listing_shows_canonical_decompositions() {
        let text = render_elements(&alg(&[&[1, 2]]));
        assert_eq!(text, "0 = 0\na = a\nb = b\nc = a+b\nd = 2b\n1 = a+2b\n");
    }

    #[test]
    fn tables_of_quantum_not_classical_algebras() {
        assert_eq!(
            render_sum_table(&alg(&[&[1, 1, 0], &[0, 0, 2]])),
            "+ | a b c\na | N 1 N\nb | 1 N N\nc | N N 1\n"
        );
        assert_eq!(
            render_sum_table(&alg(&[&[1, 1, 0, 0], &[0, 0, 1, 1]])),
            "+ | a b c d\na | N 1 N N\nb | 1 N N N\nc | N N N 1\nd | N N 1 N\n"
        );
    }
}
