//! Subcommand dispatch.
//!
//! Every command is a pure function from inputs to text plus an exit
//! code: 0 for success or a true verdict, 1 for a domain "no", 2 for
//! usage, parse or internal errors. Errors print a single
//! machine-parsable line `category: detail` on stderr.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use effalg_core::algebra::EffectAlgebra;
use effalg_core::composite::compose_matrix;
use effalg_core::enumeration::{
    classical_algebras, enumerate_algebras, real_model, row_factorization, EnumerationError,
    RealModelError, RealModelMode,
};
use effalg_core::matrix::{
    extract_matrix, isomorphic, reconstruct, validate_matrix, MatrixError, MatrixRep,
};
use effalg_core::observables::{
    compatible, is_classical, is_observable, row_compatibility_witness, simultaneity_witness,
    Observable, ObservablesError,
};
use effalg_core::states::{is_quantum, state_vertices};
use effalg_core::{Classification, DecompVector, ElementId};

use crate::format::{
    in_open_unit_interval, parse_matrix, parse_rational_list, serialize_matrix, FormatError,
};
use crate::render::{render_elements, render_state_vector, render_sum_table, InfoReport};

#[derive(Parser)]
#[command(
    name = "effalg",
    version,
    about = "Workbench for finite effect algebras",
    long_about = "Build, inspect and classify finite effect algebras given by their matrix \
                  representations: one row of space-separated nonnegative integers per line, \
                  `#` comments and blank lines ignored."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Weak,
    Strong,
}

#[derive(Subcommand)]
enum Command {
    /// Check the three matrix-representation conditions
    Validate { file: PathBuf },
    /// Summary facts: sizes, classification, state vertex count
    Info {
        file: PathBuf,
        /// Emit a flat JSON object instead of text
        #[arg(long)]
        json: bool,
    },
    /// List elements with their canonical decompositions
    Elements { file: PathBuf },
    /// Render the sum table
    Sumtable { file: PathBuf },
    /// List the vertices of the state polytope, one per line
    States { file: PathBuf },
    /// Decide whether two matrices represent isomorphic algebras
    Iso { first: PathBuf, second: PathBuf },
    /// Composite of two algebras, as a matrix
    Compose {
        first: PathBuf,
        second: PathBuf,
        /// Write the composite matrix to a file instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also list the composite elements in pair notation
        #[arg(short, long)]
        verbose: bool,
    },
    /// All algebras with N elements, up to isomorphism
    Enumerate {
        n: usize,
        /// Also count classical / quantum-not-classical / non-quantum
        #[arg(long)]
        classify: bool,
    },
    /// The classical algebras with N elements, one row per line
    Classical { n: u32 },
    /// Build an algebra from rational values in (0, 1)
    Realmodel {
        /// weak: sums defined when the result is a member; strong: when it is at most 1
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Comma-separated rationals, e.g. 1/5,1/2,4/5
        values: String,
    },
    /// Compatibility and simultaneity checks on named effects
    #[command(group(ArgGroup::new("what").required(true).args(["compatible", "simultaneous"])))]
    Check {
        file: PathBuf,
        /// Two effect names
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        compatible: Option<Vec<String>>,
        /// Two observables as comma-separated effect names
        #[arg(long, num_args = 2, value_names = ["OBS1", "OBS2"])]
        simultaneous: Option<Vec<String>>,
    },
}

struct Failure {
    code: i32,
    category: &'static str,
    detail: String,
}

impl Failure {
    fn new(code: i32, category: &'static str, detail: impl Into<String>) -> Self {
        Failure {
            code,
            category,
            detail: detail.into(),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Grid(inner) => Failure::new(2, "malformed-grid", inner.to_string()),
            other => Failure::new(2, "parse-error", other.to_string()),
        }
    }
}

impl From<MatrixError> for Failure {
    fn from(e: MatrixError) -> Self {
        match e {
            MatrixError::Invalid(report) => Failure::new(1, "invalid-matrix", report.to_string()),
            MatrixError::InconsistentSum { .. }
            | MatrixError::Axioms(_)
            | MatrixError::Reconstruction(_) => {
                Failure::new(2, "reconstruction-error", e.to_string())
            }
            other => Failure::new(2, "malformed-grid", other.to_string()),
        }
    }
}

impl From<ObservablesError> for Failure {
    fn from(e: ObservablesError) -> Self {
        Failure::new(2, "classicality-inconsistent", e.to_string())
    }
}

impl From<EnumerationError> for Failure {
    fn from(e: EnumerationError) -> Self {
        match e {
            EnumerationError::BoundExceeded { .. } => {
                Failure::new(2, "bound-exceeded", e.to_string())
            }
            EnumerationError::Matrix(inner) => inner.into(),
            EnumerationError::Observables(inner) => inner.into(),
        }
    }
}

impl From<RealModelError> for Failure {
    fn from(e: RealModelError) -> Self {
        match e {
            RealModelError::Axioms(_) => Failure::new(1, "axiom-failure", e.to_string()),
            _ => Failure::new(1, "value-rejected", e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(2, "io-error", e.to_string())
    }
}

/// Parse arguments (`args[0]` is the program name) and run one command,
/// writing results to `out` and failures to `err`. Returns the exit code.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own help/version/usage output
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return 2;
            }
            let _ = write!(out, "{text}");
            return 0;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "{}: {}", failure.category, failure.detail);
            failure.code
        }
    }
}

fn load_matrix(path: &Path) -> Result<MatrixRep, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(2, "io-error", format!("{}: {e}", path.display())))?;
    Ok(parse_matrix(&text)?)
}

fn load_algebra(path: &Path) -> Result<EffectAlgebra, Failure> {
    Ok(reconstruct(&load_matrix(path)?)?)
}

fn out_failure(e: std::io::Error) -> Failure {
    e.into()
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Validate { file } => {
            let matrix = load_matrix(&file)?;
            let report = validate_matrix(&matrix);
            if report.is_valid() {
                writeln!(out, "valid").map_err(out_failure)?;
                Ok(0)
            } else {
                writeln!(out, "{report}").map_err(out_failure)?;
                Ok(1)
            }
        }
        Command::Info { file, json } => {
            let matrix = load_matrix(&file)?;
            let algebra = reconstruct(&matrix)?;
            let report = info_report(&algebra, &matrix)?;
            let text = if json {
                report.render_json()
            } else {
                report.render()
            };
            write!(out, "{text}").map_err(out_failure)?;
            Ok(0)
        }
        Command::Elements { file } => {
            let algebra = load_algebra(&file)?;
            write!(out, "{}", render_elements(&algebra)).map_err(out_failure)?;
            Ok(0)
        }
        Command::Sumtable { file } => {
            let algebra = load_algebra(&file)?;
            write!(out, "{}", render_sum_table(&algebra)).map_err(out_failure)?;
            Ok(0)
        }
        Command::States { file } => {
            let matrix = load_matrix(&file)?;
            let report = validate_matrix(&matrix);
            if !report.is_valid() {
                return Err(MatrixError::Invalid(report).into());
            }
            for vertex in state_vertices(&matrix) {
                writeln!(out, "{}", render_state_vector(vertex.values())).map_err(out_failure)?;
            }
            Ok(0)
        }
        Command::Iso { first, second } => {
            let (m1, m2) = (load_matrix(&first)?, load_matrix(&second)?);
            if isomorphic(&m1, &m2)? {
                writeln!(out, "isomorphic").map_err(out_failure)?;
                Ok(0)
            } else {
                writeln!(out, "not isomorphic").map_err(out_failure)?;
                Ok(1)
            }
        }
        Command::Compose {
            first,
            second,
            output,
            verbose,
        } => {
            let (m1, m2) = (load_matrix(&first)?, load_matrix(&second)?);
            let product = compose_matrix(&m1, &m2)?;
            let mut text = serialize_matrix(&product);
            if verbose {
                let (left, right) = (reconstruct(&m1)?, reconstruct(&m2)?);
                let composite = effalg_core::composite::compose(&left, &right);
                text.push('\n');
                for x in composite.algebra().elements() {
                    let (a, b) = composite.pair_of(x);
                    text.push_str(&format!(
                        "{} = ({}, {})\n",
                        composite.algebra().name(x),
                        left.name(a),
                        right.name(b)
                    ));
                }
            }
            match output {
                Some(path) => std::fs::write(path, text)?,
                None => write!(out, "{text}").map_err(out_failure)?,
            }
            Ok(0)
        }
        Command::Enumerate { n, classify } => {
            let all = enumerate_algebras(n)?;
            let mut counts = (0usize, 0usize, 0usize);
            for matrix in &all {
                write!(out, "{}", serialize_matrix(matrix)).map_err(out_failure)?;
                writeln!(out).map_err(out_failure)?;
                if classify {
                    match effalg_core::enumeration::classify(matrix)? {
                        Classification::Classical => counts.0 += 1,
                        Classification::QuantumNotClassical => counts.1 += 1,
                        Classification::NonQuantum => counts.2 += 1,
                    }
                }
            }
            if classify {
                writeln!(
                    out,
                    "total={} classical={} quantum_not_classical={} non_quantum={}",
                    all.len(),
                    counts.0,
                    counts.1,
                    counts.2
                )
                .map_err(out_failure)?;
            } else {
                writeln!(out, "total={}", all.len()).map_err(out_failure)?;
            }
            Ok(0)
        }
        Command::Classical { n } => {
            if n < 2 {
                return Err(Failure::new(
                    2,
                    "bound-exceeded",
                    "need at least two elements",
                ));
            }
            for matrix in classical_algebras(n) {
                write!(out, "{}", serialize_matrix(&matrix)).map_err(out_failure)?;
            }
            Ok(0)
        }
        Command::Realmodel { mode, values } => {
            let values = parse_rational_list(&values)?;
            if let Some(bad) = values.iter().find(|v| !in_open_unit_interval(v)) {
                return Err(RealModelError::OutOfRange(bad.clone()).into());
            }
            let mode = match mode {
                ModeArg::Weak => RealModelMode::Weak,
                ModeArg::Strong => RealModelMode::Strong,
            };
            let model = real_model(&values, mode)?;
            write!(out, "{}", serialize_matrix(&model.matrix)).map_err(out_failure)?;
            let class = classification_of(&model.algebra)?;
            writeln!(out, "classification: {class}").map_err(out_failure)?;
            Ok(0)
        }
        Command::Check {
            file,
            compatible: comp,
            simultaneous: simul,
        } => {
            let algebra = load_algebra(&file)?;
            let witness = if let Some(names) = comp {
                let a = element(&algebra, &names[0])?;
                let b = element(&algebra, &names[1])?;
                let by_rows = row_compatibility_witness(&algebra, a, b);
                if by_rows.is_some() != compatible(&algebra, a, b) {
                    return Err(Failure::new(
                        2,
                        "internal-error",
                        "compatibility criteria disagree",
                    ));
                }
                by_rows
            } else {
                let names = simul.expect("clap group requires one");
                let a = observable(&algebra, &names[0])?;
                let b = observable(&algebra, &names[1])?;
                simultaneity_witness(&algebra, &a, &b)
            };
            match witness {
                Some(row) => {
                    writeln!(out, "true").map_err(out_failure)?;
                    writeln!(out, "witness: {}", row_str(&row)).map_err(out_failure)?;
                    Ok(0)
                }
                None => {
                    writeln!(out, "false").map_err(out_failure)?;
                    Ok(1)
                }
            }
        }
    }
}

fn classification_of(algebra: &EffectAlgebra) -> Result<Classification, Failure> {
    Ok(if is_classical(algebra)? {
        Classification::Classical
    } else if is_quantum(algebra) {
        Classification::QuantumNotClassical
    } else {
        Classification::NonQuantum
    })
}

fn info_report(algebra: &EffectAlgebra, matrix: &MatrixRep) -> Result<InfoReport, Failure> {
    let classification = classification_of(algebra)?;
    let max_multiplicities = algebra
        .atoms()
        .iter()
        .map(|&a| {
            let n = algebra.n_max(a).expect("atom list");
            (algebra.name(a).to_string(), n)
        })
        .collect();
    Ok(InfoReport {
        elements: algebra.size(),
        atoms: algebra.atom_count(),
        rows: algebra.rows().len(),
        max_multiplicities,
        classification,
        state_vertices: state_vertices(matrix).len(),
        factorization: row_factorization(&extract_matrix(algebra)),
    })
}

fn element(algebra: &EffectAlgebra, name: &str) -> Result<ElementId, Failure> {
    algebra
        .element_by_name(name)
        .ok_or_else(|| Failure::new(2, "unknown-element", format!("no element named {name:?}")))
}

fn observable(algebra: &EffectAlgebra, spec: &str) -> Result<Observable, Failure> {
    let effects = spec
        .split(',')
        .map(|name| element(algebra, name.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    let obs = Observable::new(effects);
    if !is_observable(algebra, &obs) {
        return Err(Failure::new(
            2,
            "not-an-observable",
            format!("effects {spec:?} do not sum to 1"),
        ));
    }
    Ok(obs)
}

fn row_str(row: &DecompVector) -> String {
    row.entries()
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
