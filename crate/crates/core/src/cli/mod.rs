//! Command-line front end.
//!
//! ```text
//! hopforders check  FILE
//! hopforders order  FILE
//! hopforders free   FILE [--beta 0,1,0 | --search-bound N]
//! hopforders induce LEFT RIGHT [--gamma .. --delta ..]
//! hopforders enum   FILE [--detect-induced]
//! ```
//!
//! Global flags: `--ring z|zp:P` overrides the ring of the documents,
//! `--format json|table` picks the output style and `--output PATH` writes
//! to a file instead of stdout.

mod input;
mod report;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::action::{ActionBundle, FieldPresentation};
use crate::error::Error;
use crate::freeness::{generator_matrix, search_free_generator};
use crate::groups::{
    classify_type, detect_induced, enumerate_regular_subgroups, left_translations, Permutation, RegularSubgroup,
    ENUMERATION_DEGREE_CAP,
};
use crate::induction::{
    base_change_order, compare_tensor_order, content_factorization, hnf_factor_identity, verify_induced_generator,
    verify_kronecker_theorem, InducedSetup,
};
use crate::linalg::{CoefficientRing, Matrix, Rational};
use crate::order::OrderBasis;

pub use input::{parse_coordinates, parse_document, read_document, GroupInput, InputDocument};
pub use report::*;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("ParseError at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("ValidationError: {0}")]
    Validation(String),
    #[error("IoError: {0}")]
    Io(String),
    #[error("Error: {0}")]
    Math(Error),
    #[error("UsageError: {0}")]
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Validation(s) => CliError::Validation(s),
            other => CliError::Math(other),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "hopforders", version, about = "Associated orders and free generators of Hopf Galois actions")]
pub struct Cli {
    /// Coefficient ring: `z` or `zp:P` for Z localized at the prime P.
    #[arg(long, global = true)]
    pub ring: Option<CoefficientRing>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a document and check the Hopf Galois condition.
    Check { input: PathBuf },
    /// Compute the associated order.
    Order { input: PathBuf },
    /// Test a candidate generator or search a box for one.
    Free {
        input: PathBuf,
        #[arg(long, conflicts_with = "search_bound", allow_hyphen_values = true)]
        beta: Option<String>,
        #[arg(long)]
        search_bound: Option<i64>,
    },
    /// Build the induced structure of two documents.
    Induce {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, requires = "delta", allow_hyphen_values = true)]
        gamma: Option<String>,
        #[arg(long, requires = "gamma", allow_hyphen_values = true)]
        delta: Option<String>,
    },
    /// Enumerate regular subgroups normalized by the group of a document.
    Enum {
        input: PathBuf,
        #[arg(long)]
        detect_induced: bool,
    },
}

fn element(coords: &[Rational], labels: &[String]) -> Element {
    Element { coordinates: strings(coords), expression: combination(coords, labels) }
}

fn basis_elements(basis: &Matrix, labels: &[String]) -> Vec<Element> {
    (0..basis.cols()).map(|i| element(&basis.column(i), labels)).collect()
}

fn check(doc: &InputDocument, ring: &CoefficientRing) -> Result<CheckReport, CliError> {
    let bundle = doc.bundle(ring)?;
    let field = bundle.field();
    let verdict = bundle.verify();
    Ok(CheckReport {
        name: doc.name.clone(),
        ring: ring.to_string(),
        dim: bundle.dim(),
        field_basis: field.labels().to_vec(),
        hopf_labels: bundle.table().hopf_labels().to_vec(),
        field_axioms: true,
        discriminant: field.discriminant()?.to_string(),
        rank_ok: verdict.rank_ok,
        j_bijective: verdict.j_bijective,
        action_matrix: matrix_strings(bundle.matrix()),
        timings: Timings { elapsed_us: 0 },
    })
}

fn order_report(doc: &InputDocument, order: &OrderBasis) -> Result<OrderReport, CliError> {
    let labels = order.bundle().table().hopf_labels();
    let checks = order.verify()?;
    Ok(OrderReport {
        name: doc.name.clone(),
        ring: order.ring().to_string(),
        content: order.hnf().content.to_string(),
        hnf: matrix_strings(&order.hnf().d),
        basis: basis_elements(order.basis_in_w(), labels),
        action_table: order.action_table().iter().map(|row| row.iter().map(|v| strings(v)).collect()).collect(),
        checks: OrderChecks {
            integral_action: checks.integral_action,
            contains_one: checks.contains_one,
            ring_closed: checks.ring_closed,
        },
        timings: Timings { elapsed_us: 0 },
    })
}

/// Coordinates of a field element; a single number `c` stands for `c * 1`.
fn field_element(field: &FieldPresentation, s: &str) -> Result<Vec<Rational>, CliError> {
    let coords = parse_coordinates(s)?;
    if coords.len() == 1 && field.dim() != 1 {
        return Ok(field.one().iter().map(|x| x * &coords[0]).collect());
    }
    Ok(coords)
}

fn candidate(order: &OrderBasis, beta: &[Rational]) -> Result<Candidate, CliError> {
    let c = generator_matrix(order, beta)?;
    Ok(Candidate {
        beta: strings(&c.beta),
        expression: combination(&c.beta, order.bundle().field().labels()),
        d_beta: matrix_strings(&c.d_beta),
        det: c.det.to_string(),
        module_index: c.module_index(order).to_string(),
        free: order.ring().is_unit(&c.det),
    })
}

fn free(doc: &InputDocument, order: &OrderBasis, beta: Option<&str>, bound: Option<i64>) -> Result<FreeReport, CliError> {
    let (search_bound, candidate) = match beta {
        Some(b) => (None, Some(candidate(order, &field_element(order.bundle().field(), b)?)?)),
        None => {
            let bound = bound.unwrap_or(crate::freeness::DEFAULT_SEARCH_BOUND);
            if bound < 1 {
                return Err(CliError::Usage("--search-bound must be at least 1".into()));
            }
            let out = search_free_generator(order, bound)?;
            (Some(bound), out.generator.map(|g| candidate(order, &g.beta)).transpose()?)
        }
    };
    Ok(FreeReport {
        name: doc.name.clone(),
        ring: order.ring().to_string(),
        search_bound,
        found: candidate.as_ref().is_some_and(|c| c.free),
        candidate,
        timings: Timings { elapsed_us: 0 },
    })
}

fn not_disjoint<T>() -> Claim<T> {
    Claim::Refused { reason: Error::NotArithmeticallyDisjoint.to_string() }
}

fn induce(
    left_doc: &InputDocument,
    right_doc: &InputDocument,
    ring: &CoefficientRing,
    gamma_delta: Option<(&str, &str)>,
) -> Result<InduceReport, CliError> {
    let left = left_doc.bundle(ring)?;
    let right = right_doc.bundle(ring)?;
    let setup = InducedSetup::with_factor_orders(left_doc.order(&left)?, right_doc.order(&right)?)?;
    let induced: &ActionBundle = setup.induced();
    let labels = induced.table().hopf_labels().to_vec();
    let verdict = induced.verify();
    let disjoint = setup.is_disjoint()?;
    let content = content_factorization(&setup)?;

    let tensor_order = if disjoint {
        let t = compare_tensor_order(&setup)?;
        Claim::Checked(TensorOrderResult {
            equal: t.equal,
            induced_basis: basis_elements(t.induced_order.basis_in_w(), &labels),
            product_basis: basis_elements(&t.product_basis, &labels),
        })
    } else {
        not_disjoint()
    };

    let gamma_delta = gamma_delta
        .map(|(g, d)| Ok::<_, CliError>((field_element(left.field(), g)?, field_element(right.field(), d)?)))
        .transpose()?;
    let generator = gamma_delta.as_ref().map(|(g, d)| {
        if !disjoint {
            return Ok(not_disjoint());
        }
        let r = verify_induced_generator(&setup, g, d)?;
        Ok::<_, CliError>(Claim::Checked(GeneratorResult {
            gamma: strings(g),
            delta: strings(d),
            product_beta: strings(&r.product_beta),
            expression: combination(&r.product_beta, induced.field().labels()),
            det: r.det.to_string(),
            free: r.free,
            kronecker_consistent: r.kronecker_consistent,
        }))
    });
    let generator = generator.transpose()?;

    let base_change = if disjoint {
        let b = base_change_order(&setup, gamma_delta.as_ref().map(|(g, _)| g.as_slice()))?;
        let bc_labels = b.order.bundle().table().hopf_labels().to_vec();
        Claim::Checked(BaseChangeResult {
            lattice_eq: b.lattice_eq,
            basis: basis_elements(b.order.basis_in_w(), &bc_labels),
            gamma: b.gamma.as_deref().map(strings),
            gamma_free: b.gamma_free,
        })
    } else {
        not_disjoint()
    };

    let (r, u) = setup.degrees();
    Ok(InduceReport {
        left: left_doc.name.clone(),
        right: right_doc.name.clone(),
        ring: ring.to_string(),
        degrees: [r, u],
        permutation: setup.permutation().cycle_string(),
        field_basis: induced.field().labels().to_vec(),
        hopf_labels: labels,
        induced_table: induced.table().entries().iter().map(|row| row.iter().map(|v| strings(v)).collect()).collect(),
        kronecker: verify_kronecker_theorem(&setup)?,
        rank_ok: verdict.rank_ok,
        j_bijective: verdict.j_bijective,
        discriminants: [left.field().discriminant()?.to_string(), right.field().discriminant()?.to_string()],
        disjoint,
        content: ContentCheck {
            induced: content.induced.to_string(),
            left: content.left.to_string(),
            right: content.right.to_string(),
            equal_up_to_unit: content.equal_up_to_unit,
        },
        hnf_factor_identity: hnf_factor_identity(&setup)?,
        tensor_order,
        generator,
        base_change,
        timings: Timings { elapsed_us: 0 },
    })
}

fn cycle_strings(ps: &[Permutation]) -> Vec<String> {
    ps.iter().map(Permutation::cycle_string).collect()
}

fn enumerate(doc: &InputDocument, detect: bool) -> Result<EnumReport, CliError> {
    let group = doc.group()?;
    let (degree, normalizer) = match &group {
        GroupInput::Cayley { data, .. } => (data.order(), left_translations(data)),
        GroupInput::Action { degree, generators } => (*degree, generators.clone()),
    };
    if degree > ENUMERATION_DEGREE_CAP {
        return Err(Error::DegreeTooLarge { degree, cap: ENUMERATION_DEGREE_CAP }.into());
    }
    let found: Vec<RegularSubgroup> = enumerate_regular_subgroups(degree, &normalizer)?;
    let (data, decompositions) = match &group {
        GroupInput::Cayley { data, decompositions } => (Some(data), decompositions.clone()),
        GroupInput::Action { .. } => (None, Vec::new()),
    };
    if detect && decompositions.is_empty() {
        return Err(Error::NoDecomposition.into());
    }
    let mut subgroups = Vec::with_capacity(found.len());
    for n in &found {
        let labels = data.map(|g| {
            n.elements().iter().map(|p| g.names()[p.apply(g.group().identity())].clone()).collect::<Vec<_>>()
        });
        let induced = if detect {
            let g = data.expect("decompositions imply a Cayley table");
            let mut flags = Vec::new();
            for (i, d) in decompositions.iter().enumerate() {
                let gd = g.clone().with_decomposition(d.clone())?;
                let f = detect_induced(&gd, n)?;
                flags.push(InducedFlag {
                    decomposition: i,
                    induced: f.is_some(),
                    n1_type: f.as_ref().map(|f| classify_type(&f.n1)).transpose()?.map(|t| t.name),
                    n2_type: f.as_ref().map(|f| classify_type(&f.n2)).transpose()?.map(|t| t.name),
                });
            }
            Some(flags)
        } else {
            None
        };
        subgroups.push(SubgroupEntry {
            type_name: classify_type(n)?.name,
            elements: cycle_strings(n.elements()),
            labels,
            induced,
        });
    }
    let name_list = |idx: &[usize]| -> Vec<String> {
        idx.iter().map(|&i| data.map(|g| g.names()[i].clone()).unwrap_or_else(|| i.to_string())).collect()
    };
    Ok(EnumReport {
        name: doc.name.clone(),
        degree,
        degree_cap: ENUMERATION_DEGREE_CAP,
        normalizer: cycle_strings(&normalizer),
        decompositions: decompositions
            .iter()
            .map(|d| DecompositionEntry { j: name_list(&d.j), g_prime: name_list(&d.g_prime) })
            .collect(),
        count: found.len(),
        subgroups,
        timings: Timings { elapsed_us: 0 },
    })
}

/// Runs a parsed command and returns its report.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let start = Instant::now();
    let ring_flag = cli.ring.as_ref();
    let mut report = match &cli.command {
        Command::Check { input } => {
            let doc = read_document(input)?;
            Report::Check(check(&doc, &doc.ring(ring_flag)?)?)
        }
        Command::Order { input } => {
            let doc = read_document(input)?;
            let bundle = doc.bundle(&doc.ring(ring_flag)?)?;
            Report::Order(order_report(&doc, &doc.order(&bundle)?)?)
        }
        Command::Free { input, beta, search_bound } => {
            let doc = read_document(input)?;
            let bundle = doc.bundle(&doc.ring(ring_flag)?)?;
            let order = doc.order(&bundle)?;
            Report::Free(free(&doc, &order, beta.as_deref(), *search_bound)?)
        }
        Command::Induce { left, right, gamma, delta } => {
            let (l, r) = (read_document(left)?, read_document(right)?);
            let ring = l.ring(ring_flag)?;
            if r.ring(ring_flag)? != ring {
                return Err(CliError::Validation("ring: the two documents use different rings".into()));
            }
            let gd = gamma.as_deref().zip(delta.as_deref());
            Report::Induce(induce(&l, &r, &ring, gd)?)
        }
        Command::Enum { input, detect_induced } => {
            let doc = read_document(input)?;
            Report::Enum(enumerate(&doc, *detect_induced)?)
        }
    };
    report.timings_mut().elapsed_us = start.elapsed().as_micros() as u64;
    Ok(report)
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("reports serialize") + "\n",
        Format::Table => render_table(report),
    }
}

/// Entry point of the binary; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let text = match execute(&cli) {
        Ok(report) => render(&report, cli.format),
        Err(e) => {
            eprintln!("{e}");
            return 1;
        }
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("{}", CliError::Io(format!("{}: {e}", path.display())));
                return 1;
            }
        }
        None => print!("{text}"),
    }
    0
}
