//! Command-line front end.
//!
//! Exit codes: 0 when the input is valid or the computation succeeds, 1 when
//! the input is well formed but mathematically invalid, 2 on parse and
//! structural errors and on usage errors.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::bar_homology::{homology, nerve_category, nerve_monoid, q_category, simplicial_homology, BarError, HomologyResult};
use crate::bundle::{
    gerbe_class, pullback, rank_one_phases, refine, swap_change, validate_bundle, validate_change,
    whitney_sum, BundleError, ValidationReport,
};
use crate::exact_linalg::{smith_normal_form, AbelianGroup, Matrix};
use crate::io;
use crate::semiring::{CommutativeSemiring, Naturals, SemiMatrix};

#[derive(Parser, Debug)]
#[command(name = "twovec", version, about = "Exact checks for charted 2-vector bundles, nerves and semi-ring K-theory")]
struct Cli {
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a bundle file
    CheckBundle {
        file: PathBuf,
        /// Require this rank
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Validate the Whitney sum of two bundles and its swap change
    Whitney {
        first: PathBuf,
        second: PathBuf,
        /// Write the sum bundle here
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Validate a change of trivializations between two bundles
    CheckChange { change: PathBuf, source: PathBuf, target: PathBuf },
    /// Refine a bundle along an order-preserving carrier map
    Refine {
        bundle: PathBuf,
        carrier: PathBuf,
        /// Write the resulting bundle here
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Pull a bundle back along an order-preserving simplicial map
    Pullback {
        bundle: PathBuf,
        map: PathBuf,
        /// Write the resulting bundle here
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Class in H^3(X; Z) of a phase cocycle or of a rank-1 bundle
    GerbeClass { file: PathBuf },
    /// Homology of a simplicial complex or of the nerve of a monoid or category
    NerveHomology {
        file: PathBuf,
        /// Highest homology degree
        #[arg(long)]
        kmax: Option<usize>,
        /// Truncation degree of the nerve (default kmax + 1)
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Nerve homology of Q = B(*, M, G) for a monoid map M -> G
    QCategory {
        monoid: PathBuf,
        group: PathBuf,
        /// Table file with the map section (default: the monoid file)
        #[arg(long)]
        map: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        kmax: usize,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Whether a square matrix lies in GL_n of a semi-ring
    GlMember {
        matrix: PathBuf,
        /// Finite semi-ring table (default: the natural numbers)
        #[arg(long)]
        semiring: Option<PathBuf>,
    },
    /// Grothendieck group of a semi-ring (default: the natural numbers)
    K0 { semiring: Option<PathBuf> },
    /// Smith normal form of an integer matrix
    Snf { matrix: PathBuf },
}

/// Everything an invocation produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    code: i32,
    text: String,
    data: Value,
}

impl Report {
    fn ok(text: String, data: Value) -> Self {
        Report { code: 0, text, data }
    }
}

/// Failure before a mathematical verdict could be reached; exit code 2.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type CmdResult = Result<Report, Failure>;

pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let name = command_name(&cli.command);
    match dispatch(cli.command) {
        Ok(report) => {
            let stdout = match cli.format {
                Format::Text => report.text,
                Format::Structured => {
                    let mut data = json!({ "command": name, "exit": report.code });
                    data.as_object_mut()
                        .expect("object")
                        .extend(report.data.as_object().cloned().unwrap_or_default());
                    pretty(&data)
                }
            };
            Outcome {
                code: report.code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(Failure(msg)) => Outcome {
            code: 2,
            stdout: match cli.format {
                Format::Text => String::new(),
                Format::Structured => pretty(&json!({ "command": name, "exit": 2, "error": msg })),
            },
            stderr: format!("error: {msg}\n"),
        },
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::CheckBundle { .. } => "check-bundle",
        Command::Whitney { .. } => "whitney",
        Command::CheckChange { .. } => "check-change",
        Command::Refine { .. } => "refine",
        Command::Pullback { .. } => "pullback",
        Command::GerbeClass { .. } => "gerbe-class",
        Command::NerveHomology { .. } => "nerve-homology",
        Command::QCategory { .. } => "q-category",
        Command::GlMember { .. } => "gl-member",
        Command::K0 { .. } => "k0",
        Command::Snf { .. } => "snf",
    }
}

fn dispatch(command: Command) -> CmdResult {
    match command {
        Command::CheckBundle { file, rank } => check_bundle(&file, rank),
        Command::Whitney { first, second, output } => whitney(&first, &second, output.as_deref()),
        Command::CheckChange { change, source, target } => check_change(&change, &source, &target),
        Command::Refine { bundle, carrier, output } => transport(&bundle, &carrier, output.as_deref(), true),
        Command::Pullback { bundle, map, output } => transport(&bundle, &map, output.as_deref(), false),
        Command::GerbeClass { file } => gerbe(&file),
        Command::NerveHomology { file, kmax, max_degree } => nerve_homology(&file, kmax, max_degree),
        Command::QCategory {
            monoid,
            group,
            map,
            kmax,
            max_degree,
        } => q(&monoid, &group, map.as_deref(), kmax, max_degree),
        Command::GlMember { matrix, semiring } => gl_member(&matrix, semiring.as_deref()),
        Command::K0 { semiring } => k0(semiring.as_deref()),
        Command::Snf { matrix } => snf(&matrix),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))
}

fn located<T>(path: &Path, r: Result<T, io::IoError>) -> Result<T, Failure> {
    r.map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure(format!("cannot write {}: {e}", path.display())))
}

fn report_json(report: &ValidationReport) -> Value {
    let findings: Vec<Value> = report
        .findings()
        .iter()
        .map(|f| json!({ "simplex": f.simplex, "message": f.to_string() }))
        .collect();
    json!({ "valid": report.is_valid(), "findings": findings })
}

fn verdict(reports: &[(&str, &ValidationReport)]) -> Report {
    let mut text = String::new();
    let mut data = serde_json::Map::new();
    for (label, r) in reports {
        let body = r.to_string();
        if label.is_empty() {
            text.push_str(&body);
        } else {
            for line in body.lines() {
                text.push_str(&format!("{label}: {line}\n"));
            }
        }
        data.insert(if label.is_empty() { "report".into() } else { label.to_string() }, report_json(r));
    }
    let valid = reports.iter().all(|(_, r)| r.is_valid());
    Report {
        code: if valid { 0 } else { 1 },
        text,
        data: Value::Object(data),
    }
}

fn check_bundle(file: &Path, rank: Option<usize>) -> CmdResult {
    let bundle = located(file, io::parse_bundle(&read(file)?))?;
    if let Some(r) = rank {
        if bundle.rank() != r {
            return Err(Failure(format!("{}: bundle has rank {}, expected {r}", file.display(), bundle.rank())));
        }
    }
    Ok(verdict(&[("", &validate_bundle(&bundle))]))
}

fn whitney(first: &Path, second: &Path, output: Option<&Path>) -> CmdResult {
    let e = located(first, io::parse_bundle(&read(first)?))?;
    let f = located(second, io::parse_bundle(&read(second)?))?;
    let sum = whitney_sum(&e, &f)?;
    let flipped = whitney_sum(&f, &e)?;
    let swap = swap_change(&e, &f)?;
    let sum_report = validate_bundle(&sum);
    let swap_report = validate_change(&swap, &sum, &flipped)?;
    if let Some(out) = output {
        write(out, &io::bundle_to_json(&sum))?;
    }
    Ok(verdict(&[("sum", &sum_report), ("swap", &swap_report)]))
}

fn check_change(change: &Path, source: &Path, target: &Path) -> CmdResult {
    let e = located(source, io::parse_bundle(&read(source)?))?;
    let f = located(target, io::parse_bundle(&read(target)?))?;
    let c = located(change, io::parse_change(&read(change)?, &e))?;
    Ok(verdict(&[("", &validate_change(&c, &e, &f)?)]))
}

fn transport(bundle: &Path, map: &Path, output: Option<&Path>, is_refinement: bool) -> CmdResult {
    let b = located(bundle, io::parse_bundle(&read(bundle)?))?;
    let f = located(map, io::parse_map(&read(map)?))?;
    let result = if is_refinement { refine(&b, &f) } else { pullback(&b, &f) };
    let moved = match result {
        Ok(m) => m,
        Err(e @ (BundleError::NotOrderPreserving(_) | BundleError::NotSimplicial(_))) => {
            return Ok(Report {
                code: 1,
                text: format!("REJECTED: {e}\n"),
                data: json!({ "valid": false, "error": e.to_string() }),
            })
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(out) = output {
        write(out, &io::bundle_to_json(&moved))?;
    }
    Ok(verdict(&[("", &validate_bundle(&moved))]))
}

fn gerbe(file: &Path) -> CmdResult {
    let text = read(file)?;
    let phi = if io::is_bundle_json(&text) {
        let b = located(file, io::parse_bundle(&text))?;
        rank_one_phases(&b)?
    } else {
        located(file, io::parse_phases(&text))?
    };
    match gerbe_class(&phi) {
        Ok(class) => Ok(Report::ok(
            format!("{class}\n"),
            json!({
                "group": class.0.group.to_string(),
                "coordinates": class.0.coordinates.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "zero": class.is_zero(),
            }),
        )),
        Err(BundleError::NotClosed(t)) => Ok(Report {
            code: 1,
            text: format!("NOT CLOSED at tetrahedron {t}\n"),
            data: json!({ "closed": false, "tetrahedron": t }),
        }),
        Err(e) => Err(e.into()),
    }
}

fn homology_report(h: &HomologyResult, mut data: Value) -> Report {
    data["homology"] = h.groups.iter().map(|g| Value::String(g.to_string())).collect();
    Report::ok(h.to_string(), data)
}

fn truncation(kmax: usize, max_degree: Option<usize>) -> Result<usize, Failure> {
    let bound = max_degree.unwrap_or(kmax + 1);
    if bound <= kmax {
        return Err(BarError::Range { kmax, bound }.into());
    }
    Ok(bound)
}

fn nerve_homology(file: &Path, kmax: Option<usize>, max_degree: Option<usize>) -> CmdResult {
    let text = read(file)?;
    if text.trim_start().starts_with('{') {
        let complex = located(file, io::parse_complex(&text))?;
        let kmax = kmax.unwrap_or(complex.dimension().unwrap_or(0));
        let h = simplicial_homology(&complex, kmax);
        return Ok(homology_report(&h, json!({ "input": "complex" })));
    }
    let table = located(file, io::Table::parse(&text))?;
    let kmax = kmax.unwrap_or(3);
    let bound = truncation(kmax, max_degree)?;
    let (nerve, input) = if table.has("objects") {
        (nerve_category(&located(file, io::category_from_table(&table))?, bound), "category")
    } else if table.has("unit") {
        (nerve_monoid(&located(file, io::monoid_from_table(&table))?, bound), "monoid")
    } else {
        return Err(Failure(format!(
            "{}: expected a JSON complex, or a table with 'objects' or 'unit'",
            file.display()
        )));
    };
    let h = homology(&nerve, kmax)?;
    Ok(homology_report(&h, json!({ "input": input, "max_degree": bound })))
}

fn q(monoid: &Path, group: &Path, map: Option<&Path>, kmax: usize, max_degree: Option<usize>) -> CmdResult {
    let mt = located(monoid, io::Table::parse(&read(monoid)?))?;
    let gt = located(group, io::Table::parse(&read(group)?))?;
    let m = located(monoid, io::monoid_from_table(&mt))?;
    let g = located(group, io::monoid_from_table(&gt))?;
    let f = match map {
        Some(p) => located(p, io::monoid_map_from_table(&located(p, io::Table::parse(&read(p)?))?, &m, &g))?,
        None => located(monoid, io::monoid_map_from_table(&mt, &m, &g))?,
    };
    let bound = truncation(kmax, max_degree)?;
    let cat = match q_category(&m, &g, &f) {
        Ok(c) => c,
        Err(e @ (BarError::NotHomomorphism { .. } | BarError::NotGroup)) => {
            return Ok(Report {
                code: 1,
                text: format!("REJECTED: {e}\n"),
                data: json!({ "error": e.to_string() }),
            })
        }
        Err(e) => return Err(e.into()),
    };
    let h = homology(&nerve_category(&cat, bound), kmax)?;
    let mut report = homology_report(
        &h,
        json!({ "objects": cat.objects().len(), "morphisms": cat.morphisms().len(), "max_degree": bound }),
    );
    report.text = format!(
        "objects = {}\nmorphisms = {}\n{}",
        cat.objects().len(),
        cat.morphisms().len(),
        report.text
    );
    Ok(report)
}

fn membership(member: bool) -> Report {
    Report {
        code: if member { 0 } else { 1 },
        text: if member { "MEMBER\n" } else { "NOT A MEMBER\n" }.to_string(),
        data: json!({ "member": member }),
    }
}

fn gl_member(matrix: &Path, semiring: Option<&Path>) -> CmdResult {
    let text = read(matrix)?;
    let rows = located(matrix, io::parse_token_matrix(&text))?;
    if rows.len() != rows[0].len() {
        return Err(Failure(format!("{}: matrix is not square", matrix.display())));
    }
    match semiring {
        None => {
            let m = located(matrix, io::parse_nat_matrix(&text))?;
            let m = SemiMatrix::<BigUint>::from_rows(m.to_rows())?;
            Ok(membership(Naturals.is_weakly_invertible(&m)))
        }
        Some(path) => {
            let ring = located(path, io::semiring_from_table(&located(path, io::Table::parse(&read(path)?))?))?;
            let mut idx = Vec::with_capacity(rows.len());
            for (i, row) in rows.iter().enumerate() {
                let r: Result<Vec<usize>, Failure> = row
                    .iter()
                    .map(|t| {
                        ring.index_of(t)
                            .ok_or_else(|| Failure(format!("{}: row {}: unknown element {t:?}", matrix.display(), i + 1)))
                    })
                    .collect();
                idx.push(r?);
            }
            Ok(membership(ring.is_weakly_invertible(&SemiMatrix::from_rows(idx)?)))
        }
    }
}

fn k0(semiring: Option<&Path>) -> CmdResult {
    let group = match semiring {
        None => Naturals.k0(),
        Some(path) => located(path, io::semiring_from_table(&located(path, io::Table::parse(&read(path)?))?))?.k0(),
    };
    Ok(Report::ok(format!("K0 = {group}\n"), json!({ "k0": group.to_string() })))
}

fn matrix_json(m: &Matrix<num_bigint::BigInt>) -> Value {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|x| Value::String(x.to_string())).collect::<Vec<_>>())
        .collect()
}

fn snf(matrix: &Path) -> CmdResult {
    let a = located(matrix, io::parse_int_matrix(&read(matrix)?))?;
    let s = smith_normal_form(&a);
    let factors: Vec<String> = s.diagonal().iter().map(|x| x.to_string()).collect();
    let text = format!(
        "invariant factors = [{}]\nrank = {}\ncokernel = {}\nD = {}\nU = {}\nV = {}\n",
        factors.join(", "),
        s.rank(),
        AbelianGroup::cokernel(&a),
        s.d,
        s.u,
        s.v
    );
    Ok(Report::ok(
        text,
        json!({
            "invariant_factors": factors,
            "rank": s.rank(),
            "D": matrix_json(&s.d),
            "U": matrix_json(&s.u),
            "V": matrix_json(&s.v),
        }),
    ))
}
