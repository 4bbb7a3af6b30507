//! Command-line front end.
//!
//! Exit codes: 0 success, 1 failed verification, 2 usage or parse error,
//! 3 violated precondition, 4 budget exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::atlas::{build_atlas, to_csv, to_json};
use crate::clifford::{algebra_dimension, CliffordElement};
use crate::error::Error;
use crate::forms::{classify, Form, TypeTag};
use crate::gf::make_field;
use crate::groups::{group_kind, kernel_subgroups, GroupHandle, Isometry};
use crate::io::{parse_json, ElementDescriptor, FormClassJson, FormDescriptor, GroupReportJson, InvariantsJson, SubgroupJson};
use crate::linalg::Vector;
use crate::verify::{run_suite, Suite, SuiteReport, VerifyConfig};

#[derive(Parser, Debug)]
#[command(name = "orthofq", version, about = "Forms and orthogonal groups over finite fields")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Maximum number of group elements to enumerate.
    #[arg(long, global = true, env = "ORTHO_BUDGET", default_value_t = crate::groups::DEFAULT_BUDGET)]
    pub budget: u64,
    /// Seed for randomized sampling in verification suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Accept field descriptors whose modulus is not the canonical one.
    #[arg(long, global = true)]
    pub allow_custom_modulus: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify a form: type, Witt index, discriminant or Arf invariant.
    Classify {
        #[arg(long)]
        form: PathBuf,
    },
    /// Determinant, Dickson invariant and spinor norm of an isometry.
    Invariants {
        /// Element file: {"form": {...}, "matrix": [[...]]}.
        #[arg(long)]
        form: PathBuf,
    },
    /// Table of orthogonal groups over GF(p^k) up to dimension nmax.
    Atlas {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, alias = "n")]
        nmax: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite, or `all`.
    Verify { suite: String },
    /// Order and kernel subgroups of the group of a form.
    Group {
        #[arg(long, conflicts_with_all = ["p", "k", "n", "type_tag"])]
        form: Option<PathBuf>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long)]
        n: Option<usize>,
        /// plus, minus or odd; defaults to odd for odd n.
        #[arg(long = "type")]
        type_tag: Option<String>,
    },
    /// Check the Clifford algebra of a quadratic form.
    Clifford {
        #[arg(long)]
        form: PathBuf,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// A command failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => 2,
            Error::BudgetExceeded { .. } => 4,
            _ => 3,
        };
        let message = match code {
            2 => format!("parse error: {e}"),
            4 => format!("{e}"),
            _ => format!("precondition violated ({e:?}): {e}"),
        };
        Failure { code, message }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: 2, message: msg.into() }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn to_json_string<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn load_form(path: &Path, opts: &GlobalOpts) -> Result<Form, Failure> {
    let d: FormDescriptor = parse_json(&read(path)?)?;
    Ok(d.resolve(opts.allow_custom_modulus)?)
}

/// Successful output on stdout plus the exit code.
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

pub fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    let opts = &cli.global;
    let ok = |stdout: String| Ok(Outcome { stdout, code: 0 });
    match &cli.command {
        Command::Classify { form } => {
            let form = load_form(form, opts)?;
            ok(to_json_string(&FormClassJson::from(&classify(&form)?)))
        }
        Command::Invariants { form } => {
            let d: ElementDescriptor = parse_json(&read(form)?)?;
            let (form, m) = d.resolve(opts.allow_custom_modulus)?;
            let g = Isometry::new(Arc::new(form), m)?;
            let det = g.det_sign();
            let spinor = if det == Some(1) { Some(g.spinor()?) } else { None };
            ok(to_json_string(&InvariantsJson { det, dickson: g.dickson(), spinor }))
        }
        Command::Atlas { p, k, nmax, format, out } => {
            if *nmax < 2 {
                return Err(usage(format!("--nmax must be at least 2, got {nmax}")));
            }
            let field = make_field(*p, *k)?;
            let rows = build_atlas(field, *nmax, opts.budget)?;
            let text = match format {
                Format::Csv => to_csv(&rows)?,
                Format::Json => to_json(&rows)?,
            };
            match out {
                Some(path) => {
                    fs::write(path, &text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
                    ok(String::new())
                }
                None => ok(text),
            }
        }
        Command::Verify { suite } => {
            let cfg = VerifyConfig { budget: opts.budget, seed: opts.seed };
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse::<Suite>().map_err(|e| usage(e.to_string()))?]
            };
            let reports: Vec<SuiteReport> = suites.iter().map(|&s| run_suite(s, &cfg)).collect::<Result<_, _>>()?;
            let code = if reports.iter().all(|r| r.passed) { 0 } else { 1 };
            let stdout = if reports.len() == 1 { to_json_string(&reports[0]) } else { to_json_string(&reports) };
            Ok(Outcome { stdout, code })
        }
        Command::Group { form, p, k, n, type_tag } => {
            let form = match (form, p, n) {
                (Some(path), _, _) => load_form(path, opts)?,
                (None, Some(p), Some(n)) => {
                    let tag = match type_tag {
                        Some(t) => t.parse::<TypeTag>().map_err(|e| usage(e.to_string()))?,
                        None if n % 2 == 1 => TypeTag::OddDim,
                        None => return Err(usage("--type plus|minus is required for even n")),
                    };
                    crate::forms::standard_form(make_field(*p, *k)?, *n, tag)?
                }
                _ => return Err(usage("give --form FILE or --p P --n N [--type plus|minus]")),
            };
            let n = form.dim();
            let field = form.field();
            let g = GroupHandle::with_budget(form, opts.budget)?;
            let cell = match g.kind() {
                crate::groups::GroupKind::Orthogonal => group_kind(n, field, g.form())?.to_string(),
                crate::groups::GroupKind::Symplectic => format!("Sp({n})"),
            };
            let order = g.elements()?.len() as u128;
            let subgroups = match g.kind() {
                crate::groups::GroupKind::Orthogonal => kernel_subgroups(&g)?.iter().map(SubgroupJson::from).collect(),
                crate::groups::GroupKind::Symplectic => Vec::new(),
            };
            ok(to_json_string(&GroupReportJson { kind: g.kind(), cell, type_tag: g.type_tag(), order, subgroups }))
        }
        Command::Clifford { form } => {
            let Form::Quadratic(q) = load_form(form, opts)? else {
                return Err(Failure::from(Error::KindMismatch));
            };
            let q = Arc::new(q);
            let dim = algebra_dimension(&q)?;
            let n = q.dim();
            let field = q.field();
            let total = (field.order() as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
            if total > opts.budget {
                return Err(Error::BudgetExceeded { what: format!("{total} vectors"), budget: opts.budget }.into());
            }
            let squares = (0..total).all(|r| {
                let v = Vector::from_rank(field, n, r);
                let e = CliffordElement::embed_vector(&q, &v).expect("same field");
                e.mul(&e).expect("same form") == CliffordElement::one(&q).scale(q.eval(&v).expect("same field"))
            });
            #[derive(Serialize)]
            struct CliffordReport {
                dimension: usize,
                expected: usize,
                squares_checked: u64,
                squares_ok: bool,
            }
            let report = CliffordReport { dimension: dim, expected: 1 << n, squares_checked: total, squares_ok: squares };
            let code = if squares && dim == 1 << n { 0 } else { 1 };
            Ok(Outcome { stdout: to_json_string(&report), code })
        }
    }
}

/// Parses the process arguments, runs the command and maps the result onto
/// an exit code.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(out) => {
            if !out.stdout.is_empty() {
                println!("{}", out.stdout);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
