//! Command-line front end: parse algebra/structure/cochain files, run
//! bracket and prolongation operations, compute cohomology reports, and
//! drive the randomized verification suites.
//!
//! Exit codes: 0 success, 1 mathematical failure (with witness), 2
//! usage or parse error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use weilpois::cochain::{BaseComplex, ComplexKind, MixedComplex, SignConvention, WeilComplex};
use weilpois::error::Error;
use weilpois::homology::{
    betti, center_report, h1_report, BettiReport, Truncation, DEFAULT_BASIS_CAP,
};
use weilpois::poisson::PoissonStructure;
use weilpois::poly::{eval_a, prolong_function, APoint, APoly, Poly};
use weilpois::rat::{format_rat, parse_rat, rint, Rat};
use weilpois::spec_io::{
    base_to_spec, from_json, mixed_to_spec, to_json, weil_to_spec, AlgebraSpec, CochainSpec,
    PoissonSpec,
};
use weilpois::textform::{parse_apoly, parse_poly};
use weilpois::verify::{run_suite, VerifyOpts, SUITES};
use weilpois::weil::{AlgebraRef, WeilAlgebra, WeilElement};

#[derive(Parser)]
#[command(
    name = "weilpois",
    version,
    about = "Exact Poisson geometry on Weil bundles: brackets, prolongation, cohomology"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ComplexArg {
    Base,
    Mixed,
    Weil,
}

impl ComplexArg {
    fn kind(self) -> ComplexKind {
        match self {
            ComplexArg::Base => ComplexKind::Base,
            ComplexArg::Mixed => ComplexKind::Mixed,
            ComplexArg::Weil => ComplexKind::Weil,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportKind {
    Betti,
    Center,
    H1,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a Weil-algebra file and print dim, height and basis.
    Algebra {
        /// Algebra spec file (JSON).
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate an A-valued polynomial at a point of the bundle.
    Eval {
        /// Polynomial expression, e.g. "x1^2+3*x2" or "(1+e1)*x1".
        expr: String,
        /// Point coordinates as a JSON array; each entry is a rational
        /// string or an array of dim(A) rational strings.
        #[arg(long)]
        at: String,
        #[arg(long)]
        algebra: Option<PathBuf>,
        #[arg(long)]
        structure: Option<PathBuf>,
        /// Comma-separated variable names (defaults to the structure's).
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Poisson bracket of two functions; A-valued when --algebra is given.
    Bracket {
        f: String,
        g: String,
        /// Poisson structure file (JSON).
        #[arg(long)]
        structure: PathBuf,
        /// Weil algebra file: compute the lifted bracket {f,g}_A.
        #[arg(long)]
        algebra: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify the Jacobi identity of a structure file.
    Jacobi {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Prolong a polynomial function to the Weil bundle.
    Prolong {
        expr: String,
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        structure: Option<PathBuf>,
        /// Comma-separated variable names (defaults to the structure's).
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply the coboundary operator to a cochain file.
    Diff {
        /// Cochain file (JSON) carrying its complex kind and degree.
        #[arg(long)]
        cochain: PathBuf,
        #[arg(long)]
        structure: PathBuf,
        /// Required for mixed/weil cochains.
        #[arg(long)]
        algebra: Option<PathBuf>,
        /// Optional check that the file matches this complex kind.
        #[arg(long, value_enum)]
        complex: Option<ComplexArg>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Degree-truncated Poisson cohomology reports.
    Cohomology {
        #[arg(long)]
        structure: PathBuf,
        /// Required for the mixed and weil complexes.
        #[arg(long)]
        algebra: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "base")]
        complex: ComplexArg,
        /// Coefficient degree truncation D.
        #[arg(long, default_value_t = 3)]
        degree: usize,
        /// Largest cochain degree p in the table.
        #[arg(long, default_value_t = 2)]
        pmax: usize,
        #[arg(long, value_enum, default_value = "betti")]
        report: ReportKind,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run randomized verification suites (deterministic per seed).
    Verify {
        /// One of: weil, prolong, poisson, complexes, homology, all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Test hook: negate the first coboundary sum. The nilpotency
        /// checks must then fail.
        #[arg(long, hide = true)]
        miswire_sign: bool,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failure with the exit code it maps to.
enum Failure {
    /// Exit 2: bad usage, unreadable or unparseable input.
    Usage(String),
    /// Exit 1: the mathematics failed validation; message is the witness.
    Math(String),
}

fn classify(e: Error) -> Failure {
    match e {
        Error::Parse(_) => Failure::Usage(e.to_string()),
        other => Failure::Math(other.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(Outcome { text, out, code }) => {
            if let Some(path) = out {
                if let Err(e) = std::fs::write(&path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{text}");
            }
            ExitCode::from(code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

struct Outcome {
    text: String,
    out: Option<PathBuf>,
    code: u8,
}

fn run(cmd: Cmd) -> Result<Outcome, Failure> {
    match cmd {
        Cmd::Algebra {
            algebra,
            format,
            out,
        } => cmd_algebra(&algebra, format.unwrap_or(Format::Json), out),
        Cmd::Eval {
            expr,
            at,
            algebra,
            structure,
            vars,
            format,
            out,
        } => cmd_eval(
            &expr,
            &at,
            algebra.as_deref(),
            structure.as_deref(),
            vars,
            format.unwrap_or(Format::Text),
            out,
        ),
        Cmd::Bracket {
            f,
            g,
            structure,
            algebra,
            format,
            out,
        } => cmd_bracket(
            &f,
            &g,
            &structure,
            algebra.as_deref(),
            format.unwrap_or(Format::Text),
            out,
        ),
        Cmd::Jacobi {
            structure,
            format,
            out,
        } => cmd_jacobi(&structure, format.unwrap_or(Format::Text), out),
        Cmd::Prolong {
            expr,
            algebra,
            structure,
            vars,
            format,
            out,
        } => cmd_prolong(
            &expr,
            &algebra,
            structure.as_deref(),
            vars,
            format.unwrap_or(Format::Text),
            out,
        ),
        Cmd::Diff {
            cochain,
            structure,
            algebra,
            complex,
            format,
            out,
        } => cmd_diff(
            &cochain,
            &structure,
            algebra.as_deref(),
            complex,
            format.unwrap_or(Format::Json),
            out,
        ),
        Cmd::Cohomology {
            structure,
            algebra,
            complex,
            degree,
            pmax,
            report,
            format,
            out,
        } => cmd_cohomology(
            &structure,
            algebra.as_deref(),
            complex,
            degree,
            pmax,
            report,
            format.unwrap_or(Format::Json),
            out,
        ),
        Cmd::Verify {
            suite,
            seed,
            miswire_sign,
            format,
            out,
        } => cmd_verify(
            &suite,
            seed,
            miswire_sign,
            format.unwrap_or(Format::Text),
            out,
        ),
    }
}

// ---------------------------------------------------------------------------
// File loading
// ---------------------------------------------------------------------------

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<AlgebraRef, Failure> {
    let text = read_file(path)?;
    let spec: AlgebraSpec = from_json(&text).map_err(classify)?;
    spec.build().map_err(classify)
}

fn load_structure(path: &Path) -> Result<PoissonStructure, Failure> {
    let text = read_file(path)?;
    let spec: PoissonSpec = from_json(&text).map_err(classify)?;
    spec.build().map_err(classify)
}

fn load_cochain(path: &Path) -> Result<CochainSpec, Failure> {
    let text = read_file(path)?;
    from_json(&text).map_err(classify)
}

// ---------------------------------------------------------------------------
// algebra
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct AlgebraReport {
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    height: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    basis: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
}

fn cmd_algebra(path: &Path, format: Format, out: Option<PathBuf>) -> Result<Outcome, Failure> {
    let text = read_file(path)?;
    let spec: AlgebraSpec = from_json(&text).map_err(classify)?;
    match spec.build() {
        Ok(a) => {
            let report = AlgebraReport {
                valid: true,
                name: Some(a.name().to_string()),
                dim: Some(a.dim()),
                height: Some(a.height()),
                basis: Some(a.labels().to_vec()),
                witness: None,
            };
            let text = match format {
                Format::Json => to_json(&report),
                Format::Text => format!(
                    "algebra {} is valid: dim {}, height {}, basis {}\n",
                    a.name(),
                    a.dim(),
                    a.height(),
                    a.labels().join(" ")
                ),
            };
            Ok(Outcome {
                text,
                out,
                code: 0,
            })
        }
        Err(e @ Error::Parse(_)) => Err(classify(e)),
        Err(e) => {
            let report = AlgebraReport {
                valid: false,
                name: None,
                dim: None,
                height: None,
                basis: None,
                witness: Some(e.to_string()),
            };
            let text = match format {
                Format::Json => to_json(&report),
                Format::Text => format!("algebra is invalid: {e}\n"),
            };
            Ok(Outcome {
                text,
                out,
                code: 1,
            })
        }
    }
}

// ---------------------------------------------------------------------------
// eval / bracket / jacobi / prolong
// ---------------------------------------------------------------------------

fn resolve_vars(
    vars: Option<Vec<String>>,
    structure: Option<&Path>,
) -> Result<Vec<String>, Failure> {
    if let Some(v) = vars {
        if v.is_empty() {
            return Err(Failure::Usage("--vars must name at least one variable".into()));
        }
        return Ok(v);
    }
    if let Some(path) = structure {
        return Ok(load_structure(path)?.vars().to_vec());
    }
    Err(Failure::Usage(
        "variable names required: pass --vars or --structure".into(),
    ))
}

fn parse_point(algebra: &AlgebraRef, json: &str, nvars: usize) -> Result<APoint, Failure> {
    let value: serde_json::Value = serde_json::from_str(json)
        .map_err(|e| Failure::Usage(format!("--at is not valid JSON: {e}")))?;
    let entries = value
        .as_array()
        .ok_or_else(|| Failure::Usage("--at must be a JSON array of coordinates".into()))?;
    if entries.len() != nvars {
        return Err(Failure::Usage(format!(
            "--at has {} coordinates but the expression uses {nvars} variables",
            entries.len()
        )));
    }
    let mut coords = Vec::with_capacity(entries.len());
    for (i, entry) in entries.iter().enumerate() {
        let elem = match entry {
            serde_json::Value::String(s) => {
                let r = parse_rat(s).map_err(classify)?;
                let mut coeffs = vec![rint(0); algebra.dim()];
                coeffs[0] = r;
                WeilElement::from_coeffs(algebra, coeffs).map_err(classify)?
            }
            serde_json::Value::Array(parts) => {
                let coeffs: Vec<Rat> = parts
                    .iter()
                    .map(|p| {
                        p.as_str()
                            .ok_or_else(|| {
                                Failure::Usage(format!(
                                    "coordinate {} must contain rational strings",
                                    i + 1
                                ))
                            })
                            .and_then(|s| parse_rat(s).map_err(classify))
                    })
                    .collect::<Result<_, _>>()?;
                WeilElement::from_coeffs(algebra, coeffs).map_err(classify)?
            }
            _ => {
                return Err(Failure::Usage(format!(
                    "coordinate {} must be a rational string or an array of them",
                    i + 1
                )))
            }
        };
        coords.push(elem);
    }
    APoint::new(algebra, coords).map_err(classify)
}

#[derive(Serialize)]
struct EvalReport {
    value: String,
    coeffs: Vec<String>,
}

fn cmd_eval(
    expr: &str,
    at: &str,
    algebra: Option<&Path>,
    structure: Option<&Path>,
    vars: Option<Vec<String>>,
    format: Format,
    out: Option<PathBuf>,
) -> Result<Outcome, Failure> {
    let vars = resolve_vars(vars, structure)?;
    let a = match algebra {
        Some(p) => load_algebra(p)?,
        None => WeilAlgebra::real(),
    };
    let phi: APoly = parse_apoly(&a, &vars, expr).map_err(classify)?;
    let point = parse_point(&a, at, vars.len())?;
    let value = eval_a(&phi, &point).map_err(classify)?;
    let text = match format {
        Format::Json => to_json(&EvalReport {
            value: value.to_string(),
            coeffs: value.coeffs().iter().map(format_rat).collect(),
        }),
        Format::Text => format!("{value}\n"),
    };
    Ok(Outcome {
        text,
        out,
        code: 0,
    })
}

#[derive(Serialize)]
struct BracketReport {
    structure: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    algebra: Option<String>,
    result: String,
}

fn cmd_bracket(
    f: &str,
    g: &str,
    structure: &Path,
    algebra: Option<&Path>,
    format: Format,
    out: Option<PathBuf>,
) -> Result<Outcome, Failure> {
    let pi = load_structure(structure)?;
    let vars = pi.vars().to_vec();
    let (result, algebra_name) = match algebra {
        Some(path) => {
            let a = load_algebra(path)?;
            let phi = parse_apoly(&a, &vars, f).map_err(classify)?;
            let psi = parse_apoly(&a, &vars, g).map_err(classify)?;
            let br = pi.bracket_a(&phi, &psi).map_err(classify)?;
            (br.format_with(&vars), Some(a.name().to_string()))
        }
        None => {
            let pf = parse_poly(&vars, f).map_err(classify)?;
            let pg = parse_poly(&vars, g).map_err(classify)?;
            let br = pi.bracket(&pf, &pg).map_err(classify)?;
            (br.format_with(&vars), None)
        }
    };
    let text = match format {
        Format::Json => to_json(&BracketReport {
            structure: pi.describe(),
            algebra: algebra_name,
            result,
        }),
        Format::Text => format!("{result}\n"),
    };
    Ok(Outcome {
        text,
        out,
        code: 0,
    })
}

#[derive(Serialize)]
struct JacobiReport {
    structure: String,
    holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
}

fn cmd_jacobi(structure: &Path, format: Format, out: Option<PathBuf>) -> Result<Outcome, Failure> {
    let pi = load_structure(structure)?;
    let (holds, witness) = match pi.jacobi_check() {
        Ok(()) => (true, None),
        Err(w) => (false, Some(w.to_string())),
    };
    let text = match format {
        Format::Json => to_json(&JacobiReport {
            structure: pi.describe(),
            holds,
            witness: witness.clone(),
        }),
        Format::Text => match &witness {
            None => format!("Jacobi identity holds for {}\n", pi.describe()),
            Some(w) => format!("Jacobi identity fails for {}: {w}\n", pi.describe()),
        },
    };
    Ok(Outcome {
        text,
        out,
        code: if holds { 0 } else { 1 },
    })
}

#[derive(Serialize)]
struct ProlongReport {
    algebra: String,
    result: String,
}

fn cmd_prolong(
    expr: &str,
    algebra: &Path,
    structure: Option<&Path>,
    vars: Option<Vec<String>>,
    format: Format,
    out: Option<PathBuf>,
) -> Result<Outcome, Failure> {
    let vars = resolve_vars(vars, structure)?;
    let a = load_algebra(algebra)?;
    let f: Poly = parse_poly(&vars, expr).map_err(classify)?;
    let lifted = prolong_function(&f, &a);
    let result = lifted.format_with(&vars);
    let text = match format {
        Format::Json => to_json(&ProlongReport {
            algebra: a.name().to_string(),
            result,
        }),
        Format::Text => format!("{result}\n"),
    };
    Ok(Outcome {
        text,
        out,
        code: 0,
    })
}

// ---------------------------------------------------------------------------
// diff
// ---------------------------------------------------------------------------

fn cmd_diff(
    cochain: &Path,
    structure: &Path,
    algebra: Option<&Path>,
    complex: Option<ComplexArg>,
    format: Format,
    out: Option<PathBuf>,
) -> Result<Outcome, Failure> {
    let spec = load_cochain(cochain)?;
    if let Some(arg) = complex {
        if arg.kind() != spec.complex {
            return Err(Failure::Usage(format!(
                "--complex {} does not match the file's kind `{}`",
                arg.kind(),
                spec.complex
            )));
        }
    }
    let pi = load_structure(structure)?;
    let need_algebra = || -> Result<AlgebraRef, Failure> {
        match algebra {
            Some(p) => load_algebra(p),
            None => Err(Failure::Usage(format!(
                "--algebra is required for {} cochains",
                spec.complex
            ))),
        }
    };
    let sign = SignConvention::Standard;
    let (result, rendered) = match spec.complex {
        ComplexKind::Base => {
            let cx = BaseComplex::new(pi);
            let mv = spec.build_base(&cx).map_err(classify)?;
            let d = mv.coboundary(&cx, sign).map_err(classify)?;
            (base_to_spec(&cx, &d), render_cochain_text(&cx, &d))
        }
        ComplexKind::Mixed => {
            let a = need_algebra()?;
            let cx = MixedComplex::new(pi, &a);
            let mv = spec.build_mixed(&cx).map_err(classify)?;
            let d = mv.coboundary(&cx, sign).map_err(classify)?;
            (mixed_to_spec(&cx, &d), render_cochain_text(&cx, &d))
        }
        ComplexKind::Weil => {
            let a = need_algebra()?;
            let cx = WeilComplex::new(pi, &a);
            let mv = spec.build_weil(&cx).map_err(classify)?;
            let d = mv.coboundary(&cx, sign).map_err(classify)?;
            (weil_to_spec(&cx, &d), render_cochain_text(&cx, &d))
        }
    };
    let text = match format {
        Format::Json => to_json(&result),
        Format::Text => rendered,
    };
    Ok(Outcome {
        text,
        out,
        code: 0,
    })
}

fn render_cochain_text<C: weilpois::cochain::Complex>(
    cx: &C,
    mv: &weilpois::cochain::MultiVector<C>,
) -> String {
    use weilpois::spec_io::format_index_key;
    let mut lines: Vec<String> = mv
        .entries()
        .map(|(idx, val)| format!("[{}] {}", format_index_key(idx), cx.format_val(val)))
        .collect();
    lines.sort();
    if lines.is_empty() {
        lines.push("0".to_string());
    }
    let mut text = format!("degree {} cochain on the {} complex:\n", mv.degree(), cx.kind());
    for l in &lines {
        text.push_str(l);
        text.push('\n');
    }
    text
}

// ---------------------------------------------------------------------------
// cohomology
// ---------------------------------------------------------------------------

#[allow(clippy::too_many_arguments)]
fn cmd_cohomology(
    structure: &Path,
    algebra: Option<&Path>,
    complex: ComplexArg,
    degree: usize,
    pmax: usize,
    report: ReportKind,
    format: Format,
    out: Option<PathBuf>,
) -> Result<Outcome, Failure> {
    let pi = load_structure(structure)?;
    let algebra = match (complex, algebra) {
        (ComplexArg::Base, _) => WeilAlgebra::real(),
        (_, Some(p)) => load_algebra(p)?,
        (_, None) => {
            return Err(Failure::Usage(
                "--algebra is required for the mixed and weil complexes".into(),
            ))
        }
    };
    let sign = SignConvention::Standard;
    let trunc = Truncation::new(pmax, degree);
    match report {
        ReportKind::Betti => {
            let rep = match complex {
                ComplexArg::Base => betti(&BaseComplex::new(pi), trunc, sign),
                ComplexArg::Mixed => betti(&MixedComplex::new(pi, &algebra), trunc, sign),
                ComplexArg::Weil => betti(&WeilComplex::new(pi, &algebra), trunc, sign),
            }
            .map_err(classify)?;
            let code = if rep.quotients_certified { 0 } else { 1 };
            let text = match format {
                Format::Json => to_json(&rep),
                Format::Text => render_betti_text(&rep),
            };
            Ok(Outcome { text, out, code })
        }
        ReportKind::Center => {
            let (rep, _) =
                center_report(&pi, &algebra, degree, DEFAULT_BASIS_CAP).map_err(classify)?;
            let text = match format {
                Format::Json => to_json(&rep),
                Format::Text => {
                    let mut t = format!(
                        "center of {} over {} up to degree {}: dimension {}\n",
                        rep.structure, rep.algebra, degree, rep.dimension
                    );
                    for b in &rep.basis {
                        t.push_str(&format!("  {b}\n"));
                    }
                    t
                }
            };
            Ok(Outcome {
                text,
                out,
                code: 0,
            })
        }
        ReportKind::H1 => {
            let rep = match complex {
                ComplexArg::Base => {
                    h1_report(&BaseComplex::new(pi), degree, sign, DEFAULT_BASIS_CAP)
                }
                ComplexArg::Mixed => h1_report(
                    &MixedComplex::new(pi, &algebra),
                    degree,
                    sign,
                    DEFAULT_BASIS_CAP,
                ),
                ComplexArg::Weil => h1_report(
                    &WeilComplex::new(pi, &algebra),
                    degree,
                    sign,
                    DEFAULT_BASIS_CAP,
                ),
            }
            .map_err(classify)?;
            let text = match format {
                Format::Json => to_json(&rep),
                Format::Text => {
                    let mut t = format!(
                        "H^1 of the {} complex over {} up to degree {}: dimension {}\n",
                        rep.complex, rep.structure, degree, rep.dimension
                    );
                    for r in &rep.representatives {
                        t.push_str(&format!("  {r}\n"));
                    }
                    t
                }
            };
            Ok(Outcome {
                text,
                out,
                code: 0,
            })
        }
    }
}

fn render_betti_text(rep: &BettiReport) -> String {
    let mut t = format!(
        "{} complex over {} (algebra {}), coefficients up to degree {}:\n",
        rep.complex, rep.structure, rep.algebra, rep.max_degree
    );
    for row in &rep.table {
        match row.h {
            Some(h) => t.push_str(&format!(
                "p={}  dim={}  rank={}  ker={}  H={}\n",
                row.p, row.dim, row.rank, row.ker, h
            )),
            None => t.push_str(&format!(
                "p={}  dim={}  rank={}  ker={}  H=(not certified)\n",
                row.p, row.dim, row.rank, row.ker
            )),
        }
    }
    if let Some(note) = &rep.note {
        t.push_str(&format!("note: {note}\n"));
    }
    for (p, reps) in &rep.representatives {
        for r in reps {
            t.push_str(&format!("H^{p} representative: {r}\n"));
        }
    }
    t
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn cmd_verify(
    suite: &str,
    seed: u64,
    miswire_sign: bool,
    format: Format,
    out: Option<PathBuf>,
) -> Result<Outcome, Failure> {
    if !SUITES.contains(&suite) {
        return Err(Failure::Usage(format!(
            "unknown suite `{suite}`; expected one of {}",
            SUITES.join(", ")
        )));
    }
    let opts = VerifyOpts { seed, miswire_sign };
    let report = run_suite(suite, &opts).map_err(classify)?;
    let text = match format {
        Format::Json => to_json(&report),
        Format::Text => report.render_text(),
    };
    Ok(Outcome {
        text,
        out,
        code: if report.passed { 0 } else { 1 },
    })
}
