//! `csd`: parse, expand and analyze contact surgery diagrams.
//!
//! Exit codes: 0 success, 1 usage error, 2 parse/validation error,
//! 3 mathematical precondition failure. Stdout carries exactly the
//! requested artifact (JSON, DSL or SVG); diagnostics go to stderr.

use std::io::Read;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::Value;

use contact_surgery::dsl::{
    self, chern_to_json, d3_to_json, diagram_to_json, homology_to_json, to_json_string,
};
use contact_surgery::exactalg::Rational;
use contact_surgery::homology::{
    build_presentation, c1_class, characteristic_numbers, first_homology, HomologyError,
};
use contact_surgery::invariants::{catalog, d3, CatalogEntry, InvariantError};
use contact_surgery::realize::{
    realize, FramedLink, LegendrianHint, RealizationTarget, RealizeError,
};
use contact_surgery::surgery::{ContactSurgeryDiagram, SurgeryError, ZigzagPolicy};
use contact_surgery::IntMatrix;

#[derive(Parser)]
#[command(name = "csd", version, about = "Contact surgery diagram toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Reserved for randomized harness replay; core commands are
    /// deterministic and ignore it.
    #[arg(long, global = true, hide = true)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dsl,
    Svg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ZigzagSide {
    Down,
    Up,
}

#[derive(Args)]
struct ExpandFlags {
    /// Zigzag side used for stabilizations during expansion.
    #[arg(long, value_enum, default_value = "down")]
    zigzag: ZigzagSide,
    /// Push-off count for positive coefficients (default: minimal valid).
    #[arg(long)]
    k: Option<i64>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a diagram, printing a component summary.
    Check {
        /// Input path or `-` for standard input.
        input: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Expand rational coefficients into a contact (+1)/(-1) diagram.
    Expand {
        input: String,
        #[command(flatten)]
        flags: ExpandFlags,
        /// Emit every zigzag choice instead of the default expansion.
        #[arg(long)]
        enumerate: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Full invariant report: H1, c1 and d3 (expands first).
    Invariants {
        input: String,
        #[command(flatten)]
        flags: ExpandFlags,
        /// Report the Chern class only and skip d3.
        #[arg(long)]
        no_d3: bool,
        /// Suppress the tb = 0 diagnostic on (+1)-components.
        #[arg(long)]
        allow_tb_zero: bool,
    },
    /// Homological data only: H1, determinant, signature, Euler number.
    Homology {
        input: String,
        #[command(flatten)]
        flags: ExpandFlags,
    },
    /// Realize a framed link with a Chern twist and optional d3 target.
    Realize {
        input: String,
        /// Comma-separated twist coefficients, one per component.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        alpha: Vec<i64>,
        /// Target d3 value, e.g. `-1/2`.
        #[arg(long, allow_hyphen_values = true)]
        d3: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Emit a named catalog diagram.
    Catalog {
        /// One of: xi_plus, xi_minus, tight_s1s2, xi_k, xi_minus_k,
        /// shark_knot, k_k_knot, xi_i_on_s3.
        name: String,
        /// Parameter for the parameterized entries.
        #[arg(allow_hyphen_values = true)]
        param: Option<i64>,
        #[arg(long, value_enum, default_value = "dsl")]
        format: Format,
    },
    /// Render a front diagram as SVG.
    Render { input: String },
}

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_MATH: u8 = 3;

struct Failure {
    code: u8,
    reason: &'static str,
    message: String,
}

impl Failure {
    fn new(code: u8, reason: &'static str, message: impl Into<String>) -> Self {
        Failure {
            code,
            reason,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            if err.use_stderr() {
                eprint!("{err}");
                return ExitCode::from(EXIT_USAGE);
            }
            // --help / --version go to stdout with success.
            print!("{err}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error[{}]: {}", f.reason, f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::new(EXIT_USAGE, "io-error", e.to_string()))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::new(EXIT_USAGE, "io-error", format!("{path}: {e}")))
    }
}

fn parse_document(path: &str) -> Result<ContactSurgeryDiagram, Failure> {
    let text = read_input(path)?;
    let doc = dsl::parse(&text).map_err(|e| {
        let code = match e.kind {
            dsl::ParseErrorKind::ZeroSurgery => EXIT_MATH,
            _ => EXIT_PARSE,
        };
        Failure {
            code,
            reason: "parse-error",
            message: e.to_string(),
        }
    })?;
    Ok(doc.diagram)
}

fn surgery_failure(e: SurgeryError) -> Failure {
    let reason = match e {
        SurgeryError::InfiniteCoefficient { .. } => "inf-coefficient",
        SurgeryError::ZeroCoefficient => "zero-coefficient",
        _ => "expansion-error",
    };
    Failure::new(EXIT_MATH, reason, e.to_string())
}

fn homology_failure(e: HomologyError) -> Failure {
    let reason = match e {
        HomologyError::NonTorsionChernClass => "c1-non-torsion",
        HomologyError::InfiniteCoefficient { .. } => "inf-coefficient",
        HomologyError::NotReduced { .. } => "not-reduced",
    };
    Failure::new(EXIT_MATH, reason, e.to_string())
}

fn invariant_failure(e: InvariantError) -> Failure {
    match e {
        InvariantError::Homology(h) => homology_failure(h),
        InvariantError::Surgery(s) => surgery_failure(s),
        other => Failure::new(EXIT_MATH, "invariant-error", other.to_string()),
    }
}

fn realize_failure(e: RealizeError) -> Failure {
    let reason = match e {
        RealizeError::NonTorsionD3Target => "c1-non-torsion",
        RealizeError::D3ParityUnreachable { .. } => "d3-parity-unreachable",
        RealizeError::MissingHints => "missing-hints",
        RealizeError::Homology(h) => return homology_failure(h),
        RealizeError::Surgery(s) => return surgery_failure(s),
        _ => "realize-error",
    };
    Failure::new(EXIT_MATH, reason, e.to_string())
}

fn expand(
    diagram: &ContactSurgeryDiagram,
    flags: &ExpandFlags,
) -> Result<ContactSurgeryDiagram, Failure> {
    let policy = match flags.zigzag {
        ZigzagSide::Down => ZigzagPolicy::AllDown,
        ZigzagSide::Up => ZigzagPolicy::AllUp,
    };
    // An explicit k applies to every positive coefficient before the
    // remaining negatives are expanded with the chosen zigzag side.
    let mut current = diagram.clone();
    if let Some(k) = flags.k {
        let k = BigInt::from(k);
        while let Some(comp) = current.coefficients().iter().position(|c| {
            c.as_finite()
                .is_some_and(|r| r > &Rational::from(BigInt::from(0)) && !c.is_plus_one())
        }) {
            current = current
                .expand_positive(comp, Some(&k))
                .map_err(surgery_failure)?;
        }
    }
    current.expand_all(policy).map_err(surgery_failure)
}

fn emit_diagram(diagram: &ContactSurgeryDiagram, format: Format) -> Result<(), Failure> {
    match format {
        Format::Json => println!("{}", to_json_string(&diagram_to_json(diagram))),
        Format::Dsl => print!("{}", dsl::print(diagram)),
        Format::Svg => {
            let svg = dsl::render_svg(diagram).ok_or_else(|| {
                Failure::new(
                    EXIT_PARSE,
                    "front-only-operation",
                    "SVG rendering requires a front diagram",
                )
            })?;
            print!("{svg}");
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Check { input, format } => {
            let diagram = parse_document(&input)?;
            emit_diagram(&diagram, format)
        }
        Command::Expand {
            input,
            flags,
            enumerate,
            format,
        } => {
            let diagram = parse_document(&input)?;
            if enumerate {
                let variants = diagram.expand_enumerate().map_err(surgery_failure)?;
                match format {
                    Format::Json => {
                        let list: Vec<Value> = variants.iter().map(diagram_to_json).collect();
                        println!("{}", to_json_string(&Value::Array(list)));
                    }
                    Format::Dsl => {
                        for (i, v) in variants.iter().enumerate() {
                            if i > 0 {
                                println!("# ---");
                            }
                            print!("{}", dsl::print(v));
                        }
                    }
                    Format::Svg => {
                        return Err(Failure::new(
                            EXIT_USAGE,
                            "usage",
                            "--enumerate does not support SVG output",
                        ))
                    }
                }
                Ok(())
            } else {
                let reduced = expand(&diagram, &flags)?;
                emit_diagram(&reduced, format)
            }
        }
        Command::Invariants {
            input,
            flags,
            no_d3,
            allow_tb_zero,
        } => {
            let diagram = parse_document(&input)?;
            let reduced = expand(&diagram, &flags)?;
            let presentation = build_presentation(&reduced).map_err(homology_failure)?;
            if !allow_tb_zero {
                for diag in &presentation.diagnostics {
                    eprintln!("note[{}]: {}", diag.code, diag.message);
                }
            }
            let h = first_homology(&presentation);
            let class = c1_class(&presentation);
            let mut report = merge(homology_to_json(&h), chern_to_json(&class));
            if !no_d3 {
                let result = d3(&reduced).map_err(invariant_failure)?;
                report = merge(report, d3_to_json(&result));
            }
            println!("{}", to_json_string(&report));
            Ok(())
        }
        Command::Homology { input, flags } => {
            let diagram = parse_document(&input)?;
            let reduced = expand(&diagram, &flags)?;
            let presentation = build_presentation(&reduced).map_err(homology_failure)?;
            let h = first_homology(&presentation);
            let (sigma, chi) = characteristic_numbers(&presentation);
            let mut report = homology_to_json(&h);
            let det = presentation.linking.determinant().expect("square matrix");
            let extra = serde_json::json!({
                "det": Value::Number(serde_json::Number::from_str(&det.to_string()).unwrap()),
                "sigma": sigma,
                "chi": chi,
            });
            report = merge(report, extra);
            println!("{}", to_json_string(&report));
            Ok(())
        }
        Command::Realize {
            input,
            alpha,
            d3: d3_flag,
            format,
        } => {
            let link = parse_framed_document(&input)?;
            if alpha.len() != link.component_count() {
                return Err(Failure::new(
                    EXIT_MATH,
                    "alpha-length",
                    format!(
                        "expected {} twist coefficients, got {}",
                        link.component_count(),
                        alpha.len()
                    ),
                ));
            }
            let d3_target = match d3_flag {
                None => None,
                Some(text) => Some(parse_rational(&text)?),
            };
            let target = RealizationTarget {
                alpha: alpha.into_iter().map(BigInt::from).collect(),
                d3_target,
            };
            let out = realize(&link, &target).map_err(realize_failure)?;
            emit_diagram(&out, format)
        }
        Command::Catalog {
            name,
            param,
            format,
        } => {
            let entry = CatalogEntry::parse(&name, param)
                .map_err(|e| Failure::new(EXIT_USAGE, "unknown-catalog-entry", e.to_string()))?;
            let diagram = catalog(&entry).map_err(invariant_failure)?;
            emit_diagram(&diagram, format)
        }
        Command::Render { input } => {
            let diagram = parse_document(&input)?;
            emit_diagram(&diagram, Format::Svg)
        }
    }
}

/// Reads a framed-link document: an ordinary `.csd` file whose surgery
/// integers are interpreted as topological framings (zero allowed) and
/// whose knot data provides the Legendrian hints.
fn parse_framed_document(path: &str) -> Result<FramedLink, Failure> {
    let text = read_input(path)?;
    let parsed = dsl::parse_framed_link(&text).map_err(|e| Failure {
        code: EXIT_PARSE,
        reason: "parse-error",
        message: e.to_string(),
    })?;
    let data = parsed.link.to_abstract();
    let t = data.component_count();
    let mut framings = Vec::with_capacity(t);
    for (i, f) in parsed.framings.iter().enumerate() {
        let Some(r) = f else {
            return Err(Failure::new(
                EXIT_MATH,
                "missing-framing",
                format!("component {} has no framing", i + 1),
            ));
        };
        if !r.is_integer() {
            return Err(Failure::new(
                EXIT_MATH,
                "rational-framing",
                format!(
                    "component {} has rational framing {}; expand it into integer surgeries first",
                    i + 1,
                    r
                ),
            ));
        }
        framings.push(r.to_integer());
    }
    let matrix = IntMatrix::from_fn(t, t, |i, j| {
        if i == j {
            framings[i].clone()
        } else {
            data.lk[i][j].clone()
        }
    });
    let hints = (0..t)
        .map(|i| LegendrianHint {
            tb: data.tb[i].clone(),
            rot: data.rot[i].clone(),
        })
        .collect();
    Ok(FramedLink::new(matrix, Some(hints)))
}

fn parse_rational(text: &str) -> Result<Rational, Failure> {
    let parse_int = |s: &str| {
        BigInt::from_str(s.trim())
            .map_err(|_| Failure::new(EXIT_USAGE, "usage", format!("bad rational `{text}`")))
    };
    match text.split_once('/') {
        Some((num, den)) => {
            let den = parse_int(den)?;
            if den == BigInt::from(0) {
                return Err(Failure::new(
                    EXIT_USAGE,
                    "usage",
                    format!("bad rational `{text}`"),
                ));
            }
            Ok(Rational::new(parse_int(num)?, den))
        }
        None => Ok(Rational::from(parse_int(text)?)),
    }
}

/// Merges two JSON objects (top-level keys).
fn merge(a: Value, b: Value) -> Value {
    match (a, b) {
        (Value::Object(mut a), Value::Object(b)) => {
            for (k, v) in b {
                a.insert(k, v);
            }
            Value::Object(a)
        }
        (a, _) => a,
    }
}
