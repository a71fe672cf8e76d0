//! `hypersing`: singularity invariants and equivalence verdicts from the
//! command line.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hypersing::equivalence::{compare, Check, Mode};
use hypersing::localalg::{colength, hilbert_function, min_m_power, ColengthResult, MinPower};
use hypersing::oracle::{oracle_hilbert, oracle_min_m_power, TruncatedSpace};
use hypersing::parser::{
    parse_polynomial_list, parse_polynomial_strict, print_polynomial, DiagnosticKind,
    ParseDiagnostics,
};
use hypersing::report::{
    attach_oracle, oracle_colength_check, oracle_singularity, oracle_verdict, singularity_json,
    text_table, verdict_json, Envelope,
};
use hypersing::singularity::analyze;
use hypersing::stdbasis::{cached_std_basis, check_normal_form, mora_nf};
use hypersing::{Error, Field, FieldSpec, Ideal, PolyRing, Polynomial, PrimeField, Rationals};

#[derive(Debug, Parser)]
#[command(
    name = "hypersing",
    version,
    about = "Invariants of hypersurface singularities over Q and F_p"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Characteristic: 0 for the rationals, or a prime p
    #[arg(long = "char", global = true, default_value_t = 0)]
    characteristic: u64,

    /// Comma-separated variable names
    #[arg(long, global = true, value_delimiter = ',', default_value = "x,y")]
    vars: Vec<String>,

    /// Degree cap: all series are computed modulo m^(cap+1)
    #[arg(long, global = true, default_value_t = hypersing::DEFAULT_DEGREE_CAP)]
    cap: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Re-derive dimensions and memberships with the linear-algebra oracle
    #[arg(long, global = true)]
    oracle: bool,

    /// Read inputs from a file, one polynomial per line, `#` comments
    #[arg(long, global = true)]
    file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliMode {
    Contact,
    Right,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// All invariants of a germ f
    Analyze { inputs: Vec<String> },
    /// Decide equivalence of f and g
    Compare {
        #[arg(long, value_enum)]
        mode: CliMode,
        inputs: Vec<String>,
    },
    /// Weak normal form of f with respect to --gens
    Nf {
        #[arg(long, value_delimiter = ',')]
        gens: Vec<String>,
        inputs: Vec<String>,
    },
    /// Standard basis of an ideal
    Std { inputs: Vec<String> },
    /// Colength of an ideal
    Dim { inputs: Vec<String> },
    /// Hilbert function of an Artinian quotient
    Hilbert { inputs: Vec<String> },
    /// Least N with m^N inside the ideal
    Minpow { inputs: Vec<String> },
}

enum Failure {
    Usage(String),
    Parse {
        label: String,
        text: String,
        diag: ParseDiagnostics,
    },
    Engine(Error),
    Io(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Engine(Error::DegreeCapExceeded { .. }) => 3,
            Failure::Parse { diag, .. } if diag.kind == DiagnosticKind::DegreeCap => 3,
            Failure::Io(_) => 1,
            _ => 2,
        }
    }

    fn render(&self) -> String {
        match self {
            Failure::Usage(m) => format!("error: {m}"),
            Failure::Parse { label, text, diag } => {
                let mut out = format!("error: {label}:{diag}");
                if let Some(line) = text.lines().nth(diag.line - 1) {
                    let _ = write!(out, "\n  | {line}\n  | {}^", " ".repeat(diag.column - 1));
                }
                if diag.kind == DiagnosticKind::DegreeCap {
                    out.push_str("\nhint: rerun with a larger --cap");
                }
                out
            }
            Failure::Engine(e @ Error::DegreeCapExceeded { context, .. }) => {
                let hint = if context.contains("work limit") {
                    "coefficients grew too large; try a large prime with --char"
                } else {
                    "rerun with a larger --cap"
                };
                format!("error: {e}\nhint: {hint}")
            }
            Failure::Engine(e) => format!("error: {e}"),
            Failure::Io(e) => format!("error: {e:#}"),
        }
    }
}

type Outcome<T> = Result<T, Failure>;

/// (label, source text, whether the text is a whole file)
struct Inputs {
    items: Vec<(String, String, bool)>,
}

fn gather(cli: &Cli, positional: &[String]) -> Outcome<Inputs> {
    let mut items: Vec<(String, String, bool)> = positional
        .iter()
        .enumerate()
        .map(|(i, s)| (format!("input {}", i + 1), s.clone(), false))
        .collect();
    if let Some(path) = &cli.file {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))
            .map_err(Failure::Io)?;
        items.push((path.display().to_string(), text, true));
    }
    Ok(Inputs { items })
}

fn parse_all<F: Field>(ring: &PolyRing<F>, inputs: &Inputs) -> Outcome<Vec<Polynomial<F::Elem>>> {
    let mut out = Vec::new();
    for (label, text, is_file) in &inputs.items {
        let parsed = if *is_file {
            parse_polynomial_list(text, ring, true)
        } else {
            parse_polynomial_strict(text, ring).map(|f| vec![f])
        };
        match parsed {
            Ok(v) => out.extend(v),
            Err(diag) => {
                return Err(Failure::Parse {
                    label: label.clone(),
                    text: text.clone(),
                    diag,
                })
            }
        }
    }
    Ok(out)
}

fn parse_gens<F: Field>(ring: &PolyRing<F>, gens: &[String]) -> Outcome<Vec<Polynomial<F::Elem>>> {
    gens.iter()
        .enumerate()
        .map(|(i, s)| {
            parse_polynomial_strict(s, ring).map_err(|diag| Failure::Parse {
                label: format!("generator {}", i + 1),
                text: s.clone(),
                diag,
            })
        })
        .collect()
}

fn emit<F: Field>(cli: &Cli, ring: &PolyRing<F>, results: Vec<Value>) -> String {
    let envs: Vec<Envelope> = results
        .into_iter()
        .map(|r| Envelope::new(ring, r))
        .collect();
    match cli.format {
        Format::Json if envs.len() == 1 => envs[0].to_json() + "\n",
        Format::Json => serde_json::to_string_pretty(&envs).expect("reports serialize") + "\n",
        Format::Text => envs.iter().map(text_table).collect::<Vec<_>>().join("\n"),
    }
}

fn with_oracle(cli: &Cli, mut result: Value, checks: impl FnOnce() -> Vec<Check>) -> Value {
    if cli.oracle {
        attach_oracle(&mut result, &checks());
    }
    result
}

fn print_all<F: Field>(ring: &PolyRing<F>, ps: &[Polynomial<F::Elem>]) -> Vec<String> {
    ps.iter().map(|p| print_polynomial(p, ring)).collect()
}

fn run_in<F: Field>(cli: &Cli, ring: PolyRing<F>) -> Outcome<String> {
    let ring = &ring;
    match &cli.command {
        Command::Analyze { inputs } => {
            let fs = parse_all(ring, &gather(cli, inputs)?)?;
            if fs.is_empty() {
                return Err(Failure::Usage("analyze needs a polynomial".into()));
            }
            if cli.file.is_none() && fs.len() != 1 {
                return Err(Failure::Usage(
                    "analyze takes one polynomial (use --file for a batch)".into(),
                ));
            }
            let mut results = Vec::new();
            for f in &fs {
                if f.is_zero() {
                    return Err(Failure::Engine(Error::ZeroPolynomial));
                }
                let rep = analyze(ring, f);
                if let Some(e) = [&rep.mu, &rep.tau].into_iter().find_map(|c| match c {
                    hypersing::singularity::Computed::Unknown {
                        reason,
                        cap_exceeded: true,
                    } => Some(reason.clone()),
                    _ => None,
                }) {
                    return Err(Failure::Engine(Error::DegreeCapExceeded {
                        cap: ring.cap(),
                        context: e,
                    }));
                }
                let v = singularity_json(ring, &rep);
                results.push(with_oracle(cli, v, || oracle_singularity(ring, &rep)));
            }
            Ok(emit(cli, ring, results))
        }
        Command::Compare { mode, inputs } => {
            let fs = parse_all(ring, &gather(cli, inputs)?)?;
            let [f, g] = fs.as_slice() else {
                return Err(Failure::Usage(format!(
                    "compare takes exactly two polynomials, got {}",
                    fs.len()
                )));
            };
            let mode = match mode {
                CliMode::Contact => Mode::Contact,
                CliMode::Right => Mode::Right,
            };
            let v = compare(ring, f, g, mode)?;
            let result = verdict_json(ring, f, g, &v);
            let result = with_oracle(cli, result, || oracle_verdict(ring, f, g, &v));
            Ok(emit(cli, ring, vec![result]))
        }
        Command::Nf { gens, inputs } => {
            let gens = parse_gens(ring, gens)?;
            let fs = parse_all(ring, &gather(cli, inputs)?)?;
            let [f] = fs.as_slice() else {
                return Err(Failure::Usage(format!(
                    "nf takes one polynomial, got {}",
                    fs.len()
                )));
            };
            let nf = mora_nf(ring, f, &gens);
            let result = json!({
                "f": print_polynomial(f, ring),
                "gens": print_all(ring, &gens),
                "remainder": print_polynomial(&nf.remainder, ring),
                "unit": print_polynomial(&nf.unit, ring),
                "cofactors": print_all(ring, &nf.cofactors),
            });
            let result = with_oracle(cli, result, || {
                let identity = check_normal_form(ring, f, &gens, &nf);
                let mut checks = vec![Check {
                    name: "normal_form_identity".into(),
                    holds: Some(identity),
                    detail: "unit*f = sum(cofactor*g) + remainder".into(),
                }];
                if nf.remainder.is_zero() {
                    let ideal = Ideal::new(gens.clone());
                    let depth = f.max_degree().unwrap_or(0).min(ring.cap());
                    let member = TruncatedSpace::new(ring, &ideal, depth).contains(f);
                    checks.push(Check {
                        name: "oracle_member".into(),
                        holds: Some(member),
                        detail: format!("f in the span modulo m^{}", depth + 1),
                    });
                }
                checks
            });
            Ok(emit(cli, ring, vec![result]))
        }
        Command::Std { inputs }
        | Command::Dim { inputs }
        | Command::Hilbert { inputs }
        | Command::Minpow { inputs } => {
            let gens = parse_all(ring, &gather(cli, inputs)?)?;
            if gens.is_empty() {
                return Err(Failure::Usage("expected at least one generator".into()));
            }
            let ideal = Ideal::new(gens.clone());
            let mut result = serde_json::Map::new();
            result.insert("gens".into(), json!(print_all(ring, &gens)));
            let checks: Vec<Check> = match &cli.command {
                Command::Std { .. } => {
                    let b = cached_std_basis(ring, &ideal);
                    result.insert("basis".into(), json!(print_all(ring, b.elements())));
                    let stairs: Vec<String> = b
                        .staircase()
                        .iter()
                        .map(|m| print_polynomial(&ring.monomial(m.clone()), ring))
                        .collect();
                    result.insert("staircase".into(), json!(stairs));
                    result.insert("corner".into(), json!(b.corner()));
                    result.insert("exact".into(), json!(b.is_exact()));
                    match (cli.oracle, colength(ring, &ideal)) {
                        (true, Ok(c)) => vec![oracle_colength_check(ring, "colength", &ideal, c)],
                        _ => Vec::new(),
                    }
                }
                Command::Dim { .. } => {
                    let c = colength(ring, &ideal)?;
                    result.insert(
                        "colength".into(),
                        serde_json::to_value(c).expect("serializes"),
                    );
                    if cli.oracle {
                        vec![oracle_colength_check(ring, "colength", &ideal, c)]
                    } else {
                        Vec::new()
                    }
                }
                Command::Hilbert { .. } => {
                    let hf = hilbert_function(ring, &ideal)?;
                    result.insert("hilbert_function".into(), json!(hf.values()));
                    if cli.oracle {
                        let depth = (hf.total() as u32 + 2).min(ring.cap());
                        let got = oracle_hilbert(ring, &ideal, depth);
                        vec![Check {
                            name: "oracle_hilbert_function".into(),
                            holds: Some(got.as_ref() == Some(&hf)),
                            detail: format!("engine {hf}, oracle {got:?}"),
                        }]
                    } else {
                        Vec::new()
                    }
                }
                _ => {
                    let p = min_m_power(ring, &ideal)?;
                    let (value, note) = match p {
                        MinPower::Found(n) => (json!(n), None),
                        MinPower::NotFound { cap } => (
                            Value::Null,
                            Some(format!("no power of m up to degree {cap} is contained")),
                        ),
                    };
                    result.insert("min_m_power".into(), value);
                    if let Some(n) = note {
                        result.insert("notes".into(), json!({ "min_m_power": n }));
                    }
                    match (cli.oracle, p) {
                        (true, MinPower::Found(n)) => {
                            let got = oracle_min_m_power(ring, &ideal, (n + 1).min(ring.cap()));
                            vec![Check {
                                name: "oracle_min_m_power".into(),
                                holds: Some(got == Some(n)),
                                detail: format!("engine {n}, oracle {got:?}"),
                            }]
                        }
                        (true, MinPower::NotFound { .. }) => {
                            let c = colength(ring, &ideal).unwrap_or(ColengthResult::Infinite);
                            vec![oracle_colength_check(ring, "colength", &ideal, c)]
                        }
                        _ => Vec::new(),
                    }
                }
            };
            let mut result = Value::Object(result);
            if cli.oracle {
                attach_oracle(&mut result, &checks);
            }
            Ok(emit(cli, ring, vec![result]))
        }
    }
}

fn run(cli: &Cli) -> Outcome<String> {
    let spec = FieldSpec::new(cli.characteristic).map_err(|e| Failure::Usage(e.to_string()))?;
    let bad = |e: hypersing::poly::PolyError| Failure::Usage(e.to_string());
    if spec.is_rational() {
        run_in(
            cli,
            PolyRing::new(Rationals, &cli.vars, cli.cap).map_err(bad)?,
        )
    } else {
        let field =
            PrimeField::new(spec.characteristic()).map_err(|e| Failure::Usage(e.to_string()))?;
        run_in(cli, PolyRing::new(field, &cli.vars, cli.cap).map_err(bad)?)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("{}", f.render());
            ExitCode::from(f.exit_code())
        }
    }
}
