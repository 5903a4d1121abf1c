//! `h10`: command-line front end for the `h10` library.
//!
//! Exit status is 0 on success or a decided verdict, 2 when an engine runs
//! out of budget, and 1 on usage, parse or validation errors.

mod files;

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use h10::codec::{decode_tuple, encode_tuple, surjection, QTuple};
use h10::engines::{
    decide_solvability, dovetail_search, make_oracle, semidecide_finite, EngineOutcome, Evidence, OracleSpec,
    SearchOutcome, SolutionSet, Trace,
};
use h10::exactnum::{four_squares, Rational};
use h10::gadgets::{add_dummy, avoidance_equation, build_nonzero_equation, exclusion_product, witness_nonzero};
use h10::parser::{parse_equation, parse_rational, parse_tuple, render_equation, ParseError};
use h10::poly::Equation;
use h10::rings::{enumerate_element, find_nonzero_integer, RingSpec, SearchMode};
use num_bigint::{BigInt, BigUint};
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(name = "h10", version, about = "Diophantine equations over subrings of Q: codec, rings, gadgets and engines")]
struct Cli {
    /// Print a single JSON document with fields subcommand, inputs, result, evidence.
    #[arg(long, global = true)]
    json: bool,

    /// Write the engine step log (one tab-separated line per step) to PATH.
    #[arg(long, global = true, value_name = "PATH")]
    trace: Option<PathBuf>,

    /// With --trace on semidecide-finite, also log each query flattened into one equation.
    #[arg(long, global = true)]
    trace_flatten: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Direct,
    Constructive,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse an equation and print its canonical form.
    Parse {
        #[arg(allow_hyphen_values = true)]
        equation: String,
    },
    /// Evaluate the left-hand side of an equation at a tuple.
    Eval {
        #[arg(allow_hyphen_values = true)]
        equation: String,
        tuple: String,
    },
    /// Encode a tuple of rationals as a natural number.
    Encode { tuple: String },
    /// Decode a natural number into a tuple of length n.
    Decode {
        #[arg(value_parser = nat_arg)]
        x: BigUint,
        #[arg(long, value_parser = arity_arg)]
        n: usize,
    },
    /// Test ring membership of a rational.
    RingContains {
        #[arg(allow_hyphen_values = true)]
        value: String,
        #[arg(long, allow_hyphen_values = true, value_parser = ring_arg)]
        ring: RingSpec,
    },
    /// Find a non-zero integer in the ring.
    RingFindM {
        #[arg(long, allow_hyphen_values = true, value_parser = ring_arg)]
        ring: RingSpec,
        #[arg(long, value_enum, default_value = "constructive")]
        mode: Mode,
    },
    /// The k-th element of the ring enumeration, or the k-th n-tuple with --n.
    RingEnumerate {
        #[arg(value_parser = nat_arg)]
        k: BigUint,
        #[arg(long, allow_hyphen_values = true, value_parser = ring_arg)]
        ring: RingSpec,
        #[arg(long, value_parser = arity_arg)]
        n: Option<usize>,
    },
    /// Canonical four-square decomposition.
    FourSquares {
        #[arg(value_parser = nat_arg)]
        n: BigUint,
    },
    /// Append one unused variable to an equation.
    GadgetDummy {
        #[arg(allow_hyphen_values = true)]
        equation: String,
    },
    /// The non-zero gadget equation for m, or its witness at x1 = b with --b.
    GadgetNonzero {
        #[arg(long, allow_hyphen_values = true, value_parser = int_arg)]
        m: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long, allow_hyphen_values = true, value_parser = ring_arg, default_value = "Z")]
        ring: RingSpec,
    },
    /// Exclusion product vanishing exactly on the given points.
    GadgetExclude {
        #[arg(long, value_parser = arity_arg)]
        n: usize,
        points: Vec<String>,
    },
    /// Flatten "equation solvable outside the points" into one equation.
    GadgetAvoid {
        #[arg(allow_hyphen_values = true)]
        equation: String,
        points: Vec<String>,
        #[arg(long, allow_hyphen_values = true, value_parser = ring_arg)]
        ring: RingSpec,
        #[arg(long, allow_hyphen_values = true, value_parser = int_arg)]
        m: Option<BigInt>,
    },
    /// Search the ring enumeration for a solution.
    Search {
        #[arg(allow_hyphen_values = true)]
        equation: String,
        #[arg(long, allow_hyphen_values = true, value_parser = ring_arg)]
        ring: RingSpec,
        #[arg(long, default_value_t = 1000)]
        budget: u64,
    },
    /// Run the finite-solutions semi-decider against an oracle.
    SemidecideFinite {
        #[arg(allow_hyphen_values = true)]
        equation: String,
        #[arg(long, allow_hyphen_values = true, value_parser = ring_arg)]
        ring: RingSpec,
        /// `table:v1,v2,...`, `table:infinite:v1,...`, `linear`, `search:BOUND`, or a JSON oracle file.
        #[arg(long)]
        oracle: String,
        #[arg(long, allow_hyphen_values = true, value_parser = int_arg)]
        m: Option<BigInt>,
        #[arg(long, default_value_t = 1000)]
        budget: u64,
    },
    /// Decide solvability against a JSON list of finite-solution equations.
    Decide {
        #[arg(allow_hyphen_values = true)]
        equation: String,
        #[arg(long)]
        list: PathBuf,
        /// Defaults to the ring declared in the list file.
        #[arg(long, allow_hyphen_values = true, value_parser = ring_arg)]
        ring: Option<RingSpec>,
        #[arg(long, default_value_t = 1000)]
        budget: u64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Parse { .. } => "parse",
            Command::Eval { .. } => "eval",
            Command::Encode { .. } => "encode",
            Command::Decode { .. } => "decode",
            Command::RingContains { .. } => "ring-contains",
            Command::RingFindM { .. } => "ring-find-m",
            Command::RingEnumerate { .. } => "ring-enumerate",
            Command::FourSquares { .. } => "four-squares",
            Command::GadgetDummy { .. } => "gadget-dummy",
            Command::GadgetNonzero { .. } => "gadget-nonzero",
            Command::GadgetExclude { .. } => "gadget-exclude",
            Command::GadgetAvoid { .. } => "gadget-avoid",
            Command::Search { .. } => "search",
            Command::SemidecideFinite { .. } => "semidecide-finite",
            Command::Decide { .. } => "decide",
        }
    }

    fn traces(&self) -> bool {
        matches!(self, Command::Search { .. } | Command::SemidecideFinite { .. } | Command::Decide { .. })
    }
}

fn ring_arg(s: &str) -> Result<RingSpec, String> {
    s.parse::<RingSpec>().map_err(|e| e.to_string())
}

fn nat_arg(s: &str) -> Result<BigUint, String> {
    s.parse::<BigUint>().map_err(|_| format!("`{s}` is not a natural number"))
}

fn int_arg(s: &str) -> Result<BigInt, String> {
    s.parse::<BigInt>().map_err(|_| format!("`{s}` is not an integer"))
}

fn arity_arg(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("`{s}` is not a positive integer")),
    }
}

enum Failure {
    Parse { what: &'static str, input: String, error: ParseError },
    Invalid(String),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Parse { what, input, error } => {
                writeln!(f, "error: {}: cannot parse {what}: {}", error.diagnostic(), error.kind)?;
                writeln!(f, "  {input}")?;
                let pad = input[..error.span.start.min(input.len())].chars().count();
                let width = input.get(error.span.start..error.span.end).map_or(1, |s| s.chars().count().max(1));
                write!(f, "  {}{}", " ".repeat(pad), "^".repeat(width))
            }
            Failure::Invalid(msg) => write!(f, "error: {msg}"),
        }
    }
}

fn equation(text: &str) -> Result<Equation, Failure> {
    parse_equation(text).map_err(|error| Failure::Parse { what: "equation", input: text.to_string(), error })
}

fn tuple(text: &str) -> Result<QTuple, Failure> {
    parse_tuple(text).map_err(|error| Failure::Parse { what: "tuple", input: text.to_string(), error })
}

fn rational(text: &str) -> Result<Rational, Failure> {
    parse_rational(text).map_err(|error| Failure::Parse { what: "rational", input: text.to_string(), error })
}

/// What a subcommand produced, before it is printed.
struct Report {
    inputs: Value,
    text: String,
    result: Value,
    evidence: Value,
    exhausted: bool,
}

impl Report {
    fn plain(inputs: Value, text: impl Into<String>, result: Value) -> Self {
        Report { inputs, text: text.into(), result, evidence: Value::Null, exhausted: false }
    }
}

fn strings<T: ToString>(items: &[T]) -> Value {
    Value::from(items.iter().map(|t| t.to_string()).collect::<Vec<_>>())
}

fn outcome_report(inputs: Value, outcome: &EngineOutcome) -> Report {
    let text = outcome.to_string();
    let (evidence, verdict) = match outcome {
        EngineOutcome::Halted { verdict, evidence } => {
            let evidence = match evidence {
                Evidence::Witness { index, point } => {
                    json!({"kind": "witness", "index": index, "point": point.to_string()})
                }
                Evidence::ExcludedAtHalt { k, excluded } => {
                    json!({"kind": "excluded-at-halt", "k": k, "excluded": strings(excluded)})
                }
                Evidence::ListMatch { index, equation } => {
                    json!({"kind": "list-match", "index": index, "equation": render_equation(equation)})
                }
            };
            (evidence, Value::from(verdict.to_string()))
        }
        EngineOutcome::BudgetExhausted { steps, last_index } => {
            (json!({"kind": "budget-exhausted", "steps": steps, "last_index": last_index}), Value::Null)
        }
    };
    Report {
        inputs,
        result: json!({"outcome": text, "verdict": verdict, "halted": outcome.is_halted()}),
        text,
        evidence,
        exhausted: !outcome.is_halted(),
    }
}

/// Oracle for `semidecide-finite`, with the universe an oracle file declares.
/// Inline tables are arity-1 only.
fn oracle_spec(arg: &str, eq: &Equation, ring: &RingSpec) -> Result<(OracleSpec, Option<String>), Failure> {
    if arg == "linear" || arg == "univariate-linear" {
        return Ok((OracleSpec::UnivariateLinear, None));
    }
    if let Some(bound) = arg.strip_prefix("search:") {
        let bound = bound
            .parse()
            .map_err(|_| Failure::Invalid(format!("search oracle bound `{bound}` is not a natural number")))?;
        return Ok((OracleSpec::BoundedSearch { bound }, None));
    }
    if let Some(values) = arg.strip_prefix("table:") {
        if eq.arity() != 1 {
            return Err(Failure::Invalid(format!(
                "inline table oracles take arity-1 equations, this one has arity {}; use a JSON oracle file",
                eq.arity()
            )));
        }
        let (infinite, values) = match values.strip_prefix("infinite") {
            Some(rest) => (true, rest.strip_prefix(':').unwrap_or(rest)),
            None => (false, values),
        };
        let mut points = Vec::new();
        for v in values.split(',').map(str::trim).filter(|v| !v.is_empty()) {
            points.push(QTuple::new(vec![rational(v)?]).expect("one component"));
        }
        let solutions = if infinite { SolutionSet::Infinite { samples: points } } else { SolutionSet::Finite(points) };
        return Ok((OracleSpec::Table { equation: eq.clone(), ring: ring.clone(), solutions }, None));
    }
    let file = files::load_oracle(std::path::Path::new(arg)).map_err(Failure::Invalid)?;
    Ok((OracleSpec::Table { equation: file.equation, ring: file.ring, solutions: file.solutions }, file.universe))
}

fn default_m(ring: &RingSpec, m: Option<BigInt>) -> Result<BigInt, Failure> {
    match m {
        Some(m) => Ok(m),
        None => Ok(find_nonzero_integer(ring, SearchMode::Direct)?.value),
    }
}

fn run(cli: &Cli, trace: Option<&mut Trace>) -> Result<Report, Failure> {
    Ok(match &cli.command {
        Command::Parse { equation: text } => {
            let e = equation(text)?;
            let rendered = render_equation(&e);
            Report::plain(
                json!({"equation": text}),
                rendered.clone(),
                json!({"equation": rendered, "lhs": e.lhs().to_string(), "arity": e.arity()}),
            )
        }
        Command::Eval { equation: text, tuple: t } => {
            let e = equation(text)?;
            let point = tuple(t)?;
            let value = e.evaluate(point.components())?;
            Report::plain(
                json!({"equation": text, "tuple": t}),
                value.to_string(),
                json!({"value": value.to_string(), "is_solution": value.is_zero()}),
            )
        }
        Command::Encode { tuple: t } => {
            let x = encode_tuple(&tuple(t)?);
            Report::plain(json!({"tuple": t}), x.to_string(), json!({"x": x.to_string()}))
        }
        Command::Decode { x, n } => {
            let t = decode_tuple(x, *n)?;
            Report::plain(json!({"x": x.to_string(), "n": n}), t.to_string(), json!({"tuple": t.to_string()}))
        }
        Command::RingContains { value, ring } => {
            let r = rational(value)?;
            ring.validate()?;
            let member = ring.contains(&r);
            Report::plain(
                json!({"value": value, "ring": ring.to_string()}),
                member.to_string(),
                json!({"member": member}),
            )
        }
        Command::RingFindM { ring, mode } => {
            let search = match mode {
                Mode::Direct => SearchMode::Direct,
                Mode::Constructive => SearchMode::Constructive,
            };
            let m = find_nonzero_integer(ring, search)?;
            let text = match m.index {
                Some(i) => format!("{} i={i}", m.value),
                None => m.value.to_string(),
            };
            let mode = match mode {
                Mode::Direct => "direct",
                Mode::Constructive => "constructive",
            };
            Report::plain(
                json!({"ring": ring.to_string(), "mode": mode}),
                text,
                json!({"m": m.value.to_string(), "index": m.index}),
            )
        }
        Command::RingEnumerate { k, ring, n } => {
            ring.validate()?;
            let inputs = json!({"k": k.to_string(), "ring": ring.to_string(), "n": n});
            match n {
                Some(n) => {
                    let t = surjection(ring, *n, k)?;
                    Report::plain(inputs, t.to_string(), json!({"tuple": t.to_string()}))
                }
                None => {
                    let r = enumerate_element(ring, k);
                    Report::plain(inputs, r.to_string(), json!({"element": r.to_string()}))
                }
            }
        }
        Command::FourSquares { n } => {
            let w = four_squares(n);
            let parts: Vec<String> = w.components().iter().map(|t| t.to_string()).collect();
            Report::plain(json!({"n": n.to_string()}), format!("({})", parts.join(", ")), json!({"squares": parts}))
        }
        Command::GadgetDummy { equation: text } => {
            let rendered = render_equation(&add_dummy(&equation(text)?));
            Report::plain(json!({"equation": text}), rendered.clone(), json!({"equation": rendered}))
        }
        Command::GadgetNonzero { m, b, ring } => {
            let inputs = json!({"m": m.to_string(), "b": b, "ring": ring.to_string()});
            match b {
                None => {
                    let rendered = render_equation(&build_nonzero_equation(m)?);
                    Report::plain(inputs, rendered.clone(), json!({"equation": rendered}))
                }
                Some(b) => {
                    let b = rational(b)?;
                    match witness_nonzero(&b, m, ring)? {
                        Some(w) => {
                            let point = w.with_b(&b).to_tuple().expect("six components");
                            Report::plain(inputs, point.to_string(), json!({"witness": point.to_string()}))
                        }
                        None => Report::plain(inputs, "none", json!({"witness": null})),
                    }
                }
            }
        }
        Command::GadgetExclude { n, points } => {
            let parsed = points.iter().map(|p| tuple(p)).collect::<Result<Vec<_>, _>>()?;
            let product = exclusion_product(&parsed, *n)?;
            let rendered = render_equation(&Equation::new(product.clone(), *n)?);
            Report::plain(
                json!({"n": n, "points": points}),
                rendered.clone(),
                json!({"polynomial": product.to_string(), "equation": rendered}),
            )
        }
        Command::GadgetAvoid { equation: text, points, ring, m } => {
            let e = equation(text)?;
            let parsed = points.iter().map(|p| tuple(p)).collect::<Result<Vec<_>, _>>()?;
            let m = default_m(ring, m.clone())?;
            let rendered = render_equation(&avoidance_equation(&e, &parsed, &m, ring)?);
            Report::plain(
                json!({"equation": text, "points": points, "ring": ring.to_string(), "m": m.to_string()}),
                rendered.clone(),
                json!({"equation": rendered}),
            )
        }
        Command::Search { equation: text, ring, budget } => {
            let e = equation(text)?;
            let inputs = json!({"equation": text, "ring": ring.to_string(), "budget": budget});
            match dovetail_search(&e, ring, *budget, trace)? {
                SearchOutcome::Found { index, witness } => Report {
                    inputs,
                    text: format!("solvable {witness} i={index}"),
                    result: json!({"outcome": format!("solvable {witness} i={index}"), "verdict": "solvable", "halted": true}),
                    evidence: json!({"kind": "witness", "index": index, "point": witness.to_string()}),
                    exhausted: false,
                },
                SearchOutcome::Exhausted { steps } => Report {
                    inputs,
                    text: "exhausted".into(),
                    result: json!({"outcome": "exhausted", "verdict": null, "halted": false}),
                    evidence: json!({"kind": "budget-exhausted", "steps": steps, "last_index": steps.checked_sub(1)}),
                    exhausted: true,
                },
            }
        }
        Command::SemidecideFinite { equation: text, ring, oracle, m, budget } => {
            let e = equation(text)?;
            let m = default_m(ring, m.clone())?;
            let (spec, universe) = oracle_spec(oracle, &e, ring)?;
            let oracle_box = make_oracle(spec)?;
            let outcome = semidecide_finite(&e, ring, oracle_box.as_ref(), &m, *budget, trace)?;
            outcome_report(
                json!({
                    "equation": text,
                    "ring": ring.to_string(),
                    "oracle": oracle,
                    "universe": universe,
                    "m": m.to_string(),
                    "budget": budget,
                }),
                &outcome,
            )
        }
        Command::Decide { equation: text, list, ring, budget } => {
            let e = equation(text)?;
            let file = files::load_list(list).map_err(Failure::Invalid)?;
            let ring = match ring {
                Some(r) if r != &file.ring => {
                    return Err(Failure::Invalid(format!("--ring {r} differs from the list's ring {}", file.ring)));
                }
                _ => file.ring.clone(),
            };
            let outcome = decide_solvability(&e, &ring, &file.list, *budget, trace)?;
            outcome_report(
                json!({"equation": text, "ring": ring.to_string(), "list": list.display().to_string(), "budget": budget}),
                &outcome,
            )
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if cli.trace.is_some() && !cli.command.traces() {
        eprintln!("error: --trace applies only to search, semidecide-finite and decide");
        return ExitCode::from(1);
    }
    if cli.trace_flatten && cli.trace.is_none() {
        eprintln!("error: --trace-flatten needs --trace");
        return ExitCode::from(1);
    }
    let mut trace = match (&cli.trace, cli.trace_flatten) {
        (None, _) => None,
        (Some(_), false) => Some(Trace::new()),
        (Some(_), true) => Some(Trace::with_flattening()),
    };
    let report = run(&cli, trace.as_mut());
    if let (Some(path), Some(trace)) = (&cli.trace, &trace) {
        if let Err(e) = fs::write(path, trace.render()) {
            eprintln!("error: cannot write trace to {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    match report {
        Ok(report) => {
            if cli.json {
                let doc = json!({
                    "subcommand": cli.command.name(),
                    "inputs": report.inputs,
                    "result": report.result,
                    "evidence": report.evidence,
                });
                println!("{}", serde_json::to_string_pretty(&doc).expect("JSON values serialize"));
            } else {
                println!("{}", report.text);
            }
            if report.exhausted {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(failure) => {
            eprintln!("{failure}");
            ExitCode::from(1)
        }
    }
}
