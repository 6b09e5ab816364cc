//! Command-line driver: build doubling chains, check design files, and emit
//! factorizations.
//!
//! Exit codes are fixed for scripting: 0 success, 1 a requested check
//! failed, 2 usage or parse problems, 3 a freshly built object failed its
//! own verification (never written to disk in that case).

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use steiner_core::{
    build_chain_with, circle_method_factorization, difference_factorization,
    max_independent_brute, reduced_family, seed_sts9, upper_chromatic_brute, verify_bicoloring,
    verify_factorization, verify_independent, verify_matching_family, verify_maximal_independent,
    verify_sts, ChainOptions, Coloring, DesignDocument, DifferenceTriple, Error,
    FactorizationDocument, PhiStrategy, VerificationReport, DEFAULT_CHROMATIC_LIMIT,
    DEFAULT_INDEPENDENT_LIMIT,
};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_VERIFICATION: u8 = 3;

/// Environment variable overriding both exhaustive-search order limits.
const BRUTE_LIMIT_VAR: &str = "STEINER_BRUTE_LIMIT";

#[derive(Parser)]
#[command(
    name = "steiner",
    version,
    about = "Build, check, and serialize Steiner triple systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the doubling chain from the order-9 seed up to order 2^n - 7.
    Construct {
        /// Exponent of the target order 2^n - 7 (at least 4).
        #[arg(long = "target-n")]
        target_n: u32,
        /// Difference triple for every step, as "a,b,c".
        #[arg(long, default_value = "1,2,3")]
        triple: String,
        /// Factor assignment strategy.
        #[arg(long, value_enum, default_value_t = PhiArg::Parity)]
        phi: PhiArg,
        /// Output file, or output directory with --emit-chain.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        /// Write every chain level, not just the final system.
        #[arg(long)]
        emit_chain: bool,
    },
    /// Check a design file.
    Verify {
        /// Design document (json or txt).
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = CheckArg::All)]
        check: CheckArg,
        /// Additionally run an exhaustive oracle on the design.
        #[arg(long, value_enum)]
        brute: Option<BruteArg>,
        /// Machine-readable report on stdout.
        #[arg(long)]
        json: bool,
    },
    /// Emit a 1-factorization (or a reduced difference family).
    Factorize {
        /// Difference method: exponent of the order 2^n.
        #[arg(long)]
        n: Option<u32>,
        /// Circle method: the (even) order itself.
        #[arg(long)]
        m: Option<usize>,
        /// Drop the six factors of this difference triple, as "a,b,c".
        #[arg(long)]
        exclude: Option<String>,
        #[arg(long, value_enum, default_value_t = MethodArg::Difference)]
        method: MethodArg,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PhiArg {
    /// Split factors by difference parity; carries the independent set and
    /// the coloring along the chain.
    Parity,
    /// Assign factor i to point i; carries nothing.
    Index,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Txt,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckArg {
    Sts,
    Independent,
    Maximal,
    Bicoloring,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum BruteArg {
    MaxIndependent,
    UpperChromatic,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Difference,
    Circle,
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl fmt::Display) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }

    fn verification(message: impl fmt::Display) -> Self {
        CliError {
            code: EXIT_VERIFICATION,
            message: message.to_string(),
        }
    }
}

/// Parameter and parse problems are usage errors; failures of objects this
/// process built itself are verification errors.
impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        match err {
            Error::NotAnSts { .. } | Error::VerificationFailed { .. } => {
                CliError::verification(err)
            }
            _ => CliError::usage(err),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::usage(err)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Construct {
            target_n,
            triple,
            phi,
            out,
            format,
            emit_chain,
        } => construct(target_n, &triple, phi, &out, format, emit_chain),
        Command::Verify {
            input,
            check,
            brute,
            json,
        } => verify(&input, check, brute, json),
        Command::Factorize {
            n,
            m,
            exclude,
            method,
            out,
            format,
        } => factorize(n, m, exclude.as_deref(), method, &out, format),
    }
}

fn parse_triple(text: &str) -> Result<DifferenceTriple, CliError> {
    let fields: Vec<&str> = text.split(',').collect();
    if fields.len() != 3 {
        return Err(CliError::usage(format!(
            "expected a difference triple \"a,b,c\", got {text:?}"
        )));
    }
    let mut values = [0usize; 3];
    for (slot, field) in values.iter_mut().zip(&fields) {
        *slot = field
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("bad difference {field:?}")))?;
    }
    Ok(DifferenceTriple::new(values[0], values[1], values[2]))
}

fn render_design(doc: &DesignDocument, format: FormatArg) -> String {
    match format {
        FormatArg::Json => doc.render_json(),
        FormatArg::Txt => doc.render_txt(),
    }
}

fn extension(format: FormatArg) -> &'static str {
    match format {
        FormatArg::Json => "json",
        FormatArg::Txt => "txt",
    }
}

/// Writes via a temporary file in the target directory and renames into
/// place, so readers never observe a partial file.
fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    if let Some(dir) = dir {
        fs::create_dir_all(dir)?;
    }
    let mut temp = tempfile::NamedTempFile::new_in(dir.unwrap_or(Path::new(".")))?;
    temp.write_all(contents.as_bytes())?;
    temp.persist(path)
        .map_err(|e| CliError::usage(format!("cannot write {}: {}", path.display(), e.error)))?;
    Ok(())
}

fn construct(
    target_n: u32,
    triple: &str,
    phi: PhiArg,
    out: &Path,
    format: FormatArg,
    emit_chain: bool,
) -> Result<u8, CliError> {
    if target_n < 4 {
        return Err(CliError::usage(format!(
            "--target-n must be at least 4 (the order-9 seed), got {target_n}"
        )));
    }
    if target_n > 12 {
        return Err(CliError::usage(format!(
            "--target-n is capped at 12 (order 4089); got {target_n}"
        )));
    }
    let options = ChainOptions {
        triple: parse_triple(triple)?,
        phi: match phi {
            PhiArg::Parity => PhiStrategy::Parity,
            PhiArg::Index => PhiStrategy::Index,
        },
        verify: true,
    };
    let traces = build_chain_with(target_n, &options)?;

    let seed = seed_sts9();
    let seed_report = verify_sts(&seed.system);
    if !seed_report.passed() {
        return Err(CliError::verification("the order-9 seed failed its check"));
    }
    let mut seed_doc = DesignDocument::from_system(&seed.system);
    if matches!(phi, PhiArg::Parity) {
        seed_doc = seed_doc
            .with_independent_set(&seed.independent_set)
            .with_coloring(&seed.coloring);
    }

    if emit_chain {
        let mut emitted = vec![(seed.system.order(), seed.system.num_blocks(), seed_doc)];
        for trace in &traces {
            emitted.push((
                trace.result.order(),
                trace.result.num_blocks(),
                DesignDocument::from_trace(trace),
            ));
        }
        for (order, blocks, doc) in &emitted {
            let path = out.join(format!("sts_v{order}.{}", extension(format)));
            write_atomic(&path, &render_design(doc, format))?;
            println!("v={order} blocks={blocks}");
        }
    } else {
        let (order, blocks, doc) = match traces.last() {
            Some(trace) => (
                trace.result.order(),
                trace.result.num_blocks(),
                DesignDocument::from_trace(trace),
            ),
            None => (seed.system.order(), seed.system.num_blocks(), seed_doc),
        };
        write_atomic(out, &render_design(&doc, format))?;
        println!("v={order} blocks={blocks}");
    }
    Ok(0)
}

#[derive(Serialize)]
struct CheckOutcome {
    name: &'static str,
    passed: bool,
    violations: Vec<ViolationOutcome>,
    notes: Vec<String>,
}

#[derive(Serialize)]
struct ViolationOutcome {
    rule: &'static str,
    witness: String,
}

#[derive(Serialize)]
struct BruteOutcome {
    oracle: &'static str,
    value: usize,
    witness: Vec<usize>,
}

#[derive(Serialize)]
struct ReportOutput {
    passed: bool,
    checks: Vec<CheckOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    brute: Option<BruteOutcome>,
}

fn outcome(name: &'static str, report: &VerificationReport) -> CheckOutcome {
    CheckOutcome {
        name,
        passed: report.passed(),
        violations: report
            .violations
            .iter()
            .map(|v| ViolationOutcome {
                rule: v.rule,
                witness: v.witness.clone(),
            })
            .collect(),
        notes: report.notes.clone(),
    }
}

fn brute_limit(default: usize) -> Result<usize, CliError> {
    match std::env::var(BRUTE_LIMIT_VAR) {
        Ok(value) => value
            .parse()
            .map_err(|_| CliError::usage(format!("bad {BRUTE_LIMIT_VAR} value {value:?}"))),
        Err(_) => Ok(default),
    }
}

fn verify(
    input: &Path,
    check: CheckArg,
    brute: Option<BruteArg>,
    json: bool,
) -> Result<u8, CliError> {
    let text = fs::read_to_string(input)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", input.display())))?;
    let doc = DesignDocument::parse(&text)?;
    let system = doc.to_system()?;

    let independent_set = || -> Result<&Vec<usize>, CliError> {
        doc.independent_set.as_ref().ok_or_else(|| {
            CliError::usage("the document carries no independent_set to check")
        })
    };
    let coloring = || -> Result<Coloring, CliError> {
        let assignment = doc
            .coloring
            .clone()
            .ok_or_else(|| CliError::usage("the document carries no coloring to check"))?;
        Ok(Coloring::new(assignment)?)
    };

    let mut checks = Vec::new();
    let all = check == CheckArg::All;
    if all || check == CheckArg::Sts {
        checks.push(outcome("sts", &verify_sts(&system)));
    }
    if check == CheckArg::Independent || (all && doc.independent_set.is_some()) {
        checks.push(outcome(
            "independent",
            &verify_independent(&system, independent_set()?),
        ));
    }
    if check == CheckArg::Maximal || (all && doc.independent_set.is_some()) {
        match verify_maximal_independent(&system, independent_set()?) {
            Ok(report) => checks.push(outcome("maximal", &report)),
            Err(Error::NotIndependent { block }) => checks.push(CheckOutcome {
                name: "maximal",
                passed: false,
                violations: vec![ViolationOutcome {
                    rule: "not-independent",
                    witness: format!("contains block {{{},{},{}}}", block[0], block[1], block[2]),
                }],
                notes: Vec::new(),
            }),
            Err(other) => return Err(other.into()),
        }
    }
    if check == CheckArg::Bicoloring || (all && doc.coloring.is_some()) {
        checks.push(outcome(
            "bicoloring",
            &verify_bicoloring(&system, &coloring()?),
        ));
    }

    let brute_outcome = match brute {
        Some(BruteArg::MaxIndependent) => {
            let limit = brute_limit(DEFAULT_INDEPENDENT_LIMIT)?;
            let (size, witness) = max_independent_brute(&system, limit)?;
            Some(BruteOutcome {
                oracle: "max-independent",
                value: size,
                witness,
            })
        }
        Some(BruteArg::UpperChromatic) => {
            let limit = brute_limit(DEFAULT_CHROMATIC_LIMIT)?;
            let search = upper_chromatic_brute(&system, limit)?;
            Some(BruteOutcome {
                oracle: "upper-chromatic",
                value: search.max_classes,
                witness: search
                    .witness
                    .map(|c| c.assignment().to_vec())
                    .unwrap_or_default(),
            })
        }
        None => None,
    };

    let passed = checks.iter().all(|c| c.passed);
    let output = ReportOutput {
        passed,
        checks,
        brute: brute_outcome,
    };
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&output).expect("report serialization")
        );
    } else {
        for check in &output.checks {
            println!(
                "check {}: {}",
                check.name,
                if check.passed { "ok" } else { "FAILED" }
            );
            for violation in &check.violations {
                println!("  {}: {}", violation.rule, violation.witness);
            }
            for note in &check.notes {
                println!("  {note}");
            }
        }
        if let Some(brute) = &output.brute {
            let witness = brute
                .witness
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",");
            println!("{} = {} (witness: {witness})", brute.oracle, brute.value);
        }
    }
    Ok(if passed { 0 } else { EXIT_CHECK_FAILED })
}

fn factorize(
    n: Option<u32>,
    m: Option<usize>,
    exclude: Option<&str>,
    method: MethodArg,
    out: &Path,
    format: FormatArg,
) -> Result<u8, CliError> {
    let doc = match method {
        MethodArg::Difference => {
            let n = n.ok_or_else(|| {
                CliError::usage("the difference method takes an exponent via --n")
            })?;
            if m.is_some() {
                return Err(CliError::usage(
                    "--m belongs to the circle method; the difference method takes --n",
                ));
            }
            if !(2..=12).contains(&n) {
                return Err(CliError::usage(format!(
                    "--n must be between 2 and 12, got {n}"
                )));
            }
            let fact = difference_factorization(n);
            match exclude {
                Some(text) => {
                    let triple = parse_triple(text)?;
                    let family = reduced_family(&fact, triple)?;
                    let report = verify_matching_family(fact.m(), &family);
                    if !report.passed() {
                        return Err(CliError::verification("the reduced family failed its check"));
                    }
                    FactorizationDocument::from_factors(fact.m(), &family)
                }
                None => {
                    if !verify_factorization(&fact).passed() {
                        return Err(CliError::verification(
                            "the factorization failed its check",
                        ));
                    }
                    FactorizationDocument::from_factorization(&fact)
                }
            }
        }
        MethodArg::Circle => {
            if n.is_some() {
                return Err(CliError::usage(
                    "the circle method takes an even order via --m, not --n",
                ));
            }
            if exclude.is_some() {
                return Err(CliError::usage(
                    "--exclude applies to the difference method only",
                ));
            }
            let m = m.ok_or_else(|| CliError::usage("the circle method takes --m"))?;
            if !(2..=4096).contains(&m) {
                return Err(CliError::usage(format!(
                    "--m must be between 2 and 4096, got {m}"
                )));
            }
            let fact = circle_method_factorization(m)?;
            if !verify_factorization(&fact).passed() {
                return Err(CliError::verification("the factorization failed its check"));
            }
            FactorizationDocument::from_factorization(&fact)
        }
    };

    let rendered = match format {
        FormatArg::Json => doc.render_json(),
        FormatArg::Txt => doc.render_txt(),
    };
    write_atomic(out, &rendered)?;
    println!("m={} factors={}", doc.m, doc.factors.len());
    Ok(0)
}
