//! `dcgf`: generate, verify and classify divide-and-conquer sequences.
//!
//! Exit codes: 0 success, 1 runtime error or failed check, 2 usage error,
//! 3 no classifier match. Reports go to stdout, diagnostics to stderr.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dcgf::dsl;
use dcgf::fit::FitError;
use dcgf::io_oeis::parse_bfile;
use dcgf::{
    build_series, check_equation, classify, equation_for_family, eval_linear_rep, eval_recurrence, family_recurrence, rep_for_affine,
    FamilyError, FamilyKind, FamilySpec, MahlerEquation, SearchBounds, T6Convention, TruncatedSeries,
};
use num_bigint::BigInt;

#[derive(Parser)]
#[command(name = "dcgf", version, about = "Exact generating functions and recurrences for divide-and-conquer sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the first N coefficients of a family or DSL expression.
    Gen(GenArgs),
    /// Check generating function against recurrence and functional equation.
    Verify(VerifyArgs),
    /// Fit a b-file against every family inside the search bounds.
    Classify(ClassifyArgs),
    /// Check a functional equation file against a series.
    Mahler(MahlerArgs),
    /// Evaluate the linear representation of a T4 sequence.
    Tworat(TworatArgs),
}

#[derive(Args, Clone, Default)]
struct FamilyArgs {
    /// t1..t6, or one of ones-count, zeros-count, thue-morse, ruler-plus-one.
    #[arg(long)]
    family: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    d: Option<i64>,
    /// Tail coefficients c_1,..,c_D for T5 and T6.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    tail: Option<Vec<i64>>,
    /// Constant-term convention for T6.
    #[arg(long, value_enum, default_value_t = T6Arg::Regularized)]
    t6_convention: T6Arg,
}

#[derive(ValueEnum, Clone, Copy, Default, PartialEq, Eq)]
enum T6Arg {
    /// Subtract 1 from every summand, so a_0 = 0.
    #[default]
    Regularized,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Via {
    Gf,
    Rec,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Bfile,
    Csv,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// DSL text instead of a family.
    #[arg(long, conflicts_with = "family")]
    expr: Option<String>,
    #[arg(long, default_value_t = 64)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Via::Gf)]
    via: Via,
    #[arg(long, value_enum, default_value_t = Format::Bfile)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, default_value_t = 64)]
    n: usize,
}

#[derive(Args)]
struct ClassifyArgs {
    /// b-file with the sample.
    input: PathBuf,
    /// Number of leading terms to fit.
    #[arg(long, default_value_t = 64)]
    n: usize,
    #[arg(long, default_value_t = SearchBounds::default().c_max)]
    c_max: i64,
    #[arg(long, default_value_t = SearchBounds::default().alpha_max)]
    alpha_max: i64,
    #[arg(long, default_value_t = SearchBounds::default().d_max)]
    d_max: i64,
    #[arg(long, default_value_t = SearchBounds::default().tail_len_max)]
    tail_len_max: usize,
    #[arg(long, default_value_t = SearchBounds::default().tail_coeff_max)]
    tail_coeff_max: i64,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Oracle {
    /// sum 2^e0(n) z^n, built from binary digits.
    TwoPowE0,
}

#[derive(Args)]
struct MahlerArgs {
    /// Equation file.
    equation: PathBuf,
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, conflicts_with_all = ["family", "expr"])]
    oracle: Option<Oracle>,
    #[arg(long, conflicts_with = "family")]
    expr: Option<String>,
    #[arg(long, default_value_t = 64)]
    n: usize,
}

#[derive(Args)]
struct TworatArgs {
    #[arg(long, allow_hyphen_values = true)]
    alpha: i64,
    #[arg(long, allow_hyphen_values = true)]
    c: i64,
    #[arg(long, allow_hyphen_values = true)]
    d: i64,
    /// Half-open index range `a..b`.
    #[arg(long, value_parser = parse_range)]
    range: (u64, u64),
    /// Compare every value with the T4 recurrence.
    #[arg(long)]
    check: bool,
    #[arg(long, value_enum, default_value_t = Format::Bfile)]
    format: Format,
}

enum Failure {
    Usage(String),
    Runtime(String),
    Failed,
    NoMatch,
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl ToString) -> Failure {
    Failure::Usage(msg.to_string())
}

fn runtime(msg: impl ToString) -> Failure {
    Failure::Runtime(msg.to_string())
}

/// Parameter errors are the caller's fault; anything else is a runtime error.
fn family_failure(e: FamilyError) -> Failure {
    match e {
        FamilyError::Series(_) => runtime(e),
        _ => usage(e),
    }
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected `a..b`, got `{s}`"))?;
    let a: u64 = a.trim().parse().map_err(|_| format!("bad range start `{a}`"))?;
    let b: u64 = b.trim().parse().map_err(|_| format!("bad range end `{b}`"))?;
    if a > b {
        return Err(format!("empty range `{s}`"));
    }
    Ok((a, b))
}

impl FamilyArgs {
    fn given(&self) -> bool {
        self.family.is_some()
    }

    fn spec(&self) -> Result<FamilySpec, Failure> {
        let name = self.family.as_deref().ok_or_else(|| usage("--family is required"))?;
        let kind = FamilyKind::parse(name).ok_or_else(|| usage(format!("unknown family `{name}`")))?;
        let (wants_c, wants_alpha, wants_d, wants_tail) = match kind {
            FamilyKind::T1 | FamilyKind::T2 | FamilyKind::T3 => (true, false, false, false),
            FamilyKind::T4 => (true, true, true, false),
            FamilyKind::T5 => (true, false, false, true),
            FamilyKind::T6 => (false, false, false, true),
            _ => (false, false, false, false),
        };
        let given = [
            ("--c", self.c.is_some(), wants_c),
            ("--alpha", self.alpha.is_some(), wants_alpha),
            ("--d", self.d.is_some(), wants_d),
            ("--tail", self.tail.is_some(), wants_tail),
        ];
        for (flag, present, wanted) in given {
            if present && !wanted {
                return Err(usage(format!("{kind} does not take {flag}")));
            }
            if !present && wanted {
                return Err(usage(format!("{kind} requires {flag}")));
            }
        }
        let tail = self.tail.clone().unwrap_or_default();
        let spec = match kind {
            FamilyKind::T1 => FamilySpec::t1(self.c.unwrap_or_default()),
            FamilyKind::T2 => FamilySpec::t2(self.c.unwrap_or_default()),
            FamilyKind::T3 => FamilySpec::t3(self.c.unwrap_or_default()),
            FamilyKind::T4 => FamilySpec::t4(self.alpha.unwrap_or_default(), self.c.unwrap_or_default(), self.d.unwrap_or_default()),
            FamilyKind::T5 => FamilySpec::t5(self.c.unwrap_or_default(), tail),
            FamilyKind::T6 => {
                let mut spec = FamilySpec::t6(tail);
                spec.t6_convention = Some(match self.t6_convention {
                    T6Arg::Regularized => T6Convention::SubtractOne,
                });
                spec
            }
            named => FamilySpec::named(named),
        };
        spec.validate().map_err(family_failure)?;
        Ok(spec)
    }
}

fn check_order(n: usize) -> Outcome {
    if n < 2 {
        return Err(usage(format!("--n must be at least 2, got {n}")));
    }
    Ok(())
}

fn eval_expr(text: &str, n: usize) -> Result<TruncatedSeries, Failure> {
    let expr = dsl::parse(text).map_err(|e| usage(format!("expression: {e}")))?;
    dsl::evaluate(&expr, n).map_err(|e| runtime(format!("expression: {e}")))
}

fn render(values: &[BigInt], first: u64, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Bfile => {
            for (i, v) in values.iter().enumerate() {
                writeln!(out, "{} {v}", first + i as u64).expect("writing to a String");
            }
        }
        Format::Csv => {
            let parts: Vec<String> = values.iter().map(BigInt::to_string).collect();
            writeln!(out, "{}", parts.join(",")).expect("writing to a String");
        }
    }
    out
}

fn recurrence_values(spec: &FamilySpec, n: usize) -> Result<Vec<BigInt>, Failure> {
    let rec = family_recurrence(spec).map_err(family_failure)?;
    eval_recurrence(&rec, n).map_err(runtime)
}

fn cmd_gen(args: &GenArgs) -> Outcome {
    check_order(args.n)?;
    let values = match (&args.expr, args.via) {
        (Some(text), Via::Gf) => eval_expr(text, args.n)?.into_coeffs(),
        (Some(_), Via::Rec) => return Err(usage("--via rec needs a --family; expressions have no recurrence")),
        (None, via) => {
            let spec = args.family.spec()?;
            match via {
                Via::Gf => build_series(&spec, args.n).map_err(family_failure)?.into_coeffs(),
                Via::Rec => recurrence_values(&spec, args.n)?,
            }
        }
    };
    print!("{}", render(&values, 0, args.format));
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    check_order(args.n)?;
    let spec = args.family.spec()?;
    let series = build_series(&spec, args.n).map_err(family_failure)?;
    let rec = recurrence_values(&spec, args.n)?;

    println!("family: {spec}");
    if let Some(conv) = spec.canonical().t6_convention {
        println!("convention: {}", conv.describe());
    }
    println!("order: {}", args.n);

    let mismatch = series.coeffs().iter().zip(&rec).position(|(a, b)| a != b);
    let rec_ok = match mismatch {
        None => {
            println!("g.f. vs recurrence: PASS ({} terms)", args.n);
            true
        }
        Some(i) => {
            println!("g.f. vs recurrence: FAIL at n={i}: g.f. {} vs recurrence {}", series.coeff(i), rec[i]);
            false
        }
    };
    let eq = equation_for_family(&spec).map_err(runtime)?;
    let verdict = check_equation(&eq, &series).map_err(runtime)?;
    println!("functional equation: {verdict}");

    if rec_ok && verdict.is_pass() {
        println!("PASS");
        Ok(())
    } else {
        println!("FAIL");
        Err(Failure::Failed)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| runtime(format!("{}: {e}", path.display())))
}

fn cmd_classify(args: &ClassifyArgs) -> Outcome {
    let text = read(&args.input)?;
    let sample = parse_bfile(&text).map_err(|e| runtime(format!("{}: {e}", args.input.display())))?;
    let bounds = SearchBounds {
        c_max: args.c_max,
        alpha_max: args.alpha_max,
        d_max: args.d_max,
        tail_len_max: args.tail_len_max,
        tail_coeff_max: args.tail_coeff_max,
    };
    let report = match classify(&sample.prefix(args.n), &bounds) {
        Ok(r) => r,
        Err(e @ (FitError::SampleTooShort(_) | FitError::EmptyBounds)) => return Err(usage(e)),
        Err(e) => return Err(runtime(e)),
    };
    if report.matches.is_empty() {
        println!("no match in bounds");
        return Err(Failure::NoMatch);
    }
    for m in &report.matches {
        println!("{}", m.describe());
    }
    Ok(())
}

fn two_pow_e0(n: usize) -> TruncatedSeries {
    let coeffs = (0..n as u64)
        .map(|i| {
            let len = u64::BITS - i.leading_zeros();
            BigInt::from(1) << (len - i.count_ones())
        })
        .collect();
    TruncatedSeries::new(coeffs).expect("n >= 2")
}

fn cmd_mahler(args: &MahlerArgs) -> Outcome {
    check_order(args.n)?;
    let text = read(&args.equation)?;
    let eq: MahlerEquation = text.parse().map_err(|e| runtime(format!("{}: {e}", args.equation.display())))?;
    let (label, series) = match (&args.oracle, &args.expr, args.family.given()) {
        (Some(Oracle::TwoPowE0), _, _) => ("oracle two-pow-e0".to_string(), two_pow_e0(args.n)),
        (None, Some(text), _) => (format!("expression {text}"), eval_expr(text, args.n)?),
        (None, None, true) => {
            let spec = args.family.spec()?;
            (format!("family {spec}"), build_series(&spec, args.n).map_err(family_failure)?)
        }
        (None, None, false) => return Err(usage("give a series source: --family, --expr or --oracle")),
    };
    let verdict = check_equation(&eq, &series).map_err(runtime)?;
    println!("series: {label}");
    println!("order: {}", args.n);
    println!("{verdict}");
    if verdict.is_pass() {
        Ok(())
    } else {
        Err(Failure::Failed)
    }
}

fn cmd_tworat(args: &TworatArgs) -> Outcome {
    let rep = rep_for_affine(args.alpha, args.c, args.d).map_err(usage)?;
    let (start, end) = args.range;
    let values: Vec<BigInt> = (start..end).map(|n| eval_linear_rep(&rep, n)).collect();
    print!("{}", render(&values, start, args.format));
    if !args.check {
        return Ok(());
    }
    let rec = recurrence_values(&FamilySpec::t4(args.alpha, args.c, args.d), end as usize)?;
    match (start..end).zip(&values).find(|(n, v)| rec[*n as usize] != **v) {
        None => {
            println!("PASS ({} values match the T4 recurrence)", values.len());
            Ok(())
        }
        Some((n, v)) => {
            println!("FAIL at n={n}: representation {v} vs recurrence {}", rec[n as usize]);
            Err(Failure::Failed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Mahler(a) => cmd_mahler(a),
        Command::Tworat(a) => cmd_tworat(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Failed) => ExitCode::from(1),
        Err(Failure::NoMatch) => ExitCode::from(3),
    }
}
