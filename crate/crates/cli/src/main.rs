use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use svir::algebra::bracket_elements;
use svir::checks::{self, DegreeReading};
use svir::findim::TwoDimModule;
use svir::report::{
    ActResult, BracketResult, CheckRecord, DegenerateResult, Envelope, FindimResult, KernelResult, SelfcheckResult,
    SimplicityResult, VectorRecord,
};
use svir::solver::{self, DEFAULT_BUDGET};
use svir::{expr, Error, Rational, Sector, WhittakerData, WhittakerModule};

#[derive(Parser, Debug)]
#[command(
    name = "svir",
    version,
    about = "Exact computations in Whittaker modules over the N=1 super-Virasoro algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(clap::Args, Debug)]
struct Options {
    /// Neveu-Schwarz (ns) or Ramond (r).
    #[arg(long, global = true, value_enum, default_value_t = SectorArg::Ns)]
    sector: SectorArg,
    /// ψ(L_1), a rational such as 3 or -1/2.
    #[arg(long, global = true, default_value = "1", value_parser = parse_rational, allow_hyphen_values = true)]
    a: Rational,
    /// ψ(L_2).
    #[arg(long, global = true, default_value = "1", value_parser = parse_rational, allow_hyphen_values = true)]
    b: Rational,
    /// Central charge.
    #[arg(long, global = true, default_value = "0", value_parser = parse_rational, allow_hyphen_values = true)]
    c: Rational,
    /// Truncation bound on the filtration degree, doubled (12 means fdeg ≤ 6).
    #[arg(long, global = true, default_value_t = 8, allow_hyphen_values = true)]
    fdeg_max: i64,
    /// Step budget for span-growth probes.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Largest generator index for the two-dimensional module checks and the
    /// doubled index range of the algebra checks.
    #[arg(long, global = true, default_value_t = 8)]
    index_bound: i64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for the randomised checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Super-bracket of two algebra elements, e.g. "L(2)" "L(-2)".
    Bracket {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Normal-orders a module expression, e.g. "G(3/2)G(1/2)w".
    Act {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Whittaker vectors in the truncation.
    Kernel,
    /// Kernel plus cyclicity probes from every kernel vector and basis monomial.
    Simplicity,
    /// Probes the submodule generated by G(1)w (Ramond, b = 0, a != 0).
    DegenerateProbe,
    /// Checks the two-dimensional modules over the positive part.
    FindimVerify,
    /// Algebra and action property suite.
    Selfcheck,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SectorArg {
    Ns,
    R,
}

impl From<SectorArg> for Sector {
    fn from(s: SectorArg) -> Self {
        match s {
            SectorArg::Ns => Sector::NS,
            SectorArg::R => Sector::R,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim().parse::<Rational>().map_err(|e| format!("'{s}' is not a rational number ({e})"))
}

/// What a subcommand produced: its text rendering, its JSON payload and
/// whether the result matches the classification it is compared against.
struct Outcome {
    text: String,
    json: String,
    agrees: bool,
}

fn outcome<R: Serialize>(data: &WhittakerData, results: R, text: String, agrees: bool) -> Outcome {
    let json = serde_json::to_string_pretty(&Envelope::new(data, results)).expect("records serialise");
    Outcome { text, json, agrees }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn header(data: &WhittakerData) -> String {
    format!("sector {}  a = {}  b = {}  c = {}\n", data.sector.name(), data.a, data.b, data.c)
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let o = &cli.opts;
    let sector: Sector = o.sector.into();
    let data = WhittakerData::new(sector, o.a.clone(), o.b.clone(), o.c.clone());
    match &cli.command {
        Command::Bracket { left, right } => {
            let x = expr::parse(left, sector)?.to_lie_element()?;
            let y = expr::parse(right, sector)?.to_lie_element()?;
            let value = bracket_elements(&x, &y)?;
            let text = format!("{}\n", value.to_expr_string());
            Ok(outcome(&data, BracketResult::new(&x, &y, &value), text, true))
        }
        Command::Act { expr: src } => {
            let module = WhittakerModule::new(data.clone());
            let v = expr::parse(src, sector)?.to_module_vector(&module)?;
            let text = format!("{}\n", v.to_expr_string());
            let results = ActResult { input: src.clone(), result: VectorRecord::from(&v) };
            Ok(outcome(&data, results, text, true))
        }
        Command::Kernel => {
            let module = WhittakerModule::new(data.clone());
            let report = solver::whittaker_kernel(&module, o.fdeg_max)?;
            let expected = solver::expected_kernel(&data);
            let results = KernelResult::new(&report, expected.as_deref());
            let mut text = header(&data);
            let _ = writeln!(
                text,
                "truncation: doubled fdeg <= {}, {} basis monomials",
                o.fdeg_max, results.truncation_size
            );
            let _ = writeln!(text, "kernel_dimension: {}", results.kernel_dimension);
            for v in &report.kernel_basis {
                let _ = writeln!(text, "  {}", v.to_expr_string());
            }
            let _ = writeln!(text, "verified against all generators up to the cutoff: {}", yes(results.verified));
            if let (Some(e), Some(m)) = (&results.expected_basis, results.matches_expected) {
                let _ = writeln!(text, "expected: {{{}}}  matches: {}", e.join(", "), yes(m));
            }
            let agrees = results.verified && results.matches_expected != Some(false);
            Ok(outcome(&data, results, text, agrees))
        }
        Command::Simplicity => {
            let report = solver::simplicity_report(&data, o.fdeg_max, o.budget)?;
            let results = SimplicityResult::new(&data, &report);
            let mut text = header(&data);
            let _ =
                writeln!(text, "verdict: {} (evidence at doubled fdeg <= {})", results.verdict.as_str(), o.fdeg_max);
            let _ = writeln!(text, "kernel_dimension: {}", results.kernel_dimension);
            for p in &results.kernel_probes {
                let reach = match (&p.witness, &p.residual_coefficient) {
                    (Some(w), Some(k)) => format!("reaches w via [{}] with coefficient {k}", w.join(" ")),
                    _ => "does not reach w".to_string(),
                };
                let _ = writeln!(text, "  {}: {}{}", p.start, reach, if p.certified { " (certified)" } else { "" });
            }
            let _ = writeln!(
                text,
                "monomials: {} probed, {} reach w, {} certified",
                results.monomials_probed, results.monomials_reaching_w, results.monomials_certified
            );
            if let Some(v) = &results.witness_vector {
                let _ = writeln!(
                    text,
                    "proper-submodule witness: {v}{}",
                    if results.degenerate { " (degenerate)" } else { "" }
                );
            }
            let _ =
                writeln!(text, "expected simple: {}  agrees: {}", yes(results.expected_simple), yes(results.agrees));
            let agrees = results.agrees;
            Ok(outcome(&data, results, text, agrees))
        }
        Command::DegenerateProbe => {
            let report = solver::degenerate_submodule_probe(&data, o.fdeg_max, o.budget)?;
            let results = DegenerateResult::new(o.fdeg_max, &report);
            let mut text = header(&data);
            let _ = writeln!(text, "vector: {}", results.vector);
            let _ = writeln!(text, "is_whittaker: {}", results.is_whittaker);
            let _ = writeln!(text, "w_excluded: {} (evidence at doubled fdeg <= {})", results.w_excluded, o.fdeg_max);
            let _ = writeln!(text, "span_dimension: {}", results.span_dimension);
            let _ =
                writeln!(text, "budget: {} spent, exhausted: {}", results.budget_spent, yes(results.budget_exhausted));
            let agrees = results.is_whittaker && results.w_excluded;
            Ok(outcome(&data, results, text, agrees))
        }
        Command::FindimVerify => {
            let module = TwoDimModule::build(&data, o.index_bound);
            let results = FindimResult::new(&module, o.index_bound, module.verify_axioms(o.index_bound));
            let mut text = header(&data);
            let _ = writeln!(
                text,
                "axioms up to index {}: {}",
                o.index_bound,
                if results.axioms_hold { "hold" } else { "FAIL" }
            );
            if let Some(c) = &results.counterexample {
                let _ = writeln!(text, "  {c}");
            }
            let _ = writeln!(text, "invariant subspaces: {{{}}}", results.invariant_subspaces.join(", "));
            let _ = writeln!(text, "expected: {{{}}}", results.expected_subspaces.join(", "));
            let _ = writeln!(text, "simple: {}", yes(results.simple));
            let agrees = results.agrees();
            Ok(outcome(&data, results, text, agrees))
        }
        Command::Selfcheck => {
            let mut records: Vec<CheckRecord> = checks::algebra_suite(o.index_bound)
                .into_iter()
                .map(|(name, sweep)| CheckRecord::new(name, sweep))
                .collect();
            let probe_fdeg = o.fdeg_max.min(8);
            records.push(CheckRecord::new(
                "super-Leibniz action",
                checks::super_leibniz(&data, 200, o.seed, o.index_bound, probe_fdeg)?,
            ));
            records.push(CheckRecord::new(
                "derivation identity",
                checks::derivation_identity(&data, probe_fdeg.min(6), 4)?,
            ));
            records.push(CheckRecord::new("filtration bound", checks::filtration_bound(&data, o.fdeg_max)?));
            records.push(CheckRecord::new(
                "kill rule (signed degree)",
                checks::kill_rule(&data, o.fdeg_max, DegreeReading::Signed)?,
            ));
            records.push(CheckRecord::new(
                "kill rule (absolute degree)",
                checks::kill_rule(&data, o.fdeg_max, DegreeReading::Absolute)?,
            ));
            let results = SelfcheckResult::new(records);
            let mut text = header(&data);
            for r in &results.checks {
                let status = if r.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(text, "{status} {} ({} of {} cases failed)", r.name, r.failure_count, r.checked);
                for f in r.failures.iter().take(3) {
                    let _ = writeln!(text, "     {f}");
                }
            }
            let _ = writeln!(text, "doubled fdeg <= {}, index bound {}, seed {}", o.fdeg_max, o.index_bound, o.seed);
            let agrees = results.all_passed;
            Ok(outcome(&data, results, text, agrees))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let body = match cli.opts.format {
                Format::Text => out.text,
                Format::Json => out.json + "\n",
            };
            // a closed pipe downstream is not an error of ours
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            if out.agrees {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
