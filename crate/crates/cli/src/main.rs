use std::path::PathBuf;
use std::process::ExitCode;

use addbasis_core::basis::{self, DEFAULT_ORDER_CAP};
use addbasis_core::bounds::{self, BoundValue};
use addbasis_core::harness::corpus::{emit_corpus, load_corpus_with_cap};
use addbasis_core::harness::report::SkipReason;
use addbasis_core::harness::verify::{kneser_exhaustive, kneser_sampled};
use addbasis_core::harness::{
    emit_report, generate_corpus, run_corpus, verify_suites, CorpusEntry, EntryOutcome, Format,
    HarnessError, SuiteResult, VerifyConfig, CAP_ENV,
};
use addbasis_core::Error;
use clap::{Parser, Subcommand};

const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(
    name = "addbasis",
    version,
    about = "Orders of additive bases after removing finite sets"
)]
struct Cli {
    /// Default order cap for corpus entries that do not set one.
    #[arg(long, global = true, env = CAP_ENV, default_value_t = DEFAULT_ORDER_CAP)]
    cap: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order, eventual gcd and density of every basis in a corpus file.
    Analyze { file: PathBuf },
    /// Full removal report for every entry of a corpus file.
    Remove { file: PathBuf },
    /// Bound table for the given parameters.
    Bounds {
        #[arg(long)]
        h: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        d: Option<u64>,
        #[arg(long)]
        eta: Option<u64>,
        #[arg(long)]
        mu: Option<u64>,
        /// The removed set is an arithmetic progression.
        #[arg(long)]
        ap: bool,
        #[arg(long, default_value = "md")]
        format: String,
    },
    /// Run the invariant suites.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        max_modulus: u64,
        #[arg(long)]
        json: bool,
    },
    /// Write a random corpus.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate removal reports for a corpus file.
    Report {
        file: PathBuf,
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Check the second Kneser theorem on pairs of residue sets.
    Kneser {
        #[arg(long)]
        modulus: u64,
        /// All pairs for every modulus up to `--modulus`.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
}

fn input_error(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(EXIT_INPUT)
}

fn load(file: &PathBuf, cap: u64) -> Result<Vec<CorpusEntry>, HarnessError> {
    load_corpus_with_cap(file, cap)
}

fn outcome_code(outcomes: &[EntryOutcome]) -> ExitCode {
    let violated = outcomes
        .iter()
        .filter_map(EntryOutcome::report)
        .any(|r| !r.passed());
    let capped = outcomes.iter().any(|o| {
        matches!(
            o,
            EntryOutcome::Skipped {
                reason: SkipReason::CapExceeded(_),
                ..
            }
        )
    });
    if violated {
        ExitCode::from(EXIT_VIOLATION)
    } else if capped {
        ExitCode::from(EXIT_CAP)
    } else {
        ExitCode::SUCCESS
    }
}

fn print_skips(outcomes: &[EntryOutcome]) {
    for o in outcomes {
        if let EntryOutcome::Skipped { name, reason } = o {
            eprintln!("skipped {name}: {reason}");
        }
    }
}

fn analyze(entries: &[CorpusEntry]) -> ExitCode {
    let mut capped = false;
    for e in entries {
        println!("{}: A = {}", e.name, e.basis);
        let gcd =
            basis::eventual_gcd(&e.basis).map_or_else(|err| err.to_string(), |g| g.to_string());
        println!(
            "  eventual gcd {gcd}, lower density {}",
            e.basis.lower_density()
        );
        match basis::order(&e.basis, e.order_cap) {
            Ok(r) => println!("  order {}", r.order),
            Err(Error::CapExceeded(cap)) => {
                capped = true;
                println!("  order above cap {cap}");
            }
            Err(err) => println!("  not a basis: {err}"),
        }
    }
    if capped {
        ExitCode::from(EXIT_CAP)
    } else {
        ExitCode::SUCCESS
    }
}

fn remove(entries: &[CorpusEntry]) -> ExitCode {
    let outcomes = run_corpus(entries);
    for o in &outcomes {
        match o {
            EntryOutcome::Skipped { name, reason } => println!("{name}: skipped ({reason})"),
            EntryOutcome::Report(r) => {
                let p = &r.params;
                println!("{}: G(A) = {}, G(A \\ X) = {}", r.name, r.h, r.exact);
                println!("  k = {}, d = {}, eta = {}, mu = {}", p.k, p.d, p.eta, p.mu);
                for b in &r.bounds {
                    println!(
                        "  {:<10} {:>8}  slack {}",
                        b.name.as_str(),
                        b.value,
                        r.slack(b)
                    );
                }
                println!(
                    "  decomposition {}, mu construction {}",
                    r.decomposition, r.theorem5
                );
                for v in &r.violations {
                    println!("  VIOLATION: {v}");
                }
            }
        }
    }
    outcome_code(&outcomes)
}

fn report(entries: &[CorpusEntry], format: Format) -> ExitCode {
    let outcomes = run_corpus(entries);
    let reports: Vec<_> = outcomes
        .iter()
        .filter_map(EntryOutcome::report)
        .cloned()
        .collect();
    print!("{}", emit_report(&reports, format));
    print_skips(&outcomes);
    for r in reports.iter().filter(|r| !r.passed()) {
        for v in &r.violations {
            eprintln!("VIOLATION in {}: {v}", r.name);
        }
    }
    outcome_code(&outcomes)
}

fn bound_table(
    h: u64,
    k: u64,
    d: Option<u64>,
    eta: Option<u64>,
    mu: Option<u64>,
    ap: bool,
) -> Vec<BoundValue> {
    let mut rows = vec![bounds::nash_general(h, k)];
    if let Some(d) = d {
        rows.push(bounds::farhi_d(h, d));
        if d >= 1 {
            rows.push(bounds::remark_d(h, d));
        }
    }
    if let Some(eta) = eta {
        rows.push(bounds::farhi_eta(h, eta));
    }
    if let Some(mu) = mu {
        rows.push(bounds::farhi_mu(h, mu));
    }
    if ap {
        let mut cor2 = bounds::farhi_d(h, k - 1);
        cor2.name = bounds::BoundName::Cor2;
        rows.push(cor2);
    }
    if k == 1 {
        rows.extend(bounds::historical_single(h));
    }
    rows
}

fn print_bounds(rows: &[BoundValue], h: u64, k: u64, format: Format) {
    let magnitude = bounds::magnitude_reference(h, k);
    match format {
        Format::Json => {
            let doc = serde_json::json!({ "bounds": rows, "magnitude": magnitude });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("bounds serialize")
            );
        }
        Format::Csv => {
            println!("name,value,certified");
            for b in rows {
                println!("{},{},{}", b.name.as_str(), b.value, b.is_certified());
            }
            println!("magnitude_lower,{:.3},false", magnitude.lower);
            println!("magnitude_upper,{:.3},false", magnitude.upper);
        }
        Format::Markdown => {
            println!("| name | value | certified |");
            println!("|---|---|---|");
            for b in rows {
                println!(
                    "| {} | {} | {} |",
                    b.name.as_str(),
                    b.value,
                    b.is_certified()
                );
            }
            println!("| magnitude_lower | {:.3} | false |", magnitude.lower);
            println!("| magnitude_upper | {:.3} | false |", magnitude.upper);
        }
    }
}

fn print_suites(suites: &[SuiteResult], json: bool) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(suites).expect("suites serialize")
        );
        return;
    }
    for s in suites {
        let status = if s.passed { "PASS" } else { "FAIL" };
        println!("{status} {} ({} cases)", s.name, s.cases);
        if let Some(c) = &s.counterexample {
            println!("  counterexample: {c}");
        }
    }
}

fn suites_code(suites: &[SuiteResult]) -> ExitCode {
    if suites.iter().all(|s| s.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VIOLATION)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.cap == 0 {
        return input_error(format!("{CAP_ENV} / --cap must be positive"));
    }
    match cli.command {
        Command::Analyze { file } => match load(&file, cli.cap) {
            Ok(entries) => analyze(&entries),
            Err(e) => input_error(e),
        },
        Command::Remove { file } => match load(&file, cli.cap) {
            Ok(entries) => remove(&entries),
            Err(e) => input_error(e),
        },
        Command::Report { file, format } => {
            let format: Format = match format.parse() {
                Ok(f) => f,
                Err(e) => return input_error(e),
            };
            match load(&file, cli.cap) {
                Ok(entries) => report(&entries, format),
                Err(e) => input_error(e),
            }
        }
        Command::Bounds {
            h,
            k,
            d,
            eta,
            mu,
            ap,
            format,
        } => {
            let format: Format = match format.parse() {
                Ok(f) => f,
                Err(e) => return input_error(e),
            };
            if h == 0 || k == 0 || eta == Some(0) || mu == Some(0) {
                return input_error("h, k, eta and mu must be positive");
            }
            print_bounds(&bound_table(h, k, d, eta, mu, ap), h, k, format);
            ExitCode::SUCCESS
        }
        Command::Verify {
            seed,
            max_modulus,
            json,
        } => {
            let config = VerifyConfig {
                seed,
                max_modulus,
                ..VerifyConfig::default()
            };
            let summary = verify_suites(&config);
            print_suites(&summary.suites, json);
            suites_code(&summary.suites)
        }
        Command::Gen { seed, count, out } => {
            let text = emit_corpus(&generate_corpus(seed, count));
            match out {
                Some(path) => match std::fs::write(&path, text) {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(e) => input_error(format!("cannot write {}: {e}", path.display())),
                },
                None => {
                    print!("{text}");
                    ExitCode::SUCCESS
                }
            }
        }
        Command::Kneser {
            modulus,
            exhaustive,
            seed,
            samples,
        } => {
            if modulus == 0 || modulus > 63 || (exhaustive && modulus > 10) {
                return input_error("modulus must be in 1..=63, and at most 10 with --exhaustive");
            }
            let result = if exhaustive {
                kneser_exhaustive(modulus)
            } else {
                kneser_sampled(seed, samples, modulus..=modulus)
            };
            print_suites(std::slice::from_ref(&result), false);
            suites_code(std::slice::from_ref(&result))
        }
    }
}
