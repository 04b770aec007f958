//! Command-line surface over the order-census toolbox. Every subcommand
//! emits one CSV or JSON table; `verify` runs the criterion suite.
//! Exit codes: 0 success, 1 verification or identity failure, 2 usage.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ordlab_cli::commands::{self, expsum_request};
use ordlab_cli::parallel::resolve_workers;
use ordlab_cli::report::{render_csv, render_json, Row};
use ordlab_cli::verify::{render_suite, run_suite, Level};
use ordlab_core::arith::RationalBase;
use ordlab_core::indicator::OrderSpec;
use ordlab_core::Error;

#[derive(Parser)]
#[command(
    name = "ordlab",
    about = "Multiplicative-order experiments over prime fields: orders, indicators, \
             exponential sums, censuses, and equal-order statistics",
    version
)]
struct Cli {
    /// Output format for report rows.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the report to a file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads; overrides ORDLAB_THREADS. Defaults to 1.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Seed for sampling subcommands; echoed in reports.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyLevel {
    /// Reduced ranges, under half a minute.
    Quick,
    /// The pinned acceptance budgets.
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Multiplicative order and index of a rational base mod p.
    Order {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        u: RationalBase,
    },
    /// Least primitive root mod p.
    PrimitiveRoot {
        #[arg(long)]
        p: u64,
    },
    /// Multiplicative-independence test of a tuple of bases.
    Admissible {
        /// Base, repeatable: --u 3 --u 5 --u 15.
        #[arg(long = "u", required = true, allow_hyphen_values = true)]
        bases: Vec<RationalBase>,
    },
    /// The three indicator representations at one (p, u, d).
    Indicator {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        u: RationalBase,
        #[arg(long, default_value_t = 1)]
        d: u64,
    },
    /// One exponential sum: value, magnitude, bound, ratio, term count.
    Expsum {
        /// kernel | coprime-kernel | gauss | power-resolvent | weil |
        /// incomplete | coprime-power | coprime-power-diff | periodic |
        /// coprime-periodic | double
        kind: String,
        #[arg(long)]
        p: Option<u64>,
        /// Auxiliary prime override; defaults to the least prime above p.
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        t: Option<u64>,
        #[arg(long)]
        d: Option<u64>,
        #[arg(long)]
        a: Option<u64>,
        #[arg(long)]
        x: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        w: Option<u64>,
        #[arg(long = "P")]
        cutoff: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        u: Option<RationalBase>,
    },
    /// Count primes in [x, 2x] with simultaneous prescribed orders.
    Census {
        #[arg(long)]
        x: u64,
        /// Order spec "u:d", repeatable; rational u as "n/m".
        #[arg(long = "spec", required = true, allow_hyphen_values = true)]
        specs: Vec<OrderSpec>,
        /// Reporting exponent in the analytic lower bound.
        #[arg(long = "B", default_value_t = 0.0)]
        b: f64,
        /// Lift the default x <= 10^7 sweep cap.
        #[arg(long)]
        allow_large: bool,
    },
    /// Totient-product main term over p = 1 mod lcm(d, e).
    Mainterm {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        e: u64,
    },
    /// Exact four-block decomposition audit for a pair of specs, given
    /// either as --spec u:d twice or as --u/--d plus --v/--e.
    Audit {
        #[arg(long)]
        x: u64,
        #[arg(long = "spec", allow_hyphen_values = true, conflicts_with_all = ["u", "v"])]
        specs: Vec<OrderSpec>,
        #[arg(long, allow_hyphen_values = true, requires = "v")]
        u: Option<RationalBase>,
        #[arg(long, default_value_t = 1)]
        d: u64,
        #[arg(long, allow_hyphen_values = true, requires = "u")]
        v: Option<RationalBase>,
        #[arg(long, default_value_t = 1)]
        e: u64,
        #[arg(long = "B", default_value_t = 0.0)]
        b: f64,
    },
    /// Equal-order probability, exact and optionally sampled.
    Stats {
        #[arg(long)]
        p: u64,
        /// Sample this many coprime pairs in addition to the exact value.
        #[arg(long)]
        trials: Option<u64>,
    },
    /// Average multiplicative order of an integer over moduli up to x.
    AvgOrder {
        #[arg(long)]
        x: u64,
        #[arg(long, allow_hyphen_values = true)]
        u: RationalBase,
    },
    /// Empirical probe for the main-term progression constant.
    TotientAvg {
        #[arg(long)]
        x: u64,
        #[arg(long, default_value_t = 1)]
        q: u64,
        #[arg(long, default_value_t = 0)]
        a: u64,
        /// Index, repeatable: --d 1 --d 2.
        #[arg(long = "d", required = true)]
        indices: Vec<u64>,
    },
    /// Run the verification suite; exit 1 if any criterion fails.
    Verify {
        #[arg(long, value_enum, default_value_t = VerifyLevel::Quick)]
        level: VerifyLevel,
    },
}

fn emit(cli_output: &Option<PathBuf>, text: &str) -> std::io::Result<()> {
    match cli_output {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn usage_exit(err: &Error) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let workers = resolve_workers(cli.workers);

    let rows: Result<Vec<Row>, Error> = match &cli.command {
        Command::Order { p, u } => commands::order_rows(*p, u),
        Command::PrimitiveRoot { p } => commands::primitive_root_rows(*p),
        Command::Admissible { bases } => commands::admissible_rows(bases),
        Command::Indicator { p, u, d } => commands::indicator_rows(*p, u, *d),
        Command::Expsum {
            kind,
            p,
            q,
            t,
            d,
            a,
            x,
            m,
            w,
            cutoff,
            u,
        } => expsum_request(kind, *p, *q, *t, *d, *a, *x, *m, *w, *cutoff, u.as_ref())
            .map(|req| commands::expsum_rows(&req)),
        Command::Census {
            x,
            specs,
            b,
            allow_large,
        } => {
            if *x > 10_000_000 && !allow_large {
                return usage_exit(&Error::InvalidInput(format!(
                    "census sweeps are capped at x = 10^7; pass --allow-large to sweep x = {x}"
                )));
            }
            commands::census_report(*x, specs.clone(), *b, workers)
                .map(|report| commands::census_rows(&report))
        }
        Command::Mainterm { x, d, e } => commands::mainterm_rows(*x, *d, *e),
        Command::Audit {
            x,
            specs,
            u,
            d,
            v,
            e,
            b,
        } => {
            let specs = match (u, v) {
                (Some(u), Some(v)) => {
                    OrderSpec::new(*u, *d).and_then(|su| Ok(vec![su, OrderSpec::new(*v, *e)?]))
                }
                _ if specs.len() == 2 => Ok(specs.clone()),
                _ => Err(Error::InvalidInput(
                    "audit needs two --spec flags or the --u/--v pair".into(),
                )),
            };
            specs.and_then(|specs| commands::audit_rows(*x, specs, *b))
        }
        Command::Stats { p, trials } => commands::stats_rows(*p, *trials, cli.seed, workers),
        Command::AvgOrder { x, u } => commands::avg_order_rows(*x, u),
        Command::TotientAvg { x, q, a, indices } => commands::totient_avg_rows(*x, *q, *a, indices),
        Command::Verify { level } => {
            let level = match level {
                VerifyLevel::Quick => Level::Quick,
                VerifyLevel::Full => Level::Full,
            };
            let outcomes = run_suite(level, workers, cli.seed);
            let text = render_suite(&outcomes);
            if emit(&cli.output, &text).is_err() {
                eprintln!("error: cannot write report");
                return ExitCode::from(2);
            }
            return if outcomes.iter().all(|o| o.pass) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };

    match rows {
        Ok(rows) => {
            let text = match cli.format {
                Format::Csv => render_csv(&rows),
                Format::Json => render_json(&rows),
            };
            if emit(&cli.output, &text).is_err() {
                eprintln!("error: cannot write report");
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        // Broken numeric identities are verification failures; everything
        // else the caller can fix is usage.
        Err(err @ Error::ResidualExceeded { .. }) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
        Err(err) => usage_exit(&err),
    }
}
