use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use mertens::driver::{log_log_slope, DEFAULT_C};
use mertens::{mertens, Error, Mode, RunConfig, RunReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliMode {
    Elementary,
    Brute,
    Verify,
    Bench,
}

/// Exact value of the Mertens function M(x).
#[derive(Debug, Parser)]
#[command(version)]
struct Cli {
    /// Argument x, in decimal or as BASE^EXP (e.g. 10^12, 2^40).
    #[arg(value_parser = parse_x)]
    x: Option<u128>,

    /// Tuning constant for the split point v. If given, it is used as is and
    /// the run is refused when it would overflow; by default it is lowered
    /// automatically.
    #[arg(long)]
    c: Option<f64>,

    /// Worker threads (0 = all cores).
    #[arg(long, env = "MERTENS_THREADS", default_value_t = 0)]
    threads: usize,

    #[arg(long, value_enum, default_value_t = CliMode::Elementary)]
    mode: CliMode,

    /// One CSV row per x instead of `M(x) = value`.
    #[arg(long)]
    csv: bool,

    /// Several arguments, comma separated.
    #[arg(long, value_delimiter = ',', value_parser = parse_x)]
    x_list: Vec<u128>,

    /// Möbius segment length in the non-free pass.
    #[arg(long)]
    delta: Option<u64>,

    /// Largest x accepted in verify mode.
    #[arg(long, value_parser = parse_x, default_value = "10^9")]
    verify_limit: u128,
}

fn parse_x(s: &str) -> Result<u128, String> {
    let s = s.trim();
    let parsed = match s.split_once('^') {
        Some((base, exp)) => {
            let base: u128 = base
                .trim()
                .parse()
                .map_err(|e| format!("bad base in {s:?}: {e}"))?;
            let exp: u32 = exp
                .trim()
                .parse()
                .map_err(|e| format!("bad exponent in {s:?}: {e}"))?;
            base.checked_pow(exp)
                .ok_or_else(|| format!("{s} does not fit in 128 bits"))?
        }
        None => s.parse().map_err(|e| format!("bad integer {s:?}: {e}"))?,
    };
    if parsed == 0 {
        return Err("x must be at least 1".into());
    }
    Ok(parsed)
}

const CSV_HEADER: &str = "x,mertens,v,u,t_nonfree_s,t_free_s,t_bruteu_s,threads";

fn csv_row(r: &RunReport) -> String {
    format!(
        "{},{},{},{},{:.3},{:.3},{:.3},{}",
        r.x,
        r.value,
        r.v,
        r.u,
        r.t_nonfree.as_secs_f64(),
        r.t_free.as_secs_f64(),
        r.t_brute_u.as_secs_f64(),
        r.threads
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut xs = cli.x_list.clone();
    if let Some(x) = cli.x {
        xs.insert(0, x);
    }
    if xs.is_empty() {
        eprintln!("error: give X or --x-list");
        return ExitCode::from(1);
    }
    let mode = match cli.mode {
        CliMode::Elementary | CliMode::Bench => Mode::Elementary,
        CliMode::Brute => Mode::Brute,
        CliMode::Verify => Mode::Verify,
    };
    let csv = cli.csv || cli.mode == CliMode::Bench;
    if csv {
        println!("{CSV_HEADER}");
    }
    let mut timings = Vec::new();
    for &x in &xs {
        let mut config = RunConfig::new(x).mode(mode).threads(cli.threads);
        config.c = cli.c.unwrap_or(DEFAULT_C);
        config.auto_shrink = cli.c.is_none();
        config.nonfree.delta = cli.delta;
        config.verify_limit = cli.verify_limit;
        let start = std::time::Instant::now();
        let report = match mertens(&config) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(match e {
                    Error::OverflowGuard { .. } => 2,
                    Error::Mismatch { .. } => 3,
                    _ => 1,
                });
            }
        };
        timings.push((x, start.elapsed().as_secs_f64()));
        if report.c_adjusted(config.c) {
            eprintln!(
                "note: c lowered from {} to {:.4} to pass the overflow guard",
                config.c, report.c
            );
        }
        if csv {
            println!("{}", csv_row(&report));
        } else {
            println!("M({x}) = {}", report.value);
        }
    }
    if cli.mode == CliMode::Bench {
        match log_log_slope(&timings) {
            Some(s) => println!("# slope log2(time)/log2(x) = {s:.3}"),
            None => println!("# slope undefined"),
        }
    }
    ExitCode::SUCCESS
}
