use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use abelmax_core::abelmax::{
    max_abelian_brute_with_cap, max_abelian_order_with, SearchOptions, DEFAULT_BRUTE_CAP,
};
use abelmax_core::catalog::{
    build_named_in, default_catalog, load_manifest, CatalogError, GroupSpec,
};
use abelmax_core::numtheory::{
    asymptotic_ratio, f_of, g_of, h_of, large_prime_count_exceptions, NumError, EXACT_F_CAP,
};
use abelmax_core::permgroup::{GroupError, DEFAULT_ENUM_CAP};
use abelmax_core::verify::{analyze_specs, run_suite, Suite, VerifyError, VerifyOptions};
use clap::{Args, Parser, Subcommand, ValueEnum};

mod series;

#[derive(Parser, Debug)]
#[command(
    name = "abelmax",
    version,
    about = "Maximal abelian subgroups and the bounds they give on |G|"
)]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Config {
    /// Largest group order the brute-force oracle accepts.
    #[arg(long, global = true, env = "ABELMAX_BRUTE_CAP", default_value_t = DEFAULT_BRUTE_CAP,
          value_parser = clap::value_parser!(u64).range(1..))]
    brute_cap: u64,
    /// Largest group order whose elements may be listed.
    #[arg(long, global = true, env = "ABELMAX_ENUM_CAP", default_value_t = DEFAULT_ENUM_CAP,
          value_parser = clap::value_parser!(u64).range(1..))]
    enum_cap: u64,
    #[arg(long, global = true, env = "ABELMAX_WORKERS", default_value_t = 1,
          value_parser = clap::value_parser!(u64).range(1..))]
    workers: u64,
    /// Write the result here instead of stdout.
    #[arg(long, global = true, env = "ABELMAX_OUT")]
    out: Option<PathBuf>,
    #[arg(long, global = true, env = "ABELMAX_FORMAT", value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Catalog manifest used when `verify` gets no specs.
    #[arg(long, global = true, env = "ABELMAX_MANIFEST")]
    manifest: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    #[command(flatten)]
    Number(NumberCommand),
    /// Number-theory functions, also available at the top level.
    Numtheory {
        #[command(subcommand)]
        sub: NumberCommand,
    },
    /// Largest abelian subgroup order of one group.
    Mgroup {
        spec: GroupSpec,
        /// Also run the brute-force oracle and compare.
        #[arg(long)]
        brute: bool,
    },
    /// Run a verification suite on the given specs or the catalog.
    Verify { suite: Suite, specs: Vec<GroupSpec> },
    /// CSV of n, ln f(n), ln f(n)/(n/2). Items are `n` or `start..end[:step]`.
    Series { items: Vec<String> },
}

#[derive(Subcommand, Debug, Clone)]
enum NumberCommand {
    /// Product of all prime powers up to n.
    G { n: u64 },
    /// Product of the primes in (n/2, n].
    H { n: u64 },
    /// n g(n) / h(n).
    F { n: u64 },
    /// ln f(n) / (n/2), to 12 significant digits.
    Ratio { n: u64 },
    /// m up to the limit with fewer than two primes in (m/2, m].
    Exceptions { limit: u64 },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Verification(String),
    Capacity(String),
    Runtime(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) | Failure::Runtime(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Capacity(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m)
            | Failure::Verification(m)
            | Failure::Capacity(m)
            | Failure::Runtime(m) => m,
        }
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::Capacity { .. } => Failure::Capacity(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::Group(g) => g.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Catalog(c) => c.into(),
            VerifyError::Group(g) => g.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<NumError> for Failure {
    fn from(e: NumError) -> Self {
        match e {
            NumError::ExactCap { .. } => Failure::Capacity(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure::Runtime(format!("cannot write {}: {e}", path.display()))
}

fn emit(config: &Config, body: &str) -> Result<(), Failure> {
    match &config.out {
        Some(path) => fs::write(path, body).map_err(|e| io_failure(path, e)),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Runtime(e.to_string()))
        }
    }
}

/// `x` rounded to `digits` significant digits, without exponent notation.
pub(crate) fn significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

fn number(config: &Config, cmd: &NumberCommand) -> Result<(), Failure> {
    let exact_cap = |n: u64| {
        if n > EXACT_F_CAP {
            Err(NumError::ExactCap {
                n,
                cap: EXACT_F_CAP,
            })
        } else {
            Ok(n)
        }
    };
    let (name, n, value) = match *cmd {
        NumberCommand::G { n } => ("g", n, g_of(exact_cap(n)?).to_string()),
        NumberCommand::H { n } => ("h", n, h_of(exact_cap(n)?).to_string()),
        NumberCommand::F { n } => ("f", n, f_of(n)?.to_string()),
        NumberCommand::Ratio { n } => ("ratio", n, significant(asymptotic_ratio(n)?.ratio, 12)),
        NumberCommand::Exceptions { limit } => {
            let list: Vec<String> = large_prime_count_exceptions(limit)
                .iter()
                .map(u64::to_string)
                .collect();
            ("exceptions", limit, list.join(" "))
        }
    };
    let body = match config.format {
        Format::Text => format!("{value}\n"),
        Format::Csv => format!("function,n,value\n{name},{n},{value}\n"),
        Format::Json => format!(
            "{}\n",
            serde_json::json!({ "function": name, "n": n, "value": value })
        ),
    };
    emit(config, &body)
}

fn mgroup(config: &Config, spec: &GroupSpec, brute: bool) -> Result<(), Failure> {
    let group = build_named_in(spec, None)?.with_enum_cap(config.enum_cap);
    let workers = config.workers as usize;
    let result = max_abelian_order_with(&group, SearchOptions { workers })?;
    let brute_m = if brute {
        Some(max_abelian_brute_with_cap(&group, config.brute_cap)?.m)
    } else {
        None
    };
    let witness: Vec<String> = result
        .witness
        .generators
        .iter()
        .map(|g| g.to_cycle_string(1))
        .collect();
    // node counts depend on scheduling once subtrees run in parallel
    let nodes = (workers == 1).then_some(result.nodes_explored);
    let body = match config.format {
        Format::Text => {
            let mut s = format!(
                "group: {spec}\norder: {}\nm: {}\nwitness_order: {}\nnormal_in_parent: {}\n",
                group.order(),
                result.m,
                result.witness.order,
                result.witness.normal_in_parent
            );
            for w in &witness {
                s.push_str(&format!("witness: {w}\n"));
            }
            if let Some(n) = nodes {
                s.push_str(&format!("nodes: {n}\n"));
            }
            if let Some(b) = brute_m {
                s.push_str(&format!("brute_m: {b}\n"));
            }
            s
        }
        Format::Csv => format!(
            "group,order,m,witness_order,normal_in_parent,witness\n{spec},{},{},{},{},\"{}\"\n",
            group.order(),
            result.m,
            result.witness.order,
            result.witness.normal_in_parent,
            witness.join(" ")
        ),
        Format::Json => {
            let mut v = serde_json::json!({
                "group": spec.to_string(),
                "order": group.order().to_string(),
                "m": result.m,
                "witness": {
                    "generators": witness,
                    "order": result.witness.order,
                    "normal_in_parent": result.witness.normal_in_parent,
                },
            });
            if let Some(n) = nodes {
                v["nodes_explored"] = n.into();
            }
            if let Some(b) = brute_m {
                v["brute_m"] = b.into();
            }
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
    };
    emit(config, &body)?;
    match brute_m {
        Some(b) if b != result.m => Err(Failure::Verification(format!(
            "search found m = {}, brute force found {b}",
            result.m
        ))),
        _ => Ok(()),
    }
}

fn verify(config: &Config, suite: Suite, specs: Vec<GroupSpec>) -> Result<(), Failure> {
    let (specs, base_dir) = match (&config.manifest, specs.is_empty()) {
        (_, false) => (specs, None),
        (Some(path), true) => (load_manifest(path)?, path.parent().map(Path::to_path_buf)),
        (None, true) => (default_catalog(), None),
    };
    let options = VerifyOptions {
        workers: config.workers as usize,
        enum_cap: config.enum_cap,
        base_dir,
    };
    let subjects = analyze_specs(&specs, &options)?;
    let report = run_suite(suite, &subjects)?;
    let body = match config.format {
        Format::Json => format!("{}\n", report.to_json()),
        Format::Csv => report.to_csv(),
        Format::Text => report.to_text(),
    };
    emit(config, &body)?;
    if config.out.is_some() {
        println!("{}", report.summary_line());
    }
    if report.ok() {
        Ok(())
    } else {
        let failures: Vec<String> = report
            .failures()
            .map(|c| serde_json::to_string(c).expect("json"))
            .collect();
        Err(Failure::Verification(format!(
            "{}\n{}",
            report.summary_line(),
            failures.join("\n")
        )))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let config = &cli.config;
    match cli.command {
        Command::Number(cmd) | Command::Numtheory { sub: cmd } => number(config, &cmd),
        Command::Mgroup { spec, brute } => mgroup(config, &spec, brute),
        Command::Verify { suite, specs } => verify(config, suite, specs),
        Command::Series { items } => {
            let body = series::render(&items, config.format)?;
            emit(config, &body)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
