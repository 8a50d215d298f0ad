use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use aritygap::oracle::{
    self, budget_from_env, function_at, space_size, Filter, SweepSpec, Theorem,
};
use aritygap::{
    arity_gap, classify, classify_boolean, classify_pseudo_boolean, diagonal, identification_minor,
    is_determined_by_oddsupp, is_restriction_determined_by_oddsupp, simple_minor, text, Error,
    FiniteFunction, MinorMap,
};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

const EXIT_DOMAIN: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_FAILURES: u8 = 3;

/// Essential variables, minors and arity gap of finite functions.
#[derive(Parser)]
#[command(name = "aritygap", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Io {
    /// Read functions from this file instead of stdin.
    #[arg(long = "in", value_name = "PATH")]
    input: Option<PathBuf>,
    /// Write output to this file instead of stdout.
    #[arg(long = "out", value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print ess, quasi-arity, essl, gap and the minimizing pair.
    Analyze {
        #[command(flatten)]
        io: Io,
    },
    /// Classify by arity gap.
    Classify {
        #[arg(long, conflicts_with = "pseudo_boolean")]
        boolean: bool,
        #[arg(long)]
        pseudo_boolean: bool,
        #[command(flatten)]
        io: Io,
    },
    /// Compute a simple minor. Slots are 1-based.
    Minor {
        #[arg(long, value_name = "I,J", conflicts_with_all = ["sigma", "diagonal"])]
        identify: Option<String>,
        #[arg(long, value_name = "A,B,...", requires = "target_arity", conflicts_with = "diagonal")]
        sigma: Option<String>,
        #[arg(long)]
        target_arity: Option<usize>,
        #[arg(long)]
        diagonal: bool,
        #[command(flatten)]
        io: Io,
    },
    /// Test whether the function factors through oddsupp.
    OddsuppCheck {
        /// Test the restriction to tuples with a repeated entry.
        #[arg(long)]
        restricted: bool,
        #[command(flatten)]
        io: Io,
    },
    /// Generate a function.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Print every function of a space, optionally filtered.
    Enumerate {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        b: usize,
        /// `gap=<g>` or `qa=<m>`.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        io: Io,
    },
    /// Sweep one theorem over a function space.
    Verify {
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        #[arg(long, requires = "seed")]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// `gap=<g>` or `qa=<m>`.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        io: Io,
    },
}

#[derive(Subcommand)]
enum GenKind {
    Salomaa {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        io: Io,
    },
    Quasi {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        io: Io,
    },
    Oddsupp {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        io: Io,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_domain_error() {
            Failure::Domain(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type CliResult<T> = Result<T, Failure>;

fn read_input(io: &Io) -> CliResult<Vec<FiniteFunction>> {
    let mut text = String::new();
    match &io.input {
        Some(path) => {
            text = fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?
        }
        None => {
            io::stdin().read_to_string(&mut text)?;
        }
    }
    let fs = text::parse_many(&text)?;
    if fs.is_empty() {
        return Err(Failure::Usage("no function in input".into()));
    }
    Ok(fs)
}

fn open_output(io: &Io) -> CliResult<Box<dyn Write>> {
    Ok(match &io.output {
        Some(path) => Box::new(io::BufWriter::new(fs::File::create(path).map_err(|e| {
            Failure::Usage(format!("cannot write {}: {e}", path.display()))
        })?)),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

/// Applies `op` to every input function, printing results in input order.
/// Domain errors on individual functions are reported and processing continues.
fn per_function<F>(io: &Io, op: F) -> CliResult<u8>
where
    F: Fn(&FiniteFunction) -> aritygap::Result<String>,
{
    let fs = read_input(io)?;
    let mut out = open_output(io)?;
    let mut code = 0;
    for f in &fs {
        match op(f) {
            Ok(line) => writeln!(out, "{line}")?,
            Err(e) if e.is_domain_error() => {
                eprintln!("aritygap: {e}");
                code = EXIT_DOMAIN;
            }
            Err(e) => return Err(e.into()),
        }
    }
    out.flush()?;
    Ok(code)
}

fn parse_slots(s: &str) -> CliResult<Vec<usize>> {
    s.split(',')
        .map(|p| match p.trim().parse::<usize>() {
            Ok(v) if v >= 1 => Ok(v - 1),
            _ => Err(Failure::Usage(format!("slots are 1-based integers, got `{p}`"))),
        })
        .collect()
}

fn parse_filter(s: Option<&str>) -> CliResult<Option<Filter>> {
    s.map(|s| s.parse::<Filter>().map_err(Failure::from)).transpose()
}

fn with_jobs<T: Send>(jobs: Option<usize>, run: impl FnOnce() -> T + Send) -> CliResult<T> {
    match jobs {
        None => Ok(run()),
        Some(0) => Err(Failure::Usage("--jobs must be positive".into())),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(pool.install(run))
        }
    }
}

fn emit(io: &Io, f: &FiniteFunction) -> CliResult<u8> {
    let mut out = open_output(io)?;
    writeln!(out, "{}", text::render(f))?;
    out.flush()?;
    Ok(0)
}

const ENUMERATE_CHUNK: u128 = 1 << 16;

fn enumerate(k: usize, n: usize, b: usize, filter: Option<Filter>, io: &Io) -> CliResult<u8> {
    let total = space_size(k, n, b)?;
    let budget = budget_from_env();
    if total > budget {
        return Err(Error::OracleInfeasible { needed: total, budget }.into());
    }
    let mut out = open_output(io)?;
    let mut start = 0;
    while start < total {
        let end = (start + ENUMERATE_CHUNK).min(total);
        let chunk: Vec<String> = (start..end)
            .into_par_iter()
            .map(|i| function_at(k, n, b, i))
            .filter(|f| filter.is_none_or(|flt| flt.matches(f)))
            .map(|f| text::render(&f))
            .collect();
        for s in chunk {
            writeln!(out, "{s}")?;
        }
        start = end;
    }
    out.flush()?;
    Ok(0)
}

fn run(cli: Cli) -> CliResult<u8> {
    match cli.command {
        Command::Analyze { io } => per_function(&io, |f| Ok(arity_gap(f)?.to_string())),
        Command::Classify {
            boolean,
            pseudo_boolean,
            io,
        } => per_function(&io, |f| {
            let c = if boolean {
                classify_boolean(f)?
            } else if pseudo_boolean {
                classify_pseudo_boolean(f)?
            } else {
                classify(f)?
            };
            Ok(c.to_string())
        }),
        Command::Minor {
            identify,
            sigma,
            target_arity,
            diagonal: diag,
            io,
        } => {
            if let Some(pair) = identify {
                let slots = parse_slots(&pair)?;
                let [i, j] = slots[..] else {
                    return Err(Failure::Usage("--identify takes two slots i,j".into()));
                };
                per_function(&io, |f| Ok(text::render(&identification_minor(f, i, j)?)))
            } else if let Some(sigma) = sigma {
                let map = MinorMap::new(parse_slots(&sigma)?, target_arity.expect("required by clap"))?;
                per_function(&io, |f| Ok(text::render(&simple_minor(f, &map)?)))
            } else if diag {
                per_function(&io, |f| Ok(text::render(&diagonal(f))))
            } else {
                Err(Failure::Usage(
                    "minor needs one of --identify, --sigma with --target-arity, or --diagonal".into(),
                ))
            }
        }
        Command::OddsuppCheck { restricted, io } => per_function(&io, |f| {
            let p = if restricted {
                is_restriction_determined_by_oddsupp(f)?
            } else {
                is_determined_by_oddsupp(f)?
            };
            Ok(p.to_string())
        }),
        Command::Gen { kind } => match kind {
            GenKind::Salomaa { k, io } => emit(&io, &oracle::gen_salomaa(k)?),
            GenKind::Quasi { k, n, b, m, seed, io } => {
                emit(&io, &oracle::gen_quasi_m_ary(k, n, b, m, seed)?)
            }
            GenKind::Oddsupp { k, n, b, seed, io } => {
                emit(&io, &oracle::gen_oddsupp_determined(k, n, b, seed)?)
            }
        },
        Command::Enumerate {
            k,
            n,
            b,
            filter,
            jobs,
            io,
        } => {
            let filter = parse_filter(filter.as_deref())?;
            with_jobs(jobs, || enumerate(k, n, b, filter, &io))?
        }
        Command::Verify {
            theorem,
            k,
            n,
            b,
            exhaustive: _,
            samples,
            seed,
            filter,
            jobs,
            io,
        } => {
            let theorem: Theorem = theorem.parse()?;
            let mut spec = match samples {
                Some(count) => SweepSpec::sampled(theorem, k, n, b, count, seed.expect("required by clap")),
                None => SweepSpec::exhaustive(theorem, k, n, b),
            };
            spec.filter = parse_filter(filter.as_deref())?;
            spec.budget = budget_from_env();
            let report = with_jobs(jobs, || oracle::verify(&spec))??;
            let mut out = open_output(&io)?;
            writeln!(out, "{report}")?;
            out.flush()?;
            for failure in &report.failures {
                eprintln!("{}: {}", text::render_line(&failure.function), failure.detail);
            }
            Ok(if report.failures.is_empty() { 0 } else { EXIT_FAILURES })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("aritygap: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("aritygap: {msg}");
            ExitCode::from(EXIT_DOMAIN)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("aritygap: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
