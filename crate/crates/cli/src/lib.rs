//! Command-line driver for `logtangent-core`: parallel table generation, a
//! disk cache of per-class contributions, and golden-table verification.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use logtangent_core::conjecture::{solve_degeneration, verify_conjectures, Status};
use logtangent_core::locgraph::Mode;

pub mod cache;
pub mod engine;
pub mod golden;
pub mod render;

use cache::{DiskCache, CACHE_ENV};
use engine::Engine;
use render::Format;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] logtangent_core::Error),
    #[error("{0}")]
    Runtime(String),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Ordered,
    Unordered,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Ordered => Mode::Ordered,
            ModeArg::Unordered => Mode::Unordered,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "logtangent", version, about = "Exact log GW invariants of the plane by torus localisation")]
struct Cli {
    /// Worker threads for per-graph evaluation [default: available cores]
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,
    /// Contribution cache directory [env: LOGTANGENT_CACHE_DIR]
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Ignore any configured cache directory
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Component contributions of one degree
    Table {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        degree: u32,
        #[arg(long, value_enum, default_value = "unordered")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Recompute tables and compare against the published ones
    VerifyTables {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=i64::from(golden::MAX_DEGREE)))]
        max_degree: u32,
    },
    /// Check the closed-form conjectures; prints a JSON report
    CheckConjectures {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_d: u32,
        /// Also compute tables up to this degree and check them
        #[arg(long, default_value_t = 0)]
        tables_through: u32,
    },
    /// Compare the split and direct evaluators on every graph class
    CrossCheck {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        degree: u32,
    },
    /// Degeneration balance for degree 2 or 3
    Degeneration {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        degree: u32,
    },
}

fn resolve_cache(cli: &Cli) -> Option<DiskCache> {
    if cli.no_cache {
        return None;
    }
    let dir = cli
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))?;
    DiskCache::open(dir)
}

/// Parses `args` (including the program name) and runs one subcommand.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                CliError::Core(logtangent_core::Error::UnsupportedDegree(_)) => EXIT_USAGE,
                _ => EXIT_FAILED,
            }
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let jobs = cli.jobs.map(|j| j as usize).unwrap_or_else(|| {
        std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
    });
    let engine = || Engine::new(jobs, resolve_cache(cli));
    match cli.command {
        Command::Table { degree, mode, format } => {
            let t = engine()?.table(degree, mode.into())?;
            out.write_all(render::table(&t, format).as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::VerifyTables { max_degree } => {
            let engine = engine()?;
            let mut ok = true;
            for d in 1..=max_degree {
                let got = engine.table(d, Mode::Unordered)?;
                let want = golden::table(d).expect("golden table present");
                if got == want {
                    writeln!(out, "degree {d}: ok (total {})", got.total())?;
                    continue;
                }
                ok = false;
                writeln!(out, "degree {d}: MISMATCH")?;
                let keys: std::collections::BTreeSet<_> = got.rows().keys().chain(want.rows().keys()).collect();
                for m in keys.into_iter().rev() {
                    let (g, w) = (got.rows().get(m), want.rows().get(m));
                    if g != w {
                        let show = |v: Option<&logtangent_core::exactq::Rat>| v.map_or("-".to_owned(), |v| v.to_string());
                        writeln!(out, "  {m}: computed {}, expected {}", show(g), show(w))?;
                    }
                }
            }
            Ok(if ok { EXIT_OK } else { EXIT_FAILED })
        }
        Command::CheckConjectures { max_d, tables_through } => {
            let engine = engine()?;
            let tables = (1..=tables_through.min(max_d))
                .map(|d| engine.table(d, Mode::Unordered))
                .collect::<Result<Vec<_>, _>>()?;
            let report = verify_conjectures(max_d, &tables);
            out.write_all(render::report_json(&report).as_bytes())?;
            let ok = report.iter().all(|e| e.status == Status::Pass);
            Ok(if ok { EXIT_OK } else { EXIT_FAILED })
        }
        Command::CrossCheck { degree } => {
            let (n, bad) = engine()?.cross_check(degree)?;
            if bad.is_empty() {
                writeln!(out, "all {n} graph classes: split == direct")?;
                return Ok(EXIT_OK);
            }
            writeln!(out, "{} of {n} graph classes differ:", bad.len())?;
            for k in bad {
                writeln!(out, "  {}", k.as_str())?;
            }
            Ok(EXIT_FAILED)
        }
        Command::Degeneration { degree } => {
            if !(2..=3).contains(&degree) {
                return Err(logtangent_core::Error::UnsupportedDegree(degree).into());
            }
            let t = engine()?.table(degree, Mode::Unordered)?;
            let p = solve_degeneration(degree, &t)?;
            out.write_all(render::degeneration(&p).as_bytes())?;
            Ok(EXIT_OK)
        }
    }
}
