use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use schur_cli::matrix_file::{write_transform, Format, MatrixFile};
use schur_cli::suites::{self, Suite, SuiteConfig};
use schur_cli::table::{
    fsymbol_rows, kostka_rows, parse_list, parse_partition, parse_pattern, rw_rows, ventry_rows, Side, TableRow,
};
use schur_cli::{CliError, CliResult};
use schur_core::bch::{schur_unitary_bch, schur_unitary_bch_highdim};
use schur_core::combinat::Composition;
use schur_core::krovi::schur_unitary_krovi;
use schur_core::linalg::unitarity_deviation;
use schur_core::schur_basis::DEFAULT_CAP;

#[derive(Parser)]
#[command(name = "schur", version, about = "Build and check Schur transform matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Krovi,
    Bch,
    BchHighdim,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Kostka,
    Fsymbol,
    Rw,
    Ventry,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Build a transform and write it as a matrix file.
    Build {
        #[arg(long, value_enum)]
        method: MethodArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Output path, `-` for stdout.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Largest allowed dⁿ.
        #[arg(long, env = "SCHUR_CAP", default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Emit coefficient tables as JSON lines.
    Table {
        #[arg(long, value_enum)]
        kind: TableKind,
        /// Size of the partitions, for kostka.
        #[arg(long)]
        n: Option<usize>,
        /// Shape, e.g. `3,2`.
        #[arg(long)]
        lambda: Option<String>,
        /// Weight for kostka, e.g. `2,1,2`.
        #[arg(long)]
        weight: Option<String>,
        /// Outer shape for fsymbol.
        #[arg(long)]
        nu: Option<String>,
        #[arg(long, value_enum)]
        side: Option<Side>,
        /// Level-d row for rw.
        #[arg(long)]
        upper: Option<String>,
        /// Level-(d−1) row for rw.
        #[arg(long)]
        lower: Option<String>,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        j: Option<usize>,
        /// Composition for ventry.
        #[arg(long)]
        mu: Option<String>,
        /// Yamanouchi word of a tableau for ventry, e.g. `1,1,1,2,2`.
        #[arg(long)]
        tableau: Option<String>,
        /// Compressed pattern rows for ventry, bottom first, e.g. `2;2,1;3,2,0`.
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification suites and print one line per check.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, env = "SCHUR_CAP", default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Damage the input first; every suite should then report a failure.
        #[arg(long)]
        perturb: bool,
    },
    /// Summarize a matrix file.
    Inspect { path: PathBuf },
}

fn output(path: Option<&PathBuf>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) if p.as_os_str() != "-" => Box::new(File::create(p)?),
        _ => Box::new(io::stdout().lock()),
    })
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> CliResult<&'a str> {
    v.as_deref().ok_or_else(|| CliError::Query(format!("--{flag} is required for this table")))
}

fn build(method: MethodArg, n: usize, d: usize, out: &PathBuf, format: Format, cap: usize) -> CliResult<bool> {
    let start = Instant::now();
    let u = match method {
        MethodArg::Krovi => schur_unitary_krovi(n, d, cap)?,
        MethodArg::Bch => schur_unitary_bch(n, d, cap)?,
        MethodArg::BchHighdim => schur_unitary_bch_highdim(n, d, cap)?,
    };
    let built = start.elapsed();
    write_transform(&u, format, output(Some(out))?)?;
    eprintln!(
        "{} n={n} d={d}: {dim}x{dim} in {} weight blocks (largest {}), unitarity deviation {:.2e}, built in {built:.2?}",
        u.method,
        u.blocks.len(),
        u.largest_block(),
        u.unitarity_deviation(),
        dim = u.dim(),
    );
    Ok(true)
}

#[allow(clippy::too_many_arguments)]
fn table(
    kind: TableKind,
    n: Option<usize>,
    lambda: &Option<String>,
    weight: &Option<String>,
    nu: &Option<String>,
    side: Option<Side>,
    upper: &Option<String>,
    lower: &Option<String>,
    i: Option<usize>,
    j: Option<usize>,
    mu: &Option<String>,
    tableau: &Option<String>,
    pattern: &Option<String>,
) -> CliResult<Vec<TableRow>> {
    let lambda = lambda.as_deref().map(parse_partition).transpose()?;
    match kind {
        TableKind::Kostka => {
            let w = weight.as_deref().map(parse_list).transpose()?;
            kostka_rows(n, lambda.as_ref(), w.as_deref())
        }
        TableKind::Fsymbol => {
            let lambda = lambda.ok_or_else(|| CliError::Query("--lambda is required for this table".into()))?;
            fsymbol_rows(&lambda, &parse_partition(required(nu, "nu")?)?, side)
        }
        TableKind::Rw => rw_rows(&parse_list(required(upper, "upper")?)?, &parse_list(required(lower, "lower")?)?, i, j),
        TableKind::Ventry => {
            let lambda = lambda.ok_or_else(|| CliError::Query("--lambda is required for this table".into()))?;
            let mu = Composition::new(parse_list(required(mu, "mu")?)?)?;
            let t = tableau.as_deref().map(parse_list).transpose()?;
            let m = pattern.as_deref().map(parse_pattern).transpose()?;
            ventry_rows(&lambda, &mu, t.as_deref(), m.as_ref())
        }
    }
}

fn run(cli: Cli) -> CliResult<bool> {
    match cli.command {
        Command::Build { method, n, d, out, format, cap } => build(method, n, d, &out, format, cap),
        Command::Table { kind, n, lambda, weight, nu, side, upper, lower, i, j, mu, tableau, pattern, out } => {
            let rows = table(kind, n, &lambda, &weight, &nu, side, &upper, &lower, i, j, &mu, &tableau, &pattern)?;
            let mut w = output(out.as_ref())?;
            for r in &rows {
                writeln!(w, "{}", r.to_line()?)?;
            }
            w.flush()?;
            Ok(true)
        }
        Command::Verify { suite, n, d, tol, cap, perturb } => {
            let reports = suites::run(suite, &SuiteConfig { n, d, tol, cap, perturb })?;
            let failed = reports.iter().filter(|r| !r.passed).count();
            for r in &reports {
                println!("{r}");
            }
            println!("{} checks, {failed} failed", reports.len());
            Ok(failed == 0)
        }
        Command::Inspect { path } => {
            let f = MatrixFile::read(File::open(&path)?)?;
            println!(
                "n={} d={} dim={} unitarity deviation {:.2e}",
                f.n,
                f.d,
                f.dim(),
                unitarity_deviation(&f.matrix)
            );
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
