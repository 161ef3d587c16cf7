use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use scdt::catalog::CatalogName;
use scdt::codefile::write_code;
use scdt::report::{
    analyze, bound_report, catalog_list, resolve_target, scan_report, AnalyzeOptions, Report,
};

#[derive(Parser)]
#[command(
    name = "scdt",
    version,
    about = "Exact verification of spherical few-distance designs"
)]
struct Cli {
    /// Worker threads for the parallel passes.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: profile, scheme, orderings, Galois action, Levenshtein, LP, rationality.
    Analyze {
        /// A code file or `catalog:<name>`.
        target: String,
        /// Dense cross-checks for small codes and the extended corpus.
        #[arg(long)]
        deep: bool,
        /// Append decimal hints (untrusted).
        #[arg(long)]
        approx: bool,
    },
    /// Built-in reference codes.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// LP attainment certificate.
    Bound { target: String },
    /// Association scheme tables.
    Scheme {
        target: String,
        #[arg(long)]
        deep: bool,
    },
    /// Parametric contradiction scans.
    Scan {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..=5))]
        s: u32,
        #[arg(long, default_value_t = 3)]
        n_min: u64,
        #[arg(long, default_value_t = 30)]
        n_max: u64,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Emit { name: String, path: PathBuf },
}

fn finish(report: Report) -> ExitCode {
    print!("{}", report.text);
    if report.ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("scdt: {msg}");
    ExitCode::from(2)
}

fn run(cli: Cli) -> ExitCode {
    match cli.command {
        Command::Analyze {
            target,
            deep,
            approx,
        } => match resolve_target(&target, deep) {
            Ok(code) => finish(analyze(&code, AnalyzeOptions { deep, approx })),
            Err(e) => usage(e),
        },
        Command::Catalog {
            action: CatalogAction::List,
        } => {
            print!("{}", catalog_list());
            ExitCode::SUCCESS
        }
        Command::Catalog {
            action: CatalogAction::Emit { name, path },
        } => {
            let code = match name.parse::<CatalogName>().and_then(|n| n.construct()) {
                Ok(c) => c,
                Err(e) => return usage(e),
            };
            match write_code(&code, &path) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => usage(format!("cannot write {}: {e}", path.display())),
            }
        }
        Command::Bound { target } => match resolve_target(&target, true) {
            Ok(code) => finish(bound_report(&code)),
            Err(e) => usage(e),
        },
        Command::Scheme { target, deep } => match resolve_target(&target, deep) {
            Ok(code) => finish(scdt::report::scheme_report(&code)),
            Err(e) => usage(e),
        },
        Command::Scan { s, n_min, n_max } => {
            if n_min > n_max {
                return usage("--n-min exceeds --n-max");
            }
            finish(scan_report(s, n_min, n_max))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            return usage(e);
        }
    }
    run(cli)
}
