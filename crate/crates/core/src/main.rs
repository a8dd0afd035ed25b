use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use algebraic_heights::catalog::{
    build_catalog_with, emit, emit_to_path, load_errata, load_golden, phi_table, verify_golden,
    CatalogOptions, Format, DEFAULT_PRECISION,
};
use algebraic_heights::{CatalogEntry, Exec};

#[derive(Parser)]
#[command(
    name = "algheights",
    version,
    about = "Real algebraic numbers in Cantor height order"
)]
struct Cli {
    /// Worker threads; output does not depend on this.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the catalog up to a height.
    Enumerate {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_height: u32,
        /// Certify values to width 10^-D and print D-1 digits.
        #[arg(long, default_value_t = DEFAULT_PRECISION, value_parser = clap::value_parser!(u32).range(1..))]
        precision: u32,
        #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
        format: OutFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the count matrix per height and degree.
    Phi {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_height: u32,
    },
    /// Compare the catalog against a transcribed golden file.
    Verify {
        #[arg(long, default_value_t = 7, value_parser = clap::value_parser!(u32).range(1..))]
        max_height: u32,
        #[arg(long)]
        golden: PathBuf,
        #[arg(long)]
        errata: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
    Text,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Csv => Format::Csv,
            OutFormat::Json => Format::Json,
            OutFormat::Text => Format::Text,
        }
    }
}

fn build(
    max_height: u32,
    precision: u32,
    jobs: Option<u32>,
) -> algebraic_heights::Result<Vec<CatalogEntry>> {
    let mut opts = CatalogOptions {
        precision,
        ..CatalogOptions::default()
    };
    match jobs {
        Some(1) => {
            opts.exec = Exec::Sequential;
            build_catalog_with(max_height, &opts)
        }
        #[cfg(feature = "parallel")]
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j as usize)
                .build()
                .expect("thread pool");
            pool.install(|| build_catalog_with(max_height, &opts))
        }
        _ => build_catalog_with(max_height, &opts),
    }
}

fn run(cli: Cli) -> algebraic_heights::Result<ExitCode> {
    match cli.command {
        Command::Enumerate {
            max_height,
            precision,
            format,
            out,
        } => {
            let catalog = build(max_height, precision, cli.jobs)?;
            match out {
                Some(path) => emit_to_path(&catalog, format.into(), &path)?,
                None => {
                    let stdout = std::io::stdout();
                    let mut lock = stdout.lock();
                    emit(&catalog, format.into(), &mut lock)
                        .and_then(|_| lock.flush())
                        .map_err(|source| algebraic_heights::Error::Io {
                            path: PathBuf::from("<stdout>"),
                            source,
                        })?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Phi { max_height } => {
            let catalog = build(max_height, DEFAULT_PRECISION, cli.jobs)?;
            print!("{}", phi_table(&catalog).render());
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            max_height,
            golden,
            errata,
        } => {
            let rows = load_golden(&golden)?;
            let errata = match errata {
                Some(p) => load_errata(&p)?,
                None => Vec::new(),
            };
            let catalog = build(max_height, DEFAULT_PRECISION, cli.jobs)?;
            let report = verify_golden(&catalog, &rows, &errata);
            print!("{}", report.summary());
            Ok(if report.is_ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
