use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use olbsq::bench::run_report;
use olbsq::client::{run_query_with, ClientOptions};
use olbsq::files;
use olbsq::group::ParameterSet;
use olbsq::server::{serve, ProviderConfig, DEFAULT_MAX_CELLS};

const DEFAULT_PORT: u16 = 7420;
const LOG_ENV: &str = "OLBSQ_LOG";

/// Oblivious location-based service queries.
///
/// Logging is controlled by the OLBSQ_LOG environment variable (for example
/// `OLBSQ_LOG=debug`); `serve --log-level` overrides it.
#[derive(Parser)]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encrypt a services directory into a catalog and secret key.
    Setup {
        m: usize,
        n: usize,
        /// Directory of r<row>_c<col>.bin files; missing cells are empty.
        services_dir: PathBuf,
        out_dir: PathBuf,
        /// Deterministic randomness. For tests only: anyone with the seed has the key.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run the provider daemon.
    Serve {
        #[arg(long, default_value_t = format!("127.0.0.1:{DEFAULT_PORT}"))]
        listen: String,
        #[arg(long)]
        catalog: PathBuf,
        #[arg(long)]
        secret_key: PathBuf,
        /// Largest l*k answered per query.
        #[arg(long, default_value_t = DEFAULT_MAX_CELLS)]
        max_cells: usize,
        #[arg(long)]
        log_level: Option<String>,
    },
    /// Retrieve the l x k rectangle of cells (i+1..=i+l, j+1..=j+k).
    Query {
        /// host or host:port (default port 7420).
        host: String,
        i: usize,
        j: usize,
        l: usize,
        k: usize,
        /// Catalog file from `setup`; carries the public parameters.
        catalog: PathBuf,
        /// Write each cell to r<row>_c<col>.bin here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count operations and message sizes against the published cost tables.
    Bench {
        m: usize,
        n: usize,
        l: usize,
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Both)]
        format: Format,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Kv,
    Both,
}

fn rng(seed: Option<u64>) -> ChaCha20Rng {
    match seed {
        Some(s) => ChaCha20Rng::seed_from_u64(s),
        None => ChaCha20Rng::from_entropy(),
    }
}

fn with_port(host: &str) -> String {
    let has_port = match host.rsplit_once(':') {
        Some((h, p)) => {
            !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit()) && (!h.contains(':') || h.ends_with(']'))
        }
        None => false,
    };
    if has_port {
        host.to_owned()
    } else if host.contains(':') && !host.starts_with('[') {
        format!("[{host}]:{DEFAULT_PORT}")
    } else {
        format!("{host}:{DEFAULT_PORT}")
    }
}

/// `OLBSQ_LOG` if set, else `default`; an explicit `level` wins over both.
fn init_logging(default: &str, level: Option<&str>) {
    let mut builder = env_logger::Builder::from_env(env_logger::Env::new().filter_or(LOG_ENV, default));
    if let Some(level) = level {
        builder.parse_filters(level);
    }
    builder.init();
}

fn run(cli: Cli) -> olbsq::error::Result<()> {
    match cli.cmd {
        Command::Setup {
            m,
            n,
            services_dir,
            out_dir,
            seed,
        } => {
            init_logging("warn", None);
            let out = files::setup_dir(ParameterSet::default(), m, n, &services_dir, &out_dir, &mut rng(seed))?;
            println!("catalog: {}", out.catalog.display());
            println!("secret key: {} (keep private)", out.secret_key.display());
        }
        Command::Serve {
            listen,
            catalog,
            secret_key,
            max_cells,
            log_level,
        } => {
            let mut config = ProviderConfig::new(listen, catalog, secret_key);
            config.max_cells = max_cells;
            if let Some(level) = &log_level {
                config.log_level = level.clone();
            }
            init_logging("info", log_level.as_deref());
            serve(&config)?;
        }
        Command::Query {
            host,
            i,
            j,
            l,
            k,
            catalog,
            out,
        } => {
            init_logging("warn", None);
            let (pp, cat) = files::load_catalog(&catalog)?;
            let recovered = run_query_with(
                with_port(&host),
                &pp,
                &cat,
                (i, j, l, k),
                &ClientOptions::default(),
                &mut rng(None),
            )?;
            match out {
                Some(dir) => {
                    for path in files::write_recovered(&dir, &recovered)? {
                        println!("{}", path.display());
                    }
                }
                None => {
                    let mut stdout = std::io::stdout().lock();
                    for (cell, bytes) in recovered.iter() {
                        writeln!(
                            stdout,
                            "== {} ({} bytes)",
                            files::cell_file_name(cell.col, cell.row),
                            bytes.len()
                        )?;
                        stdout.write_all(bytes)?;
                        writeln!(stdout)?;
                    }
                }
            }
        }
        Command::Bench {
            m,
            n,
            l,
            k,
            format,
            seed,
        } => {
            init_logging("warn", None);
            let report = run_report(ParameterSet::default(), (m, n, l, k), &mut rng(seed))?;
            match format {
                Format::Text => print!("{report}"),
                Format::Kv => print!("{}", report.key_values()),
                Format::Both => print!("{report}\n{}", report.key_values()),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
