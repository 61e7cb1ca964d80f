//! Command-line front end. The library does the work; this module parses
//! arguments, loads configuration, manages the sieve cache, and renders one
//! report document per invocation.
//!
//! Exit codes are part of the interface: 0 on success (including help and
//! version), 2 for anything wrong with the request itself, 3 for runtime
//! failures such as I/O errors, a damaged cache file, or a limit above the
//! configured maximum.

use crate::analysis::{
    ap_report_with_workers, count_checkpoints_with_workers, fit_exponent, fit_scale_at_exponent,
    two_triangular_prime_counts_with_workers, CountTable,
};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::quadform::CombinationSpec;
use crate::report::{ApDoc, CountDoc, FitDoc, IdentityDoc, OutputFormat, Report, SieveDoc};
use crate::representability::{
    four_n_plus_one_is_two_squares, representable_primes_with_workers, sum_of_two_squares,
    sum_of_two_triangulars, ReprConfig,
};
use crate::sieve::{build_sieve_with, load_cache, prime_count, save_cache, BitSet};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

/// File name used for the sieve inside the cache directory.
pub const CACHE_FILE_NAME: &str = "primes.sieve";

#[derive(Parser, Debug)]
#[command(
    name = "polyprime",
    version,
    about = "Classify and count primes represented by weighted pairs of polygonal numbers",
    max_term_width = 100
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Output format; overrides the config file
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Write the report to this file instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Directory for the prime sieve cache; overrides the config file
    #[arg(long, global = true, value_name = "DIR")]
    cache: Option<PathBuf>,

    /// Worker threads for sieving and enumeration; overrides the config file
    #[arg(long, global = true)]
    workers: Option<usize>,
}

/// The r, s, mu, nu of the combination mu*T(r,m) + nu*T(s,n).
#[derive(Args, Debug, Clone, Copy)]
struct SpecArgs {
    /// Gonality of the first polygonal family (at least 3)
    #[arg(long)]
    r: u32,

    /// Gonality of the second polygonal family (at least 3)
    #[arg(long)]
    s: u32,

    /// Weight on T(r, m); must be coprime to nu
    #[arg(long)]
    mu: u64,

    /// Weight on T(s, n); must be coprime to mu
    #[arg(long)]
    nu: u64,
}

impl SpecArgs {
    fn spec(self) -> Result<CombinationSpec> {
        CombinationSpec::new(self.r, self.s, self.mu, self.nu)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify the prime-density regime of a combination, per parity case
    Classify {
        #[command(flatten)]
        spec: SpecArgs,
    },

    /// Count primes the combination represents, up to a limit
    Count {
        #[command(flatten)]
        spec: SpecArgs,

        /// Inclusive upper bound on the primes counted
        #[arg(long)]
        limit: u64,

        /// Smallest index admitted for m and n: 1 excludes zero terms
        #[arg(long, default_value_t = 1)]
        min_index: u64,

        /// List the primes themselves, not just the count
        #[arg(long)]
        list: bool,

        /// Also report counts at these intermediate bounds
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        checkpoints: Vec<u64>,
    },

    /// Fit count(N) ~ scale * N / (log N)^exponent over checkpointed counts
    Fit {
        #[command(flatten)]
        spec: SpecArgs,

        /// Bounds to count at; at least three, strictly increasing
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        checkpoints: Vec<u64>,

        /// Sieve bound; defaults to the largest checkpoint
        #[arg(long)]
        limit: Option<u64>,

        /// Smallest index admitted for m and n
        #[arg(long, default_value_t = 1)]
        min_index: u64,
    },

    /// Break representable primes down by residue class
    Ap {
        #[command(flatten)]
        spec: SpecArgs,

        /// Progression modulus
        #[arg(long)]
        modulus: u64,

        /// Inclusive upper bound on the primes considered
        #[arg(long)]
        limit: u64,

        /// Report at these bounds; defaults to the limit alone
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        checkpoints: Vec<u64>,

        /// Smallest index admitted for m and n
        #[arg(long, default_value_t = 1)]
        min_index: u64,
    },

    /// Count primes that are sums of two positive triangular numbers,
    /// residue class by residue class
    Oq {
        /// Progression modulus
        #[arg(long)]
        modulus: u64,

        /// Inclusive upper bound; defaults to the largest checkpoint
        #[arg(long)]
        limit: Option<u64>,

        /// Report at these bounds; defaults to the limit alone
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        checkpoints: Vec<u64>,
    },

    /// Verify the two classical identities the triangular case rests on
    IdentityCheck {
        /// Check every n and every prime up to this bound
        #[arg(long)]
        limit: u64,
    },

    /// Build the prime sieve, reporting the prime count and cache location
    Sieve {
        /// Inclusive sieve bound
        #[arg(long)]
        limit: u64,
    },
}

/// Parses `argv`, runs the request, and returns the process exit code.
/// Never panics on bad input; never prints partial reports.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = err.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code(&err)
        }
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidArgument(_) | Error::Fit(_) => 2,
        Error::CorruptCache(_) | Error::Io(_) | Error::Resource(_) => 3,
    }
}

fn run(cli: Cli) -> Result<()> {
    let mut config = RunConfig::from_env()?;
    if let Some(cache) = cli.global.cache.clone() {
        config.cache_dir = Some(cache);
    }
    if let Some(workers) = cli.global.workers {
        if workers == 0 {
            return Err(Error::invalid("workers must be at least 1"));
        }
        config.workers = workers;
    }
    if let Some(format) = cli.global.format {
        config.format = format;
    }
    let body = execute(cli.command, &config)?;
    match &cli.global.out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            stdout.flush()?;
        }
        Some(path) => std::fs::write(path, body)?,
    }
    Ok(())
}

fn execute(command: Command, config: &RunConfig) -> Result<String> {
    let format = config.format;
    match command {
        Command::Classify { spec } => Ok(spec.spec()?.classify().render(format)),

        Command::Count {
            spec,
            limit,
            min_index,
            list,
            checkpoints,
        } => {
            let cfg = ReprConfig::new(spec.spec()?, limit, min_index)?;
            let sieve = obtain_sieve(config, limit)?.sieve;
            let table = if checkpoints.is_empty() {
                None
            } else {
                let mut bounds = checkpoints;
                if *bounds.last().expect("nonempty") < limit {
                    bounds.push(limit);
                }
                Some(count_checkpoints_with_workers(
                    &cfg,
                    &sieve,
                    &bounds,
                    config.workers,
                )?)
            };
            let primes = representable_primes_with_workers(&cfg, &sieve, list, config.workers)?;
            let doc = CountDoc {
                spec: cfg.spec(),
                limit,
                min_index,
                count: primes.count,
                members: primes.members,
                checkpoints: table,
            };
            Ok(doc.render(format))
        }

        Command::Fit {
            spec,
            checkpoints,
            limit,
            min_index,
        } => {
            let top = *checkpoints
                .iter()
                .max()
                .ok_or_else(|| Error::invalid("at least one checkpoint is required"))?;
            let limit = limit.unwrap_or(top);
            let cfg = ReprConfig::new(spec.spec()?, limit, min_index)?;
            let sieve = obtain_sieve(config, limit)?.sieve;
            let table: CountTable =
                count_checkpoints_with_workers(&cfg, &sieve, &checkpoints, config.workers)?;
            let fit = fit_exponent(&table)?;
            let dense = fit_scale_at_exponent(&table, 1.0)?;
            let sparse = fit_scale_at_exponent(&table, 1.5)?;
            let doc = FitDoc::new(cfg.spec(), min_index, &table, fit, dense, sparse);
            Ok(doc.render(format))
        }

        Command::Ap {
            spec,
            modulus,
            limit,
            checkpoints,
            min_index,
        } => {
            let cfg = ReprConfig::new(spec.spec()?, limit, min_index)?;
            let sieve = obtain_sieve(config, limit)?.sieve;
            let bounds = if checkpoints.is_empty() {
                vec![limit]
            } else {
                checkpoints
            };
            let reports = ap_report_with_workers(&cfg, &sieve, modulus, &bounds, config.workers)?;
            let doc = ApDoc::new(cfg.spec(), min_index, modulus, reports);
            Ok(doc.render(format))
        }

        Command::Oq {
            modulus,
            limit,
            checkpoints,
        } => {
            let bounds = match (checkpoints.is_empty(), limit) {
                (true, Some(limit)) => vec![limit],
                (true, None) => {
                    return Err(Error::invalid("give --limit or --checkpoints"));
                }
                (false, _) => checkpoints,
            };
            let top = *bounds.iter().max().expect("nonempty");
            if limit.is_some_and(|limit| limit < top) {
                return Err(Error::invalid(format!(
                    "checkpoint {top} lies beyond the limit"
                )));
            }
            let sieve = obtain_sieve(config, limit.unwrap_or(top))?.sieve;
            let doc =
                two_triangular_prime_counts_with_workers(&sieve, modulus, &bounds, config.workers)?;
            Ok(doc.render(format))
        }

        Command::IdentityCheck { limit } => {
            if limit < 2 {
                return Err(Error::invalid("identity check needs a limit of at least 2"));
            }
            let sieve = obtain_sieve(config, limit)?.sieve;
            let doc = identity_check(limit, &sieve)?;
            Ok(doc.render(format))
        }

        Command::Sieve { limit } => {
            let obtained = obtain_sieve(config, limit)?;
            let doc = SieveDoc {
                limit,
                primes: prime_count(&obtained.sieve, limit)?,
                cache_path: obtained.cache_path.map(|p| p.display().to_string()),
            };
            Ok(doc.render(format))
        }
    }
}

fn identity_check(limit: u64, sieve: &BitSet) -> Result<IdentityDoc> {
    let mut triangular_holds = true;
    for n in 0..=limit {
        if sum_of_two_triangulars(n, true) != four_n_plus_one_is_two_squares(n) {
            triangular_holds = false;
            break;
        }
    }
    let mut primes_checked = 0;
    let mut square_law_holds = true;
    for p in sieve.ones().take_while(|&p| p <= limit) {
        primes_checked += 1;
        if sum_of_two_squares(p) != (p == 2 || p % 4 == 1) {
            square_law_holds = false;
            break;
        }
    }
    Ok(IdentityDoc {
        limit,
        triangular_identity_checked: limit + 1,
        triangular_identity_holds: triangular_holds,
        prime_square_law_checked: primes_checked,
        prime_square_law_holds: square_law_holds,
    })
}

#[derive(Debug)]
struct ObtainedSieve {
    sieve: BitSet,
    cache_path: Option<PathBuf>,
}

/// Produces a sieve covering `limit`, consulting the cache directory when
/// one is configured. A cached sieve with a large enough limit is reused
/// as-is; a smaller one is rebuilt at `limit` and overwritten. A cache file
/// that fails validation is an error, never silently rebuilt: the caller
/// should delete it deliberately.
fn obtain_sieve(config: &RunConfig, limit: u64) -> Result<ObtainedSieve> {
    if limit > config.max_limit {
        return Err(Error::Resource(format!(
            "limit {} exceeds the configured maximum {}",
            limit, config.max_limit
        )));
    }
    let dir = match &config.cache_dir {
        None => {
            let sieve = build_sieve_with(limit, config.workers, config.segment_bits)?;
            return Ok(ObtainedSieve {
                sieve,
                cache_path: None,
            });
        }
        Some(dir) => dir,
    };
    let path = dir.join(CACHE_FILE_NAME);
    if path.exists() {
        let cached = load_cache(&path)?;
        if cached.limit() >= limit {
            return Ok(ObtainedSieve {
                sieve: cached,
                cache_path: Some(path),
            });
        }
    }
    std::fs::create_dir_all(dir)?;
    let sieve = build_sieve_with(limit, config.workers, config.segment_bits)?;
    save_cache(&sieve, &path)?;
    Ok(ObtainedSieve {
        sieve,
        cache_path: Some(path),
    })
}
