mod commands;
mod input;
mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use syzlab_core::error::AlgebraError;

use crate::commands::Functor;
use crate::input::{load_ring, parse_range};
use crate::report::Report;

const MODULE_HELP: &str = "Module expressions: \"k\" (residue field), \"R\" (the ring), \
\"omega\" (canonical module), \"(f1, f2)\" (ideal), \"syz(n, expr)\", \"@file.json\", or inline \
JSON with \"gens\", \"shifts\", or a syzygy builder {\"base\", \"parts\", \"quotient\"}. \
Ring arguments take a file path or inline JSON. SYZLAB_DEGREE_CAP overrides the reporting \
degree window.";

#[derive(Parser)]
#[command(
    name = "syzlab",
    version,
    about = "Graded modules over quotient rings: resolutions, Ext/Tor, ring criteria",
    after_help = MODULE_HELP
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Output format: aligned text or machine JSON
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Ring-level invariants
    Ring {
        #[command(subcommand)]
        cmd: RingCmd,
    },
    /// Minimal graded free resolution with shifts and differentials
    Resolve {
        #[arg(long)]
        ring: String,
        #[arg(long, default_value = "k")]
        module: String,
        /// Number of resolution steps
        #[arg(long, default_value_t = 6)]
        length: usize,
    },
    /// Graded Betti table
    Betti {
        #[arg(long)]
        ring: String,
        #[arg(long, default_value = "k")]
        module: String,
        /// Homological depth of the table
        #[arg(long, default_value_t = 5)]
        depth: usize,
    },
    /// Presentation of the n-th syzygy module
    Syzygy {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        module: String,
        /// Syzygy index n; 0 is the minimal presentation of the module
        #[arg(long)]
        index: usize,
    },
    /// Hilbert series and function window
    Hilbert {
        #[arg(long)]
        ring: String,
        /// Defaults to the ring itself
        #[arg(long)]
        module: Option<String>,
    },
    /// Socle as a graded vector space
    Socle {
        #[arg(long)]
        ring: String,
        /// Defaults to the ring itself
        #[arg(long)]
        module: Option<String>,
    },
    /// Graded lengths of Ext^i(M,N)
    Ext {
        #[arg(long)]
        ring: String,
        #[arg(long = "M", value_name = "MODULE")]
        m: String,
        #[arg(long = "N", value_name = "MODULE")]
        n: String,
        /// Inclusive homological index range a..b
        #[arg(long, default_value = "1..8")]
        range: String,
    },
    /// Graded lengths of Tor_i(M,N)
    Tor {
        #[arg(long)]
        ring: String,
        #[arg(long = "M", value_name = "MODULE")]
        m: String,
        #[arg(long = "N", value_name = "MODULE")]
        n: String,
        /// Inclusive homological index range a..b
        #[arg(long, default_value = "1..8")]
        range: String,
    },
    /// Hom(M,N) as a presented module
    Hom {
        #[arg(long)]
        ring: String,
        #[arg(long = "M", value_name = "MODULE")]
        m: String,
        #[arg(long = "N", value_name = "MODULE")]
        n: String,
    },
    /// Trace ideal and free-summand witness
    Trace {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        module: String,
    },
    /// Canonical module and Cohen-Macaulay type
    Canonical {
        #[arg(long)]
        ring: String,
    },
    /// Mechanical checkers with classifier cross-checks
    Check {
        #[command(subcommand)]
        cmd: CheckCmd,
    },
    /// Bundled example corpus
    Corpus {
        #[command(subcommand)]
        cmd: CorpusCmd,
    },
}

#[derive(Subcommand)]
enum RingCmd {
    /// Dimension, depth, multiplicity, Gorenstein and friends
    Classify {
        #[arg(long)]
        ring: String,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// The socle annihilates every positive syzygy
    SocleLemma {
        #[arg(long)]
        ring: String,
        #[arg(long, default_value = "k")]
        module: String,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
    },
    /// Syzygies of k decompose after killing a linear regular element
    Takahashi {
        #[arg(long)]
        ring: String,
        /// Linear form to quotient by
        #[arg(long)]
        ell: String,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        /// Betti numbers compared up to this homological depth
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// High syzygies have no free summands
    NoSummand {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
    },
    /// Free summands of syzygies of the canonical module detect Gorenstein
    GorensteinOmegaScan {
        #[arg(long)]
        ring: String,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
    },
    /// Regularity via an Ext/Tor vanishing window between MCM modules
    Regularity {
        #[arg(long)]
        ring: String,
        #[arg(long = "M", value_name = "MODULE")]
        m: String,
        #[arg(long = "N", value_name = "MODULE")]
        n: String,
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
    /// Gorenstein via an Ext(L,R) vanishing window
    GorensteinExt {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
    /// Gorenstein via Ext/Tor vanishing windows against the canonical module
    GorensteinOmega {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
    /// Totally reflexive test: biduality plus Ext vanishing
    Gdim {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
}

#[derive(Subcommand)]
enum CorpusCmd {
    /// Run the acceptance corpus and print one line per criterion
    Run {
        /// Seed override for the randomized criteria
        #[arg(long)]
        seed: Option<u64>,
        /// Run a single criterion (1..=11)
        #[arg(long)]
        criterion: Option<usize>,
        /// Compare the summary against a golden file (timing excluded)
        #[arg(long)]
        golden: Option<PathBuf>,
    },
}

fn run(cli: &Cli) -> syzlab_core::error::Result<Report> {
    match &cli.command {
        Cmd::Ring { cmd: RingCmd::Classify { ring } } => {
            let any = load_ring(ring)?;
            with_ring!(any, |desc, r| commands::ring_classify(desc, r))
        }
        Cmd::Resolve { ring, module, length } => {
            let any = load_ring(ring)?;
            with_ring!(any, |_desc, r| commands::resolve(r, module, *length))
        }
        Cmd::Betti { ring, module, depth } => {
            let any = load_ring(ring)?;
            with_ring!(any, |_desc, r| commands::betti(r, module, *depth))
        }
        Cmd::Syzygy { ring, module, index } => {
            let any = load_ring(ring)?;
            with_ring!(any, |_desc, r| commands::syzygy(r, module, *index))
        }
        Cmd::Hilbert { ring, module } => {
            let any = load_ring(ring)?;
            with_ring!(any, |_desc, r| commands::hilbert(r, module.as_deref()))
        }
        Cmd::Socle { ring, module } => {
            let any = load_ring(ring)?;
            with_ring!(any, |_desc, r| commands::socle_cmd(r, module.as_deref()))
        }
        Cmd::Ext { ring, m, n, range } => {
            let (lo, hi) = parse_range(range)?;
            let any = load_ring(ring)?;
            with_ring!(any, |_desc, r| commands::ext_tor(r, m, n, lo, hi, Functor::Ext))
        }
        Cmd::Tor { ring, m, n, range } => {
            let (lo, hi) = parse_range(range)?;
            let any = load_ring(ring)?;
            with_ring!(any, |_desc, r| commands::ext_tor(r, m, n, lo, hi, Functor::Tor))
        }
        Cmd::Hom { ring, m, n } => {
            let any = load_ring(ring)?;
            with_ring!(any, |_desc, r| commands::hom(r, m, n))
        }
        Cmd::Trace { ring, module } => {
            let any = load_ring(ring)?;
            with_ring!(any, |_desc, r| commands::trace(r, module))
        }
        Cmd::Canonical { ring } => {
            let any = load_ring(ring)?;
            with_ring!(any, |_desc, r| commands::canonical(r))
        }
        Cmd::Check { cmd } => {
            let ring_arg = match cmd {
                CheckCmd::SocleLemma { ring, .. }
                | CheckCmd::Takahashi { ring, .. }
                | CheckCmd::NoSummand { ring, .. }
                | CheckCmd::GorensteinOmegaScan { ring, .. }
                | CheckCmd::Regularity { ring, .. }
                | CheckCmd::GorensteinExt { ring, .. }
                | CheckCmd::GorensteinOmega { ring, .. }
                | CheckCmd::Gdim { ring, .. } => ring,
            };
            let any = load_ring(ring_arg)?;
            match cmd {
                CheckCmd::SocleLemma { module, nmax, .. } => {
                    with_ring!(any, |_desc, r| commands::check_socle_lemma(r, module, *nmax))
                }
                CheckCmd::Takahashi { ell, nmax, depth, .. } => {
                    with_ring!(any, |_desc, r| commands::check_takahashi(r, ell, *nmax, *depth))
                }
                CheckCmd::NoSummand { module, nmax, .. } => {
                    with_ring!(any, |_desc, r| commands::check_no_summand(r, module, *nmax))
                }
                CheckCmd::GorensteinOmegaScan { nmax, .. } => {
                    with_ring!(any, |_desc, r| commands::check_omega_scan(r, *nmax))
                }
                CheckCmd::Regularity { m, n, bound, .. } => {
                    with_ring!(any, |_desc, r| commands::check_regularity(r, m, n, *bound))
                }
                CheckCmd::GorensteinExt { module, bound, .. } => {
                    with_ring!(any, |_desc, r| commands::check_gorenstein_ext(r, module, *bound))
                }
                CheckCmd::GorensteinOmega { module, bound, .. } => {
                    with_ring!(any, |_desc, r| commands::check_gorenstein_omega(r, module, *bound))
                }
                CheckCmd::Gdim { module, bound, .. } => {
                    with_ring!(any, |_desc, r| commands::check_gdim(r, module, *bound))
                }
            }
        }
        Cmd::Corpus { cmd: CorpusCmd::Run { seed, criterion, golden } } => {
            commands::corpus_run(*seed, *criterion, golden.as_deref())
        }
    }
}

fn exit_code(e: &AlgebraError) -> i32 {
    match e {
        AlgebraError::HypothesisNotMet(_) | AlgebraError::NotCohenMacaulay(_) => 1,
        AlgebraError::CrossCheck(_) => 3,
        _ => 2,
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let rendered = match cli.format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&report.json)
                        .expect("report serializes");
                    s.push('\n');
                    s
                }
                Format::Text => report.text.clone(),
            };
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, rendered.as_bytes()) {
                    eprintln!("error: cannot write {}: {}", path.display(), e);
                    std::process::exit(2);
                }
            } else {
                print!("{}", rendered);
            }
            std::process::exit(report.status);
        }
        Err(e) => {
            eprintln!("error: {}", e);
            std::process::exit(exit_code(&e));
        }
    }
}
