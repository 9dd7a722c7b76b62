mod cache;
mod config;
mod output;
mod verify;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use topcoh::complexes::{build, link, parse_complex, write_complex, Family, SimplicialComplex, DEFAULT_MAX_SIMPLICES};
use topcoh::formulas::rank_table_from;
use topcoh::gfq::PrimeField;
use topcoh::homology::{
    boundary_matrices, coinvariants_rank, kernel_report, write_coo, betti, DEFAULT_SEED, DEFAULT_SNF_BUDGET,
};
use topcoh::lifting::{det_integer, lift_unimodular, parse_int_matrix, reduce, to_field};
use topcoh::Error;

use config::{OutputFormat, RunConfig};
use output::{emit, Failure};

#[derive(Parser)]
#[command(name = "topcoh", version, about = "Top-degree cohomology of level-p congruence subgroups")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: OutputFormat,
    /// Cache directory for t sequences (overrides TOPCOH_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Seed for the primes used by multi-modular ranks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_SIMPLICES)]
    max_simplices: u64,
    /// Cap on rows × cols of the dense part of a Smith normal form.
    #[arg(long, global = true, default_value_t = DEFAULT_SNF_BUDGET)]
    snf_budget: u128,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ComplexSpec {
    /// One of b-pm, b-proj, bd-pm, ba-pm, bda-pm, bda-prime, tits, tits-oriented
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    m: usize,
    #[arg(long)]
    p: Option<u64>,
    /// Read the complex from an export file instead of building it.
    #[arg(long, conflicts_with_all = ["family", "n", "p"])]
    input: Option<PathBuf>,
    /// Replace the complex by the link of this simplex (comma-separated vertex ids).
    #[arg(long)]
    link_of: Option<String>,
    /// Build only the skeleton up to this dimension.
    #[arg(long)]
    max_dim: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Rank table: t_n, Paraschivescu's t'_n, Steinberg rank and the lower bound.
    Ranks {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a complex, print its statistics and optionally export it.
    Complex {
        #[command(flatten)]
        spec: ComplexSpec,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integral homology of a complex.
    Homology {
        #[command(flatten)]
        spec: ComplexSpec,
        #[arg(long)]
        reduced: bool,
        /// Compute torsion by Smith normal form (within the budget).
        #[arg(long)]
        snf: bool,
        #[arg(long, allow_hyphen_values = true)]
        max_degree: Option<i64>,
        /// Write each boundary matrix as coordinate-list text into this directory.
        #[arg(long)]
        export_matrices: Option<PathBuf>,
    },
    /// Rank of the coinvariants of the Steinberg module, optionally with the kernel report.
    Coinvariants {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        snf: bool,
        #[arg(long)]
        kernel: bool,
    },
    /// Run the verification suite.
    Verify {
        #[arg(long, value_enum, default_value = "quick")]
        level: verify::Level,
        /// Only run checks whose id starts with this prefix.
        #[arg(long)]
        only: Option<String>,
    },
    /// Lift a matrix of determinant ±1 over F_p to an integer matrix.
    Lift {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = RunConfig {
        format: cli.format,
        cache_dir: cache::resolve_dir(cli.cache_dir.clone()),
        seed: cli.seed,
        max_simplices: cli.max_simplices,
        snf_budget: cli.snf_budget,
    };
    if let Err(msg) = config.validate() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let start = Instant::now();
    match run(&cli.command, &config, start) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: &Command, config: &RunConfig, start: Instant) -> Result<(), Failure> {
    match command {
        Command::Ranks { prime, max_n, out } => cmd_ranks(config, *prime, *max_n, out.as_deref(), start),
        Command::Complex { spec, out } => cmd_complex(config, spec, out.as_deref(), start),
        Command::Homology {
            spec,
            reduced,
            snf,
            max_degree,
            export_matrices,
        } => cmd_homology(config, spec, *reduced, *snf, *max_degree, export_matrices.as_deref(), start),
        Command::Coinvariants { n, p, snf, kernel } => cmd_coinvariants(config, *n, *p, *snf, *kernel, start),
        Command::Verify { level, only } => cmd_verify(config, *level, only.as_deref(), start),
        Command::Lift { input, p, out } => cmd_lift(config, input, *p, out.as_deref(), start),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn cmd_ranks(config: &RunConfig, p: u64, max_n: usize, out: Option<&Path>, start: Instant) -> Result<(), Failure> {
    if max_n == 0 {
        return Err(Failure::usage("--max-n must be at least 1"));
    }
    let (t, status) = cache::t_sequence_cached(config.cache_dir.as_deref(), p, max_n)?;
    let rows = rank_table_from(&t, max_n)?;
    let csv = output::ranks_csv(&rows);
    if let Some(path) = out {
        let text = match config.format {
            OutputFormat::Json => serde_json::to_string_pretty(&rows).expect("serializable") + "\n",
            _ => csv.clone(),
        };
        write_file(path, &text)?;
    }
    let text = output::ranks_text(p, &rows);
    emit(
        config,
        "ranks",
        json!({ "prime": p, "max_n": max_n, "cache": status }),
        start,
        json!({ "rows": rows }),
        &text,
        Some(&csv),
    );
    Ok(())
}

fn obtain_complex(config: &RunConfig, spec: &ComplexSpec) -> Result<SimplicialComplex, Failure> {
    let k = if let Some(path) = &spec.input {
        parse_complex(&read_file(path)?)?
    } else {
        let (Some(family), Some(n), Some(p)) = (&spec.family, spec.n, spec.p) else {
            return Err(Failure::usage("give --family, --n and --p, or --input"));
        };
        let family: Family = family.parse()?;
        build(family, n, spec.m, p, &config.build_options(spec.max_dim))?
    };
    match &spec.link_of {
        None => Ok(k),
        Some(ids) => {
            let mut sigma = ids
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.trim().parse::<u32>())
                .collect::<Result<Vec<u32>, _>>()
                .map_err(|_| Failure::usage(format!("bad vertex list `{ids}`")))?;
            sigma.sort_unstable();
            Ok(link(&k, &sigma)?)
        }
    }
}

fn spec_json(k: &SimplicialComplex) -> serde_json::Value {
    json!({ "family": k.family, "n": k.n, "m": k.m, "p": k.p })
}

fn cmd_complex(config: &RunConfig, spec: &ComplexSpec, out: Option<&Path>, start: Instant) -> Result<(), Failure> {
    let k = obtain_complex(config, spec)?;
    if let Some(path) = out {
        write_file(path, &write_complex(&k))?;
    }
    let stats = k.stats();
    let text = format!(
        "{} n={} m={} p={}\ncounts {}\nfacets {}\neuler {}\n",
        k.family,
        k.n,
        k.m,
        k.p,
        stats.counts.iter().map(u64::to_string).collect::<Vec<_>>().join(" "),
        stats.facets,
        stats.euler
    );
    emit(config, "complex", spec_json(&k), start, json!(stats), &text, None);
    Ok(())
}

fn cmd_homology(
    config: &RunConfig,
    spec: &ComplexSpec,
    reduced: bool,
    snf: bool,
    max_degree: Option<i64>,
    export: Option<&Path>,
    start: Instant,
) -> Result<(), Failure> {
    let k = obtain_complex(config, spec)?;
    if let Some(dir) = export {
        fs::create_dir_all(dir).map_err(|e| Failure::usage(format!("cannot create {}: {e}", dir.display())))?;
        for b in boundary_matrices(&k, reduced)? {
            write_file(&dir.join(format!("boundary-{}.coo", b.degree)), &write_coo(&b.matrix))?;
        }
    }
    let report = betti(&k, reduced, &config.homology_options(snf, max_degree))?;
    let text = output::homology_text(&report);
    emit(config, "homology", spec_json(&k), start, json!(report), &text, None);
    Ok(())
}

fn cmd_coinvariants(config: &RunConfig, n: usize, p: u64, snf: bool, kernel: bool, start: Instant) -> Result<(), Failure> {
    let build = config.build_options(None);
    let opts = config.homology_options(snf, None);
    let (result, text) = if kernel {
        let r = kernel_report(n, p, &build, &opts)?;
        let text = format!(
            "coinvariants rank {}\nt_{n} {}\nkernel rank {}\npredicted lower bound {}\nconsistent {}\nmethod {}\n",
            r.coinv_rank,
            r.t_n,
            r.kernel_rank,
            r.predicted_kernel_lower_bound,
            r.holds,
            r.method.name()
        );
        (json!(r), text)
    } else {
        let r = coinvariants_rank(n, p, &build, &opts)?;
        let mut text = format!(
            "coinvariants rank {}\nmatrix {}x{} rank {}\nmethod {} seed {}\n",
            r.coinv_rank,
            r.rows,
            r.cols,
            r.rank,
            r.method.name(),
            r.seed
        );
        if let Some(t) = &r.torsion {
            text.push_str(&format!("torsion [{}]\n", t.join(" ")));
        }
        (json!(r), text)
    };
    emit(config, "coinvariants", json!({ "n": n, "p": p, "snf": snf }), start, result, &text, None);
    Ok(())
}

fn cmd_verify(config: &RunConfig, level: verify::Level, only: Option<&str>, start: Instant) -> Result<(), Failure> {
    let outcomes = verify::run(level, only, &config.homology_options(false, None));
    let failed = outcomes.iter().filter(|o| o.status == verify::Status::Fail).count();
    let text = output::verify_text(&outcomes);
    emit(config, "verify", json!({ "level": level, "only": only }), start, json!(outcomes), &text, None);
    if failed > 0 {
        return Err(Failure::check(format!("{failed} of {} checks failed", outcomes.len())));
    }
    Ok(())
}

fn cmd_lift(config: &RunConfig, input: &Path, p: u64, out: Option<&Path>, start: Instant) -> Result<(), Failure> {
    let field = PrimeField::new(p)?;
    let m = to_field(&field, &parse_int_matrix(&read_file(input)?)?);
    let l = lift_unimodular(&field, &m)?;
    let det = det_integer(&l);
    let congruent = reduce(&field, &l) == m;
    if !congruent || (det != 1.into() && det != (-1).into()) {
        return Err(Failure::check("lift failed its own verification".to_string()));
    }
    let matrix_text: String = l
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ") + "\n")
        .collect();
    if let Some(path) = out {
        write_file(path, &matrix_text)?;
    }
    let text = format!("{matrix_text}det {det}\ncongruent mod {p} {congruent}\n");
    let rows: Vec<Vec<String>> = l.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    emit(
        config,
        "lift",
        json!({ "p": p, "input": input }),
        start,
        json!({ "matrix": rows, "det": det.to_string(), "congruent": congruent }),
        &text,
        None,
    );
    Ok(())
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::TooLarge { .. } => 3,
            Error::AssertionFailure(_) | Error::RankDisagreement(_) | Error::NotAClosedSurface(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}
