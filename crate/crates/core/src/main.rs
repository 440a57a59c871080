//! Command-line driver: build and persist irrep bases, run the verification
//! suite, evaluate coherent states, run identity-resolution experiments and
//! the SU(2) Euler cross-check, all seed-reproducible with machine-readable
//! outputs.
//!
//! Exit codes: 0 success, 1 invalid configuration, 2 a check failed.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use suncs::coherent::{coherent_state, euler_cross_check, identity_resolution};
use suncs::isb::{basis_to_json, irrep_basis, irrep_sweep, weyl_dimension, IrrepLabel, IsbError};
use suncs::manifold::{haar_sample, sample_seed};
use suncs::verify::{run_verification, VerifySummary};

#[derive(Parser)]
#[command(
    name = "suncs",
    version,
    about = "SU(N) irreducible representations and coherent states from irreducible Schwinger bosons"
)]
struct Cli {
    /// Advisory worker-thread count for parallel sampling.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Build an irrep basis, report its dimension against the Weyl formula,
    /// and optionally persist it as JSON.
    Basis {
        #[arg(long = "N")]
        n: u32,
        /// Comma-separated row lengths, e.g. 2,1; trailing zeros optional.
        #[arg(long, value_delimiter = ',')]
        irrep: Vec<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the invariant suite for one irrep or for the default sweep.
    Verify {
        #[arg(long = "N")]
        n: Option<u32>,
        #[arg(long, value_delimiter = ',')]
        irrep: Option<Vec<u32>>,
        /// Sweep N in {2,3,4} over all irreps with at most 4 total quanta.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a coherent state at a Haar frame drawn from the seed and
    /// dump its Fock expansion.
    Coherent {
        #[arg(long = "N")]
        n: u32,
        #[arg(long, value_delimiter = ',')]
        irrep: Vec<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the sampled frame as CSV rows (i, alpha, re, im).
        #[arg(long)]
        frame_out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Monte Carlo resolution-of-identity experiment.
    ResolveId {
        #[arg(long = "N")]
        n: u32,
        #[arg(long, value_delimiter = ',')]
        irrep: Vec<u32>,
        #[arg(long, default_value_t = 20_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the SU(2) Schwinger coherent state against the Euler-angle
    /// coefficients over random angle triples. --irrep n means 2j = n.
    EulerCheck {
        #[arg(long = "N", default_value_t = 2)]
        n: u32,
        #[arg(long, value_delimiter = ',')]
        irrep: Vec<u32>,
        /// Number of random angle triples.
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        // Advisory; ignore failure if a pool already exists.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn parse_label(n: u32, rows: &[u32]) -> Result<IrrepLabel, String> {
    IrrepLabel::new(n, rows).map_err(|e| e.to_string())
}

fn write_or_print(out: Option<&PathBuf>, contents: &str) -> Result<(), String> {
    match out {
        Some(path) => {
            fs::write(path, contents).map_err(|e| format!("writing {}: {e}", path.display()))?;
            println!("wrote {}", path.display());
            Ok(())
        }
        None => {
            println!("{contents}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Basis { n, irrep, out } => {
            let label = parse_label(n, &irrep)?;
            let weyl = weyl_dimension(&label);
            match irrep_basis(&label) {
                Ok(basis) => {
                    println!("dim={} weyl={weyl} OK", basis.len());
                    if let Some(path) = out {
                        let doc = serde_json::to_string_pretty(&basis_to_json(&label, &basis))
                            .map_err(|e| e.to_string())?;
                        fs::write(&path, doc + "\n")
                            .map_err(|e| format!("writing {}: {e}", path.display()))?;
                        println!("wrote {}", path.display());
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Err(IsbError::ConstructionFailure { expected, got }) => {
                    println!("dim={got} weyl={expected} MISMATCH");
                    Ok(ExitCode::from(2))
                }
                Err(other) => Err(other.to_string()),
            }
        }
        Command::Verify { n, irrep, all, out } => {
            let labels: Vec<IrrepLabel> = if all {
                [2u32, 3, 4]
                    .iter()
                    .flat_map(|&rank| irrep_sweep(rank, 4))
                    .collect()
            } else {
                let rank = n.ok_or("verify needs --N (or --all)")?;
                let rows = irrep.ok_or("verify needs --irrep (or --all)")?;
                vec![parse_label(rank, &rows)?]
            };
            let mut summaries: Vec<VerifySummary> = Vec::with_capacity(labels.len());
            for label in &labels {
                let summary = run_verification(label).map_err(|e| e.to_string())?;
                let verdict = if summary.pass { "pass" } else { "FAIL" };
                println!(
                    "SU({}) {:?}: dim={} weyl={} casimir={:.6} [{}]",
                    summary.n, summary.irrep, summary.dim, summary.weyl,
                    summary.quadratic_casimir, verdict
                );
                for check in &summary.checks {
                    println!(
                        "  {:<24} residual={:<12.3e} probes={:<5} {}",
                        check.check,
                        check.max_residual,
                        check.probes,
                        if check.pass { "pass" } else { "FAIL" }
                    );
                }
                summaries.push(summary);
            }
            let all_pass = summaries.iter().all(|s| s.pass);
            if let Some(path) = out {
                let doc = serde_json::to_string_pretty(&summaries).map_err(|e| e.to_string())?;
                fs::write(&path, doc + "\n")
                    .map_err(|e| format!("writing {}: {e}", path.display()))?;
                println!("wrote {}", path.display());
            }
            Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::Coherent { n, irrep, seed, out, frame_out, format } => {
            let label = parse_label(n, &irrep)?;
            let point = haar_sample(n, sample_seed(seed, 0));
            if let Some(path) = &frame_out {
                fs::write(path, point.to_csv())
                    .map_err(|e| format!("writing {}: {e}", path.display()))?;
                println!("wrote {}", path.display());
            }
            let cs = coherent_state(&label, &point).map_err(|e| e.to_string())?;
            println!(
                "coherent SU({n}) {label} seed={seed}: {} Fock terms, norm {:.12}",
                cs.vector.num_terms(),
                cs.vector.norm_f64()
            );
            let doc = match format {
                Format::Json => {
                    serde_json::to_string_pretty(&cs.vector.to_json()).map_err(|e| e.to_string())?
                }
                Format::Csv => {
                    let mut text = String::from("occ,re,im\n");
                    for (fock, amp) in cs.vector.terms() {
                        let occ: Vec<String> = fock
                            .modes()
                            .map(|(m, k)| format!("{}:{}:{}", m.plet, m.color, k))
                            .collect();
                        text.push_str(&format!("{},{:e},{:e}\n", occ.join(" "), amp.re, amp.im));
                    }
                    text
                }
            };
            write_or_print(out.as_ref(), &doc)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::ResolveId { n, irrep, samples, seed, out } => {
            let label = parse_label(n, &irrep)?;
            let report = identity_resolution(&label, samples, seed).map_err(|e| e.to_string())?;
            println!(
                "resolve-id SU({n}) {label}: c={:.6} max_offdiag={:.3e} max_diag_dev={:.3e} stderr={:.3e} [{}]",
                report.c,
                report.max_offdiag,
                report.max_diag_dev,
                report.stderr,
                if report.pass { "PASS" } else { "FAIL" }
            );
            if let Some(path) = out {
                let doc = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
                fs::write(&path, doc + "\n")
                    .map_err(|e| format!("writing {}: {e}", path.display()))?;
                println!("wrote {}", path.display());
            }
            Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::EulerCheck { n, irrep, samples, seed } => {
            if n != 2 {
                return Err("euler-check is defined for SU(2); pass --N 2".into());
            }
            if irrep.len() != 1 {
                return Err("euler-check needs --irrep n with a single row (2j = n)".into());
            }
            let two_j = irrep[0];
            let mut rng = rand_seeded(seed);
            let mut worst = 0.0_f64;
            for trial in 0..samples {
                use rand::RngExt;
                let theta = rng.random_range(0.0..std::f64::consts::PI);
                let phi = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
                let psi = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
                let (dev, phase) =
                    euler_cross_check(two_j, theta, phi, psi).map_err(|e| e.to_string())?;
                println!(
                    "triple {trial}: θ={theta:.4} φ={phi:.4} ψ={psi:.4} max_dev={dev:.3e} phase=({:.6},{:.6})",
                    phase.re, phase.im
                );
                worst = worst.max(dev);
            }
            let pass = worst < 1e-10;
            println!(
                "euler-check 2j={two_j}: worst deviation {worst:.3e} over {samples} triples [{}]",
                if pass { "PASS" } else { "FAIL" }
            );
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
    }
}

fn rand_seeded(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}
