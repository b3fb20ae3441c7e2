//! Command-line front end: compute lattice elements, expand bilinear
//! identities, and run the exact verifiers.
//!
//! Machine-readable JSON lines go to stdout, a human summary to stderr.
//! Exit code 0 means every verification passed, 1 means at least one failed,
//! 2 is a usage error.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use tau_lattice::lab::{
    expand_bilinear, fuzz_all, verify_det_pfaffian, verify_generalized, verify_laguerre,
    verify_schur_q, verify_square, LabOptions, VerificationReport,
};
use tau_lattice::linalg::SkewMatrix;
use tau_lattice::partition::{to_frobenius, StrictPartition};
use tau_lattice::poly::FlowVector;
use tau_lattice::qschur::qschur;
use tau_lattice::rat::{format_rat, parse_rat, ratio, Rat};
use tau_lattice::schur::{laguerre, schur};
use tau_lattice::{Error, FrobeniusCoords, Partition, RParams};

#[derive(Parser)]
#[command(name = "tau-lattice", version, about = "Exact KP/BKP tau-function lattices")]
struct Cli {
    /// Output format for tabular results
    #[arg(long, global = true, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a lattice element as a canonical polynomial
    Compute {
        #[command(subcommand)]
        what: ComputeCmd,
    },
    /// Expand a Schur function in bilinear products of Q-functions
    Expand {
        /// Partition, e.g. 3,1 (alternative to --alpha/--beta)
        #[arg(long, value_name = "PARTS")]
        lambda: Option<String>,
        /// Frobenius arm lengths, e.g. 2,0
        #[arg(long, value_name = "PARTS")]
        alpha: Option<String>,
        /// Frobenius leg lengths, e.g. 1,0
        #[arg(long, value_name = "PARTS")]
        beta: Option<String>,
    },
    /// Verify an identity family; exit 1 on any failing instance
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// Randomized verification across all identity families
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instances per identity family
        #[arg(long, default_value_t = 4)]
        budget: usize,
        #[command(flatten)]
        switches: Switches,
    },
}

#[derive(Subcommand)]
enum ComputeCmd {
    /// Schur polynomial s_lambda(t)
    Schur {
        #[arg(long, value_name = "PARTS")]
        lambda: String,
        /// Truncation degree; defaults to |lambda|
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Schur Q polynomial Qtilde_mu
    Qschur {
        #[arg(long, value_name = "PARTS")]
        mu: String,
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Multivariate Laguerre polynomial
    Laguerre {
        #[arg(long, value_name = "PARTS")]
        lambda: String,
        #[arg(long, value_name = "RAT")]
        z: String,
        #[arg(long, value_name = "RAT")]
        zprime: String,
    },
}

#[derive(Args, Clone, Copy)]
struct Switches {
    /// Cross-check against the fermionic Fock oracle
    #[arg(long)]
    oracle: bool,
    /// Negative control: corrupt one expansion coefficient
    #[arg(long)]
    corrupt: bool,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Bilinear Schur/Q expansion for all |lambda| <= max-weight
    SchurQ {
        #[arg(long, default_value_t = 8)]
        max_weight: u32,
        #[command(flatten)]
        switches: Switches,
    },
    /// Determinant/Pfaffian minor identity on random skew matrices
    DetPf {
        /// Matrix dimension
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Minor size
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random matrices
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// Generalized (content-product) bilinear identity
    Generalized {
        /// Maximum partition weight
        #[arg(long, default_value_t = 4)]
        weight: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random (r, p) instances
        #[arg(long, default_value_t = 3)]
        count: usize,
        #[command(flatten)]
        switches: Switches,
    },
    /// Square relation at doubled partitions, |alpha| <= max-weight
    Square {
        #[arg(long, default_value_t = 6)]
        max_weight: u32,
        #[command(flatten)]
        switches: Switches,
    },
    /// Laguerre vs content-product specialization
    Laguerre {
        #[arg(long, default_value_t = 4)]
        max_weight: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_parts(s: &str) -> Result<Vec<u32>, Error> {
    let s = s.trim();
    if s.is_empty() || s == "0" {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad part {x:?}"))))
        .collect()
}

fn parse_partition(s: &str) -> Result<Partition, Error> {
    Partition::new(parse_parts(s)?)
}

fn parse_strict(s: &str) -> Result<StrictPartition, Error> {
    StrictPartition::new(parse_parts(s)?)
}

fn emit_reports(reports: &[VerificationReport], format: Format) -> bool {
    let mut all_pass = true;
    match format {
        Format::Json => {
            for r in reports {
                println!("{}", serde_json::to_string(r).expect("report serializes"));
                all_pass &= r.pass;
            }
        }
        Format::Csv => {
            println!("identity,instance,pass,residual");
            for r in reports {
                println!(
                    "{},{},{},{}",
                    r.identity,
                    r.instance.replace(',', ";"),
                    r.pass,
                    r.residual.replace(',', ";")
                );
                all_pass &= r.pass;
            }
        }
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    eprintln!(
        "{} instance(s), {} passed, {} failed",
        reports.len(),
        reports.len() - failed,
        failed
    );
    all_pass
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    ratio(rng.gen_range(-7..=7), rng.gen_range(1..=7))
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Compute { what } => {
            match what {
                ComputeCmd::Schur { lambda, degree } => {
                    let lam = parse_partition(&lambda)?;
                    let d = degree.unwrap_or_else(|| lam.weight());
                    let poly = schur(&lam, d)?;
                    println!(
                        "{}",
                        json!({"lambda": lam.parts(), "poly": poly.to_text()})
                    );
                }
                ComputeCmd::Qschur { mu, degree } => {
                    let mu = parse_strict(&mu)?;
                    let d = degree.unwrap_or_else(|| mu.weight());
                    let poly = qschur(&mu, d)?;
                    println!("{}", json!({"mu": mu.parts(), "poly": poly.to_text()}));
                }
                ComputeCmd::Laguerre { lambda, z, zprime } => {
                    let lam = parse_partition(&lambda)?;
                    let zv = parse_rat(&z)?;
                    let zpv = parse_rat(&zprime)?;
                    let poly = laguerre(&lam, &zv, &zpv, lam.weight())?;
                    println!(
                        "{}",
                        json!({
                            "lambda": lam.parts(),
                            "z": format_rat(&zv),
                            "zprime": format_rat(&zpv),
                            "poly": poly.to_text()
                        })
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Expand { lambda, alpha, beta } => {
            let fc = match (lambda, alpha, beta) {
                (Some(l), None, None) => to_frobenius(&parse_partition(&l)?),
                (None, Some(a), Some(b)) => {
                    FrobeniusCoords::new(parse_parts(&a)?, parse_parts(&b)?)?
                }
                (None, None, None) => FrobeniusCoords::new(vec![], vec![])?,
                _ => {
                    return Err(Error::Parse(
                        "give either --lambda or both --alpha and --beta".into(),
                    ))
                }
            };
            let terms = expand_bilinear(&fc, false)?;
            for t in &terms {
                println!("{}", serde_json::to_string(t).expect("term serializes"));
            }
            eprintln!("{} expansion term(s)", terms.len());
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { what } => {
            let reports = run_verify(what)?;
            let ok = emit_reports(&reports, cli.format);
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Fuzz { seed, budget, switches } => {
            let opts = LabOptions { corrupt: switches.corrupt, oracle: switches.oracle };
            let reports = fuzz_all(seed, budget, &opts)?;
            let ok = emit_reports(&reports, cli.format);
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn run_verify(cmd: VerifyCmd) -> Result<Vec<VerificationReport>, Error> {
    let mut reports = Vec::new();
    match cmd {
        VerifyCmd::SchurQ { max_weight, switches } => {
            let opts = LabOptions { corrupt: switches.corrupt, oracle: switches.oracle };
            for w in 0..=max_weight {
                for lam in Partition::all_of_weight(w) {
                    // the oracle is slow; keep its cross-checks to low weight
                    let opts_here = LabOptions {
                        oracle: opts.oracle && w <= 6,
                        ..opts
                    };
                    reports.push(verify_schur_q(&lam, &opts_here)?);
                }
            }
        }
        VerifyCmd::DetPf { n, r, seed, count } => {
            if r > n {
                return Err(Error::BadMinor);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let a = SkewMatrix::from_upper(n, |_, _| random_rat(&mut rng));
                for i in increasing_subsets(n, r) {
                    for j in increasing_subsets(n, r) {
                        reports.push(verify_det_pfaffian(&a, &i, &j)?);
                    }
                }
            }
        }
        VerifyCmd::Generalized { weight, seed, count, switches } => {
            let opts = LabOptions { corrupt: switches.corrupt, oracle: switches.oracle };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let vals: Vec<Rat> = (0..=14).map(|_| random_rat(&mut rng)).collect();
                let r = RParams::from_fn(13, |j| {
                    vals[(j.max(1 - j) as usize).min(vals.len() - 1)].clone()
                });
                let mut p = FlowVector::new();
                p.set(1, random_rat(&mut rng));
                p.set(3, random_rat(&mut rng));
                for w in 0..=weight {
                    for lam in Partition::all_of_weight(w) {
                        reports.push(verify_generalized(&lam, &r, &p, &opts)?);
                    }
                }
            }
        }
        VerifyCmd::Square { max_weight, switches } => {
            let opts = LabOptions { corrupt: switches.corrupt, oracle: switches.oracle };
            reports.push(verify_square(&StrictPartition::empty(), &opts)?);
            for w in 1..=max_weight {
                for alpha in StrictPartition::all_of_weight(w) {
                    let opts_here = LabOptions {
                        oracle: opts.oracle && 2 * w <= 6,
                        ..opts
                    };
                    reports.push(verify_square(&alpha, &opts_here)?);
                }
            }
        }
        VerifyCmd::Laguerre { max_weight, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pairs: Vec<(Rat, Rat)> =
                (0..5).map(|_| (random_rat(&mut rng), random_rat(&mut rng))).collect();
            for (z, zp) in &pairs {
                for w in 0..=max_weight {
                    for lam in Partition::all_of_weight(w) {
                        reports.push(verify_laguerre(&lam, z, zp)?);
                    }
                }
            }
        }
    }
    Ok(reports)
}

fn increasing_subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    rec(0, n, r, &mut cur, &mut out);
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
