//! Command-line front end: design, verify, decode, simulate, sweep, bounds.
//!
//! Exit codes: 0 success, 1 infeasible parameters, 2 malformed input.

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use pooltest::{
    bernoulli_failure_bound, bernoulli_failure_bound_gamma, build_kautz_singleton,
    build_probabilistic, derive_ks_params, derive_prob_params, dilution_overflow_bound,
    distance_decode, ks_guarantee_margin, mix64, sample_outcome, BoundReport, ChannelSpec,
    ContactMatrix, DisjunctReport, Outcome, SparseSignal,
};
use pooltest_cli::{
    format_signal, load_matrix, run_sweep, save_matrix, write_csv, DesignKind, GtmatError, MGrid,
    SweepChannel, SweepSpec,
};
use serde_json::json;
use std::io::Write as _;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "pooltest",
    about = "Pooled testing with unreliable measurements: designs, decoding, certification, Monte Carlo sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DesignName {
    Bernoulli,
    Ks,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyName {
    None,
    Random,
    MaxRandom,
}

impl From<StrategyName> for pooltest::AdversaryStrategy {
    fn from(s: StrategyName) -> Self {
        match s {
            StrategyName::None => pooltest::AdversaryStrategy::None,
            StrategyName::Random => pooltest::AdversaryStrategy::Random,
            StrategyName::MaxRandom => pooltest::AdversaryStrategy::MaxRandom,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Derive design parameters, build a contact matrix, write a GTMAT file.
    Design(DesignArgs),
    /// Certify (k, e)-disjunctness of a matrix file (exhaustive, guarded).
    Verify {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        e: usize,
    },
    /// Run the distance decoder on a matrix file and an outcome bit string.
    Decode {
        #[arg(long)]
        matrix: PathBuf,
        /// Outcome vector as a string of 0/1, one character per test.
        #[arg(long)]
        y: String,
        #[arg(long)]
        e: usize,
        /// Sparsity used only to flag oversized candidate lists.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Run one seeded trial verbosely (matrix file or on-the-fly design).
    Simulate(SimulateArgs),
    /// Run a Monte Carlo grid sweep and emit CSV.
    Sweep(SweepArgs),
    /// Evaluate the analytic bound calculators.
    Bounds(BoundsArgs),
}

#[derive(Args)]
struct DesignArgs {
    #[arg(long, value_enum)]
    design: DesignName,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    #[arg(long, default_value_t = 0.2)]
    alpha: f64,
    #[arg(long, default_value_t = 0.05)]
    delta: f64,
    /// Override the derived row count (Bernoulli only).
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output GTMAT path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SimulateArgs {
    /// Existing GTMAT matrix; alternatively give --design to build one.
    #[arg(long, conflicts_with = "design")]
    matrix: Option<PathBuf>,
    #[arg(long, value_enum)]
    design: Option<DesignName>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    #[arg(long, default_value_t = 0.2)]
    alpha: f64,
    #[arg(long, default_value_t = 0.05)]
    delta: f64,
    /// Decoder tolerance; required for raw matrices, derived otherwise.
    #[arg(long)]
    e: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    design: DesignName,
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    k: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    p: Vec<f64>,
    /// Explicit row counts (conflicts with --c).
    #[arg(long, value_delimiter = ',', conflicts_with = "c")]
    m: Option<Vec<usize>>,
    /// Multipliers on the derived row-count bound (default 1).
    #[arg(long, value_delimiter = ',')]
    c: Option<Vec<f64>>,
    #[arg(long, default_value_t = 0.2)]
    alpha: f64,
    #[arg(long, default_value_t = 0.05)]
    delta: f64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Corrupt adversarially with this strategy instead of stochastically.
    #[arg(long, value_enum)]
    adversarial: Option<StrategyName>,
    /// Rebuild the contact matrix for every trial.
    #[arg(long, default_value_t = false)]
    fresh_matrix: bool,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(subcommand)]
    which: BoundsCommand,
}

#[derive(Subcommand)]
enum BoundsCommand {
    /// P(stochastic dilution exceeds the per-column budget anywhere).
    Dilution {
        #[arg(long)]
        q: f64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        delta: f64,
    },
    /// P(a Bernoulli design fails at tolerance e), plus the exponent form
    /// when --gamma is given.
    DesignFailure {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: f64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        e: usize,
        #[arg(long)]
        gamma: Option<f64>,
    },
    /// Disjunctness margin n' - k*k' - e of the derived explicit design.
    KsMargin {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
    },
}

fn bound_json(report: &BoundReport) -> serde_json::Value {
    let inputs: serde_json::Map<String, serde_json::Value> = report
        .inputs
        .iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect();
    json!({
        "name": report.name,
        "value": report.value,
        "log10_value": report.log10_value,
        "inputs": inputs,
    })
}

fn disjunct_json(report: &DisjunctReport) -> serde_json::Value {
    // user-facing indices are 1-based
    let witness = report.witness.as_ref().map(|w| {
        json!({
            "set": w.set.iter().map(|j| j + 1).collect::<Vec<_>>(),
            "index": w.index + 1,
            "leftover": w.leftover,
        })
    });
    json!({
        "k": report.k,
        "e": report.e,
        "holds": report.holds,
        "witness": witness,
    })
}

#[allow(clippy::too_many_arguments)]
fn build_design(
    design: DesignName,
    n: usize,
    k: usize,
    p: f64,
    alpha: f64,
    delta: f64,
    m: Option<usize>,
    seed: u64,
) -> anyhow::Result<(ContactMatrix, usize, serde_json::Value)> {
    match design {
        DesignName::Bernoulli => {
            let params = derive_prob_params(n, k, p, alpha, delta, m)?;
            let mc = build_probabilistic(&params, seed);
            let info = json!({
                "design": "bernoulli",
                "n": params.n, "k": params.k, "p": params.p,
                "alpha": params.alpha, "delta": params.delta,
                "q": params.q, "m": params.m, "e": params.e,
                "gamma": params.gamma, "seed": seed,
            });
            Ok((mc, params.e, info))
        }
        DesignName::Ks => {
            if m.is_some() {
                bail!(pooltest::Error::Infeasible(
                    "the explicit design derives m from n'; --m does not apply".into()
                ));
            }
            let params = derive_ks_params(n, k, p, delta)?;
            let mc = build_kautz_singleton(&params)?;
            let info = json!({
                "design": "ks",
                "n": params.n, "k": params.k, "p": params.p, "delta": params.delta,
                "nprime": params.nprime, "kprime": params.kprime,
                "m": params.m, "e": params.e,
                "margin": ks_guarantee_margin(&params, k),
            });
            Ok((mc, params.e, info))
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Design(args) => {
            let (mc, _, info) = build_design(
                args.design, args.n, args.k, args.p, args.alpha, args.delta, args.m, args.seed,
            )?;
            save_matrix(&mc, &args.out)
                .with_context(|| format!("writing {}", args.out.display()))?;
            println!("{info}");
        }
        Command::Verify { matrix, k, e } => {
            let mc = load_matrix(&matrix)?;
            let report = pooltest::verify_disjunct(&mc, k, e)?;
            println!("{}", disjunct_json(&report));
        }
        Command::Decode { matrix, y, e, k } => {
            let mc = load_matrix(&matrix)?;
            let outcome = Outcome::from_bitstring(&y)?;
            let result = distance_decode(&mc, &outcome, e, k)?;
            let support = SparseSignal::new(mc.n(), result.candidates.clone())?;
            println!("{}", format_signal(&support));
            if result.oversized {
                eprintln!(
                    "note: {} candidates exceed the requested sparsity",
                    result.candidates.len()
                );
            }
        }
        Command::Simulate(args) => {
            let (mc, derived_e) = match (&args.matrix, args.design) {
                (Some(path), None) => (load_matrix(path)?, None),
                (None, Some(design)) => {
                    let n = args.n.ok_or_else(|| {
                        anyhow::anyhow!(pooltest::Error::Infeasible(
                            "--n is required with --design".into()
                        ))
                    })?;
                    let (mc, e, _) = build_design(
                        design,
                        n,
                        args.k,
                        args.p,
                        args.alpha,
                        args.delta,
                        None,
                        mix64(args.seed, 3),
                    )?;
                    (mc, Some(e))
                }
                _ => bail!(pooltest::Error::Infeasible(
                    "give exactly one of --matrix or --design".into()
                )),
            };
            let e = match args.e.or(derived_e) {
                Some(e) => e,
                None => bail!(pooltest::Error::Infeasible(
                    "--e is required for raw matrices".into()
                )),
            };
            let channel = ChannelSpec::Stochastic { p: args.p };
            let record = pooltest_cli::run_trial(&mc, args.k, e, &channel, args.seed)?;
            // replay the trial's signal and outcome for the verbose report
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(mix64(
                args.seed, 1,
            ));
            let mut support = rand::seq::index::sample(&mut rng, mc.n(), args.k).into_vec();
            support.sort_unstable();
            let x = SparseSignal::new(mc.n(), support)?;
            let y = sample_outcome(&mc, &x, &channel, mix64(args.seed, 2))?;
            let decoded = distance_decode(&mc, &y, e, Some(args.k))?;
            let mut value = serde_json::to_value(&record)?;
            let obj = value.as_object_mut().expect("record serializes to object");
            obj.insert("truth".into(), json!(x.one_based()));
            obj.insert("outcome".into(), json!(y.to_bitstring()));
            obj.insert(
                "candidates".into(),
                json!(decoded.candidates.iter().map(|j| j + 1).collect::<Vec<_>>()),
            );
            println!("{value}");
        }
        Command::Sweep(args) => {
            let design = match args.design {
                DesignName::Bernoulli => DesignKind::Bernoulli {
                    alpha: args.alpha,
                    delta: args.delta,
                },
                DesignName::Ks => DesignKind::Ks { delta: args.delta },
            };
            let m_grid = match (args.m, args.c) {
                (Some(ms), None) => MGrid::Fixed(ms),
                (None, Some(cs)) => MGrid::Derived { multipliers: cs },
                (None, None) => MGrid::Derived {
                    multipliers: vec![1.0],
                },
                (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
            };
            let spec = SweepSpec {
                design,
                n_grid: args.n,
                k_grid: args.k,
                p_grid: args.p,
                m_grid,
                trials: args.trials,
                base_seed: args.seed,
                channel: match args.adversarial {
                    None => SweepChannel::Stochastic,
                    Some(s) => SweepChannel::Adversarial { strategy: s.into() },
                },
                fresh_matrix_per_trial: args.fresh_matrix,
            };
            let cells = run_sweep(&spec)?;
            match args.out {
                Some(path) => {
                    let mut file = std::fs::File::create(&path)
                        .with_context(|| format!("creating {}", path.display()))?;
                    write_csv(&cells, &mut file)?;
                }
                None => {
                    let stdout = std::io::stdout();
                    let mut lock = stdout.lock();
                    write_csv(&cells, &mut lock)?;
                    lock.flush()?;
                }
            }
        }
        Command::Bounds(args) => match args.which {
            BoundsCommand::Dilution { q, m, n, p, delta } => {
                println!("{}", bound_json(&dilution_overflow_bound(q, m, n, p, delta)));
            }
            BoundsCommand::DesignFailure {
                n,
                k,
                q,
                m,
                e,
                gamma,
            } => {
                println!("{}", bound_json(&bernoulli_failure_bound(n, k, q, m, e)));
                if let Some(gamma) = gamma {
                    println!(
                        "{}",
                        bound_json(&bernoulli_failure_bound_gamma(n, k, q, m, gamma))
                    );
                }
            }
            BoundsCommand::KsMargin { n, k, p, delta } => {
                let params = derive_ks_params(n, k, p, delta)?;
                let margin = ks_guarantee_margin(&params, k);
                println!(
                    "{}",
                    json!({
                        "nprime": params.nprime,
                        "kprime": params.kprime,
                        "m": params.m,
                        "e": params.e,
                        "margin": margin,
                        "guaranteed": margin > 0,
                    })
                );
            }
        },
    }
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if cause.downcast_ref::<GtmatError>().is_some() {
            return 2;
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return 2;
        }
        if let Some(core) = cause.downcast_ref::<pooltest::Error>() {
            return match core {
                pooltest::Error::RaggedRow { .. } | pooltest::Error::InvalidBitChar { .. } => 2,
                _ => 1,
            };
        }
    }
    1
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err:#}");
        std::process::exit(exit_code(&err));
    }
}
