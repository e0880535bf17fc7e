//! Command-line front end: bound evaluation, exact oracles, Monte
//! Carlo simulation, experiment reproduction, and the hard-pair /
//! divergence / minimax demonstrations.
//!
//! Exit codes: 0 success, 2 validation error (bad arguments, malformed
//! files, domain violations), 3 numerical failure (no root, tolerance
//! not met, no valid confidence level).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use batch_bandits::bounds::{
    self, minimax_lower_shape, minimax_upper, regret_bound_corollary,
    regret_bound_general, regret_bound_simplified, BoundReport, PolicyKind,
};
use batch_bandits::exact::{exact_pick_probabilities, exact_regret_two_arm};
use batch_bandits::harness::{
    gen_hundred_arm, gen_two_arm_sweep, run_divergence, run_fraction,
    DivergenceRow, FractionRow, HundredArmConfig,
};
use batch_bandits::instances::BanditInstance;
use batch_bandits::numerics::QuadratureSpec;
use batch_bandits::policies::{IndexPolicy, PolicyDescriptor};
use batch_bandits::sim::{mc_compare, mc_regret, SimConfig, SimResult};
use batch_bandits::Error;

#[derive(Parser)]
#[command(
    name = "batch-bandits",
    about = "Policy selection from logged bandit data: bounds, exact regret oracles, and reproducible experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundMethod {
    General,
    Simplified,
    Corollary,
}

#[derive(Clone, Copy, ValueEnum)]
enum Figure {
    Lcb1,
    Lcb2,
    Ucb1,
    Ucb2,
    TwoArm,
    Fraction,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an analytical regret bound for a policy on an instance
    Bound {
        /// Instance JSON file: {"means":[..],"counts":[..],"strict":bool?}
        #[arg(long)]
        instance: PathBuf,
        /// Policy descriptor JSON, e.g. {"kind":"lcb","delta":0.1}
        #[arg(long)]
        policy: String,
        /// Confidence level for the simplified / corollary methods
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        #[arg(long, value_enum, default_value = "general")]
        method: BoundMethod,
    },
    /// Exact pick probabilities and regret via quadrature
    Exact {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        policy: String,
    },
    /// Monte Carlo simulation of a policy on an instance
    Simulate {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        policy: String,
        #[arg(long)]
        reps: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Regenerate an experiment's CSV panels into a directory
    Reproduce {
        #[arg(long, value_enum)]
        figure: Figure,
        #[arg(long)]
        out: PathBuf,
        /// Single total sample budget (default: sweep 200..5000)
        #[arg(long)]
        total_n: Option<f64>,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        /// Monte Carlo replications per instance
        #[arg(long, default_value_t = 100)]
        reps: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Arms for the fraction experiment
        #[arg(long, default_value_t = 16)]
        k: usize,
        /// Well-sampled arms for the fraction experiment
        #[arg(long, default_value_t = 8)]
        m: usize,
    },
    /// Mirrored two-arm pair: exact regrets over a grid of threshold biases
    HardPair {
        #[arg(long)]
        n1: f64,
        #[arg(long)]
        n2: f64,
        /// Grid LO:HI:STEP of threshold biases (LO may be negative)
        #[arg(long, allow_hyphen_values = true)]
        beta_grid: String,
    },
    /// Weighted-regret divergence table over a count sequence
    Divergence {
        /// Sequence spec LO:HI:geometric (doubling)
        #[arg(long)]
        n1: String,
    },
    /// Worst-case bound (fixed-point confidence level) and lower-bound shape
    Minimax {
        /// JSON file containing an array of per-arm counts
        #[arg(long)]
        counts: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// 3 for numerical failures, 2 for validation / input errors.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NoSignChange
        | Error::NonFiniteEvaluation { .. }
        | Error::ToleranceNotMet
        | Error::NoValidDelta => 3,
        _ => 2,
    }
}

fn read_to_string(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path)
        .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<BanditInstance, Error> {
    BanditInstance::from_json(&read_to_string(path)?)
}

fn parse_policy(json: &str) -> Result<PolicyDescriptor, Error> {
    PolicyDescriptor::from_json(json)
}

fn write_file(path: &Path, contents: &str) -> Result<(), Error> {
    fs::write(path, contents)
        .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display())))
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Bound { instance, policy, delta, method } => {
            let inst = load_instance(&instance)?;
            let descriptor = parse_policy(&policy)?;
            let built = descriptor.build(inst.counts())?;
            let report = match method {
                BoundMethod::General => regret_bound_general(&inst, built.bias())?,
                BoundMethod::Simplified => BoundReport {
                    method: "simplified".into(),
                    regret_bound: regret_bound_simplified(&inst, built.bias(), delta)?,
                    rank_cdf_bound: vec![],
                    g_star: vec![],
                },
                BoundMethod::Corollary => {
                    let kind = match descriptor {
                        PolicyDescriptor::Greedy => PolicyKind::Greedy,
                        PolicyDescriptor::Lcb { .. } => PolicyKind::Lcb,
                        PolicyDescriptor::Ucb { .. } => PolicyKind::Ucb,
                        _ => {
                            return Err(Error::Domain(
                                "the corollary method applies to greedy, lcb and ucb policies only"
                                    .into(),
                            ))
                        }
                    };
                    BoundReport {
                        method: format!("corollary-{}", kind.label()),
                        regret_bound: regret_bound_corollary(kind, &inst, delta)?,
                        rank_cdf_bound: vec![],
                        g_star: vec![],
                    }
                }
            };
            println!("{}", report.to_json());
            Ok(())
        }
        Command::Exact { instance, policy } => {
            let inst = load_instance(&instance)?;
            let built = parse_policy(&policy)?.build(inst.counts())?;
            let dist =
                exact_pick_probabilities(&inst, &built, &QuadratureSpec::default())?;
            println!("{}", dist.to_json());
            Ok(())
        }
        Command::Simulate { instance, policy, reps, seed } => {
            let inst = load_instance(&instance)?;
            let descriptor = parse_policy(&policy)?;
            let built = descriptor.build(inst.counts())?;
            let result = mc_regret(&inst, &built, &SimConfig::new(reps, seed)?)?;
            println!("{}", SimResult::csv_header(inst.k()));
            println!("{}", result.csv_row(&descriptor.label(), seed));
            Ok(())
        }
        Command::Reproduce { figure, out, total_n, delta, reps, seed, k, m } => {
            fs::create_dir_all(&out)
                .map_err(|e| Error::Domain(format!("cannot create {}: {e}", out.display())))?;
            let sweep: Vec<f64> =
                total_n.map_or_else(|| vec![200.0, 500.0, 1000.0, 2000.0, 5000.0], |n| vec![n]);
            match figure {
                Figure::Lcb1 | Figure::Lcb2 | Figure::Ucb1 | Figure::Ucb2 => {
                    let config = match figure {
                        Figure::Lcb1 => HundredArmConfig::Lcb1,
                        Figure::Lcb2 => HundredArmConfig::Lcb2,
                        Figure::Ucb1 => HundredArmConfig::Ucb1,
                        _ => HundredArmConfig::Ucb2,
                    };
                    let mut lines = vec!["total_n,policy,exact_regret".to_string()];
                    for &n in &sweep {
                        let inst = gen_hundred_arm(config, n)?;
                        for (label, policy) in named_policies(delta, inst.counts())? {
                            let dist = exact_pick_probabilities(
                                &inst,
                                &policy,
                                &QuadratureSpec::default(),
                            )?;
                            lines.push(format!("{n},{label},{}", dist.regret));
                        }
                    }
                    write_panel(&out, config.name(), &lines)?;
                    write_metadata(&out, config.name(), &sweep, delta, seed, "total_n")
                }
                Figure::TwoArm => {
                    let mut lines =
                        vec!["gap,policy,exact_regret,mc_regret,mc_se".to_string()];
                    for inst in gen_two_arm_sweep(100.0, 10.0, -1.0, 1.0, 41)? {
                        let gap = inst.means()[0] - inst.means()[1];
                        let policies = named_policies(delta, inst.counts())?;
                        let refs: Vec<&dyn batch_bandits::policies::ArmSelector> =
                            policies.iter().map(|(_, p)| p as _).collect();
                        let sims =
                            mc_compare(&inst, &refs, &SimConfig::new(reps, seed)?)?;
                        for ((label, policy), sim) in policies.iter().zip(&sims) {
                            let exact = exact_regret_two_arm(
                                &inst,
                                policy.two_arm_threshold()?,
                            )?;
                            lines.push(format!(
                                "{gap},{label},{exact},{},{}",
                                sim.mean_regret, sim.std_error
                            ));
                        }
                    }
                    write_panel(&out, "two_arm", &lines)?;
                    write_metadata(&out, "two_arm", &[], delta, seed, "gap")
                }
                Figure::Fraction => {
                    let rows = run_fraction(k, m, delta, reps, 5, 100, 100, seed)?;
                    let mut lines = vec![FractionRow::CSV_HEADER.to_string()];
                    lines.extend(rows.iter().map(FractionRow::csv_row));
                    write_panel(&out, "fraction", &lines)?;
                    write_metadata(&out, "fraction", &[], delta, seed, "k")
                }
            }
        }
        Command::HardPair { n1, n2, beta_grid } => {
            let (lo, hi, step) = parse_grid(&beta_grid)?;
            let pair = bounds::make_hard_pair(n1, n2)?;
            let n_min = n1.min(n2);
            println!("beta,regret_theta1,regret_theta2,max_regret,ratio_vs_unbiased");
            let greedy_max = exact_regret_two_arm(&pair.theta1, 0.0)?
                .max(exact_regret_two_arm(&pair.theta2, 0.0)?);
            let mut beta = lo;
            while beta <= hi + 1e-12 {
                // A_β picks arm 1 iff the mean difference clears
                // β/√n_min; on θ₂ arm 2 is optimal so the same rule is
                // evaluated on the mirrored instance.
                let t = beta / n_min.sqrt();
                let r1 = exact_regret_two_arm(&pair.theta1, t)?;
                let r2 = exact_regret_two_arm(&pair.theta2, t)?;
                let max = r1.max(r2);
                println!("{beta},{r1},{r2},{max},{}", max / greedy_max);
                beta += step;
            }
            Ok(())
        }
        Command::Divergence { n1 } => {
            let list = parse_geometric(&n1)?;
            println!("{}", DivergenceRow::CSV_HEADER);
            for row in run_divergence(&list)? {
                println!("{}", row.csv_row());
            }
            Ok(())
        }
        Command::Minimax { counts } => {
            let text = read_to_string(&counts)?;
            let counts: Vec<f64> = serde_json::from_str(&text)
                .map_err(|e| Error::Domain(format!("invalid counts JSON: {e}")))?;
            let (delta_star, bound) = minimax_upper(&counts, 1e-12)?;
            let lower = minimax_lower_shape(&counts);
            println!(
                "{{\"delta_star\":{delta_star},\"upper_bound\":{bound},\"lower_shape\":{lower}}}"
            );
            Ok(())
        }
    }
}

fn named_policies(
    delta: f64,
    counts: &[f64],
) -> Result<Vec<(&'static str, IndexPolicy)>, Error> {
    Ok(vec![
        ("greedy", IndexPolicy::greedy(counts.len())?),
        ("lcb", IndexPolicy::lcb(delta, counts)?),
        ("ucb", IndexPolicy::ucb(delta, counts)?),
    ])
}

fn write_panel(out: &Path, name: &str, lines: &[String]) -> Result<(), Error> {
    write_file(&out.join(format!("{name}.csv")), &(lines.join("\n") + "\n"))
}

fn write_metadata(
    out: &Path,
    figure: &str,
    sweep: &[f64],
    delta: f64,
    seed: u64,
    x_axis: &str,
) -> Result<(), Error> {
    let sweep_json: Vec<String> = sweep.iter().map(|n| format!("{n}")).collect();
    write_file(
        &out.join("metadata.json"),
        &format!(
            "{{\"figure\":\"{figure}\",\"delta\":{delta},\"seed\":{seed},\"x_axis\":\"{x_axis}\",\"total_n_sweep\":[{}]}}\n",
            sweep_json.join(",")
        ),
    )
}

fn parse_grid(spec: &str) -> Result<(f64, f64, f64), Error> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Domain(format!("grid must be LO:HI:STEP, got {spec}")));
    }
    let parse = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| Error::Domain(format!("invalid grid number: {s}")))
    };
    let (lo, hi, step) = (parse(parts[0])?, parse(parts[1])?, parse(parts[2])?);
    if !(step > 0.0 && hi >= lo) {
        return Err(Error::Domain(format!("grid requires HI >= LO and STEP > 0, got {spec}")));
    }
    Ok((lo, hi, step))
}

fn parse_geometric(spec: &str) -> Result<Vec<f64>, Error> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 || parts[2] != "geometric" {
        return Err(Error::Domain(format!("sequence must be LO:HI:geometric, got {spec}")));
    }
    let parse = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| Error::Domain(format!("invalid sequence number: {s}")))
    };
    let (lo, hi) = (parse(parts[0])?, parse(parts[1])?);
    if !(lo >= 2.0 && hi >= lo) {
        return Err(Error::Domain(format!("sequence requires 2 <= LO <= HI, got {spec}")));
    }
    let mut list = Vec::new();
    let mut n = lo;
    while n <= hi {
        list.push(n);
        n *= 2.0;
    }
    Ok(list)
}
