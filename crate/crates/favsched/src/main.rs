//! Command-line front end: run experiments, sweep a parameter, play the
//! adaptive opponents, query the exact solver, or run the verification
//! suite. Reports go to stdout or `--out`, as CSV or JSON.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use favsched::adversaries::{
    gf_tight, greedy_lower_bound_report, halving, tight_symmetric, two_machine,
};
use favsched::algorithms::{AlgoParams, AlgorithmSpec, TieBreakPolicy};
use favsched::harness::{
    cli_run, parse_grid, render, render_sweep, sweep, verify_all, AlgoEntry, ExperimentSpec,
    InstanceSource, OracleMode, OutputFormat, RandomSpec, SweepParam,
};
use favsched::oracle::{
    default_node_budget, exact_opt, greedy_bound, lb_balance, lb_general, lb_symmetric,
    rescale_bound,
};
use favsched::value::{format_exact, parse_rat, to_f64, Rat};
use favsched::{Error, Instance, Result};

#[derive(Parser)]
#[command(
    name = "favsched",
    version,
    about = "Online scheduling on machines with favorites: algorithms, opponents, bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run algorithms over instances; one report row per pair.
    Run(RunArgs),
    /// Re-run a spec at several values of one parameter (s, m, f, c, gamma).
    Sweep(SweepArgs),
    /// Play an opponent construction against one algorithm.
    Adversary(AdversaryArgs),
    /// Exact optimum, witness, and closed-form bounds for an instance file.
    Oracle(OracleArgs),
    /// Run the acceptance suite; non-zero exit when anything fails.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SourceArgs {
    /// Instance JSON file (general `{m, jobs}` or two-group `{f, s, jobs}`).
    #[arg(long)]
    instance: Option<PathBuf>,
    /// Generator: greedy-lb | gf-tight | sym-tight:<1-5> | small-jobs |
    /// random | random-sym.
    #[arg(long)]
    gen: Option<String>,
    /// Machines (greedy-lb, random).
    #[arg(long)]
    m: Option<usize>,
    /// Favorite-set size / group size.
    #[arg(long)]
    f: Option<usize>,
    /// Slowdown for the two-group generators, as an exact rational.
    #[arg(long)]
    s: Option<String>,
    /// Jobs per random instance.
    #[arg(long)]
    n: Option<usize>,
    /// Seed for the random generators.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Drip depth for sym-tight.
    #[arg(long, default_value_t = 8)]
    u: usize,
    /// Grain for sym-tight and small-jobs.
    #[arg(long, default_value = "1/10000")]
    epsilon: String,
    /// Target prefix level for small-jobs.
    #[arg(long)]
    level: Option<String>,
    /// Instances to draw from a random source.
    #[arg(long, default_value_t = 1)]
    reps: usize,
}

impl SourceArgs {
    fn need_m(&self) -> Result<usize> {
        self.m
            .ok_or_else(|| Error::Config("this source needs --m".into()))
    }

    fn need_f(&self) -> Result<usize> {
        self.f
            .ok_or_else(|| Error::Config("this source needs --f".into()))
    }

    fn need_n(&self) -> Result<usize> {
        self.n
            .ok_or_else(|| Error::Config("this source needs --n".into()))
    }

    fn need_s(&self) -> Result<Rat> {
        self.s
            .as_deref()
            .ok_or_else(|| Error::Config("this source needs --s".into()))
            .and_then(parse_rat)
    }

    fn build(&self) -> Result<InstanceSource> {
        match (&self.instance, &self.gen) {
            (Some(_), Some(_)) => Err(Error::Config(
                "pass either --instance or --gen, not both".into(),
            )),
            (Some(path), None) => Ok(InstanceSource::File(path.clone())),
            (None, Some(id)) => self.generator(id),
            (None, None) => Err(Error::Config(
                "pass --instance FILE or --gen ID".into(),
            )),
        }
    }

    fn generator(&self, id: &str) -> Result<InstanceSource> {
        if let Some(rest) = id.strip_prefix("sym-tight") {
            let case: u8 = rest
                .trim_start_matches(':')
                .parse()
                .map_err(|_| Error::Config(format!("bad sym-tight case in {id:?}")))?;
            return Ok(InstanceSource::SymTight {
                case,
                f: self.need_f()?,
                s: self.need_s()?,
                depth: self.u,
                eps: parse_rat(&self.epsilon)?,
            });
        }
        match id {
            "greedy-lb" => Ok(InstanceSource::GreedyLb {
                m: self.need_m()?,
                f: self.need_f()?,
            }),
            "gf-tight" => Ok(InstanceSource::GfTight {
                f: self.need_f()?,
                s: self.need_s()?,
            }),
            "small-jobs" => Ok(InstanceSource::SmallJobs {
                f: self.need_f()?,
                s: self.need_s()?,
                level: self
                    .level
                    .as_deref()
                    .ok_or_else(|| Error::Config("small-jobs needs --level".into()))
                    .and_then(parse_rat)?,
                eps: parse_rat(&self.epsilon)?,
            }),
            "random" => Ok(InstanceSource::Random(RandomSpec::new(
                self.need_m()?,
                self.need_f()?,
                self.need_n()?,
            )?)),
            "random-sym" => Ok(InstanceSource::Random(RandomSpec::symmetric(
                self.need_f()?,
                self.need_s()?,
                self.need_n()?,
            )?)),
            other => Err(Error::Config(format!("unknown generator {other:?}"))),
        }
    }
}

#[derive(Args)]
struct AlgoArgs {
    /// Algorithm, repeatable: greedy | greedy-favorite | ggf | assign-u |
    /// assign-u-doubling | rescale:<c>:<inner>.
    #[arg(long = "algo", required = true)]
    algos: Vec<String>,
    /// Exponent parameter for the assign-u family.
    #[arg(long, default_value_t = 2.0)]
    gamma: f64,
    /// Fixed load estimate for assign-u; defaults to the oracle value.
    #[arg(long)]
    lambda: Option<String>,
    /// greedy tie policy: bad-smallest | smallest-index.
    #[arg(long, default_value = "bad-smallest")]
    tie_break: String,
}

impl AlgoArgs {
    fn params(&self) -> Result<AlgoParams> {
        Ok(AlgoParams {
            tie_break: TieBreakPolicy::parse(&self.tie_break)?,
            gamma: self.gamma,
            lambda: self.lambda.as_deref().map(parse_rat).transpose()?,
        })
    }

    fn entries(&self) -> Result<Vec<AlgoEntry>> {
        let params = self.params()?;
        Ok(self
            .algos
            .iter()
            .map(|id| AlgoEntry::new(id.clone(), params.clone()))
            .collect())
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    algos: AlgoArgs,
    /// exact | witness | lb-only.
    #[arg(long, default_value = "exact")]
    oracle: String,
    /// csv | json.
    #[arg(long, default_value = "csv")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    algos: AlgoArgs,
    /// s | m | f | c | gamma.
    #[arg(long)]
    param: String,
    /// Grid: `a,b,c` or `lo:hi:step`.
    #[arg(long)]
    range: String,
    #[arg(long, default_value = "exact")]
    oracle: String,
    #[arg(long, default_value = "csv")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AdversaryArgs {
    /// Opponent: greedy-lb | halving | two-machine | sym-tight:<1-5> | gf-tight.
    game: String,
    /// Algorithm to play against (where the game allows a choice).
    #[arg(long, default_value = "greedy")]
    algo: String,
    #[arg(long, default_value_t = 2.0)]
    gamma: f64,
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long, default_value = "bad-smallest")]
    tie_break: String,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    f: Option<usize>,
    #[arg(long)]
    s: Option<String>,
    #[arg(long, default_value_t = 8)]
    u: usize,
    #[arg(long, default_value = "1/10000")]
    epsilon: String,
    /// Include the full instance and witness in the output.
    #[arg(long)]
    full: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    /// Instance JSON file.
    #[arg(long)]
    instance: PathBuf,
    /// Node budget for the search (default: FAVSCHED_NODE_BUDGET or 10^7).
    #[arg(long)]
    budget: Option<u64>,
    /// Also report the effective favorite count and bound at this threshold.
    #[arg(long)]
    c: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 2.0)]
    gamma: f64,
    /// Where to write the JSON summary (stdout lines print regardless).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => Ok(std::fs::write(path, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_cmd(args: &RunArgs) -> Result<i32> {
    let format = OutputFormat::parse(&args.format)?;
    let spec = ExperimentSpec {
        algorithms: args.algos.entries()?,
        source: args.source.build()?,
        oracle: OracleMode::parse(&args.oracle)?,
        repetitions: args.source.reps,
        seed: args.source.seed,
        format,
    };
    let rows = cli_run(&spec)?;
    emit(&render(&rows, format)?, args.out.as_ref())?;
    Ok(0)
}

fn sweep_cmd(args: &SweepArgs) -> Result<i32> {
    let format = OutputFormat::parse(&args.format)?;
    let base = ExperimentSpec {
        algorithms: args.algos.entries()?,
        source: args.source.build()?,
        oracle: OracleMode::parse(&args.oracle)?,
        repetitions: args.source.reps,
        seed: args.source.seed,
        format,
    };
    let param = SweepParam::parse(&args.param)?;
    let grid = parse_grid(&args.range)?;
    let points = sweep(param, &grid, &base)?;
    emit(&render_sweep(param, &points, format)?, args.out.as_ref())?;
    Ok(0)
}

fn adversary_cmd(args: &AdversaryArgs) -> Result<i32> {
    let params = AlgoParams {
        tie_break: TieBreakPolicy::parse(&args.tie_break)?,
        gamma: args.gamma,
        lambda: args.lambda.as_deref().map(parse_rat).transpose()?,
    };
    let spec = AlgorithmSpec::parse(&args.algo, &params)?;
    let need_f = || {
        args.f
            .ok_or_else(|| Error::Config("this game needs --f".into()))
    };
    let need_m = || {
        args.m
            .ok_or_else(|| Error::Config("this game needs --m".into()))
    };
    let need_s = || {
        args.s
            .as_deref()
            .ok_or_else(|| Error::Config("this game needs --s".into()))
            .and_then(parse_rat)
    };
    let (mut body, report) = if let Some(rest) = args.game.strip_prefix("sym-tight") {
        let case: u8 = rest
            .trim_start_matches(':')
            .parse()
            .map_err(|_| Error::Config(format!("bad sym-tight case in {:?}", args.game)))?;
        let outcome = tight_symmetric(case, need_f()?, &need_s()?, args.u, &parse_rat(&args.epsilon)?)?;
        (
            json!({
                "game": args.game,
                "algorithm": "greedy",
                "case": outcome.case_id,
                "closed_form": format_exact(&outcome.closed_form),
                "slack": format_exact(&outcome.slack),
            }),
            outcome.report,
        )
    } else {
        match args.game.as_str() {
            "greedy-lb" => {
                let (built, report) = greedy_lower_bound_report(need_m()?, need_f()?)?;
                (
                    json!({
                        "game": "greedy-lb",
                        "algorithm": "greedy",
                        "target_ratio": format_exact(&built.target_ratio),
                    }),
                    report,
                )
            }
            "halving" => {
                let outcome = halving(&spec, need_m()?, need_f()?)?;
                (
                    json!({
                        "game": "halving",
                        "algorithm": spec.to_string(),
                        "bound": format_exact(&outcome.bound),
                        "rounds": outcome.rounds,
                        "machines_used": outcome.machines_used,
                    }),
                    outcome.report,
                )
            }
            "two-machine" => {
                let outcome = two_machine(&spec, &need_s()?)?;
                (
                    json!({
                        "game": "two-machine",
                        "algorithm": spec.to_string(),
                        "bound": format_exact(&outcome.bound),
                        "guaranteed": outcome.guaranteed,
                        "stopped_early": outcome.stopped_early,
                        "committed_probe": outcome.committed_probe,
                    }),
                    outcome.report,
                )
            }
            "gf-tight" => {
                let built = gf_tight(need_f()?, &need_s()?)?;
                let gf = AlgorithmSpec::parse("greedy-favorite", &AlgoParams::default())?;
                let online = favsched::algorithms::run(&gf, &built.instance)?;
                let report = favsched::adversaries::AdversaryReport::new(
                    built.instance,
                    online,
                    built.witness,
                )?;
                (
                    json!({
                        "game": "gf-tight",
                        "algorithm": "greedy-favorite",
                        "target_ratio": format_exact(&built.target_ratio),
                    }),
                    report,
                )
            }
            other => return Err(Error::Config(format!("unknown game {other:?}"))),
        }
    };
    body["online"] = json!(format_exact(&report.online_cost));
    body["claimed_opt"] = json!(format_exact(&report.claimed_opt));
    body["forced_ratio"] = json!(format_exact(&report.forced_ratio));
    body["forced_ratio_f64"] = json!(to_f64(&report.forced_ratio));
    body["n"] = json!(report.instance.n());
    body["m"] = json!(report.instance.m());
    if args.full {
        body["instance"] = report.instance.to_json_value();
        body["online_assignment"] = json!(report.online.assignment());
        body["witness_assignment"] = json!(report.witness.assignment());
    }
    let mut text = serde_json::to_string_pretty(&body)?;
    text.push('\n');
    emit(&text, args.out.as_ref())?;
    Ok(0)
}

fn oracle_cmd(args: &OracleArgs) -> Result<i32> {
    let source = InstanceSource::File(args.instance.clone());
    let generated = source.materialize(0, 1)?;
    let instance: &Instance = &generated[0].instance;
    let budget = args.budget.unwrap_or_else(default_node_budget);
    let best = exact_opt(instance, Some(budget))?;
    let mut body = json!({
        "instance": generated[0].label,
        "m": instance.m(),
        "f": instance.f(),
        "n": instance.n(),
        "opt": format_exact(&best.opt),
        "opt_f64": to_f64(&best.opt),
        "nodes": best.nodes,
        "witness": best.witness.assignment(),
        "lb_general": format_exact(&lb_general(instance)),
        "greedy_bound": format_exact(&greedy_bound(instance.m(), instance.f())),
    });
    if let Some(info) = instance.symmetric_info() {
        body["s"] = json!(format_exact(&info.s));
        body["lb_symmetric"] = json!(format_exact(&lb_symmetric(instance)?));
        body["lb_balance"] = json!(format_exact(&lb_balance(instance)?));
    }
    if let Some(c) = &args.c {
        let c = parse_rat(c)?;
        let f_hat = favsched::algorithms::rescaled_min_f(instance, &c);
        body["c"] = json!(format_exact(&c));
        body["f_hat"] = json!(f_hat);
        body["rescale_bound"] = json!(format_exact(&rescale_bound(&c, instance.m(), f_hat)));
    }
    let mut text = serde_json::to_string_pretty(&body)?;
    text.push('\n');
    emit(&text, args.out.as_ref())?;
    Ok(0)
}

fn verify_cmd(args: &VerifyArgs) -> Result<i32> {
    let summary = verify_all(args.gamma)?;
    for outcome in &summary.outcomes {
        println!("{}", outcome.line());
    }
    let mut text = serde_json::to_string_pretty(&summary.json())?;
    text.push('\n');
    match &args.out {
        Some(path) => std::fs::write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(if summary.passed { 0 } else { 1 })
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Run(args) => run_cmd(&args),
        Command::Sweep(args) => sweep_cmd(&args),
        Command::Adversary(args) => adversary_cmd(&args),
        Command::Oracle(args) => oracle_cmd(&args),
        Command::Verify(args) => verify_cmd(&args),
    }
}

fn main() {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => std::process::exit(code),
        Err(error) => {
            eprintln!("error: {error}");
            std::process::exit(2);
        }
    }
}
