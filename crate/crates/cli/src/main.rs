use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rbc_cli::commands::{self, emit};
use rbc_cli::scenario::{load_channel, load_coupling, load_scenario};
use rbc_cli::{acceptance, CliError, Result};
use rbc_core::dmc::{EvalOptions, RateTuple, SearchOptions, TheoremId, DEFAULT_BUDGET};
use rbc_core::gaussian::{GaussianModel, GaussianNetwork, Strategy, StrategyParams};

/// Secrecy rate regions of relay broadcast channels.
///
/// Exit codes: 0 success, 1 usage error, 2 invalid input, 3 infeasible
/// configuration, 4 self-test failure. RBC_THREADS caps the worker count.
#[derive(Parser)]
#[command(name = "rbc", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Best confidential rate R1 against the power split alpha, one column per strategy.
    Curve(GaussianArgs),
    /// Pareto frontiers of each strategy's rate region.
    Region(GaussianArgs),
    /// Evaluate one Gaussian strategy at one parameter point.
    Gaussian(PointArgs),
    /// Check a rate tuple against a discrete bound for a fixed coupling.
    DmcEval(EvalArgs),
    /// Grid search over couplings for the best secrecy-slice objective.
    DmcSearch(SearchArgs),
    /// Run the acceptance checks and print one line per criterion.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct GaussianArgs {
    /// Scenario JSON file (model B or C).
    #[arg(long)]
    scenario: PathBuf,
    /// Output CSV path; overrides the scenario's "output". Standard output when neither is set or when it is "-".
    #[arg(long)]
    out: Option<PathBuf>,
    /// Replace each frontier by the vertices of its upper concave envelope (region only).
    #[arg(long)]
    convex_hull: bool,
}

#[derive(Args)]
struct PointArgs {
    /// Scenario JSON file supplying the network and model.
    #[arg(long, conflicts_with_all = ["net", "model"])]
    scenario: Option<PathBuf>,
    /// Network as P1,P2,N1,N2,Nr.
    #[arg(long, value_delimiter = ',', requires = "model")]
    net: Option<Vec<f64>>,
    /// Model: b (two confidential messages) or c (common plus one confidential).
    #[arg(long, value_parser = ["b", "c"])]
    model: Option<String>,
    /// Strategy: df, nf, cf or baseline.
    #[arg(long)]
    strategy: String,
    #[arg(long)]
    alpha: f64,
    /// Common-layer power fraction (model b).
    #[arg(long, default_value_t = 0.0)]
    beta: f64,
    /// Compression noise variance (cf only).
    #[arg(long)]
    q: Option<f64>,
    /// Pure-noise rate R* (cf only); defaults to its admissible maximum.
    #[arg(long)]
    rstar: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DmcSource {
    /// DMC scenario JSON naming channel, coupling and theorem.
    #[arg(long, conflicts_with_all = ["channel", "theorem"])]
    scenario: Option<PathBuf>,
    /// Channel JSON file.
    #[arg(long, requires = "theorem")]
    channel: Option<PathBuf>,
    /// Theorem number 1..=12 (or T1..T12).
    #[arg(long)]
    theorem: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    source: DmcSource,
    /// Coupling JSON file.
    #[arg(long)]
    coupling: Option<PathBuf>,
    /// Rates as R0,R1,R2,Re1,Re2.
    #[arg(long, value_delimiter = ',')]
    rates: Option<Vec<f64>>,
    /// Membership tolerance on slacks, in bits.
    #[arg(long, default_value_t = rbc_core::dmc::MEMBERSHIP_TOLERANCE)]
    tol: f64,
    /// Floor every equivocation cap at zero.
    #[arg(long)]
    clamp_equivocation: bool,
    /// Fixed compress-forward pure-noise rate instead of the per-branch default.
    #[arg(long)]
    rstar: Option<f64>,
    /// Print the information-term table instead of the membership report.
    #[arg(long)]
    terms: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    source: DmcSource,
    /// Auxiliary alphabet sizes, e.g. V1=2,V2=2. Unlisted auxiliaries are constant.
    #[arg(long, value_delimiter = ',')]
    aux: Vec<String>,
    /// Lattice points per simplex edge; 1 searches only the uniform coupling.
    #[arg(long)]
    grid_steps: Option<usize>,
    /// Objective weights on R0,R1,R2.
    #[arg(long, value_delimiter = ',')]
    objective: Option<Vec<f64>>,
    /// Refuse searches needing more evaluations than this.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    clamp_equivocation: bool,
    /// Write the best coupling as JSON to this path.
    #[arg(long)]
    coupling_out: Option<PathBuf>,
}

#[derive(Args)]
struct SelftestArgs {
    /// Run only these criteria (1-based), comma separated.
    #[arg(long, value_delimiter = ',')]
    only: Vec<u8>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("rbc: {e}");
        return ExitCode::from(e.exit_code());
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rbc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("RBC_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("RBC_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot size the worker pool: {e}")))
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Curve(a) => {
            let sc = load_scenario(&a.scenario)?;
            if a.convex_hull {
                return Err(CliError::Usage("--convex-hull applies to region, not curve".into()));
            }
            let t = commands::curve(sc.gaussian()?)?;
            emit(&t.to_csv(), a.out.as_deref().or(sc.output.as_deref()))
        }
        Command::Region(a) => {
            let sc = load_scenario(&a.scenario)?;
            let t = commands::region(sc.gaussian()?, a.convex_hull)?;
            emit(&t.to_csv(), a.out.as_deref().or(sc.output.as_deref()))
        }
        Command::Gaussian(a) => gaussian(a),
        Command::DmcEval(a) => dmc_eval(a),
        Command::DmcSearch(a) => dmc_search(a),
        Command::Selftest(a) => selftest(a),
    }
}

fn gaussian(a: PointArgs) -> Result<()> {
    let (model, net) = match (&a.scenario, &a.net, &a.model) {
        (Some(p), _, _) => {
            let sc = load_scenario(p)?;
            let g = sc.gaussian()?;
            (g.model, g.net)
        }
        (None, Some(v), Some(m)) => {
            let model = if m == "b" { GaussianModel::B } else { GaussianModel::C };
            let v = exactly::<5>(v, "--net")?;
            (model, GaussianNetwork::new(v[0], v[1], v[2], v[3], v[4])?)
        }
        _ => return Err(CliError::Usage("give --scenario, or --net with --model".into())),
    };
    let strategy = Strategy::in_model(model, &a.strategy).map_err(|_| {
        CliError::Usage(format!(
            "unknown strategy {:?} (expected df, nf, cf or baseline)",
            a.strategy
        ))
    })?;
    let mut sp = StrategyParams::new(a.alpha, a.beta);
    match (strategy.is_cf(), a.q) {
        (true, Some(q)) => sp = sp.with_cf(q, a.rstar),
        (true, None) => return Err(CliError::Usage("compress-forward needs --q".into())),
        (false, _) if a.q.is_some() || a.rstar.is_some() => {
            return Err(CliError::Usage("--q and --rstar apply to cf only".into()))
        }
        (false, _) => {}
    }
    let t = commands::gaussian_point(&net, strategy, &sp)?;
    emit(&t.to_csv(), a.out.as_deref())
}

fn exactly<const N: usize>(v: &[f64], flag: &str) -> Result<[f64; N]> {
    v.try_into()
        .map_err(|_| CliError::Usage(format!("{flag} takes {N} comma-separated numbers, got {}", v.len())))
}

struct Resolved {
    channel: rbc_core::dmc::DmcModel,
    theorem: TheoremId,
    scenario: Option<rbc_cli::scenario::DmcScenario>,
    output: Option<PathBuf>,
}

fn resolve(s: &DmcSource) -> Result<Resolved> {
    if let Some(p) = &s.scenario {
        let sc = load_scenario(p)?;
        let d = sc.dmc()?.clone();
        return Ok(Resolved {
            channel: d.channel.clone(),
            theorem: d.theorem,
            output: s.out.clone().or(sc.output),
            scenario: Some(d),
        });
    }
    let (Some(ch), Some(th)) = (&s.channel, &s.theorem) else {
        return Err(CliError::Usage("give --scenario, or --channel with --theorem".into()));
    };
    Ok(Resolved {
        channel: load_channel(ch)?,
        theorem: th.parse()?,
        scenario: None,
        output: s.out.clone(),
    })
}

fn dmc_eval(a: EvalArgs) -> Result<()> {
    let r = resolve(&a.source)?;
    let coupling = match (&a.coupling, r.scenario.as_ref().and_then(|d| d.coupling.clone())) {
        (Some(p), _) => load_coupling(p)?,
        (None, Some(c)) => c,
        (None, None) => {
            return Err(CliError::Usage(
                "dmc-eval needs a coupling (--coupling or in the scenario)".into(),
            ))
        }
    };
    if !a.tol.is_finite() || a.tol < 0.0 {
        return Err(CliError::Usage(format!("--tol must be finite and >= 0, got {}", a.tol)));
    }
    let opts = EvalOptions {
        tol: a.tol,
        clamp_equivocation: a.clamp_equivocation,
        rstar: a.rstar,
        ..EvalOptions::default()
    };
    if a.terms {
        let t = commands::dmc_terms(&r.channel, &coupling, r.theorem)?;
        return emit(&t.to_csv(), r.output.as_deref());
    }
    let rates = match (&a.rates, r.scenario.as_ref().and_then(|d| d.rates)) {
        (Some(v), _) => {
            let v = exactly::<5>(v, "--rates")?;
            RateTuple::new(v[0], v[1], v[2], v[3], v[4])
        }
        (None, Some(t)) => t,
        (None, None) => return Err(CliError::Usage("dmc-eval needs --rates or scenario rates".into())),
    };
    let (t, ev) = commands::dmc_eval(&r.channel, &coupling, r.theorem, &rates, &opts)?;
    emit(&t.to_csv(), r.output.as_deref())?;
    eprintln!("{}: member = {}, branch = {}", ev.theorem, ev.member, ev.branch_taken);
    Ok(())
}

fn parse_aux(items: &[String]) -> Result<BTreeMap<String, usize>> {
    let mut m = BTreeMap::new();
    for it in items {
        let (k, v) = it
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--aux entries look like V1=2, got {it:?}")))?;
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("alphabet size in {it:?} is not an integer")))?;
        if m.insert(k.trim().to_string(), n).is_some() {
            return Err(CliError::Usage(format!("{k} given twice in --aux")));
        }
    }
    Ok(m)
}

fn dmc_search(a: SearchArgs) -> Result<()> {
    let r = resolve(&a.source)?;
    let sc = r.scenario.as_ref();
    let aux = if a.aux.is_empty() {
        sc.map(|d| d.aux_sizes.clone()).unwrap_or_default()
    } else {
        parse_aux(&a.aux)?
    };
    let steps = a.grid_steps.or(sc.map(|d| d.grid_steps)).unwrap_or(3);
    let objective = match (&a.objective, sc) {
        (Some(v), _) => exactly::<3>(v, "--objective")?,
        (None, Some(d)) => d.objective,
        (None, None) => [0.0, 1.0, 0.0],
    };
    let opts = SearchOptions {
        budget: a.budget.or(sc.map(|d| d.budget)).unwrap_or(DEFAULT_BUDGET),
        eval: EvalOptions {
            clamp_equivocation: a.clamp_equivocation,
            ..EvalOptions::default()
        },
    };
    let (t, res) = commands::dmc_search(&r.channel, &aux, steps, r.theorem, objective, &opts)?;
    emit(&t.to_csv(), r.output.as_deref())?;
    if let Some(p) = &a.coupling_out {
        let text = serde_json::to_string_pretty(&res.coupling.to_json())? + "\n";
        emit(&text, Some(p))?;
    }
    Ok(())
}

fn selftest(a: SelftestArgs) -> Result<()> {
    let ids: Vec<u8> = if a.only.is_empty() {
        (1..=acceptance::count() as u8).collect()
    } else {
        a.only.clone()
    };
    let mut failed = Vec::new();
    for n in ids {
        let o = acceptance::run(n).ok_or_else(|| CliError::Usage(format!("no criterion {n}")))?;
        println!("{o}");
        if !o.ok() {
            failed.push(n.to_string());
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::SelftestFailed(format!(
            "criteria {} did not pass",
            failed.join(", ")
        )))
    }
}
