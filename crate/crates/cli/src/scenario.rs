//! Scenario files: one JSON document naming a model, its parameters and
//! where results go.
//!
//! ```json
//! {
//!   "model": "B",
//!   "net": {"p1": 5, "p2": 3, "n1": 2, "n2": 8, "nr": 2},
//!   "strategies": ["df", "nf", "cf"],
//!   "grid": {"alpha_steps": 401, "beta_steps": 401, "q_values": [300], "rstar_policy": "max"},
//!   "output": "fig4.csv"
//! }
//! ```
//!
//! DMC scenarios replace `net`/`strategies`/`grid` with a `dmc` object whose
//! `channel` and `coupling` entries are paths relative to the scenario file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rbc_core::dmc::{AuxiliaryCoupling, DmcModel, RateTuple, TheoremId, DEFAULT_BUDGET};
use rbc_core::frontier::GridSpec;
use rbc_core::gaussian::{GaussianModel, GaussianNetwork, Strategy};
use serde::Deserialize;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum ModelKind {
    B,
    C,
    #[serde(rename = "DMC")]
    Dmc,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    model: ModelKind,
    #[serde(default)]
    net: Option<GaussianNetwork>,
    #[serde(default)]
    strategies: Option<Vec<String>>,
    #[serde(default)]
    grid: Option<GridSpec>,
    #[serde(default)]
    output: Option<PathBuf>,
    #[serde(default)]
    dmc: Option<DmcFile>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DmcFile {
    channel: PathBuf,
    #[serde(default)]
    coupling: Option<PathBuf>,
    theorem: TheoremId,
    #[serde(default)]
    rates: Option<RateTuple>,
    #[serde(default)]
    objective: Option<[f64; 3]>,
    #[serde(default)]
    aux_sizes: BTreeMap<String, usize>,
    #[serde(default = "default_grid_steps")]
    grid_steps: usize,
    #[serde(default)]
    budget: Option<u64>,
}

fn default_grid_steps() -> usize {
    3
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianScenario {
    pub model: GaussianModel,
    pub net: GaussianNetwork,
    pub strategies: Vec<Strategy>,
    pub grid: GridSpec,
}

#[derive(Debug, Clone)]
pub struct DmcScenario {
    pub channel: DmcModel,
    pub coupling: Option<AuxiliaryCoupling>,
    pub theorem: TheoremId,
    pub rates: Option<RateTuple>,
    pub objective: [f64; 3],
    pub aux_sizes: BTreeMap<String, usize>,
    pub grid_steps: usize,
    pub budget: u64,
}

#[derive(Debug, Clone)]
pub enum Body {
    Gaussian(GaussianScenario),
    Dmc(Box<DmcScenario>),
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub body: Body,
    /// Output path, resolved against the scenario's directory.
    pub output: Option<PathBuf>,
}

impl Scenario {
    pub fn gaussian(&self) -> Result<&GaussianScenario> {
        match &self.body {
            Body::Gaussian(g) => Ok(g),
            Body::Dmc(_) => Err(CliError::Usage(
                "this command needs a Gaussian (B or C) scenario".into(),
            )),
        }
    }

    pub fn dmc(&self) -> Result<&DmcScenario> {
        match &self.body {
            Body::Dmc(d) => Ok(d),
            Body::Gaussian(_) => Err(CliError::Usage("this command needs a DMC scenario".into())),
        }
    }
}

pub fn load_scenario(path: &Path) -> Result<Scenario> {
    let text = read(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    parse_scenario(&text, base).map_err(|e| e.in_file(path))
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

/// Parses and validates scenario text; file references resolve against `base`.
pub fn parse_scenario(text: &str, base: &Path) -> Result<Scenario> {
    if text.trim().is_empty() {
        return Err(CliError::Input("scenario file is empty".into()));
    }
    let f: ScenarioFile = serde_json::from_str(text)?;
    let output = f.output.as_ref().map(|p| base.join(p));
    let body = match f.model {
        ModelKind::B | ModelKind::C => {
            if f.dmc.is_some() {
                return Err(CliError::Input(
                    "a Gaussian scenario cannot carry a \"dmc\" section".into(),
                ));
            }
            let model = if f.model == ModelKind::B {
                GaussianModel::B
            } else {
                GaussianModel::C
            };
            Body::Gaussian(gaussian_body(model, f.net, f.strategies, f.grid)?)
        }
        ModelKind::Dmc => {
            if f.net.is_some() || f.strategies.is_some() || f.grid.is_some() {
                return Err(CliError::Input(
                    "a DMC scenario takes no \"net\", \"strategies\" or \"grid\"".into(),
                ));
            }
            let d = f
                .dmc
                .ok_or_else(|| CliError::Input("a DMC scenario needs a \"dmc\" section".into()))?;
            Body::Dmc(Box::new(dmc_body(d, base)?))
        }
    };
    Ok(Scenario { body, output })
}

fn gaussian_body(
    model: GaussianModel,
    net: Option<GaussianNetwork>,
    strategies: Option<Vec<String>>,
    grid: Option<GridSpec>,
) -> Result<GaussianScenario> {
    let net = net.ok_or_else(|| CliError::Input("missing \"net\"".into()))?;
    net.validate()?;
    if !net.less_noisy_to_rx1() {
        return Err(CliError::Input(format!(
            "net violates the less-noisy assumption P1 + N1 <= N2 ({} + {} > {})",
            net.p1, net.n1, net.n2
        )));
    }
    let names = strategies.unwrap_or_else(|| default_strategies(model).iter().map(|s| s.to_string()).collect());
    if names.is_empty() {
        return Err(CliError::Input("\"strategies\" is empty".into()));
    }
    let mut out = Vec::with_capacity(names.len());
    for n in &names {
        let s = Strategy::in_model(model, n)
            .map_err(|_| CliError::Input(format!("unknown strategy {n:?} (expected df, nf, cf or baseline)")))?;
        if out.contains(&s) {
            return Err(CliError::Input(format!("strategy {n:?} listed twice")));
        }
        out.push(s);
    }
    let grid = grid.unwrap_or_default();
    grid.validate()?;
    Ok(GaussianScenario {
        model,
        net,
        strategies: out,
        grid,
    })
}

pub fn default_strategies(model: GaussianModel) -> &'static [&'static str] {
    match model {
        GaussianModel::B => &["df", "nf", "cf"],
        GaussianModel::C => &["baseline", "df", "nf", "cf"],
    }
}

fn dmc_body(d: DmcFile, base: &Path) -> Result<DmcScenario> {
    let channel = load_channel(&base.join(&d.channel))?;
    let coupling = match &d.coupling {
        Some(p) => {
            let c = load_coupling(&base.join(p))?;
            if c.theorem != d.theorem {
                return Err(CliError::Input(format!(
                    "coupling is declared for {} but the scenario selects {}",
                    c.theorem, d.theorem
                )));
            }
            Some(c)
        }
        None => None,
    };
    let objective = d.objective.unwrap_or([0.0, 1.0, 0.0]);
    if objective.iter().any(|c| !c.is_finite()) {
        return Err(CliError::Input("objective coefficients must be finite".into()));
    }
    if d.grid_steps == 0 {
        return Err(CliError::Input("grid_steps must be at least 1".into()));
    }
    Ok(DmcScenario {
        channel,
        coupling,
        theorem: d.theorem,
        rates: d.rates,
        objective,
        aux_sizes: d.aux_sizes,
        grid_steps: d.grid_steps,
        budget: d.budget.unwrap_or(DEFAULT_BUDGET),
    })
}

pub fn load_channel(path: &Path) -> Result<DmcModel> {
    let text = read(path)?;
    DmcModel::from_json_str(&text).map_err(|e| CliError::from(e).in_file(path))
}

pub fn load_coupling(path: &Path) -> Result<AuxiliaryCoupling> {
    let text = read(path)?;
    AuxiliaryCoupling::from_json_str(&text).map_err(|e| CliError::from(e).in_file(path))
}
