//! Subcommand bodies. Each returns the CSV table it would print so that
//! tests can inspect results without spawning a process.

use std::collections::BTreeMap;
use std::path::Path;

use rbc_core::dmc::{
    brute_force_best, mi_terms, AuxiliaryCoupling, BoundEvaluation, DmcModel, EvalOptions, RateTuple, SearchOptions,
    SearchResult, TheoremId, TheoremInstance,
};
use rbc_core::frontier::{convex_closure, max_r1_vs_alpha, region_boundary, sweep_frontier, Frontier};
use rbc_core::gaussian::{GaussianModel, GaussianNetwork, Strategy, StrategyParams};
use rbc_core::table::{format_number, frontier_table, pair_names, Table};

use crate::error::{CliError, Result};
use crate::scenario::GaussianScenario;

fn only_q(sc: &GaussianScenario) -> Result<f64> {
    match sc.grid.q_values.as_slice() {
        [q] => Ok(*q),
        qs => Err(CliError::Usage(format!(
            "a curve uses a single Q; the scenario lists {} values",
            qs.len()
        ))),
    }
}

/// Best `R1` against `alpha`, one column per strategy: `alpha,df_r1,...`.
pub fn curve(sc: &GaussianScenario) -> Result<Table> {
    let q = only_q(sc)?;
    let curves = sc
        .strategies
        .iter()
        .map(|&s| {
            max_r1_vs_alpha(
                s,
                &sc.net,
                sc.grid.alpha_steps,
                sc.grid.beta_steps,
                q,
                sc.grid.rstar_policy,
            )
        })
        .collect::<rbc_core::Result<Vec<_>>>()?;
    let mut header = vec!["alpha".to_string()];
    header.extend(sc.strategies.iter().map(|s| format!("{}_r1", s.short())));
    let mut t = Table::new(header);
    for i in 0..sc.grid.alpha_steps {
        let mut row = vec![format_number(curves[0].samples[i].alpha)];
        row.extend(curves.iter().map(|c| format_number(c.samples[i].best)));
        t.push(row);
    }
    Ok(t)
}

/// Per-strategy Pareto frontiers. Model C traces the `(R0, R1)` staircase;
/// model B reports the `(R1, R2)` frontier of the sweep.
pub fn region_frontiers(sc: &GaussianScenario, convex_hull: bool) -> Result<Vec<Frontier>> {
    sc.strategies
        .iter()
        .map(|&s| {
            let f = match sc.model {
                GaussianModel::C => region_boundary(s, &sc.net, &sc.grid)?,
                GaussianModel::B => sweep_frontier(s, &sc.net, &sc.grid)?,
            };
            Ok(if convex_hull { convex_closure(&f) } else { f })
        })
        .collect()
}

pub fn region(sc: &GaussianScenario, convex_hull: bool) -> Result<Table> {
    Ok(frontier_table(sc.model, &region_frontiers(sc, convex_hull)?))
}

/// One strategy at one parameter point.
pub fn gaussian_point(net: &GaussianNetwork, strategy: Strategy, sp: &StrategyParams) -> Result<Table> {
    let e = strategy.evaluate(net, sp)?;
    let (a, b) = pair_names(strategy.model());
    let mut t = Table::new(["strategy", "alpha", "beta", "q", "rstar", a, b, "active"]);
    let opt = |x: Option<f64>| x.map(format_number).unwrap_or_default();
    t.push(vec![
        strategy.id().into(),
        format_number(sp.alpha),
        format_number(sp.beta),
        opt(sp.q),
        opt(e.rstar),
        format_number(e.rates.first),
        format_number(e.rates.second),
        e.active,
    ]);
    Ok(t)
}

/// Membership verdict plus one row per branch condition and inequality.
/// `value` is the condition's left side or the inequality's bound; `slack`
/// is `lhs - rhs` or `bound - expression`.
pub fn dmc_eval(
    model: &DmcModel,
    coupling: &AuxiliaryCoupling,
    id: TheoremId,
    rates: &RateTuple,
    opts: &EvalOptions,
) -> Result<(Table, BoundEvaluation)> {
    let ev = TheoremInstance::new(id, model, coupling, opts)?.evaluate(rates)?;
    let mut t = Table::new([
        "theorem",
        "branch",
        "qualifies",
        "member",
        "kind",
        "name",
        "value",
        "slack",
    ]);
    for b in &ev.branches {
        let head = |kind: &str, name: &str, value: f64, slack: f64| {
            vec![
                id.to_string(),
                b.id.to_string(),
                b.qualifies.to_string(),
                b.member.to_string(),
                kind.to_string(),
                name.to_string(),
                format_number(value),
                format_number(slack),
            ]
        };
        for c in &b.conditions {
            t.push(head("condition", c.name, c.lhs, c.lhs - c.rhs));
        }
        for r in &b.records {
            t.push(head("inequality", r.name, r.bound, r.slack));
        }
    }
    Ok((t, ev))
}

pub fn dmc_terms(model: &DmcModel, coupling: &AuxiliaryCoupling, id: TheoremId) -> Result<Table> {
    let mut t = Table::new(["term", "value"]);
    for (k, v) in mi_terms(id, model, coupling)? {
        t.push(vec![k, format_number(v)]);
    }
    Ok(t)
}

pub fn dmc_search(
    model: &DmcModel,
    aux: &BTreeMap<String, usize>,
    grid_steps: usize,
    id: TheoremId,
    objective: [f64; 3],
    opts: &SearchOptions,
) -> Result<(Table, SearchResult)> {
    let res = brute_force_best(model, aux, grid_steps, id, objective, opts)?;
    let x = &res.best;
    let mut t = Table::new([
        "theorem",
        "objective",
        "r0",
        "r1",
        "r2",
        "branch",
        "empty_interior",
        "evaluated",
    ]);
    t.push(vec![
        id.to_string(),
        format_number(x.objective),
        format_number(x.rates.r0),
        format_number(x.rates.r1),
        format_number(x.rates.r2),
        x.branch.to_string(),
        x.empty_interior.to_string(),
        res.evaluated.to_string(),
    ]);
    Ok((t, res))
}

/// Writes `text` to `path`, or to standard output when `path` is `None` or `-`.
pub fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path.filter(|p| *p != Path::new("-")) {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.to_owned(),
            source,
        }),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                r => r,
            }
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            })
        }
    }
}
