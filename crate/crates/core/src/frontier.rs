//! Grid sweeps over strategy parameters and Pareto frontiers of the
//! resulting rate pairs.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::gaussian::{cf_rstar_max, GaussianModel, GaussianNetwork, RatePair, Strategy, StrategyParams};
use crate::{Error, Result};

pub const DEFAULT_STEPS: usize = 401;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RstarPolicy {
    /// R* set to its admissible maximum for each Q.
    Max,
    /// `k` evenly spaced values on `[0, max]`.
    Grid(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    #[serde(default = "default_steps")]
    pub alpha_steps: usize,
    #[serde(default = "default_steps")]
    pub beta_steps: usize,
    #[serde(default = "default_q")]
    pub q_values: Vec<f64>,
    #[serde(default = "default_policy")]
    pub rstar_policy: RstarPolicy,
}

fn default_steps() -> usize {
    DEFAULT_STEPS
}

fn default_q() -> Vec<f64> {
    vec![300.0]
}

fn default_policy() -> RstarPolicy {
    RstarPolicy::Max
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            alpha_steps: DEFAULT_STEPS,
            beta_steps: DEFAULT_STEPS,
            q_values: default_q(),
            rstar_policy: RstarPolicy::Max,
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if self.alpha_steps < 2 || self.beta_steps < 2 {
            return Err(Error::Validation(format!(
                "grid steps must be >= 2 (alpha_steps = {}, beta_steps = {})",
                self.alpha_steps, self.beta_steps
            )));
        }
        if let Some(q) = self.q_values.iter().find(|q| !q.is_finite() || **q <= 0.0) {
            return Err(Error::Validation(format!("q_values entry {q} must be finite and > 0")));
        }
        if let RstarPolicy::Grid(k) = self.rstar_policy {
            if k < 2 {
                return Err(Error::Validation(format!("rstar grid needs >= 2 points, got {k}")));
            }
        }
        Ok(())
    }
}

/// Inclusive grid `0, 1/(k-1), ..., 1`.
pub fn unit_grid(k: usize) -> Vec<f64> {
    if k <= 1 {
        return vec![0.0];
    }
    (0..k).map(|i| i as f64 / (k - 1) as f64).collect()
}

/// Parameters that produced a rate pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub alpha: f64,
    pub beta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rstar: Option<f64>,
    /// Active `min` arguments, see [`crate::gaussian::Evaluation::active`].
    #[serde(default)]
    pub active: String,
}

impl Provenance {
    fn key(&self) -> [f64; 4] {
        [
            self.alpha,
            self.beta,
            self.q.unwrap_or(f64::NEG_INFINITY),
            self.rstar.unwrap_or(f64::NEG_INFINITY),
        ]
    }

    /// Lexicographic order on `(alpha, beta, q, rstar)`.
    pub fn cmp_key(&self, other: &Self) -> Ordering {
        for (a, b) in self.key().iter().zip(other.key()) {
            match a.total_cmp(&b) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontierPoint {
    pub rates: RatePair,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Frontier {
    pub strategy: Strategy,
    pub net: GaussianNetwork,
    /// Pareto-maximal, sorted by first coordinate ascending.
    pub points: Vec<FrontierPoint>,
}

impl Frontier {
    pub fn max_first(&self) -> Option<&FrontierPoint> {
        self.points.last()
    }

    pub fn max_second(&self) -> Option<&FrontierPoint> {
        self.points.first()
    }

    pub fn rate_pairs(&self) -> Vec<RatePair> {
        self.points.iter().map(|p| p.rates).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub alpha: f64,
    pub best: f64,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Curve {
    pub strategy: Strategy,
    pub samples: Vec<CurveSample>,
}

impl Curve {
    pub fn at(&self, alpha: f64) -> Option<&CurveSample> {
        self.samples.iter().find(|s| s.alpha == alpha)
    }
}

/// Pareto-maximal subset of `(rates, tag)` pairs, sorted by first coordinate
/// ascending. Exactly equal rate pairs keep the tag that is smallest under
/// `tag_order`.
pub fn pareto_filter_by<T>(
    mut points: Vec<(RatePair, T)>,
    tag_order: impl Fn(&T, &T) -> Ordering,
) -> Vec<(RatePair, T)> {
    points.sort_by(|(a, ta), (b, tb)| {
        b.first
            .total_cmp(&a.first)
            .then(b.second.total_cmp(&a.second))
            .then_with(|| tag_order(ta, tb))
    });
    let mut best = f64::NEG_INFINITY;
    let mut out = Vec::new();
    for (r, t) in points {
        if r.second > best {
            best = r.second;
            out.push((r, t));
        }
    }
    out.reverse();
    out
}

/// Pareto-maximal subset of bare rate pairs.
pub fn pareto_filter(points: &[RatePair]) -> Vec<RatePair> {
    pareto_filter_by(points.iter().map(|&p| (p, ())).collect(), |_, _| Ordering::Equal)
        .into_iter()
        .map(|(p, _)| p)
        .collect()
}

/// Area dominated by a staircase of pairs, measured from the origin.
pub fn hypervolume(points: &[RatePair]) -> f64 {
    let front = pareto_filter(points);
    let mut area = 0.0;
    let mut prev = 0.0;
    for p in front {
        area += (p.first - prev) * p.second;
        prev = p.first;
    }
    area
}

/// Frontier points on the upper concave envelope of the region, i.e. the
/// vertices of its time-sharing closure.
pub fn convex_closure(f: &Frontier) -> Frontier {
    let pts = &f.points;
    if pts.len() <= 1 {
        return f.clone();
    }
    let ymax = pts[0].rates.second;
    let xmax = pts[pts.len() - 1].rates.first;
    // Anchors on the axes close the region; index None marks them.
    let mut chain: Vec<(f64, f64, Option<usize>)> = Vec::with_capacity(pts.len() + 2);
    if pts[0].rates.first > 0.0 {
        chain.push((0.0, ymax, None));
    }
    chain.extend(
        pts.iter()
            .enumerate()
            .map(|(i, p)| (p.rates.first, p.rates.second, Some(i))),
    );
    if pts[pts.len() - 1].rates.second > 0.0 {
        chain.push((xmax, 0.0, None));
    }
    let mut hull: Vec<(f64, f64, Option<usize>)> = Vec::new();
    for p in chain {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    Frontier {
        strategy: f.strategy,
        net: f.net,
        points: hull
            .into_iter()
            .filter_map(|(_, _, i)| i.map(|i| pts[i].clone()))
            .collect(),
    }
}

fn rstar_values(net: &GaussianNetwork, q: f64, policy: RstarPolicy) -> Result<Vec<Option<f64>>> {
    match policy {
        RstarPolicy::Max => Ok(vec![None]),
        RstarPolicy::Grid(k) => {
            let max = cf_rstar_max(net, q)?;
            if max < 0.0 {
                return Err(Error::RstarInfeasible {
                    rstar: 0.0,
                    rstar_max: max,
                });
            }
            Ok(unit_grid(k).into_iter().map(|t| Some(t * max)).collect())
        }
    }
}

/// Every parameter combination a sweep with `grid` visits, in lexicographic order.
pub fn parameter_grid(strategy: Strategy, net: &GaussianNetwork, grid: &GridSpec) -> Result<Vec<StrategyParams>> {
    grid.validate()?;
    let alphas = unit_grid(grid.alpha_steps);
    let betas = if strategy.uses_beta() {
        unit_grid(grid.beta_steps)
    } else {
        vec![0.0]
    };
    let mut cf = Vec::new();
    if strategy.is_cf() {
        if grid.q_values.is_empty() {
            return Err(Error::Validation("compress-forward sweep needs at least one Q".into()));
        }
        for &q in &grid.q_values {
            for r in rstar_values(net, q, grid.rstar_policy)? {
                cf.push((Some(q), r));
            }
        }
    } else {
        cf.push((None, None));
    }
    let mut out = Vec::with_capacity(alphas.len() * betas.len() * cf.len());
    for &a in &alphas {
        for &b in &betas {
            for &(q, rstar) in &cf {
                out.push(StrategyParams {
                    alpha: a,
                    beta: b,
                    q,
                    rstar,
                });
            }
        }
    }
    Ok(out)
}

fn evaluate_grid(strategy: Strategy, net: &GaussianNetwork, params: &[StrategyParams]) -> Result<Vec<FrontierPoint>> {
    params
        .par_iter()
        .map(|sp| {
            let e = strategy.evaluate(net, sp)?;
            Ok(FrontierPoint {
                rates: e.rates,
                provenance: Provenance {
                    alpha: sp.alpha,
                    beta: sp.beta,
                    q: sp.q,
                    rstar: e.rstar,
                    active: e.active,
                },
            })
        })
        .collect()
}

/// Evaluates `strategy` over the grid and keeps the Pareto frontier.
pub fn sweep_frontier(strategy: Strategy, net: &GaussianNetwork, grid: &GridSpec) -> Result<Frontier> {
    let params = parameter_grid(strategy, net, grid)?;
    let pts = evaluate_grid(strategy, net, &params)?;
    Ok(frontier_of(strategy, net, pts))
}

/// All grid evaluations, unfiltered.
pub fn sweep_points(strategy: Strategy, net: &GaussianNetwork, grid: &GridSpec) -> Result<Vec<FrontierPoint>> {
    evaluate_grid(strategy, net, &parameter_grid(strategy, net, grid)?)
}

pub fn frontier_of(strategy: Strategy, net: &GaussianNetwork, pts: Vec<FrontierPoint>) -> Frontier {
    let tagged = pts.into_iter().map(|p| (p.rates, p.provenance)).collect();
    Frontier {
        strategy,
        net: *net,
        points: pareto_filter_by(tagged, Provenance::cmp_key)
            .into_iter()
            .map(|(rates, provenance)| FrontierPoint { rates, provenance })
            .collect(),
    }
}

/// Staircase frontier of the `(R0, R1)` corners for a common-message strategy.
pub fn region_boundary(strategy: Strategy, net: &GaussianNetwork, grid: &GridSpec) -> Result<Frontier> {
    if strategy.model() != GaussianModel::C {
        return Err(Error::Usage(format!(
            "region boundaries are traced for the common-message model; {strategy} is not one"
        )));
    }
    sweep_frontier(strategy, net, grid)
}

/// For each alpha on the grid, the largest confidential rate `R1` over the
/// remaining parameters.
pub fn max_r1_vs_alpha(
    strategy: Strategy,
    net: &GaussianNetwork,
    alpha_steps: usize,
    beta_steps: usize,
    q: f64,
    rstar_policy: RstarPolicy,
) -> Result<Curve> {
    let grid = GridSpec {
        alpha_steps,
        beta_steps,
        q_values: vec![q],
        rstar_policy,
    };
    let params = parameter_grid(strategy, net, &grid)?;
    let pts = evaluate_grid(strategy, net, &params)?;
    let r1 = |p: &FrontierPoint| match strategy.model() {
        GaussianModel::B => p.rates.first,
        GaussianModel::C => p.rates.second,
    };
    let per_alpha = pts.len() / alpha_steps;
    let samples = pts
        .chunks(per_alpha)
        .map(|chunk| {
            let mut best = &chunk[0];
            for p in &chunk[1..] {
                if r1(p) > r1(best) {
                    best = p;
                }
            }
            CurveSample {
                alpha: best.provenance.alpha,
                best: r1(best),
                provenance: best.provenance.clone(),
            }
        })
        .collect();
    Ok(Curve { strategy, samples })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(a: f64, b: f64) -> RatePair {
        RatePair { first: a, second: b }
    }

    fn net() -> GaussianNetwork {
        GaussianNetwork::new(5.0, 3.0, 2.0, 8.0, 2.0).unwrap()
    }

    #[test]
    fn filter_removes_dominated() {
        let f = pareto_filter(&[rp(1., 0.), rp(0., 1.), rp(0.5, 0.5), rp(0.4, 0.4)]);
        assert_eq!(f, vec![rp(0., 1.), rp(0.5, 0.5), rp(1., 0.)]);
        assert_eq!(pareto_filter(&[rp(0.3, 0.2)]), vec![rp(0.3, 0.2)]);
        assert!(pareto_filter(&[]).is_empty());
        assert_eq!(pareto_filter(&[rp(1., 1.), rp(1., 1.), rp(1., 0.5)]), vec![rp(1., 1.)]);
    }

    #[test]
    fn ties_keep_smallest_tag() {
        let kept = pareto_filter_by(vec![(rp(1., 1.), 3), (rp(1., 1.), 1), (rp(1., 1.), 2)], |a, b| a.cmp(b));
        assert_eq!(kept, vec![(rp(1., 1.), 1)]);
    }

    #[test]
    fn hypervolume_of_staircase() {
        let h = hypervolume(&[rp(1., 0.), rp(0., 1.), rp(0.5, 0.5)]);
        assert!((h - 0.25).abs() < 1e-15);
        assert!((hypervolume(&[rp(2., 1.), rp(1., 2.), rp(0.5, 0.5)]) - 3.0).abs() < 1e-15);
        assert_eq!(hypervolume(&[]), 0.0);
    }

    #[test]
    fn hull_drops_concave_corners() {
        let mk = |a: f64, b: f64| FrontierPoint {
            rates: rp(a, b),
            provenance: Provenance {
                alpha: a,
                beta: 0.0,
                q: None,
                rstar: None,
                active: String::new(),
            },
        };
        let f = Frontier {
            strategy: Strategy::CDf,
            net: net(),
            points: vec![mk(0.0, 1.0), mk(0.4, 0.4), mk(0.5, 0.45), mk(1.0, 0.0)],
        };
        let h = convex_closure(&f);
        let xs: Vec<f64> = h.points.iter().map(|p| p.rates.first).collect();
        assert_eq!(xs, [0.0, 1.0]);
        let f = Frontier {
            points: vec![mk(0.0, 1.0), mk(0.8, 0.8), mk(1.0, 0.0)],
            ..f
        };
        assert_eq!(convex_closure(&f).points.len(), 3);
    }

    #[test]
    fn grid_validation() {
        let mut g = GridSpec::default();
        assert!(g.validate().is_ok());
        g.alpha_steps = 1;
        assert!(g.validate().is_err());
        let g = GridSpec {
            q_values: vec![-1.0],
            ..Default::default()
        };
        assert!(g.validate().is_err());
        let g = GridSpec {
            rstar_policy: RstarPolicy::Grid(1),
            ..Default::default()
        };
        assert!(g.validate().is_err());
    }

    #[test]
    fn policy_serde() {
        assert!(serde_json::from_str::<GridSpec>(r#"{"alpha_stepz":1}"#).is_err());
        let g: GridSpec = serde_json::from_str(r#"{"rstar_policy":{"grid":5}}"#).unwrap();
        assert_eq!(g.rstar_policy, RstarPolicy::Grid(5));
        let g: GridSpec = serde_json::from_str(r#"{"rstar_policy":"max","alpha_steps":3}"#).unwrap();
        assert_eq!(g.alpha_steps, 3);
        assert_eq!(g.rstar_policy, RstarPolicy::Max);
    }

    #[test]
    fn curve_endpoints_small_grid() {
        let df = max_r1_vs_alpha(Strategy::BDf, &net(), 11, 11, 300.0, RstarPolicy::Max).unwrap();
        assert_eq!(df.samples.len(), 11);
        assert!((df.at(1.0).unwrap().best - 0.553_457_601_958_256).abs() < 1e-12);
        assert_eq!(df.at(1.0).unwrap().provenance.beta, 0.0);
        assert_eq!(df.at(0.0).unwrap().best, 0.0);
        let c = max_r1_vs_alpha(Strategy::CNf, &net(), 5, 5, 300.0, RstarPolicy::Max).unwrap();
        assert!((c.at(1.0).unwrap().best - 0.633_393_270_347_450_7).abs() < 1e-12);
    }

    #[test]
    fn rstar_grid_covers_range() {
        let g = GridSpec {
            alpha_steps: 2,
            beta_steps: 2,
            q_values: vec![300.0],
            rstar_policy: RstarPolicy::Grid(3),
        };
        let p = parameter_grid(Strategy::BCf, &net(), &g).unwrap();
        assert_eq!(p.len(), 2 * 2 * 3);
        assert_eq!(p[0].rstar, Some(0.0));
        let bad = GridSpec {
            q_values: vec![0.5],
            ..g
        };
        assert!(matches!(
            parameter_grid(Strategy::BCf, &net(), &bad),
            Err(Error::RstarInfeasible { .. })
        ));
        assert!(region_boundary(Strategy::BNf, &net(), &GridSpec::default()).is_err());
    }
}
