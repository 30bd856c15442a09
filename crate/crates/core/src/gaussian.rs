//! Closed-form secrecy regions of the Gaussian relay broadcast channel.
//!
//! Model B carries two confidential messages (rates `(R1, R2)`), model C a
//! common message and one confidential message (rates `(R0, R1)`). Every
//! formula assumes the first receiver is less noisy, `P1 + N1 <= N2`.
//!
//! Power split: in model B a fraction `beta` of `P1` goes to the common
//! layer and `alpha` of the rest to `V1`; in model C `alpha` of `P1` goes to
//! the confidential layer.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// R* may exceed the computed maximum by this much before it is rejected.
pub const RSTAR_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussianNetwork {
    pub p1: f64,
    pub p2: f64,
    pub n1: f64,
    pub n2: f64,
    pub nr: f64,
}

impl GaussianNetwork {
    pub fn new(p1: f64, p2: f64, n1: f64, n2: f64, nr: f64) -> Result<Self> {
        let net = Self { p1, p2, n1, n2, nr };
        net.validate()?;
        Ok(net)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("P1", self.p1),
            ("P2", self.p2),
            ("N1", self.n1),
            ("N2", self.n2),
            ("Nr", self.nr),
        ] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::Validation(format!("{name} = {v} must be finite and > 0")));
            }
        }
        Ok(())
    }

    pub fn less_noisy_to_rx1(&self) -> bool {
        self.p1 + self.n1 <= self.n2
    }

    fn require_less_noisy(&self) -> Result<()> {
        self.validate()?;
        if self.less_noisy_to_rx1() {
            Ok(())
        } else {
            Err(Error::ModelAssumption(format!(
                "less-noisy ordering P1 + N1 <= N2 fails ({} + {} > {})",
                self.p1, self.n1, self.n2
            )))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrategyParams {
    pub alpha: f64,
    #[serde(default)]
    pub beta: f64,
    /// Compression noise variance (compress-forward only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    /// Pure-noise rate (compress-forward only); `None` means the maximum.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rstar: Option<f64>,
}

impl StrategyParams {
    pub fn new(alpha: f64, beta: f64) -> Self {
        Self {
            alpha,
            beta,
            q: None,
            rstar: None,
        }
    }

    pub fn with_cf(mut self, q: f64, rstar: Option<f64>) -> Self {
        self.q = Some(q);
        self.rstar = rstar;
        self
    }

    fn validate(&self) -> Result<()> {
        for (name, v) in [("alpha", self.alpha), ("beta", self.beta)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Validation(format!("{name} = {v} must lie in [0, 1]")));
            }
        }
        Ok(())
    }
}

/// `(R1, R2)` for model B, `(R0, R1)` for model C.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RatePair {
    pub first: f64,
    pub second: f64,
}

impl RatePair {
    fn clamped(first: f64, second: f64) -> Self {
        Self {
            first: first.max(0.0),
            second: second.max(0.0),
        }
    }
}

/// A strategy evaluation with the minimizing term of each `min{...}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Evaluation {
    pub rates: RatePair,
    /// Compress-forward R* actually used.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rstar: Option<f64>,
    /// `min` arguments that attained the minimum, e.g. `"r1=b1"`.
    pub active: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    BDf,
    BNf,
    BCf,
    BBaseline,
    CDf,
    CNf,
    CCf,
    CBaseline,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaussianModel {
    B,
    C,
}

impl Strategy {
    pub const ALL: [Strategy; 8] = [
        Strategy::BDf,
        Strategy::BNf,
        Strategy::BCf,
        Strategy::BBaseline,
        Strategy::CDf,
        Strategy::CNf,
        Strategy::CCf,
        Strategy::CBaseline,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Strategy::BDf => "b_df",
            Strategy::BNf => "b_nf",
            Strategy::BCf => "b_cf",
            Strategy::BBaseline => "b_baseline",
            Strategy::CDf => "c_df",
            Strategy::CNf => "c_nf",
            Strategy::CCf => "c_cf",
            Strategy::CBaseline => "c_baseline",
        }
    }

    /// Short relay-strategy name: `df`, `nf`, `cf` or `baseline`.
    pub fn short(self) -> &'static str {
        &self.id()[2..]
    }

    pub fn model(self) -> GaussianModel {
        match self {
            Strategy::BDf | Strategy::BNf | Strategy::BCf | Strategy::BBaseline => GaussianModel::B,
            _ => GaussianModel::C,
        }
    }

    pub fn is_cf(self) -> bool {
        matches!(self, Strategy::BCf | Strategy::CCf)
    }

    /// Whether `beta` enters the formulas.
    pub fn uses_beta(self) -> bool {
        self.model() == GaussianModel::B
    }

    pub fn in_model(model: GaussianModel, short: &str) -> Result<Self> {
        let prefix = match model {
            GaussianModel::B => "b_",
            GaussianModel::C => "c_",
        };
        format!("{prefix}{short}").parse()
    }

    pub fn evaluate(self, net: &GaussianNetwork, sp: &StrategyParams) -> Result<Evaluation> {
        net.require_less_noisy()?;
        sp.validate()?;
        match self {
            Strategy::BDf => Ok(plain(b_df_rates(net, sp))),
            Strategy::BBaseline => Ok(plain(b_baseline_rates(net, sp))),
            Strategy::BNf => Ok(b_nf_eval(net, sp)),
            Strategy::BCf => b_cf_eval(net, sp),
            Strategy::CDf => Ok(c_df_eval(net, sp.alpha)),
            Strategy::CNf => Ok(c_nf_eval(net, sp.alpha)),
            Strategy::CCf => c_cf_eval(net, sp),
            Strategy::CBaseline => Ok(c_baseline_eval(net, sp.alpha)),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Strategy::ALL
            .into_iter()
            .find(|x| x.id() == s)
            .ok_or_else(|| Error::Usage(format!("unknown strategy {s:?}")))
    }
}

fn hl(x: f64) -> f64 {
    0.5 * x.log2()
}

fn plain(rates: RatePair) -> Evaluation {
    Evaluation {
        rates,
        rstar: None,
        active: String::new(),
    }
}

/// Minimum of labelled values; the first label wins ties.
fn argmin<const N: usize>(items: [(&'static str, f64); N]) -> (&'static str, f64) {
    let mut best = items[0];
    for it in &items[1..] {
        if it.1 < best.1 {
            best = *it;
        }
    }
    best
}

fn b_df_rates(net: &GaussianNetwork, sp: &StrategyParams) -> RatePair {
    let s = (1.0 - sp.beta) * net.p1;
    let a = sp.alpha;
    let r1 = hl((s + net.n1) / (s * (1.0 - a) + net.n1)) - hl((s * a + net.n2) / net.n2);
    let r2 = hl((s + net.n2) / (s * a + net.n2)) - hl((s * (1.0 - a) + net.n1) / net.n1);
    RatePair::clamped(r1, r2)
}

/// The no-relay region, written through per-layer signal-to-noise ratios.
fn b_baseline_rates(net: &GaussianNetwork, sp: &StrategyParams) -> RatePair {
    let s = (1.0 - sp.beta) * net.p1;
    let v1 = sp.alpha * s;
    let v2 = (1.0 - sp.alpha) * s;
    let snr = |sig: f64, noise: f64| hl(1.0 + sig / noise);
    // each confidential layer is decoded with the other treated as noise
    let r1 = snr(v1, v2 + net.n1) - snr(v1, net.n2);
    let r2 = snr(v2, v1 + net.n2) - snr(v2, net.n1);
    RatePair::clamped(r1, r2)
}

fn b_nf_eval(net: &GaussianNetwork, sp: &StrategyParams) -> Evaluation {
    let GaussianNetwork { p1, p2, n1, n2, .. } = *net;
    let s = (1.0 - sp.beta) * p1;
    let a = sp.alpha;
    let secret = hl((s + n1) / (s * (1.0 - a) + n1));
    let b1 = argmin([
        ("a1", hl((p1 + n1) / (s + n1))),
        ("a2", hl((p1 + p2 + n2) / (s + p2 + n2))),
    ]);
    let b2 = argmin([("b1", hl((p2 + n2) / n2)), ("b2", hl((p1 + p2 + n1) / (p1 + n1)))]);
    let (label, r1) = argmin([
        (b1.0, b1.1 + secret),
        (b2.0, b2.1 + secret - hl((s * a + p2 + n2) / n2)),
    ]);
    let r2 = hl((s + p2 + n2) / (s * a + p2 + n2)) - hl(((1.0 - a) * s + n1) / n1);
    Evaluation {
        rates: RatePair::clamped(r1, r2),
        rstar: None,
        active: format!("r1={label}"),
    }
}

/// Compress-forward effective noise: `E = Nr + Q`, `g(p) = p(E + N1) + N1 E`.
struct Compression {
    e: f64,
    n1: f64,
}

impl Compression {
    fn g(&self, p: f64) -> f64 {
        p * (self.e + self.n1) + self.n1 * self.e
    }
}

/// Upper limit on the compress-forward pure-noise rate; negative when the
/// compression cost exceeds the relay rate. Not clamped.
pub fn cf_rstar_max(net: &GaussianNetwork, q: f64) -> Result<f64> {
    net.validate()?;
    if !q.is_finite() || q <= 0.0 {
        return Err(Error::Validation(format!("Q = {q} must be finite and > 0")));
    }
    let GaussianNetwork { p1, p2, n1, n2, nr } = *net;
    Ok(hl((p2 + n2) / n2).min(hl((p1 + p2 + n1) / (p1 + n1))) - hl((p1 + q + nr) / q))
}

fn resolve_rstar(net: &GaussianNetwork, sp: &StrategyParams) -> Result<(f64, f64)> {
    let q =
        sp.q.ok_or_else(|| Error::Usage("compress-forward needs a compression noise Q".into()))?;
    let max = cf_rstar_max(net, q)?;
    let rstar = sp.rstar.unwrap_or(max);
    if !rstar.is_finite() || rstar < 0.0 || rstar > max + RSTAR_SLACK {
        return Err(Error::RstarInfeasible { rstar, rstar_max: max });
    }
    Ok((q, rstar))
}

fn b_cf_eval(net: &GaussianNetwork, sp: &StrategyParams) -> Result<Evaluation> {
    let (q, rstar) = resolve_rstar(net, sp)?;
    let GaussianNetwork { p1, p2, n1, n2, nr } = *net;
    let c = Compression { e: nr + q, n1 };
    let s = (1.0 - sp.beta) * p1;
    let a = sp.alpha;
    let secret = hl(c.g(s) / c.g(s * (1.0 - a)));
    let b1 = argmin([("a1", hl(c.g(p1) / c.g(s))), ("a2", hl((p1 + p2 + n2) / (s + p2 + n2)))]);
    let (label, r1) = argmin([
        (b1.0, b1.1 + secret),
        ("b", rstar + secret - hl((s * a + p2 + n2) / n2)),
    ]);
    let r2 = hl((s + p2 + n2) / (s * a + p2 + n2)) - hl(((1.0 - a) * s + n1) / n1);
    Ok(Evaluation {
        rates: RatePair::clamped(r1, r2),
        rstar: Some(rstar),
        active: format!("r1={label}"),
    })
}

fn c_secret(net: &GaussianNetwork, alpha: f64) -> f64 {
    let v = alpha * net.p1;
    hl((v + net.n1) / net.n1) - hl((v + net.n2) / net.n2)
}

fn c_df_eval(net: &GaussianNetwork, alpha: f64) -> Evaluation {
    let GaussianNetwork { p1, p2, n1, n2, nr } = *net;
    let v = alpha * p1;
    let (label, r0) = argmin([
        ("1", hl((p1 + nr) / (v + nr))),
        ("2", hl((p1 + p2 + n1) / (v + n1))),
        ("3", hl((p1 + p2 + n2) / (v + n2))),
    ]);
    Evaluation {
        rates: RatePair::clamped(r0, c_secret(net, alpha)),
        rstar: None,
        active: format!("r0={label}"),
    }
}

fn c_nf_eval(net: &GaussianNetwork, alpha: f64) -> Evaluation {
    let GaussianNetwork { p1, p2, n1, n2, .. } = *net;
    let v = alpha * p1;
    let (l0, r0) = argmin([
        ("1", hl((p1 + n1) / (v + n1))),
        ("2", hl((p1 + p2 + n2) / (v + p2 + n2))),
    ]);
    let (l1, relay) = argmin([("1", hl((p2 + n2) / n2)), ("2", hl((p1 + p2 + n1) / (p1 + n1)))]);
    let r1 = relay + hl((v + n1) / n1) - hl((v + p2 + n2) / n2);
    Evaluation {
        rates: RatePair::clamped(r0, r1),
        rstar: None,
        active: format!("r0={l0};r1={l1}"),
    }
}

fn c_cf_eval(net: &GaussianNetwork, sp: &StrategyParams) -> Result<Evaluation> {
    let (q, rstar) = resolve_rstar(net, sp)?;
    let GaussianNetwork { p1, p2, n1, n2, nr } = *net;
    let c = Compression { e: nr + q, n1 };
    let v = sp.alpha * p1;
    let (l0, r0) = argmin([("1", hl(c.g(p1) / c.g(v))), ("2", hl((p1 + p2 + n2) / (v + p2 + n2)))]);
    let r1 = rstar + hl(c.g(v) / (n1 * c.e)) - hl((v + p2 + n2) / n2);
    Ok(Evaluation {
        rates: RatePair::clamped(r0, r1),
        rstar: Some(rstar),
        active: format!("r0={l0}"),
    })
}

fn c_baseline_eval(net: &GaussianNetwork, alpha: f64) -> Evaluation {
    let GaussianNetwork { p1, n1, n2, .. } = *net;
    let v = alpha * p1;
    let (l0, r0) = argmin([("1", hl((p1 + n1) / (v + n1))), ("2", hl((p1 + n2) / (v + n2)))]);
    Evaluation {
        rates: RatePair::clamped(r0, c_secret(net, alpha)),
        rstar: None,
        active: format!("r0={l0}"),
    }
}

pub fn b_df(net: &GaussianNetwork, sp: &StrategyParams) -> Result<RatePair> {
    Ok(Strategy::BDf.evaluate(net, sp)?.rates)
}

pub fn b_nf(net: &GaussianNetwork, sp: &StrategyParams) -> Result<RatePair> {
    Ok(Strategy::BNf.evaluate(net, sp)?.rates)
}

pub fn b_cf(net: &GaussianNetwork, sp: &StrategyParams) -> Result<RatePair> {
    Ok(Strategy::BCf.evaluate(net, sp)?.rates)
}

pub fn b_baseline_norelay(net: &GaussianNetwork, sp: &StrategyParams) -> Result<RatePair> {
    Ok(Strategy::BBaseline.evaluate(net, sp)?.rates)
}

pub fn c_df(net: &GaussianNetwork, alpha: f64) -> Result<RatePair> {
    Ok(Strategy::CDf.evaluate(net, &StrategyParams::new(alpha, 0.0))?.rates)
}

pub fn c_nf(net: &GaussianNetwork, alpha: f64) -> Result<RatePair> {
    Ok(Strategy::CNf.evaluate(net, &StrategyParams::new(alpha, 0.0))?.rates)
}

pub fn c_cf(net: &GaussianNetwork, alpha: f64, q: f64, rstar: Option<f64>) -> Result<RatePair> {
    Ok(Strategy::CCf
        .evaluate(net, &StrategyParams::new(alpha, 0.0).with_cf(q, rstar))?
        .rates)
}

pub fn c_baseline(net: &GaussianNetwork, alpha: f64) -> Result<RatePair> {
    Ok(Strategy::CBaseline
        .evaluate(net, &StrategyParams::new(alpha, 0.0))?
        .rates)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn net() -> GaussianNetwork {
        GaussianNetwork::new(5.0, 3.0, 2.0, 8.0, 2.0).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    const DF_R1: f64 = 0.553_457_601_958_256;
    const NF_R1: f64 = 0.633_393_270_347_450_7;
    const RSTAR_300: f64 = 0.213_077_731_881_499_4;
    const CF_R1: f64 = 0.620_159_387_6;

    #[test]
    fn model_b_endpoints() {
        let sp = StrategyParams::new(1.0, 0.0);
        let df = b_df(&net(), &sp).unwrap();
        close(df.first, DF_R1, 1e-12);
        assert_eq!(df.second, 0.0);
        let nf = Strategy::BNf.evaluate(&net(), &sp).unwrap();
        close(nf.rates.first, NF_R1, 1e-12);
        assert_eq!(nf.active, "r1=b1");
        let cf = b_cf(&net(), &sp.with_cf(300.0, None)).unwrap();
        close(cf.first, CF_R1, 1e-9);
        close(b_baseline_norelay(&net(), &sp).unwrap().first, df.first, 1e-12);
    }

    #[test]
    fn rstar_limit() {
        close(cf_rstar_max(&net(), 300.0).unwrap(), RSTAR_300, 1e-12);
        close(cf_rstar_max(&net(), 1e12).unwrap(), 0.229_715_809_313_599_2, 1e-11);
        assert!(cf_rstar_max(&net(), 0.5).unwrap() < 0.0);
        assert!(cf_rstar_max(&net(), 0.0).is_err());
    }

    #[test]
    fn rstar_range_is_enforced() {
        let sp = StrategyParams::new(1.0, 0.0);
        let over = sp.with_cf(300.0, Some(RSTAR_300 + 1e-6));
        assert!(matches!(b_cf(&net(), &over), Err(Error::RstarInfeasible { .. })));
        let under = sp.with_cf(300.0, Some(-0.1));
        assert!(matches!(b_cf(&net(), &under), Err(Error::RstarInfeasible { .. })));
        let small_q = sp.with_cf(0.5, None);
        assert!(matches!(
            c_cf(&net(), 1.0, 0.5, None),
            Err(Error::RstarInfeasible { .. })
        ));
        assert!(matches!(b_cf(&net(), &small_q), Err(Error::RstarInfeasible { .. })));
        assert!(matches!(b_cf(&net(), &sp), Err(Error::Usage(_))));
        assert!(b_cf(&net(), &sp.with_cf(300.0, Some(0.0))).is_ok());
    }

    #[test]
    fn model_c_endpoints() {
        let c0 = c_df(&net(), 0.0).unwrap();
        close(c0.first, 0.5, 1e-12);
        assert_eq!(c0.second, 0.0);
        assert_eq!(c_df(&net(), 1.0).unwrap().first, 0.0);
        close(c_df(&net(), 1.0).unwrap().second, DF_R1, 1e-12);
        let nf = c_nf(&net(), 1.0).unwrap();
        assert_eq!(nf.first, 0.0);
        close(nf.second, NF_R1, 1e-12);
        assert_eq!(c_nf(&net(), 0.0).unwrap().second, 0.0);
        close(c_cf(&net(), 1.0, 300.0, None).unwrap().second, CF_R1, 1e-9);
        close(c_baseline(&net(), 0.0).unwrap().first, 0.350_219_859_070_546_1, 1e-12);
        close(c_baseline(&net(), 1.0).unwrap().second, DF_R1, 1e-12);
        assert_eq!(c_baseline(&net(), 1.0).unwrap().first, 0.0);
    }

    #[test]
    fn assumptions_are_enforced() {
        let bad = GaussianNetwork::new(5.0, 3.0, 2.0, 3.0, 2.0).unwrap();
        assert!(!bad.less_noisy_to_rx1());
        for s in Strategy::ALL {
            let sp = StrategyParams::new(0.5, 0.5).with_cf(300.0, None);
            assert!(matches!(s.evaluate(&bad, &sp), Err(Error::ModelAssumption(_))), "{s}");
            assert!(s.evaluate(&net(), &StrategyParams::new(1.5, 0.0)).is_err());
        }
        assert!(GaussianNetwork::new(0.0, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(GaussianNetwork::new(1.0, f64::NAN, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn strategy_ids_round_trip() {
        for s in Strategy::ALL {
            assert_eq!(s.id().parse::<Strategy>().unwrap(), s);
            assert_eq!(Strategy::in_model(s.model(), s.short()).unwrap(), s);
        }
        assert!("b_xx".parse::<Strategy>().is_err());
    }

    #[test]
    fn second_rate_vanishes_on_model_b() {
        for i in 0..=20 {
            for j in 0..=20 {
                let sp = StrategyParams::new(i as f64 / 20.0, j as f64 / 20.0).with_cf(300.0, None);
                for s in [Strategy::BDf, Strategy::BNf, Strategy::BCf, Strategy::BBaseline] {
                    assert_eq!(s.evaluate(&net(), &sp).unwrap().rates.second, 0.0);
                }
            }
        }
    }
}
