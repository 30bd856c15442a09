//! The eight acceptance criteria as runnable checks. Reference values come
//! from `rbc-oracles`; nothing here reuses the evaluators' own arithmetic
//! to judge them.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rbc_core::dmc::{
    theorem, AuxiliaryCoupling, DmcModel, EvalOptions, MessageModel, Quantizer, RateTuple, TheoremId, TheoremInstance,
};
use rbc_core::frontier::{
    max_r1_vs_alpha, pareto_filter, region_boundary, sweep_points, Frontier, GridSpec, RstarPolicy,
};
use rbc_core::gaussian::{
    b_baseline_norelay, b_cf, b_df, b_nf, c_cf, c_nf, GaussianNetwork, RatePair, Strategy, StrategyParams,
};
use rbc_core::info::{Axis, JointPmf};
use rbc_oracles::bounds::{literal, member, secrecy_member, Piece};
use rbc_oracles::constants as k;
use rbc_oracles::grid::grid_best;
use rbc_oracles::info::{relay_joint, Channel, NaiveJoint, Quantizer as OracleQuantizer, Terms};
use rbc_oracles::pareto::pareto_quadratic;
use rbc_oracles::random;

pub const TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone)]
pub struct Outcome {
    pub number: u8,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl Outcome {
    pub fn within_time(&self) -> bool {
        self.elapsed <= self.limit
    }

    pub fn ok(&self) -> bool {
        self.pass && self.within_time()
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {} {}: {} ({:.2} s of {} s) {}",
            self.number,
            if self.ok() { "PASS" } else { "FAIL" },
            self.title,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs(),
            self.detail
        )?;
        if self.pass && !self.within_time() {
            write!(f, " [over time limit]")?;
        }
        Ok(())
    }
}

struct Check {
    pass: bool,
    detail: String,
}

impl Check {
    fn new() -> Self {
        Self {
            pass: true,
            detail: String::new(),
        }
    }

    fn require(&mut self, ok: bool, what: impl fmt::Display) {
        if !self.detail.is_empty() {
            self.detail.push_str("; ");
        }
        self.detail.push_str(&what.to_string());
        if !ok {
            self.pass = false;
            self.detail.push_str(" [x]");
        }
    }

    fn near(&mut self, label: &str, got: f64, want: f64, tol: f64) {
        self.require(
            (got - want).abs() <= tol,
            format_args!("{label} {got:.6} (want {want:.6})"),
        );
    }
}

type Body = fn() -> Check;

const CRITERIA: [(u8, &str, u64, Body); 8] = [
    (1, "two-message curve endpoints", 5, c1),
    (2, "second confidential rate vanishes", 5, c2),
    (3, "decode-forward equals the no-relay baseline", 2, c3),
    (4, "compress-forward tends to noise-forward", 10, c4),
    (5, "common-message region endpoints", 5, c5),
    (6, "information measures match direct sums", 10, c6),
    (7, "secrecy slices and zero common rate", 60, c7),
    (8, "region structure", 60, c8),
];

pub fn count() -> usize {
    CRITERIA.len()
}

/// Runs criterion `n` (1-based).
pub fn run(n: u8) -> Option<Outcome> {
    let &(number, title, secs, body) = CRITERIA.iter().find(|c| c.0 == n)?;
    let start = Instant::now();
    let check = body();
    Some(Outcome {
        number,
        title,
        pass: check.pass,
        detail: check.detail,
        elapsed: start.elapsed(),
        limit: Duration::from_secs(secs),
    })
}

pub fn run_all() -> Vec<Outcome> {
    CRITERIA.iter().filter_map(|c| run(c.0)).collect()
}

fn net() -> GaussianNetwork {
    GaussianNetwork::new(5.0, 3.0, 2.0, 8.0, 2.0).expect("reference network is valid")
}

fn curve_max(s: Strategy) -> f64 {
    let c = max_r1_vs_alpha(s, &net(), 401, 401, 300.0, RstarPolicy::Max).expect("reference sweep");
    c.samples.iter().map(|x| x.best).fold(f64::NEG_INFINITY, f64::max)
}

fn c1() -> Check {
    let mut c = Check::new();
    let df = curve_max(Strategy::BDf);
    let nf = curve_max(Strategy::BNf);
    let cf = curve_max(Strategy::BCf);
    c.near("df", df, k::B_DF_R1, TOLERANCE);
    c.near("nf", nf, k::B_NF_R1, TOLERANCE);
    c.near("cf", cf, k::B_CF_R1, TOLERANCE);
    c.require(nf > cf && cf > df, "nf > cf > df");
    c
}

fn c2() -> Check {
    let mut c = Check::new();
    let grid = GridSpec::default();
    for s in [Strategy::BDf, Strategy::BNf, Strategy::BCf, Strategy::BBaseline] {
        let pts = sweep_points(s, &net(), &grid).expect("reference sweep");
        let nonzero = pts.iter().filter(|p| p.rates.second != 0.0).count();
        c.require(
            nonzero == 0,
            format_args!("{s}: {} points, {nonzero} with r2 != 0", pts.len()),
        );
    }
    c
}

fn c3() -> Check {
    let mut c = Check::new();
    let mut worst = 0.0f64;
    let n = 401;
    for i in 0..n {
        for j in 0..n {
            let sp = StrategyParams::new(i as f64 / (n - 1) as f64, j as f64 / (n - 1) as f64);
            let a = b_df(&net(), &sp).expect("valid point");
            let b = b_baseline_norelay(&net(), &sp).expect("valid point");
            worst = worst.max((a.first - b.first).abs()).max((a.second - b.second).abs());
        }
    }
    c.require(worst <= 1e-12, format_args!("max difference {worst:.3e} over {n}x{n}"));
    c
}

fn c4() -> Check {
    let mut c = Check::new();
    let qs: Vec<f64> = (2..=8).map(|e| 10f64.powi(e)).collect();
    let alphas: Vec<f64> = (0..=400).map(|i| i as f64 / 400.0).collect();
    let betas = [0.0, 0.25, 0.5, 0.75, 1.0];
    // sup over the alpha grid for each Q, per beta slice
    let mut b_gaps = vec![0.0f64; qs.len()];
    let mut monotone_b = true;
    for &beta in &betas {
        let mut prev = vec![f64::INFINITY; alphas.len()];
        for (qi, &q) in qs.iter().enumerate() {
            for (ai, &a) in alphas.iter().enumerate() {
                let sp = StrategyParams::new(a, beta);
                let cf = b_cf(&net(), &sp.with_cf(q, None)).expect("feasible Q");
                let nf = b_nf(&net(), &sp).expect("valid point");
                let gap = (cf.first - nf.first).abs().max((cf.second - nf.second).abs());
                b_gaps[qi] = b_gaps[qi].max(gap);
                monotone_b &= gap <= prev[ai] + 1e-12;
                prev[ai] = gap;
            }
        }
    }
    let mut c_gaps = vec![0.0f64; qs.len()];
    let mut monotone_c = true;
    let mut prev = vec![f64::INFINITY; alphas.len()];
    for (qi, &q) in qs.iter().enumerate() {
        for (ai, &a) in alphas.iter().enumerate() {
            let cf = c_cf(&net(), a, q, None).expect("feasible Q");
            let nf = c_nf(&net(), a).expect("valid point");
            let gap = (cf.first - nf.first).abs().max((cf.second - nf.second).abs());
            c_gaps[qi] = c_gaps[qi].max(gap);
            monotone_c &= gap <= prev[ai] + 1e-12;
            prev[ai] = gap;
        }
    }
    let last = qs.len() - 1;
    c.require(
        b_gaps[last] <= TOLERANCE,
        format_args!("two-message gap at Q=1e8 {:.3e}", b_gaps[last]),
    );
    c.require(monotone_b, "two-message gap nonincreasing in Q");
    c.require(
        c_gaps[last] <= TOLERANCE,
        format_args!("common-message gap at Q=1e8 {:.3e}", c_gaps[last]),
    );
    c.require(monotone_c, "common-message gap nonincreasing in Q");
    c
}

fn extremes(f: &Frontier) -> (f64, f64) {
    let r0 = f.points.iter().map(|p| p.rates.first).fold(0.0, f64::max);
    let r1 = f.points.iter().map(|p| p.rates.second).fold(0.0, f64::max);
    (r0, r1)
}

fn c5() -> Check {
    let mut c = Check::new();
    let grid = GridSpec::default();
    let region = |s| region_boundary(s, &net(), &grid).expect("reference sweep");
    let (base_r0, base_r1) = extremes(&region(Strategy::CBaseline));
    let (df_r0, _) = extremes(&region(Strategy::CDf));
    let (_, nf_r1) = extremes(&region(Strategy::CNf));
    let (_, cf_r1) = extremes(&region(Strategy::CCf));
    c.near("baseline max r0", base_r0, k::C_BASE_R0, TOLERANCE);
    c.near("baseline max r1", base_r1, k::B_DF_R1, TOLERANCE);
    c.near("df max r0", df_r0, k::C_DF_R0, TOLERANCE);
    c.near("nf max r1", nf_r1, k::B_NF_R1, TOLERANCE);
    c.require(df_r0 > base_r0, "df raises max r0");
    c.require(
        nf_r1 > base_r1 && cf_r1 > base_r1,
        format_args!("nf and cf raise max r1 (cf {cf_r1:.6})"),
    );
    c
}

fn c6() -> Check {
    let mut c = Check::new();
    let mut g = ChaCha8Rng::seed_from_u64(6);
    let names = ["A", "B", "C", "D"];
    let mut worst = 0.0f64;
    let mut worst_sym = 0.0f64;
    for _ in 0..1000 {
        let n = g.gen_range(2..=4);
        let sizes: Vec<usize> = (0..n).map(|_| g.gen_range(1..=3)).collect();
        let probs = random::joint(&mut g, &sizes, 0.2);
        let axes = (0..n).map(|i| Axis::new(names[i], sizes[i])).collect();
        let j = JointPmf::new(axes, probs.clone()).expect("random joint is valid");
        let naive = NaiveJoint::new(&names[..n], &sizes, probs);
        // A = first axis, B = second, C = a random subset of the rest.
        let a = [names[0]];
        let b = [names[1]];
        let cset: Vec<&str> = names[2..n].iter().copied().filter(|_| g.gen_bool(0.5)).collect();
        let got = j.cond_mutual_info(&a, &b, &cset).expect("labels exist");
        worst = worst.max((got - naive.cmi(&a, &b, &cset)).abs());
        worst_sym = worst_sym.max((got - j.cond_mutual_info(&b, &a, &cset).expect("labels exist")).abs());
    }
    c.require(worst <= 1e-12, format_args!("1000 joints, max deviation {worst:.2e}"));
    c.require(worst_sym <= 1e-10, format_args!("symmetry {worst_sym:.2e}"));
    let mut worst_chain = 0.0f64;
    for _ in 0..200 {
        let probs = random::joint(&mut g, &[2, 2, 2, 2], 0.1);
        let j = JointPmf::new(names.iter().map(|n| Axis::new(*n, 2)).collect(), probs).expect("valid");
        let i = |a: &[&str], b: &[&str], c: &[&str]| j.cond_mutual_info(a, b, c).expect("labels exist");
        let lhs = i(&["A", "B"], &["C"], &["D"]);
        let rhs = i(&["A"], &["C"], &["D"]) + i(&["B"], &["C"], &["A", "D"]);
        worst_chain = worst_chain.max((lhs - rhs).abs());
    }
    c.require(worst_chain <= 1e-10, format_args!("chain rule {worst_chain:.2e}"));
    c
}

/// A random binary channel and coupling for one theorem, with the oracle's
/// literal bound list attached.
struct Sample {
    model: DmcModel,
    coupling: AuxiliaryCoupling,
    pieces: Vec<Piece>,
}

fn sample(g: &mut ChaCha8Rng, id: TheoremId, constant: &[&str]) -> Sample {
    let t = theorem(id);
    let sizes = [2usize; 5];
    let channel = random::channel(g, sizes, 0.15);
    let names: Vec<&str> = t.variables.to_vec();
    let input_sizes: Vec<usize> = names
        .iter()
        .map(|n| match *n {
            "X" | "X1" => 2,
            v if constant.contains(&v) => 1,
            _ => g.gen_range(1..=2),
        })
        .collect();
    let mut input = random::factored(g, &names, &input_sizes, t.pattern, 0.15);
    let total: f64 = input.iter().sum();
    input.iter_mut().for_each(|p| *p /= total);
    let q = t.quantized.then(|| {
        let k = g.gen_range(1..=2);
        (k, random::quantizer(g, 2, 2, k))
    });
    let naive_in = NaiveJoint::new(&names, &input_sizes, input.clone());
    let ch = Channel { sizes, table: &channel };
    let oq = q.as_ref().map(|(k, tab)| OracleQuantizer {
        y1_size: 2,
        x1_size: 2,
        yhat1_size: *k,
        table: tab,
    });
    let full = relay_joint(&naive_in, &ch, oq.as_ref());
    let terms = Terms::new(&full);
    let pieces = literal(id.number(), &|s| terms.get(s), None);
    let axes = names.iter().zip(&input_sizes).map(|(n, s)| Axis::new(*n, *s)).collect();
    let joint = JointPmf::new(axes, input).expect("factored joint is valid");
    let quantizer = q.map(|(k, tab)| Quantizer::new(2, 2, k, tab).expect("random quantizer is valid"));
    Sample {
        model: DmcModel::new(sizes, channel).expect("random channel is valid"),
        coupling: AuxiliaryCoupling::new(id, joint, quantizer).expect("coupling matches its theorem"),
        pieces,
    }
}

fn tid(n: u8) -> TheoremId {
    TheoremId::new(n).expect("theorem number in range")
}

fn admissible(model: MessageModel, r: [f64; 5]) -> RateTuple {
    match model {
        MessageModel::TwoConfidentialCommon => RateTuple::new(r[0], r[1], r[2], r[3], r[4]),
        MessageModel::TwoConfidential => RateTuple::new(0.0, r[1], r[2], r[3], r[4]),
        MessageModel::OneConfidentialCommon => RateTuple::new(r[0], r[1], 0.0, r[3], 0.0),
    }
}

/// Rates scattered around the instance's sum-rate vertex, so that both
/// verdicts occur.
fn nearby(g: &mut ChaCha8Rng, v: &RateTuple, model: MessageModel, secret: bool) -> RateTuple {
    let base = if v.r0 + v.r1 + v.r2 > 1e-6 {
        [v.r0, v.r1, v.r2]
    } else {
        [0.02, 0.02, 0.02]
    };
    let mut f = || g.gen::<f64>() * 1.3;
    let r = [base[0] * f(), base[1] * f(), base[2] * f()];
    if secret {
        admissible(model, [r[0], r[1], r[2], r[1], r[2]])
    } else {
        let (e1, e2) = (r[1] * f().min(1.0), r[2] * f().min(1.0));
        admissible(model, [r[0], r[1], r[2], e1, e2])
    }
}

fn c7() -> Check {
    let mut c = Check::new();
    let mut g = ChaCha8Rng::seed_from_u64(7);
    let opts = EvalOptions::default();
    let (mut checked, mut mismatched, mut oracle_mismatched) = (0usize, 0usize, 0usize);
    for id in TheoremId::all() {
        let model = theorem(id).model;
        for _ in 0..200 {
            let s = sample(&mut g, id, &[]);
            let ti = TheoremInstance::new(id, &s.model, &s.coupling, &opts).expect("valid instance");
            let v = ti.extremes([1.0, 1.0, 1.0]).expect("finite objective").rates;
            let t = nearby(&mut g, &v, model, true);
            let full = ti.evaluate(&t).expect("admissible rates").member;
            let slice = ti.evaluate_corollary(t.rates()).expect("admissible rates").member;
            checked += 1;
            mismatched += usize::from(full != slice);
            oracle_mismatched += usize::from(slice != secrecy_member(&s.pieces, t.rates(), opts.tol));
        }
    }
    c.require(
        mismatched == 0,
        format_args!("slice vs full list: {mismatched} of {checked} disagree"),
    );
    c.require(
        oracle_mismatched == 0,
        format_args!("slice vs literal list: {oracle_mismatched} disagree"),
    );
    let (mut pairs, mut bad) = (0usize, 0usize);
    for (n, m) in [(5, 1), (6, 2), (7, 3), (8, 4)] {
        let (id, base) = (tid(n), tid(m));
        let constant: &[&str] = if n == 5 { &["U"] } else { &[] };
        for _ in 0..200 {
            let s = sample(&mut g, id, constant);
            let other = AuxiliaryCoupling::new(base, s.coupling.input.clone(), s.coupling.quantizer.clone())
                .expect("same variables");
            let a = TheoremInstance::new(id, &s.model, &s.coupling, &opts).expect("valid instance");
            let b = TheoremInstance::new(base, &s.model, &other, &opts).expect("valid instance");
            let v = a.extremes([1.0, 1.0, 1.0]).expect("finite objective").rates;
            for _ in 0..3 {
                let t = nearby(&mut g, &v, MessageModel::TwoConfidential, false);
                let ea = a.evaluate(&t).expect("admissible rates");
                let eb = b.evaluate(&t).expect("admissible rates");
                let same = ea.member == eb.member
                    && ea
                        .branches
                        .iter()
                        .zip(&eb.branches)
                        .all(|(x, y)| x.member == y.member && x.qualifies == y.qualifies);
                pairs += 1;
                bad += usize::from(!same);
            }
        }
    }
    c.require(bad == 0, format_args!("zero common rate: {bad} of {pairs} disagree"));
    c
}

fn c8() -> Check {
    let mut c = Check::new();
    let mut g = ChaCha8Rng::seed_from_u64(8);
    let opts = EvalOptions::default();
    let (mut closed, mut open) = (0usize, 0usize);
    let (mut literal_checked, mut literal_bad) = (0usize, 0usize);
    for id in TheoremId::all() {
        let model = theorem(id).model;
        for _ in 0..40 {
            let s = sample(&mut g, id, &[]);
            let ti = TheoremInstance::new(id, &s.model, &s.coupling, &opts).expect("valid instance");
            let v = ti.extremes([1.0, 1.0, 1.0]).expect("finite objective").rates;
            let t = nearby(&mut g, &v, model, false);
            let ev = ti.evaluate(&t).expect("admissible rates");
            literal_checked += 1;
            literal_bad += usize::from(ev.member != member(&s.pieces, t.as_array(), opts.tol));
            if !ev.member {
                continue;
            }
            for _ in 0..5 {
                let mut low = t.as_array();
                low.iter_mut().for_each(|x| *x *= g.gen::<f64>());
                low[3] = low[3].min(low[1]);
                low[4] = low[4].min(low[2]);
                let ok = ti.evaluate(&admissible(model, low)).expect("admissible rates").member;
                closed += usize::from(ok);
                open += usize::from(!ok);
            }
        }
    }
    c.require(
        open == 0 && closed > 0,
        format_args!("downward closure: {open} of {} shrunk members rejected", open + closed),
    );
    c.require(
        literal_bad == 0,
        format_args!("membership vs literal list: {literal_bad} of {literal_checked} disagree"),
    );

    let mut filter_ok = true;
    for _ in 0..20 {
        let mut pts: Vec<RatePair> = (0..500)
            .map(|_| RatePair {
                first: g.gen_range(0..100) as f64 / 50.0,
                second: g.gen_range(0..100) as f64 / 50.0,
            })
            .collect();
        let once = pareto_filter(&pts);
        let pairs: Vec<(f64, f64)> = pts.iter().map(|p| (p.first, p.second)).collect();
        let once_pairs: Vec<(f64, f64)> = once.iter().map(|p| (p.first, p.second)).collect();
        filter_ok &= once_pairs == pareto_quadratic(&pairs);
        filter_ok &= pareto_filter(&once) == once;
        pts.reverse();
        pts.rotate_left(137);
        filter_ok &= pareto_filter(&pts) == once;
    }
    c.require(filter_ok, "pareto filter idempotent, order-free, matches pairwise scan");

    let (mut scans, mut below, mut loose) = (0usize, 0usize, 0usize);
    let n = 50;
    for id in TheoremId::all() {
        let dims = theorem(id).model.rate_dims();
        let mut here = 0;
        for _ in 0..400 {
            if here == 2 {
                break;
            }
            let s = sample(&mut g, id, &[]);
            let ti = TheoremInstance::new(id, &s.model, &s.coupling, &opts).expect("valid instance");
            let mut upper = [0.0; 3];
            for &d in dims {
                let mut e = [0.0; 3];
                e[d] = 1.0;
                upper[d] = ti.extremes(e).expect("finite objective").objective.max(0.0) * 1.02;
            }
            let objective = [g.gen::<f64>(), g.gen::<f64>(), g.gen::<f64>()];
            let x = ti.extremes(objective).expect("finite objective");
            let Some((_, best)) = grid_best(dims, upper, n, objective, |r| secrecy_member(&s.pieces, r, 1e-12)) else {
                continue;
            };
            if best <= 0.0 {
                continue;
            }
            let cell: f64 = dims.iter().map(|&d| objective[d] * upper[d] / (n - 1) as f64).sum();
            below += usize::from(x.objective < best - 1e-12);
            loose += usize::from(x.objective - best > cell + 1e-9);
            here += 1;
            scans += 1;
        }
    }
    c.require(
        scans == 24 && below == 0 && loose == 0,
        format_args!("vertex vs 50-point grid: {scans} scans, {below} below, {loose} beyond one cell"),
    );
    c
}
