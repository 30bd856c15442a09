//! Inequality systems of the twelve single-letter bounds and their secrecy
//! (equivocation = rate) slices.
//!
//! Every bound is a plain function of a [`Terms`] source so the same table
//! serves three purposes: listing the information terms a theorem needs,
//! instantiating bounds for one coupling, and reporting.
//!
//! Rate coefficient vectors are ordered `[R0, R1, R2, Re1, Re2]`. For the
//! one-confidential-message model the equivocation `Re` occupies the `Re1`
//! slot.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Source of information values for bound expressions.
pub trait Terms {
    /// Value of `I(A;B|C)` written as `"A;B|C"` with comma-separated lists.
    fn i(&self, term: &str) -> f64;

    /// The compress-forward pure-noise rate `R*` in effect.
    fn rstar(&self) -> f64;

    fn min_of(&self, terms: &[&str]) -> f64 {
        terms.iter().map(|t| self.i(t)).fold(f64::INFINITY, f64::min)
    }
}

pub type BoundFn = fn(&dyn Terms) -> f64;

/// Identifier of one of the twelve bounds (`T1` … `T12`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct TheoremId(u8);

impl TheoremId {
    pub fn new(n: u8) -> Result<Self> {
        if (1..=12).contains(&n) {
            Ok(Self(n))
        } else {
            Err(Error::Usage(format!("no theorem numbered {n} (expected 1..=12)")))
        }
    }

    pub fn number(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = TheoremId> {
        (1..=12).map(TheoremId)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}", self.0)
    }
}

impl std::str::FromStr for TheoremId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let digits = s.trim().trim_start_matches(['T', 't']);
        let n: u8 = digits
            .parse()
            .map_err(|_| Error::Usage(format!("cannot parse theorem id {s:?}")))?;
        Self::new(n)
    }
}

impl TryFrom<String> for TheoremId {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<TheoremId> for String {
    fn from(t: TheoremId) -> String {
        t.to_string()
    }
}

/// Which message set a bound is stated for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MessageModel {
    /// Common message plus two confidential messages (T1–T4).
    TwoConfidentialCommon,
    /// Two confidential messages, no common message (T5–T8).
    TwoConfidential,
    /// Common message plus one confidential message (T9–T12).
    OneConfidentialCommon,
}

impl MessageModel {
    /// Positions in `[R0, R1, R2]` that are free rate coordinates.
    pub fn rate_dims(self) -> &'static [usize] {
        match self {
            MessageModel::TwoConfidentialCommon => &[0, 1, 2],
            MessageModel::TwoConfidential => &[1, 2],
            MessageModel::OneConfidentialCommon => &[0, 1],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrategyKind {
    OuterBound,
    DecodeForward,
    NoiseForward,
    CompressForward,
}

pub struct Inequality {
    pub name: &'static str,
    pub lhs: [f64; 5],
    pub bound: BoundFn,
    /// Equivocation cap (or its secrecy-slice image); may be floored at 0.
    pub equivocation: bool,
}

pub struct Condition {
    pub name: &'static str,
    pub lhs: BoundFn,
    pub rhs: BoundFn,
}

pub struct Branch {
    /// Stable identifier, `"n/a"` for unbranched bounds.
    pub id: &'static str,
    pub conditions: Vec<Condition>,
    /// Relay rate `R*_r` available for pure noise, for compress-forward branches.
    pub relay_rate: Option<BoundFn>,
    pub inequalities: Vec<Inequality>,
    pub corollary: Vec<Inequality>,
}

pub struct Theorem {
    pub id: TheoremId,
    pub model: MessageModel,
    pub strategy: StrategyKind,
    /// Axes of the coupling (auxiliaries and channel inputs).
    pub variables: &'static [&'static str],
    /// Product form of the coupling, in generative order.
    pub pattern: &'static [(&'static [&'static str], &'static [&'static str])],
    /// Whether the coupling carries a quantizer `p(yhat1 | y1, x1)`.
    pub quantized: bool,
    pub branches: Vec<Branch>,
}

impl Theorem {
    pub fn is_branched(&self) -> bool {
        self.branches.len() > 1
    }

    /// Every distinct information term used by any bound, condition or
    /// relay rate of this theorem, sorted.
    pub fn term_specs(&self) -> Vec<&'static str> {
        let rec = Recorder::default();
        for b in &self.branches {
            for c in &b.conditions {
                (c.lhs)(&rec);
                (c.rhs)(&rec);
            }
            if let Some(r) = b.relay_rate {
                r(&rec);
            }
            for q in b.inequalities.iter().chain(&b.corollary) {
                (q.bound)(&rec);
            }
        }
        if self.quantized {
            rec.i(QUANTIZER_COST);
        }
        let mut v = rec.seen.into_inner();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Rate the relay spends describing its quantized observation.
pub const QUANTIZER_COST: &str = "Y1;Yhat1|X1";

#[derive(Default)]
struct Recorder {
    seen: std::cell::RefCell<Vec<&'static str>>,
}

impl Terms for Recorder {
    fn i(&self, term: &str) -> f64 {
        // Only static strings from this module are ever recorded.
        let s: &'static str = STATIC_TERMS
            .iter()
            .copied()
            .find(|t| *t == term)
            .unwrap_or_else(|| panic!("term {term} missing from STATIC_TERMS"));
        self.seen.borrow_mut().push(s);
        0.0
    }
    fn rstar(&self) -> f64 {
        0.0
    }
}

pub fn theorem(id: TheoremId) -> &'static Theorem {
    &catalog()[(id.0 - 1) as usize]
}

fn catalog() -> &'static [Theorem] {
    static CATALOG: OnceLock<Vec<Theorem>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

const R0: [f64; 5] = [1., 0., 0., 0., 0.];
const R1: [f64; 5] = [0., 1., 0., 0., 0.];
const R2: [f64; 5] = [0., 0., 1., 0., 0.];
const R01: [f64; 5] = [1., 1., 0., 0., 0.];
const R02: [f64; 5] = [1., 0., 1., 0., 0.];
const R12: [f64; 5] = [0., 1., 1., 0., 0.];
const R012: [f64; 5] = [1., 1., 1., 0., 0.];
const RE1: [f64; 5] = [0., 0., 0., 1., 0.];
const RE2: [f64; 5] = [0., 0., 0., 0., 1.];

fn rate(name: &'static str, lhs: [f64; 5], bound: BoundFn) -> Inequality {
    Inequality {
        name,
        lhs,
        bound,
        equivocation: false,
    }
}

fn equiv(name: &'static str, lhs: [f64; 5], bound: BoundFn) -> Inequality {
    Inequality {
        name,
        lhs,
        bound,
        equivocation: true,
    }
}

fn cond(name: &'static str, lhs: BoundFn, rhs: BoundFn) -> Condition {
    Condition { name, lhs, rhs }
}

fn single(inequalities: Vec<Inequality>, corollary: Vec<Inequality>) -> Vec<Branch> {
    vec![Branch {
        id: "n/a",
        conditions: Vec::new(),
        relay_rate: None,
        inequalities,
        corollary,
    }]
}

fn zero(_: &dyn Terms) -> f64 {
    0.0
}

fn rstar(t: &dyn Terms) -> f64 {
    t.rstar()
}

fn quantizer_cost(t: &dyn Terms) -> f64 {
    t.i(QUANTIZER_COST)
}

// Every term string used below; the recorder maps borrowed names back to these.
const STATIC_TERMS: &[&str] = &[
    "U,U1;Y",
    "U;Y,Y1|U1",
    "U,U2;Z",
    "U;Z,Y1|U2",
    "U,U1,V1;Y",
    "U,V1;Y,Y1|U1",
    "U,U2,V2;Z",
    "U,V2;Z,Y1|U2",
    "U,U2,V1;Y,Y1|U1",
    "V2;Z,Y1|U,U1,U2,V1",
    "U,U1,V2;Z,Y1|U2",
    "V1;Y,Y1|U,U1,U2,V2",
    "V1;Y|U,V2",
    "V1;Z|U,V2",
    "V1;Y|U",
    "V1;Z|U",
    "V2;Z|U,V1",
    "V2;Y|U,V1",
    "V2;Z|U",
    "V2;Y|U",
    "U;Y1|X1",
    "U,X1;Y",
    "U,X1;Z",
    "V1;Y|U,X1",
    "V2;Z|U,X1",
    "V1;V2|U,X1",
    "V1;Z|U,X1,V2",
    "V2;Y|U,X1,V1",
    "U;Y|X1",
    "U;Z",
    "V1;V2|U",
    "X1;Z|U,V1,V2",
    "X1;Y",
    "X1,V1;Z|U,V2",
    "X1;Z|U,V2",
    "U;Z|X1",
    "U;Y",
    "V1;Z|U,V2,X1",
    "X1;Y|U,V1,V2",
    "X1;Z",
    "X1,V2;Y|U,V1",
    "X1;Y|U,V1",
    "U;Y,Yhat1|X1",
    "V1;Y,Yhat1|U,X1",
    "U;Z,Yhat1|X1",
    "V2;Z,Yhat1|U,X1",
    "Y1;Yhat1|X1",
    "U1,V1;Y",
    "V1;Y,Y1|U1",
    "U2,V2;Z",
    "V2;Z,Y1|U2",
    "U2,V1;Y,Y1|U1",
    "V2;Z,Y1|U1,U2,V1",
    "U1,V2;Z,Y1|U2",
    "V1;Y,Y1|U1,U2,V2",
    "V1;Y|V2",
    "V1;Z|V2",
    "V2;Z|V1",
    "V2;Y|V1",
    "U,U1,V;Y",
    "U,V;Y,Y1|U1",
    "U,U1;Z,Y1|U2",
    "V;Y,Y1|U,U1,U2",
    "V;Y|U",
    "V;Z|U",
    "V;Y|U,X1",
    "V;Z|U,X1",
    "X1;Z|U",
    "X1;Z|U,V",
    "X1,V;Z|U",
    "U;Z|X1",
    "V;Y,Yhat1|U,X1",
];

/// Term strings referenced by the catalog.
pub fn static_terms() -> &'static [&'static str] {
    STATIC_TERMS
}

// ----- outer bound, two confidential messages + common message -----

fn t1_r0_y(t: &dyn Terms) -> f64 {
    t.min_of(&["U,U1;Y", "U;Y,Y1|U1"])
}
fn t1_r0_z(t: &dyn Terms) -> f64 {
    t.min_of(&["U,U2;Z", "U;Z,Y1|U2"])
}
fn t1_r01(t: &dyn Terms) -> f64 {
    t.min_of(&["U,U1,V1;Y", "U,V1;Y,Y1|U1"])
}
fn t1_r02(t: &dyn Terms) -> f64 {
    t.min_of(&["U,U2,V2;Z", "U,V2;Z,Y1|U2"])
}
fn t1_sum_a(t: &dyn Terms) -> f64 {
    t.i("U,U2,V1;Y,Y1|U1") + t.i("V2;Z,Y1|U,U1,U2,V1")
}
fn t1_sum_b(t: &dyn Terms) -> f64 {
    t.i("U,U1,V2;Z,Y1|U2") + t.i("V1;Y,Y1|U,U1,U2,V2")
}
fn t1_re1(t: &dyn Terms) -> f64 {
    (t.i("V1;Y|U,V2") - t.i("V1;Z|U,V2")).min(t.i("V1;Y|U") - t.i("V1;Z|U"))
}
fn t1_re2(t: &dyn Terms) -> f64 {
    (t.i("V2;Z|U,V1") - t.i("V2;Y|U,V1")).min(t.i("V2;Z|U") - t.i("V2;Y|U"))
}

fn t1() -> Vec<Branch> {
    let common = || {
        vec![
            rate("R0 (receiver 1)", R0, t1_r0_y),
            rate("R0 (receiver 2)", R0, t1_r0_z),
            rate("R0+R1", R01, t1_r01),
            rate("R0+R2", R02, t1_r02),
            rate("R0+R1+R2 (a)", R012, t1_sum_a),
            rate("R0+R1+R2 (b)", R012, t1_sum_b),
        ]
    };
    let mut thm = common();
    thm.push(equiv("Re1", RE1, t1_re1));
    thm.push(equiv("Re2", RE2, t1_re2));
    let mut cor = common();
    cor.push(equiv("R1 secrecy", R1, t1_re1));
    cor.push(equiv("R2 secrecy", R2, t1_re2));
    single(thm, cor)
}

// ----- decode-forward -----

fn df_common(t: &dyn Terms) -> f64 {
    t.min_of(&["U;Y1|X1", "U,X1;Y", "U,X1;Z"])
}
fn df_r01(t: &dyn Terms) -> f64 {
    df_common(t) + t.i("V1;Y|U,X1")
}
fn df_r02(t: &dyn Terms) -> f64 {
    df_common(t) + t.i("V2;Z|U,X1")
}
fn df_sum(t: &dyn Terms) -> f64 {
    df_common(t) + t.i("V1;Y|U,X1") + t.i("V2;Z|U,X1") - t.i("V1;V2|U,X1")
}
fn df_re1(t: &dyn Terms) -> f64 {
    t.i("V1;Y|U,X1") - t.i("V1;V2|U,X1") - t.i("V1;Z|U,X1,V2")
}
fn df_re2(t: &dyn Terms) -> f64 {
    t.i("V2;Z|U,X1") - t.i("V1;V2|U,X1") - t.i("V2;Y|U,X1,V1")
}

fn t2() -> Vec<Branch> {
    single(
        vec![
            rate("R0", R0, df_common),
            rate("R0+R1", R01, df_r01),
            rate("R0+R2", R02, df_r02),
            rate("R0+R1+R2", R012, df_sum),
            equiv("Re1", RE1, df_re1),
            equiv("Re2", RE2, df_re2),
        ],
        vec![
            rate("R0", R0, df_common),
            equiv("R1 secrecy", R1, df_re1),
            equiv("R2 secrecy", R2, df_re2),
        ],
    )
}

// ----- generalized noise-forward, relay decoded by receiver 1 -----

fn l1_cond_lhs(t: &dyn Terms) -> f64 {
    t.i("X1;Y")
}
fn l1_cond_rhs(t: &dyn Terms) -> f64 {
    t.i("X1;Z|U,V2")
}
fn l1_common(t: &dyn Terms) -> f64 {
    t.min_of(&["U;Y|X1", "U;Z"])
}
fn l1_r01(t: &dyn Terms) -> f64 {
    l1_common(t) + t.i("V1;Y|U,X1")
}
fn l1_r02(t: &dyn Terms) -> f64 {
    l1_common(t) + t.i("V2;Z|U")
}
fn l1_sum(t: &dyn Terms) -> f64 {
    l1_common(t) + t.i("V1;Y|U,X1") + t.i("V2;Z|U") - t.i("V1;V2|U")
}
fn l1_relay(t: &dyn Terms) -> f64 {
    t.min_of(&["X1;Z|U,V1,V2", "X1;Y"])
}
fn l1_re1(t: &dyn Terms) -> f64 {
    l1_relay(t) + t.i("V1;Y|U,X1") - t.i("V1;V2|U") - t.i("X1,V1;Z|U,V2")
}
fn l1_re2(t: &dyn Terms) -> f64 {
    t.i("V2;Z|U") - t.i("V1;V2|U") - t.i("V2;Y|U,X1,V1")
}

// ----- generalized noise-forward, relay decoded by receiver 2 -----

fn l2_cond_lhs(t: &dyn Terms) -> f64 {
    t.i("X1;Z")
}
fn l2_cond_rhs(t: &dyn Terms) -> f64 {
    t.i("X1;Y|U,V1")
}
fn l2_common(t: &dyn Terms) -> f64 {
    t.min_of(&["U;Z|X1", "U;Y"])
}
fn l2_r01(t: &dyn Terms) -> f64 {
    l2_common(t) + t.i("V1;Y|U")
}
fn l2_r02(t: &dyn Terms) -> f64 {
    l2_common(t) + t.i("V2;Z|U,X1")
}
fn l2_sum(t: &dyn Terms) -> f64 {
    l2_common(t) + t.i("V1;Y|U") + t.i("V2;Z|U,X1") - t.i("V1;V2|U")
}
fn l2_relay(t: &dyn Terms) -> f64 {
    t.min_of(&["X1;Y|U,V1,V2", "X1;Z"])
}
fn l2_re1(t: &dyn Terms) -> f64 {
    t.i("V1;Y|U") - t.i("V1;V2|U") - t.i("V1;Z|U,V2,X1")
}
fn l2_re2(t: &dyn Terms) -> f64 {
    l2_relay(t) + t.i("V2;Z|U,X1") - t.i("V1;V2|U") - t.i("X1,V2;Y|U,V1")
}

fn gnf_conditions_1() -> Vec<Condition> {
    vec![cond("I(X1;Y) >= I(X1;Z|U,V2)", l1_cond_lhs, l1_cond_rhs)]
}

fn gnf_conditions_2() -> Vec<Condition> {
    vec![cond("I(X1;Z) >= I(X1;Y|U,V1)", l2_cond_lhs, l2_cond_rhs)]
}

fn t3() -> Vec<Branch> {
    vec![
        Branch {
            id: "T3.L1",
            conditions: gnf_conditions_1(),
            relay_rate: None,
            inequalities: vec![
                rate("R0", R0, l1_common),
                rate("R0+R1", R01, l1_r01),
                rate("R0+R2", R02, l1_r02),
                rate("R0+R1+R2", R012, l1_sum),
                equiv("Re1", RE1, l1_re1),
                equiv("Re2", RE2, l1_re2),
            ],
            corollary: vec![
                rate("R0", R0, l1_common),
                rate("R0+R1", R01, l1_r01),
                equiv("R1 secrecy", R1, l1_re1),
                equiv("R2 secrecy", R2, l1_re2),
            ],
        },
        Branch {
            id: "T3.L2",
            conditions: gnf_conditions_2(),
            relay_rate: None,
            inequalities: vec![
                rate("R0", R0, l2_common),
                rate("R0+R1", R01, l2_r01),
                rate("R0+R2", R02, l2_r02),
                rate("R0+R1+R2", R012, l2_sum),
                equiv("Re1", RE1, l2_re1),
                equiv("Re2", RE2, l2_re2),
            ],
            corollary: vec![
                rate("R0", R0, l2_common),
                rate("R0+R2", R02, l2_r02),
                equiv("R1 secrecy", R1, l2_re1),
                equiv("R2 secrecy", R2, l2_re2),
            ],
        },
    ]
}

// ----- compress-forward, relay decoded by receiver 1 -----

fn l3_common(t: &dyn Terms) -> f64 {
    t.min_of(&["U;Y,Yhat1|X1", "U;Z"])
}
fn l3_r01(t: &dyn Terms) -> f64 {
    l3_common(t) + t.i("V1;Y,Yhat1|U,X1")
}
fn l3_r02(t: &dyn Terms) -> f64 {
    l3_common(t) + t.i("V2;Z|U")
}
fn l3_sum(t: &dyn Terms) -> f64 {
    l3_common(t) + t.i("V1;Y,Yhat1|U,X1") + t.i("V2;Z|U") - t.i("V1;V2|U")
}
fn l3_re1(t: &dyn Terms) -> f64 {
    t.rstar() + t.i("V1;Y,Yhat1|U,X1") - t.i("V1;V2|U") - t.i("X1,V1;Z|U,V2")
}

// ----- compress-forward, relay decoded by receiver 2 -----

fn l4_common(t: &dyn Terms) -> f64 {
    t.min_of(&["U;Z,Yhat1|X1", "U;Y"])
}
fn l4_r01(t: &dyn Terms) -> f64 {
    l4_common(t) + t.i("V1;Y|U")
}
fn l4_r02(t: &dyn Terms) -> f64 {
    l4_common(t) + t.i("V2;Z,Yhat1|U,X1")
}
fn l4_sum(t: &dyn Terms) -> f64 {
    l4_common(t) + t.i("V1;Y|U") + t.i("V2;Z,Yhat1|U,X1") - t.i("V1;V2|U")
}
fn l4_re2(t: &dyn Terms) -> f64 {
    t.rstar() + t.i("V2;Z,Yhat1|U,X1") - t.i("V1;V2|U") - t.i("X1,V2;Y|U,V1")
}

fn relay_budget_lhs_1(t: &dyn Terms) -> f64 {
    l1_relay(t) - t.rstar()
}
fn relay_budget_lhs_2(t: &dyn Terms) -> f64 {
    l2_relay(t) - t.rstar()
}

fn cf_conditions_1() -> Vec<Condition> {
    vec![
        cond("I(X1;Y) >= I(X1;Z|U,V2)", l1_cond_lhs, l1_cond_rhs),
        cond("R*_r1 - R* >= I(Y1;Yhat1|X1)", relay_budget_lhs_1, quantizer_cost),
        cond("R* >= 0", rstar, zero),
    ]
}

fn cf_conditions_2() -> Vec<Condition> {
    vec![
        cond("I(X1;Z) >= I(X1;Y|U,V1)", l2_cond_lhs, l2_cond_rhs),
        cond("R*_r2 - R* >= I(Y1;Yhat1|X1)", relay_budget_lhs_2, quantizer_cost),
        cond("R* >= 0", rstar, zero),
    ]
}

fn t4() -> Vec<Branch> {
    vec![
        Branch {
            id: "T4.L3",
            conditions: cf_conditions_1(),
            relay_rate: Some(l1_relay),
            inequalities: vec![
                rate("R0", R0, l3_common),
                rate("R0+R1", R01, l3_r01),
                rate("R0+R2", R02, l3_r02),
                rate("R0+R1+R2", R012, l3_sum),
                equiv("Re1", RE1, l3_re1),
                equiv("Re2", RE2, l1_re2),
            ],
            corollary: vec![
                rate("R0", R0, l3_common),
                rate("R0+R1", R01, l3_r01),
                equiv("R1 secrecy", R1, l3_re1),
                equiv("R2 secrecy", R2, l1_re2),
            ],
        },
        Branch {
            id: "T4.L4",
            conditions: cf_conditions_2(),
            relay_rate: Some(l2_relay),
            inequalities: vec![
                rate("R0", R0, l4_common),
                rate("R0+R1", R01, l4_r01),
                rate("R0+R2", R02, l4_r02),
                rate("R0+R1+R2", R012, l4_sum),
                equiv("Re1", RE1, l2_re1),
                equiv("Re2", RE2, l4_re2),
            ],
            corollary: vec![
                rate("R0", R0, l4_common),
                rate("R0+R2", R02, l4_r02),
                equiv("R1 secrecy", R1, l2_re1),
                equiv("R2 secrecy", R2, l4_re2),
            ],
        },
    ]
}

// ----- outer bound, two confidential messages -----

fn t5_r1(t: &dyn Terms) -> f64 {
    t.min_of(&["U1,V1;Y", "V1;Y,Y1|U1"])
}
fn t5_r2(t: &dyn Terms) -> f64 {
    t.min_of(&["U2,V2;Z", "V2;Z,Y1|U2"])
}
fn t5_sum_a(t: &dyn Terms) -> f64 {
    t.i("U2,V1;Y,Y1|U1") + t.i("V2;Z,Y1|U1,U2,V1")
}
fn t5_sum_b(t: &dyn Terms) -> f64 {
    t.i("U1,V2;Z,Y1|U2") + t.i("V1;Y,Y1|U1,U2,V2")
}
fn t5_re1(t: &dyn Terms) -> f64 {
    (t.i("V1;Y|V2") - t.i("V1;Z|V2")).min(t.i("V1;Y|U") - t.i("V1;Z|U"))
}
fn t5_re2(t: &dyn Terms) -> f64 {
    (t.i("V2;Z|V1") - t.i("V2;Y|V1")).min(t.i("V2;Z|U") - t.i("V2;Y|U"))
}

fn t5() -> Vec<Branch> {
    let common = || {
        vec![
            rate("R1", R1, t5_r1),
            rate("R2", R2, t5_r2),
            rate("R1+R2 (a)", R12, t5_sum_a),
            rate("R1+R2 (b)", R12, t5_sum_b),
        ]
    };
    let mut thm = common();
    thm.push(equiv("Re1", RE1, t5_re1));
    thm.push(equiv("Re2", RE2, t5_re2));
    let mut cor = common();
    cor.push(equiv("R1 secrecy", R1, t5_re1));
    cor.push(equiv("R2 secrecy", R2, t5_re2));
    single(thm, cor)
}

fn t6() -> Vec<Branch> {
    single(
        vec![
            rate("R1", R1, df_r01),
            rate("R2", R2, df_r02),
            rate("R1+R2", R12, df_sum),
            equiv("Re1", RE1, df_re1),
            equiv("Re2", RE2, df_re2),
        ],
        vec![equiv("R1 secrecy", R1, df_re1), equiv("R2 secrecy", R2, df_re2)],
    )
}

fn t7() -> Vec<Branch> {
    vec![
        Branch {
            id: "T7.L5",
            conditions: gnf_conditions_1(),
            relay_rate: None,
            inequalities: vec![
                rate("R1", R1, l1_r01),
                rate("R2", R2, l1_r02),
                rate("R1+R2", R12, l1_sum),
                equiv("Re1", RE1, l1_re1),
                equiv("Re2", RE2, l1_re2),
            ],
            corollary: vec![
                rate("R1", R1, l1_r01),
                equiv("R1 secrecy", R1, l1_re1),
                equiv("R2 secrecy", R2, l1_re2),
            ],
        },
        Branch {
            id: "T7.L6",
            conditions: gnf_conditions_2(),
            relay_rate: None,
            inequalities: vec![
                rate("R1", R1, l2_r01),
                rate("R2", R2, l2_r02),
                rate("R1+R2", R12, l2_sum),
                equiv("Re1", RE1, l2_re1),
                equiv("Re2", RE2, l2_re2),
            ],
            corollary: vec![
                rate("R2", R2, l2_r02),
                equiv("R1 secrecy", R1, l2_re1),
                equiv("R2 secrecy", R2, l2_re2),
            ],
        },
    ]
}

fn t8() -> Vec<Branch> {
    vec![
        Branch {
            id: "T8.L7",
            conditions: cf_conditions_1(),
            relay_rate: Some(l1_relay),
            inequalities: vec![
                rate("R1", R1, l3_r01),
                rate("R2", R2, l3_r02),
                rate("R1+R2", R12, l3_sum),
                equiv("Re1", RE1, l3_re1),
                equiv("Re2", RE2, l1_re2),
            ],
            corollary: vec![
                rate("R1", R1, l3_r01),
                equiv("R1 secrecy", R1, l3_re1),
                equiv("R2 secrecy", R2, l1_re2),
            ],
        },
        Branch {
            id: "T8.L8",
            conditions: cf_conditions_2(),
            relay_rate: Some(l2_relay),
            inequalities: vec![
                rate("R1", R1, l4_r01),
                rate("R2", R2, l4_r02),
                rate("R1+R2", R12, l4_sum),
                equiv("Re1", RE1, l2_re1),
                equiv("Re2", RE2, l4_re2),
            ],
            corollary: vec![
                equiv("R1 secrecy", R1, l2_re1),
                rate("R2", R2, l4_r02),
                equiv("R2 secrecy", R2, l4_re2),
            ],
        },
    ]
}

// ----- outer bound, one confidential message + common message -----

fn t9_r01_a(t: &dyn Terms) -> f64 {
    t.min_of(&["U,U1,V;Y", "U,V;Y,Y1|U1"])
}
fn t9_r01_b(t: &dyn Terms) -> f64 {
    t.i("U,U1;Z,Y1|U2") + t.i("V;Y,Y1|U,U1,U2")
}
fn t9_re(t: &dyn Terms) -> f64 {
    t.i("V;Y|U") - t.i("V;Z|U")
}

fn t9() -> Vec<Branch> {
    let common = || {
        vec![
            rate("R0 (receiver 1)", R0, t1_r0_y),
            rate("R0 (receiver 2)", R0, t1_r0_z),
            rate("R0+R1 (a)", R01, t9_r01_a),
            rate("R0+R1 (b)", R01, t9_r01_b),
        ]
    };
    let mut thm = common();
    thm.push(equiv("Re", RE1, t9_re));
    let mut cor = common();
    cor.push(equiv("R1 secrecy", R1, t9_re));
    single(thm, cor)
}

fn c_df_r01(t: &dyn Terms) -> f64 {
    df_common(t) + t.i("V;Y|U,X1")
}
fn c_df_re(t: &dyn Terms) -> f64 {
    t.i("V;Y|U,X1") - t.i("V;Z|U,X1")
}

fn t10() -> Vec<Branch> {
    single(
        vec![
            rate("R0", R0, df_common),
            rate("R0+R1", R01, c_df_r01),
            equiv("Re", RE1, c_df_re),
        ],
        vec![rate("R0", R0, df_common), equiv("R1 secrecy", R1, c_df_re)],
    )
}

fn l9_cond_rhs(t: &dyn Terms) -> f64 {
    t.i("X1;Z|U")
}
fn l9_common(t: &dyn Terms) -> f64 {
    t.min_of(&["U;Y|X1", "U;Z"])
}
fn l9_r01(t: &dyn Terms) -> f64 {
    l9_common(t) + t.i("V;Y|U,X1")
}
fn l9_relay(t: &dyn Terms) -> f64 {
    t.min_of(&["X1;Z|U,V", "X1;Y"])
}
fn l9_re(t: &dyn Terms) -> f64 {
    l9_relay(t) + t.i("V;Y|U,X1") - t.i("X1,V;Z|U")
}
fn l10_cond_rhs(t: &dyn Terms) -> f64 {
    t.i("X1;Y")
}
fn l10_common(t: &dyn Terms) -> f64 {
    t.min_of(&["U;Y|X1", "U;Z|X1"])
}
fn l10_r01(t: &dyn Terms) -> f64 {
    l10_common(t) + t.i("V;Y|U,X1")
}

fn t11() -> Vec<Branch> {
    vec![
        Branch {
            id: "T11.L9",
            conditions: vec![cond("I(X1;Y) >= I(X1;Z|U)", l1_cond_lhs, l9_cond_rhs)],
            relay_rate: None,
            inequalities: vec![
                rate("R0", R0, l9_common),
                rate("R0+R1", R01, l9_r01),
                equiv("Re", RE1, l9_re),
            ],
            corollary: vec![
                rate("R0", R0, l9_common),
                rate("R0+R1", R01, l9_r01),
                equiv("R1 secrecy", R1, l9_re),
            ],
        },
        Branch {
            id: "T11.L10",
            conditions: vec![cond("I(X1;Z) >= I(X1;Y)", l2_cond_lhs, l10_cond_rhs)],
            relay_rate: None,
            inequalities: vec![
                rate("R0", R0, l10_common),
                rate("R0+R1", R01, l10_r01),
                equiv("Re", RE1, c_df_re),
            ],
            corollary: vec![rate("R0", R0, l10_common), equiv("R1 secrecy", R1, c_df_re)],
        },
    ]
}

fn l11_common(t: &dyn Terms) -> f64 {
    t.min_of(&["U;Y,Yhat1|X1", "U;Z"])
}
fn l11_r01(t: &dyn Terms) -> f64 {
    l11_common(t) + t.i("V;Y,Yhat1|U,X1")
}
fn l11_re(t: &dyn Terms) -> f64 {
    t.rstar() + t.i("V;Y,Yhat1|U,X1") - t.i("X1,V;Z|U")
}
fn l11_budget_lhs(t: &dyn Terms) -> f64 {
    l9_relay(t) - t.rstar()
}
fn l12_common(t: &dyn Terms) -> f64 {
    t.min_of(&["U;Y,Yhat1|X1", "U;Z,Yhat1|X1"])
}
fn l12_r01(t: &dyn Terms) -> f64 {
    l12_common(t) + t.i("V;Y,Yhat1|U,X1")
}
fn l12_re(t: &dyn Terms) -> f64 {
    t.i("V;Y,Yhat1|U,X1") - t.i("V;Z|U,X1")
}

fn t12() -> Vec<Branch> {
    vec![
        Branch {
            id: "T12.L11",
            conditions: vec![
                cond("I(X1;Y) >= I(X1;Z|U)", l1_cond_lhs, l9_cond_rhs),
                cond("R*_r1 - R* >= I(Y1;Yhat1|X1)", l11_budget_lhs, quantizer_cost),
                cond("R* >= 0", rstar, zero),
            ],
            relay_rate: Some(l9_relay),
            inequalities: vec![
                rate("R0", R0, l11_common),
                rate("R0+R1", R01, l11_r01),
                equiv("Re", RE1, l11_re),
            ],
            corollary: vec![
                rate("R0", R0, l11_common),
                rate("R0+R1", R01, l11_r01),
                equiv("R1 secrecy", R1, l11_re),
            ],
        },
        Branch {
            id: "T12.L12",
            conditions: vec![
                cond("I(X1;Z) >= I(X1;Y)", l2_cond_lhs, l10_cond_rhs),
                cond("I(X1;Y) >= I(Y1;Yhat1|X1)", l1_cond_lhs, quantizer_cost),
            ],
            relay_rate: None,
            inequalities: vec![
                rate("R0", R0, l12_common),
                rate("R0+R1", R01, l12_r01),
                equiv("Re", RE1, l12_re),
            ],
            corollary: vec![rate("R0", R0, l12_common), equiv("R1 secrecy", R1, l12_re)],
        },
    ]
}

const OUTER_VARS: &[&str] = &["U", "U1", "U2", "V1", "V2", "X", "X1"];
const OUTER_PATTERN: &[(&[&str], &[&str])] = &[
    (&["U", "U1", "U2", "V1", "V2"], &[]),
    (&["X", "X1"], &["U1", "U2", "V1", "V2"]),
];
const TWO_VARS: &[&str] = &["U", "V1", "V2", "X", "X1"];
const DF_PATTERN: &[(&[&str], &[&str])] = &[(&["U", "V1", "V2"], &[]), (&["X", "X1"], &["U", "V1", "V2"])];
const NF_PATTERN: &[(&[&str], &[&str])] = &[(&["U", "V1", "V2"], &[]), (&["X"], &["U", "V1", "V2"]), (&["X1"], &[])];
const ONE_OUTER_VARS: &[&str] = &["U", "U1", "U2", "V", "X", "X1"];
const ONE_OUTER_PATTERN: &[(&[&str], &[&str])] = &[(&["U", "U1", "U2", "V"], &[]), (&["X", "X1"], &["U1", "U2", "V"])];
const ONE_VARS: &[&str] = &["U", "V", "X", "X1"];
const ONE_DF_PATTERN: &[(&[&str], &[&str])] = &[(&["U", "V"], &[]), (&["X", "X1"], &["U", "V"])];
const ONE_NF_PATTERN: &[(&[&str], &[&str])] = &[(&["U", "V"], &[]), (&["X"], &["U", "V"]), (&["X1"], &[])];

fn build() -> Vec<Theorem> {
    use MessageModel::*;
    use StrategyKind::*;
    let mk = |n: u8, model, strategy, variables, pattern, quantized, branches: Vec<Branch>| Theorem {
        id: TheoremId(n),
        model,
        strategy,
        variables,
        pattern,
        quantized,
        branches,
    };
    vec![
        mk(
            1,
            TwoConfidentialCommon,
            OuterBound,
            OUTER_VARS,
            OUTER_PATTERN,
            false,
            t1(),
        ),
        mk(
            2,
            TwoConfidentialCommon,
            DecodeForward,
            TWO_VARS,
            DF_PATTERN,
            false,
            t2(),
        ),
        mk(
            3,
            TwoConfidentialCommon,
            NoiseForward,
            TWO_VARS,
            NF_PATTERN,
            false,
            t3(),
        ),
        mk(
            4,
            TwoConfidentialCommon,
            CompressForward,
            TWO_VARS,
            NF_PATTERN,
            true,
            t4(),
        ),
        mk(5, TwoConfidential, OuterBound, OUTER_VARS, OUTER_PATTERN, false, t5()),
        mk(6, TwoConfidential, DecodeForward, TWO_VARS, DF_PATTERN, false, t6()),
        mk(7, TwoConfidential, NoiseForward, TWO_VARS, NF_PATTERN, false, t7()),
        mk(8, TwoConfidential, CompressForward, TWO_VARS, NF_PATTERN, true, t8()),
        mk(
            9,
            OneConfidentialCommon,
            OuterBound,
            ONE_OUTER_VARS,
            ONE_OUTER_PATTERN,
            false,
            t9(),
        ),
        mk(
            10,
            OneConfidentialCommon,
            DecodeForward,
            ONE_VARS,
            ONE_DF_PATTERN,
            false,
            t10(),
        ),
        mk(
            11,
            OneConfidentialCommon,
            NoiseForward,
            ONE_VARS,
            ONE_NF_PATTERN,
            false,
            t11(),
        ),
        mk(
            12,
            OneConfidentialCommon,
            CompressForward,
            ONE_VARS,
            ONE_NF_PATTERN,
            true,
            t12(),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_parse_and_display() {
        assert_eq!("T7".parse::<TheoremId>().unwrap().number(), 7);
        assert_eq!("12".parse::<TheoremId>().unwrap().to_string(), "T12");
        assert!("T13".parse::<TheoremId>().is_err());
        assert!("x".parse::<TheoremId>().is_err());
    }

    #[test]
    fn catalog_is_consistent() {
        for id in TheoremId::all() {
            let t = theorem(id);
            assert_eq!(t.id, id);
            let vars: Vec<&str> = t.pattern.iter().flat_map(|(tg, _)| tg.iter().copied()).collect();
            let mut sorted = vars.clone();
            sorted.sort_unstable();
            let mut declared = t.variables.to_vec();
            declared.sort_unstable();
            assert_eq!(sorted, declared, "{id}: pattern must cover variables exactly once");

            let dims = t.model.rate_dims();
            for b in &t.branches {
                for q in &b.corollary {
                    assert_eq!(q.lhs[3], 0.0);
                    assert_eq!(q.lhs[4], 0.0);
                    for k in 0..3 {
                        if q.lhs[k] != 0.0 {
                            assert!(dims.contains(&k), "{id} {}: uses unused rate {k}", q.name);
                        }
                    }
                }
                if t.quantized {
                    assert!(b.conditions.len() >= 2);
                }
            }
            let terms = t.term_specs();
            assert!(!terms.is_empty());
            for term in terms {
                let has_hat = term.contains("Yhat1");
                assert!(!has_hat || t.quantized, "{id}: {term}");
            }
        }
    }

    #[test]
    fn branch_ids_follow_region_numbering() {
        let ids: Vec<&str> = TheoremId::all()
            .flat_map(|id| theorem(id).branches.iter().map(|b| b.id))
            .filter(|s| *s != "n/a")
            .collect();
        assert_eq!(
            ids,
            [
                "T3.L1", "T3.L2", "T4.L3", "T4.L4", "T7.L5", "T7.L6", "T8.L7", "T8.L8", "T11.L9", "T11.L10", "T12.L11",
                "T12.L12"
            ]
        );
    }
}
