use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::catalog::{theorem, BoundFn, Inequality, MessageModel, Terms, Theorem, TheoremId, QUANTIZER_COST};
use super::coupling::AuxiliaryCoupling;
use super::model::DmcModel;
use super::rates::RateTuple;
use super::term::Term;
use crate::info::{EntropyCache, FACTORIZATION_TOLERANCE};
use crate::{Error, Result};

/// Default absolute slack tolerance for membership, in bits.
pub const MEMBERSHIP_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    pub tol: f64,
    /// Floor every equivocation cap at zero.
    pub clamp_equivocation: bool,
    /// Compress-forward pure-noise rate. `None` uses `R*_r - I(Y1;Yhat1|X1)`
    /// for each branch.
    pub rstar: Option<f64>,
    pub factorization_tol: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self {
            tol: MEMBERSHIP_TOLERANCE,
            clamp_equivocation: false,
            rstar: None,
            factorization_tol: FACTORIZATION_TOLERANCE,
        }
    }
}

/// Named information values, ordered by name.
pub type MiTable = BTreeMap<String, f64>;

/// Information terms a theorem needs, keyed by their catalog spelling.
#[derive(Debug, Clone)]
pub(crate) struct TermValues {
    values: HashMap<&'static str, f64>,
}

impl TermValues {
    pub(crate) fn compute(
        id: TheoremId,
        model: &DmcModel,
        coupling: &AuxiliaryCoupling,
        fact_tol: f64,
    ) -> Result<Self> {
        coupling.check_for(id, fact_tol)?;
        let full = coupling.full_joint(model)?;
        let mut cache = EntropyCache::new(&full);
        let mut values = HashMap::new();
        for spec in theorem(id).term_specs() {
            let t = Term::parse(spec)?;
            values.insert(spec, cache.cond_mutual_info(&t.a, &t.b, &t.c)?);
        }
        Ok(Self { values })
    }

    fn table(&self) -> MiTable {
        self.values.iter().map(|(k, v)| (format!("I({k})"), *v)).collect()
    }
}

struct Ctx<'a> {
    values: &'a TermValues,
    rstar: f64,
}

impl Terms for Ctx<'_> {
    fn i(&self, term: &str) -> f64 {
        match self.values.values.get(term) {
            Some(v) => *v,
            None => panic!("term {term} was not precomputed"),
        }
    }
    fn rstar(&self) -> f64 {
        self.rstar
    }
}

/// Every distinct information term of `id` for this channel and coupling.
pub fn mi_terms(id: TheoremId, model: &DmcModel, coupling: &AuxiliaryCoupling) -> Result<MiTable> {
    Ok(TermValues::compute(id, model, coupling, FACTORIZATION_TOLERANCE)?.table())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionValue {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// One inequality `lhs · (R0,R1,R2,Re1,Re2) <= value` with its bound instantiated.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bound {
    pub name: &'static str,
    pub lhs: [f64; 5],
    pub value: f64,
    pub equivocation: bool,
}

impl Bound {
    pub fn expression(&self, rates: &[f64; 5]) -> f64 {
        self.lhs.iter().zip(rates).map(|(c, r)| c * r).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BranchInstance {
    pub id: &'static str,
    pub conditions: Vec<ConditionValue>,
    pub qualifies: bool,
    /// The pure-noise rate used, for compress-forward branches.
    pub rstar: Option<f64>,
    pub inequalities: Vec<Bound>,
    pub corollary: Vec<Bound>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityRecord {
    pub name: &'static str,
    pub bound: f64,
    pub slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BranchEvaluation {
    pub id: &'static str,
    pub qualifies: bool,
    pub conditions: Vec<ConditionValue>,
    pub records: Vec<InequalityRecord>,
    pub member: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundEvaluation {
    pub theorem: TheoremId,
    /// First branch with membership, else the first qualifying branch, else
    /// `"none"`. Unbranched bounds report `"n/a"`.
    pub branch_taken: &'static str,
    pub member: bool,
    pub branches: Vec<BranchEvaluation>,
}

impl BoundEvaluation {
    /// Records of the branch taken (empty when no branch qualifies).
    pub fn records(&self) -> &[InequalityRecord] {
        self.branches
            .iter()
            .find(|b| b.id == self.branch_taken)
            .map_or(&[], |b| &b.records)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BranchReport {
    pub theorem: TheoremId,
    pub branches: Vec<BranchCondition>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BranchCondition {
    pub id: &'static str,
    pub qualifies: bool,
    pub rstar: Option<f64>,
    pub conditions: Vec<ConditionValue>,
}

impl BranchReport {
    pub fn qualifying(&self) -> Vec<&'static str> {
        self.branches.iter().filter(|b| b.qualifies).map(|b| b.id).collect()
    }
}

/// Maximizer of a linear objective over a secrecy slice.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Extreme {
    pub rates: RateTuple,
    pub objective: f64,
    /// Branch whose slice attains the maximum, `"none"` if the slice is empty.
    pub branch: &'static str,
    /// Set when not even the origin satisfies the slice inequalities.
    pub empty_interior: bool,
}

/// A theorem instantiated for one channel and coupling: every bound is a
/// number, so membership queries are cheap.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremInstance {
    pub theorem: TheoremId,
    pub terms: MiTable,
    pub branches: Vec<BranchInstance>,
    tol: f64,
}

impl TheoremInstance {
    pub fn new(id: TheoremId, model: &DmcModel, coupling: &AuxiliaryCoupling, opts: &EvalOptions) -> Result<Self> {
        let values = TermValues::compute(id, model, coupling, opts.factorization_tol)?;
        Self::from_values(id, &values, opts)
    }

    pub(crate) fn from_values(id: TheoremId, values: &TermValues, opts: &EvalOptions) -> Result<Self> {
        if !opts.tol.is_finite() || opts.tol < 0.0 {
            return Err(Error::Usage(format!("tolerance {} must be finite and >= 0", opts.tol)));
        }
        if let Some(r) = opts.rstar {
            if !r.is_finite() {
                return Err(Error::Usage("R* must be finite".into()));
            }
        }
        let thm = theorem(id);
        let branches = thm
            .branches
            .iter()
            .map(|b| {
                let rstar = b.relay_rate.map(|relay| {
                    opts.rstar.unwrap_or_else(|| {
                        let ctx = Ctx { values, rstar: 0.0 };
                        relay(&ctx) - ctx.i(QUANTIZER_COST)
                    })
                });
                let ctx = Ctx {
                    values,
                    rstar: rstar.unwrap_or(0.0),
                };
                let conditions: Vec<ConditionValue> = b
                    .conditions
                    .iter()
                    .map(|c| {
                        let (lhs, rhs) = ((c.lhs)(&ctx), (c.rhs)(&ctx));
                        ConditionValue {
                            name: c.name,
                            lhs,
                            rhs,
                            holds: lhs >= rhs - opts.tol,
                        }
                    })
                    .collect();
                let inst = |list: &[Inequality]| -> Vec<Bound> {
                    list.iter()
                        .map(|q| instantiate(q, &ctx, opts.clamp_equivocation))
                        .collect()
                };
                BranchInstance {
                    id: b.id,
                    qualifies: conditions.iter().all(|c| c.holds),
                    conditions,
                    rstar,
                    inequalities: inst(&b.inequalities),
                    corollary: inst(&b.corollary),
                }
            })
            .collect();
        Ok(Self {
            theorem: id,
            terms: values.table(),
            branches,
            tol: opts.tol,
        })
    }

    pub fn catalog(&self) -> &'static Theorem {
        theorem(self.theorem)
    }

    /// Membership of a full rate tuple in the capacity-equivocation bound.
    pub fn evaluate(&self, rates: &RateTuple) -> Result<BoundEvaluation> {
        rates.check_admissible(self.catalog().model)?;
        Ok(self.evaluate_with(rates, |b| &b.inequalities))
    }

    /// Membership of `(R0, R1, R2)` in the perfect-secrecy slice, using the
    /// slice's own inequality list.
    pub fn evaluate_corollary(&self, rates: [f64; 3]) -> Result<BoundEvaluation> {
        let t = RateTuple::secrecy(rates[0], rates[1], rates[2]);
        let t = match self.catalog().model {
            MessageModel::OneConfidentialCommon => RateTuple { re2: 0.0, ..t },
            _ => t,
        };
        t.check_admissible(self.catalog().model)?;
        Ok(self.evaluate_with(&t, |b| &b.corollary))
    }

    fn evaluate_with(&self, rates: &RateTuple, pick: impl Fn(&BranchInstance) -> &Vec<Bound>) -> BoundEvaluation {
        let r = rates.as_array();
        let branches: Vec<BranchEvaluation> = self
            .branches
            .iter()
            .map(|b| {
                let records: Vec<InequalityRecord> = pick(b)
                    .iter()
                    .map(|q| InequalityRecord {
                        name: q.name,
                        bound: q.value,
                        slack: q.value - q.expression(&r),
                    })
                    .collect();
                let member = b.qualifies && records.iter().all(|x| x.slack >= -self.tol);
                BranchEvaluation {
                    id: b.id,
                    qualifies: b.qualifies,
                    conditions: b.conditions.clone(),
                    records,
                    member,
                }
            })
            .collect();
        let branch_taken = branches
            .iter()
            .find(|b| b.member)
            .or_else(|| branches.iter().find(|b| b.qualifies))
            .map_or("none", |b| b.id);
        BoundEvaluation {
            theorem: self.theorem,
            branch_taken,
            member: branches.iter().any(|b| b.member),
            branches,
        }
    }

    pub fn branch_report(&self) -> BranchReport {
        BranchReport {
            theorem: self.theorem,
            branches: self
                .branches
                .iter()
                .map(|b| BranchCondition {
                    id: b.id,
                    qualifies: b.qualifies,
                    rstar: b.rstar,
                    conditions: b.conditions.clone(),
                })
                .collect(),
        }
    }

    /// Maximizes `objective · (R0, R1, R2)` over the union of qualifying
    /// secrecy slices by vertex enumeration.
    pub fn extremes(&self, objective: [f64; 3]) -> Result<Extreme> {
        if objective.iter().any(|c| !c.is_finite()) {
            return Err(Error::Usage("objective coefficients must be finite".into()));
        }
        let model = self.catalog().model;
        let dims = model.rate_dims();
        let mut best: Option<Extreme> = None;
        for b in self.branches.iter().filter(|b| b.qualifies) {
            let Some(x) = slice_maximum(&b.corollary, dims, objective, self.tol) else {
                continue;
            };
            let cand = Extreme {
                rates: secrecy_tuple(model, x),
                objective: dot3(objective, x),
                branch: b.id,
                empty_interior: false,
            };
            best = Some(match best {
                Some(cur) if !better(&cand, &cur) => cur,
                _ => cand,
            });
        }
        Ok(best.unwrap_or(Extreme {
            rates: RateTuple::default(),
            objective: 0.0,
            branch: "none",
            empty_interior: true,
        }))
    }
}

const TIE: f64 = 1e-12;

fn better(a: &Extreme, b: &Extreme) -> bool {
    if (a.objective - b.objective).abs() > TIE {
        return a.objective > b.objective;
    }
    lex_greater(a.rates.rates(), b.rates.rates())
}

fn lex_greater(a: [f64; 3], b: [f64; 3]) -> bool {
    for k in 0..3 {
        if a[k] != b[k] {
            return a[k] > b[k];
        }
    }
    false
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn secrecy_tuple(model: MessageModel, x: [f64; 3]) -> RateTuple {
    match model {
        MessageModel::OneConfidentialCommon => RateTuple::new(x[0], x[1], 0.0, x[1], 0.0),
        _ => RateTuple::secrecy(x[0], x[1], x[2]),
    }
}

fn instantiate(q: &Inequality, ctx: &Ctx<'_>, clamp: bool) -> Bound {
    let f: BoundFn = q.bound;
    let mut value = f(ctx);
    if clamp && q.equivocation {
        value = value.max(0.0);
    }
    Bound {
        name: q.name,
        lhs: q.lhs,
        value,
        equivocation: q.equivocation,
    }
}

/// Best vertex of `{x >= 0, a·x <= b}` restricted to `dims`, or `None` when
/// the origin is infeasible.
fn slice_maximum(bounds: &[Bound], dims: &[usize], objective: [f64; 3], tol: f64) -> Option<[f64; 3]> {
    let d = dims.len();
    // rows: (coefficients over dims, rhs)
    let mut rows: Vec<([f64; 3], f64)> = bounds
        .iter()
        .map(|q| {
            let mut a = [0.0; 3];
            for (j, &k) in dims.iter().enumerate() {
                a[j] = q.lhs[k];
            }
            (a, q.value)
        })
        .collect();
    if rows.iter().any(|(_, b)| *b < -tol) {
        return None;
    }
    for j in 0..d {
        let mut a = [0.0; 3];
        a[j] = -1.0;
        rows.push((a, 0.0));
    }
    let feasible = |x: &[f64; 3]| {
        rows.iter()
            .all(|(a, b)| a.iter().zip(x).map(|(c, v)| c * v).sum::<f64>() <= b + tol)
    };
    let mut best: Option<([f64; 3], f64)> = None;
    let mut consider = |x: [f64; 3]| {
        let mut full = [0.0; 3];
        for (j, &k) in dims.iter().enumerate() {
            full[k] = if x[j].abs() <= tol { 0.0 } else { x[j] };
        }
        let val = dot3(objective, full);
        let take = match best {
            None => true,
            Some((bx, bv)) => {
                if (val - bv).abs() > TIE {
                    val > bv
                } else {
                    lex_greater(full, bx)
                }
            }
        };
        if take {
            best = Some((full, val));
        }
    };
    let m = rows.len();
    let mut pick = vec![0usize; d];
    combinations(m, d, &mut pick, 0, 0, &mut |sel| {
        let mut a = [[0.0; 3]; 3];
        let mut b = [0.0; 3];
        for (r, &s) in sel.iter().enumerate() {
            a[r] = rows[s].0;
            b[r] = rows[s].1;
        }
        if let Some(x) = solve(a, b, d) {
            if feasible(&x) {
                consider(x);
            }
        }
    });
    best.map(|(x, _)| x)
}

fn combinations(m: usize, d: usize, pick: &mut Vec<usize>, depth: usize, start: usize, f: &mut dyn FnMut(&[usize])) {
    if depth == d {
        f(pick);
        return;
    }
    for s in start..m {
        pick[depth] = s;
        combinations(m, d, pick, depth + 1, s + 1, f);
    }
}

/// Solves the leading `d×d` system by Gaussian elimination with partial
/// pivoting; `None` when singular.
#[allow(clippy::needless_range_loop)]
fn solve(mut a: [[f64; 3]; 3], mut b: [f64; 3], d: usize) -> Option<[f64; 3]> {
    for col in 0..d {
        let piv = (col..d).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..d {
            let f = a[r][col] / a[col][col];
            for c in col..d {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = [0.0; 3];
    for r in (0..d).rev() {
        let mut s = b[r];
        for c in r + 1..d {
            s -= a[r][c] * x[c];
        }
        x[r] = s / a[r][r];
    }
    Some(x)
}

/// Membership of `rates` in bound `id` for one coupling.
pub fn evaluate_membership(
    id: TheoremId,
    model: &DmcModel,
    coupling: &AuxiliaryCoupling,
    rates: &RateTuple,
    opts: &EvalOptions,
) -> Result<BoundEvaluation> {
    rates.check_admissible(theorem(id).model)?;
    TheoremInstance::new(id, model, coupling, opts)?.evaluate(rates)
}

/// Which branch conditions the coupling satisfies, with both sides of each.
pub fn branch_condition(
    id: TheoremId,
    model: &DmcModel,
    coupling: &AuxiliaryCoupling,
    opts: &EvalOptions,
) -> Result<BranchReport> {
    Ok(TheoremInstance::new(id, model, coupling, opts)?.branch_report())
}

/// Best point of the perfect-secrecy slice along `objective`.
pub fn secrecy_region_extremes(
    id: TheoremId,
    model: &DmcModel,
    coupling: &AuxiliaryCoupling,
    objective: [f64; 3],
    opts: &EvalOptions,
) -> Result<Extreme> {
    TheoremInstance::new(id, model, coupling, opts)?.extremes(objective)
}
