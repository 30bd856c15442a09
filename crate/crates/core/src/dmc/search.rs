use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::catalog::{theorem, TheoremId};
use super::coupling::{AuxiliaryCoupling, Quantizer};
use super::evaluate::{EvalOptions, Extreme, TermValues, TheoremInstance};
use super::model::DmcModel;
use crate::info::joint::for_each_index;
use crate::info::{Axis, JointPmf};
use crate::{Error, Result};

pub const DEFAULT_BUDGET: u64 = 10_000_000;
pub const MAX_AUX_SIZE: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOptions {
    pub budget: u64,
    pub eval: EvalOptions,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            eval: EvalOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    #[serde(flatten)]
    pub best: Extreme,
    #[serde(skip)]
    pub coupling: AuxiliaryCoupling,
    pub evaluated: u64,
}

/// One conditional factor of the search space: for every assignment of the
/// conditioning variables, an independent point of the target simplex grid.
struct Slot {
    targets: Vec<usize>,
    given: Vec<usize>,
    configs: usize,
    cells: usize,
}

struct Space {
    axes: Vec<Axis>,
    slots: Vec<Slot>,
    /// Simplex lattices per distinct target cell count.
    lattices: BTreeMap<usize, Vec<Vec<f64>>>,
    /// Quantizer slot index (its axes are `Y1`, `X1`, `Yhat1`, not coupling axes).
    quantizer: Option<(usize, usize, usize, usize)>,
    radix: Vec<u64>,
    total: f64,
}

/// Points of the probability simplex on `cells` symbols with coordinates in
/// multiples of `1/(steps-1)`; the single uniform point when `steps == 1`.
pub fn simplex_lattice(cells: usize, steps: usize) -> Vec<Vec<f64>> {
    if steps <= 1 {
        return vec![vec![1.0 / cells as f64; cells]];
    }
    let m = steps - 1;
    let mut out = Vec::new();
    let mut cur = vec![0usize; cells];
    fn rec(k: usize, left: usize, cur: &mut Vec<usize>, m: usize, out: &mut Vec<Vec<f64>>) {
        if k + 1 == cur.len() {
            cur[k] = left;
            out.push(cur.iter().map(|&c| c as f64 / m as f64).collect());
            return;
        }
        for c in (0..=left).rev() {
            cur[k] = c;
            rec(k + 1, left - c, cur, m, out);
        }
    }
    rec(0, m, &mut cur, m, &mut out);
    out
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

impl Space {
    fn new(
        id: TheoremId,
        model: &DmcModel,
        aux_sizes: &BTreeMap<String, usize>,
        steps: usize,
        budget: u64,
    ) -> Result<Self> {
        let thm = theorem(id);
        for (name, &s) in aux_sizes {
            let known = thm.variables.contains(&name.as_str()) || (thm.quantized && name == "Yhat1");
            if !known || name == "X" || name == "X1" {
                return Err(Error::Usage(format!("{id} has no auxiliary named {name}")));
            }
            if s == 0 || s > MAX_AUX_SIZE {
                return Err(Error::Usage(format!(
                    "auxiliary {name} has size {s}; sizes must be in 1..={MAX_AUX_SIZE}"
                )));
            }
        }
        let size_of = |v: &str| match v {
            "X" => model.x_size(),
            "X1" => model.x1_size(),
            other => aux_sizes.get(other).copied().unwrap_or(1),
        };
        let axes: Vec<Axis> = thm.variables.iter().map(|v| Axis::new(*v, size_of(v))).collect();
        let pos = |v: &str| {
            thm.variables
                .iter()
                .position(|x| *x == v)
                .expect("pattern uses declared variables")
        };
        let mut slots: Vec<Slot> = thm
            .pattern
            .iter()
            .map(|(t, g)| {
                let targets: Vec<usize> = t.iter().map(|v| pos(v)).collect();
                let given: Vec<usize> = g.iter().map(|v| pos(v)).collect();
                Slot {
                    cells: targets.iter().map(|&k| axes[k].size).product(),
                    configs: given.iter().map(|&k| axes[k].size).product(),
                    targets,
                    given,
                }
            })
            .collect();
        let quantizer = if thm.quantized {
            let yh = aux_sizes.get("Yhat1").copied().unwrap_or(1);
            slots.push(Slot {
                targets: Vec::new(),
                given: Vec::new(),
                configs: model.y1_size() * model.x1_size(),
                cells: yh,
            });
            Some((slots.len() - 1, model.y1_size(), model.x1_size(), yh))
        } else {
            None
        };
        let count = |cells: usize| {
            if steps <= 1 {
                1.0
            } else {
                binomial(steps - 1 + cells - 1, cells - 1)
            }
        };
        let total: f64 = slots.iter().map(|s| count(s.cells).powi(s.configs as i32)).product();
        if total > budget as f64 {
            return Err(Error::BudgetExceeded {
                estimated: total,
                budget,
            });
        }
        let mut lattices = BTreeMap::new();
        let mut radix = Vec::new();
        for s in &slots {
            lattices
                .entry(s.cells)
                .or_insert_with(|| simplex_lattice(s.cells, steps));
            radix.extend(std::iter::repeat_n(count(s.cells) as u64, s.configs));
        }
        Ok(Self {
            axes,
            slots,
            lattices,
            quantizer,
            radix,
            total,
        })
    }

    /// Decodes a mixed-radix index into one lattice choice per (slot, config).
    fn decode(&self, mut index: u64) -> Vec<usize> {
        let mut out = vec![0usize; self.radix.len()];
        for k in (0..self.radix.len()).rev() {
            out[k] = (index % self.radix[k]) as usize;
            index /= self.radix[k];
        }
        out
    }

    fn coupling(&self, id: TheoremId, index: u64) -> Result<AuxiliaryCoupling> {
        let choice = self.decode(index);
        let mut offsets = Vec::with_capacity(self.slots.len());
        let mut at = 0;
        for s in &self.slots {
            offsets.push(at);
            at += s.configs;
        }
        let sizes: Vec<usize> = self.axes.iter().map(|a| a.size).collect();
        let mixed = |vars: &[usize], idx: &[usize]| vars.iter().fold(0usize, |acc, &k| acc * sizes[k] + idx[k]);
        let input_slots = self.slots.len() - usize::from(self.quantizer.is_some());
        let mut probs = Vec::with_capacity(sizes.iter().product());
        for_each_index(&sizes, |idx| {
            let mut p = 1.0;
            for (s, slot) in self.slots[..input_slots].iter().enumerate() {
                let row = &self.lattices[&slot.cells][choice[offsets[s] + mixed(&slot.given, idx)]];
                p *= row[mixed(&slot.targets, idx)];
            }
            probs.push(p);
        });
        let total: f64 = probs.iter().sum();
        probs.iter_mut().for_each(|p| *p /= total);
        let input = JointPmf::new(self.axes.clone(), probs)?;
        let quantizer = match self.quantizer {
            None => None,
            Some((s, y1s, x1s, yh)) => {
                let lattice = &self.lattices[&yh];
                let mut table = Vec::with_capacity(y1s * x1s * yh);
                for cfg in 0..y1s * x1s {
                    table.extend_from_slice(&lattice[choice[offsets[s] + cfg]]);
                }
                Some(Quantizer::new(y1s, x1s, yh, table)?)
            }
        };
        AuxiliaryCoupling::new(id, input, quantizer)
    }
}

/// Searches couplings of theorem `id` on a simplex grid that respects its
/// factorization and returns the best secrecy-slice point along `objective`.
///
/// `grid_steps == 1` evaluates only the uniform coupling; `k >= 2` uses the
/// lattice with spacing `1/(k-1)` for every conditional factor. Auxiliaries
/// absent from `aux_sizes` have a single symbol.
pub fn brute_force_best(
    model: &DmcModel,
    aux_sizes: &BTreeMap<String, usize>,
    grid_steps: usize,
    id: TheoremId,
    objective: [f64; 3],
    opts: &SearchOptions,
) -> Result<SearchResult> {
    if grid_steps == 0 {
        return Err(Error::Usage("grid_steps must be at least 1".into()));
    }
    let space = Space::new(id, model, aux_sizes, grid_steps, opts.budget)?;
    let n = space.total as u64;
    let best = (0..n)
        .into_par_iter()
        .map(|i| -> Result<(u64, Extreme)> {
            let c = space.coupling(id, i)?;
            let values = TermValues::compute(id, model, &c, opts.eval.factorization_tol)?;
            let x = TheoremInstance::from_values(id, &values, &opts.eval)?.extremes(objective)?;
            Ok((i, x))
        })
        .try_reduce_with(|a, b| Ok(if prefer(&b, &a) { b } else { a }))
        .expect("search space is non-empty")?;
    Ok(SearchResult {
        coupling: space.coupling(id, best.0)?,
        best: best.1,
        evaluated: n,
    })
}

/// Total order used to merge worker results: non-empty slices first, then
/// objective, then lexicographic rates, then the smaller grid index.
fn prefer(a: &(u64, Extreme), b: &(u64, Extreme)) -> bool {
    let (ia, xa) = a;
    let (ib, xb) = b;
    let key = |x: &Extreme| (!x.empty_interior, x.objective);
    let (ea, va) = key(xa);
    let (eb, vb) = key(xb);
    if ea != eb {
        return ea;
    }
    match va.total_cmp(&vb) {
        std::cmp::Ordering::Greater => return true,
        std::cmp::Ordering::Less => return false,
        _ => {}
    }
    for (p, q) in xa.rates.rates().iter().zip(xb.rates.rates()) {
        match p.total_cmp(&q) {
            std::cmp::Ordering::Greater => return true,
            std::cmp::Ordering::Less => return false,
            _ => {}
        }
    }
    ia < ib
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_counts_and_mass() {
        let l = simplex_lattice(3, 5);
        assert_eq!(l.len() as f64, binomial(6, 2));
        for p in &l {
            assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        }
        assert_eq!(simplex_lattice(4, 1), vec![vec![0.25; 4]]);
        assert_eq!(simplex_lattice(1, 7), vec![vec![1.0]]);
    }

    fn noisy_eavesdropper() -> DmcModel {
        DmcModel::from_fn([2, 1, 2, 1, 2], |x, _, y, _, z| {
            let py = if y == x { 0.9 } else { 0.1 };
            py * 0.5 * f64::from(z < 2)
        })
        .unwrap()
    }

    #[test]
    fn budget_is_enforced() {
        let aux = BTreeMap::from([("V1".to_string(), 3), ("V2".to_string(), 3), ("U".to_string(), 3)]);
        let err = brute_force_best(
            &noisy_eavesdropper(),
            &aux,
            11,
            TheoremId::new(2).unwrap(),
            [0.0, 1.0, 0.0],
            &SearchOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { estimated, .. } if estimated > 1e7));
    }

    #[test]
    fn rejects_oversized_or_unknown_auxiliaries() {
        let id = TheoremId::new(2).unwrap();
        let m = noisy_eavesdropper();
        let big = BTreeMap::from([("V1".to_string(), 4)]);
        assert!(matches!(
            brute_force_best(&m, &big, 2, id, [0., 1., 0.], &Default::default()),
            Err(Error::Usage(_))
        ));
        let unknown = BTreeMap::from([("V".to_string(), 2)]);
        assert!(matches!(
            brute_force_best(&m, &unknown, 2, id, [0., 1., 0.], &Default::default()),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            brute_force_best(&m, &BTreeMap::new(), 0, id, [0., 1., 0.], &Default::default()),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn search_is_deterministic_and_finds_positive_secrecy() {
        let id = TheoremId::new(2).unwrap();
        let aux = BTreeMap::from([("V1".to_string(), 2)]);
        let m = noisy_eavesdropper();
        let a = brute_force_best(&m, &aux, 3, id, [0.0, 1.0, 0.0], &Default::default()).unwrap();
        let b = brute_force_best(&m, &aux, 3, id, [0.0, 1.0, 0.0], &Default::default()).unwrap();
        assert_eq!(a, b);
        assert!(a.best.objective > 0.5);
        assert!(a.coupling.check_for(id, 1e-10).is_ok());
    }
}
