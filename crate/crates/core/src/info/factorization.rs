use serde::{Deserialize, Serialize};

use super::joint::for_each_index;
use super::JointPmf;
use crate::{Error, Result};

/// One conditional factor `p(targets | given)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub targets: Vec<String>,
    #[serde(default)]
    pub given: Vec<String>,
}

impl Factor {
    pub fn new(targets: &[&str], given: &[&str]) -> Self {
        Self {
            targets: targets.iter().map(|s| s.to_string()).collect(),
            given: given.iter().map(|s| s.to_string()).collect(),
        }
    }
}

/// A claimed product form of a joint law. Every variable is the target of
/// exactly one factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationPattern {
    pub factors: Vec<Factor>,
}

impl FactorizationPattern {
    pub fn new(factors: Vec<Factor>) -> Self {
        Self { factors }
    }

    /// The tautological pattern: a single unconditioned factor over everything.
    pub fn full_chain<S: AsRef<str>>(vars: &[S]) -> Self {
        let targets: Vec<&str> = vars.iter().map(|s| s.as_ref()).collect();
        Self::new(vec![Factor::new(&targets, &[])])
    }

    /// All target variables, in factor order.
    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.factors.iter().flat_map(|f| f.targets.iter().map(String::as_str))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorizationReport {
    pub max_deviation: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Rebuilds `j` as the product of the pattern's conditionals (each computed
/// from `j`'s own marginals) and reports the largest cellwise discrepancy.
/// Joint and conditioning marginals of one factor, each with its strides.
type MarginalPair = (Vec<f64>, Vec<usize>, Vec<f64>, Vec<usize>);

pub fn check_factorization(j: &JointPmf, pattern: &FactorizationPattern, tol: f64) -> Result<FactorizationReport> {
    let n = j.axes().len();
    let mut covered = 0u32;
    let mut masks = Vec::with_capacity(pattern.factors.len());
    for f in &pattern.factors {
        if f.targets.is_empty() {
            return Err(Error::Usage("factor with no target variables".into()));
        }
        let t = j.mask_of(&f.targets)?;
        let g = j.mask_of(&f.given)?;
        if t & g != 0 {
            return Err(Error::Usage("factor conditions on one of its own targets".into()));
        }
        if covered & t != 0 {
            return Err(Error::Usage("a variable is the target of more than one factor".into()));
        }
        covered |= t;
        masks.push((t | g, g));
    }
    if covered != (1u32 << n) - 1 {
        let missing: Vec<&str> = j
            .axes()
            .iter()
            .enumerate()
            .filter(|(k, _)| covered & (1 << k) == 0)
            .map(|(_, a)| a.name.as_str())
            .collect();
        return Err(Error::Usage(format!("pattern does not cover axes {missing:?}")));
    }

    let sizes = j.sizes();
    let tables: Vec<MarginalPair> = masks
        .iter()
        .map(|&(joint_mask, given_mask)| {
            (
                j.marginal_mask(joint_mask),
                strides(&sizes, joint_mask),
                j.marginal_mask(given_mask),
                strides(&sizes, given_mask),
            )
        })
        .collect();

    let mut max_dev = 0.0f64;
    let mut flat = 0usize;
    for_each_index(&sizes, |idx| {
        let mut prod = 1.0;
        for (num, ns, den, ds) in &tables {
            let d = den[dot(idx, ds)];
            if d <= 0.0 {
                prod = 0.0;
                break;
            }
            prod *= num[dot(idx, ns)] / d;
        }
        max_dev = max_dev.max((j.probs()[flat] - prod).abs());
        flat += 1;
    });
    Ok(FactorizationReport {
        max_deviation: max_dev,
        tol,
        pass: max_dev <= tol,
    })
}

fn strides(sizes: &[usize], mask: u32) -> Vec<usize> {
    let mut s = vec![0; sizes.len()];
    let mut m = 1;
    for k in (0..sizes.len()).rev() {
        if mask & (1 << k) != 0 {
            s[k] = m;
            m *= sizes[k];
        }
    }
    s
}

fn dot(idx: &[usize], strides: &[usize]) -> usize {
    idx.iter().zip(strides).map(|(i, s)| i * s).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::info::Axis;

    fn two_bits(p: [f64; 4]) -> JointPmf {
        JointPmf::new(vec![Axis::new("X", 2), Axis::new("Y", 2)], p.to_vec()).unwrap()
    }

    fn independence() -> FactorizationPattern {
        FactorizationPattern::new(vec![Factor::new(&["X"], &[]), Factor::new(&["Y"], &[])])
    }

    #[test]
    fn product_passes_independence() {
        let r = check_factorization(&two_bits([0.25; 4]), &independence(), 1e-10).unwrap();
        assert_eq!(r.max_deviation, 0.0);
        assert!(r.pass);
    }

    #[test]
    fn correlated_bits_fail_independence() {
        let r = check_factorization(&two_bits([0.5, 0.0, 0.0, 0.5]), &independence(), 1e-10).unwrap();
        assert!((r.max_deviation - 0.25).abs() < 1e-15);
        assert!(!r.pass);
    }

    #[test]
    fn full_chain_is_tautological() {
        let j = two_bits([0.1, 0.2, 0.3, 0.4]);
        let r = check_factorization(&j, &FactorizationPattern::full_chain(&["X", "Y"]), 1e-10).unwrap();
        assert!(r.max_deviation < 1e-16);
        assert!(r.pass);
        let cond = FactorizationPattern::new(vec![Factor::new(&["X"], &[]), Factor::new(&["Y"], &["X"])]);
        assert!(check_factorization(&j, &cond, 1e-10).unwrap().pass);
    }

    #[test]
    fn mismatched_patterns_are_usage_errors() {
        let j = two_bits([0.25; 4]);
        let missing = FactorizationPattern::new(vec![Factor::new(&["X"], &[])]);
        assert!(matches!(check_factorization(&j, &missing, 1e-10), Err(Error::Usage(_))));
        let unknown = FactorizationPattern::new(vec![Factor::new(&["X", "Y", "Z"], &[])]);
        assert!(matches!(check_factorization(&j, &unknown, 1e-10), Err(Error::Usage(_))));
        let twice = FactorizationPattern::new(vec![Factor::new(&["X", "Y"], &[]), Factor::new(&["Y"], &[])]);
        assert!(matches!(check_factorization(&j, &twice, 1e-10), Err(Error::Usage(_))));
    }
}
