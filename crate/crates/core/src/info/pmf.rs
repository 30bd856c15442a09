use super::{plogp_sum, validate_masses};
use crate::Result;

/// A validated probability mass function over `0..len()`.
#[derive(Debug, Clone, PartialEq)]
pub struct FinitePmf {
    probs: Vec<f64>,
}

impl FinitePmf {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(crate::Error::Validation("pmf has empty support".into()));
        }
        validate_masses(&probs, "pmf")?;
        Ok(Self { probs })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Self::new(vec![1.0 / n as f64; n])
    }

    pub fn support_size(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

/// Shannon entropy in bits.
pub fn entropy(p: &FinitePmf) -> f64 {
    plogp_sum(&p.probs)
}
