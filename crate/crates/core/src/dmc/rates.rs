use serde::{Deserialize, Serialize};

use super::catalog::MessageModel;
use crate::{Error, Result};

/// A rate point `(R0, R1, R2, Re1, Re2)` in bits per channel use.
///
/// For the single-confidential-message bounds the equivocation `Re` is
/// stored in `re1` and `r2`, `re2` stay zero.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RateTuple {
    #[serde(default)]
    pub r0: f64,
    #[serde(default)]
    pub r1: f64,
    #[serde(default)]
    pub r2: f64,
    #[serde(default)]
    pub re1: f64,
    #[serde(default)]
    pub re2: f64,
}

impl RateTuple {
    pub fn new(r0: f64, r1: f64, r2: f64, re1: f64, re2: f64) -> Self {
        Self { r0, r1, r2, re1, re2 }
    }

    /// Perfect secrecy point: every equivocation equals its rate.
    pub fn secrecy(r0: f64, r1: f64, r2: f64) -> Self {
        Self::new(r0, r1, r2, r1, r2)
    }

    pub fn as_array(&self) -> [f64; 5] {
        [self.r0, self.r1, self.r2, self.re1, self.re2]
    }

    pub fn rates(&self) -> [f64; 3] {
        [self.r0, self.r1, self.r2]
    }

    /// Checks nonnegativity, `Re <= R`, and that components absent from
    /// `model` are zero.
    pub fn check_admissible(&self, model: MessageModel) -> Result<()> {
        const NAMES: [&str; 5] = ["R0", "R1", "R2", "Re1", "Re2"];
        for (name, v) in NAMES.iter().zip(self.as_array()) {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Validation(format!("rate {name} = {v} must be finite and >= 0")));
            }
        }
        if self.re1 > self.r1 {
            return Err(Error::Validation(format!(
                "admissibility Re1 <= R1 violated ({} > {})",
                self.re1, self.r1
            )));
        }
        if self.re2 > self.r2 {
            return Err(Error::Validation(format!(
                "admissibility Re2 <= R2 violated ({} > {})",
                self.re2, self.r2
            )));
        }
        let unused: &[usize] = match model {
            MessageModel::TwoConfidentialCommon => &[],
            MessageModel::TwoConfidential => &[0],
            MessageModel::OneConfidentialCommon => &[2, 4],
        };
        let a = self.as_array();
        for &k in unused {
            if a[k] != 0.0 {
                return Err(Error::Validation(format!(
                    "{} must be 0 for this message model",
                    NAMES[k]
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility() {
        let m = MessageModel::TwoConfidentialCommon;
        assert!(RateTuple::secrecy(0.1, 0.2, 0.3).check_admissible(m).is_ok());
        let e = RateTuple::new(0., 0.1, 0., 0.2, 0.).check_admissible(m).unwrap_err();
        assert!(e.to_string().contains("Re1 <= R1"));
        assert!(RateTuple::new(-1., 0., 0., 0., 0.).check_admissible(m).is_err());
        assert!(RateTuple::new(0.1, 0., 0., 0., 0.)
            .check_admissible(MessageModel::TwoConfidential)
            .is_err());
        assert!(RateTuple::new(0., 0., 0.1, 0., 0.)
            .check_admissible(MessageModel::OneConfidentialCommon)
            .is_err());
    }
}
