use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::info::joint::{flatten, nest};
use crate::info::validate_masses;
use crate::{Error, Result};

/// Discrete memoryless relay broadcast channel `p(y, y1, z | x, x1)`.
///
/// The transition table is row-major over `[x][x1][y][y1][z]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DmcModel {
    x_size: usize,
    x1_size: usize,
    y_size: usize,
    y1_size: usize,
    z_size: usize,
    transition: Vec<f64>,
}

impl DmcModel {
    /// `sizes` is `[x, x1, y, y1, z]`.
    pub fn new(sizes: [usize; 5], transition: Vec<f64>) -> Result<Self> {
        if let Some(k) = sizes.iter().position(|&s| s == 0) {
            let names = ["x_size", "x1_size", "y_size", "y1_size", "z_size"];
            return Err(Error::Validation(format!("{} must be positive", names[k])));
        }
        let cells: usize = sizes.iter().product();
        if transition.len() != cells {
            return Err(Error::Validation(format!(
                "transition has {} cells, expected {cells}",
                transition.len()
            )));
        }
        let [x_size, x1_size, y_size, y1_size, z_size] = sizes;
        let slice = y_size * y1_size * z_size;
        for x in 0..x_size {
            for x1 in 0..x1_size {
                let at = (x * x1_size + x1) * slice;
                validate_masses(&transition[at..at + slice], &format!("transition slice x={x}, x1={x1}"))?;
            }
        }
        Ok(Self {
            x_size,
            x1_size,
            y_size,
            y1_size,
            z_size,
            transition,
        })
    }

    /// Builds a channel from `f(x, x1, y, y1, z)`.
    pub fn from_fn(sizes: [usize; 5], mut f: impl FnMut(usize, usize, usize, usize, usize) -> f64) -> Result<Self> {
        let mut t = Vec::with_capacity(sizes.iter().product());
        for x in 0..sizes[0] {
            for x1 in 0..sizes[1] {
                for y in 0..sizes[2] {
                    for y1 in 0..sizes[3] {
                        for z in 0..sizes[4] {
                            t.push(f(x, x1, y, y1, z));
                        }
                    }
                }
            }
        }
        Self::new(sizes, t)
    }

    /// `[x, x1, y, y1, z]`.
    pub fn sizes(&self) -> [usize; 5] {
        [self.x_size, self.x1_size, self.y_size, self.y1_size, self.z_size]
    }

    pub fn x_size(&self) -> usize {
        self.x_size
    }

    pub fn x1_size(&self) -> usize {
        self.x1_size
    }

    pub fn y1_size(&self) -> usize {
        self.y1_size
    }

    pub fn prob(&self, x: usize, x1: usize, y: usize, y1: usize, z: usize) -> f64 {
        let idx = (((x * self.x1_size + x1) * self.y_size + y) * self.y1_size + y1) * self.z_size + z;
        self.transition[idx]
    }

    /// The output law for inputs `(x, x1)`, row-major over `[y][y1][z]`.
    pub fn slice(&self, x: usize, x1: usize) -> &[f64] {
        let n = self.y_size * self.y1_size * self.z_size;
        let at = (x * self.x1_size + x1) * n;
        &self.transition[at..at + n]
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(DmcWire {
            x_size: self.x_size,
            x1_size: self.x1_size,
            y_size: self.y_size,
            y1_size: self.y1_size,
            z_size: self.z_size,
            transition: nest(&self.transition, &self.sizes()),
        })
        .expect("channel serializes")
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let w: DmcWire = serde_json::from_value(v.clone())?;
        let sizes = [w.x_size, w.x1_size, w.y_size, w.y1_size, w.z_size];
        if sizes.contains(&0) {
            return Err(Error::Validation("alphabet sizes must be positive".into()));
        }
        let cells = sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s));
        if cells.is_none_or(|c| c > crate::info::joint::MAX_CELLS) {
            return Err(Error::Validation("transition table too large".into()));
        }
        let flat = flatten(&w.transition, &sizes, "transition")?;
        Self::new(sizes, flat)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str::<Value>(s)?)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DmcWire {
    x_size: usize,
    x1_size: usize,
    y_size: usize,
    y1_size: usize,
    z_size: usize,
    transition: Value,
}
