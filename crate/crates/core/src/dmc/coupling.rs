use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::catalog::{theorem, TheoremId};
use super::model::DmcModel;
use crate::info::joint::{flatten, nest};
#[cfg(test)]
use crate::info::FACTORIZATION_TOLERANCE;
use crate::info::{check_factorization, validate_masses, Axis, Factor, FactorizationPattern, JointPmf};
use crate::{Error, Result};

/// Relay quantizer `p(yhat1 | y1, x1)`, row-major over `[y1][x1][yhat1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Quantizer {
    y1_size: usize,
    x1_size: usize,
    yhat1_size: usize,
    table: Vec<f64>,
}

impl Quantizer {
    pub fn new(y1_size: usize, x1_size: usize, yhat1_size: usize, table: Vec<f64>) -> Result<Self> {
        if y1_size == 0 || x1_size == 0 || yhat1_size == 0 {
            return Err(Error::Validation("quantizer alphabet sizes must be positive".into()));
        }
        if table.len() != y1_size * x1_size * yhat1_size {
            return Err(Error::Validation(format!(
                "quantizer has {} cells, expected {}",
                table.len(),
                y1_size * x1_size * yhat1_size
            )));
        }
        for y1 in 0..y1_size {
            for x1 in 0..x1_size {
                let at = (y1 * x1_size + x1) * yhat1_size;
                validate_masses(
                    &table[at..at + yhat1_size],
                    &format!("quantizer slice y1={y1}, x1={x1}"),
                )?;
            }
        }
        Ok(Self {
            y1_size,
            x1_size,
            yhat1_size,
            table,
        })
    }

    /// Deterministic `yhat1 = y1`.
    pub fn identity(y1_size: usize, x1_size: usize) -> Self {
        let mut t = vec![0.0; y1_size * x1_size * y1_size];
        for y1 in 0..y1_size {
            for x1 in 0..x1_size {
                t[(y1 * x1_size + x1) * y1_size + y1] = 1.0;
            }
        }
        Self::new(y1_size, x1_size, y1_size, t).expect("identity quantizer is valid")
    }

    pub fn yhat1_size(&self) -> usize {
        self.yhat1_size
    }

    pub fn prob(&self, y1: usize, x1: usize, yhat1: usize) -> f64 {
        self.table[(y1 * self.x1_size + x1) * self.yhat1_size + yhat1]
    }
}

/// Joint law of the auxiliaries and channel inputs, plus the relay
/// quantizer for compress-forward bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct AuxiliaryCoupling {
    pub theorem: TheoremId,
    pub input: JointPmf,
    pub quantizer: Option<Quantizer>,
}

impl AuxiliaryCoupling {
    pub fn new(theorem: TheoremId, input: JointPmf, quantizer: Option<Quantizer>) -> Result<Self> {
        let c = Self {
            theorem,
            input,
            quantizer,
        };
        c.check_shape(theorem)?;
        Ok(c)
    }

    /// Checks that the variables (and quantizer presence) match what `id`
    /// needs. Does not check the factorization.
    pub fn check_shape(&self, id: TheoremId) -> Result<()> {
        let t = theorem(id);
        let mut have: Vec<&str> = self.input.axes().iter().map(|a| a.name.as_str()).collect();
        have.sort_unstable();
        let mut want = t.variables.to_vec();
        want.sort_unstable();
        if have != want {
            return Err(Error::Usage(format!(
                "{id} needs coupling variables {want:?}, coupling has {have:?}"
            )));
        }
        match (&self.quantizer, t.quantized) {
            (None, true) => Err(Error::Usage(format!("{id} needs a quantizer p(yhat1|y1,x1)"))),
            (Some(_), false) => Err(Error::Usage(format!("{id} takes no quantizer"))),
            _ => Ok(()),
        }
    }

    /// The theorem's product form as a checkable pattern.
    pub fn pattern(id: TheoremId) -> FactorizationPattern {
        FactorizationPattern::new(theorem(id).pattern.iter().map(|(t, g)| Factor::new(t, g)).collect())
    }

    /// Verifies shape and factorization for `id` at `tol`.
    pub fn check_for(&self, id: TheoremId, tol: f64) -> Result<()> {
        self.check_shape(id)?;
        let r = check_factorization(&self.input, &Self::pattern(id), tol)?;
        if !r.pass {
            return Err(Error::Factorization {
                what: format!("coupling does not factor as {id} requires"),
                deviation: r.max_deviation,
            });
        }
        Ok(())
    }

    /// Composes the coupling with the channel: axes are the coupling axes
    /// followed by `Y`, `Y1`, `Z` and, when quantized, `Yhat1`.
    pub fn full_joint(&self, model: &DmcModel) -> Result<JointPmf> {
        let ix = self.axis("X")?;
        let ix1 = self.axis("X1")?;
        let [xs, x1s, ys, y1s, zs] = model.sizes();
        if self.input.axes()[ix].size != xs || self.input.axes()[ix1].size != x1s {
            return Err(Error::Usage(format!(
                "alphabet mismatch: coupling has |X|={}, |X1|={}, channel has {xs}, {x1s}",
                self.input.axes()[ix].size,
                self.input.axes()[ix1].size
            )));
        }
        if let Some(q) = &self.quantizer {
            if q.y1_size != y1s || q.x1_size != x1s {
                return Err(Error::Usage(format!(
                    "alphabet mismatch: quantizer is over |Y1|={}, |X1|={}, channel has {y1s}, {x1s}",
                    q.y1_size, q.x1_size
                )));
            }
        }
        let mut axes = self.input.axes().to_vec();
        axes.extend([Axis::new("Y", ys), Axis::new("Y1", y1s), Axis::new("Z", zs)]);
        let qs = self.quantizer.as_ref().map_or(1, |q| q.yhat1_size);
        if let Some(q) = &self.quantizer {
            axes.push(Axis::new("Yhat1", q.yhat1_size));
        }
        let out = ys * y1s * zs * qs;
        let mut probs = Vec::with_capacity(self.input.probs().len() * out);
        let sizes = self.input.sizes();
        let mut idx = vec![0usize; sizes.len()];
        for &p in self.input.probs() {
            let (x, x1) = (idx[ix], idx[ix1]);
            let w = model.slice(x, x1);
            for y in 0..ys {
                for y1 in 0..y1s {
                    for z in 0..zs {
                        let pw = p * w[(y * y1s + y1) * zs + z];
                        match &self.quantizer {
                            None => probs.push(pw),
                            Some(q) => {
                                for yh in 0..qs {
                                    probs.push(pw * q.prob(y1, x1, yh));
                                }
                            }
                        }
                    }
                }
            }
            for k in (0..sizes.len()).rev() {
                idx[k] += 1;
                if idx[k] < sizes[k] {
                    break;
                }
                idx[k] = 0;
            }
        }
        renormalized(axes, probs)
    }

    fn axis(&self, name: &str) -> Result<usize> {
        self.input
            .axis_index(name)
            .ok_or_else(|| Error::Usage(format!("coupling lacks input variable {name}")))
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.input.to_json();
        let obj = v.as_object_mut().expect("joint json is an object");
        obj.insert("theorem".into(), Value::String(self.theorem.to_string()));
        if let Some(q) = &self.quantizer {
            obj.insert(
                "quantizer".into(),
                serde_json::to_value(QuantizerWire {
                    yhat1_size: q.yhat1_size,
                    probs: nest(&q.table, &[q.y1_size, q.x1_size, q.yhat1_size]),
                })
                .expect("quantizer serializes"),
            );
        }
        v
    }

    /// Parses the coupling JSON. Quantizer dimensions for `y1` and `x1` are
    /// read from the nested array shape.
    pub fn from_json(v: &Value) -> Result<Self> {
        let w: CouplingWire = serde_json::from_value(v.clone())?;
        let input = JointPmf::from_wire(w.axes, &w.probs)?;
        let quantizer = match w.quantizer {
            None => None,
            Some(q) => {
                let y1 = q.probs.as_array().map(Vec::len).unwrap_or(0);
                let x1 = q.probs.get(0).and_then(Value::as_array).map(Vec::len).unwrap_or(0);
                if y1 == 0 || x1 == 0 || q.yhat1_size == 0 {
                    return Err(Error::Parse(
                        "quantizer.probs must be a non-empty [y1][x1][yhat1] array".into(),
                    ));
                }
                let cells = y1.checked_mul(x1).and_then(|c| c.checked_mul(q.yhat1_size));
                if cells.is_none_or(|c| c > 1 << 20) {
                    return Err(Error::Validation("quantizer table too large".into()));
                }
                let flat = flatten(&q.probs, &[y1, x1, q.yhat1_size], "quantizer.probs")?;
                Some(Quantizer::new(y1, x1, q.yhat1_size, flat)?)
            }
        };
        Self::new(w.theorem, input, quantizer)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str::<Value>(s)?)
    }
}

/// Rescales a product of validated tables back to unit mass.
fn renormalized(axes: Vec<Axis>, mut probs: Vec<f64>) -> Result<JointPmf> {
    let total: f64 = probs.iter().sum();
    if total > 0.0 && (total - 1.0).abs() < 1e-9 {
        for p in &mut probs {
            *p /= total;
        }
    }
    JointPmf::new(axes, probs)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CouplingWire {
    theorem: TheoremId,
    axes: Vec<Axis>,
    probs: Value,
    #[serde(default)]
    quantizer: Option<QuantizerWire>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuantizerWire {
    yhat1_size: usize,
    probs: Value,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: u8) -> TheoremId {
        TheoremId::new(n).unwrap()
    }

    fn uniform(names: &[&str], size: usize) -> JointPmf {
        let axes: Vec<Axis> = names.iter().map(|n| Axis::new(*n, size)).collect();
        let cells = size.pow(names.len() as u32);
        JointPmf::new(axes, vec![1.0 / cells as f64; cells]).unwrap()
    }

    fn copy_channel() -> DmcModel {
        DmcModel::from_fn([2, 2, 2, 2, 2], |x, x1, y, y1, z| {
            f64::from(y == x && y1 == x && z == x1)
        })
        .unwrap()
    }

    #[test]
    fn shape_is_checked_against_theorem() {
        let j = uniform(&["U", "V1", "V2", "X", "X1"], 2);
        assert!(AuxiliaryCoupling::new(t(2), j.clone(), None).is_ok());
        assert!(matches!(
            AuxiliaryCoupling::new(t(1), j.clone(), None),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            AuxiliaryCoupling::new(t(4), j.clone(), None),
            Err(Error::Usage(_))
        ));
        let q = Quantizer::identity(2, 2);
        assert!(AuxiliaryCoupling::new(t(4), j, Some(q)).is_ok());
    }

    #[test]
    fn factorization_is_enforced() {
        // X1 = X violates the independence of X1 required by the noise-forward bound.
        let axes: Vec<Axis> = ["U", "V1", "V2", "X", "X1"].iter().map(|n| Axis::new(*n, 2)).collect();
        let j = JointPmf::from_fn(axes, |i| if i[3] == i[4] { 1.0 / 16.0 } else { 0.0 }).unwrap();
        let c = AuxiliaryCoupling::new(t(3), j, None).unwrap();
        assert!(c.check_for(t(2), FACTORIZATION_TOLERANCE).is_ok());
        let err = c.check_for(t(3), FACTORIZATION_TOLERANCE).unwrap_err();
        assert!(matches!(err, Error::Factorization { deviation, .. } if deviation > 0.01));
    }

    #[test]
    fn full_joint_composes_channel_and_quantizer() {
        let j = uniform(&["U", "V1", "V2", "X", "X1"], 2);
        let c = AuxiliaryCoupling::new(t(4), j, Some(Quantizer::identity(2, 2))).unwrap();
        let full = c.full_joint(&copy_channel()).unwrap();
        let names: Vec<&str> = full.axes().iter().map(|a| a.name.as_str()).collect();
        assert_eq!(names, ["U", "V1", "V2", "X", "X1", "Y", "Y1", "Z", "Yhat1"]);
        assert!((full.cond_mutual_info(&["X"], &["Yhat1"], &[] as &[&str]).unwrap() - 1.0).abs() < 1e-12);
        assert!((full.cond_mutual_info(&["X1"], &["Z"], &[] as &[&str]).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn alphabet_mismatch_is_usage_error() {
        let axes = vec![
            Axis::new("U", 1),
            Axis::new("V1", 1),
            Axis::new("V2", 1),
            Axis::new("X", 3),
            Axis::new("X1", 2),
        ];
        let j = JointPmf::new(axes, vec![1.0 / 6.0; 6]).unwrap();
        let c = AuxiliaryCoupling::new(t(2), j, None).unwrap();
        assert!(matches!(c.full_joint(&copy_channel()), Err(Error::Usage(_))));
    }

    #[test]
    fn json_round_trip() {
        let j = uniform(&["U", "V1", "V2", "X", "X1"], 2);
        let c = AuxiliaryCoupling::new(t(8), j, Some(Quantizer::identity(2, 2))).unwrap();
        let back = AuxiliaryCoupling::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        assert!(AuxiliaryCoupling::from_json_str("{}").is_err());
    }
}
