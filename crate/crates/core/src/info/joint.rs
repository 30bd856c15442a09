use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{plogp_sum, validate_masses, MI_ZERO_SNAP};
use crate::{Error, Result};

/// Joint tables may have at most this many axes (axis sets are bitmasks).
pub const MAX_AXES: usize = 24;

/// Largest dense table accepted from serialized input.
pub const MAX_CELLS: usize = 1 << 24;

/// A named random variable with a finite alphabet `0..size`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Axis {
    pub name: String,
    pub size: usize,
}

impl Axis {
    pub fn new(name: impl Into<String>, size: usize) -> Self {
        Self {
            name: name.into(),
            size,
        }
    }
}

/// Dense joint mass table over named axes, stored row-major (the last axis
/// varies fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct JointPmf {
    axes: Vec<Axis>,
    probs: Vec<f64>,
}

impl JointPmf {
    pub fn new(axes: Vec<Axis>, probs: Vec<f64>) -> Result<Self> {
        Self::check_axes(&axes)?;
        let cells: usize = axes.iter().map(|a| a.size).product();
        if cells != probs.len() {
            return Err(Error::Validation(format!(
                "table has {} cells but axis sizes imply {cells}",
                probs.len()
            )));
        }
        validate_masses(&probs, "joint pmf")?;
        Ok(Self { axes, probs })
    }

    /// Builds a table by evaluating `f` on every multi-index.
    pub fn from_fn(axes: Vec<Axis>, mut f: impl FnMut(&[usize]) -> f64) -> Result<Self> {
        Self::check_axes(&axes)?;
        let sizes: Vec<usize> = axes.iter().map(|a| a.size).collect();
        let mut probs = Vec::with_capacity(sizes.iter().product());
        for_each_index(&sizes, |idx| probs.push(f(idx)));
        Self::new(axes, probs)
    }

    fn check_axes(axes: &[Axis]) -> Result<()> {
        if axes.len() > MAX_AXES {
            return Err(Error::Validation(format!(
                "{} axes exceeds the supported maximum of {MAX_AXES}",
                axes.len()
            )));
        }
        for (i, a) in axes.iter().enumerate() {
            if a.size == 0 {
                return Err(Error::Validation(format!("axis {} has size 0", a.name)));
            }
            if a.name.is_empty() {
                return Err(Error::Validation(format!("axis {i} has an empty name")));
            }
            if axes[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::Validation(format!("duplicate axis name {}", a.name)));
            }
        }
        Ok(())
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.size).collect()
    }

    pub fn axis_index(&self, name: &str) -> Option<usize> {
        self.axes.iter().position(|a| a.name == name)
    }

    pub fn axis_size(&self, name: &str) -> Option<usize> {
        self.axis_index(name).map(|i| self.axes[i].size)
    }

    /// Mass of a single cell.
    pub fn get(&self, idx: &[usize]) -> f64 {
        let mut flat = 0;
        for (a, &i) in self.axes.iter().zip(idx) {
            flat = flat * a.size + i;
        }
        self.probs[flat]
    }

    /// Resolves labels to a bitmask of axis positions.
    pub fn mask_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<u32> {
        let mut mask = 0u32;
        for l in labels {
            let l = l.as_ref();
            let i = self
                .axis_index(l)
                .ok_or_else(|| Error::Usage(format!("unknown variable label {l}")))?;
            if mask & (1 << i) != 0 {
                return Err(Error::Usage(format!("variable {l} listed twice")));
            }
            mask |= 1 << i;
        }
        Ok(mask)
    }

    /// Marginal table over the axes in `mask`, in axis order.
    pub fn marginal_mask(&self, mask: u32) -> Vec<f64> {
        let n = self.axes.len();
        let mut mstride = vec![0usize; n];
        let mut m = 1usize;
        for k in (0..n).rev() {
            if mask & (1 << k) != 0 {
                mstride[k] = m;
                m *= self.axes[k].size;
            }
        }
        let mut out = vec![0.0; m];
        let mut idx = vec![0usize; n];
        let mut mi = 0usize;
        for &p in &self.probs {
            out[mi] += p;
            for k in (0..n).rev() {
                idx[k] += 1;
                mi += mstride[k];
                if idx[k] < self.axes[k].size {
                    break;
                }
                mi -= mstride[k] * self.axes[k].size;
                idx[k] = 0;
            }
        }
        out
    }

    /// Marginal distribution over the named axes (kept in this table's order).
    pub fn marginal<S: AsRef<str>>(&self, labels: &[S]) -> Result<JointPmf> {
        let mask = self.mask_of(labels)?;
        let axes = self
            .axes
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, a)| a.clone())
            .collect();
        Ok(JointPmf {
            axes,
            probs: self.marginal_mask(mask),
        })
    }

    /// Joint entropy of the axes in `mask`.
    pub fn entropy_mask(&self, mask: u32) -> f64 {
        if mask == 0 {
            return 0.0;
        }
        plogp_sum(&self.marginal_mask(mask))
    }

    /// I(A;B|C) in bits.
    ///
    /// The three label sets must be pairwise disjoint and A, B non-empty.
    pub fn cond_mutual_info<S: AsRef<str>>(&self, a: &[S], b: &[S], c: &[S]) -> Result<f64> {
        let (ma, mb, mc) = self.cmi_masks(a, b, c)?;
        Ok(cmi_from_entropies(|m| self.entropy_mask(m), ma, mb, mc))
    }

    pub(crate) fn cmi_masks<S: AsRef<str>>(&self, a: &[S], b: &[S], c: &[S]) -> Result<(u32, u32, u32)> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::Usage("I(A;B|C) needs non-empty A and B".into()));
        }
        let (ma, mb, mc) = (self.mask_of(a)?, self.mask_of(b)?, self.mask_of(c)?);
        if ma & mb != 0 || ma & mc != 0 || mb & mc != 0 {
            return Err(Error::Usage(
                "variable sets of I(A;B|C) must be pairwise disjoint".into(),
            ));
        }
        Ok((ma, mb, mc))
    }

    /// Relabels the symbols of one axis: new symbol `perm[s]` carries the mass of old `s`.
    pub fn permute_axis(&self, name: &str, perm: &[usize]) -> Result<JointPmf> {
        let k = self
            .axis_index(name)
            .ok_or_else(|| Error::Usage(format!("unknown variable label {name}")))?;
        let size = self.axes[k].size;
        let mut seen = vec![false; size];
        if perm.len() != size || perm.iter().any(|&s| s >= size || std::mem::replace(&mut seen[s], true)) {
            return Err(Error::Usage(format!("not a permutation of 0..{size}")));
        }
        let mut inv = vec![0; size];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let mut src = vec![0usize; self.axes.len()];
        Self::from_fn(self.axes.clone(), |idx| {
            src.copy_from_slice(idx);
            src[k] = inv[idx[k]];
            self.get(&src)
        })
    }

    pub fn to_json(&self) -> Value {
        let wire = JointWire {
            axes: self.axes.clone(),
            probs: nest(&self.probs, &self.sizes()),
        };
        serde_json::to_value(wire).expect("joint pmf serializes")
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let wire: JointWire = serde_json::from_value(v.clone())?;
        Self::from_wire(wire.axes, &wire.probs)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str::<Value>(s)?)
    }

    pub(crate) fn from_wire(axes: Vec<Axis>, probs: &Value) -> Result<Self> {
        Self::check_axes(&axes)?;
        let sizes: Vec<usize> = axes.iter().map(|a| a.size).collect();
        let flat = flatten(probs, &sizes, "probs")?;
        Self::new(axes, flat)
    }
}

#[derive(Serialize, Deserialize)]
struct JointWire {
    axes: Vec<Axis>,
    probs: Value,
}

/// Calls `f` on every multi-index of a row-major table with the given sizes.
pub(crate) fn for_each_index(sizes: &[usize], mut f: impl FnMut(&[usize])) {
    if sizes.contains(&0) {
        return;
    }
    let n = sizes.len();
    let mut idx = vec![0usize; n];
    loop {
        f(&idx);
        let mut k = n;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < sizes[k] {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Nested JSON arrays for a row-major table.
pub(crate) fn nest(flat: &[f64], sizes: &[usize]) -> Value {
    match sizes.split_first() {
        None => serde_json::json!(flat[0]),
        Some((&n, rest)) => {
            let inner: usize = rest.iter().product();
            Value::Array((0..n).map(|i| nest(&flat[i * inner..(i + 1) * inner], rest)).collect())
        }
    }
}

/// Inverse of [`nest`], checking the shape against `sizes`.
pub(crate) fn flatten(v: &Value, sizes: &[usize], path: &str) -> Result<Vec<f64>> {
    let cells = sizes
        .iter()
        .try_fold(1usize, |acc, &s| acc.checked_mul(s))
        .filter(|&c| c <= MAX_CELLS)
        .ok_or_else(|| Error::Validation(format!("{path}: table exceeds {MAX_CELLS} cells")))?;
    let mut out = Vec::with_capacity(cells);
    flatten_into(v, sizes, path, &mut out)?;
    Ok(out)
}

fn flatten_into(v: &Value, sizes: &[usize], path: &str, out: &mut Vec<f64>) -> Result<()> {
    match sizes.split_first() {
        None => {
            let x = v
                .as_f64()
                .ok_or_else(|| Error::Parse(format!("{path}: expected a number")))?;
            out.push(x);
        }
        Some((&n, rest)) => {
            let arr = v
                .as_array()
                .ok_or_else(|| Error::Parse(format!("{path}: expected an array of length {n}")))?;
            if arr.len() != n {
                return Err(Error::Parse(format!(
                    "{path}: expected length {n}, found {}",
                    arr.len()
                )));
            }
            for (i, x) in arr.iter().enumerate() {
                flatten_into(x, rest, &format!("{path}[{i}]"), out)?;
            }
        }
    }
    Ok(())
}

pub(crate) fn cmi_from_entropies(mut h: impl FnMut(u32) -> f64, a: u32, b: u32, c: u32) -> f64 {
    let v = h(a | c) + h(b | c) - h(a | b | c) - h(c);
    if v.abs() <= MI_ZERO_SNAP {
        0.0
    } else {
        v
    }
}

/// Memoises marginal entropies of one joint table, for evaluators that
/// query many overlapping information terms.
pub struct EntropyCache<'a> {
    joint: &'a JointPmf,
    cache: HashMap<u32, f64>,
}

impl<'a> EntropyCache<'a> {
    pub fn new(joint: &'a JointPmf) -> Self {
        Self {
            joint,
            cache: HashMap::new(),
        }
    }

    pub fn joint(&self) -> &JointPmf {
        self.joint
    }

    pub fn entropy_mask(&mut self, mask: u32) -> f64 {
        let joint = self.joint;
        *self.cache.entry(mask).or_insert_with(|| joint.entropy_mask(mask))
    }

    pub fn cond_mutual_info<S: AsRef<str>>(&mut self, a: &[S], b: &[S], c: &[S]) -> Result<f64> {
        let (ma, mb, mc) = self.joint.cmi_masks(a, b, c)?;
        Ok(cmi_from_entropies(|m| self.entropy_mask(m), ma, mb, mc))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(name: &str) -> Axis {
        Axis::new(name, 2)
    }

    #[test]
    fn independent_bits_have_zero_information() {
        let j = JointPmf::new(vec![bits("A"), bits("B")], vec![0.25; 4]).unwrap();
        assert_eq!(j.cond_mutual_info(&["A"], &["B"], &[] as &[&str]).unwrap(), 0.0);
    }

    #[test]
    fn identical_bits_share_one_bit() {
        let j = JointPmf::new(vec![bits("A"), bits("B")], vec![0.5, 0.0, 0.0, 0.5]).unwrap();
        let i = j.cond_mutual_info(&["A"], &["B"], &[] as &[&str]).unwrap();
        assert!((i - 1.0).abs() < 1e-15);
    }

    #[test]
    fn binary_symmetric_channel() {
        // 1 - h(0.11) = 0.50008404183547200435... (mpmath)
        let f = 0.11;
        let j = JointPmf::new(
            vec![bits("X"), bits("Y")],
            vec![0.5 * (1.0 - f), 0.5 * f, 0.5 * f, 0.5 * (1.0 - f)],
        )
        .unwrap();
        let i = j.cond_mutual_info(&["X"], &["Y"], &[] as &[&str]).unwrap();
        assert!((i - 0.500_084_041_835_472).abs() < 1e-14, "{i}");
    }

    #[test]
    fn oversized_serialized_tables_are_refused() {
        let s = r#"{"axes": [{"name": "A", "size": 18446744073709551615}, {"name": "B", "size": 4}], "probs": []}"#;
        assert!(matches!(JointPmf::from_json_str(s), Err(Error::Validation(_))));
        let s = r#"{"axes": [{"name": "A", "size": 100000}, {"name": "B", "size": 100000}], "probs": []}"#;
        assert!(matches!(JointPmf::from_json_str(s), Err(Error::Validation(_))));
    }

    #[test]
    fn label_errors() {
        let j = JointPmf::new(vec![bits("A"), bits("B")], vec![0.25; 4]).unwrap();
        assert!(matches!(
            j.cond_mutual_info(&["A"], &["A"], &[] as &[&str]),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            j.cond_mutual_info(&["A"], &["Q"], &[] as &[&str]),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            j.cond_mutual_info(&["A"], &["B"], &["B"]),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(JointPmf::new(vec![bits("A")], vec![0.5, 0.6]).is_err());
        assert!(JointPmf::new(vec![bits("A")], vec![1.5, -0.5]).is_err());
        assert!(JointPmf::new(vec![bits("A"), bits("A")], vec![0.25; 4]).is_err());
        assert!(JointPmf::new(vec![bits("A")], vec![1.0]).is_err());
    }

    #[test]
    fn json_round_trip_and_shape_errors() {
        let j = JointPmf::new(vec![bits("X"), Axis::new("Y", 3)], vec![0.1, 0.2, 0.1, 0.3, 0.2, 0.1]).unwrap();
        let back = JointPmf::from_json(&j.to_json()).unwrap();
        assert_eq!(back, j);

        let bad = r#"{"axes":[{"name":"X","size":2}],"probs":[1.0]}"#;
        assert!(matches!(JointPmf::from_json_str(bad), Err(Error::Parse(_))));
        assert!(matches!(JointPmf::from_json_str(""), Err(Error::Parse(_))));
    }

    #[test]
    fn marginal_keeps_axis_order() {
        let j = JointPmf::from_fn(vec![bits("A"), Axis::new("B", 3), bits("C")], |i| {
            ((i[0] + 1) * (i[1] + 1) * (i[2] + 2)) as f64 / 90.0
        })
        .unwrap();
        let m = j.marginal(&["C", "A"]).unwrap();
        assert_eq!(m.axes()[0].name, "A");
        let total: f64 = m.probs().iter().sum();
        assert!((total - 1.0).abs() < 1e-15);
        assert!((m.get(&[1, 1]) - 2.0 * 6.0 * 3.0 / 90.0).abs() < 1e-15);
    }

    #[test]
    fn permutation_preserves_information() {
        let j = JointPmf::from_fn(vec![Axis::new("A", 3), bits("B")], |i| {
            [0.1, 0.2, 0.05, 0.25, 0.3, 0.1][i[0] * 2 + i[1]]
        })
        .unwrap();
        let p = j.permute_axis("A", &[2, 0, 1]).unwrap();
        assert_eq!(p.get(&[2, 1]), j.get(&[0, 1]));
        let before = j.cond_mutual_info(&["A"], &["B"], &[] as &[&str]).unwrap();
        let after = p.cond_mutual_info(&["A"], &["B"], &[] as &[&str]).unwrap();
        assert!((before - after).abs() < 1e-15);
        assert!(j.permute_axis("A", &[0, 0, 1]).is_err());
    }
}
