//! Definition-level information measures over dense tables.

use std::cell::RefCell;
use std::collections::HashMap;

/// A joint mass table in row-major order (last axis fastest).
#[derive(Debug, Clone)]
pub struct NaiveJoint {
    pub names: Vec<String>,
    pub sizes: Vec<usize>,
    pub probs: Vec<f64>,
}

impl NaiveJoint {
    pub fn new(names: &[&str], sizes: &[usize], probs: Vec<f64>) -> Self {
        assert_eq!(names.len(), sizes.len());
        assert_eq!(sizes.iter().product::<usize>(), probs.len());
        Self {
            names: names.iter().map(|s| s.to_string()).collect(),
            sizes: sizes.to_vec(),
            probs,
        }
    }

    pub fn index(&self, name: &str) -> usize {
        self.names
            .iter()
            .position(|n| n == name)
            .unwrap_or_else(|| panic!("oracle joint has no axis {name}"))
    }

    /// Multi-index of flat cell `flat`.
    pub fn decode(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.sizes.len()];
        for k in (0..self.sizes.len()).rev() {
            idx[k] = flat % self.sizes[k];
            flat /= self.sizes[k];
        }
        idx
    }

    fn project(&self, idx: &[usize], axes: &[usize]) -> Vec<usize> {
        axes.iter().map(|&a| idx[a]).collect()
    }

    fn marginal(&self, axes: &[usize]) -> HashMap<Vec<usize>, f64> {
        let mut m = HashMap::new();
        for (flat, &p) in self.probs.iter().enumerate() {
            let key = self.project(&self.decode(flat), axes);
            *m.entry(key).or_insert(0.0) += p;
        }
        m
    }

    /// `I(A;B|C)` as `Σ p(a,b,c) log2 [p(a,b,c) p(c) / (p(a,c) p(b,c))]`.
    pub fn cmi(&self, a: &[&str], b: &[&str], c: &[&str]) -> f64 {
        let ia: Vec<usize> = a.iter().map(|n| self.index(n)).collect();
        let ib: Vec<usize> = b.iter().map(|n| self.index(n)).collect();
        let ic: Vec<usize> = c.iter().map(|n| self.index(n)).collect();
        let abc: Vec<usize> = ia.iter().chain(&ib).chain(&ic).copied().collect();
        let ac: Vec<usize> = ia.iter().chain(&ic).copied().collect();
        let bc: Vec<usize> = ib.iter().chain(&ic).copied().collect();
        let p_abc = self.marginal(&abc);
        let p_ac = self.marginal(&ac);
        let p_bc = self.marginal(&bc);
        let p_c = self.marginal(&ic);
        let (na, nb) = (ia.len(), ib.len());
        let mut total = 0.0;
        for (key, &p) in &p_abc {
            if p <= 0.0 {
                continue;
            }
            let (ka, rest) = key.split_at(na);
            let (kb, kc) = rest.split_at(nb);
            let key_ac: Vec<usize> = ka.iter().chain(kc).copied().collect();
            let key_bc: Vec<usize> = kb.iter().chain(kc).copied().collect();
            let pc = if kc.is_empty() { 1.0 } else { p_c[kc] };
            total += p * ((p * pc) / (p_ac[&key_ac] * p_bc[&key_bc])).log2();
        }
        total
    }

    /// Evaluates a term written `"A1,A2;B|C1,C2"`.
    pub fn term(&self, spec: &str) -> f64 {
        let (a, b, c) = split_term(spec);
        self.cmi(&a, &b, &c)
    }
}

/// Splits `"A;B|C"` into its three comma-separated lists.
pub fn split_term(spec: &str) -> (Vec<&str>, Vec<&str>, Vec<&str>) {
    let (ab, c) = match spec.split_once('|') {
        Some((ab, c)) => (ab, c),
        None => (spec, ""),
    };
    let (a, b) = ab.split_once(';').unwrap_or_else(|| panic!("bad oracle term {spec}"));
    (list(a), list(b), list(c))
}

fn list(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).collect()
}

/// Memoizing term evaluator over one joint.
pub struct Terms<'a> {
    joint: &'a NaiveJoint,
    memo: RefCell<HashMap<String, f64>>,
}

impl<'a> Terms<'a> {
    pub fn new(joint: &'a NaiveJoint) -> Self {
        Self {
            joint,
            memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn get(&self, spec: &str) -> f64 {
        if let Some(v) = self.memo.borrow().get(spec) {
            return *v;
        }
        let v = self.joint.term(spec);
        self.memo.borrow_mut().insert(spec.to_string(), v);
        v
    }
}

/// Shannon entropy in bits of a mass vector.
pub fn entropy(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum()
}

/// Channel law `p(y, y1, z | x, x1)` as a flat `[x][x1][y][y1][z]` table.
pub struct Channel<'a> {
    /// `[x, x1, y, y1, z]` alphabet sizes.
    pub sizes: [usize; 5],
    pub table: &'a [f64],
}

impl Channel<'_> {
    pub fn prob(&self, x: usize, x1: usize, y: usize, y1: usize, z: usize) -> f64 {
        let [_, nx1, ny, ny1, nz] = self.sizes;
        self.table[(((x * nx1 + x1) * ny + y) * ny1 + y1) * nz + z]
    }
}

/// Quantizer `p(yhat1 | y1, x1)` as a flat `[y1][x1][yhat1]` table.
pub struct Quantizer<'a> {
    pub y1_size: usize,
    pub x1_size: usize,
    pub yhat1_size: usize,
    pub table: &'a [f64],
}

/// Full joint over the coupling axes followed by `Y, Y1, Z` (and `Yhat1`
/// when a quantizer is given), enumerated cell by cell.
pub fn relay_joint(input: &NaiveJoint, ch: &Channel, q: Option<&Quantizer>) -> NaiveJoint {
    let ix = input.index("X");
    let ix1 = input.index("X1");
    let [_, _, ny, ny1, nz] = ch.sizes;
    let nq = q.map_or(1, |q| q.yhat1_size);
    let mut names: Vec<&str> = input.names.iter().map(String::as_str).collect();
    names.extend(["Y", "Y1", "Z"]);
    let mut sizes = input.sizes.clone();
    sizes.extend([ny, ny1, nz]);
    if q.is_some() {
        names.push("Yhat1");
        sizes.push(nq);
    }
    let total: usize = sizes.iter().product();
    let mut probs = Vec::with_capacity(total);
    for flat_in in 0..input.probs.len() {
        let idx = input.decode(flat_in);
        let (x, x1) = (idx[ix], idx[ix1]);
        let p_in = input.probs[flat_in];
        for y in 0..ny {
            for y1 in 0..ny1 {
                for z in 0..nz {
                    let p = p_in * ch.prob(x, x1, y, y1, z);
                    match q {
                        None => probs.push(p),
                        Some(q) => {
                            for h in 0..nq {
                                probs.push(p * q.table[(y1 * q.x1_size + x1) * q.yhat1_size + h]);
                            }
                        }
                    }
                }
            }
        }
    }
    NaiveJoint {
        names: names.into_iter().map(String::from).collect(),
        sizes,
        probs,
    }
}

/// `max I(X;Y)` over input laws on the simplex lattice with resolution
/// `1/(steps-1)`, for a row-stochastic `w[x][y]`.
#[allow(clippy::needless_range_loop)]
pub fn grid_capacity(w: &[Vec<f64>], steps: usize) -> f64 {
    let nx = w.len();
    let ny = w[0].len();
    let mut best: f64 = 0.0;
    let mut counts = vec![0usize; nx];
    let k = steps - 1;
    // Enumerate compositions of k into nx parts.
    fn rec(pos: usize, left: usize, counts: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if pos + 1 == counts.len() {
            counts[pos] = left;
            f(counts);
            return;
        }
        for c in 0..=left {
            counts[pos] = c;
            rec(pos + 1, left - c, counts, f);
        }
    }
    rec(0, k, &mut counts, &mut |c| {
        let px: Vec<f64> = c.iter().map(|&n| n as f64 / k as f64).collect();
        let mut mi = 0.0;
        for y in 0..ny {
            let py: f64 = (0..nx).map(|x| px[x] * w[x][y]).sum();
            for x in 0..nx {
                let pxy = px[x] * w[x][y];
                if pxy > 0.0 {
                    mi += pxy * (w[x][y] / py).log2();
                }
            }
        }
        best = best.max(mi);
    });
    best
}
