#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rbc_core::dmc::{theorem, AuxiliaryCoupling, DmcModel, Quantizer, TheoremId};
use rbc_core::info::{Axis, JointPmf};
use rbc_oracles::bounds::{literal, Piece};
use rbc_oracles::info::{relay_joint, Channel, NaiveJoint, Quantizer as OracleQuantizer, Terms};
use rbc_oracles::random;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn tid(n: u8) -> TheoremId {
    TheoremId::new(n).unwrap()
}

/// A random channel plus coupling for one theorem, with the raw tables kept
/// for the oracles.
pub struct Instance {
    pub id: TheoremId,
    pub model: DmcModel,
    pub coupling: AuxiliaryCoupling,
    pub sizes: [usize; 5],
    pub channel: Vec<f64>,
    pub names: Vec<&'static str>,
    pub input_sizes: Vec<usize>,
    pub input: Vec<f64>,
    pub quantizer: Option<(usize, Vec<f64>)>,
}

pub struct Shape {
    pub aux_max: usize,
    pub sparsity: f64,
    /// Alphabet sizes of every aux variable pinned to 1.
    pub constant: &'static [&'static str],
}

impl Default for Shape {
    fn default() -> Self {
        Self {
            aux_max: 2,
            sparsity: 0.15,
            constant: &[],
        }
    }
}

pub fn instance(rng: &mut ChaCha8Rng, id: TheoremId, shape: &Shape) -> Instance {
    let t = theorem(id);
    let sizes = [2, 2, 2, 2, 2];
    let channel = random::channel(rng, sizes, shape.sparsity);
    let names: Vec<&'static str> = t.variables.to_vec();
    let input_sizes: Vec<usize> = names
        .iter()
        .map(|n| match *n {
            "X" => sizes[0],
            "X1" => sizes[1],
            v if shape.constant.contains(&v) => 1,
            _ => rng.gen_range(1..=shape.aux_max),
        })
        .collect();
    let input = random::factored(rng, &names, &input_sizes, t.pattern, shape.sparsity);
    let quantizer = t.quantized.then(|| {
        let k = rng.gen_range(1..=2);
        (k, random::quantizer(rng, sizes[3], sizes[1], k))
    });
    let model = DmcModel::new(sizes, channel.clone()).unwrap();
    let axes = names.iter().zip(&input_sizes).map(|(n, s)| Axis::new(*n, *s)).collect();
    let joint = JointPmf::new(axes, renorm(&input)).unwrap();
    let q = quantizer
        .as_ref()
        .map(|(k, tab)| Quantizer::new(sizes[3], sizes[1], *k, tab.clone()).unwrap());
    let coupling = AuxiliaryCoupling::new(id, joint, q).unwrap();
    Instance {
        id,
        model,
        coupling,
        sizes,
        channel,
        names,
        input_sizes,
        input,
        quantizer,
    }
}

fn renorm(p: &[f64]) -> Vec<f64> {
    let s: f64 = p.iter().sum();
    p.iter().map(|x| x / s).collect()
}

impl Instance {
    pub fn naive_joint(&self) -> NaiveJoint {
        let input = NaiveJoint::new(&self.names, &self.input_sizes, self.input.clone());
        let ch = Channel {
            sizes: self.sizes,
            table: &self.channel,
        };
        let q = self.quantizer.as_ref().map(|(k, tab)| OracleQuantizer {
            y1_size: self.sizes[3],
            x1_size: self.sizes[1],
            yhat1_size: *k,
            table: tab,
        });
        relay_joint(&input, &ch, q.as_ref())
    }

    pub fn oracle(&self, rstar: Option<f64>) -> Vec<Piece> {
        let j = self.naive_joint();
        let terms = Terms::new(&j);
        literal(self.id.number(), &|s| terms.get(s), rstar)
    }

    /// Same tables, claimed for another theorem with an identical shape.
    pub fn as_theorem(&self, id: TheoremId) -> AuxiliaryCoupling {
        AuxiliaryCoupling::new(id, self.coupling.input.clone(), self.coupling.quantizer.clone()).unwrap()
    }
}

/// Random admissible rates scaled by one of a few magnitudes.
pub fn rates(rng: &mut ChaCha8Rng) -> [f64; 5] {
    let scale = [0.0005, 0.002, 0.01, 0.05, 0.2][rng.gen_range(0..5)];
    let r0 = rng.gen::<f64>() * scale;
    let r1 = rng.gen::<f64>() * scale;
    let r2 = rng.gen::<f64>() * scale;
    let secret = if rng.gen_bool(0.3) { 0.0 } else { rng.gen::<f64>() };
    let re1 = r1 * secret;
    let re2 = r2 * secret;
    [r0, r1, r2, re1, re2]
}
