mod common;

use std::collections::BTreeMap;

use common::{instance, rates, rng, tid, Shape};
use proptest::prelude::*;
use rand::Rng;
use rbc_core::dmc::{
    brute_force_best, secrecy_region_extremes, theorem, AuxiliaryCoupling, DmcModel, EvalOptions, MessageModel,
    RateTuple, SearchOptions, TheoremId, TheoremInstance,
};
use rbc_oracles::bounds::secrecy_member;
use rbc_oracles::grid::grid_best;
use rbc_oracles::info::grid_capacity;

fn admissible(model: MessageModel, r: [f64; 5]) -> RateTuple {
    match model {
        MessageModel::TwoConfidentialCommon => RateTuple::new(r[0], r[1], r[2], r[3], r[4]),
        MessageModel::TwoConfidential => RateTuple::new(0.0, r[1], r[2], r[3], r[4]),
        MessageModel::OneConfidentialCommon => RateTuple::new(r[0], r[1], 0.0, r[3], 0.0),
    }
}

fn verdicts(ti: &TheoremInstance, t: &RateTuple) -> (bool, Vec<bool>) {
    let ev = ti.evaluate(t).unwrap();
    (ev.member, ev.branches.iter().map(|b| b.member).collect())
}

#[test]
fn secrecy_slice_agrees_with_full_list() {
    let mut g = rng(21);
    let opts = EvalOptions::default();
    for id in TheoremId::all() {
        let model = theorem(id).model;
        for _ in 0..40 {
            let inst = instance(&mut g, id, &Shape::default());
            let ti = TheoremInstance::new(id, &inst.model, &inst.coupling, &opts).unwrap();
            let v = ti.extremes([1.0, 1.0, 1.0]).unwrap().rates;
            for _ in 0..5 {
                let mut f = || g.gen::<f64>() * 1.3;
                let r = if v.r0 + v.r1 + v.r2 > 1e-6 {
                    [v.r0 * f(), v.r1 * f(), v.r2 * f()]
                } else {
                    let x = rates(&mut g);
                    [x[0], x[1], x[2]]
                };
                let t = admissible(model, [r[0], r[1], r[2], r[1], r[2]]);
                let full = ti.evaluate(&t).unwrap();
                let slice = ti.evaluate_corollary(t.rates()).unwrap();
                assert_eq!(full.member, slice.member, "{id} at {r:?}");
                for (a, b) in full.branches.iter().zip(&slice.branches) {
                    assert_eq!(a.member, b.member, "{id} {} at {r:?}", a.id);
                }
            }
        }
    }
}

#[test]
fn private_message_bounds_are_common_message_bounds_at_zero() {
    let mut g = rng(22);
    let opts = EvalOptions::default();
    for (n, m) in [(5u8, 1u8), (6, 2), (7, 3), (8, 4)] {
        let (id, base) = (tid(n), tid(m));
        let shape = if n == 5 {
            Shape {
                constant: &["U"],
                ..Shape::default()
            }
        } else {
            Shape::default()
        };
        for _ in 0..40 {
            let inst = instance(&mut g, id, &shape);
            let a = TheoremInstance::new(id, &inst.model, &inst.coupling, &opts).unwrap();
            let b = TheoremInstance::new(base, &inst.model, &inst.as_theorem(base), &opts).unwrap();
            let qa: Vec<bool> = a.branch_report().branches.iter().map(|x| x.qualifies).collect();
            let qb: Vec<bool> = b.branch_report().branches.iter().map(|x| x.qualifies).collect();
            assert_eq!(qa, qb, "{id}");
            for _ in 0..10 {
                let r = rates(&mut g);
                let t = RateTuple::new(0.0, r[1], r[2], r[3], r[4]);
                assert_eq!(verdicts(&a, &t), verdicts(&b, &t), "{id} at {t:?}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn membership_is_downward_closed(seed in any::<u64>(), n in 1u8..=12, shrink in prop::array::uniform5(0.0..=1.0f64)) {
        let mut g = rng(seed);
        let id = tid(n);
        let inst = instance(&mut g, id, &Shape::default());
        let ti = TheoremInstance::new(id, &inst.model, &inst.coupling, &EvalOptions::default()).unwrap();
        let model = theorem(id).model;
        let v = ti.extremes([1.0, 1.0, 1.0]).unwrap().rates;
        let top = [v.r0, v.r1, v.r2, v.r1 * g.gen::<f64>(), v.r2 * g.gen::<f64>()];
        let t = admissible(model, top);
        prop_assume!(ti.evaluate(&t).unwrap().member);
        let mut low = [0.0; 5];
        for k in 0..5 {
            low[k] = top[k] * shrink[k];
        }
        low[3] = low[3].min(low[1]);
        low[4] = low[4].min(low[2]);
        prop_assert!(ti.evaluate(&admissible(model, low)).unwrap().member);
    }
}

#[test]
fn relabeling_symbols_keeps_branch_verdicts() {
    let mut g = rng(23);
    let opts = EvalOptions::default();
    for id in TheoremId::all() {
        for _ in 0..10 {
            let inst = instance(&mut g, id, &Shape::default());
            let ti = TheoremInstance::new(id, &inst.model, &inst.coupling, &opts).unwrap();
            let before = ti.branch_report();
            let mut input = inst.coupling.input.clone();
            for ax in input.axes().to_vec() {
                if ax.size == 2 && ax.name != "X" && ax.name != "X1" {
                    input = input.permute_axis(&ax.name, &[1, 0]).unwrap();
                }
            }
            // Swapping X needs the channel rows swapped too.
            input = input.permute_axis("X", &[1, 0]).unwrap();
            let m = &inst.model;
            let model = DmcModel::from_fn(m.sizes(), |x, x1, y, y1, z| m.prob(1 - x, x1, y, y1, z)).unwrap();
            let c = AuxiliaryCoupling::new(id, input, inst.coupling.quantizer.clone()).unwrap();
            let after = TheoremInstance::new(id, &model, &c, &opts).unwrap().branch_report();
            assert_eq!(before.qualifying(), after.qualifying(), "{id}");
            for (a, b) in before.branches.iter().zip(&after.branches) {
                for (p, q) in a.conditions.iter().zip(&b.conditions) {
                    assert!((p.lhs - q.lhs).abs() < 1e-12 && (p.rhs - q.rhs).abs() < 1e-12, "{id}");
                }
            }
            for _ in 0..5 {
                let t = admissible(theorem(id).model, rates(&mut g));
                let ti2 = TheoremInstance::new(id, &model, &c, &opts).unwrap();
                assert_eq!(verdicts(&ti, &t), verdicts(&ti2, &t), "{id}");
            }
        }
    }
}

#[test]
fn evaluation_is_bit_identical_on_repeat() {
    let mut g = rng(24);
    for id in TheoremId::all() {
        let inst = instance(&mut g, id, &Shape::default());
        let t = admissible(theorem(id).model, rates(&mut g));
        let a = TheoremInstance::new(id, &inst.model, &inst.coupling, &EvalOptions::default()).unwrap();
        let b = TheoremInstance::new(id, &inst.model, &inst.coupling, &EvalOptions::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.evaluate(&t).unwrap(), b.evaluate(&t).unwrap());
    }
}

#[test]
fn vertex_beats_dense_grid_scan() {
    let mut g = rng(25);
    let opts = EvalOptions::default();
    let n = 50;
    let mut compared = 0;
    for id in TheoremId::all() {
        let dims = theorem(id).model.rate_dims();
        let mut here = 0;
        for _ in 0..400 {
            if here == 3 {
                break;
            }
            let inst = instance(&mut g, id, &Shape::default());
            let pieces = inst.oracle(None);
            let ti = TheoremInstance::new(id, &inst.model, &inst.coupling, &opts).unwrap();
            let mut upper = [0.0; 3];
            for &d in dims {
                let mut e = [0.0; 3];
                e[d] = 1.0;
                upper[d] = ti.extremes(e).unwrap().objective.max(0.0) * 1.02;
            }
            let objective = [g.gen::<f64>(), g.gen::<f64>(), g.gen::<f64>()];
            let x = ti.extremes(objective).unwrap();
            // Exact membership, so grid points cannot borrow the evaluator's slack.
            let scan = grid_best(dims, upper, n, objective, |r| secrecy_member(&pieces, r, 1e-12));
            let Some((_, best)) = scan else {
                assert!(x.empty_interior || x.branch == "none", "{id}");
                continue;
            };
            let cell: f64 = dims.iter().map(|&d| objective[d] * upper[d] / (n - 1) as f64).sum();
            assert!(
                x.objective >= best - 1e-12,
                "{id}: vertex {} below grid {best}",
                x.objective
            );
            assert!(
                x.objective - best <= cell + 1e-9,
                "{id}: vertex {} vs grid {best}",
                x.objective
            );
            if best > 0.0 {
                here += 1;
            }
        }
        assert_eq!(here, 3, "{id}: too few non-trivial slices");
        compared += here;
    }
    assert_eq!(compared, 36);
}

fn blind_eavesdropper(w: &[[f64; 2]; 2]) -> DmcModel {
    // Y depends on X only, the relay sees X, Z is a fair coin.
    DmcModel::from_fn([2, 2, 2, 2, 2], |x, _, y, y1, _| w[x][y] * f64::from(y1 == x) * 0.5).unwrap()
}

#[test]
fn decode_forward_search_reaches_grid_capacity() {
    let w = [[0.9, 0.1], [0.3, 0.7]];
    let model = blind_eavesdropper(&w);
    let aux = BTreeMap::from([("V1".to_string(), 2)]);
    let steps = 6;
    let res = brute_force_best(&model, &aux, steps, tid(2), [0.0, 1.0, 0.0], &SearchOptions::default()).unwrap();
    let rows: Vec<Vec<f64>> = w.iter().map(|r| r.to_vec()).collect();
    let lattice = grid_capacity(&rows, steps);
    let fine = grid_capacity(&rows, 4001);
    assert!(
        res.best.objective >= lattice - 1e-12,
        "{} < {lattice}",
        res.best.objective
    );
    assert!(res.best.objective <= fine + 1e-9, "{} > {fine}", res.best.objective);
    assert_eq!(res.best.rates.r1, res.best.objective);
}

#[test]
fn identical_eavesdropper_search_finds_nothing() {
    let model = DmcModel::from_fn([2, 2, 2, 2, 2], |x, x1, y, y1, z| {
        let py = if y == (x ^ x1) { 0.8 } else { 0.2 };
        py * f64::from(z == y) * if y1 == x { 0.9 } else { 0.1 }
    })
    .unwrap();
    let aux = BTreeMap::from([("V1".to_string(), 2), ("V2".to_string(), 2)]);
    for n in [2, 3, 6, 7] {
        let res = brute_force_best(&model, &aux, 3, tid(n), [0.0, 1.0, 1.0], &SearchOptions::default()).unwrap();
        assert!(res.best.objective.abs() <= 1e-9, "T{n}: {}", res.best.objective);
    }
}

#[test]
fn single_point_search_is_the_uniform_coupling() {
    let w = [[0.9, 0.1], [0.3, 0.7]];
    let model = blind_eavesdropper(&w);
    for n in [2, 3, 10] {
        let id = tid(n);
        let aux: BTreeMap<String, usize> = theorem(id)
            .variables
            .iter()
            .filter(|v| !matches!(**v, "X" | "X1"))
            .map(|v| (v.to_string(), 2))
            .collect();
        let res = brute_force_best(&model, &aux, 1, id, [1.0, 1.0, 1.0], &SearchOptions::default()).unwrap();
        assert_eq!(res.evaluated, 1);
        let direct =
            secrecy_region_extremes(id, &model, &res.coupling, [1.0, 1.0, 1.0], &EvalOptions::default()).unwrap();
        assert_eq!(res.best, direct);
        assert!(res
            .coupling
            .input
            .probs()
            .iter()
            .all(|&p| (p - res.coupling.input.probs()[0]).abs() < 1e-15));
    }
}
