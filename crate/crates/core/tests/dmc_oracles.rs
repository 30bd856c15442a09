mod common;

use common::{instance, rates, rng, tid, Shape};
use rand::Rng;
use rbc_core::dmc::{
    branch_condition, evaluate_membership, mi_terms, theorem, EvalOptions, MessageModel, RateTuple, TheoremId,
    TheoremInstance,
};
use rbc_oracles::bounds::{member, qualifying, secrecy_member};

fn mask(model: MessageModel, r: [f64; 5]) -> [f64; 5] {
    match model {
        MessageModel::TwoConfidentialCommon => r,
        MessageModel::TwoConfidential => [0.0, r[1], r[2], r[3], r[4]],
        MessageModel::OneConfidentialCommon => [r[0], r[1], 0.0, r[3], 0.0],
    }
}

#[test]
fn term_table_matches_naive_joint_enumeration() {
    let mut g = rng(11);
    for id in TheoremId::all() {
        for _ in 0..10 {
            let inst = instance(&mut g, id, &Shape::default());
            let table = mi_terms(id, &inst.model, &inst.coupling).unwrap();
            let joint = inst.naive_joint();
            assert_eq!(table.len(), theorem(id).term_specs().len());
            for (name, v) in &table {
                let spec = name.trim_start_matches("I(").trim_end_matches(')');
                let want = joint.term(spec);
                assert!((v - want).abs() <= 1e-12, "{id} {name}: {v} vs {want}");
            }
        }
    }
}

#[test]
fn membership_matches_literal_transcription() {
    let mut g = rng(12);
    let opts = EvalOptions::default();
    let mut members = 0;
    let mut total = 0;
    for id in TheoremId::all() {
        let model = theorem(id).model;
        for _ in 0..500 / 12 + 1 {
            let inst = instance(&mut g, id, &Shape::default());
            let pieces = inst.oracle(None);
            let ti = TheoremInstance::new(id, &inst.model, &inst.coupling, &opts).unwrap();
            let qual: Vec<&str> = ti.branch_report().qualifying();
            assert_eq!(qual, qualifying(&pieces, opts.tol), "{id}");
            let vertex = ti.extremes([1.0, 1.0, 1.0]).unwrap();
            let v = vertex.rates;
            let near = vertex.objective > 1e-6;
            for k in 0..4 {
                let r = if near && k > 0 {
                    let mut f = || g.gen::<f64>() * 1.3;
                    let (r0, r1, r2) = (v.r0 * f(), v.r1 * f(), v.r2 * f());
                    let (e1, e2) = (r1 * f().min(1.0), r2 * f().min(1.0));
                    mask(model, [r0, r1, r2, e1, e2])
                } else {
                    mask(model, rates(&mut g))
                };
                let t = RateTuple::new(r[0], r[1], r[2], r[3], r[4]);
                let got = ti.evaluate(&t).unwrap().member;
                assert_eq!(got, member(&pieces, r, opts.tol), "{id} at {r:?}");
                let s = [r[0], r[1], r[2]];
                let got_s = ti.evaluate_corollary(s).unwrap().member;
                assert_eq!(got_s, secrecy_member(&pieces, s, opts.tol), "{id} slice at {s:?}");
                members += got as usize;
                total += 1;
            }
        }
    }
    // Both verdicts must actually occur for the comparison to mean anything.
    assert!(members > total / 10 && members < total * 9 / 10, "{members} of {total}");
}

#[test]
fn explicit_rstar_matches_transcription() {
    let mut g = rng(13);
    let opts = EvalOptions {
        rstar: Some(0.01),
        ..EvalOptions::default()
    };
    for n in [4, 8, 12] {
        let id = tid(n);
        for _ in 0..30 {
            let inst = instance(&mut g, id, &Shape::default());
            let pieces = inst.oracle(Some(0.01));
            let ti = TheoremInstance::new(id, &inst.model, &inst.coupling, &opts).unwrap();
            assert_eq!(ti.branch_report().qualifying(), qualifying(&pieces, opts.tol));
            let r = mask(theorem(id).model, rates(&mut g));
            let t = RateTuple::new(r[0], r[1], r[2], r[3], r[4]);
            assert_eq!(ti.evaluate(&t).unwrap().member, member(&pieces, r, opts.tol));
        }
    }
}

#[test]
fn branch_sides_match_direct_sums() {
    let mut g = rng(14);
    for n in [3, 7, 11] {
        let id = tid(n);
        for _ in 0..20 {
            let inst = instance(&mut g, id, &Shape::default());
            let j = inst.naive_joint();
            let rep = branch_condition(id, &inst.model, &inst.coupling, &EvalOptions::default()).unwrap();
            let first = &rep.branches[0].conditions[0];
            assert!((first.lhs - j.term("X1;Y")).abs() < 1e-12);
            let rhs = if n == 11 { j.term("X1;Z|U") } else { j.term("X1;Z|U,V2") };
            assert!((first.rhs - rhs).abs() < 1e-12);
        }
    }
}

#[test]
fn identical_outputs_leave_no_secrecy() {
    use rbc_core::dmc::DmcModel;
    let mut g = rng(15);
    for n in [1, 2, 3, 5, 6, 7, 9, 10, 11] {
        let id = tid(n);
        let inst = instance(&mut g, id, &Shape::default());
        let ch = &inst.channel;
        // Z is a copy of Y: p(y,y1,z) = p(y,y1) [z = y].
        let z_copy = DmcModel::from_fn([2, 2, 2, 2, 2], |x, x1, y, y1, z| {
            if z != y {
                return 0.0;
            }
            (0..2).map(|zz| ch[(((x * 2 + x1) * 2 + y) * 2 + y1) * 2 + zz]).sum()
        })
        .unwrap();
        // Any positive equivocation is out of reach when Z sees what Y sees.
        let re = RateTuple::new(0.0, 0.01, 0.0, 0.01, 0.0);
        let ev = evaluate_membership(id, &z_copy, &inst.coupling, &re, &EvalOptions::default()).unwrap();
        assert!(!ev.member, "{id}");
        let open = RateTuple::new(0.0, 0.0, 0.0, 0.0, 0.0);
        let ev = evaluate_membership(id, &z_copy, &inst.coupling, &open, &EvalOptions::default()).unwrap();
        assert!(ev.member || ev.branches.iter().all(|b| !b.qualifies), "{id}");
    }
}

fn full_support() -> Shape {
    Shape {
        sparsity: 0.0,
        ..Shape::default()
    }
}

#[test]
fn constant_v1_carries_no_information() {
    let mut g = rng(16);
    for n in [2, 3, 4] {
        let id = tid(n);
        let shape = Shape {
            constant: &["V1"],
            ..Shape::default()
        };
        let inst = instance(&mut g, id, &shape);
        let table = mi_terms(id, &inst.model, &inst.coupling).unwrap();
        let mut seen = 0;
        for (name, v) in &table {
            let spec = name.trim_start_matches("I(").trim_end_matches(')');
            let (a, b) = spec.split_once(';').unwrap();
            let b = b.split('|').next().unwrap();
            if a == "V1" || b == "V1" {
                assert_eq!(*v, 0.0, "{id} {name}");
                seen += 1;
            }
        }
        assert!(seen > 0, "{id}");
    }
}

#[test]
fn relay_seen_only_by_the_legitimate_receiver() {
    use rbc_core::dmc::DmcModel;
    let mut g = rng(17);
    for n in [3, 7] {
        let id = tid(n);
        let inst = instance(&mut g, id, &full_support());
        let ch = &inst.channel;
        // Y = X1, Y1 and Z follow the random law conditioned on x only.
        let model = DmcModel::from_fn([2, 2, 2, 2, 2], |x, x1, y, y1, z| {
            let w: f64 = (0..2).map(|yy| ch[(((x * 2) * 2 + yy) * 2 + y1) * 2 + z]).sum();
            if y == x1 {
                w
            } else {
                0.0
            }
        })
        .unwrap();
        let rep = branch_condition(id, &model, &inst.coupling, &EvalOptions::default()).unwrap();
        assert_eq!(rep.qualifying(), vec![rep.branches[0].id], "{id}");
    }
}

#[test]
fn silent_relay_satisfies_both_conditions_with_equality() {
    use rbc_core::dmc::DmcModel;
    let mut g = rng(18);
    for n in [3, 7] {
        let id = tid(n);
        let inst = instance(&mut g, id, &Shape::default());
        let ch = &inst.channel;
        let model = DmcModel::from_fn([2, 2, 2, 2, 2], |x, _, y, y1, z| {
            ch[(((x * 2) * 2 + y) * 2 + y1) * 2 + z]
        })
        .unwrap();
        let rep = branch_condition(id, &model, &inst.coupling, &EvalOptions::default()).unwrap();
        assert_eq!(rep.qualifying().len(), 2, "{id}");
        for b in &rep.branches {
            for c in &b.conditions {
                assert_eq!((c.lhs, c.rhs), (0.0, 0.0), "{id} {}", b.id);
            }
        }
    }
}
