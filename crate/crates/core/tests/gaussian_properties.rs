mod common;

use common::rng;
use rand::Rng;
use rbc_core::gaussian::{
    b_baseline_norelay, b_cf, b_df, b_nf, c_baseline, c_cf, c_df, c_nf, cf_rstar_max, GaussianNetwork, Strategy,
    StrategyParams,
};
use rbc_oracles::constants as k;

fn net() -> GaussianNetwork {
    GaussianNetwork::new(5.0, 3.0, 2.0, 8.0, 2.0).unwrap()
}

fn close(a: f64, b: f64, tol: f64) {
    assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
}

/// A random network satisfying `P1 + N1 <= N2`.
fn random_net(g: &mut impl Rng) -> GaussianNetwork {
    let p1 = g.gen_range(0.1..20.0);
    let n1 = g.gen_range(0.1..10.0);
    let n2 = (p1 + n1) * g.gen_range(1.0..3.0);
    GaussianNetwork::new(p1, g.gen_range(0.1..20.0), n1, n2, g.gen_range(0.1..10.0)).unwrap()
}

fn grid(n: usize) -> impl Iterator<Item = (f64, f64)> {
    (0..n).flat_map(move |i| (0..n).map(move |j| (i as f64 / (n - 1) as f64, j as f64 / (n - 1) as f64)))
}

#[test]
fn reference_values() {
    let sp = StrategyParams::new(1.0, 0.0);
    close(b_df(&net(), &sp).unwrap().first, k::B_DF_R1, 1e-12);
    close(b_nf(&net(), &sp).unwrap().first, k::B_NF_R1, 1e-12);
    close(cf_rstar_max(&net(), 300.0).unwrap(), k::RSTAR_MAX_Q300, 1e-12);
    close(cf_rstar_max(&net(), 1e12).unwrap(), k::RSTAR_MAX_Q1E12, 1e-11);
    let limit = k::RELAY_RATE_TERMS[0].min(k::RELAY_RATE_TERMS[1]);
    let eps = limit - cf_rstar_max(&net(), 1e12).unwrap();
    assert!(eps > 0.0 && eps < 1e-11, "{eps}");
    close(b_cf(&net(), &sp.with_cf(300.0, None)).unwrap().first, k::B_CF_R1, 1e-9);
    close(c_cf(&net(), 1.0, 300.0, None).unwrap().second, k::B_CF_R1, 1e-9);
    let c0 = c_df(&net(), 0.0).unwrap();
    close(c0.first, k::C_DF_R0, 1e-12);
    assert!(k::C_DF_R0_OTHERS.iter().all(|&t| t > c0.first));
    close(c_baseline(&net(), 0.0).unwrap().first, k::C_BASE_R0, 1e-12);
    close(c_nf(&net(), 1.0).unwrap().second, k::B_NF_R1, 1e-12);
    assert_eq!(c_nf(&net(), 1.0).unwrap().first, 0.0);
    assert_eq!(c_cf(&net(), 1.0, 300.0, None).unwrap().first, 0.0);
}

#[test]
fn explicit_rstar_at_the_maximum_matches_the_default() {
    let r = k::RSTAR_MAX_Q300;
    let sp = StrategyParams::new(1.0, 0.0);
    let a = b_cf(&net(), &sp.with_cf(300.0, Some(r))).unwrap();
    let b = b_cf(&net(), &sp.with_cf(300.0, None)).unwrap();
    close(a.first, b.first, 1e-12);
}

#[test]
fn baseline_equals_decode_forward_pointwise() {
    let mut g = rng(41);
    let mut nets = vec![net()];
    nets.extend((0..5).map(|_| random_net(&mut g)));
    for n in &nets {
        for (a, b) in grid(101) {
            let sp = StrategyParams::new(a, b);
            let df = b_df(n, &sp).unwrap();
            let base = b_baseline_norelay(n, &sp).unwrap();
            close(df.first, base.first, 1e-12);
            close(df.second, base.second, 1e-12);
        }
    }
}

#[test]
fn relay_free_outputs_ignore_relay_parameters() {
    let mut g = rng(42);
    for _ in 0..50 {
        let n = random_net(&mut g);
        let other = GaussianNetwork::new(
            n.p1,
            n.p2 * g.gen_range(0.1..10.0),
            n.n1,
            n.n2,
            n.nr * g.gen_range(0.1..10.0),
        )
        .unwrap();
        let (a, b) = (g.gen::<f64>(), g.gen::<f64>());
        let sp = StrategyParams::new(a, b);
        assert_eq!(b_df(&n, &sp).unwrap(), b_df(&other, &sp).unwrap());
        assert_eq!(
            b_baseline_norelay(&n, &sp).unwrap(),
            b_baseline_norelay(&other, &sp).unwrap()
        );
        assert_eq!(c_baseline(&n, a).unwrap(), c_baseline(&other, a).unwrap());
    }
}

#[test]
fn compress_forward_approaches_noise_forward() {
    let qs: Vec<f64> = (2..=8).map(|e| 10f64.powi(e)).collect();
    for (a, b) in grid(11) {
        let sp = StrategyParams::new(a, b);
        let nf = b_nf(&net(), &sp).unwrap().first;
        let gaps: Vec<f64> = qs
            .iter()
            .map(|&q| (b_cf(&net(), &sp.with_cf(q, None)).unwrap().first - nf).abs())
            .collect();
        for w in gaps.windows(2) {
            assert!(w[1] <= w[0] + 1e-12, "alpha {a}, beta {b}: {gaps:?}");
        }
        assert!(gaps[gaps.len() - 1] <= 1e-3, "alpha {a}, beta {b}: {gaps:?}");
    }
    for i in 0..=20 {
        let a = i as f64 / 20.0;
        let nf = c_nf(&net(), a).unwrap();
        let gaps: Vec<f64> = qs
            .iter()
            .map(|&q| {
                let cf = c_cf(&net(), a, q, None).unwrap();
                (cf.first - nf.first).abs().max((cf.second - nf.second).abs())
            })
            .collect();
        for w in gaps.windows(2) {
            assert!(w[1] <= w[0] + 1e-12, "alpha {a}: {gaps:?}");
        }
        assert!(gaps[gaps.len() - 1] <= 1e-3, "alpha {a}: {gaps:?}");
    }
}

#[test]
fn second_confidential_rate_always_vanishes() {
    let mut g = rng(43);
    let mut nets = vec![net()];
    nets.extend((0..5).map(|_| random_net(&mut g)));
    for n in &nets {
        let q = 300.0;
        let cf_ok = cf_rstar_max(n, q).unwrap() >= 0.0;
        for (a, b) in grid(41) {
            let sp = StrategyParams::new(a, b).with_cf(q, None);
            for s in [Strategy::BDf, Strategy::BNf, Strategy::BCf, Strategy::BBaseline] {
                if s == Strategy::BCf && !cf_ok {
                    continue;
                }
                assert_eq!(s.evaluate(n, &sp).unwrap().rates.second, 0.0, "{s} at ({a},{b})");
            }
        }
    }
}

#[test]
fn outputs_are_finite_nonnegative_and_continuous() {
    let mut g = rng(44);
    for _ in 0..20 {
        let n = random_net(&mut g);
        let q = g.gen_range(10.0..1e6);
        let cf_ok = cf_rstar_max(&n, q).unwrap() >= 0.0;
        for s in Strategy::ALL {
            if s.is_cf() && !cf_ok {
                continue;
            }
            let mut prev: Option<(f64, f64)> = None;
            for i in 0..=1000 {
                let a = i as f64 / 1000.0;
                let sp = StrategyParams::new(a, 0.3).with_cf(q, None);
                let r = s.evaluate(&n, &sp).unwrap().rates;
                assert!(r.first.is_finite() && r.second.is_finite() && r.first >= 0.0 && r.second >= 0.0);
                if let Some((f, s2)) = prev {
                    // Every term is a log ratio with Lipschitz constant at most P1/(2 ln2 N) per unit alpha.
                    let lip = 8.0 * n.p1 / (n.n1.min(n.nr) * std::f64::consts::LN_2) / 1000.0;
                    assert!(
                        (r.first - f).abs() <= lip && (r.second - s2).abs() <= lip,
                        "{s} jumps at alpha {a}"
                    );
                }
                prev = Some((r.first, r.second));
            }
        }
    }
}

#[test]
fn tiny_parameter_moves_give_tiny_rate_moves() {
    let mut g = rng(45);
    for _ in 0..2000 {
        let (a, b) = (g.gen_range(0.01..0.99), g.gen_range(0.01..0.99));
        let d = 1e-8;
        for s in Strategy::ALL {
            let at = |a: f64, b: f64| {
                s.evaluate(&net(), &StrategyParams::new(a, b).with_cf(300.0, None))
                    .unwrap()
                    .rates
            };
            let r = at(a, b);
            for (da, db) in [(d, 0.0), (-d, 0.0), (0.0, d), (0.0, -d)] {
                let q = at(a + da, b + db);
                assert!(
                    (q.first - r.first).abs() <= 1e-6 && (q.second - r.second).abs() <= 1e-6,
                    "{s} at ({a},{b})"
                );
            }
        }
    }
}
