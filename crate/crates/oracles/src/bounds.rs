//! Hand-listed inequality systems of the twelve bounds and of their
//! perfect-secrecy slices, one function per theorem.
//!
//! Coefficients are over `[R0, R1, R2, Re1, Re2]`; the single equivocation
//! of the one-confidential-message model sits in the `Re1` slot.

/// `lhs · rates <= rhs`.
#[derive(Debug, Clone, Copy)]
pub struct Cap {
    pub lhs: [f64; 5],
    pub rhs: f64,
}

/// One region of a union, with its qualifying conditions `lhs >= rhs`.
#[derive(Debug, Clone)]
pub struct Piece {
    pub label: &'static str,
    pub conditions: Vec<(f64, f64)>,
    pub rstar: Option<f64>,
    pub region: Vec<Cap>,
    pub secrecy: Vec<Cap>,
}

impl Piece {
    pub fn qualifies(&self, tol: f64) -> bool {
        self.conditions.iter().all(|&(l, r)| l >= r - tol)
    }
}

fn holds(caps: &[Cap], r: &[f64; 5], tol: f64) -> bool {
    caps.iter()
        .all(|c| c.rhs - c.lhs.iter().zip(r).map(|(a, b)| a * b).sum::<f64>() >= -tol)
}

/// Membership of a full rate tuple in the union.
pub fn member(pieces: &[Piece], rates: [f64; 5], tol: f64) -> bool {
    pieces.iter().any(|p| p.qualifies(tol) && holds(&p.region, &rates, tol))
}

/// Membership of `(R0, R1, R2)` in the perfect-secrecy slice.
pub fn secrecy_member(pieces: &[Piece], rates: [f64; 3], tol: f64) -> bool {
    let r = [rates[0], rates[1], rates[2], 0.0, 0.0];
    pieces.iter().any(|p| p.qualifies(tol) && holds(&p.secrecy, &r, tol))
}

/// Labels of the pieces whose conditions hold.
pub fn qualifying(pieces: &[Piece], tol: f64) -> Vec<&'static str> {
    pieces.iter().filter(|p| p.qualifies(tol)).map(|p| p.label).collect()
}

fn c(ix: &[usize]) -> [f64; 5] {
    let mut v = [0.0; 5];
    for &i in ix {
        v[i] = 1.0;
    }
    v
}

fn cap(ix: &[usize], rhs: f64) -> Cap {
    Cap { lhs: c(ix), rhs }
}

const R0: usize = 0;
const R1: usize = 1;
const R2: usize = 2;
const RE1: usize = 3;
const RE2: usize = 4;
const RE: usize = 3;

/// The pieces of theorem `n` for a term source `i("A;B|C")`. `rstar`
/// overrides the compress-forward noise rate; by default each branch uses
/// its relay rate minus the quantizer cost.
pub fn literal(n: u8, i: &dyn Fn(&str) -> f64, rstar: Option<f64>) -> Vec<Piece> {
    let min = |v: &[f64]| v.iter().copied().fold(f64::INFINITY, f64::min);
    let single = |region: Vec<Cap>, secrecy: Vec<Cap>| {
        vec![Piece {
            label: "n/a",
            conditions: vec![],
            rstar: None,
            region,
            secrecy,
        }]
    };
    let cost = || i("Y1;Yhat1|X1");
    let noise = |relay: f64| rstar.unwrap_or(relay - cost());
    match n {
        1 => {
            let a = min(&[i("U,U1;Y"), i("U;Y,Y1|U1")]);
            let b = min(&[i("U,U2;Z"), i("U;Z,Y1|U2")]);
            let s1 = min(&[i("U,U1,V1;Y"), i("U,V1;Y,Y1|U1")]);
            let s2 = min(&[i("U,U2,V2;Z"), i("U,V2;Z,Y1|U2")]);
            let t1 = i("U,U2,V1;Y,Y1|U1") + i("V2;Z,Y1|U,U1,U2,V1");
            let t2 = i("U,U1,V2;Z,Y1|U2") + i("V1;Y,Y1|U,U1,U2,V2");
            let e1 = min(&[i("V1;Y|U,V2") - i("V1;Z|U,V2"), i("V1;Y|U") - i("V1;Z|U")]);
            let e2 = min(&[i("V2;Z|U,V1") - i("V2;Y|U,V1"), i("V2;Z|U") - i("V2;Y|U")]);
            let base = vec![
                cap(&[R0], a),
                cap(&[R0], b),
                cap(&[R0, R1], s1),
                cap(&[R0, R2], s2),
                cap(&[R0, R1, R2], t1),
                cap(&[R0, R1, R2], t2),
            ];
            let mut reg = base.clone();
            reg.extend([cap(&[RE1], e1), cap(&[RE2], e2)]);
            let mut sec = base;
            sec.extend([cap(&[R1], e1), cap(&[R2], e2)]);
            single(reg, sec)
        }
        2 => {
            let m = min(&[i("U;Y1|X1"), i("U,X1;Y"), i("U,X1;Z")]);
            let e1 = i("V1;Y|U,X1") - i("V1;V2|U,X1") - i("V1;Z|U,X1,V2");
            let e2 = i("V2;Z|U,X1") - i("V1;V2|U,X1") - i("V2;Y|U,X1,V1");
            single(
                vec![
                    cap(&[R0], m),
                    cap(&[R0, R1], m + i("V1;Y|U,X1")),
                    cap(&[R0, R2], m + i("V2;Z|U,X1")),
                    cap(&[R0, R1, R2], m + i("V1;Y|U,X1") + i("V2;Z|U,X1") - i("V1;V2|U,X1")),
                    cap(&[RE1], e1),
                    cap(&[RE2], e2),
                ],
                vec![cap(&[R0], m), cap(&[R1], e1), cap(&[R2], e2)],
            )
        }
        3 => {
            let m1 = min(&[i("U;Y|X1"), i("U;Z")]);
            let e11 = min(&[i("X1;Z|U,V1,V2"), i("X1;Y")]) + i("V1;Y|U,X1") - i("V1;V2|U") - i("X1,V1;Z|U,V2");
            let e12 = i("V2;Z|U") - i("V1;V2|U") - i("V2;Y|U,X1,V1");
            let m2 = min(&[i("U;Z|X1"), i("U;Y")]);
            let e21 = i("V1;Y|U") - i("V1;V2|U") - i("V1;Z|U,V2,X1");
            let e22 = min(&[i("X1;Y|U,V1,V2"), i("X1;Z")]) + i("V2;Z|U,X1") - i("V1;V2|U") - i("X1,V2;Y|U,V1");
            vec![
                Piece {
                    label: "T3.L1",
                    conditions: vec![(i("X1;Y"), i("X1;Z|U,V2"))],
                    rstar: None,
                    region: vec![
                        cap(&[R0], m1),
                        cap(&[R0, R1], m1 + i("V1;Y|U,X1")),
                        cap(&[R0, R2], m1 + i("V2;Z|U")),
                        cap(&[R0, R1, R2], m1 + i("V1;Y|U,X1") + i("V2;Z|U") - i("V1;V2|U")),
                        cap(&[RE1], e11),
                        cap(&[RE2], e12),
                    ],
                    secrecy: vec![
                        cap(&[R0], m1),
                        cap(&[R0, R1], m1 + i("V1;Y|U,X1")),
                        cap(&[R1], e11),
                        cap(&[R2], e12),
                    ],
                },
                Piece {
                    label: "T3.L2",
                    conditions: vec![(i("X1;Z"), i("X1;Y|U,V1"))],
                    rstar: None,
                    region: vec![
                        cap(&[R0], m2),
                        cap(&[R0, R1], m2 + i("V1;Y|U")),
                        cap(&[R0, R2], m2 + i("V2;Z|U,X1")),
                        cap(&[R0, R1, R2], m2 + i("V1;Y|U") + i("V2;Z|U,X1") - i("V1;V2|U")),
                        cap(&[RE1], e21),
                        cap(&[RE2], e22),
                    ],
                    secrecy: vec![
                        cap(&[R0], m2),
                        cap(&[R0, R2], m2 + i("V2;Z|U,X1")),
                        cap(&[R1], e21),
                        cap(&[R2], e22),
                    ],
                },
            ]
        }
        4 => {
            let rr1 = min(&[i("X1;Z|U,V1,V2"), i("X1;Y")]);
            let rs1 = noise(rr1);
            let m1 = min(&[i("U;Y,Yhat1|X1"), i("U;Z")]);
            let e11 = rs1 + i("V1;Y,Yhat1|U,X1") - i("V1;V2|U") - i("X1,V1;Z|U,V2");
            let e12 = i("V2;Z|U") - i("V1;V2|U") - i("V2;Y|U,X1,V1");
            let rr2 = min(&[i("X1;Y|U,V1,V2"), i("X1;Z")]);
            let rs2 = noise(rr2);
            let m2 = min(&[i("U;Z,Yhat1|X1"), i("U;Y")]);
            let e21 = i("V1;Y|U") - i("V1;V2|U") - i("V1;Z|U,V2,X1");
            let e22 = rs2 + i("V2;Z,Yhat1|U,X1") - i("V1;V2|U") - i("X1,V2;Y|U,V1");
            vec![
                Piece {
                    label: "T4.L3",
                    conditions: vec![(i("X1;Y"), i("X1;Z|U,V2")), (rr1 - rs1, cost()), (rs1, 0.0)],
                    rstar: Some(rs1),
                    region: vec![
                        cap(&[R0], m1),
                        cap(&[R0, R1], m1 + i("V1;Y,Yhat1|U,X1")),
                        cap(&[R0, R2], m1 + i("V2;Z|U")),
                        cap(&[R0, R1, R2], m1 + i("V1;Y,Yhat1|U,X1") + i("V2;Z|U") - i("V1;V2|U")),
                        cap(&[RE1], e11),
                        cap(&[RE2], e12),
                    ],
                    secrecy: vec![
                        cap(&[R0], m1),
                        cap(&[R0, R1], m1 + i("V1;Y,Yhat1|U,X1")),
                        cap(&[R1], e11),
                        cap(&[R2], e12),
                    ],
                },
                Piece {
                    label: "T4.L4",
                    conditions: vec![(i("X1;Z"), i("X1;Y|U,V1")), (rr2 - rs2, cost()), (rs2, 0.0)],
                    rstar: Some(rs2),
                    region: vec![
                        cap(&[R0], m2),
                        cap(&[R0, R1], m2 + i("V1;Y|U")),
                        cap(&[R0, R2], m2 + i("V2;Z,Yhat1|U,X1")),
                        cap(&[R0, R1, R2], m2 + i("V1;Y|U") + i("V2;Z,Yhat1|U,X1") - i("V1;V2|U")),
                        cap(&[RE1], e21),
                        cap(&[RE2], e22),
                    ],
                    secrecy: vec![
                        cap(&[R0], m2),
                        cap(&[R0, R2], m2 + i("V2;Z,Yhat1|U,X1")),
                        cap(&[R1], e21),
                        cap(&[R2], e22),
                    ],
                },
            ]
        }
        5 => {
            let a = min(&[i("U1,V1;Y"), i("V1;Y,Y1|U1")]);
            let b = min(&[i("U2,V2;Z"), i("V2;Z,Y1|U2")]);
            let t1 = i("U2,V1;Y,Y1|U1") + i("V2;Z,Y1|U1,U2,V1");
            let t2 = i("U1,V2;Z,Y1|U2") + i("V1;Y,Y1|U1,U2,V2");
            let e1 = min(&[i("V1;Y|V2") - i("V1;Z|V2"), i("V1;Y|U") - i("V1;Z|U")]);
            let e2 = min(&[i("V2;Z|V1") - i("V2;Y|V1"), i("V2;Z|U") - i("V2;Y|U")]);
            let base = vec![cap(&[R1], a), cap(&[R2], b), cap(&[R1, R2], t1), cap(&[R1, R2], t2)];
            let mut reg = base.clone();
            reg.extend([cap(&[RE1], e1), cap(&[RE2], e2)]);
            let mut sec = base;
            sec.extend([cap(&[R1], e1), cap(&[R2], e2)]);
            single(reg, sec)
        }
        6 => {
            let m = min(&[i("U;Y1|X1"), i("U,X1;Y"), i("U,X1;Z")]);
            let e1 = i("V1;Y|U,X1") - i("V1;V2|U,X1") - i("V1;Z|U,X1,V2");
            let e2 = i("V2;Z|U,X1") - i("V1;V2|U,X1") - i("V2;Y|U,X1,V1");
            single(
                vec![
                    cap(&[R1], m + i("V1;Y|U,X1")),
                    cap(&[R2], m + i("V2;Z|U,X1")),
                    cap(&[R1, R2], m + i("V1;Y|U,X1") + i("V2;Z|U,X1") - i("V1;V2|U,X1")),
                    cap(&[RE1], e1),
                    cap(&[RE2], e2),
                ],
                vec![cap(&[R1], e1), cap(&[R2], e2)],
            )
        }
        7 => {
            let m1 = min(&[i("U;Y|X1"), i("U;Z")]);
            let e11 = min(&[i("X1;Z|U,V1,V2"), i("X1;Y")]) + i("V1;Y|U,X1") - i("V1;V2|U") - i("X1,V1;Z|U,V2");
            let e12 = i("V2;Z|U") - i("V1;V2|U") - i("V2;Y|U,X1,V1");
            let m2 = min(&[i("U;Z|X1"), i("U;Y")]);
            let e21 = i("V1;Y|U") - i("V1;V2|U") - i("V1;Z|U,V2,X1");
            let e22 = min(&[i("X1;Y|U,V1,V2"), i("X1;Z")]) + i("V2;Z|U,X1") - i("V1;V2|U") - i("X1,V2;Y|U,V1");
            vec![
                Piece {
                    label: "T7.L5",
                    conditions: vec![(i("X1;Y"), i("X1;Z|U,V2"))],
                    rstar: None,
                    region: vec![
                        cap(&[R1], m1 + i("V1;Y|U,X1")),
                        cap(&[R2], m1 + i("V2;Z|U")),
                        cap(&[R1, R2], m1 + i("V1;Y|U,X1") + i("V2;Z|U") - i("V1;V2|U")),
                        cap(&[RE1], e11),
                        cap(&[RE2], e12),
                    ],
                    secrecy: vec![cap(&[R1], m1 + i("V1;Y|U,X1")), cap(&[R1], e11), cap(&[R2], e12)],
                },
                Piece {
                    label: "T7.L6",
                    conditions: vec![(i("X1;Z"), i("X1;Y|U,V1"))],
                    rstar: None,
                    region: vec![
                        cap(&[R1], m2 + i("V1;Y|U")),
                        cap(&[R2], m2 + i("V2;Z|U,X1")),
                        cap(&[R1, R2], m2 + i("V1;Y|U") + i("V2;Z|U,X1") - i("V1;V2|U")),
                        cap(&[RE1], e21),
                        cap(&[RE2], e22),
                    ],
                    secrecy: vec![cap(&[R2], m2 + i("V2;Z|U,X1")), cap(&[R1], e21), cap(&[R2], e22)],
                },
            ]
        }
        8 => {
            let rr1 = min(&[i("X1;Z|U,V1,V2"), i("X1;Y")]);
            let rs1 = noise(rr1);
            let m1 = min(&[i("U;Y,Yhat1|X1"), i("U;Z")]);
            let e11 = rs1 + i("V1;Y,Yhat1|U,X1") - i("V1;V2|U") - i("X1,V1;Z|U,V2");
            let e12 = i("V2;Z|U") - i("V1;V2|U") - i("V2;Y|U,X1,V1");
            let rr2 = min(&[i("X1;Y|U,V1,V2"), i("X1;Z")]);
            let rs2 = noise(rr2);
            let m2 = min(&[i("U;Z,Yhat1|X1"), i("U;Y")]);
            let e21 = i("V1;Y|U") - i("V1;V2|U") - i("V1;Z|U,V2,X1");
            let e22 = rs2 + i("V2;Z,Yhat1|U,X1") - i("V1;V2|U") - i("X1,V2;Y|U,V1");
            vec![
                Piece {
                    label: "T8.L7",
                    conditions: vec![(i("X1;Y"), i("X1;Z|U,V2")), (rr1 - rs1, cost()), (rs1, 0.0)],
                    rstar: Some(rs1),
                    region: vec![
                        cap(&[R1], m1 + i("V1;Y,Yhat1|U,X1")),
                        cap(&[R2], m1 + i("V2;Z|U")),
                        cap(&[R1, R2], m1 + i("V1;Y,Yhat1|U,X1") + i("V2;Z|U") - i("V1;V2|U")),
                        cap(&[RE1], e11),
                        cap(&[RE2], e12),
                    ],
                    secrecy: vec![cap(&[R1], m1 + i("V1;Y,Yhat1|U,X1")), cap(&[R1], e11), cap(&[R2], e12)],
                },
                Piece {
                    label: "T8.L8",
                    conditions: vec![(i("X1;Z"), i("X1;Y|U,V1")), (rr2 - rs2, cost()), (rs2, 0.0)],
                    rstar: Some(rs2),
                    region: vec![
                        cap(&[R1], m2 + i("V1;Y|U")),
                        cap(&[R2], m2 + i("V2;Z,Yhat1|U,X1")),
                        cap(&[R1, R2], m2 + i("V1;Y|U") + i("V2;Z,Yhat1|U,X1") - i("V1;V2|U")),
                        cap(&[RE1], e21),
                        cap(&[RE2], e22),
                    ],
                    secrecy: vec![cap(&[R1], e21), cap(&[R2], m2 + i("V2;Z,Yhat1|U,X1")), cap(&[R2], e22)],
                },
            ]
        }
        9 => {
            let a = min(&[i("U,U1;Y"), i("U;Y,Y1|U1")]);
            let b = min(&[i("U,U2;Z"), i("U;Z,Y1|U2")]);
            let s = min(&[i("U,U1,V;Y"), i("U,V;Y,Y1|U1")]);
            let t = i("U,U1;Z,Y1|U2") + i("V;Y,Y1|U,U1,U2");
            let e = i("V;Y|U") - i("V;Z|U");
            let base = vec![cap(&[R0], a), cap(&[R0], b), cap(&[R0, R1], s), cap(&[R0, R1], t)];
            let mut reg = base.clone();
            reg.push(cap(&[RE], e));
            let mut sec = base;
            sec.push(cap(&[R1], e));
            single(reg, sec)
        }
        10 => {
            let m = min(&[i("U;Y1|X1"), i("U,X1;Y"), i("U,X1;Z")]);
            let e = i("V;Y|U,X1") - i("V;Z|U,X1");
            single(
                vec![cap(&[R0], m), cap(&[R0, R1], m + i("V;Y|U,X1")), cap(&[RE], e)],
                vec![cap(&[R0], m), cap(&[R1], e)],
            )
        }
        11 => {
            let m1 = min(&[i("U;Y|X1"), i("U;Z")]);
            let e1 = min(&[i("X1;Z|U,V"), i("X1;Y")]) + i("V;Y|U,X1") - i("X1,V;Z|U");
            let m2 = min(&[i("U;Y|X1"), i("U;Z|X1")]);
            let e2 = i("V;Y|U,X1") - i("V;Z|U,X1");
            vec![
                Piece {
                    label: "T11.L9",
                    conditions: vec![(i("X1;Y"), i("X1;Z|U"))],
                    rstar: None,
                    region: vec![cap(&[R0], m1), cap(&[R0, R1], m1 + i("V;Y|U,X1")), cap(&[RE], e1)],
                    secrecy: vec![cap(&[R0], m1), cap(&[R0, R1], m1 + i("V;Y|U,X1")), cap(&[R1], e1)],
                },
                Piece {
                    label: "T11.L10",
                    conditions: vec![(i("X1;Z"), i("X1;Y"))],
                    rstar: None,
                    region: vec![cap(&[R0], m2), cap(&[R0, R1], m2 + i("V;Y|U,X1")), cap(&[RE], e2)],
                    secrecy: vec![cap(&[R0], m2), cap(&[R1], e2)],
                },
            ]
        }
        12 => {
            let rr = min(&[i("X1;Z|U,V"), i("X1;Y")]);
            let rs = noise(rr);
            let m1 = min(&[i("U;Y,Yhat1|X1"), i("U;Z")]);
            let e1 = rs + i("V;Y,Yhat1|U,X1") - i("X1,V;Z|U");
            let m2 = min(&[i("U;Y,Yhat1|X1"), i("U;Z,Yhat1|X1")]);
            let e2 = i("V;Y,Yhat1|U,X1") - i("V;Z|U,X1");
            vec![
                Piece {
                    label: "T12.L11",
                    conditions: vec![(i("X1;Y"), i("X1;Z|U")), (rr - rs, cost()), (rs, 0.0)],
                    rstar: Some(rs),
                    region: vec![cap(&[R0], m1), cap(&[R0, R1], m1 + i("V;Y,Yhat1|U,X1")), cap(&[RE], e1)],
                    secrecy: vec![cap(&[R0], m1), cap(&[R0, R1], m1 + i("V;Y,Yhat1|U,X1")), cap(&[R1], e1)],
                },
                Piece {
                    label: "T12.L12",
                    conditions: vec![(i("X1;Z"), i("X1;Y")), (i("X1;Y"), cost())],
                    rstar: None,
                    region: vec![cap(&[R0], m2), cap(&[R0, R1], m2 + i("V;Y,Yhat1|U,X1")), cap(&[RE], e2)],
                    secrecy: vec![cap(&[R0], m2), cap(&[R1], e2)],
                },
            ]
        }
        _ => panic!("no theorem {n}"),
    }
}
