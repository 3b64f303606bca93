//! Explicit decompositions of −K attaining the tabulated indices, checked
//! against the certificate verifier and the computed values.

use nefdex_core::delpezzo::{SurfaceKind, SurfaceModel};
use nefdex_core::nef::NefContext;
use nefdex_core::rational::{q, qf, Q};
use nefdex_core::tau::{tau_integral, tau_rational, verify_primal, DecompositionCertificate, Ring, TauConfig, Term};

fn cert(s: &SurfaceModel, ring: Ring, terms: &[(Q, Vec<i64>)]) -> DecompositionCertificate {
    DecompositionCertificate {
        context: s.id().to_string(),
        ring,
        target: s.anticanonical_class().coords().to_vec(),
        objective: terms.iter().fold(q(0), |a, (c, _)| a + c),
        terms: terms.iter().map(|(c, l)| Term { coeff: c.clone(), class: l.clone() }).collect(),
    }
}

/// `H − E_i` on `Bl_r`.
fn pencil(r: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; r + 1];
    v[0] = 1;
    v[i] = 1;
    v
}

/// `2H − Σ_{i∈I} E_i`, the conics through four of the points.
fn conics(r: usize, idx: [usize; 4]) -> Vec<i64> {
    let mut v = vec![0; r + 1];
    v[0] = 2;
    for i in idx {
        v[i] = 1;
    }
    v
}

fn hyperplane(r: usize) -> Vec<i64> {
    let mut v = vec![0; r + 1];
    v[0] = 1;
    v
}

fn check(kind: &str, ring: Ring, terms: Vec<(Q, Vec<i64>)>) {
    let s = SurfaceModel::build(SurfaceKind::parse(kind).unwrap()).unwrap();
    let c = cert(&s, ring, &terms);
    verify_primal(&s, &c).unwrap();
    let computed = match ring {
        Ring::Q => tau_rational(&s, &TauConfig::default()).unwrap().0,
        Ring::Z => q(tau_integral(&s).unwrap().0),
    };
    assert_eq!(c.objective, computed, "{kind}");
}

#[test]
fn explicit_decompositions_attain_the_index() {
    let one = q(1);
    let half = qf(1, 2);
    check("P2", Ring::Z, vec![(q(3), vec![1])]);
    check("P1xP1", Ring::Z, vec![(q(2), vec![1, 0]), (q(2), vec![0, 1])]);
    check("dP1", Ring::Z, vec![(one.clone(), pencil(1, 1)), (q(2), hyperplane(1))]);
    check("dP2", Ring::Z, vec![(one.clone(), pencil(2, 1)), (one.clone(), pencil(2, 2)), (one.clone(), hyperplane(2))]);
    check("dP3", Ring::Z, (1..=3).map(|i| (one.clone(), pencil(3, i))).collect());
    let mut r4 = vec![(half.clone(), conics(4, [1, 2, 3, 4]))];
    r4.extend((1..=4).map(|i| (half.clone(), pencil(4, i))));
    check("dP4", Ring::Q, r4);
    check("dP4", Ring::Z, vec![(one.clone(), conics(4, [1, 2, 3, 4])), (one.clone(), hyperplane(4))]);
    check("dP5", Ring::Z, vec![(one.clone(), conics(5, [1, 2, 3, 4])), (one.clone(), pencil(5, 5))]);
    check("dP5", Ring::Q, vec![(one.clone(), conics(5, [1, 2, 3, 4])), (one.clone(), pencil(5, 5))]);
    check(
        "dP6",
        Ring::Q,
        vec![
            (half.clone(), conics(6, [1, 2, 3, 4])),
            (half.clone(), conics(6, [3, 4, 5, 6])),
            (half.clone(), conics(6, [1, 2, 5, 6])),
        ],
    );
    for (kind, r) in [("dP6", 6), ("dP7", 7), ("dP8", 8)] {
        let mut k = vec![1; r + 1];
        k[0] = 3;
        check(kind, Ring::Z, vec![(one.clone(), k.clone())]);
        if r > 6 {
            check(kind, Ring::Q, vec![(one.clone(), k)]);
        }
    }
}

#[test]
fn non_nef_or_inexact_decompositions_are_rejected() {
    let s = SurfaceModel::build(SurfaceKind::Blowup(4)).unwrap();
    // E_1 is not nef
    let bad = cert(&s, Ring::Z, &[(q(1), vec![3, 0, 1, 1, 1]), (q(1), vec![0, 1, 0, 0, 0])]);
    assert!(verify_primal(&s, &bad).is_err());
    // a half coefficient is not integral
    let frac = cert(&s, Ring::Z, &[(qf(1, 2), conics(4, [1, 2, 3, 4])), (qf(1, 2), vec![4, 1, 1, 1, 1])]);
    assert!(verify_primal(&s, &frac).is_err());
    // the terms miss −K
    let short = cert(&s, Ring::Z, &[(q(1), conics(4, [1, 2, 3, 4]))]);
    assert!(verify_primal(&s, &short).is_err());
}
