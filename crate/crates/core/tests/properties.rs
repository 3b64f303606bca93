use std::sync::OnceLock;

use proptest::prelude::*;

use nefdex_core::delpezzo::{SurfaceKind, SurfaceModel};
use nefdex_core::lattice::IntersectionLattice;
use nefdex_core::nef::NefContext;
use nefdex_core::rational::{dot, q, Q};
use nefdex_core::simplex::maximize;
use nefdex_core::tau::{DecompositionCertificate, DualCertificate, tau_integral, tau_rational, verify_dual, verify_primal, TauConfig};
use nefdex_core::toric::{minkowski_sum, reflexive_polygons, threefolds, LatticePolytope, ToricVariety};

const TAU_Q: [(i64, i64); 10] = [(3, 1), (4, 1), (3, 1), (3, 1), (3, 1), (5, 2), (2, 1), (3, 2), (1, 1), (1, 1)];

fn surface(i: usize) -> SurfaceModel {
    SurfaceModel::build(SurfaceKind::catalog()[i]).unwrap()
}

fn toric_corpus() -> &'static [(ToricVariety, LatticePolytope)] {
    static CORPUS: OnceLock<Vec<(ToricVariety, LatticePolytope)>> = OnceLock::new();
    CORPUS.get_or_init(build_corpus)
}

type Solved = (SurfaceModel, DecompositionCertificate, DualCertificate, Vec<Vec<i64>>);

/// Each surface with its rational certificates and nef classes of degree ≤ 4.
fn solved() -> &'static [Solved] {
    static SOLVED: OnceLock<Vec<Solved>> = OnceLock::new();
    SOLVED.get_or_init(|| {
        (0..10)
            .map(|i| {
                let s = surface(i);
                let (_, primal, dual) = tau_rational(&s, &TauConfig::default()).unwrap();
                let pool = s.enumerate_nef(4);
                (s, primal, dual, pool)
            })
            .collect()
    })
}

fn build_corpus() -> Vec<(ToricVariety, LatticePolytope)> {
    let mut out: Vec<(ToricVariety, LatticePolytope)> = reflexive_polygons()
        .into_iter()
        .map(|p| (ToricVariety::from_reflexive("polygon", &p).unwrap(), p))
        .collect();
    for t in threefolds() {
        out.push((t.variety().unwrap(), t.polytope().unwrap()));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lp_duality(
        a in prop::collection::vec(prop::collection::vec(0i64..5, 4), 2),
        x0 in prop::collection::vec(0i64..4, 4),
        c in prop::collection::vec(-3i64..4, 4),
    ) {
        // a capacity row keeps the problem bounded
        let mut rows: Vec<Vec<Q>> = a.iter().map(|r| r.iter().map(|&v| q(v)).chain([q(0)]).collect()).collect();
        rows.push(vec![q(1); 5]);
        let mut b: Vec<Q> = a.iter().map(|r| q(r.iter().zip(&x0).map(|(u, v)| u * v).sum())).collect();
        b.push(q(x0.iter().sum::<i64>() + 2));
        let cq: Vec<Q> = c.iter().map(|&v| q(v)).chain([q(0)]).collect();
        let sol = maximize(&rows, &b, &cq).unwrap();
        for (row, bi) in rows.iter().zip(&b) {
            let lhs = row.iter().zip(&sol.x).fold(q(0), |s, (u, v)| s + u * v);
            prop_assert_eq!(&lhs, bi);
        }
        prop_assert!(sol.x.iter().all(|v| *v >= q(0)));
        for j in 0..5 {
            let col = rows.iter().zip(&sol.dual).fold(q(0), |s, (r, y)| s + &r[j] * y);
            prop_assert!(col >= cq[j]);
        }
        let by = b.iter().zip(&sol.dual).fold(q(0), |s, (u, v)| s + u * v);
        prop_assert_eq!(&by, &sol.objective);
        let cx = cq.iter().zip(&sol.x).fold(q(0), |s, (u, v)| s + u * v);
        prop_assert_eq!(&cx, &sol.objective);
        // any other feasible point does no better
        let other: Vec<Q> = x0.iter().map(|&v| q(v)).chain([q(2)]).collect();
        let cxo = cq.iter().zip(&other).fold(q(0), |s, (u, v)| s + u * v);
        prop_assert!(cxo <= sol.objective);
    }

    #[test]
    fn pairing_is_symmetric_and_bilinear(
        r in 0usize..=8,
        u in prop::collection::vec(-5i64..6, 9),
        v in prop::collection::vec(-5i64..6, 9),
        w in prop::collection::vec(-5i64..6, 9),
        k in -4i64..5,
    ) {
        let lat = IntersectionLattice::blowup("x", r);
        let (u, v, w) = (&u[..=r], &v[..=r], &w[..=r]);
        prop_assert_eq!(lat.pair_i64(u, v), lat.pair_i64(v, u));
        let comb: Vec<i64> = v.iter().zip(w).map(|(a, b)| k * a + b).collect();
        prop_assert_eq!(lat.pair_i64(u, &comb), k * lat.pair_i64(u, v) + lat.pair_i64(u, w));
    }

    #[test]
    fn tau_does_not_depend_on_the_initial_pool(i in 0usize..10, start in 1i64..=9) {
        let s = surface(i);
        let cfg = TauConfig { initial_degree: Some(start.min(s.degree(s.anticanonical()))), ..TauConfig::default() };
        let (value, primal, dual) = tau_rational(&s, &cfg).unwrap();
        prop_assert_eq!(value, Q::new(TAU_Q[i].0.into(), TAU_Q[i].1.into()));
        verify_primal(&s, &primal).unwrap();
        verify_dual(&s, &dual).unwrap();
    }

    #[test]
    fn dual_functional_bounds_every_nef_class(i in 0usize..10, pick in any::<prop::sample::Index>()) {
        let (_, primal, dual, pool) = &solved()[i];
        if !pool.is_empty() {
            let l = pick.get(pool);
            prop_assert!(dot(&dual.functional, l) >= q(1));
        }
        // weak duality on the emitted decomposition
        let total = primal.terms.iter().fold(q(0), |a, t| a + &t.coeff * dot(&dual.functional, &t.class));
        prop_assert_eq!(&total, &dual.value);
    }

    #[test]
    fn integral_index_is_at_most_rational(i in 0usize..10) {
        let s = surface(i);
        let (z, cert) = tau_integral(&s).unwrap();
        verify_primal(&s, &cert).unwrap();
        let (qv, _, _) = tau_rational(&s, &TauConfig::default()).unwrap();
        prop_assert!(q(z) <= qv);
    }

    #[test]
    fn minus_one_curves_are_exceptional(r in 1usize..=8, pick in any::<prop::sample::Index>()) {
        let curves = nefdex_core::delpezzo::minus_one_curves(r);
        let c = pick.get(&curves);
        let lat = IntersectionLattice::blowup("x", r);
        let mut k = vec![1; r + 1];
        k[0] = 3;
        prop_assert_eq!(lat.pair_i64(c, c), -1);
        prop_assert_eq!(lat.pair_i64(c, &k), 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn divisor_polytopes_are_additive(
        which in any::<prop::sample::Index>(),
        a in any::<prop::sample::Index>(),
        b in any::<prop::sample::Index>(),
    ) {
        let corpus = toric_corpus();
        let (var, _) = which.get(corpus);
        let pool = var.enumerate_nef(var.degree(var.anticanonical()));
        prop_assume!(!pool.is_empty());
        let (x, y) = (a.get(&pool), b.get(&pool));
        let sum: Vec<i64> = x.iter().zip(y).map(|(u, v)| u + v).collect();
        let lhs = var.divisor_polytope(&sum).unwrap();
        let rhs = minkowski_sum(&var.divisor_polytope(x).unwrap(), &var.divisor_polytope(y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn polar_duality_is_an_involution() {
    for (_, p) in toric_corpus() {
        let p = p.clone();
        assert_eq!(p.dual_polytope().unwrap().dual_polytope().unwrap(), p);
    }
}

#[test]
fn picard_rank_is_facets_minus_dimension() {
    for (var, p) in toric_corpus() {
        let p = p.clone();
        let f = p.facets().unwrap().len();
        assert_eq!(f, var.fan().rays().len());
        if var.fan().is_smooth() {
            assert_eq!(var.rank(), f - p.dim());
        }
    }
}
