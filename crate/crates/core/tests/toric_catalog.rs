use nefdex_core::nef::NefContext;
use nefdex_core::rational::q;
use nefdex_core::tau::{nef_complexity, Ring, TauConfig};
use nefdex_core::toric::index::tau_of_variety;
use nefdex_core::toric::{cube_bound_check, facet_bound_check, reflexive_polygons, threefolds, LatticePolytope};

fn is_square(p: &LatticePolytope) -> bool {
    p.vertices().len() == 4 && p.lattice_points().len() == 9
}

fn is_p2_triangle(p: &LatticePolytope) -> bool {
    p.vertices().len() == 3 && p.lattice_points().len() == 10
}

#[test]
fn polygon_bounds_over_the_catalog() {
    let cfg = TauConfig::default();
    let mut equalities = 0;
    let mut cube_equalities = 0;
    for p in reflexive_polygons() {
        let r = facet_bound_check(&p, &cfg).unwrap();
        assert!(r.tau <= q(r.facets as i64));
        if r.equality {
            equalities += 1;
            assert!(r.product_of_simplices);
            assert!(is_square(&p) || is_p2_triangle(&p), "{:?}", p.vertices());
        }
        let c = cube_bound_check(&p).unwrap();
        assert!(c.parts <= 4);
        if c.equality {
            cube_equalities += 1;
            assert!(c.cube && is_square(&p));
        }
    }
    assert_eq!(equalities, 2);
    assert_eq!(cube_equalities, 1);
}

#[test]
fn threefold_indices() {
    let expected = [
        ("P3", 4, 0),
        ("P1xP2", 5, 0),
        ("P1xP1xP1", 6, 0),
        ("Bl_pP3", 4, 1),
        ("P(O(1)+O+O)", 4, 1),
        ("P1xBl_pP2", 5, 1),
    ];
    let cfg = TauConfig::default();
    for (t, (name, tau, c)) in threefolds().iter().zip(expected) {
        assert_eq!(t.name, name);
        let var = t.variety().unwrap();
        let p = t.polytope().unwrap();
        for ring in [Ring::Q, Ring::Z] {
            let res = tau_of_variety(&var, &p, ring, &cfg).unwrap();
            assert_eq!(res.value, q(tau), "{name} {ring:?}");
        }
        assert_eq!(nef_complexity(&var, &cfg).unwrap(), q(c), "{name}");
        assert_eq!(var.rank() + 3, p.facets().unwrap().len());
    }
}
