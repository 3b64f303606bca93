//! Reflexive polygons up to `GL₂(ℤ)` and a handful of smooth toric Fano
//! threefolds.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rational::gcd_i64;
use crate::toric::fan::Fan;
use crate::toric::polytope::LatticePolytope;
use crate::toric::variety::ToricVariety;

fn det2(a: &[i64], b: &[i64]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Vertices of a polygon in counter-clockwise order.
pub fn ccw_vertices(p: &LatticePolytope) -> Vec<Vec<i64>> {
    let mut vs = p.vertices().to_vec();
    let c: Vec<i64> = (0..2).map(|k| vs.iter().map(|v| v[k]).sum()).collect();
    let n = vs.len() as i64;
    // angles about the (scaled) centroid, compared exactly by half-plane then cross product
    let rel = |v: &Vec<i64>| [n * v[0] - c[0], n * v[1] - c[1]];
    let half = |r: [i64; 2]| if r[1] > 0 || (r[1] == 0 && r[0] > 0) { 0 } else { 1 };
    vs.sort_by(|a, b| {
        let (ra, rb) = (rel(a), rel(b));
        half(ra).cmp(&half(rb)).then_with(|| 0.cmp(&det2(&ra, &rb)))
    });
    vs
}

/// `GL₂(ℤ)` normal form of a reflexive polygon: the lexicographically least
/// sorted vertex list over all maps sending a vertex to `(1, 0)` and the
/// primitive direction of an incident edge, either way along it, to `(0, 1)`.
pub fn normal_form(p: &LatticePolytope) -> Result<Vec<Vec<i64>>> {
    if p.dim() != 2 || !p.is_reflexive() {
        return Err(Error::NotReflexive);
    }
    let vs = ccw_vertices(p);
    let k = vs.len();
    let mut best: Option<Vec<Vec<i64>>> = None;
    for i in 0..k {
        for (v, w) in [(&vs[i], &vs[(i + 1) % k]), (&vs[(i + 1) % k], &vs[i])] {
            let d = [w[0] - v[0], w[1] - v[1]];
            let g = gcd_i64(d[0], d[1]);
            let e = [d[0] / g, d[1] / g];
            // columns v, e form a unimodular matrix; invert it
            let det = det2(v, &e);
            if det.abs() != 1 {
                return Err(Error::NotReflexive);
            }
            let inv = [[e[1] * det, -e[0] * det], [-v[1] * det, v[0] * det]];
            let mut img: Vec<Vec<i64>> = vs
                .iter()
                .map(|x| {
                    vec![
                        inv[0][0] * x[0] + inv[0][1] * x[1],
                        inv[1][0] * x[0] + inv[1][1] * x[1],
                    ]
                })
                .collect();
            img.sort();
            if best.as_ref().is_none_or(|b| img < *b) {
                best = Some(img);
            }
        }
    }
    Ok(best.expect("a polygon has edges"))
}

/// The reflexive polygons up to `GL₂(ℤ)`, each in normal form, ordered by
/// vertex count and then by normal form.
pub fn reflexive_polygons() -> Vec<LatticePolytope> {
    const R: i64 = 3;
    let box_pts: Vec<[i64; 2]> = (-R..=R)
        .flat_map(|x| (-R..=R).map(move |y| [x, y]))
        .filter(|p| *p != [0, 0])
        .collect();
    let mut forms: Vec<Vec<Vec<i64>>> = Vec::new();

    // Each edge vw lies on a line at lattice distance one from the origin:
    // det(v, w) = gcd(w − v). The walk turns strictly left at every vertex.
    fn edge_ok(v: &[i64; 2], w: &[i64; 2]) -> bool {
        let d = det2(v, w);
        d > 0 && d == gcd_i64(w[0] - v[0], w[1] - v[1])
    }
    fn turn_ok(a: &[i64; 2], b: &[i64; 2], c: &[i64; 2]) -> bool {
        det2(&[b[0] - a[0], b[1] - a[1]], &[c[0] - b[0], c[1] - b[1]]) > 0
    }
    fn walk(path: &mut Vec<[i64; 2]>, pts: &[[i64; 2]], out: &mut Vec<Vec<Vec<i64>>>) {
        let first = path[0];
        let last = *path.last().unwrap();
        if path.len() >= 3
            && edge_ok(&last, &first)
            && turn_ok(&path[path.len() - 2], &last, &first)
            && turn_ok(&last, &first, &path[1])
        {
            let verts: Vec<Vec<i64>> = path.iter().map(|p| p.to_vec()).collect();
            if let Ok(poly) = LatticePolytope::from_points(2, &verts) {
                if poly.vertices().len() == path.len() {
                    if let Ok(nf) = normal_form(&poly) {
                        if !out.contains(&nf) {
                            out.push(nf);
                        }
                    }
                }
            }
        }
        if path.len() == 6 {
            return;
        }
        for w in pts {
            // the first vertex is the lexicographically least one
            if *w <= first || path.contains(w) || !edge_ok(&last, w) {
                continue;
            }
            if path.len() >= 2 && !turn_ok(&path[path.len() - 2], &last, w) {
                continue;
            }
            path.push(*w);
            walk(path, pts, out);
            path.pop();
        }
    }
    for v in &box_pts {
        walk(&mut vec![*v], &box_pts, &mut forms);
    }
    forms.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    forms
        .into_iter()
        .map(|f| LatticePolytope::from_points(2, &f).expect("normal form is a polygon"))
        .collect()
}

/// A smooth toric Fano threefold given by the rays of its fan.
#[derive(Debug, Clone)]
pub struct Threefold {
    pub name: &'static str,
    pub rays: Vec<Vec<i64>>,
}

impl Threefold {
    /// The anticanonical polytope: the polar of the convex hull of the rays.
    pub fn polytope(&self) -> Result<LatticePolytope> {
        LatticePolytope::from_points(3, &self.rays)?.dual_polytope()
    }

    pub fn variety(&self) -> Result<ToricVariety> {
        ToricVariety::new(String::from(self.name), Fan::from_fano_rays(&self.rays)?)
    }
}

pub fn threefolds() -> Vec<Threefold> {
    let e = |a: i64, b: i64, c: i64| vec![a, b, c];
    vec![
        Threefold {
            name: "P3",
            rays: vec![e(1, 0, 0), e(0, 1, 0), e(0, 0, 1), e(-1, -1, -1)],
        },
        Threefold {
            name: "P1xP2",
            rays: vec![e(1, 0, 0), e(-1, 0, 0), e(0, 1, 0), e(0, 0, 1), e(0, -1, -1)],
        },
        Threefold {
            name: "P1xP1xP1",
            rays: vec![e(1, 0, 0), e(-1, 0, 0), e(0, 1, 0), e(0, -1, 0), e(0, 0, 1), e(0, 0, -1)],
        },
        Threefold {
            name: "Bl_pP3",
            rays: vec![e(1, 0, 0), e(0, 1, 0), e(0, 0, 1), e(-1, -1, -1), e(1, 1, 1)],
        },
        Threefold {
            name: "P(O(1)+O+O)",
            rays: vec![e(1, 0, 0), e(0, 1, 0), e(0, 0, 1), e(-1, -1, -1), e(1, 1, 0)],
        },
        Threefold {
            name: "P1xBl_pP2",
            rays: vec![e(1, 0, 0), e(-1, 0, 0), e(0, 1, 0), e(0, 0, 1), e(0, -1, -1), e(0, 1, 1)],
        },
    ]
}
