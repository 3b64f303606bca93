//! Complete simplicial fans in dimension two and three.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{gcd_i64, primitive_i64};
use crate::toric::polytope::{dot_i64, LatticePolytope};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fan {
    dim: usize,
    rays: Vec<Vec<i64>>,
    cones: Vec<Vec<usize>>,
    smooth: bool,
}

/// A codimension-one cone shared by two maximal cones, with the two rays
/// completing it on either side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wall {
    pub rays: Vec<usize>,
    pub cones: (usize, usize),
    pub opposite: (usize, usize),
}

fn det_of(rays: &[Vec<i64>], idx: &[usize]) -> i64 {
    let m: Vec<Vec<i64>> = idx.iter().map(|&i| rays[i].clone()).collect();
    linalg::det_i64(&m)
}

/// Index of the sublattice spanned by `idx` in its saturation.
fn wall_multiplicity(rays: &[Vec<i64>], idx: &[usize]) -> i64 {
    match idx.len() {
        1 => 1,
        2 => {
            let (a, b) = (&rays[idx[0]], &rays[idx[1]]);
            let cross = [
                a[1] * b[2] - a[2] * b[1],
                a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0],
            ];
            cross.iter().fold(0, |g, &x| gcd_i64(g, x))
        }
        _ => unreachable!("walls have one or two rays"),
    }
}

impl Fan {
    /// Validates a fan from primitive rays and maximal cones, each given as
    /// `dim` ray indices.
    pub fn new(rays: Vec<Vec<i64>>, cones: Vec<Vec<usize>>) -> Result<Self> {
        let dim = rays.first().map_or(0, Vec::len);
        if !(2..=3).contains(&dim) {
            return Err(Error::InvalidInput(alloc::format!(
                "fan dimension {dim} outside 2..=3"
            )));
        }
        for r in &rays {
            if r.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: r.len(),
                });
            }
            if r.iter().all(|&x| x == 0) || primitive_i64(r) != *r {
                return Err(Error::InvalidInput(alloc::format!("ray {r:?} is not primitive")));
            }
        }
        let mut cones: Vec<Vec<usize>> = cones
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        cones.sort();
        for c in &cones {
            if c.iter().any(|&i| i >= rays.len()) {
                return Err(Error::InvalidInput("cone refers to a missing ray".into()));
            }
            if c.len() != dim || det_of(&rays, c) == 0 {
                return Err(Error::NotSimplicial);
            }
        }
        let smooth = cones.iter().all(|c| det_of(&rays, c).abs() == 1);
        let fan = Self {
            dim,
            rays,
            cones,
            smooth,
        };
        fan.check_complete()?;
        Ok(fan)
    }

    /// The normal fan: rays are the primitive inner facet normals, and every
    /// vertex contributes the cone over the normals of its facets.
    pub fn normal_fan(p: &LatticePolytope) -> Result<Self> {
        let facets = p.facets()?;
        if p.dim() < 2 {
            return Err(Error::InvalidInput("normal fans need dimension 2 or 3".into()));
        }
        let rays: Vec<Vec<i64>> = facets.iter().map(|f| f.normal.clone()).collect();
        let cones = p
            .vertices()
            .iter()
            .map(|v| {
                (0..facets.len())
                    .filter(|&i| dot_i64(&facets[i].normal, v) == -facets[i].offset)
                    .collect()
            })
            .collect();
        Self::new(rays, cones)
    }

    /// The fan of the toric variety whose anticanonical polytope is the
    /// reflexive polytope `p`.
    pub fn of_reflexive(p: &LatticePolytope) -> Result<Self> {
        if !p.is_reflexive() {
            return Err(Error::NotReflexive);
        }
        Self::normal_fan(p)
    }

    /// The fan over the faces of `conv(rays)`, for a smooth or Gorenstein
    /// Fano whose rays are the vertices of that polytope.
    pub fn from_fano_rays(rays: &[Vec<i64>]) -> Result<Self> {
        let dim = rays.first().map_or(0, Vec::len);
        let poly = LatticePolytope::from_points(dim, rays)?;
        if poly.vertices().len() != rays.len() {
            return Err(Error::InvalidInput("rays are not the vertices of their hull".into()));
        }
        let moment = poly.dual_polytope()?;
        let fan = Self::normal_fan(&moment)?;
        // keep the caller's ray order
        let perm: Vec<usize> = fan
            .rays
            .iter()
            .map(|r| rays.iter().position(|s| s == r).expect("same ray set"))
            .collect();
        let cones = fan
            .cones
            .iter()
            .map(|c| c.iter().map(|&i| perm[i]).collect())
            .collect();
        Self::new(rays.to_vec(), cones)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn is_smooth(&self) -> bool {
        self.smooth
    }

    pub fn is_simplicial(&self) -> bool {
        true
    }

    pub fn is_complete(&self) -> bool {
        true
    }

    /// `|det|` of the rays of a maximal cone.
    pub fn multiplicity(&self, cone: usize) -> i64 {
        det_of(&self.rays, &self.cones[cone]).abs()
    }

    /// Every wall, in lexicographic order of its ray set.
    pub fn walls(&self) -> Vec<Wall> {
        let mut out: Vec<Wall> = Vec::new();
        for (ci, c) in self.cones.iter().enumerate() {
            for skip in 0..c.len() {
                let tau: Vec<usize> = c.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &r)| r).collect();
                if out.iter().any(|w| w.rays == tau) {
                    continue;
                }
                let other = self
                    .cones
                    .iter()
                    .enumerate()
                    .find(|&(cj, d)| cj != ci && tau.iter().all(|r| d.contains(r)))
                    .map(|(cj, _)| cj)
                    .expect("complete fans have two cones at every wall");
                let extra = *self.cones[other].iter().find(|r| !tau.contains(r)).unwrap();
                out.push(Wall {
                    rays: tau,
                    cones: (ci, other),
                    opposite: (c[skip], extra),
                });
            }
        }
        out.sort_by(|a, b| a.rays.cmp(&b.rays));
        out
    }

    /// Intersection numbers `D_ρ · V(τ)` for all rays, from the wall relation.
    pub fn wall_relation(&self, wall: &Wall) -> Vec<crate::rational::Q> {
        use crate::rational::{q, qf, Q};
        let mt = wall_multiplicity(&self.rays, &wall.rays);
        let (a, b) = wall.opposite;
        let mut w = vec![Q::from_integer(0.into()); self.rays.len()];
        w[a] = qf(mt, self.multiplicity(wall.cones.0));
        w[b] = qf(mt, self.multiplicity(wall.cones.1));
        // Σ_{ρ∈τ} w_ρ u_ρ = −(w_a u_a + w_b u_b)
        let target: Vec<Q> = (0..self.dim)
            .map(|i| -(&w[a] * q(self.rays[a][i]) + &w[b] * q(self.rays[b][i])))
            .collect();
        let m: linalg::Matrix = (0..self.dim)
            .map(|i| wall.rays.iter().map(|&r| q(self.rays[r][i])).collect())
            .collect();
        let sol = solve_overdetermined(&m, &target).expect("wall relation exists");
        for (k, &r) in wall.rays.iter().enumerate() {
            w[r] = sol[k].clone();
        }
        w
    }

    fn check_complete(&self) -> Result<()> {
        // every facet of every maximal cone borders exactly one other cone,
        // on the opposite side
        for c in &self.cones {
            for skip in 0..c.len() {
                let tau: Vec<usize> = c.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &r)| r).collect();
                let others: Vec<&Vec<usize>> = self
                    .cones
                    .iter()
                    .filter(|d| *d != c && tau.iter().all(|r| d.contains(r)))
                    .collect();
                if others.len() != 1 {
                    return Err(Error::IncompleteFan(alloc::format!(
                        "wall {tau:?} borders {} cones",
                        others.len() + 1
                    )));
                }
                let extra = *others[0].iter().find(|r| !tau.contains(r)).unwrap();
                let side = |r: usize| {
                    let mut idx = tau.clone();
                    idx.push(r);
                    det_of(&self.rays, &idx).signum()
                };
                if side(c[skip]) == side(extra) {
                    return Err(Error::IncompleteFan(alloc::format!(
                        "cones overlap across wall {tau:?}"
                    )));
                }
            }
        }
        // covering degree one at a generic point
        let probe: Vec<i64> = [1_000_003i64, 1_009, 17][..self.dim].to_vec();
        let covering = self
            .cones
            .iter()
            .filter(|c| {
                let m: linalg::Matrix = (0..self.dim)
                    .map(|i| c.iter().map(|&r| crate::rational::q(self.rays[r][i])).collect())
                    .collect();
                let b: Vec<_> = probe.iter().map(|&x| crate::rational::q(x)).collect();
                linalg::solve(&m, &b)
                    .map(|x| x.iter().all(|v| *v > crate::rational::q(0)))
                    .unwrap_or(false)
            })
            .count();
        if covering != 1 {
            return Err(Error::IncompleteFan(alloc::format!(
                "generic point lies in {covering} cones"
            )));
        }
        Ok(())
    }
}

/// Solves a consistent system with full column rank.
fn solve_overdetermined(m: &linalg::Matrix, b: &[crate::rational::Q]) -> Option<Vec<crate::rational::Q>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut aug: linalg::Matrix = m
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = linalg::rref(&mut aug);
    if pivots.contains(&cols) || pivots.len() < cols {
        return None;
    }
    Some((0..cols).map(|k| aug[k][cols].clone()).collect())
}
