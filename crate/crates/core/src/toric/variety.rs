//! A complete simplicial toric variety seen through its Picard group.
//!
//! A torus-invariant divisor `Σ a_ρ D_ρ` is only defined up to the principal
//! divisors `a_ρ ↦ a_ρ + ⟨m, u_ρ⟩`. Classes are normalised to vanish on a
//! fixed reference cone `σ₀` (a smooth one when available), and the remaining
//! `f − n` coefficients are the coordinates. Cartier classes always have
//! integral coordinates, since their local data `m_σ₀` is integral.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::nef::NefContext;
use crate::rational::{dot, q, qvec, to_i64, Q};
use crate::simplex;
use crate::toric::fan::Fan;
use crate::toric::polytope::LatticePolytope;

/// Coefficients `a_ρ`, aligned with the fan's ray order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ToricDivisor {
    pub coeffs: Vec<i64>,
}

impl ToricDivisor {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Self { coeffs }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorOracles {
    pub cartier: bool,
    pub nef: bool,
    pub big: bool,
    pub pseudoeffective: bool,
}

#[derive(Debug, Clone)]
pub struct ToricVariety {
    id: String,
    fan: Fan,
    reference: usize,
    /// Rays outside the reference cone, in order; one coordinate each.
    free_rays: Vec<usize>,
    anticanonical: Vec<i64>,
    walls: Vec<Vec<Q>>,
    degree_functional: Vec<Q>,
    basis_walls: Vec<usize>,
    basis_inverse: linalg::Matrix,
}

impl ToricVariety {
    pub fn new(id: impl Into<String>, fan: Fan) -> Result<Self> {
        let reference = (0..fan.cones().len())
            .find(|&c| fan.multiplicity(c) == 1)
            .unwrap_or(0);
        let free_rays: Vec<usize> = (0..fan.rays().len())
            .filter(|r| !fan.cones()[reference].contains(r))
            .collect();
        let mut var = Self {
            id: id.into(),
            fan,
            reference,
            free_rays,
            anticanonical: Vec::new(),
            walls: Vec::new(),
            degree_functional: Vec::new(),
            basis_walls: Vec::new(),
            basis_inverse: Vec::new(),
        };
        let k = var.normalise(&vec![1; var.fan.rays().len()]);
        var.anticanonical = k
            .iter()
            .map(to_i64)
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidInput("anticanonical divisor is not Cartier".into()))?;
        let mut walls: Vec<Vec<Q>> = var
            .fan
            .walls()
            .iter()
            .map(|w| {
                let rel = var.fan.wall_relation(w);
                var.free_rays.iter().map(|&r| rel[r].clone()).collect()
            })
            .collect();
        let rank = var.free_rays.len();
        let mut kappa = vec![Q::zero(); rank];
        for w in &walls {
            for (s, x) in kappa.iter_mut().zip(w) {
                *s += x;
            }
        }
        // numerically equivalent walls give the same inequality
        walls.sort();
        walls.dedup();
        let mut chosen: linalg::Matrix = Vec::new();
        let mut basis = Vec::new();
        for (i, w) in walls.iter().enumerate() {
            chosen.push(w.clone());
            if linalg::rank(&chosen) == chosen.len() {
                basis.push(i);
                if basis.len() == rank {
                    break;
                }
            } else {
                chosen.pop();
            }
        }
        if basis.len() != rank {
            return Err(Error::InvalidInput("wall curves do not span the curve space".into()));
        }
        var.basis_inverse = if rank == 0 {
            Vec::new()
        } else {
            linalg::inverse(&chosen).expect("independent walls")
        };
        var.basis_walls = basis;
        var.walls = walls;
        var.degree_functional = kappa;
        if !var.walls.iter().all(|w| dot(w, &var.anticanonical).is_positive()) {
            return Err(Error::InvalidInput("anticanonical divisor is not ample".into()));
        }
        Ok(var)
    }

    /// The toric variety of a reflexive polytope read as its anticanonical
    /// polytope.
    pub fn from_reflexive(id: impl Into<String>, p: &LatticePolytope) -> Result<Self> {
        Self::new(id, Fan::of_reflexive(p)?)
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn reference_cone(&self) -> usize {
        self.reference
    }

    /// Local data `m_σ` with `⟨m_σ, u_ρ⟩ = −a_ρ` for the rays of `σ`.
    fn local_data(&self, a: &[Q], cone: usize) -> Vec<Q> {
        let rays = self.fan.rays();
        let c = &self.fan.cones()[cone];
        let m: linalg::Matrix = c.iter().map(|&r| qvec(&rays[r])).collect();
        let b: Vec<Q> = c.iter().map(|&r| -a[r].clone()).collect();
        linalg::solve(&m, &b).expect("maximal cones are full-dimensional")
    }

    /// Coordinates of `Σ a_ρ D_ρ`.
    pub fn normalise(&self, a: &[i64]) -> Vec<Q> {
        let aq = qvec(a);
        let m = self.local_data(&aq, self.reference);
        self.free_rays
            .iter()
            .map(|&r| &aq[r] + dot(&m, &self.fan.rays()[r]))
            .collect()
    }

    /// The full coefficient vector of a class given in coordinates.
    pub fn expand(&self, coords: &[Q]) -> Vec<Q> {
        let mut a = vec![Q::zero(); self.fan.rays().len()];
        for (k, &r) in self.free_rays.iter().enumerate() {
            a[r] = coords[k].clone();
        }
        a
    }

    pub fn cartier_q(&self, coords: &[Q]) -> bool {
        let a = self.expand(coords);
        (0..self.fan.cones().len()).all(|c| self.local_data(&a, c).iter().all(Q::is_integer))
    }

    /// Nef via the support function: `⟨m_σ, u_ρ⟩ ≥ −a_ρ` for all `σ`, `ρ`.
    pub fn nef_by_support(&self, coords: &[Q]) -> bool {
        let a = self.expand(coords);
        (0..self.fan.cones().len()).all(|c| {
            let m = self.local_data(&a, c);
            self.fan
                .rays()
                .iter()
                .zip(&a)
                .all(|(u, ar)| dot(&m, u) >= -ar.clone())
        })
    }

    /// The polytope `{m : ⟨m, u_ρ⟩ ≥ −a_ρ}` of a nef Cartier class, as the
    /// hull of its local data.
    pub fn divisor_polytope(&self, coords: &[i64]) -> Result<LatticePolytope> {
        let cq = qvec(coords);
        if !self.is_nef(coords) || !self.cartier_q(&cq) {
            return Err(Error::InvalidInput("divisor polytope needs a nef Cartier class".into()));
        }
        let a = self.expand(&cq);
        let pts: Vec<Vec<i64>> = (0..self.fan.cones().len())
            .map(|c| {
                self.local_data(&a, c)
                    .iter()
                    .map(|x| to_i64(x).expect("Cartier"))
                    .collect()
            })
            .collect();
        LatticePolytope::from_points(self.fan.dim(), &pts)
    }

    /// The vertex of the anticanonical polytope dual to the reference cone;
    /// `P − m₀` is the polytope of the normalised anticanonical class.
    pub fn reference_vertex(&self) -> Vec<i64> {
        let ones = vec![q(1); self.fan.rays().len()];
        self.local_data(&ones, self.reference)
            .iter()
            .map(|x| to_i64(x).expect("anticanonical divisor is Cartier"))
            .collect()
    }

    fn prime_classes(&self) -> Vec<Vec<Q>> {
        (0..self.fan.rays().len())
            .map(|r| {
                let mut a = vec![0; self.fan.rays().len()];
                a[r] = 1;
                self.normalise(&a)
            })
            .collect()
    }

    /// Whether the class is a nonnegative combination of the `[D_ρ]`.
    pub fn is_pseudoeffective(&self, coords: &[Q]) -> bool {
        let gens = self.prime_classes();
        let a: Vec<Vec<Q>> = (0..self.rank())
            .map(|i| gens.iter().map(|g| g[i].clone()).collect())
            .collect();
        simplex::feasible_point(&a, coords).is_some()
    }

    /// `max t` such that `class − t·(−K)` is pseudo-effective. The class is
    /// big exactly when this is positive.
    pub fn big_margin(&self, coords: &[Q]) -> Result<Q> {
        let gens = self.prime_classes();
        let k = self.anticanonical();
        let n = gens.len();
        // columns: t⁺, t⁻, b_ρ; class = t·(−K) + Σ b_ρ [D_ρ]
        let a: Vec<Vec<Q>> = (0..self.rank())
            .map(|i| {
                let mut row = vec![q(k[i]), -q(k[i])];
                row.extend(gens.iter().map(|g| g[i].clone()));
                row
            })
            .collect();
        let mut c = vec![Q::zero(); n + 2];
        c[0] = Q::one();
        c[1] = -Q::one();
        let sol = simplex::maximize(&a, coords, &c)?;
        Ok(sol.objective)
    }

    pub fn is_big(&self, coords: &[Q]) -> bool {
        self.big_margin(coords).map(|t| t.is_positive()).unwrap_or(false)
    }

    pub fn oracles(&self, d: &ToricDivisor) -> Result<DivisorOracles> {
        if d.coeffs.len() != self.fan.rays().len() {
            return Err(Error::DimensionMismatch {
                expected: self.fan.rays().len(),
                got: d.coeffs.len(),
            });
        }
        let aq = qvec(&d.coeffs);
        let cartier =
            (0..self.fan.cones().len()).all(|c| self.local_data(&aq, c).iter().all(Q::is_integer));
        let coords = self.normalise(&d.coeffs);
        Ok(DivisorOracles {
            cartier,
            nef: self.is_nef_q(&coords),
            big: self.is_big(&coords),
            pseudoeffective: self.is_pseudoeffective(&coords),
        })
    }

    fn solve_from_basis(&self, degrees: &[i64]) -> Option<Vec<i64>> {
        let d = qvec(degrees);
        linalg::mat_vec(&self.basis_inverse, &d).iter().map(to_i64).collect()
    }

    /// Classes with prescribed basis-wall degrees in a box, filtered by the
    /// remaining conditions.
    fn scan_basis_box(&self, caps: &[i64], total: Option<i64>, keep: impl Fn(&[i64]) -> bool) -> Vec<Vec<i64>> {
        let rank = self.rank();
        let mut out = Vec::new();
        let mut d = vec![0i64; rank];
        loop {
            let sum: i64 = d.iter().sum();
            if total.is_none_or(|t| sum <= t) {
                if let Some(l) = self.solve_from_basis(&d) {
                    if l.iter().any(|&x| x != 0) && self.is_nef(&l) && keep(&l) && self.is_cartier(&l) {
                        out.push(l);
                    }
                }
            }
            let mut i = rank;
            loop {
                if i == 0 {
                    out.sort();
                    out.dedup();
                    return out;
                }
                i -= 1;
                let room = total.is_none_or(|t| d.iter().sum::<i64>() < t);
                if d[i] < caps[i] && room {
                    d[i] += 1;
                    for x in d.iter_mut().skip(i + 1) {
                        *x = 0;
                    }
                    break;
                }
                d[i] = 0;
            }
        }
    }
}

impl NefContext for ToricVariety {
    fn id(&self) -> &str {
        &self.id
    }

    fn dim(&self) -> usize {
        self.fan.dim()
    }

    fn rank(&self) -> usize {
        self.free_rays.len()
    }

    fn anticanonical(&self) -> &[i64] {
        &self.anticanonical
    }

    fn degree_functional(&self) -> &[Q] {
        &self.degree_functional
    }

    fn curve_functionals(&self) -> &[Vec<Q>] {
        &self.walls
    }

    fn is_cartier(&self, coords: &[i64]) -> bool {
        self.cartier_q(&qvec(coords))
    }

    fn enumerate_nef(&self, max_degree: i64) -> Vec<Vec<i64>> {
        if max_degree < 1 {
            return Vec::new();
        }
        let caps = vec![max_degree; self.rank()];
        self.scan_basis_box(&caps, Some(max_degree), |l| self.degree(l) <= max_degree)
    }

    /// Nef `L` with `−K − L` nef satisfy `0 ≤ L·C ≤ (−K)·C` on every wall.
    fn integral_candidates(&self) -> Vec<Vec<i64>> {
        let k = self.anticanonical.clone();
        let caps: Vec<i64> = self
            .basis_walls
            .iter()
            .map(|&w| to_i64(&dot(&self.walls[w], &k)).expect("Cartier"))
            .collect();
        self.scan_basis_box(&caps, None, |l| {
            let rest: Vec<i64> = k.iter().zip(l).map(|(a, b)| a - b).collect();
            self.is_nef(&rest)
        })
    }
}
