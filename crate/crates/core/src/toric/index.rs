//! The total index of a toric Fano variety, read as a Minkowski decomposition
//! of its anticanonical polytope, together with the facet and `2n` bounds.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg;
use crate::nef::NefContext;
use crate::rational::{q, Q};
use crate::tau::{self, DecompositionCertificate, DualCertificate, Ring, TauConfig};
use crate::toric::fan::Fan;
use crate::toric::polytope::{scaled_sum, LatticePolytope};
use crate::toric::variety::ToricVariety;

/// `⊕ λ_i P_i = target + shift`, every `P_i` a lattice polytope containing
/// the origin. The shift is zero whenever the parts can be placed around the
/// origin by lattice translations; a reflexive polygon such as
/// `conv{(−1,−1), (−1,0), (1,0), (1,1)}` is the sum of two lattice segments
/// through the origin only up to a translation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinkowskiDecomposition {
    pub parts: Vec<(Q, LatticePolytope)>,
    pub target: LatticePolytope,
    pub shift: Vec<Q>,
}

impl MinkowskiDecomposition {
    /// Rebuilds the sum and compares vertex sets.
    pub fn verify(&self) -> Result<()> {
        let dim = self.target.dim();
        for (l, p) in &self.parts {
            if *l <= Q::zero() || !p.contains(&vec![0; dim]) || p.vertices().len() < 2 {
                return Err(Error::TheoremViolation(String::from(
                    "Minkowski part is degenerate or misses the origin",
                )));
            }
        }
        let same = if self.is_exact() {
            scaled_sum(&self.parts)? == self.target
        } else {
            // compare D·(⊕ λ_i P_i) with D·target + D·shift
            let den = self
                .parts
                .iter()
                .map(|(l, _)| l.denom())
                .chain(self.shift.iter().map(|x| x.denom()))
                .fold(num_bigint::BigInt::from(1), |a, d| num_integer::Integer::lcm(&a, d));
            let dq = Q::from(den);
            let mut acc: Option<LatticePolytope> = None;
            for (l, p) in &self.parts {
                let k = crate::rational::to_i64(&(l * &dq)).expect("integral after clearing denominators");
                let scaled = p.dilate(k);
                acc = Some(match acc {
                    None => scaled,
                    Some(a) => crate::toric::polytope::minkowski_sum(&a, &scaled)?,
                });
            }
            let d = crate::rational::to_i64(&dq).expect("small denominator");
            let t: Vec<i64> = self
                .shift
                .iter()
                .map(|x| crate::rational::to_i64(&(x * &dq)).expect("integral"))
                .collect();
            acc == Some(self.target.dilate(d).translate(&t))
        };
        if !same {
            return Err(Error::TheoremViolation(String::from(
                "Minkowski parts do not sum to the target",
            )));
        }
        Ok(())
    }

    /// Whether the parts sum to the target itself.
    pub fn is_exact(&self) -> bool {
        self.shift.iter().all(Q::is_zero)
    }

    /// `Σ λ_i`.
    pub fn total(&self) -> Q {
        self.parts.iter().fold(Q::zero(), |a, (l, _)| a + l)
    }
}

#[derive(Debug, Clone)]
pub struct ToricTau {
    pub value: Q,
    pub certificate: DecompositionCertificate,
    pub dual: Option<DualCertificate>,
    pub decomposition: MinkowskiDecomposition,
}

/// Lattice points `p_i ∈ P_i` with `Σ λ_i p_i = goal`, preferring vertices.
/// Consecutive equal pieces take non-decreasing candidate indices.
fn find_offsets(parts: &[(Q, LatticePolytope)], goal: &[i64]) -> Option<Vec<Vec<i64>>> {
    let dim = goal.len();
    let candidates: Vec<Vec<Vec<i64>>> = parts
        .iter()
        .map(|(_, p)| {
            let mut pts: Vec<Vec<i64>> = p.vertices().to_vec();
            pts.extend(p.lattice_points().into_iter().filter(|x| !p.vertices().contains(x)));
            pts
        })
        .collect();
    // suffix bounding boxes of Σ_{j ≥ i} λ_j p_j for pruning
    let mut lo = vec![vec![Q::zero(); dim]; parts.len() + 1];
    let mut hi = vec![vec![Q::zero(); dim]; parts.len() + 1];
    for i in (0..parts.len()).rev() {
        for k in 0..dim {
            let vals: Vec<Q> = candidates[i].iter().map(|p| &parts[i].0 * q(p[k])).collect();
            let mn = vals.iter().min().expect("a polytope has a vertex");
            let mx = vals.iter().max().expect("a polytope has a vertex");
            lo[i][k] = &lo[i + 1][k] + mn;
            hi[i][k] = &hi[i + 1][k] + mx;
        }
    }
    struct Search<'a> {
        parts: &'a [(Q, LatticePolytope)],
        cands: &'a [Vec<Vec<i64>>],
        lo: &'a [Vec<Q>],
        hi: &'a [Vec<Q>],
        chosen: Vec<usize>,
    }
    impl Search<'_> {
        fn rec(&mut self, i: usize, rest: &[Q]) -> bool {
            if (0..rest.len()).any(|k| rest[k] < self.lo[i][k] || rest[k] > self.hi[i][k]) {
                return false;
            }
            if i == self.parts.len() {
                return rest.iter().all(Q::is_zero);
            }
            let start = if i > 0 && self.parts[i] == self.parts[i - 1] { self.chosen[i - 1] } else { 0 };
            for c in start..self.cands[i].len() {
                let p = &self.cands[i][c];
                let next: Vec<Q> = rest.iter().zip(p).map(|(r, x)| r - &self.parts[i].0 * q(*x)).collect();
                self.chosen.push(c);
                if self.rec(i + 1, &next) {
                    return true;
                }
                self.chosen.pop();
            }
            false
        }
    }
    let goal_q: Vec<Q> = goal.iter().map(|&x| q(x)).collect();
    let mut search = Search {
        parts,
        cands: &candidates,
        lo: &lo,
        hi: &hi,
        chosen: Vec::new(),
    };
    if !search.rec(0, &goal_q) {
        return None;
    }
    Some(search.chosen.iter().enumerate().map(|(i, &c)| candidates[i][c].clone()).collect())
}

/// Minkowski decomposition of the anticanonical polytope `p` induced by a
/// decomposition of `−K` on its toric variety.
pub fn minkowski_from_certificate(
    var: &ToricVariety,
    p: &LatticePolytope,
    cert: &DecompositionCertificate,
) -> Result<MinkowskiDecomposition> {
    // A term a/b · L becomes a pieces of weight 1/b, each translated on its
    // own: 3Δ is not a lattice translate of P₂'s polytope, but a sum of three
    // differently placed copies of Δ is.
    let mut pieces: Vec<(Q, LatticePolytope)> = Vec::new();
    for t in &cert.terms {
        let poly = var.divisor_polytope(&t.class)?;
        let n = t.coeff.numer();
        let unit = Q::new(1.into(), t.coeff.denom().clone());
        let count = crate::rational::to_i64(&Q::from(n.clone()))
            .filter(|&c| c > 0)
            .ok_or_else(|| Error::InvalidInput(String::from("decomposition coefficients must be positive")))?;
        for _ in 0..count {
            pieces.push((unit.clone(), poly.clone()));
        }
    }
    // Σ λ_i P_{L_i} = P − m₀, so lattice points p_i with Σ λ_i p_i = −m₀
    // make every translate P_i − p_i contain the origin.
    let goal: Vec<i64> = var.reference_vertex().iter().map(|x| -x).collect();
    let offsets = find_offsets(&pieces, &goal)
        .unwrap_or_else(|| pieces.iter().map(|(_, p)| p.vertices()[0].clone()).collect());
    let mut shift: Vec<Q> = goal.iter().map(|&x| q(x)).collect();
    for ((l, _), off) in pieces.iter().zip(&offsets) {
        for (s, x) in shift.iter_mut().zip(off) {
            *s -= l * q(*x);
        }
    }
    // ⊕ (P_i − p_i) = P − m₀ − Σ λ_i p_i = P + shift
    let mut parts: Vec<(Q, LatticePolytope)> = Vec::new();
    for ((l, piece), off) in pieces.into_iter().zip(offsets) {
        let neg: Vec<i64> = off.iter().map(|x| -x).collect();
        let moved = piece.translate(&neg);
        match parts.iter_mut().find(|(_, p)| *p == moved) {
            Some((c, _)) => *c += l,
            None => parts.push((l, moved)),
        }
    }
    let dec = MinkowskiDecomposition {
        parts,
        target: p.clone(),
        shift,
    };
    dec.verify()?;
    Ok(dec)
}

/// `τ` of the toric variety of the reflexive polytope `p`, with its
/// certificate and the corresponding Minkowski decomposition of `p`.
pub fn tau_toric(p: &LatticePolytope, ring: Ring, config: &TauConfig) -> Result<ToricTau> {
    let var = ToricVariety::from_reflexive(polytope_id(p), p)?;
    tau_of_variety(&var, p, ring, config)
}

pub fn tau_of_variety(
    var: &ToricVariety,
    p: &LatticePolytope,
    ring: Ring,
    config: &TauConfig,
) -> Result<ToricTau> {
    let (value, certificate, dual) = match ring {
        Ring::Q => {
            let (v, c, d) = tau::tau_rational(var, config)?;
            (v, c, Some(d))
        }
        Ring::Z => {
            let (v, c) = tau::tau_integral(var)?;
            (q(v), c, None)
        }
    };
    let decomposition = minkowski_from_certificate(var, p, &certificate)?;
    Ok(ToricTau {
        value,
        certificate,
        dual,
        decomposition,
    })
}

/// A short stable name for a polytope built from its vertex list.
pub fn polytope_id(p: &LatticePolytope) -> String {
    let mut s = String::from("conv");
    for v in p.vertices() {
        s.push_str(&alloc::format!("{v:?}"));
    }
    s.retain(|c| c != ' ');
    s
}

fn gcd_of_maximal_minors(vectors: &[&Vec<i64>]) -> i64 {
    let k = vectors.len();
    let n = vectors[0].len();
    let mut g = 0;
    let mut cols = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cols: &mut Vec<usize>, vs: &[&Vec<i64>], g: &mut i64) {
        if cols.len() == k {
            let m: Vec<Vec<i64>> = vs.iter().map(|v| cols.iter().map(|&c| v[c]).collect()).collect();
            *g = crate::rational::gcd_i64(*g, linalg::det_i64(&m));
            return;
        }
        for c in start..n {
            cols.push(c);
            rec(c + 1, n, k, cols, vs, g);
            cols.pop();
        }
    }
    rec(0, n, k, &mut cols, vectors, &mut g);
    g
}

/// Whether the fan is a product of fans of projective spaces: its rays split
/// into groups `{v_0, …, v_k}` with `Σ v_j = 0`, any `k` of them a basis of a
/// saturated sublattice, these sublattices summing to `ℤⁿ`, and the maximal
/// cones being exactly the products of the groups' cones.
pub fn is_product_of_simplices(fan: &Fan) -> bool {
    let f = fan.rays().len();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    fn rec(i: usize, f: usize, groups: &mut Vec<Vec<usize>>, fan: &Fan) -> bool {
        if i == f {
            return groups.iter().all(|g| g.len() >= 2) && check_partition(fan, groups);
        }
        for g in 0..groups.len() {
            groups[g].push(i);
            if rec(i + 1, f, groups, fan) {
                return true;
            }
            groups[g].pop();
        }
        groups.push(vec![i]);
        let found = rec(i + 1, f, groups, fan);
        groups.pop();
        found
    }
    rec(0, f, &mut groups, fan)
}

fn check_partition(fan: &Fan, groups: &[Vec<usize>]) -> bool {
    let rays = fan.rays();
    let n = fan.dim();
    let mut basis: Vec<Vec<i64>> = Vec::new();
    for g in groups {
        let sum: Vec<i64> = (0..n).map(|k| g.iter().map(|&r| rays[r][k]).sum()).collect();
        if sum.iter().any(|&x| x != 0) {
            return false;
        }
        let head: Vec<&Vec<i64>> = g[1..].iter().map(|&r| &rays[r]).collect();
        if linalg::rank_i64(&head.iter().map(|v| (*v).clone()).collect::<Vec<_>>()) != head.len()
            || gcd_of_maximal_minors(&head).abs() != 1
        {
            return false;
        }
        basis.extend(head.into_iter().cloned());
    }
    if basis.len() != n || linalg::det_i64(&basis).abs() != 1 {
        return false;
    }
    // maximal cones: drop exactly one ray from every group
    let mut expected: Vec<Vec<usize>> = vec![Vec::new()];
    for g in groups {
        let mut next = Vec::new();
        for partial in &expected {
            for &skip in g {
                let mut c = partial.clone();
                c.extend(g.iter().filter(|&&r| r != skip));
                next.push(c);
            }
        }
        expected = next;
    }
    for c in expected.iter_mut() {
        c.sort_unstable();
    }
    expected.sort();
    expected == fan.cones()
}

/// Rays `±v_1, …, ±v_n` for a lattice basis `v`: the fan of `(ℙ¹)ⁿ`, whose
/// anticanonical polytope is the cube.
pub fn is_cube_fan(fan: &Fan) -> bool {
    let rays = fan.rays();
    let n = fan.dim();
    if rays.len() != 2 * n {
        return false;
    }
    let mut positives: Vec<Vec<i64>> = Vec::new();
    for r in rays {
        let neg: Vec<i64> = r.iter().map(|x| -x).collect();
        if !rays.contains(&neg) {
            return false;
        }
        if r > &neg {
            positives.push(r.clone());
        }
    }
    positives.len() == n && linalg::det_i64(&positives).abs() == 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetBoundReport {
    pub facets: usize,
    pub tau: Q,
    pub product_of_simplices: bool,
    pub equality: bool,
}

/// `τ ≤ f`, with equality exactly for products of simplices.
pub fn facet_bound_check(p: &LatticePolytope, config: &TauConfig) -> Result<FacetBoundReport> {
    let var = ToricVariety::from_reflexive(polytope_id(p), p)?;
    let tt = tau_of_variety(&var, p, Ring::Q, config)?;
    let f = p.facets()?.len();
    let product = is_product_of_simplices(var.fan());
    let report = FacetBoundReport {
        facets: f,
        equality: tt.value == q(f as i64),
        tau: tt.value,
        product_of_simplices: product,
    };
    if report.tau > q(f as i64) {
        return Err(Error::TheoremViolation(alloc::format!(
            "tau {} exceeds the facet count {f}",
            report.tau
        )));
    }
    if report.equality != product {
        return Err(Error::TheoremViolation(String::from(
            "facet bound equality does not match the product-of-simplices test",
        )));
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeBoundReport {
    pub parts: i64,
    pub bound: i64,
    pub equality: bool,
    /// Whether the polytope is a cube, i.e. its fan is that of `(ℙ¹)ⁿ`.
    pub cube: bool,
}

/// The largest number of nonzero lattice summands containing the origin is at
/// most `2n`.
pub fn cube_bound_check(p: &LatticePolytope) -> Result<CubeBoundReport> {
    let var = ToricVariety::from_reflexive(polytope_id(p), p)?;
    let tt = tau_of_variety(&var, p, Ring::Z, &TauConfig::default())?;
    let parts = crate::rational::to_i64(&tt.value).expect("integral");
    let bound = 2 * p.dim() as i64;
    if parts > bound {
        return Err(Error::TheoremViolation(alloc::format!(
            "{parts} lattice summands exceed 2n = {bound}"
        )));
    }
    Ok(CubeBoundReport {
        parts,
        bound,
        equality: parts == bound,
        cube: is_cube_fan(var.fan()),
    })
}

/// Result of testing `K + Σ a_i L_i` on a toric variety.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FujitaReport {
    pub sum: Q,
    pub pseudoeffective: bool,
    pub big: bool,
    pub margin: Q,
    /// A hypothesis held but the conclusion failed.
    pub violation: bool,
}

/// For nef and big Cartier `L_i` (given in coordinates): if `Σ a_i ≥ n + 1`
/// then `K + Σ a_i L_i` is pseudo-effective, and big if `Σ a_i > n + 1`.
pub fn fujita_check(var: &ToricVariety, terms: &[(Q, Vec<i64>)]) -> Result<FujitaReport> {
    let rank = var.rank();
    let mut class: Vec<Q> = var.anticanonical().iter().map(|&x| -q(x)).collect();
    let mut sum = Q::zero();
    for (a, l) in terms {
        if l.len() != rank {
            return Err(Error::DimensionMismatch {
                expected: rank,
                got: l.len(),
            });
        }
        let lq: Vec<Q> = l.iter().map(|&x| q(x)).collect();
        if *a <= Q::zero() || !var.is_cartier(l) || !var.is_nef(l) || !var.is_big(&lq) {
            return Err(Error::InvalidInput(String::from(
                "Fujita terms need positive coefficients and nef, big, Cartier classes",
            )));
        }
        for (c, x) in class.iter_mut().zip(&lq) {
            *c += a * x;
        }
        sum += a;
    }
    let n1 = q(var.dim() as i64 + 1);
    let pseudoeffective = var.is_pseudoeffective(&class);
    let margin = var.big_margin(&class)?;
    let big = margin > Q::zero();
    let violation = (sum >= n1 && !pseudoeffective) || (sum > n1 && !big);
    Ok(FujitaReport {
        sum,
        pseudoeffective,
        big,
        margin,
        violation,
    })
}
