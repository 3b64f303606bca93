//! Lattice polytopes in dimension at most three.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{gcd_i64, primitive_i64, q, to_i64, Q};
use crate::simplex;

/// A facet inequality `⟨normal, x⟩ ≥ −offset` with primitive inner normal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

/// Convex hull of finitely many lattice points. Vertices are sorted
/// lexicographically. Facets are only available when the polytope is
/// full-dimensional and are sorted by normal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<Vec<i64>>,
    facets: Vec<Facet>,
    affine_dim: usize,
}

impl fmt::Debug for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{:?}", self.vertices)
    }
}

pub(crate) fn dot_i64(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Integer normal of the hyperplane through `n` affinely independent points
/// in `ℤⁿ` (`n ≤ 3`), or `None` if they are dependent.
fn hyperplane_normal(pts: &[&Vec<i64>]) -> Option<Vec<i64>> {
    let n = pts[0].len();
    let normal = match n {
        1 => vec![1],
        2 => {
            let d = sub(pts[1], pts[0]);
            vec![-d[1], d[0]]
        }
        3 => {
            let a = sub(pts[1], pts[0]);
            let b = sub(pts[2], pts[0]);
            vec![
                a[1] * b[2] - a[2] * b[1],
                a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0],
            ]
        }
        _ => return None,
    };
    if normal.iter().all(|&x| x == 0) {
        None
    } else {
        Some(primitive_i64(&normal))
    }
}

fn for_each_subset(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::with_capacity(k), f);
}

/// Affine dimension of a point set.
fn affine_rank(pts: &[Vec<i64>]) -> usize {
    if pts.is_empty() {
        return 0;
    }
    let diffs: Vec<Vec<i64>> = pts[1..].iter().map(|p| sub(p, &pts[0])).collect();
    linalg::rank_i64(&diffs)
}

/// Whether `p` is a convex combination of `others`.
fn in_hull(p: &[i64], others: &[&Vec<i64>]) -> bool {
    if others.is_empty() {
        return false;
    }
    let n = p.len();
    let mut a: Vec<Vec<Q>> = (0..n)
        .map(|i| others.iter().map(|o| q(o[i])).collect())
        .collect();
    a.push(vec![Q::one(); others.len()]);
    let mut b: Vec<Q> = p.iter().map(|&x| q(x)).collect();
    b.push(Q::one());
    simplex::feasible_point(&a, &b).is_some()
}

impl LatticePolytope {
    /// The convex hull of `points` in `ℤ^dim`.
    pub fn from_points(dim: usize, points: &[Vec<i64>]) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::InvalidInput(alloc::format!(
                "polytope dimension {dim} outside 1..=3"
            )));
        }
        if points.is_empty() {
            return Err(Error::InvalidInput("polytope has no points".into()));
        }
        for p in points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.len(),
                });
            }
        }
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        let affine_dim = affine_rank(&pts);
        if affine_dim == dim {
            let facets = Self::facets_of(&pts);
            let vertices: Vec<Vec<i64>> = pts
                .iter()
                .filter(|p| {
                    let tight: Vec<Vec<i64>> = facets
                        .iter()
                        .filter(|f| dot_i64(&f.normal, p) == -f.offset)
                        .map(|f| f.normal.clone())
                        .collect();
                    linalg::rank_i64(&tight) == dim
                })
                .cloned()
                .collect();
            Ok(Self {
                dim,
                vertices,
                facets,
                affine_dim,
            })
        } else {
            let vertices: Vec<Vec<i64>> = (0..pts.len())
                .filter(|&i| {
                    let others: Vec<&Vec<i64>> =
                        pts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p).collect();
                    !in_hull(&pts[i], &others)
                })
                .map(|i| pts[i].clone())
                .collect();
            Ok(Self {
                dim,
                vertices,
                facets: Vec::new(),
                affine_dim,
            })
        }
    }

    fn facets_of(pts: &[Vec<i64>]) -> Vec<Facet> {
        let dim = pts[0].len();
        let mut facets: Vec<Facet> = Vec::new();
        for_each_subset(pts.len(), dim, &mut |idx| {
            let chosen: Vec<&Vec<i64>> = idx.iter().map(|&i| &pts[i]).collect();
            let Some(u) = hyperplane_normal(&chosen) else {
                return;
            };
            let base = dot_i64(&u, chosen[0]);
            let (mut lo, mut hi) = (false, false);
            for p in pts {
                let v = dot_i64(&u, p) - base;
                lo |= v < 0;
                hi |= v > 0;
            }
            let facet = match (lo, hi) {
                (false, true) => Facet {
                    normal: u,
                    offset: -base,
                },
                (true, false) => Facet {
                    normal: u.iter().map(|x| -x).collect(),
                    offset: base,
                },
                _ => return,
            };
            if !facets.contains(&facet) {
                facets.push(facet);
            }
        });
        facets.sort();
        facets
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.dim
    }

    pub fn facets(&self) -> Result<&[Facet]> {
        if self.is_full_dimensional() {
            Ok(&self.facets)
        } else {
            Err(Error::NotFullDimensional)
        }
    }

    /// `min ⟨u, v⟩` over the polytope.
    pub fn support(&self, u: &[i64]) -> i64 {
        self.vertices.iter().map(|v| dot_i64(u, v)).min().expect("nonempty")
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        if self.is_full_dimensional() {
            self.facets.iter().all(|f| dot_i64(&f.normal, p) >= -f.offset)
        } else {
            let vs: Vec<&Vec<i64>> = self.vertices.iter().collect();
            self.vertices.iter().any(|v| v == p) || in_hull(p, &vs)
        }
    }

    pub fn origin_is_interior(&self) -> bool {
        self.is_full_dimensional() && self.facets.iter().all(|f| f.offset > 0)
    }

    /// Origin interior and every facet at lattice distance one.
    pub fn is_reflexive(&self) -> bool {
        self.origin_is_interior() && self.facets.iter().all(|f| f.offset == 1)
    }

    /// The polar `{y : ⟨y, x⟩ ≥ −1 for all x ∈ P}`, which must be a lattice
    /// polytope.
    pub fn dual_polytope(&self) -> Result<LatticePolytope> {
        let facets = self.facets()?;
        if !self.origin_is_interior() {
            return Err(Error::OriginNotInterior);
        }
        let mut verts = Vec::with_capacity(facets.len());
        for f in facets {
            if f.normal.iter().any(|x| x % f.offset != 0) {
                return Err(Error::NonIntegralDual);
            }
            verts.push(f.normal.iter().map(|x| x / f.offset).collect());
        }
        LatticePolytope::from_points(self.dim, &verts)
    }

    /// All lattice points, by scanning the bounding box.
    pub fn lattice_points(&self) -> Vec<Vec<i64>> {
        let lo: Vec<i64> = (0..self.dim)
            .map(|i| self.vertices.iter().map(|v| v[i]).min().unwrap())
            .collect();
        let hi: Vec<i64> = (0..self.dim)
            .map(|i| self.vertices.iter().map(|v| v[i]).max().unwrap())
            .collect();
        let mut out = Vec::new();
        let mut p = lo.clone();
        loop {
            if self.contains(&p) {
                out.push(p.clone());
            }
            let mut i = self.dim;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if p[i] < hi[i] {
                    p[i] += 1;
                    p[i + 1..].copy_from_slice(&lo[i + 1..]);
                    break;
                }
            }
        }
    }

    pub fn translate(&self, t: &[i64]) -> LatticePolytope {
        let pts: Vec<Vec<i64>> = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(t).map(|(a, b)| a + b).collect())
            .collect();
        LatticePolytope::from_points(self.dim, &pts).expect("translate of a valid polytope")
    }

    pub fn dilate(&self, k: i64) -> LatticePolytope {
        let pts: Vec<Vec<i64>> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x * k).collect())
            .collect();
        LatticePolytope::from_points(self.dim, &pts).expect("dilate of a valid polytope")
    }

    /// Applies an integral linear map given by its rows.
    pub fn transform(&self, rows: &[Vec<i64>]) -> Result<LatticePolytope> {
        let pts: Vec<Vec<i64>> = self
            .vertices
            .iter()
            .map(|v| rows.iter().map(|r| dot_i64(r, v)).collect())
            .collect();
        LatticePolytope::from_points(rows.len(), &pts)
    }
}

/// `P ⊕ Q`.
pub fn minkowski_sum(p: &LatticePolytope, other: &LatticePolytope) -> Result<LatticePolytope> {
    if p.dim() != other.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            got: other.dim(),
        });
    }
    let mut pts = Vec::with_capacity(p.vertices().len() * other.vertices().len());
    for a in p.vertices() {
        for b in other.vertices() {
            pts.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
        }
    }
    LatticePolytope::from_points(p.dim(), &pts)
}

/// `⊕ λ_i P_i` for positive rational `λ_i`. The sum is formed as the lattice
/// polytope `⊕ (Dλ_i) P_i` for a common denominator `D` and scaled back; the
/// result must again be a lattice polytope.
pub fn scaled_sum(parts: &[(Q, LatticePolytope)]) -> Result<LatticePolytope> {
    let dim = parts
        .first()
        .ok_or_else(|| Error::InvalidInput("empty Minkowski sum".into()))?
        .1
        .dim();
    let mut den = 1i64;
    for (l, _) in parts {
        if *l <= Q::zero() {
            return Err(Error::InvalidInput("Minkowski coefficients must be positive".into()));
        }
        let d = to_i64(&Q::from_integer(l.denom().clone())).expect("small denominator");
        den = den / gcd_i64(den, d) * d;
    }
    let mut acc: Option<LatticePolytope> = None;
    for (l, p) in parts {
        let k = to_i64(&(l * q(den))).expect("integral after clearing denominators");
        let scaled = p.dilate(k);
        acc = Some(match acc {
            None => scaled,
            Some(a) => minkowski_sum(&a, &scaled)?,
        });
    }
    let acc = acc.expect("nonempty");
    let mut pts = Vec::with_capacity(acc.vertices().len());
    for v in acc.vertices() {
        if v.iter().any(|x| x % den != 0) {
            return Err(Error::InvalidInput("scaled Minkowski sum is not a lattice polytope".into()));
        }
        pts.push(v.iter().map(|x| x / den).collect());
    }
    LatticePolytope::from_points(dim, &pts)
}
