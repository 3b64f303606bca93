//! Integral lattices with a symmetric bilinear form, and classes in them.
//!
//! For the blow-ups `Bl_r(P²)` coordinates follow the convention
//! `(x; y_1, …, y_r) ↦ xH − Σ y_i E_i`, so the anticanonical class is
//! `(3; 1, …, 1)` and the exceptional curve `E_1` is `(0; −1, 0, …)`.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{q, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionLattice {
    id: String,
    labels: Vec<String>,
    gram: Vec<Vec<i64>>,
}

impl IntersectionLattice {
    pub fn new(id: impl Into<String>, labels: Vec<String>, gram: Vec<Vec<i64>>) -> Result<Self> {
        let n = gram.len();
        if n == 0 {
            return Err(Error::InvalidInput("lattice rank must be positive".into()));
        }
        if labels.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: labels.len(),
            });
        }
        for (i, row) in gram.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            if (0..n).any(|j| gram[j][i] != row[j]) {
                return Err(Error::InvalidInput("gram matrix is not symmetric".into()));
            }
        }
        Ok(Self {
            id: id.into(),
            labels,
            gram,
        })
    }

    /// `N¹(Bl_r P²)` with basis `H, E_1, …, E_r`: `diag(1, −1, …, −1)`.
    pub fn blowup(id: impl Into<String>, r: usize) -> Self {
        let n = r + 1;
        let mut labels = Vec::with_capacity(n);
        labels.push("H".to_string());
        labels.extend((1..=r).map(|i| alloc::format!("E{i}")));
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match (i == j, i) {
                        (false, _) => 0,
                        (true, 0) => 1,
                        (true, _) => -1,
                    })
                    .collect()
            })
            .collect();
        Self {
            id: id.into(),
            labels,
            gram,
        }
    }

    /// `N¹(P¹×P¹)` with the two rulings `H1, H2`.
    pub fn hyperbolic_plane(id: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            labels: ["H1", "H2"].iter().map(|s| s.to_string()).collect(),
            gram: alloc::vec![alloc::vec![0, 1], alloc::vec![1, 0]],
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `(positive, negative, zero)` eigenvalue counts of the Gram matrix.
    pub fn signature(&self) -> (usize, usize, usize) {
        linalg::inertia(&linalg::to_matrix(&self.gram))
    }

    pub fn pair_i64(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s: i128 = 0;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                s += ai as i128 * self.gram[i][j] as i128 * bj as i128;
            }
        }
        i64::try_from(s).expect("pairing overflows i64")
    }

    pub fn pair_q(&self, a: &[Q], b: &[Q]) -> Q {
        let mut s = Q::zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if self.gram[i][j] != 0 && !bj.is_zero() {
                    s += ai * bj * q(self.gram[i][j]);
                }
            }
        }
        s
    }

    /// `G·v`: the linear functional `w ↦ pair(v, w)` in coordinates.
    pub fn functional(&self, v: &[i64]) -> Vec<i64> {
        (0..self.rank())
            .map(|i| self.gram[i].iter().zip(v).map(|(g, x)| g * x).sum())
            .collect()
    }
}

/// An integral class (Cartier divisor) in an [`IntersectionLattice`].
#[derive(Clone, PartialEq, Eq)]
pub struct DivisorClass {
    lattice: Arc<IntersectionLattice>,
    coords: Vec<i64>,
}

/// A class with rational coordinates; coordinates are always reduced.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalClass {
    lattice: Arc<IntersectionLattice>,
    coords: Vec<Q>,
}

fn same_lattice(a: &Arc<IntersectionLattice>, b: &Arc<IntersectionLattice>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::LatticeMismatch {
            left: a.id().to_string(),
            right: b.id().to_string(),
        })
    }
}

impl DivisorClass {
    pub fn new(lattice: Arc<IntersectionLattice>, coords: Vec<i64>) -> Result<Self> {
        if coords.len() != lattice.rank() {
            return Err(Error::DimensionMismatch {
                expected: lattice.rank(),
                got: coords.len(),
            });
        }
        Ok(Self { lattice, coords })
    }

    pub fn lattice(&self) -> &Arc<IntersectionLattice> {
        &self.lattice
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn to_rational(&self) -> RationalClass {
        RationalClass {
            lattice: self.lattice.clone(),
            coords: self.coords.iter().map(|&c| q(c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        same_lattice(&self.lattice, &other.lattice)?;
        Ok(Self {
            lattice: self.lattice.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        same_lattice(&self.lattice, &other.lattice)?;
        Ok(Self {
            lattice: self.lattice.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self {
            lattice: self.lattice.clone(),
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }
}

impl RationalClass {
    pub fn new(lattice: Arc<IntersectionLattice>, coords: Vec<Q>) -> Result<Self> {
        if coords.len() != lattice.rank() {
            return Err(Error::DimensionMismatch {
                expected: lattice.rank(),
                got: coords.len(),
            });
        }
        Ok(Self { lattice, coords })
    }

    pub fn lattice(&self) -> &Arc<IntersectionLattice> {
        &self.lattice
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    pub fn to_integral(&self) -> Option<DivisorClass> {
        let coords = self
            .coords
            .iter()
            .map(crate::rational::to_i64)
            .collect::<Option<Vec<_>>>()?;
        Some(DivisorClass {
            lattice: self.lattice.clone(),
            coords,
        })
    }

    pub fn scaled(&self, k: &Q) -> Self {
        Self {
            lattice: self.lattice.clone(),
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        same_lattice(&self.lattice, &other.lattice)?;
        Ok(Self {
            lattice: self.lattice.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }
}

/// Anything with coordinates in an intersection lattice.
pub trait LatticeElement {
    fn lattice(&self) -> &Arc<IntersectionLattice>;
    fn rational_coords(&self) -> Vec<Q>;
}

impl LatticeElement for DivisorClass {
    fn lattice(&self) -> &Arc<IntersectionLattice> {
        &self.lattice
    }
    fn rational_coords(&self) -> Vec<Q> {
        self.coords.iter().map(|&c| q(c)).collect()
    }
}

impl LatticeElement for RationalClass {
    fn lattice(&self) -> &Arc<IntersectionLattice> {
        &self.lattice
    }
    fn rational_coords(&self) -> Vec<Q> {
        self.coords.clone()
    }
}

/// The intersection number `aᵀ·G·b`.
pub fn pair<A: LatticeElement, B: LatticeElement>(a: &A, b: &B) -> Result<Q> {
    same_lattice(a.lattice(), b.lattice())?;
    Ok(a.lattice().pair_q(&a.rational_coords(), &b.rational_coords()))
}

/// Rank of the rational span of `classes` (σ of a family of divisors).
pub fn span_rank(classes: &[DivisorClass]) -> Result<usize> {
    let Some(first) = classes.first() else {
        return Ok(0);
    };
    for c in &classes[1..] {
        same_lattice(first.lattice(), c.lattice())?;
    }
    let rows: Vec<Vec<i64>> = classes.iter().map(|c| c.coords.clone()).collect();
    Ok(linalg::rank_i64(&rows))
}

impl fmt::Debug for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.lattice.id(), self.coords)
    }
}

impl fmt::Debug for RationalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.lattice.id())?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&crate::rational::format_q(c))?;
        }
        f.write_str("]")
    }
}

impl PartialOrd for DivisorClass {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        if self.lattice.id() != other.lattice.id() {
            return None;
        }
        Some(self.coords.cmp(&other.coords))
    }
}
