//! The ten smooth del Pezzo surfaces: `P²`, `P¹×P¹` and `Bl_r(P²)` for
//! `1 ≤ r ≤ 8`, with their Mori-cone generators and nef-class enumeration.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, IntersectionLattice};
use crate::linalg;
use crate::nef::NefContext;
use crate::rational::{floor_i64, q, qf, Q};
use crate::tau::{self, DecompositionCertificate, DualCertificate, TauConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SurfaceKind {
    P2,
    P1xP1,
    /// `Bl_r(P²)` at `r` general points.
    Blowup(u8),
}

impl SurfaceKind {
    /// The catalog in table order: `P2, P1xP1, dP1, …, dP8`.
    pub fn catalog() -> Vec<SurfaceKind> {
        let mut v = vec![SurfaceKind::P2, SurfaceKind::P1xP1];
        v.extend((1..=8).map(SurfaceKind::Blowup));
        v
    }

    pub fn id(&self) -> String {
        match self {
            SurfaceKind::P2 => "P2".to_string(),
            SurfaceKind::P1xP1 => "P1xP1".to_string(),
            SurfaceKind::Blowup(r) => alloc::format!("dP{r}"),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "P2" => Ok(SurfaceKind::P2),
            "P1xP1" => Ok(SurfaceKind::P1xP1),
            _ => {
                let r = s
                    .strip_prefix("dP")
                    .and_then(|r| r.parse::<u8>().ok())
                    .ok_or_else(|| Error::InvalidSurface(alloc::format!("unknown surface {s:?}")))?;
                if (1..=8).contains(&r) {
                    Ok(SurfaceKind::Blowup(r))
                } else {
                    Err(Error::InvalidSurface(alloc::format!(
                        "blow-up count {r} outside 1..=8"
                    )))
                }
            }
        }
    }

    pub fn rho(&self) -> usize {
        match self {
            SurfaceKind::P2 => 1,
            SurfaceKind::P1xP1 => 2,
            SurfaceKind::Blowup(r) => *r as usize + 1,
        }
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

#[derive(Debug, Clone)]
pub struct SurfaceModel {
    kind: SurfaceKind,
    id: String,
    lattice: Arc<IntersectionLattice>,
    anticanonical: DivisorClass,
    degree: i64,
    mori_generators: Vec<(DivisorClass, i64)>,
    degree_functional: Vec<Q>,
    curve_functionals: Vec<Vec<Q>>,
    /// Sorted-descending multiplicity profiles `(x, y)` of the generators with
    /// `y ≥ 0`; used to prune the symmetric nef enumeration.
    profiles: Vec<(i64, Vec<i64>)>,
}

/// Classes `C = xH − Σ y_i E_i` on `Bl_r(P²)` with `C² = −1` and `−K·C = 1`,
/// searched over `0 ≤ x ≤ 7`, `−1 ≤ y_i ≤ 7`, sorted lexicographically.
pub fn minus_one_curves(r: usize) -> Vec<Vec<i64>> {
    fn rec(
        r: usize,
        y: &mut Vec<i64>,
        sum_left: i64,
        sq_left: i64,
        out: &mut Vec<Vec<i64>>,
        x: i64,
    ) {
        let placed = y.len();
        if placed == r {
            if sum_left == 0 && sq_left == 0 {
                let mut c = vec![x];
                c.extend_from_slice(y);
                out.push(c);
            }
            return;
        }
        for v in -1..=7i64 {
            let s = sum_left - v;
            let qd = sq_left - v * v;
            if qd < 0 {
                if v < 0 {
                    continue;
                }
                break;
            }
            let rem = (r - placed - 1) as i64;
            let ok = if rem == 0 {
                s == 0 && qd == 0
            } else {
                s >= -rem && s <= 7 * rem && s * s <= rem * qd
            };
            if ok {
                y.push(v);
                rec(r, y, s, qd, out, x);
                y.pop();
            }
        }
    }
    let mut out = Vec::new();
    for x in 0..=7i64 {
        rec(r, &mut Vec::with_capacity(r), 3 * x - 1, x * x + 1, &mut out, x);
    }
    out.sort();
    out
}

/// Visits every distinct permutation of `v` (which is sorted ascending first).
fn for_each_permutation(mut v: Vec<i64>, mut f: impl FnMut(&[i64])) {
    v.sort();
    loop {
        f(&v);
        let Some(i) = (0..v.len().saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1]) else {
            return;
        };
        let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
        v.swap(i, j);
        v[i + 1..].reverse();
    }
}

impl SurfaceModel {
    pub fn build(kind: SurfaceKind) -> Result<Self> {
        let id = kind.id();
        let (lattice, anti, gens): (IntersectionLattice, Vec<i64>, Vec<Vec<i64>>) = match kind {
            SurfaceKind::P2 => (
                IntersectionLattice::blowup(id.clone(), 0),
                vec![3],
                vec![vec![1]],
            ),
            SurfaceKind::P1xP1 => (
                IntersectionLattice::hyperbolic_plane(id.clone()),
                vec![2, 2],
                vec![vec![1, 0], vec![0, 1]],
            ),
            SurfaceKind::Blowup(r) => {
                if !(1..=8).contains(&r) {
                    return Err(Error::InvalidSurface(alloc::format!(
                        "blow-up count {r} outside 1..=8"
                    )));
                }
                let r = r as usize;
                let mut anti = vec![1; r + 1];
                anti[0] = 3;
                let gens = if r == 1 {
                    // the (−1)-curve E_1 and the fibre class H − E_1
                    vec![vec![0, -1], vec![1, 1]]
                } else {
                    minus_one_curves(r)
                };
                (IntersectionLattice::blowup(id.clone(), r), anti, gens)
            }
        };
        let lattice = Arc::new(lattice);
        let anticanonical = DivisorClass::new(lattice.clone(), anti.clone())?;
        let degree = lattice.pair_i64(&anti, &anti);
        let mut mori_generators = Vec::with_capacity(gens.len());
        for g in gens {
            let len = lattice.pair_i64(&anti, &g);
            mori_generators.push((DivisorClass::new(lattice.clone(), g)?, len));
        }
        let degree_functional = lattice.functional(&anti).into_iter().map(q).collect();
        let curve_functionals = mori_generators
            .iter()
            .map(|(c, _)| lattice.functional(c.coords()).into_iter().map(q).collect())
            .collect();
        let mut profiles: Vec<(i64, Vec<i64>)> = mori_generators
            .iter()
            .filter(|(c, _)| c.coords()[1..].iter().all(|&y| y >= 0))
            .map(|(c, _)| {
                let mut y = c.coords()[1..].to_vec();
                y.sort_by(|a, b| b.cmp(a));
                (c.coords()[0], y)
            })
            .collect();
        profiles.sort();
        profiles.dedup();
        Ok(Self {
            kind,
            id,
            lattice,
            anticanonical,
            degree,
            mori_generators,
            degree_functional,
            curve_functionals,
            profiles,
        })
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn lattice(&self) -> &Arc<IntersectionLattice> {
        &self.lattice
    }

    pub fn anticanonical_class(&self) -> &DivisorClass {
        &self.anticanonical
    }

    /// `d = (−K)²`.
    pub fn degree_d(&self) -> i64 {
        self.degree
    }

    pub fn mori_generators(&self) -> &[(DivisorClass, i64)] {
        &self.mori_generators
    }

    pub fn class(&self, coords: &[i64]) -> Result<DivisorClass> {
        DivisorClass::new(self.lattice.clone(), coords.to_vec())
    }

    /// `−K·L`.
    pub fn anticanonical_degree(&self, l: &DivisorClass) -> Result<Q> {
        crate::lattice::pair(&self.anticanonical, l)
    }

    /// All (−1)-curve classes, sorted lexicographically.
    pub fn negative_curves(&self) -> Result<Vec<DivisorClass>> {
        match self.kind {
            SurfaceKind::Blowup(r) => minus_one_curves(r as usize)
                .into_iter()
                .map(|c| self.class(&c))
                .collect(),
            _ => Err(Error::InvalidSurface(alloc::format!(
                "{} is not a blow-up of P2",
                self.id
            ))),
        }
    }

    /// Nef iff the class pairs nonnegatively with every Mori generator.
    pub fn is_nef_class(&self, l: &DivisorClass) -> Result<bool> {
        if l.lattice().as_ref() != self.lattice.as_ref() {
            return Err(Error::LatticeMismatch {
                left: self.id.clone(),
                right: l.lattice().id().to_string(),
            });
        }
        Ok(self.is_nef(l.coords()))
    }

    pub fn enumerate_nef_classes(&self, max_degree: i64) -> Vec<DivisorClass> {
        self.enumerate_nef(max_degree)
            .into_iter()
            .map(|c| self.class(&c).expect("rank matches"))
            .collect()
    }

    /// `(d/m, ⌊d/m⌋)`, sharpened on blow-ups by the certificate `L ↦ L·H`,
    /// which is a positive integer on every nonzero nef class and gives `3`.
    pub fn base_bounds(&self) -> (Q, i64) {
        let m = self.m_value();
        let mut bound = qf(self.degree, m);
        if let SurfaceKind::Blowup(_) = self.kind {
            let via_h = q(self.anticanonical.coords()[0]);
            if via_h < bound {
                bound = via_h;
            }
        }
        let fl = floor_i64(&bound);
        (bound, fl)
    }

    fn enumerate_blowup(&self, r: usize, t: i64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        if r == 1 {
            for x in 0..=6 * t {
                for y in 0..=x {
                    let c = vec![x, y];
                    let deg = 3 * x - y;
                    if deg >= 1 && deg <= t && self.is_nef(&c) {
                        out.push(c);
                    }
                }
            }
            out.sort();
            return out;
        }
        let mut y = Vec::with_capacity(r);
        for x in 1..=6 * t {
            self.sorted_rec(r, x, t, &mut y, 0, &mut out);
        }
        out.sort();
        out.dedup();
        out
    }

    /// Depth-first search over non-increasing `y`; each nef representative is
    /// expanded to all its coordinate permutations (the generator set is
    /// invariant under permuting the `E_i`).
    fn sorted_rec(
        &self,
        r: usize,
        x: i64,
        t: i64,
        y: &mut Vec<i64>,
        sum: i64,
        out: &mut Vec<Vec<i64>>,
    ) {
        let k = y.len();
        if k == r {
            let deg = 3 * x - sum;
            if deg < 1 || deg > t {
                return;
            }
            let mut c = vec![x];
            c.extend_from_slice(y);
            if !self.is_nef(&c) {
                return;
            }
            for_each_permutation(y.clone(), |p| {
                let mut c = vec![x];
                c.extend_from_slice(p);
                out.push(c);
            });
            return;
        }
        let cap = if k == 0 { x } else { y[k - 1] };
        let rem_after = (r - k - 1) as i64;
        for v in (0..=cap).rev() {
            // remaining entries are at most v, so the degree bound needs this much
            if sum + v + rem_after * v < 3 * x - t {
                break;
            }
            y.push(v);
            if self.prefix_ok(x, y) {
                self.sorted_rec(r, x, t, y, sum + v, out);
            }
            y.pop();
        }
    }

    fn prefix_ok(&self, x: i64, y: &[i64]) -> bool {
        self.profiles.iter().all(|(cx, cy)| {
            let s: i64 = cy.iter().zip(y).map(|(a, b)| a * b).sum();
            s <= cx * x
        })
    }
}

/// Every invariant of one catalog surface together with its certificates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceReport {
    pub id: String,
    pub degree: i64,
    pub rho: usize,
    pub m: i64,
    pub tau_q: Q,
    pub tau_z: i64,
    pub nef_complexity: Q,
    pub base_bound_q: Q,
    pub base_bound_z: i64,
    pub length_bound: i64,
    pub rational_certificate: DecompositionCertificate,
    pub dual_certificate: DualCertificate,
    pub integral_certificate: DecompositionCertificate,
}

impl SurfaceReport {
    pub fn compute(surface: &SurfaceModel, config: &TauConfig) -> Result<Self> {
        let (tau_q, rational_certificate, dual_certificate) = tau::tau_rational(surface, config)?;
        let (tau_z, integral_certificate) = tau::tau_integral(surface)?;
        let (base_bound_q, base_bound_z) = surface.base_bounds();
        let rho = surface.rank();
        Ok(Self {
            id: surface.id.clone(),
            degree: surface.degree,
            rho,
            m: surface.m_value(),
            nef_complexity: q((2 + rho) as i64) - &tau_q,
            tau_q,
            tau_z,
            base_bound_q,
            base_bound_z,
            length_bound: surface.length_bound(),
            rational_certificate,
            dual_certificate,
            integral_certificate,
        })
    }
}

impl NefContext for SurfaceModel {
    fn id(&self) -> &str {
        &self.id
    }

    fn dim(&self) -> usize {
        2
    }

    fn rank(&self) -> usize {
        self.lattice.rank()
    }

    fn anticanonical(&self) -> &[i64] {
        self.anticanonical.coords()
    }

    fn degree_functional(&self) -> &[Q] {
        &self.degree_functional
    }

    fn curve_functionals(&self) -> &[Vec<Q>] {
        &self.curve_functionals
    }

    fn enumerate_nef(&self, max_degree: i64) -> Vec<Vec<i64>> {
        if max_degree < 1 {
            return Vec::new();
        }
        match self.kind {
            SurfaceKind::P2 => (1..=max_degree / 3).map(|x| vec![x]).collect(),
            SurfaceKind::P1xP1 => {
                let mut out = Vec::new();
                for a in 0..=max_degree / 2 {
                    for b in 0..=max_degree / 2 - a {
                        if a + b > 0 {
                            out.push(vec![a, b]);
                        }
                    }
                }
                out
            }
            SurfaceKind::Blowup(r) => self.enumerate_blowup(r as usize, max_degree),
        }
    }

    fn base_bound(&self) -> Q {
        self.base_bounds().0
    }

    fn functional_to_class(&self, functional: &[Q]) -> Option<Vec<Q>> {
        let g = linalg::to_matrix(self.lattice.gram());
        linalg::solve(&g, functional)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(s: &str) -> SurfaceModel {
        SurfaceModel::build(SurfaceKind::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn parse_and_reject_ids() {
        assert_eq!(SurfaceKind::parse("dP4").unwrap(), SurfaceKind::Blowup(4));
        assert!(SurfaceKind::parse("dP0").is_err());
        assert!(SurfaceKind::parse("dP9").is_err());
        assert!(SurfaceKind::parse("P3").is_err());
        assert!(SurfaceModel::build(SurfaceKind::Blowup(9)).is_err());
        assert!(SurfaceModel::build(SurfaceKind::Blowup(0)).is_err());
    }

    #[test]
    fn build_examples() {
        let s = model("dP5");
        assert_eq!(s.degree_d(), 4);
        assert_eq!(s.anticanonical(), [3, 1, 1, 1, 1, 1]);
        let s = model("P1xP1");
        assert_eq!(s.anticanonical(), [2, 2]);
        assert_eq!(s.degree_d(), 8);
        let s = model("dP1");
        let gens: Vec<_> = s.mori_generators().iter().map(|(c, l)| (c.coords().to_vec(), *l)).collect();
        assert_eq!(gens, [(vec![0, -1], 1), (vec![1, 1], 2)]);
    }

    #[test]
    fn degrees_and_generator_invariants() {
        for kind in SurfaceKind::catalog() {
            let s = SurfaceModel::build(kind).unwrap();
            let expected = match kind {
                SurfaceKind::P2 => 9,
                SurfaceKind::P1xP1 => 8,
                SurfaceKind::Blowup(r) => 9 - r as i64,
            };
            assert_eq!(s.degree_d(), expected, "{kind}");
            for (c, len) in s.mori_generators() {
                assert_eq!(s.anticanonical_degree(c).unwrap(), q(*len));
                assert!(*len >= 1);
                if let SurfaceKind::Blowup(r) = kind {
                    if r >= 2 {
                        assert_eq!(s.lattice().pair_i64(c.coords(), c.coords()), -1);
                        assert_eq!(*len, 1);
                    }
                }
            }
        }
    }

    #[test]
    fn minus_one_curve_examples() {
        assert_eq!(
            minus_one_curves(2),
            [vec![0, -1, 0], vec![0, 0, -1], vec![1, 1, 1]]
        );
        let c4 = minus_one_curves(4);
        assert_eq!(c4.len(), 10);
        assert!(c4.contains(&vec![1, 0, 1, 0, 1]));
        let c8 = minus_one_curves(8);
        assert_eq!(c8.len(), 240);
        assert!(c8.contains(&vec![3, 2, 1, 1, 1, 1, 1, 1, 0]));
        assert!(c8.contains(&vec![6, 3, 2, 2, 2, 2, 2, 2, 2]));
    }

    #[test]
    fn nef_examples() {
        let s = model("dP4");
        assert!(s.is_nef_class(&s.class(&[2, 1, 1, 1, 1]).unwrap()).unwrap());
        let s = model("dP1");
        assert!(!s.is_nef_class(&s.class(&[0, -1]).unwrap()).unwrap());
        let s = model("dP2");
        assert!(!s.is_nef_class(&s.class(&[1, 1, 1]).unwrap()).unwrap());
        let other = model("dP3");
        assert!(s.is_nef_class(&other.class(&[1, 0, 0, 0]).unwrap()).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let p2 = model("P2");
        assert_eq!(p2.enumerate_nef(3), [vec![1]]);
        let s = model("dP1");
        assert!(s.enumerate_nef(1).is_empty());
        assert_eq!(s.enumerate_nef(2), [vec![1, 1]]);
        let s = model("dP8");
        assert!(s.enumerate_nef(1).contains(&vec![3, 1, 1, 1, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn m_values_match_table() {
        let expected = [3, 2, 2, 2, 2, 2, 2, 2, 2, 1];
        for (kind, m) in SurfaceKind::catalog().into_iter().zip(expected) {
            assert_eq!(SurfaceModel::build(kind).unwrap().m_value(), m, "{kind}");
        }
    }

    #[test]
    fn base_bound_examples() {
        assert_eq!(model("dP6").base_bounds(), (qf(3, 2), 1));
        assert_eq!(model("dP1").base_bounds(), (q(3), 3));
        assert_eq!(model("dP2").base_bounds(), (q(3), 3));
        assert_eq!(model("P1xP1").base_bounds(), (q(4), 4));
        assert_eq!(model("P2").base_bounds(), (q(3), 3));
    }

    #[test]
    fn length_bound_examples() {
        assert_eq!(model("P2").length_bound(), 3);
        assert_eq!(model("P1xP1").length_bound(), 4);
        assert_eq!(model("dP1").length_bound(), 3);
        assert_eq!(model("dP3").length_bound(), 4);
        assert_eq!(model("dP8").length_bound(), 9);
    }

    #[test]
    fn permutations_are_distinct_and_complete() {
        let mut seen = Vec::new();
        for_each_permutation(vec![2, 1, 1], |p| seen.push(p.to_vec()));
        assert_eq!(seen, [vec![1, 1, 2], vec![1, 2, 1], vec![2, 1, 1]]);
    }
}
