//! The interface the τ solver needs from a variety: a Picard lattice in
//! coordinates, the anticanonical class, generators of the Mori cone given as
//! linear functionals, and an enumerator of nef Cartier classes by degree.

use alloc::vec::Vec;

use num_traits::Signed;

use crate::linalg;
use crate::rational::{dot, dot_qq, primitive_multiple, to_i64, Q};

pub trait NefContext {
    /// Stable identifier used in certificates ("dP4", a polytope digest, …).
    fn id(&self) -> &str;

    /// Dimension of the variety.
    fn dim(&self) -> usize;

    /// Picard rank; the length of every coordinate vector.
    fn rank(&self) -> usize;

    fn anticanonical(&self) -> &[i64];

    /// A functional that is a positive integer on every nonzero nef Cartier
    /// class. On surfaces this is `L ↦ −K·L`.
    fn degree_functional(&self) -> &[Q];

    /// Generators of the Mori cone, as functionals `L ↦ L·C`.
    fn curve_functionals(&self) -> &[Vec<Q>];

    /// All nonzero nef Cartier classes of degree `≤ max_degree`, sorted
    /// lexicographically and without repetition.
    fn enumerate_nef(&self, max_degree: i64) -> Vec<Vec<i64>>;

    fn is_cartier(&self, _coords: &[i64]) -> bool {
        true
    }

    /// Candidates for integral decompositions of `−K`: every nef Cartier `L`
    /// with `−K − L` nef.
    fn integral_candidates(&self) -> Vec<Vec<i64>> {
        let k = self.anticanonical().to_vec();
        self.enumerate_nef(self.degree(&k))
            .into_iter()
            .filter(|l| {
                let rest: Vec<i64> = k.iter().zip(l).map(|(a, b)| a - b).collect();
                self.is_nef(&rest)
            })
            .collect()
    }

    /// Smallest positive multiple of the rational nef class `v` that is Cartier.
    fn cartier_multiple(&self, v: &[Q]) -> Vec<i64> {
        primitive_multiple(v)
    }

    /// Class representing a dual functional, when the lattice carries a
    /// nondegenerate pairing.
    fn functional_to_class(&self, _functional: &[Q]) -> Option<Vec<Q>> {
        None
    }

    fn degree(&self, coords: &[i64]) -> i64 {
        to_i64(&dot(self.degree_functional(), coords)).expect("degree of a Cartier class is integral")
    }

    fn is_nef(&self, coords: &[i64]) -> bool {
        self.curve_functionals()
            .iter()
            .all(|c| !dot(c, coords).is_negative())
    }

    fn is_nef_q(&self, coords: &[Q]) -> bool {
        self.curve_functionals()
            .iter()
            .all(|c| !dot_qq(c, coords).is_negative())
    }

    /// `−K·C` for each Mori generator `C`.
    fn curve_lengths(&self) -> Vec<i64> {
        let k = self.anticanonical();
        self.curve_functionals()
            .iter()
            .map(|c| to_i64(&dot(c, k)).expect("anticanonical degree of a curve is integral"))
            .collect()
    }

    /// `m(X)`: the minimal degree of a nonzero nef Cartier class.
    fn m_value(&self) -> i64 {
        let d = self.degree(self.anticanonical());
        (1..=d)
            .find(|&t| !self.enumerate_nef(t).is_empty())
            .unwrap_or(d)
    }

    /// Minimum of `Σ_{C∈B} −K·C` over sets `B` of `rank` linearly independent
    /// Mori generators. Independent sets form a matroid, so the greedy choice
    /// by increasing length is optimal.
    fn length_bound(&self) -> i64 {
        let lengths = self.curve_lengths();
        let mut order: Vec<usize> = (0..lengths.len()).collect();
        order.sort_by_key(|&i| (lengths[i], i));
        let mut chosen: linalg::Matrix = Vec::new();
        let mut total = 0;
        for i in order {
            chosen.push(self.curve_functionals()[i].clone());
            if linalg::rank(&chosen) == chosen.len() {
                total += lengths[i];
                if chosen.len() == self.rank() {
                    break;
                }
            } else {
                chosen.pop();
            }
        }
        total
    }

    /// An upper bound on `τ(ℚ)` from a certificate functional: `deg(−K)/m`.
    fn base_bound(&self) -> Q {
        Q::new(
            self.degree(self.anticanonical()).into(),
            self.m_value().into(),
        )
    }
}
