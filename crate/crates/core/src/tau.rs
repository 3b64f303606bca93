//! The total index `τ` over ℚ and ℤ.
//!
//! Over ℚ the value is the optimum of the linear program
//! `max Σ x_L` subject to `Σ x_L L = −K`, `x ≥ 0`, indexed by all nonzero nef
//! Cartier classes. Only finitely many columns are ever materialised: a pool is
//! grown by column generation until the LP dual `π` is certified feasible for
//! every nef class, using the slack floor `λ = min π·v` over the nef cone
//! normalised to degree one. Classes of degree `≥ 1/λ` then satisfy
//! `π·L ≥ 1` automatically, and the finitely many of smaller degree are
//! enumerated and checked.
//!
//! Over ℤ the optimum is found by an exhaustive multiset search over nef `L`
//! with `−K − L` nef.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::nef::NefContext;
use crate::rational::{ceil_i64, dot, q, qvec, Q};
use crate::simplex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ring {
    Q,
    Z,
}

impl Ring {
    pub fn as_str(&self) -> &'static str {
        match self {
            Ring::Q => "Q",
            Ring::Z => "Z",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: Q,
    pub class: Vec<i64>,
}

/// A decomposition `target = Σ coeff·class` into nef Cartier classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionCertificate {
    pub context: String,
    pub ring: Ring,
    pub target: Vec<i64>,
    pub terms: Vec<Term>,
    pub objective: Q,
}

/// A functional `π` with `π·(−K) = value` and `π·L ≥ 1` for all nonzero nef
/// Cartier `L`, which bounds `τ(ℚ) ≤ value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualCertificate {
    /// `π` as a functional on the coordinates.
    pub functional: Vec<Q>,
    /// `π` as a class via the intersection pairing, when one exists; otherwise
    /// equal to `functional`.
    pub pi: Vec<Q>,
    pub value: Q,
    /// `min π·v` over nef `v` of degree one.
    pub lambda: Q,
    /// Every nef class of degree `≤ verified_degree` was checked.
    pub verified_degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauConfig {
    /// Maximum number of column-generation rounds.
    pub iteration_cap: usize,
    /// Abort as inconclusive when `⌈1/λ⌉` exceeds this multiple of `(−K)` degree.
    pub window_factor: i64,
    /// Maximum number of violated classes added per round.
    pub columns_per_round: usize,
    /// Degree bound for the initial pool; the `(−K)` degree when unset.
    pub initial_degree: Option<i64>,
}

impl Default for TauConfig {
    fn default() -> Self {
        Self {
            iteration_cap: 50,
            window_factor: 20,
            columns_per_round: 24,
            initial_degree: None,
        }
    }
}

/// The current set of LP columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NefCandidatePool {
    pub classes: Vec<Vec<i64>>,
    pub max_degree_scanned: i64,
}

impl NefCandidatePool {
    /// All nef classes of degree `≤ max_degree`, with the ones that split off
    /// a smaller nef class removed.
    pub fn build<C: NefContext + ?Sized>(ctx: &C, max_degree: i64) -> Self {
        let all = ctx.enumerate_nef(max_degree);
        let classes = indecomposables(ctx, &all);
        Self {
            classes,
            max_degree_scanned: max_degree,
        }
    }

    fn insert(&mut self, class: Vec<i64>) -> bool {
        match self.classes.binary_search(&class) {
            Ok(_) => false,
            Err(pos) => {
                self.classes.insert(pos, class);
                true
            }
        }
    }
}

/// Members of `classes` (sorted, complete up to some degree) with no other
/// member of smaller degree splitting off as a nef summand.
pub fn indecomposables<C: NefContext + ?Sized>(ctx: &C, classes: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut by_degree: Vec<(i64, &Vec<i64>)> = classes.iter().map(|c| (ctx.degree(c), c)).collect();
    by_degree.sort();
    let mut kept: Vec<(i64, &Vec<i64>)> = Vec::new();
    for &(deg, l) in &by_degree {
        if is_indecomposable_among(ctx, l, deg, kept.iter().map(|(d, c)| (*d, c.as_slice()))) {
            kept.push((deg, l));
        }
    }
    let mut out: Vec<Vec<i64>> = kept.into_iter().map(|(_, c)| c.clone()).collect();
    out.sort();
    out
}

fn is_indecomposable_among<'a, C: NefContext + ?Sized>(
    ctx: &C,
    l: &[i64],
    deg: i64,
    others: impl Iterator<Item = (i64, &'a [i64])>,
) -> bool {
    let mut diff = vec![0i64; l.len()];
    for (d, o) in others {
        if d >= deg {
            continue;
        }
        for ((x, a), b) in diff.iter_mut().zip(l).zip(o) {
            *x = a - b;
        }
        if ctx.is_nef(&diff) && ctx.is_cartier(&diff) {
            return false;
        }
    }
    true
}

/// Pairwise-subtraction test: `l` is indecomposable relative to `pool` if no
/// pool member of smaller degree can be split off leaving a nef class.
pub fn is_indecomposable<C: NefContext + ?Sized>(ctx: &C, l: &[i64], pool: &[Vec<i64>]) -> bool {
    let deg = ctx.degree(l);
    is_indecomposable_among(ctx, l, deg, pool.iter().map(|c| (ctx.degree(c), c.as_slice())))
}

/// Solves `λ = min π·v` over nef `v` with degree one. Returns `λ` and a
/// minimiser.
pub fn slack_floor<C: NefContext + ?Sized>(ctx: &C, functional: &[Q]) -> Result<(Q, Vec<Q>)> {
    // Dual form: max μ s.t. μκ + Σ s_j φ_j = π, s ≥ 0, μ free. The optimal
    // dual of this program is the minimising nef class.
    let n = ctx.rank();
    let kappa = ctx.degree_functional();
    let curves = ctx.curve_functionals();
    let cols = 2 + curves.len();
    let mut a = vec![vec![Q::zero(); cols]; n];
    for i in 0..n {
        a[i][0] = kappa[i].clone();
        a[i][1] = -kappa[i].clone();
        for (j, c) in curves.iter().enumerate() {
            a[i][2 + j] = c[i].clone();
        }
    }
    let mut c = vec![Q::zero(); cols];
    c[0] = Q::one();
    c[1] = -Q::one();
    let sol = simplex::maximize(&a, functional, &c)?;
    Ok((sol.objective, sol.dual))
}

/// Among the optimal duals of the pool LP (`π·L ≥ 1` on the pool and
/// `π·(−K) = value`), one maximising the slack floor. Writing
/// `π = λκ + Σ s_j φ_j` with `s ≥ 0` makes `λ` a lower bound for the floor,
/// and by duality the maximum is attained with equality.
fn central_dual<C: NefContext + ?Sized>(ctx: &C, pool: &[Vec<i64>], value: &Q) -> Result<Vec<Q>> {
    let kappa = ctx.degree_functional();
    let curves = ctx.curve_functionals();
    let k = ctx.anticanonical();
    let (nc, np) = (curves.len(), pool.len());
    let cols = 2 + nc + np;
    let mut a = Vec::with_capacity(np + 1);
    let mut b = Vec::with_capacity(np + 1);
    let row_for = |l: &[i64], surplus: Option<usize>| {
        let mut row = vec![Q::zero(); cols];
        row[0] = dot(kappa, l);
        row[1] = -row[0].clone();
        for (j, c) in curves.iter().enumerate() {
            row[2 + j] = dot(c, l);
        }
        if let Some(i) = surplus {
            row[2 + nc + i] = -Q::one();
        }
        row
    };
    for (i, l) in pool.iter().enumerate() {
        a.push(row_for(l, Some(i)));
        b.push(Q::one());
    }
    a.push(row_for(k, None));
    b.push(value.clone());
    let mut c = vec![Q::zero(); cols];
    c[0] = Q::one();
    c[1] = -Q::one();
    let sol = simplex::maximize(&a, &b, &c)?;
    let lambda = &sol.x[0] - &sol.x[1];
    let mut pi: Vec<Q> = kappa.iter().map(|x| x * &lambda).collect();
    for (j, cv) in curves.iter().enumerate() {
        if !sol.x[2 + j].is_zero() {
            for (p, x) in pi.iter_mut().zip(cv) {
                *p += x * &sol.x[2 + j];
            }
        }
    }
    Ok(pi)
}

fn lp_over_pool<C: NefContext + ?Sized>(ctx: &C, pool: &[Vec<i64>]) -> Result<simplex::LpSolution> {
    let n = ctx.rank();
    let a: Vec<Vec<Q>> = (0..n)
        .map(|i| pool.iter().map(|c| q(c[i])).collect())
        .collect();
    let b = qvec(ctx.anticanonical());
    let c = vec![Q::one(); pool.len()];
    simplex::maximize(&a, &b, &c)
}

/// Lexicographically smallest optimal solution, in pool order. Only columns
/// with zero reduced cost (`π·L = 1`) can carry weight at an optimum, and on
/// those the objective is constant, so this is a lexicographic feasibility
/// problem on the optimal face.
fn lexmin_on_face<C: NefContext + ?Sized>(
    ctx: &C,
    pool: &[Vec<i64>],
    functional: &[Q],
) -> Result<Vec<(Q, Vec<i64>)>> {
    let face: Vec<&Vec<i64>> = pool.iter().filter(|c| dot(functional, c).is_one()).collect();
    let n = ctx.rank();
    // Columns still free; a column whose minimum is zero is dropped, a
    // positive minimum is pinned by an extra equality row.
    let mut live: Vec<usize> = (0..face.len()).collect();
    let mut pinned: Vec<(usize, Q)> = Vec::new();
    let b0 = qvec(ctx.anticanonical());
    let system = |live: &[usize], pinned: &[(usize, Q)]| {
        let mut a: Vec<Vec<Q>> = (0..n)
            .map(|i| live.iter().map(|&j| q(face[j][i])).collect())
            .collect();
        let mut b = b0.clone();
        for (p, v) in pinned {
            a.push(live.iter().map(|j| if j == p { Q::one() } else { Q::zero() }).collect());
            b.push(v.clone());
        }
        (a, b)
    };
    // any feasible point on the face; columns at zero there have minimum zero
    let (a, b) = system(&live, &pinned);
    let mut current = simplex::feasible_point(&a, &b).ok_or(Error::Infeasible)?;
    let mut k = 0;
    while k < live.len() {
        if current[k].is_zero() {
            live.remove(k);
            current.remove(k);
            continue;
        }
        let (a, b) = system(&live, &pinned);
        let mut c = vec![Q::zero(); live.len()];
        c[k] = -Q::one();
        let sol = simplex::maximize(&a, &b, &c)?;
        let v = sol.x[k].clone();
        current = sol.x;
        if v.is_zero() {
            live.remove(k);
            current.remove(k);
        } else {
            pinned.push((live[k], v));
            k += 1;
        }
    }
    Ok(pinned.into_iter().map(|(j, x)| (x, face[j].clone())).collect())
}

/// `τ(ℚ)` with a primal decomposition and a dual certificate of optimality.
pub fn tau_rational<C: NefContext + ?Sized>(
    ctx: &C,
    config: &TauConfig,
) -> Result<(Q, DecompositionCertificate, DualCertificate)> {
    let k = ctx.anticanonical();
    let d = ctx.degree(k);
    let mut pool = NefCandidatePool::build(ctx, config.initial_degree.unwrap_or(d));
    // keeps the restricted LP feasible however thin the pool is
    pool.insert(k.to_vec());
    let mut last_gap = (Q::zero(), Q::zero());
    for round in 0..config.iteration_cap {
        let sol = lp_over_pool(ctx, &pool.classes)?;
        let mut functional = sol.dual.clone();
        let (mut lambda, mut minimiser) = slack_floor(ctx, &functional)?;
        // A small floor means a wide enumeration window; re-centre the dual
        // first, which is cheap next to enumerating high degrees.
        if !lambda.is_positive() || lambda.recip() > q(d) {
            let centred = central_dual(ctx, &pool.classes, &sol.objective)?;
            let (l2, w2) = slack_floor(ctx, &centred)?;
            if l2 > lambda {
                (functional, lambda, minimiser) = (centred, l2, w2);
            }
        }
        let value = dot(&functional, k);
        last_gap = (sol.objective.clone(), value.clone());
        if !lambda.is_positive() {
            let added = pool.insert(ctx.cartier_multiple(&minimiser));
            if !added {
                return Err(Error::TheoremViolation(String::from(
                    "slack-floor minimiser already in the pool",
                )));
            }
            continue;
        }
        let window = ceil_i64(&lambda.recip()) - 1;
        if window + 1 > config.window_factor * d {
            return Err(Error::Inconclusive {
                iterations: round + 1,
                primal: Box::new(sol.objective),
                dual: Box::new(value),
            });
        }
        let mut violated: Vec<(Q, Vec<i64>)> = ctx
            .enumerate_nef(window)
            .into_iter()
            .filter_map(|l| {
                let v = dot(&functional, &l);
                (v < Q::one()).then_some((v, l))
            })
            .collect();
        if violated.is_empty() {
            let terms = lexmin_on_face(ctx, &pool.classes, &functional)?
                .into_iter()
                .map(|(coeff, class)| Term { coeff, class })
                .collect();
            let cert = DecompositionCertificate {
                context: String::from(ctx.id()),
                ring: Ring::Q,
                target: k.to_vec(),
                terms,
                objective: sol.objective.clone(),
            };
            let pi = ctx
                .functional_to_class(&functional)
                .unwrap_or_else(|| functional.clone());
            let dual = DualCertificate {
                functional,
                pi,
                value: value.clone(),
                lambda,
                verified_degree: window.max(0),
            };
            if sol.objective != value {
                return Err(Error::TheoremViolation(String::from(
                    "primal and dual objectives differ at termination",
                )));
            }
            pool.max_degree_scanned = pool.max_degree_scanned.max(window);
            return Ok((value, cert, dual));
        }
        violated.sort();
        let mut added = 0;
        for (_, l) in violated {
            if added == config.columns_per_round {
                break;
            }
            if pool.insert(l) {
                added += 1;
            }
        }
        if added == 0 {
            return Err(Error::TheoremViolation(String::from(
                "violated class already in the pool",
            )));
        }
    }
    Err(Error::Inconclusive {
        iterations: config.iteration_cap,
        primal: Box::new(last_gap.0),
        dual: Box::new(last_gap.1),
    })
}

/// `τ(ℤ)` with a witness decomposition. Among optimal decompositions the
/// first one reached in (degree, lexicographic) candidate order is returned.
pub fn tau_integral<C: NefContext + ?Sized>(ctx: &C) -> Result<(i64, DecompositionCertificate)> {
    let k = ctx.anticanonical().to_vec();
    let mut cands = ctx.integral_candidates();
    cands.sort_by_key(|c| (ctx.degree(c), c.clone()));
    let m = ctx.m_value().max(1);
    let mut search = IntSearch {
        ctx,
        cands: &cands,
        m,
        best: 0,
        best_terms: Vec::new(),
        stack: Vec::new(),
    };
    search.run(&k, 0);
    if search.best == 0 {
        return Err(Error::TheoremViolation(String::from(
            "the anticanonical class has no nef Cartier decomposition",
        )));
    }
    let mut classes = search.best_terms;
    classes.sort();
    let mut terms: Vec<Term> = Vec::new();
    for c in classes {
        match terms.last_mut() {
            Some(t) if t.class == c => t.coeff += Q::one(),
            _ => terms.push(Term {
                coeff: Q::one(),
                class: c,
            }),
        }
    }
    let best = search.best;
    Ok((
        best,
        DecompositionCertificate {
            context: String::from(ctx.id()),
            ring: Ring::Z,
            target: k,
            terms,
            objective: q(best),
        },
    ))
}

struct IntSearch<'a, C: NefContext + ?Sized> {
    ctx: &'a C,
    cands: &'a [Vec<i64>],
    m: i64,
    best: i64,
    best_terms: Vec<Vec<i64>>,
    stack: Vec<Vec<i64>>,
}

impl<C: NefContext + ?Sized> IntSearch<'_, C> {
    /// `rem` is nef and nonzero; terms on the stack use candidates `≥ start`.
    fn run(&mut self, rem: &[i64], start: usize) {
        let count = self.stack.len() as i64;
        let deg = self.ctx.degree(rem);
        if count + deg / self.m <= self.best {
            return;
        }
        // close with the remainder as the last part
        if self.ctx.is_cartier(rem) && count + 1 > self.best {
            self.best = count + 1;
            self.best_terms = self.stack.clone();
            self.best_terms.push(rem.to_vec());
        }
        for i in start..self.cands.len() {
            let l = &self.cands[i];
            let dl = self.ctx.degree(l);
            if 2 * dl > deg {
                break;
            }
            let next: Vec<i64> = rem.iter().zip(l).map(|(a, b)| a - b).collect();
            if !self.ctx.is_nef(&next) || next.iter().all(|&x| x == 0) {
                continue;
            }
            self.stack.push(l.clone());
            self.run(&next, i);
            self.stack.pop();
        }
    }
}

/// `c_X = dim + ρ − τ(ℚ)`.
pub fn nef_complexity<C: NefContext + ?Sized>(ctx: &C, config: &TauConfig) -> Result<Q> {
    let (tau, _, _) = tau_rational(ctx, config)?;
    Ok(q((ctx.dim() + ctx.rank()) as i64) - tau)
}

/// Checks that a decomposition is exact and uses nonzero nef Cartier classes
/// with positive (integral, over ℤ) coefficients.
pub fn verify_primal<C: NefContext + ?Sized>(ctx: &C, cert: &DecompositionCertificate) -> Result<()> {
    let bad = |msg: &str| Err(Error::TheoremViolation(String::from(msg)));
    if cert.target.len() != ctx.rank() {
        return Err(Error::DimensionMismatch {
            expected: ctx.rank(),
            got: cert.target.len(),
        });
    }
    let mut sum = vec![Q::zero(); ctx.rank()];
    let mut objective = Q::zero();
    for t in &cert.terms {
        if t.class.len() != ctx.rank() {
            return Err(Error::DimensionMismatch {
                expected: ctx.rank(),
                got: t.class.len(),
            });
        }
        if !t.coeff.is_positive() {
            return bad("non-positive coefficient");
        }
        if cert.ring == Ring::Z && !t.coeff.is_integer() {
            return bad("fractional coefficient in an integral decomposition");
        }
        if t.class.iter().all(|&x| x == 0) {
            return bad("zero class in decomposition");
        }
        if !ctx.is_nef(&t.class) || !ctx.is_cartier(&t.class) {
            return bad("class in decomposition is not nef Cartier");
        }
        for (s, &c) in sum.iter_mut().zip(&t.class) {
            *s += &t.coeff * q(c);
        }
        objective += &t.coeff;
    }
    if sum != qvec(&cert.target) {
        return bad("terms do not sum to the target");
    }
    if objective != cert.objective {
        return bad("objective is not the sum of coefficients");
    }
    Ok(())
}

/// Re-derives `λ` and rescans the enumeration window.
pub fn verify_dual<C: NefContext + ?Sized>(ctx: &C, dual: &DualCertificate) -> Result<()> {
    let bad = |msg: &str| Err(Error::TheoremViolation(String::from(msg)));
    if dot(&dual.functional, ctx.anticanonical()) != dual.value {
        return bad("dual value does not match π·(−K)");
    }
    let (lambda, _) = slack_floor(ctx, &dual.functional)?;
    if lambda != dual.lambda || !lambda.is_positive() {
        return bad("slack floor is not positive or does not match");
    }
    if dual.verified_degree < ceil_i64(&lambda.recip()) - 1 {
        return bad("enumeration window is too small");
    }
    for l in ctx.enumerate_nef(dual.verified_degree) {
        if dot(&dual.functional, &l) < Q::one() {
            return bad("dual functional is below one on a nef class");
        }
    }
    if let Some(pi) = ctx.functional_to_class(&dual.functional) {
        if pi != dual.pi {
            return bad("dual class does not represent the functional");
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityCheck {
    pub name: &'static str,
    pub lhs: Q,
    pub rhs: Q,
    pub holds: bool,
}

/// Evaluates the known upper bounds on a certificate's objective: the `2·dim`
/// bound, the span-rank bound `min(dim + σ, 2·dim)`, the degree bound and the
/// ray-length bound.
pub fn check_index_bounds<C: NefContext + ?Sized>(
    cert: &DecompositionCertificate,
    ctx: &C,
) -> Result<Vec<InequalityCheck>> {
    verify_primal(ctx, cert)?;
    let dim = ctx.dim() as i64;
    let classes: Vec<Vec<i64>> = cert.terms.iter().map(|t| t.class.clone()).collect();
    let sigma = linalg::rank_i64(&classes) as i64;
    let obj = cert.objective.clone();
    let mk = |name, rhs: Q| InequalityCheck {
        name,
        holds: obj <= rhs,
        lhs: obj.clone(),
        rhs,
    };
    Ok(vec![
        mk("sum <= 2 dim", q(2 * dim)),
        mk("sum <= min(dim + span, 2 dim)", q((dim + sigma).min(2 * dim))),
        mk("sum <= base bound", ctx.base_bound()),
        mk("sum <= length bound", q(ctx.length_bound())),
    ])
}

/// `Σ coeff·(π·class)`, which equals the dual value on an exact decomposition.
pub fn pairing_total(functional: &[Q], cert: &DecompositionCertificate) -> Q {
    cert.terms
        .iter()
        .map(|t| &t.coeff * dot(functional, &t.class))
        .fold(Q::zero(), |a, b| a + b)
}
