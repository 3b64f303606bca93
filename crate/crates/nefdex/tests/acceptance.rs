//! Acceptance criteria 1–9, one printed line each.
//!
//! Run with `cargo test -p nefdex --test acceptance -- --nocapture` to see the
//! lines.

use std::collections::{BTreeSet, HashMap};
use std::process::Command;
use std::time::{Duration, Instant};

use nefdex_core::delpezzo::{minus_one_curves, SurfaceKind, SurfaceModel, SurfaceReport};
use nefdex_core::nef::NefContext;
use nefdex_core::rational::{q, qf, Q};
use nefdex_core::tau::{check_index_bounds, verify_dual, verify_primal, Ring, TauConfig};
use nefdex_core::toric::index::tau_of_variety;
use nefdex_core::toric::{
    cube_bound_check, facet_bound_check, normal_form, reflexive_polygons, threefolds, LatticePolytope,
};

const IDS: [&str; 10] = ["P2", "P1xP1", "dP1", "dP2", "dP3", "dP4", "dP5", "dP6", "dP7", "dP8"];

/// Criterion 3 cannot hold together with criterion 2: the τ tables put a
/// rational/integral gap on dP6 (3/2 vs 1) as well as on dP4. The criterion is
/// still evaluated literally; the harness pins the observed gap set instead.
const KNOWN_UNATTAINABLE: [u8; 1] = [3];
const OBSERVED_GAPS: [&str; 2] = ["dP4", "dP6"];

struct Outcome {
    id: u8,
    pass: bool,
    detail: String,
}

fn surfaces() -> Vec<SurfaceModel> {
    SurfaceKind::catalog()
        .into_iter()
        .map(|k| SurfaceModel::build(k).unwrap())
        .collect()
}

fn reports() -> Vec<SurfaceReport> {
    surfaces()
        .iter()
        .map(|s| SurfaceReport::compute(s, &TauConfig::default()).unwrap())
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let m: Vec<i64> = surfaces().iter().map(|s| s.m_value()).collect();
    let elapsed = start.elapsed();
    let expected = vec![3, 2, 2, 2, 2, 2, 2, 2, 2, 1];
    Outcome {
        id: 1,
        pass: m == expected && elapsed < Duration::from_secs(10),
        detail: format!("m = {m:?} in {elapsed:.2?}"),
    }
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let tau_q_expected = [q(3), q(4), q(3), q(3), q(3), qf(5, 2), q(2), qf(3, 2), q(1), q(1)];
    let tau_z_expected = [3, 4, 3, 3, 3, 2, 2, 1, 1, 1];
    let mut problems = Vec::new();
    let ss = surfaces();
    for (i, s) in ss.iter().enumerate() {
        let r = SurfaceReport::compute(s, &TauConfig::default()).unwrap();
        if r.tau_q != tau_q_expected[i] || r.tau_z != tau_z_expected[i] {
            problems.push(format!("{}: tau_q {} tau_z {}", IDS[i], r.tau_q, r.tau_z));
        }
        let d = &r.dual_certificate;
        if d.lambda <= q(0) || d.value != r.tau_q {
            problems.push(format!("{}: dual lambda {} value {}", IDS[i], d.lambda, d.value));
        }
        if let Err(e) = verify_dual(s, d) {
            problems.push(format!("{}: dual window {e}", IDS[i]));
        }
        for c in [&r.rational_certificate, &r.integral_certificate] {
            if let Err(e) = verify_primal(s, c) {
                problems.push(format!("{}: primal {e}", IDS[i]));
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        id: 2,
        pass: problems.is_empty() && elapsed < Duration::from_secs(60),
        detail: if problems.is_empty() {
            format!("both tau tables exact, all certificates verified, in {elapsed:.2?}")
        } else {
            problems.join("; ")
        },
    }
}

fn gap_set(reports: &[SurfaceReport]) -> Vec<String> {
    reports
        .iter()
        .filter(|r| r.tau_q != q(r.tau_z))
        .map(|r| r.id.clone())
        .collect()
}

fn criterion_3(reports: &[SurfaceReport]) -> Outcome {
    let gaps = gap_set(reports);
    Outcome {
        id: 3,
        pass: gaps == ["dP4"],
        detail: format!(
            "tau(Q) != tau(Z) on {gaps:?}; the criterion asks for dP4 alone, but the tau tables of \
             criterion 2 also differ on dP6 (3/2 vs 1)"
        ),
    }
}

/// Counts `(−1)`-classes by matching half-vectors on (sum, square sum) over a
/// box two wider than the one the enumerator uses.
fn mitm_count(r: usize) -> usize {
    let half = |k: usize| {
        let mut table: HashMap<(i64, i64), usize> = HashMap::new();
        let mut y = vec![-3i64; k];
        loop {
            *table
                .entry((y.iter().sum(), y.iter().map(|v| v * v).sum()))
                .or_default() += 1;
            let Some(i) = y.iter().position(|&v| v < 9) else { break };
            y[i] += 1;
            y[..i].iter_mut().for_each(|v| *v = -3);
        }
        table
    };
    let (left, right) = (half(r / 2), half(r - r / 2));
    (0..=9i64)
        .map(|x| {
            left.iter()
                .filter_map(|(&(s, sq), &n)| right.get(&(3 * x - 1 - s, x * x + 1 - sq)).map(|m| n * m))
                .sum::<usize>()
        })
        .sum()
}

fn criterion_4() -> Outcome {
    let counts: Vec<usize> = (1..=8).map(|r| minus_one_curves(r).len()).collect();
    let oracle: Vec<usize> = (1..=8).map(mitm_count).collect();
    Outcome {
        id: 4,
        pass: counts == [1, 3, 6, 10, 16, 27, 56, 240] && counts == oracle,
        detail: format!("counts {counts:?}, enlarged-box oracle {oracle:?}"),
    }
}

fn criterion_5(reports: &[SurfaceReport]) -> Outcome {
    let ss = surfaces();
    let mut violations = Vec::new();
    let zero_c: Vec<&str> = reports
        .iter()
        .filter(|r| r.nef_complexity == q(0))
        .map(|r| r.id.as_str())
        .collect();
    if zero_c != ["P2", "P1xP1"] {
        violations.push(format!("c = 0 on {zero_c:?}"));
    }
    let at_four: Vec<&str> = reports
        .iter()
        .filter(|r| r.tau_q == q(4) || r.tau_z == 4)
        .map(|r| r.id.as_str())
        .collect();
    if at_four != ["P1xP1"] || reports.iter().any(|r| r.tau_q > q(4)) {
        violations.push(format!("tau = 2 dim on {at_four:?}"));
    }
    let mut checked = 0;
    for (s, r) in ss.iter().zip(reports) {
        for cert in [&r.rational_certificate, &r.integral_certificate] {
            for c in check_index_bounds(cert, s).unwrap() {
                checked += 1;
                if !c.holds {
                    violations.push(format!("{}: {} ({} > {})", r.id, c.name, c.lhs, c.rhs));
                }
            }
        }
        if r.tau_q > s.base_bound() || r.tau_q > q(s.length_bound()) {
            violations.push(format!("{}: base or length bound", r.id));
        }
    }
    Outcome {
        id: 5,
        pass: violations.is_empty(),
        detail: if violations.is_empty() {
            format!("c = 0 only on P2, P1xP1; tau = 4 only on P1xP1; {checked} certificate bounds hold")
        } else {
            violations.join("; ")
        },
    }
}

fn polygon(pts: &[[i64; 2]]) -> LatticePolytope {
    let pts: Vec<Vec<i64>> = pts.iter().map(|p| p.to_vec()).collect();
    LatticePolytope::from_points(2, &pts).unwrap()
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let square = normal_form(&polygon(&[[-1, -1], [1, -1], [-1, 1], [1, 1]])).unwrap();
    let triangle = normal_form(&polygon(&[[-1, -1], [2, -1], [-1, 2]])).unwrap();
    let catalog = reflexive_polygons();
    let mut problems = Vec::new();
    let mut facet_eq = BTreeSet::new();
    let mut cube_eq = BTreeSet::new();
    for p in &catalog {
        let nf = normal_form(p).unwrap();
        let name = if nf == square {
            "square".to_string()
        } else if nf == triangle {
            "P2 triangle".to_string()
        } else {
            format!("{:?}", p.vertices())
        };
        let f = facet_bound_check(p, &TauConfig::default()).unwrap();
        if f.tau > q(f.facets as i64) {
            problems.push(format!("{name}: tau > f"));
        }
        if f.equality {
            if !f.product_of_simplices {
                problems.push(format!("{name}: equality without product structure"));
            }
            facet_eq.insert(name.clone());
        }
        let c = cube_bound_check(p).unwrap();
        if c.parts > 4 {
            problems.push(format!("{name}: r > 2n"));
        }
        if c.equality {
            cube_eq.insert(name);
        }
    }
    let elapsed = start.elapsed();
    let want_facet: BTreeSet<String> = ["square".to_string(), "P2 triangle".to_string()].into();
    let want_cube: BTreeSet<String> = ["square".to_string()].into();
    let pass = catalog.len() == 16
        && problems.is_empty()
        && facet_eq == want_facet
        && cube_eq == want_cube
        && elapsed < Duration::from_secs(300);
    Outcome {
        id: 6,
        pass,
        detail: format!(
            "{} polygons; tau = f on {facet_eq:?}; r = 2n on {cube_eq:?}; {} problems; {elapsed:.2?}",
            catalog.len(),
            problems.len()
        ),
    }
}

fn criterion_7() -> Outcome {
    let samples = nefdex::suites::fujita_samples(7, 200).unwrap();
    let dims: BTreeSet<usize> = samples.iter().map(|s| s.dim).collect();
    let parse = |s: &str| nefdex_core::rational::parse_q(s).unwrap();
    let mut counterexamples = 0;
    let mut pe_cases = 0;
    let mut big_cases = 0;
    for s in &samples {
        let n1: Q = q(s.dim as i64 + 1);
        let sum = parse(&s.sum);
        if sum >= n1 {
            pe_cases += 1;
            counterexamples += !s.pseudoeffective as usize;
        }
        if sum > n1 {
            big_cases += 1;
            counterexamples += !s.big as usize;
        }
    }
    Outcome {
        id: 7,
        pass: samples.len() == 200 && dims == BTreeSet::from([2, 3]) && counterexamples == 0 && pe_cases > 0 && big_cases > 0,
        detail: format!(
            "{} samples in dims {dims:?}: {pe_cases} pseudo-effectivity and {big_cases} bigness cases, {counterexamples} counterexamples",
            samples.len()
        ),
    }
}

fn criterion_8() -> Outcome {
    let expected = [
        ("P3", 4, 0),
        ("P1xP2", 5, 0),
        ("P1xP1xP1", 6, 0),
        ("Bl_pP3", 4, 1),
        ("P(O(1)+O+O)", 4, 1),
        ("P1xBl_pP2", 5, 1),
    ];
    let cfg = TauConfig::default();
    let mut seen = Vec::new();
    let mut pass = true;
    for (t, (name, tau, c)) in threefolds().iter().zip(expected) {
        let var = t.variety().unwrap();
        let p = t.polytope().unwrap();
        let tq = tau_of_variety(&var, &p, Ring::Q, &cfg).unwrap().value;
        let cx = q((var.dim() + var.rank()) as i64) - &tq;
        pass &= t.name == name && tq == q(tau) && cx == q(c);
        seen.push(format!("{}: tau {tq}, c {cx}", t.name));
    }
    Outcome {
        id: 8,
        pass,
        detail: seen.join("; "),
    }
}

fn criterion_9() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_nefdex"))
            .args(["report", "--format", "json"])
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    let rows = serde_json::from_slice::<serde_json::Value>(&a.stdout)
        .ok()
        .and_then(|v| v.as_array().map(Vec::len));
    Outcome {
        id: 9,
        pass: a.status.success() && b.status.success() && a.stdout == b.stdout && rows == Some(10),
        detail: format!("{} bytes, identical: {}, rows: {rows:?}", a.stdout.len(), a.stdout == b.stdout),
    }
}

#[test]
fn acceptance_criteria() {
    let reports = reports();
    let outcomes = vec![
        criterion_1(),
        criterion_2(),
        criterion_3(&reports),
        criterion_4(),
        criterion_5(&reports),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
    ];
    for o in &outcomes {
        println!("criterion {}: {} | {}", o.id, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    for o in &outcomes {
        if KNOWN_UNATTAINABLE.contains(&o.id) {
            assert!(!o.pass, "criterion {} is recorded as unattainable but passed", o.id);
        } else {
            assert!(o.pass, "criterion {} failed: {}", o.id, o.detail);
        }
    }
    assert_eq!(gap_set(&reports), OBSERVED_GAPS);
}
