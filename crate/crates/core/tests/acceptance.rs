//! Acceptance suite. Prints one PASS/FAIL line per criterion; the process
//! fails if any criterion fails other than the documented exception on
//! criterion 1 (see `criterion_1`).

use std::process::ExitCode;
use std::time::Instant;

use alphaspec::extremal::{growth_condition_check, pi_sequence, GrowthParams};
use alphaspec::spectral::lambda_alpha;
use alphaspec::verify::{check_degree_stability, check_turan_bound, run_battery, Verdict};
use alphaspec::{
    canonical_form, disjoint_union, enumerate_graphs, graph6, spectral_extremal, turan_number, Alpha,
    CanonicalForm, EnumFilter, EnumOptions, FamilySpec, ForbiddenFamily, Graph, blow_up,
};

const PASS_TOL: f64 = 1e-9;
const EQUALITY_TOL: f64 = 1e-8;

struct Outcome {
    passed: bool,
    /// A failure that is analysed and expected; does not fail the suite.
    known_deviation: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome { passed, known_deviation: false, detail: detail.into() }
    }
}

fn a(v: f64) -> Alpha {
    Alpha::new(v).unwrap()
}

fn key(spec: FamilySpec) -> CanonicalForm {
    canonical_form(&spec.generate().unwrap())
}

fn grid(step: f64, max: f64) -> Vec<f64> {
    (0..).map(|k| k as f64 * step).take_while(|&x| x <= max + 1e-12).collect()
}

/// λ_α(T_{n,r}) ≤ (1−1/r)n with equality exactly when r | n.
///
/// The equality clause is false at α = 1 − 1/r, where the bound is attained
/// for every n. The criterion is evaluated literally and reported as a
/// failure; the suite accepts it only if every deviation is such a case.
fn criterion_1() -> Outcome {
    let mut checked = 0;
    let mut bound_violations = Vec::new();
    let mut endpoint_deviations = 0;
    let mut other_deviations = Vec::new();
    for r in 2..=5usize {
        let top = 1.0 - 1.0 / r as f64;
        for alpha in grid(0.05, top) {
            for n in 2..=30usize {
                if r > n {
                    continue;
                }
                let t = FamilySpec::Turan(n, r).generate().unwrap();
                let lam = lambda_alpha(&t, a(alpha)).unwrap();
                let bound = top * n as f64;
                checked += 1;
                if lam > bound + PASS_TOL {
                    bound_violations.push((n, r, alpha));
                }
                let equal = (bound - lam).abs() <= EQUALITY_TOL;
                if equal != (n % r == 0) {
                    if (alpha - top).abs() <= 1e-12 && n % r != 0 {
                        endpoint_deviations += 1;
                    } else {
                        other_deviations.push((n, r, alpha));
                    }
                }
                // the library check encodes the corrected characterization
                let rep = check_turan_bound(n, r, a(alpha)).unwrap();
                if rep.verdict != Verdict::Pass {
                    other_deviations.push((n, r, alpha));
                }
            }
        }
    }
    let literal = bound_violations.is_empty() && endpoint_deviations == 0 && other_deviations.is_empty();
    let explained = bound_violations.is_empty() && other_deviations.is_empty();
    Outcome {
        passed: literal,
        known_deviation: !literal && explained,
        detail: format!(
            "{checked} (n,r,alpha) cases; bound violations {}; equality-iff-r|n mismatches: \
             {endpoint_deviations} at alpha = 1-1/r with r not dividing n (equality holds there for all n), \
             {} elsewhere",
            bound_violations.len(),
            other_deviations.len()
        ),
    }
}

fn criterion_2() -> Outcome {
    let mut failures = Vec::new();
    let mut runs = 0;
    for (r, alphas) in [(2usize, grid(0.1, 0.4)), (3, grid(0.1, 0.6))] {
        let fam = ForbiddenFamily::clique(r + 1).unwrap();
        for n in 3..=8 {
            let want = vec![key(FamilySpec::Turan(n, r))];
            for &alpha in &alphas {
                let rec = spectral_extremal(n, a(alpha), &fam, None, EnumOptions::default()).unwrap();
                runs += 1;
                if rec.argmax != want {
                    failures.push(format!("n={n} r={r} alpha={alpha}"));
                }
            }
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!("{runs} searches, argmax = {{T(n,r)}} except: {:?}", failures),
    )
}

fn criterion_3() -> Outcome {
    let fam = ForbiddenFamily::clique(3).unwrap();
    let mut bad = Vec::new();
    let mut searched = 0;
    for n in 3..=9 {
        let rec = turan_number(n, &fam, EnumOptions::default()).unwrap();
        searched += rec.classes_searched;
        let ok = rec.optimum.value() as usize == n * n / 4 && rec.argmax == vec![key(FamilySpec::Turan(n, 2))];
        if !ok {
            bad.push(n);
        }
    }
    Outcome::new(bad.is_empty(), format!("ex(n,K3) = floor(n^2/4) with argmax T(n,2); {searched} triangle-free classes searched; bad n: {bad:?}"))
}

fn criterion_4() -> Outcome {
    let fam = ForbiddenFamily::from_specs(&[FamilySpec::Star(3)]).unwrap();
    let mut bad = Vec::new();
    for n in 4..=8 {
        let witness =
            canonical_form(&disjoint_union(&Graph::complete(3).unwrap(), &Graph::empty(n - 3).unwrap()).unwrap());
        for alpha in [0.0, 0.25, 0.5, 0.75] {
            let rec = spectral_extremal(n, a(alpha), &fam, None, EnumOptions::default()).unwrap();
            if (rec.optimum.value() - 2.0).abs() > PASS_TOL || !rec.argmax.contains(&witness) {
                bad.push(format!("n={n} alpha={alpha} opt={}", rec.optimum.value()));
            }
        }
    }
    Outcome::new(bad.is_empty(), format!("optimum 2 with K3 + isolated vertices in argmax; bad: {bad:?}"))
}

fn criterion_5() -> Outcome {
    let fam = ForbiddenFamily::from_specs(&[FamilySpec::Matching(2)]).unwrap();
    let alpha = 0.5;
    let mut bad = Vec::new();
    for n in 5..=8 {
        let rec = spectral_extremal(n, a(alpha), &fam, None, EnumOptions::default()).unwrap();
        // largest eigenvalue of the quotient [[α(n−1), (1−α)(n−1)], [1−α, α]]
        let nf = n as f64;
        let quotient =
            (alpha * nf + (alpha * alpha * nf * nf + 4.0 * (nf - 1.0) * (1.0 - 2.0 * alpha)).sqrt()) / 2.0;
        let ok = rec.argmax == vec![key(FamilySpec::Star(n - 1))]
            && (rec.optimum.value() - quotient).abs() <= PASS_TOL;
        if !ok {
            bad.push(n);
        }
    }
    Outcome::new(bad.is_empty(), format!("unique argmax K(1,n-1) at the quotient value; bad n: {bad:?}"))
}

fn criterion_6() -> Outcome {
    let alphas = grid(0.1, 0.6);
    let rep = run_battery(7, &alphas, &[2, 3]).unwrap();
    let required = ["sandwich", "lower-bounds", "deletion", "min-entry-upper", "entry-bound", "blow-up", "turan-counts"];
    let mut missing = Vec::new();
    let mut evaluated = 0;
    for id in required {
        match rep.checks.iter().find(|c| c.check_id == id) {
            Some(c) if c.passed > 0 => evaluated += c.passed + c.failed,
            _ => missing.push(id),
        }
    }
    Outcome::new(
        rep.hard_failures == 0 && missing.is_empty(),
        format!(
            "{} classes, {evaluated} evaluated reports in the required checks, {} hard failures, {} observational findings",
            rep.classes,
            rep.hard_failures,
            rep.findings.len()
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    for n in 1..=5 {
        for c in enumerate_graphs(n, &EnumFilter::none(), EnumOptions::default()).unwrap() {
            for p in [2, 3] {
                let big = blow_up(&c.graph, p).unwrap();
                for alpha in [0.0, 0.3, 0.5] {
                    let d = (lambda_alpha(&big, a(alpha)).unwrap()
                        - p as f64 * lambda_alpha(&c.graph, a(alpha)).unwrap())
                    .abs();
                    worst = worst.max(d);
                    count += 1;
                }
            }
        }
    }
    Outcome::new(worst <= EQUALITY_TOL, format!("{count} cases, max |lambda(G^p) - p lambda(G)| = {worst:e}"))
}

fn criterion_8() -> Outcome {
    let fam = ForbiddenFamily::clique(3).unwrap();
    let mut bad = Vec::new();
    for alpha in [0.0, 0.25] {
        let seq = pi_sequence(&fam, a(alpha), 4, 8, EnumOptions::default()).unwrap();
        if !seq.ratio_non_increasing || seq.hypothesis_all != Some(true) || seq.rows.len() != 5 {
            bad.push(alpha);
        }
    }
    Outcome::new(bad.is_empty(), format!("ratio non-increasing and hypothesis true on n = 4..8; bad alpha: {bad:?}"))
}

fn criterion_9() -> Outcome {
    let k3 = graph6::encode(&Graph::complete(3).unwrap());
    let mut count = 0;
    let mut bad = 0;
    for n in 1..=6 {
        for c in enumerate_graphs(n, &EnumFilter::none(), EnumOptions::default()).unwrap() {
            count += 1;
            if graph6::decode(&graph6::encode(&c.graph)).ok().as_ref() != Some(&c.graph) {
                bad += 1;
            }
        }
    }
    Outcome::new(k3 == "Bw" && bad == 0, format!("encode(K3) = {k3:?}; {count} classes round-tripped, {bad} mismatches"))
}

fn criterion_10() -> Outcome {
    let fam = ForbiddenFamily::clique(3).unwrap();
    let opts = EnumOptions::default();
    let params = GrowthParams { alpha: a(0.2), sigma: 0.5, epsilon: 0.1 };
    let growth = growth_condition_check(&fam, params, 2, 8, opts);
    let mut stability = Ok(0usize);
    for n in 1..=8 {
        match check_degree_stability(n, &fam, opts) {
            Ok(r) => stability = stability.map(|s| s + r.len()),
            Err(e) => stability = Err(e),
        }
    }
    let seq = pi_sequence(&fam, a(0.2), 2, 8, opts);
    let ok = growth.is_ok() && stability.is_ok() && seq.is_ok();
    Outcome::new(
        ok,
        format!(
            "observational reports generated: growth rows {}, stability reports {}, sequence rows {}",
            growth.map(|g| g.rows.len()).unwrap_or(0),
            stability.unwrap_or(0),
            seq.map(|s| s.rows.len()).unwrap_or(0)
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut ok = true;
    for (id, run) in criteria {
        let name = format!("criterion_{id}");
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let out = run();
        let status = match (out.passed, out.known_deviation) {
            (true, _) => "PASS",
            (false, true) => "FAIL (documented deviation)",
            (false, false) => "FAIL",
        };
        println!("acceptance {id:>2}: {status} [{:.2}s] {}", start.elapsed().as_secs_f64(), out.detail);
        ok &= out.passed || out.known_deviation;
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
