//! Individual inequality checks. Each returns signed-slack reports.

use crate::canon::canonical_form;
use crate::enumerate::{enumerate_graphs, EnumFilter, EnumOptions};
use crate::error::{Error, Result};
use crate::family::FamilySpec;
use crate::graph::{blow_up, delete_vertex, Graph};
use crate::spectral::{lambda_alpha, spectral_radius, Alpha};
use crate::structure::{chromatic_number, is_color_critical, ForbiddenFamily};

use super::report::{CheckReport, Subject};

pub const SANDWICH_LOWER: &str = "sandwich-lower";
pub const SANDWICH_UPPER: &str = "sandwich-upper";
pub const DEGREE_SQUARES: &str = "lower-degree-squares";
pub const AVERAGE_DEGREE: &str = "lower-average-degree";
pub const DELETION: &str = "deletion";
pub const MIN_ENTRY_UPPER: &str = "min-entry-upper";
pub const ENTRY_BOUND: &str = "entry-bound";
pub const TURAN_BOUND: &str = "turan-bound";
pub const TURAN_EDGES: &str = "turan-edge-count";
pub const TURAN_LAMBDA: &str = "turan-lambda-lower";
pub const DEGREE_STABILITY: &str = "degree-stability";
pub const FACT_LOG: &str = "fact-log";
pub const FACT_RECIPROCAL: &str = "fact-reciprocal";
pub const FACT_RECIPROCAL_SQUARE: &str = "fact-reciprocal-square";
pub const BLOW_UP: &str = "blow-up";

fn subject(g: &Graph, alpha: Alpha) -> Subject {
    Subject::graph(canonical_form(g), alpha)
}

/// `αΔ ≤ λ_α ≤ αΔ + (1−α)λ_0`.
pub fn check_sandwich(g: &Graph, alpha: Alpha) -> Result<[CheckReport; 2]> {
    let a = alpha.value();
    let lam = lambda_alpha(g, alpha)?;
    let lam0 = lambda_alpha(g, Alpha::ZERO)?;
    let delta = g.max_degree() as f64;
    let s = subject(g, alpha);
    let edgeless = g.edge_count() == 0;
    Ok([
        CheckReport::inequality(SANDWICH_LOWER, s.clone(), a * delta, lam).expect_equality(edgeless),
        CheckReport::inequality(SANDWICH_UPPER, s, lam, a * delta + (1.0 - a) * lam0)
            .expect_equality(g.is_regular()),
    ])
}

/// `λ_α ≥ √(Σd²/n)` and `λ_α ≥ 2m/n`, with equality iff regular (the
/// first only for α > 0).
pub fn check_lower_bounds(g: &Graph, alpha: Alpha) -> Result<[CheckReport; 2]> {
    let n = g.order() as f64;
    let lam = lambda_alpha(g, alpha)?;
    let sq: f64 = g.degrees().iter().map(|&d| (d * d) as f64).sum();
    let regular = g.is_regular();
    let s = subject(g, alpha);
    let mut first = CheckReport::inequality(DEGREE_SQUARES, s.clone(), (sq / n).sqrt(), lam)
        .expect_equality(regular);
    if alpha.value() > 0.0 {
        first = first.characterized();
    } else if first.equality_observed && !regular {
        first = first.with_note("equality on an irregular graph at alpha = 0");
    }
    let second = CheckReport::inequality(AVERAGE_DEGREE, s, 2.0 * g.edge_count() as f64 / n, lam)
        .expect_equality(regular)
        .characterized();
    Ok([first, second])
}

fn alpha_gate(id: &str, s: &Subject, alpha: Alpha, r: usize) -> Option<CheckReport> {
    (!alpha.within_turan_range(r)).then(|| CheckReport::skipped(id, s.clone(), "alpha > 1 - 1/r"))
}

/// Deleting the vertex `w` of minimum Perron entry `x`:
/// `λ_α(G−w) ≥ λ_α(G)(1−2x²)/(1−x²) − α(1−nx²)/(1−x²)`.
pub fn check_deletion(g: &Graph, alpha: Alpha, r: usize) -> Result<CheckReport> {
    let s = subject(g, alpha).param("r", r as f64);
    if g.order() < 2 {
        return Ok(CheckReport::skipped(DELETION, s, "order < 2"));
    }
    if let Some(skip) = alpha_gate(DELETION, &s, alpha, r) {
        return Ok(skip);
    }
    let res = spectral_radius(g, alpha)?;
    let x2 = res.min_entry * res.min_entry;
    let n = g.order() as f64;
    let a = alpha.value();
    let bound = res.lambda_alpha * (1.0 - 2.0 * x2) / (1.0 - x2) - a * (1.0 - n * x2) / (1.0 - x2);
    let rest = lambda_alpha(&delete_vertex(g, res.min_index)?, alpha)?;
    Ok(CheckReport::inequality(DELETION, s.param("w", res.min_index as f64), bound, rest))
}

/// `λ_α ≤ αδ + (1−α)√(δ² + (1/(nx²) − 1)nδ)` for minimum Perron entry `x > 0`.
pub fn check_min_entry_upper(g: &Graph, alpha: Alpha, r: usize) -> Result<CheckReport> {
    let s = subject(g, alpha).param("r", r as f64);
    if let Some(skip) = alpha_gate(MIN_ENTRY_UPPER, &s, alpha, r) {
        return Ok(skip);
    }
    let res = spectral_radius(g, alpha)?;
    let x = res.min_entry;
    if x <= 1e-12 {
        return Ok(CheckReport::skipped(MIN_ENTRY_UPPER, s, "x=0"));
    }
    let n = g.order() as f64;
    let d = g.min_degree() as f64;
    let a = alpha.value();
    let bound = a * d + (1.0 - a) * (d * d + (1.0 / (n * x * x) - 1.0) * n * d).sqrt();
    Ok(CheckReport::inequality(MIN_ENTRY_UPPER, s, res.lambda_alpha, bound)
        .expect_equality(g.is_regular() && g.is_connected()))
}

/// `x² ≤ δ(1−α)² / ((λ_α−αδ)² + δ(n−δ)(1−α)²)` for minimum Perron entry `x`.
pub fn check_entry_bound(g: &Graph, alpha: Alpha) -> Result<CheckReport> {
    let s = subject(g, alpha);
    let d = g.min_degree() as f64;
    if d < 1.0 {
        return Ok(CheckReport::skipped(ENTRY_BOUND, s, "min degree 0"));
    }
    let res = spectral_radius(g, alpha)?;
    let a = alpha.value();
    let gap = res.lambda_alpha - a * d;
    if gap <= 0.0 {
        return Ok(CheckReport::skipped(ENTRY_BOUND, s, "lambda <= alpha * delta"));
    }
    let n = g.order() as f64;
    let b = 1.0 - a;
    let bound = d * b * b / (gap * gap + d * (n - d) * b * b);
    Ok(CheckReport::inequality(ENTRY_BOUND, s, res.min_entry * res.min_entry, bound)
        .expect_equality(g.is_regular() && g.is_connected()))
}

fn turan(n: usize, r: usize) -> Result<Graph> {
    if r < 2 || r > n {
        return Err(Error::Precondition(format!("need 2 <= r <= n, got r = {r}, n = {n}")));
    }
    FamilySpec::Turan(n, r).generate()
}

/// `λ_α(T_{n,r}) ≤ (1 − 1/r)n`, with equality iff `r | n` or `α = 1 − 1/r`.
///
/// At the endpoint `α = 1 − 1/r` the vector with entry `1/s` on a part of
/// size `s` is a positive eigenvector for `(1 − 1/r)n`, so the bound is
/// attained for every `n`.
pub fn check_turan_bound(n: usize, r: usize, alpha: Alpha) -> Result<CheckReport> {
    let t = turan(n, r)?;
    let s = subject(&t, alpha).param("n", n as f64).param("r", r as f64);
    if let Some(skip) = alpha_gate(TURAN_BOUND, &s, alpha, r) {
        return Ok(skip);
    }
    let lam = lambda_alpha(&t, alpha)?;
    let bound = (1.0 - 1.0 / r as f64) * n as f64;
    let endpoint = (alpha.value() - (1.0 - 1.0 / r as f64)).abs() <= 1e-12;
    let report = CheckReport::inequality(TURAN_BOUND, s, lam, bound)
        .expect_equality(n.is_multiple_of(r) || endpoint)
        .characterized();
    Ok(if endpoint && !n.is_multiple_of(r) {
        report.with_note("equality at alpha = 1 - 1/r although r does not divide n")
    } else {
        report
    })
}

/// `e(T_{n,r}) ≥ (r−1)n²/(2r) − r/8` and `λ_α(T_{n,r}) ≥ (1−1/r)n − r/(4n)`.
pub fn check_edge_count_turan(n: usize, r: usize, alpha: Alpha) -> Result<[CheckReport; 2]> {
    let t = turan(n, r)?;
    let (nf, rf) = (n as f64, r as f64);
    let s = subject(&t, alpha).param("n", nf).param("r", rf);
    let edges = CheckReport::inequality(
        TURAN_EDGES,
        Subject { alpha: None, ..s.clone() },
        (rf - 1.0) * nf * nf / (2.0 * rf) - rf / 8.0,
        t.edge_count() as f64,
    );
    let lam = lambda_alpha(&t, alpha)?;
    let spectral =
        CheckReport::inequality(TURAN_LAMBDA, s, (1.0 - 1.0 / rf) * nf - rf / (4.0 * nf), lam);
    Ok([edges, spectral])
}

/// For every `F`-free class on `n` vertices with `δ > (3r−4)n/(3r−1)`,
/// reports whether it is `r`-partite (`slack = r − χ`). Observational:
/// the underlying statement only applies above an unspecified order.
pub fn check_degree_stability(
    n: usize,
    family: &ForbiddenFamily,
    opts: EnumOptions,
) -> Result<Vec<CheckReport>> {
    let [f] = family.members() else {
        return Err(Error::Precondition("degree stability needs a single forbidden graph".into()));
    };
    if !is_color_critical(f)? {
        return Err(Error::Precondition("forbidden graph is not color-critical".into()));
    }
    let r = family.chi() - 1;
    if r < 2 {
        return Err(Error::Precondition("forbidden graph must have chromatic number >= 3".into()));
    }
    let threshold = (3 * r - 4) as f64 / (3 * r - 1) as f64 * n as f64;
    let min_degree = (threshold + 1e-9).floor() as usize + 1;
    if min_degree > n.saturating_sub(1) {
        return Ok(Vec::new());
    }
    let filter = EnumFilter::free_of(family.clone()).with_min_degree(min_degree);
    let classes = enumerate_graphs(n, &filter, opts)?;
    Ok(classes
        .into_iter()
        .map(|c| {
            let s = Subject { key: Some(c.key), ..Subject::default() }
                .param("n", n as f64)
                .param("r", r as f64)
                .param("min_degree", c.graph.min_degree() as f64);
            CheckReport::inequality(
                DEGREE_STABILITY,
                s,
                chromatic_number(&c.graph) as f64,
                r as f64,
            )
            .observe_only()
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FactSample {
    /// `ln(1 − ax) + ax + x² > 0` for `0 < x < 1/2`, `0 < a < 1`.
    Log { x: f64, a: f64 },
    /// `1/x < ln x − ln(x−1)` and `1/x² < 1/(x−1) − 1/x` for `x > 1`.
    Reciprocal { x: f64 },
}

impl FactSample {
    /// A fixed grid covering both domains.
    pub fn grid() -> Vec<FactSample> {
        let mut out = Vec::new();
        for i in 1..10 {
            for j in 1..10 {
                out.push(FactSample::Log { x: i as f64 * 0.05, a: j as f64 * 0.1 });
            }
        }
        for x in [1.001, 1.01, 1.1, 1.5, 2.0, 3.0, 5.0, 10.0, 100.0, 1000.0] {
            out.push(FactSample::Reciprocal { x });
        }
        out
    }
}

pub fn check_facts(samples: &[FactSample]) -> Result<Vec<CheckReport>> {
    let mut out = Vec::with_capacity(samples.len());
    for &sample in samples {
        match sample {
            FactSample::Log { x, a } => {
                if !(x > 0.0 && x < 0.5 && a > 0.0 && a < 1.0) {
                    return Err(Error::Precondition(format!(
                        "log fact needs 0 < x < 1/2 and 0 < a < 1, got x = {x}, a = {a}"
                    )));
                }
                let s = Subject::default().param("x", x).param("a", a);
                let v = (1.0 - a * x).ln() + a * x + x * x;
                out.push(CheckReport::inequality(FACT_LOG, s, 0.0, v));
            }
            FactSample::Reciprocal { x } => {
                // `!(x > 1)` also rejects NaN
                #[allow(clippy::neg_cmp_op_on_partial_ord)]
                if !(x > 1.0) {
                    return Err(Error::Precondition(format!("reciprocal fact needs x > 1, got {x}")));
                }
                let s = Subject::default().param("x", x);
                out.push(CheckReport::inequality(FACT_RECIPROCAL, s.clone(), 1.0 / x, x.ln() - (x - 1.0).ln()));
                out.push(CheckReport::inequality(
                    FACT_RECIPROCAL_SQUARE,
                    s,
                    1.0 / (x * x),
                    1.0 / (x - 1.0) - 1.0 / x,
                ));
            }
        }
    }
    Ok(out)
}

/// `λ_α(G^p) = p·λ_α(G)` on the explicit blow-up.
pub fn check_blow_up(g: &Graph, alpha: Alpha, p: usize) -> Result<CheckReport> {
    let s = subject(g, alpha).param("p", p as f64);
    let big = lambda_alpha(&blow_up(g, p)?, alpha)?;
    let scaled = p as f64 * lambda_alpha(g, alpha)?;
    Ok(CheckReport::inequality(BLOW_UP, s, big, scaled).expect_equality(true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::disjoint_union;
    use crate::verify::report::Verdict;

    fn a(v: f64) -> Alpha {
        Alpha::new(v).unwrap()
    }

    fn g(spec: &str) -> Graph {
        spec.parse::<FamilySpec>().unwrap().generate().unwrap()
    }

    fn close(x: f64, y: f64) -> bool {
        (x - y).abs() < 1e-10
    }

    #[test]
    fn sandwich_examples() {
        let [lo, hi] = check_sandwich(&g("complete:4"), a(0.5)).unwrap();
        assert!(close(lo.slack, 1.5) && lo.passed());
        assert!(close(hi.slack, 0.0) && hi.passed() && hi.equality_expected);

        let [lo, hi] = check_sandwich(&g("star:3"), a(0.5)).unwrap();
        assert!(close(lo.lhs, 1.5) && close(lo.rhs, 2.0));
        assert!(close(hi.rhs, 1.5 + 0.5 * 3f64.sqrt()));
        assert!(lo.passed() && hi.passed());

        for alpha in [0.0, 0.7] {
            let [lo, hi] = check_sandwich(&g("empty:5"), a(alpha)).unwrap();
            assert!(lo.equality_observed && hi.equality_observed);
            assert!(lo.passed() && hi.passed());
        }
    }

    #[test]
    fn lower_bound_examples() {
        let [sq, avg] = check_lower_bounds(&g("cycle:5"), a(0.3)).unwrap();
        assert!(sq.equality_observed && avg.equality_observed);
        assert!(sq.passed() && avg.passed());

        let [_, avg] = check_lower_bounds(&g("path:3"), Alpha::ZERO).unwrap();
        assert!(close(avg.lhs, 4.0 / 3.0) && close(avg.rhs, 2f64.sqrt()));
        assert!(avg.passed() && !avg.equality_observed);

        let [sq, avg] = check_lower_bounds(&g("star:3"), Alpha::ZERO).unwrap();
        assert!(sq.equality_observed && !sq.equality_expected);
        assert!(sq.passed() && sq.note.is_some());
        assert!(avg.passed());

        // away from alpha = 0 the same equality would be a failure
        let [sq, _] = check_lower_bounds(&g("star:3"), a(0.2)).unwrap();
        assert!(!sq.equality_observed && sq.passed());
    }

    #[test]
    fn deletion_examples() {
        for n in 3..=5 {
            for alpha in [0.0, 0.3, 0.5] {
                let r = check_deletion(&Graph::complete(n).unwrap(), a(alpha), 2).unwrap();
                assert!(close(r.rhs, (n - 2) as f64));
                assert!(r.passed());
            }
        }
        let g3 = disjoint_union(&Graph::empty(1).unwrap(), &Graph::complete(3).unwrap()).unwrap();
        let r = check_deletion(&g3, a(0.2), 2).unwrap();
        assert!(close(r.lhs, 1.8) && close(r.rhs, 2.0) && r.passed());
        assert!(check_deletion(&g("path:4"), Alpha::ZERO, 2).unwrap().passed());
        let r = check_deletion(&g("path:4"), a(0.6), 2).unwrap();
        assert!(matches!(r.verdict, Verdict::Skipped(_)));
        assert!(check_deletion(&g("path:4"), a(0.6), 3).unwrap().passed());
    }

    #[test]
    fn min_entry_examples() {
        for n in 2..=6 {
            let r = check_min_entry_upper(&Graph::complete(n).unwrap(), a(0.4), 2).unwrap();
            assert!(r.passed() && r.equality_observed);
        }
        let r = check_min_entry_upper(&g("cycle:5"), a(0.3), 2).unwrap();
        assert!(close(r.rhs, 2.0) && r.passed() && r.equality_observed);
        let r = check_min_entry_upper(&g("path:4"), a(0.1), 2).unwrap();
        assert!(r.passed() && r.slack > 1e-6);
        let iso = disjoint_union(&Graph::empty(1).unwrap(), &Graph::complete(2).unwrap()).unwrap();
        assert_eq!(
            check_min_entry_upper(&iso, a(0.1), 2).unwrap().verdict,
            Verdict::Skipped("x=0".into())
        );
    }

    #[test]
    fn entry_bound_examples() {
        let r = check_entry_bound(&g("complete:4"), a(0.25)).unwrap();
        // regular, so the bound is attained
        assert!(close(r.lhs, 0.25) && close(r.rhs, 0.25) && r.equality_observed && r.passed());
        let r = check_entry_bound(&g("cycle:6"), Alpha::ZERO).unwrap();
        assert!(close(r.rhs, 1.0 / 6.0) && r.equality_observed && r.passed());
        // leaves have x² = 1/20, which is also the bound
        let r = check_entry_bound(&g("star:4"), a(0.5)).unwrap();
        assert!(close(r.rhs, 0.05) && r.passed() && r.equality_observed);
        let r = check_entry_bound(&g("path:4"), a(0.5)).unwrap();
        assert!(r.passed() && r.slack > 1e-6);
        assert!(matches!(check_entry_bound(&g("empty:3"), a(0.5)).unwrap().verdict, Verdict::Skipped(_)));
    }

    #[test]
    fn turan_examples() {
        for alpha in [0.0, 0.3, 0.6] {
            let r = check_turan_bound(6, 3, a(alpha)).unwrap();
            assert!(close(r.lhs, 4.0) && r.equality_observed && r.passed());
        }
        let r = check_turan_bound(7, 3, Alpha::ZERO).unwrap();
        assert!(r.slack > 1e-8 && r.passed());
        let r = check_turan_bound(8, 2, a(0.4)).unwrap();
        assert!(r.equality_observed && r.passed());
        assert!(check_turan_bound(3, 5, Alpha::ZERO).is_err());
        for (n, r) in [(5, 2), (7, 3), (9, 4)] {
            let end = a(1.0 - 1.0 / r as f64);
            let rep = check_turan_bound(n, r, end).unwrap();
            assert!(rep.equality_observed && rep.passed() && rep.note.is_some());
        }

        let [e, l] = check_edge_count_turan(7, 3, Alpha::ZERO).unwrap();
        assert_eq!(e.rhs, 16.0);
        assert!(close(e.lhs, 2.0 / 6.0 * 49.0 - 0.375));
        assert!(e.passed() && l.passed());
        let [e, _] = check_edge_count_turan(6, 3, Alpha::ZERO).unwrap();
        assert!(close(e.lhs, 11.625) && e.rhs == 12.0);
        let [e, _] = check_edge_count_turan(5, 2, Alpha::ZERO).unwrap();
        assert!(close(e.lhs, 6.0) && e.passed());
    }

    #[test]
    fn degree_stability_examples() {
        let k3 = ForbiddenFamily::clique(3).unwrap();
        let reps = check_degree_stability(7, &k3, EnumOptions::default()).unwrap();
        assert!(!reps.is_empty());
        assert!(reps.iter().all(|r| r.observe_only && r.passed()));
        assert!(reps.iter().all(|r| r.subject.params["min_degree"] >= 3.0));

        let reps = check_degree_stability(4, &k3, EnumOptions::default()).unwrap();
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0].subject.key, Some(canonical_form(&g("cycle:4"))));

        assert_eq!(check_degree_stability(2, &k3, EnumOptions::default()).unwrap().len(), 1);
        assert!(check_degree_stability(3, &k3, EnumOptions::default()).unwrap().is_empty());
        let c4 = ForbiddenFamily::from_specs(&[FamilySpec::Cycle(4)]).unwrap();
        assert!(check_degree_stability(6, &c4, EnumOptions::default()).is_err());
    }

    #[test]
    fn fact_examples() {
        let r = check_facts(&[FactSample::Log { x: 0.25, a: 0.5 }]).unwrap();
        assert!((r[0].rhs - 0.0540).abs() < 1e-4 && r[0].passed());
        let r = check_facts(&[FactSample::Reciprocal { x: 2.0 }]).unwrap();
        assert!(close(r[0].lhs, 0.5) && close(r[0].rhs, 2f64.ln()));
        assert!(close(r[1].lhs, 0.25) && close(r[1].rhs, 0.5));
        assert!(r.iter().all(CheckReport::passed));
        assert!(matches!(
            check_facts(&[FactSample::Log { x: 0.6, a: 0.5 }]),
            Err(Error::Precondition(_))
        ));
        assert!(check_facts(&[FactSample::Reciprocal { x: 1.0 }]).is_err());
        assert!(check_facts(&FactSample::grid()).unwrap().iter().all(CheckReport::passed));
    }

    #[test]
    fn blow_up_example() {
        let r = check_blow_up(&g("path:3"), a(0.3), 3).unwrap();
        assert!(r.passed() && r.equality_observed);
    }
}
