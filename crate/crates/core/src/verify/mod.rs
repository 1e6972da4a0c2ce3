//! Exhaustive numeric verification of the theory's inequalities.
//!
//! Each check family is a [`Check`] registered by name. A battery runs the
//! selected checks over every class up to a given order and every α in a
//! grid, and aggregates signed slacks.

mod checks;
mod report;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::{check_cap, enumerate_graphs, EnumFilter, EnumOptions, GraphClass};
use crate::error::{Error, Result};
use crate::spectral::Alpha;
use crate::structure::ForbiddenFamily;

pub use checks::*;
pub use report::{CheckReport, Subject, Verdict, EQUALITY_TOL, PASS_TOL};

/// Largest order whose classes feed the blow-up check.
pub const BLOW_UP_MAX_ORDER: usize = 5;
pub const BLOW_UP_FACTORS: [usize; 2] = [2, 3];

/// Inputs shared by every check in a battery run.
pub struct BatteryContext {
    pub n_max: usize,
    pub alphas: Vec<Alpha>,
    pub r_set: Vec<usize>,
    pub classes: Vec<GraphClass>,
    pub opts: EnumOptions,
}

impl BatteryContext {
    pub fn new(n_max: usize, alpha_grid: &[f64], r_set: &[usize], opts: EnumOptions) -> Result<Self> {
        check_cap(n_max, opts)?;
        let alphas = alpha_grid
            .iter()
            .map(|&a| {
                Alpha::new(a).map_err(|_| Error::Precondition(format!("alpha {a} outside [0, 1)")))
            })
            .collect::<Result<Vec<_>>>()?;
        if alphas.is_empty() {
            return Err(Error::Precondition("alpha grid is empty".into()));
        }
        if let Some(&r) = r_set.iter().find(|&&r| r < 2) {
            return Err(Error::Precondition(format!("r = {r} must be at least 2")));
        }
        if r_set.is_empty() {
            return Err(Error::Precondition("r set is empty".into()));
        }
        let mut classes = Vec::new();
        for n in 1..=n_max {
            classes.extend(enumerate_graphs(n, &EnumFilter::none(), opts)?);
        }
        Ok(BatteryContext { n_max, alphas, r_set: r_set.to_vec(), classes, opts })
    }

    /// Applies `f` to every (class, α) pair, in parallel, keeping input order.
    fn per_graph<F>(&self, max_order: usize, f: F) -> Result<Vec<CheckReport>>
    where
        F: Fn(&GraphClass, Alpha) -> Result<Vec<CheckReport>> + Sync,
    {
        let pairs: Vec<(&GraphClass, Alpha)> = self
            .classes
            .iter()
            .filter(|c| c.graph.order() <= max_order)
            .flat_map(|c| self.alphas.iter().map(move |&a| (c, a)))
            .collect();
        let nested: Vec<Vec<CheckReport>> =
            pairs.into_par_iter().map(|(c, a)| f(c, a)).collect::<Result<_>>()?;
        Ok(nested.into_iter().flatten().collect())
    }

    /// Every admissible `(n, r, α)` with `2 ≤ r ≤ n ≤ n_max`.
    fn constructor_params(&self) -> Vec<(usize, usize, Alpha)> {
        let mut out = Vec::new();
        for n in 2..=self.n_max {
            for &r in self.r_set.iter().filter(|&&r| r <= n) {
                for &a in &self.alphas {
                    out.push((n, r, a));
                }
            }
        }
        out
    }
}

/// A named family of checks.
pub trait Check: Send + Sync {
    fn id(&self) -> &'static str;
    fn description(&self) -> &'static str;
    /// Findings from observational checks never count as failures.
    fn observe_only(&self) -> bool {
        false
    }
    fn run(&self, ctx: &BatteryContext) -> Result<Vec<CheckReport>>;
}

struct Sandwich;
struct LowerBounds;
struct Deletion;
struct MinEntryUpper;
struct EntryBound;
struct BlowUp;
struct TuranBound;
struct TuranCounts;
struct DegreeStability;
struct Facts;

impl Check for Sandwich {
    fn id(&self) -> &'static str {
        "sandwich"
    }
    fn description(&self) -> &'static str {
        "alpha*Delta <= lambda_alpha <= alpha*Delta + (1-alpha)*lambda_0"
    }
    fn run(&self, ctx: &BatteryContext) -> Result<Vec<CheckReport>> {
        ctx.per_graph(ctx.n_max, |c, a| Ok(check_sandwich(&c.graph, a)?.to_vec()))
    }
}

impl Check for LowerBounds {
    fn id(&self) -> &'static str {
        "lower-bounds"
    }
    fn description(&self) -> &'static str {
        "lambda_alpha >= sqrt(sum d^2 / n) and >= 2m/n, equality iff regular"
    }
    fn run(&self, ctx: &BatteryContext) -> Result<Vec<CheckReport>> {
        ctx.per_graph(ctx.n_max, |c, a| Ok(check_lower_bounds(&c.graph, a)?.to_vec()))
    }
}

impl Check for Deletion {
    fn id(&self) -> &'static str {
        "deletion"
    }
    fn description(&self) -> &'static str {
        "spectral radius after deleting the vertex of least Perron entry"
    }
    fn run(&self, ctx: &BatteryContext) -> Result<Vec<CheckReport>> {
        ctx.per_graph(ctx.n_max, |c, a| {
            ctx.r_set.iter().map(|&r| check_deletion(&c.graph, a, r)).collect()
        })
    }
}

impl Check for MinEntryUpper {
    fn id(&self) -> &'static str {
        "min-entry-upper"
    }
    fn description(&self) -> &'static str {
        "upper bound on lambda_alpha from the least Perron entry and min degree"
    }
    fn run(&self, ctx: &BatteryContext) -> Result<Vec<CheckReport>> {
        ctx.per_graph(ctx.n_max, |c, a| {
            ctx.r_set.iter().map(|&r| check_min_entry_upper(&c.graph, a, r)).collect()
        })
    }
}

impl Check for EntryBound {
    fn id(&self) -> &'static str {
        "entry-bound"
    }
    fn description(&self) -> &'static str {
        "upper bound on the squared least Perron entry"
    }
    fn run(&self, ctx: &BatteryContext) -> Result<Vec<CheckReport>> {
        ctx.per_graph(ctx.n_max, |c, a| Ok(vec![check_entry_bound(&c.graph, a)?]))
    }
}

impl Check for BlowUp {
    fn id(&self) -> &'static str {
        "blow-up"
    }
    fn description(&self) -> &'static str {
        "lambda_alpha(G^p) = p * lambda_alpha(G)"
    }
    fn run(&self, ctx: &BatteryContext) -> Result<Vec<CheckReport>> {
        ctx.per_graph(BLOW_UP_MAX_ORDER, |c, a| {
            BLOW_UP_FACTORS.iter().map(|&p| check_blow_up(&c.graph, a, p)).collect()
        })
    }
}

impl Check for TuranBound {
    fn id(&self) -> &'static str {
        "turan-bound"
    }
    fn description(&self) -> &'static str {
        "lambda_alpha(T_{n,r}) <= (1-1/r)n, equality iff r | n"
    }
    fn run(&self, ctx: &BatteryContext) -> Result<Vec<CheckReport>> {
        ctx.constructor_params()
            .into_par_iter()
            .map(|(n, r, a)| check_turan_bound(n, r, a))
            .collect()
    }
}

impl Check for TuranCounts {
    fn id(&self) -> &'static str {
        "turan-counts"
    }
    fn description(&self) -> &'static str {
        "lower bounds on e(T_{n,r}) and lambda_alpha(T_{n,r})"
    }
    fn run(&self, ctx: &BatteryContext) -> Result<Vec<CheckReport>> {
        let nested: Vec<[CheckReport; 2]> = ctx
            .constructor_params()
            .into_par_iter()
            .map(|(n, r, a)| check_edge_count_turan(n, r, a))
            .collect::<Result<_>>()?;
        let mut out: Vec<CheckReport> = Vec::new();
        for [edges, lambda] in nested {
            // the edge bound does not depend on alpha
            if !out.iter().any(|o| o.check_id == edges.check_id && o.subject == edges.subject) {
                out.push(edges);
            }
            out.push(lambda);
        }
        Ok(out)
    }
}

impl Check for DegreeStability {
    fn id(&self) -> &'static str {
        "degree-stability"
    }
    fn description(&self) -> &'static str {
        "K_{r+1}-free graphs of large min degree are r-partite (observational)"
    }
    fn observe_only(&self) -> bool {
        true
    }
    fn run(&self, ctx: &BatteryContext) -> Result<Vec<CheckReport>> {
        let mut out = Vec::new();
        for &r in &ctx.r_set {
            let family = ForbiddenFamily::clique(r + 1)?;
            for n in 1..=ctx.n_max {
                out.extend(check_degree_stability(n, &family, ctx.opts)?);
            }
        }
        Ok(out)
    }
}

impl Check for Facts {
    fn id(&self) -> &'static str {
        "facts"
    }
    fn description(&self) -> &'static str {
        "two elementary real inequalities on a fixed sample grid"
    }
    fn run(&self, _ctx: &BatteryContext) -> Result<Vec<CheckReport>> {
        check_facts(&FactSample::grid())
    }
}

/// Every known check, in battery order.
pub fn registry() -> Vec<Box<dyn Check>> {
    vec![
        Box::new(Sandwich),
        Box::new(LowerBounds),
        Box::new(Deletion),
        Box::new(MinEntryUpper),
        Box::new(EntryBound),
        Box::new(BlowUp),
        Box::new(TuranBound),
        Box::new(TuranCounts),
        Box::new(DegreeStability),
        Box::new(Facts),
    ]
}

pub fn check_ids() -> Vec<&'static str> {
    registry().iter().map(|c| c.id()).collect()
}

/// Resolves names to checks, preserving registry order.
pub fn select_checks(names: &[String]) -> Result<Vec<Box<dyn Check>>> {
    let known = check_ids();
    if let Some(bad) = names.iter().find(|n| !known.contains(&n.as_str())) {
        return Err(Error::InvalidParameters(format!(
            "unknown check {bad:?}; known checks: {}",
            known.join(", ")
        )));
    }
    Ok(registry().into_iter().filter(|c| names.iter().any(|n| n == c.id())).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckAggregate {
    pub check_id: String,
    pub observe_only: bool,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub equalities_observed: usize,
    pub equalities_expected: usize,
    /// Reports carrying a note, e.g. a proviso case.
    pub flagged: usize,
    /// Smallest slack among evaluated reports, per report kind.
    pub min_slack: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatteryReport {
    pub n_max: usize,
    pub alphas: Vec<Alpha>,
    pub r_set: Vec<usize>,
    pub classes: usize,
    pub checks: Vec<CheckAggregate>,
    /// Failed reports of asserting checks, sorted.
    pub failures: Vec<CheckReport>,
    /// Failed reports of observational checks, sorted.
    pub findings: Vec<CheckReport>,
    /// Reports annotated with a note.
    pub flagged: Vec<CheckReport>,
    pub hard_failures: usize,
}

impl BatteryReport {
    pub fn passed(&self) -> bool {
        self.hard_failures == 0
    }
}

fn aggregate(check: &dyn Check, reports: &[CheckReport]) -> CheckAggregate {
    let mut agg = CheckAggregate {
        check_id: check.id().to_string(),
        observe_only: check.observe_only(),
        total: reports.len(),
        passed: 0,
        failed: 0,
        skipped: 0,
        equalities_observed: 0,
        equalities_expected: 0,
        flagged: 0,
        min_slack: BTreeMap::new(),
    };
    for r in reports {
        match r.verdict {
            Verdict::Pass => agg.passed += 1,
            Verdict::Fail => agg.failed += 1,
            Verdict::Skipped(_) => {
                agg.skipped += 1;
                continue;
            }
        }
        agg.equalities_observed += usize::from(r.equality_observed);
        agg.equalities_expected += usize::from(r.equality_expected);
        agg.flagged += usize::from(r.note.is_some());
        let slot = agg.min_slack.entry(r.check_id.clone()).or_insert(f64::INFINITY);
        *slot = slot.min(r.slack);
    }
    agg
}

fn sort_key(r: &CheckReport) -> (String, String, u64, String) {
    (
        r.check_id.clone(),
        r.subject.key.as_ref().map(|k| k.as_str().to_string()).unwrap_or_default(),
        r.subject.alpha.map(|a| a.value().to_bits()).unwrap_or(0),
        format!("{:?}", r.subject.params),
    )
}

/// Runs `checks` over a prepared context.
pub fn run_checks(ctx: &BatteryContext, checks: &[Box<dyn Check>]) -> Result<BatteryReport> {
    let mut aggregates = Vec::new();
    let mut failures = Vec::new();
    let mut findings = Vec::new();
    let mut flagged = Vec::new();
    for check in checks {
        let mut reports = check.run(ctx)?;
        if check.observe_only() {
            reports.iter_mut().for_each(|r| r.observe_only = true);
        }
        aggregates.push(aggregate(check.as_ref(), &reports));
        for r in reports {
            if r.verdict == Verdict::Fail {
                if r.observe_only {
                    findings.push(r);
                } else {
                    failures.push(r);
                }
            } else if r.note.is_some() {
                flagged.push(r);
            }
        }
    }
    for list in [&mut failures, &mut findings, &mut flagged] {
        list.sort_by_cached_key(sort_key);
    }
    Ok(BatteryReport {
        n_max: ctx.n_max,
        alphas: ctx.alphas.clone(),
        r_set: ctx.r_set.clone(),
        classes: ctx.classes.len(),
        checks: aggregates,
        hard_failures: failures.len(),
        failures,
        findings,
        flagged,
    })
}

/// Runs every registered check.
pub fn run_battery(n_max: usize, alpha_grid: &[f64], r_set: &[usize]) -> Result<BatteryReport> {
    let ctx = BatteryContext::new(n_max, alpha_grid, r_set, EnumOptions::default())?;
    run_checks(&ctx, &registry())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_battery_passes() {
        let rep = run_battery(5, &[0.0, 0.25, 0.5], &[2, 3]).unwrap();
        assert_eq!(rep.hard_failures, 0, "{:#?}", rep.failures);
        assert_eq!(rep.classes, 1 + 2 + 4 + 11 + 34);
        assert_eq!(rep.checks.len(), registry().len());
        assert!(rep.checks.iter().all(|c| c.total > 0 || c.check_id == "degree-stability"));
        // K_{1,3} at alpha = 0, among others
        assert!(!rep.flagged.is_empty());
    }

    #[test]
    fn trivial_battery() {
        let rep = run_battery(1, &[0.0], &[2]).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.classes, 1);
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(run_battery(3, &[0.0, 1.0], &[2]), Err(Error::Precondition(_))));
        assert!(matches!(run_battery(3, &[0.0], &[1]), Err(Error::Precondition(_))));
        assert!(matches!(run_battery(11, &[0.0], &[2]), Err(Error::EnumerationCap { .. })));
    }

    #[test]
    fn selection() {
        let picked = select_checks(&["facts".into(), "sandwich".into()]).unwrap();
        let ids: Vec<_> = picked.iter().map(|c| c.id()).collect();
        assert_eq!(ids, ["sandwich", "facts"]);
        assert!(select_checks(&["nope".into()]).is_err());
    }

    #[test]
    fn report_json_round_trip() {
        let ctx = BatteryContext::new(4, &[0.0, 0.5], &[2], EnumOptions::default()).unwrap();
        let reports = registry()[3].run(&ctx).unwrap();
        assert!(reports.iter().any(|r| matches!(r.verdict, Verdict::Skipped(_))));
        for r in reports {
            let json = serde_json::to_string(&r).unwrap();
            let back: CheckReport = serde_json::from_str(&json).unwrap();
            assert_eq!(serde_json::to_string(&back).unwrap(), json);
        }
    }
}
