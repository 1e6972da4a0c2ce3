use std::fs;
use std::io::{self, Read};
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;

use alphaspec::enumerate::{DEFAULT_CAP, HARD_CAP};
use alphaspec::extremal::{
    g_prime_min_degree, growth_condition_check, pi_sequence, GrowthParams, Problem,
};
use alphaspec::format::{sig12, write_csv};
use alphaspec::verify::{self, BatteryContext, CheckReport, Verdict};
use alphaspec::{
    enumerate_graphs, graph6, spectral_extremal, spectral_radius, turan_number, Alpha, EnumFilter,
    EnumOptions, Error, ExtremalRecord, FamilySpec, ForbiddenFamily,
};

use crate::output::{emit, json, Format, Table};
use crate::{EnumerateArgs, ExtremalArgs, GrowthArgs, LambdaArgs, SequenceArgs, StabilityArgs, VerifyArgs};

pub struct Out<'a> {
    pub format: Option<Format>,
    pub path: Option<&'a Path>,
}

impl Out<'_> {
    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn write(&self, text: &str) -> Result<()> {
        emit(self.path, text)
    }
}

/// Numerical failures map to 1, everything else (usage, parse, caps) to 2.
pub fn exit_status(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::ConvergenceFailure(_)) => 1,
        _ => 2,
    }
}

fn alpha(v: f64) -> Result<Alpha> {
    Ok(Alpha::new(v)?)
}

fn family(spec: &str) -> Result<ForbiddenFamily> {
    ForbiddenFamily::parse(spec).with_context(|| format!("family {spec:?}"))
}

fn options(n: usize, force: bool) -> EnumOptions {
    if force && n > DEFAULT_CAP && n <= HARD_CAP {
        eprintln!("warning: enumerating n = {n} above the default cap of {DEFAULT_CAP}; this can take very long");
    }
    EnumOptions { force }
}

/// `lo..hi`, `lo..=hi` or a single `n`; both ends inclusive.
pub fn parse_range(s: &str) -> Result<(usize, usize)> {
    let parse = |t: &str| {
        t.trim().parse::<usize>().map_err(|_| anyhow!(Error::InvalidParameters(format!("bad range {s:?}"))))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (parse(lo)?, parse(hi.strip_prefix('=').unwrap_or(hi))?),
        None => {
            let n = parse(s)?;
            (n, n)
        }
    };
    if lo > hi {
        bail!(Error::InvalidParameters(format!("empty range {s:?}")));
    }
    Ok((lo, hi))
}

#[derive(Serialize)]
struct LambdaRow {
    graph6: String,
    alpha: Alpha,
    lambda_alpha: f64,
    residual: f64,
}

pub fn lambda(args: &LambdaArgs, out: &Out) -> Result<ExitCode> {
    let alphas = args.alpha.iter().map(|&a| alpha(a)).collect::<Result<Vec<_>>>()?;
    let text = match args.input.as_deref() {
        Some(p) if p != Path::new("-") => {
            fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?
        }
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let g = graph6::decode(line).with_context(|| format!("line {}", i + 1))?;
        for &a in &alphas {
            let res = spectral_radius(&g, a)?;
            rows.push(LambdaRow {
                graph6: line.to_string(),
                alpha: a,
                lambda_alpha: res.lambda_alpha,
                residual: res.residual,
            });
        }
    }
    let cells = |r: &LambdaRow| {
        vec![r.graph6.clone(), sig12(r.alpha.value()), sig12(r.lambda_alpha), sig12(r.residual)]
    };
    let header = ["graph6", "alpha", "lambda_alpha", "residual"];
    let text = match out.format_or(Format::Table) {
        Format::Json => json(&rows)?,
        Format::Csv => write_csv(&header, rows.iter().map(cells))?,
        Format::Table => {
            let mut t = Table::new(header);
            rows.iter().for_each(|r| t.row(cells(r)));
            t.render()
        }
    };
    out.write(&text)?;
    Ok(ExitCode::SUCCESS)
}

pub fn generate(spec: &str, out: &Out) -> Result<ExitCode> {
    let g = spec.parse::<FamilySpec>()?.generate()?;
    out.write(&(graph6::encode(&g) + "\n"))?;
    Ok(ExitCode::SUCCESS)
}

pub fn enumerate(args: &EnumerateArgs, out: &Out) -> Result<ExitCode> {
    let opts = options(args.n, args.force);
    let mut filter = EnumFilter {
        min_degree: args.min_degree,
        max_edges: args.max_edges,
        family: args.family.as_deref().map(family).transpose()?,
        connected_only: false,
    };
    if args.connected {
        filter = filter.connected();
    }
    let classes = enumerate_graphs(args.n, &filter, opts)?;
    let text = if args.count {
        format!("{}\n", classes.len())
    } else {
        match out.format_or(Format::Table) {
            Format::Json => json(&classes.iter().map(|c| c.key.as_str()).collect::<Vec<_>>())?,
            Format::Csv => write_csv(
                &["graph6", "edges", "min_degree", "max_degree"],
                classes.iter().map(|c| {
                    vec![
                        c.key.to_string(),
                        c.graph.edge_count().to_string(),
                        c.graph.min_degree().to_string(),
                        c.graph.max_degree().to_string(),
                    ]
                }),
            )?,
            Format::Table => classes.iter().map(|c| format!("{}\n", c.key)).collect(),
        }
    };
    out.write(&text)?;
    Ok(ExitCode::SUCCESS)
}

fn record_table(rec: &ExtremalRecord) -> String {
    let mut t = Table::new(["field", "value"]);
    let headers = ExtremalRecord::CSV_HEADER;
    for (h, v) in headers.iter().zip(rec.csv_row()) {
        t.row(vec![h.to_string(), v]);
    }
    t.row(vec!["elapsed".into(), format!("{:.3}s", rec.elapsed)]);
    if let Some(f) = rec.turan_finding() {
        t.row(vec!["turan_finding".into(), serde_json::to_value(f).unwrap().as_str().unwrap().into()]);
    }
    t.render()
}

pub fn extremal(args: &ExtremalArgs, out: &Out) -> Result<ExitCode> {
    let opts = options(args.n, args.force);
    alphaspec::enumerate::check_cap(args.n, opts)?;
    let spec = args
        .family
        .as_deref()
        .ok_or_else(|| anyhow!(Error::InvalidParameters("a forbidden family (-F) is required".into())))?;
    let fam = family(spec)?;
    let rec = if args.edges {
        turan_number(args.n, &fam, opts)?
    } else {
        let a = alpha(args.alpha)?;
        match args.min_degree_frac {
            Some(eps) => {
                let d = g_prime_min_degree(fam.turan_density()?, eps, args.n);
                if d > args.n - 1 {
                    bail!(Error::NoCandidates);
                }
                let filter = EnumFilter::none().with_min_degree(d);
                spectral_extremal(args.n, a, &fam, Some(&filter), opts)?
            }
            None => spectral_extremal(args.n, a, &fam, None, opts)?,
        }
    };
    debug_assert!(rec.problem == Problem::Edges || rec.alpha.is_some());
    let text = match out.format_or(Format::Json) {
        Format::Json => json(&rec)?,
        Format::Csv => rec.to_csv()?,
        Format::Table => record_table(&rec),
    };
    out.write(&text)?;
    Ok(ExitCode::SUCCESS)
}

fn slack_text(v: f64) -> String {
    if v.is_nan() {
        "-".into()
    } else {
        sig12(v)
    }
}

fn report_line(r: &CheckReport) -> Vec<String> {
    let subject = r.subject.key.as_ref().map(|k| k.to_string()).unwrap_or_default();
    let mut params: Vec<String> = r.subject.params.iter().map(|(k, v)| format!("{k}={}", sig12(*v))).collect();
    if let Some(a) = r.subject.alpha {
        params.insert(0, format!("alpha={}", sig12(a.value())));
    }
    vec![
        r.check_id.clone(),
        subject,
        params.join(" "),
        slack_text(r.lhs),
        slack_text(r.rhs),
        slack_text(r.slack),
        r.note.clone().unwrap_or_default(),
    ]
}

fn report_table(reports: &[CheckReport]) -> String {
    let mut t = Table::new(["check", "graph", "params", "lhs", "rhs", "slack", "note"]);
    reports.iter().for_each(|r| t.row(report_line(r)));
    t.render()
}

pub fn verify(args: &VerifyArgs, out: &Out) -> Result<ExitCode> {
    if args.list_checks {
        let mut t = Table::new(["check", "observe_only", "description"]);
        for c in verify::registry() {
            t.row(vec![c.id().into(), c.observe_only().to_string(), c.description().into()]);
        }
        out.write(&t.render())?;
        return Ok(ExitCode::SUCCESS);
    }
    let checks = match &args.checks {
        Some(names) => verify::select_checks(names)?,
        None => verify::registry(),
    };
    let ctx = BatteryContext::new(args.n_max, &args.alphas, &args.r, options(args.n_max, args.force))?;
    let report = verify::run_checks(&ctx, &checks)?;
    let text = match out.format_or(Format::Table) {
        Format::Json => json(&report)?,
        Format::Csv => write_csv(
            &["check", "observe_only", "total", "passed", "failed", "skipped", "equalities_observed", "min_slack"],
            report.checks.iter().map(|c| {
                let min = c.min_slack.values().copied().fold(f64::INFINITY, f64::min);
                vec![
                    c.check_id.clone(),
                    c.observe_only.to_string(),
                    c.total.to_string(),
                    c.passed.to_string(),
                    c.failed.to_string(),
                    c.skipped.to_string(),
                    c.equalities_observed.to_string(),
                    if min.is_finite() { sig12(min) } else { "-".into() },
                ]
            }),
        )?,
        Format::Table => {
            let mut t = Table::new(["check", "kind", "total", "pass", "fail", "skip", "equal", "min slack"]);
            for c in &report.checks {
                let kind = if c.observe_only { "observe" } else { "assert" };
                t.row(vec![
                    c.check_id.clone(),
                    kind.into(),
                    c.total.to_string(),
                    c.passed.to_string(),
                    c.failed.to_string(),
                    c.skipped.to_string(),
                    c.equalities_observed.to_string(),
                    c.min_slack.iter().map(|(k, v)| format!("{k}={}", sig12(*v))).collect::<Vec<_>>().join(" "),
                ]);
            }
            let mut s = format!(
                "battery: n <= {}, {} classes, alphas {:?}, r {:?}\n\n",
                report.n_max,
                report.classes,
                report.alphas.iter().map(|a| a.value()).collect::<Vec<_>>(),
                report.r_set
            );
            s += &t.render();
            for (title, list) in [
                ("failures", &report.failures),
                ("findings (observational)", &report.findings),
                ("flagged", &report.flagged),
            ] {
                if !list.is_empty() {
                    s += &format!("\n{title}:\n{}", report_table(list));
                }
            }
            s += &format!(
                "\n{}: {} hard failure(s)\n",
                if report.passed() { "PASS" } else { "FAIL" },
                report.hard_failures
            );
            s
        }
    };
    out.write(&text)?;
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

pub fn sequence(args: &SequenceArgs, out: &Out) -> Result<ExitCode> {
    let (lo, hi) = parse_range(&args.range)?;
    let seq = pi_sequence(&family(&args.family)?, alpha(args.alpha)?, lo, hi, options(hi, args.force))?;
    let text = match out.format_or(Format::Csv) {
        Format::Json => json(&seq)?,
        Format::Csv => seq.to_csv()?,
        Format::Table => {
            let mut t = Table::new(alphaspec::extremal::SequenceDiagnostic::CSV_HEADER);
            seq.text_rows().into_iter().for_each(|r| t.row(r));
            let verdict = |b: Option<bool>| b.map(|b| b.to_string()).unwrap_or_else(|| "n/a".into());
            format!(
                "{}\nratio_n_minus_1 non-increasing: {}\nhypothesis at every n: {}\n",
                t.render(),
                seq.ratio_non_increasing,
                verdict(seq.hypothesis_all)
            )
        }
    };
    out.write(&text)?;
    Ok(ExitCode::SUCCESS)
}

pub fn growth(args: &GrowthArgs, out: &Out) -> Result<ExitCode> {
    let (lo, hi) = parse_range(&args.range)?;
    let params = GrowthParams { alpha: alpha(args.alpha)?, sigma: args.sigma, epsilon: args.epsilon };
    let rep = growth_condition_check(&family(&args.family)?, params, lo, hi, options(hi, args.force))?;
    let text = match out.format_or(Format::Csv) {
        Format::Json => json(&rep)?,
        Format::Csv => rep.to_csv()?,
        Format::Table => {
            let mut t = Table::new(alphaspec::extremal::GrowthReport::CSV_HEADER);
            rep.text_rows().into_iter().for_each(|r| t.row(r));
            format!("observational report, pi(F) = {}\n{}", sig12(rep.pi), t.render())
        }
    };
    out.write(&text)?;
    Ok(ExitCode::SUCCESS)
}

pub fn stability(args: &StabilityArgs, out: &Out) -> Result<ExitCode> {
    let (lo, hi) = parse_range(&args.range)?;
    let fam = family(&args.family)?;
    let opts = options(hi, args.force);
    let mut reports = Vec::new();
    for n in lo.max(1)..=hi {
        reports.extend(verify::check_degree_stability(n, &fam, opts)?);
    }
    let text = match out.format_or(Format::Table) {
        Format::Json => json(&reports)?,
        Format::Csv => write_csv(
            &["n", "graph6", "min_degree", "chi", "r", "r_partite"],
            reports.iter().map(stability_cells),
        )?,
        Format::Table => {
            let mut t = Table::new(["n", "graph6", "min_degree", "chi", "r", "r_partite"]);
            reports.iter().for_each(|r| t.row(stability_cells(r)));
            let off = reports.iter().filter(|r| r.verdict == Verdict::Fail).count();
            format!("{}\nobservational: {} of {} not r-partite\n", t.render(), off, reports.len())
        }
    };
    out.write(&text)?;
    Ok(ExitCode::SUCCESS)
}

fn stability_cells(r: &CheckReport) -> Vec<String> {
    let p = |k: &str| r.subject.params.get(k).copied().unwrap_or(f64::NAN);
    vec![
        sig12(p("n")),
        r.subject.key.as_ref().map(|k| k.to_string()).unwrap_or_default(),
        sig12(p("min_degree")),
        sig12(r.lhs),
        sig12(r.rhs),
        (r.verdict == Verdict::Pass).to_string(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("4..8").unwrap(), (4, 8));
        assert_eq!(parse_range("4..=8").unwrap(), (4, 8));
        assert_eq!(parse_range("6").unwrap(), (6, 6));
        assert!(parse_range("8..4").is_err());
        assert!(parse_range("a..4").is_err());
    }
}
