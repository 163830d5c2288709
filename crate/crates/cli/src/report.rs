use std::collections::BTreeMap;
use std::fmt::Write;
use std::time::Instant;

use endsum_core::invariants::{distinguish, self_csi_census, summarize, InvariantSummary, Verdict};
use endsum_core::ladder::Space;
use endsum_core::oracle::{oracle_check, OracleReport};
use serde::Serialize;

use crate::elaborate::{Job, NamedSpace, Scenario, Task, MAX_DEPTH};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Structured,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub format: Format,
    /// Oracle truncation depth when a directive gives none.
    pub depth: usize,
    /// Record wall-clock time per directive. Off by default so that
    /// structured output is reproducible byte for byte.
    pub timing: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            format: Format::Human,
            depth: 8,
            timing: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub directive: String,
    pub kind: &'static str,
    pub line: usize,
    pub status: Status,
    pub result: Outcome,
    pub timing: Option<Timing>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Failed,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Outcome {
    Invariants(InvariantsResult),
    Distinguish(Box<DistinguishResult>),
    Census(CensusResult),
    Oracle(OracleResult),
    Error { error: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct SpaceView {
    pub name: String,
    pub graph: String,
    pub caps: Vec<Vec<String>>,
}

impl SpaceView {
    fn new(s: &NamedSpace) -> Self {
        SpaceView {
            name: s.name.clone(),
            graph: s.space.to_string(),
            caps: s.space.nodes().iter().map(|n| n.caps.clone()).collect(),
        }
    }
}

/// Invariant summary with modules written in their display form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummaryView {
    pub n: usize,
    pub degree1_finite: String,
    pub degree1_uncountable: bool,
    pub middle: BTreeMap<usize, String>,
    pub top_uncountable: bool,
    pub gamma: BTreeMap<u64, usize>,
}

impl From<&InvariantSummary> for SummaryView {
    fn from(s: &InvariantSummary) -> Self {
        SummaryView {
            n: s.n,
            degree1_finite: s.degree1.finite.to_string(),
            degree1_uncountable: s.degree1.uncountable,
            middle: s.middle.iter().map(|(k, m)| (*k, m.to_string())).collect(),
            top_uncountable: s.top_uncountable,
            gamma: s.gamma.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantsResult {
    pub space: SpaceView,
    pub summary: SummaryView,
}

#[derive(Clone, Debug, Serialize)]
pub struct DistinguishResult {
    pub left: SpaceView,
    pub right: SpaceView,
    pub left_summary: SummaryView,
    pub right_summary: SummaryView,
    pub distinguished: bool,
    pub witnesses: Vec<String>,
    pub verdict: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeView {
    pub index: usize,
    pub label: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusRowView {
    pub first: NodeView,
    pub second: NodeView,
    pub gamma: BTreeMap<u64, usize>,
    pub class: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusResult {
    pub space: SpaceView,
    pub primes: Vec<u64>,
    pub rows: Vec<CensusRowView>,
    pub distinct: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeCheck {
    pub degree: usize,
    pub closed_form: usize,
    pub oracle: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleResult {
    pub space: SpaceView,
    pub prime: u64,
    pub requested_depth: usize,
    /// Depth of the reported comparison.
    pub depth: usize,
    pub stabilized: bool,
    /// First depth in the schedule 4, 8, 16, ... at which the truncation
    /// was stable and agreed with the closed form.
    pub stabilized_at: Option<usize>,
    pub agrees: bool,
    pub surjective: bool,
    pub degrees: Vec<DegreeCheck>,
    pub gamma_closed_form: usize,
    pub gamma_oracle: usize,
}

pub fn run(scenario: &Scenario, opts: &Options) -> Vec<Record> {
    scenario.jobs.iter().map(|job| run_job(job, opts)).collect()
}

fn run_job(job: &Job, opts: &Options) -> Record {
    let start = Instant::now();
    let result = execute(&job.task, opts);
    let elapsed = start.elapsed();
    let (status, result) = match result {
        Ok(outcome) => {
            let failed = matches!(&outcome, Outcome::Oracle(o) if !(o.agrees && o.stabilized && o.surjective));
            (if failed { Status::Failed } else { Status::Ok }, outcome)
        }
        Err(e) => (Status::Failed, Outcome::Error { error: e.to_string() }),
    };
    Record {
        directive: job.echo.clone(),
        kind: job.task.kind(),
        line: job.line,
        status,
        result,
        timing: opts.timing.then_some(Timing {
            elapsed_ms: elapsed.as_secs_f64() * 1000.0,
        }),
    }
}

fn execute(task: &Task, opts: &Options) -> endsum_core::Result<Outcome> {
    Ok(match task {
        Task::Invariants { space, primes } => Outcome::Invariants(InvariantsResult {
            space: SpaceView::new(space),
            summary: SummaryView::from(&summarize(&space.space, primes)?),
        }),
        Task::Distinguish { left, right, primes } => {
            let a = summarize(&left.space, primes)?;
            let b = summarize(&right.space, primes)?;
            let verdict = distinguish(&a, &b)?;
            Outcome::Distinguish(Box::new(DistinguishResult {
                left: SpaceView::new(left),
                right: SpaceView::new(right),
                left_summary: SummaryView::from(&a),
                right_summary: SummaryView::from(&b),
                distinguished: verdict.is_distinguished(),
                witnesses: verdict.witnesses().iter().map(ToString::to_string).collect(),
                verdict: verdict_word(&verdict).into(),
            }))
        }
        Task::Census { space, primes } => {
            let census = self_csi_census(&space.space, primes)?;
            let node = |i: usize| NodeView {
                index: i,
                label: space.space.nodes()[i].manifold.to_string(),
            };
            Outcome::Census(CensusResult {
                space: SpaceView::new(space),
                primes: primes.clone(),
                rows: census
                    .rows
                    .iter()
                    .map(|r| CensusRowView {
                        first: node(r.first),
                        second: node(r.second),
                        gamma: r.summary.gamma.clone(),
                        class: r.class,
                    })
                    .collect(),
                distinct: census.distinct,
            })
        }
        Task::OracleCheck { space, prime, depth } => {
            let requested = depth.unwrap_or(opts.depth).clamp(1, MAX_DEPTH);
            let (depth, report) = oracle_until_stable(&space.space, *prime, requested)?;
            let stabilized_at = if report.stabilized && report.agrees() {
                first_stable_depth(&space.space, *prime, depth)?
            } else {
                None
            };
            Outcome::Oracle(OracleResult {
                space: SpaceView::new(space),
                prime: prime.get(),
                requested_depth: requested,
                depth,
                stabilized: report.stabilized,
                stabilized_at,
                agrees: report.agrees(),
                surjective: report.surjective,
                degrees: report
                    .degrees
                    .iter()
                    .map(|&(degree, closed_form, oracle)| DegreeCheck {
                        degree,
                        closed_form,
                        oracle,
                    })
                    .collect(),
                gamma_closed_form: report.gamma_closed_form,
                gamma_oracle: report.gamma_oracle,
            })
        }
    })
}

/// Runs the oracle at `depth`, doubling up to [`MAX_DEPTH`] until the
/// truncated limit stabilizes.
fn oracle_until_stable(
    s: &Space,
    p: endsum_core::algebra::Prime,
    mut depth: usize,
) -> endsum_core::Result<(usize, OracleReport)> {
    loop {
        let report = oracle_check(s, p, depth)?;
        if report.stabilized || depth >= MAX_DEPTH {
            return Ok((depth, report));
        }
        depth = (depth * 2).min(MAX_DEPTH);
    }
}

fn first_stable_depth(
    s: &Space,
    p: endsum_core::algebra::Prime,
    limit: usize,
) -> endsum_core::Result<Option<usize>> {
    let mut depth = limit.min(4);
    while depth < limit {
        let report = oracle_check(s, p, depth)?;
        if report.stabilized && report.agrees() {
            return Ok(Some(depth));
        }
        depth *= 2;
    }
    Ok(Some(limit))
}

fn verdict_word(v: &Verdict) -> &'static str {
    match v {
        Verdict::Distinguished(_) => "DISTINGUISHED",
        Verdict::NotDistinguished => "NOT_DISTINGUISHED",
    }
}

pub fn render(records: &[Record], format: Format) -> String {
    match format {
        Format::Structured => render_structured(records),
        Format::Human => render_human(records),
    }
}

/// One JSON object per line, in directive order.
pub fn render_structured(records: &[Record]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("records serialize"));
        out.push('\n');
    }
    out
}

pub fn render_human(records: &[Record]) -> String {
    let mut out = String::new();
    for (i, r) in records.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        writeln!(out, "{}", r.directive).unwrap();
        match &r.result {
            Outcome::Invariants(x) => {
                space_line(&mut out, &x.space);
                summary_lines(&mut out, &x.summary);
            }
            Outcome::Distinguish(x) => {
                space_line(&mut out, &x.left);
                space_line(&mut out, &x.right);
                for (p, g) in &x.left_summary.gamma {
                    if let Some(h) = x.right_summary.gamma.get(p) {
                        writeln!(out, "  gamma[{p}]: {g} vs {h}").unwrap();
                    }
                }
                let verdict = if x.distinguished {
                    format!("DISTINGUISHED by {}", x.witnesses.join(", "))
                } else {
                    "not distinguished by computed invariants".to_string()
                };
                writeln!(out, "  {verdict}").unwrap();
            }
            Outcome::Census(x) => {
                space_line(&mut out, &x.space);
                let mut header = vec!["first".to_string(), "second".to_string()];
                header.extend(x.primes.iter().map(|p| format!("gamma[{p}]")));
                header.push("class".into());
                let mut rows = vec![header];
                for row in &x.rows {
                    let mut cells = vec![
                        format!("#{} {}", row.first.index, row.first.label),
                        format!("#{} {}", row.second.index, row.second.label),
                    ];
                    cells.extend(x.primes.iter().map(|p| row.gamma[p].to_string()));
                    cells.push(row.class.to_string());
                    rows.push(cells);
                }
                table(&mut out, &rows);
                writeln!(out, "  distinct: {}", x.distinct).unwrap();
            }
            Outcome::Oracle(x) => {
                space_line(&mut out, &x.space);
                let mut rows = vec![vec!["degree".to_string(), "closed-form".into(), "oracle".into()]];
                for d in &x.degrees {
                    rows.push(vec![d.degree.to_string(), d.closed_form.to_string(), d.oracle.to_string()]);
                }
                rows.push(vec!["gamma".into(), x.gamma_closed_form.to_string(), x.gamma_oracle.to_string()]);
                table(&mut out, &rows);
                let agreement = if x.agrees { "closed-form and oracle agree" } else { "closed-form and oracle DISAGREE" };
                let stability = if let Some(d) = x.stabilized_at {
                    format!("stabilized at depth {d}")
                } else if x.stabilized {
                    format!("stabilized at depth {}", x.depth)
                } else {
                    format!("NOT stabilized by depth {}", x.depth)
                };
                writeln!(out, "  {agreement}; {stability}").unwrap();
                if !x.surjective {
                    writeln!(out, "  a transition map is not surjective").unwrap();
                }
            }
            Outcome::Error { error } => writeln!(out, "  error: {error}").unwrap(),
        }
    }
    out
}

fn space_line(out: &mut String, s: &SpaceView) {
    writeln!(out, "  {}: {}", s.name, s.graph).unwrap();
}

fn summary_lines(out: &mut String, s: &SummaryView) {
    let yes = |b: bool| if b { "yes" } else { "no" };
    writeln!(out, "  H^1 finite part: {}", s.degree1_finite).unwrap();
    writeln!(out, "  H^1 uncountable summand: {}", yes(s.degree1_uncountable)).unwrap();
    for (k, m) in &s.middle {
        writeln!(out, "  H^{k}: {m}").unwrap();
    }
    writeln!(out, "  H^{} uncountable summand: {}", s.n, yes(s.top_uncountable)).unwrap();
    for (p, g) in &s.gamma {
        writeln!(out, "  gamma[{p}]: {g}").unwrap();
    }
}

fn table(out: &mut String, rows: &[Vec<String>]) {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    for row in rows {
        let mut line = String::from(" ");
        for (c, cell) in row.iter().enumerate() {
            write!(line, " {cell:<w$}", w = widths[c]).unwrap();
        }
        writeln!(out, "{}", line.trim_end()).unwrap();
    }
}
