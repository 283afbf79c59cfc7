//! Result files: `traces.csv`, `summary.json` and `curves.svg`.
//!
//! Every file is a pure function of the results, so identical inputs give
//! byte-identical output.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::testbed::registry;
use crate::trace::{RunStatus, RunTrace, Sample};

use super::curves::{log_grid, panel_sizes, success_curve, FunctionRuns, SuccessCurve};
use super::{Algorithm, BenchmarkPlan, RunRecord};

pub const TRACES_FILE: &str = "traces.csv";
pub const SUMMARY_FILE: &str = "summary.json";
pub const CURVES_FILE: &str = "curves.svg";

const CSV_HEADER: [&str; 7] = [
    "algo",
    "function",
    "run_id",
    "seed",
    "reads",
    "best_value",
    "error",
];

/// A plan together with one record per (algorithm, function, run).
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkResults {
    pub plan: BenchmarkPlan,
    pub records: Vec<RunRecord>,
}

impl BenchmarkResults {
    /// Solve reads per function for one algorithm, in plan order.
    pub fn groups(&self, algorithm: Algorithm) -> Vec<FunctionRuns> {
        self.plan
            .functions
            .iter()
            .map(|f| {
                let mut runs: Vec<&RunRecord> = self
                    .records
                    .iter()
                    .filter(|r| r.algorithm == algorithm && &r.function == f)
                    .collect();
                runs.sort_by_key(|r| r.run_id);
                FunctionRuns {
                    function: f.clone(),
                    solved_at: runs.iter().map(|r| r.trace.solved_at_reads).collect(),
                }
            })
            .collect()
    }

    /// One curve per algorithm and panel run count.
    pub fn curves(&self) -> Result<Vec<SuccessCurve>, Error> {
        let mut out = Vec::new();
        for &a in &self.plan.algorithms {
            let groups = self.groups(a);
            for t in panel_sizes(self.plan.runs) {
                out.push(success_curve(
                    a.as_str(),
                    &groups,
                    &self.plan.sample_grid,
                    t,
                )?);
            }
        }
        Ok(out)
    }

    /// Rebuilds results from a directory written by [`export_results`].
    /// The plan comes from `summary.json` when present and is otherwise
    /// inferred from the rows (base seed unknown, reported as 0).
    pub fn load(dir: &Path) -> Result<Self, Error> {
        let rows = read_traces_csv(&dir.join(TRACES_FILE))?;
        let summary_path = dir.join(SUMMARY_FILE);
        let plan = if summary_path.exists() {
            let text = fs::read_to_string(&summary_path)?;
            let value: serde_json::Value = serde_json::from_str(&text)?;
            serde_json::from_value(value["plan"].clone())?
        } else {
            infer_plan(&rows)?
        };
        let records = records_from_rows(&rows)?;
        Ok(Self { plan, records })
    }
}

/// One parsed line of `traces.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub algo: String,
    pub function: String,
    pub run_id: usize,
    pub seed: u64,
    pub reads: u64,
    pub best_value: f64,
    pub error: Option<f64>,
}

fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

/// One row per trace sample, in record order.
pub fn write_traces_csv(records: &[RunRecord], path: &Path) -> Result<(), Error> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(CSV_HEADER)?;
    for r in records {
        for s in &r.trace.samples {
            let error = r
                .trace
                .target
                .map(|t| fmt_f64((s.best_value - t).abs()))
                .unwrap_or_default();
            w.write_record([
                r.algorithm.as_str(),
                &r.function,
                &r.run_id.to_string(),
                &r.trace.seed.to_string(),
                &s.reads.to_string(),
                &fmt_f64(s.best_value),
                &error,
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_traces_csv(path: &Path) -> Result<Vec<TraceRow>, Error> {
    let mut rdr = csv::Reader::from_path(path)?;
    let header: Vec<String> = rdr.headers()?.iter().map(String::from).collect();
    if header != CSV_HEADER {
        return Err(Error::IncompleteData(format!(
            "unexpected traces header {header:?}"
        )));
    }
    rdr.deserialize().map(|r| r.map_err(Error::from)).collect()
}

fn infer_plan(rows: &[TraceRow]) -> Result<BenchmarkPlan, Error> {
    let mut algorithms = Vec::new();
    let mut functions: Vec<String> = Vec::new();
    for row in rows {
        let a: Algorithm = row.algo.parse()?;
        if !algorithms.contains(&a) {
            algorithms.push(a);
        }
        if !functions.contains(&row.function) {
            functions.push(row.function.clone());
        }
    }
    let budget = rows.iter().map(|r| r.reads).max().unwrap_or(0);
    let runs = rows.iter().map(|r| r.run_id + 1).max().unwrap_or(0);
    Ok(BenchmarkPlan {
        algorithms,
        functions,
        budget,
        runs,
        base_seed: 0,
        sample_grid: log_grid(budget),
    })
}

/// Reassembles traces from rows. Solve reads are the first sample within
/// the registry tolerance; positions and configs are not stored in the CSV.
fn records_from_rows(rows: &[TraceRow]) -> Result<Vec<RunRecord>, Error> {
    let mut index: HashMap<(String, String, usize), usize> = HashMap::new();
    let mut records: Vec<RunRecord> = Vec::new();
    for row in rows {
        let key = (row.algo.clone(), row.function.clone(), row.run_id);
        let i = match index.get(&key) {
            Some(&i) => i,
            None => {
                let spec = registry().get(&row.function)?;
                records.push(RunRecord {
                    algorithm: row.algo.parse()?,
                    function: row.function.clone(),
                    run_id: row.run_id,
                    trace: RunTrace {
                        algorithm: row.algo.clone(),
                        objective: row.function.clone(),
                        seed: row.seed,
                        samples: Vec::new(),
                        status: RunStatus::BudgetExhausted,
                        solved_at_reads: None,
                        reads_used: 0,
                        best_value: f64::INFINITY,
                        best_position: Vec::new(),
                        target: Some(spec.known_min_value()),
                        config: serde_json::Value::Null,
                    },
                });
                index.insert(key, records.len() - 1);
                records.len() - 1
            }
        };
        let tolerance = registry().get(&row.function)?.tolerance();
        let t = &mut records[i].trace;
        t.samples.push(Sample {
            reads: row.reads,
            best_value: row.best_value,
        });
        t.reads_used = row.reads;
        t.best_value = row.best_value;
        if t.solved_at_reads.is_none() && row.error.is_some_and(|e| e <= tolerance) {
            t.solved_at_reads = Some(row.reads);
            t.status = RunStatus::Solved;
        }
    }
    Ok(records)
}

#[derive(Serialize)]
struct RunSummary<'a> {
    algorithm: &'a str,
    function: &'a str,
    run_id: usize,
    seed: u64,
    status: RunStatus,
    solved_at_reads: Option<u64>,
    reads_used: u64,
    best_value: f64,
}

#[derive(Serialize)]
struct Summary<'a> {
    plan: &'a BenchmarkPlan,
    runs: Vec<RunSummary<'a>>,
    curves: &'a [SuccessCurve],
}

fn summary_json(results: &BenchmarkResults, curves: &[SuccessCurve]) -> Result<String, Error> {
    let runs = results
        .records
        .iter()
        .map(|r| RunSummary {
            algorithm: r.algorithm.as_str(),
            function: &r.function,
            run_id: r.run_id,
            seed: r.trace.seed,
            status: r.trace.status,
            solved_at_reads: r.trace.solved_at_reads,
            reads_used: r.trace.reads_used,
            best_value: r.trace.best_value,
        })
        .collect();
    let summary = Summary {
        plan: &results.plan,
        runs,
        curves,
    };
    let mut text = serde_json::to_string_pretty(&summary)?;
    text.push('\n');
    Ok(text)
}

/// Writes the three result files into `out_dir`, creating it if needed.
pub fn export_results(results: &BenchmarkResults, out_dir: &Path) -> Result<(), Error> {
    fs::create_dir_all(out_dir)?;
    let curves = results.curves()?;
    write_traces_csv(&results.records, &out_dir.join(TRACES_FILE))?;
    fs::write(out_dir.join(SUMMARY_FILE), summary_json(results, &curves)?)?;
    fs::write(
        out_dir.join(CURVES_FILE),
        render_svg(&results.plan, &curves),
    )?;
    Ok(())
}

struct LineStyle {
    color: &'static str,
    width: f64,
    dash: Option<&'static str>,
}

fn line_style(algorithm: &str) -> LineStyle {
    match algorithm {
        "gas" => LineStyle {
            color: "#1b3f8b",
            width: 3.0,
            dash: None,
        },
        "bh" => LineStyle {
            color: "#a33327",
            width: 1.5,
            dash: Some("9,4,2,4"),
        },
        "cs" => LineStyle {
            color: "#2b6e33",
            width: 0.8,
            dash: None,
        },
        "de" => LineStyle {
            color: "#6b2c8f",
            width: 1.5,
            dash: Some("6,4"),
        },
        _ => LineStyle {
            color: "#555555",
            width: 1.0,
            dash: Some("2,2"),
        },
    }
}

const PANEL_W: f64 = 360.0;
const PANEL_H: f64 = 280.0;
const MARGIN_L: f64 = 55.0;
const MARGIN_R: f64 = 15.0;
const MARGIN_T: f64 = 30.0;
const MARGIN_B: f64 = 45.0;
const LEGEND_H: f64 = 30.0;

/// Step plots of success percentage against reads (log axis), one panel
/// per run count, all algorithms overlaid.
pub fn render_svg(plan: &BenchmarkPlan, curves: &[SuccessCurve]) -> String {
    let panels = panel_sizes(plan.runs);
    let width = PANEL_W * panels.len().max(1) as f64;
    let height = PANEL_H + LEGEND_H;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);

    let x_lo = (plan.sample_grid.first().copied().unwrap_or(1).max(1) as f64).log10();
    let x_hi = (plan.budget.max(1) as f64).log10();
    let plot_w = PANEL_W - MARGIN_L - MARGIN_R;
    let plot_h = PANEL_H - MARGIN_T - MARGIN_B;

    for (p, &t) in panels.iter().enumerate() {
        let ox = p as f64 * PANEL_W + MARGIN_L;
        let oy = MARGIN_T;
        let sx = |reads: u64| {
            let lr = (reads.max(1) as f64).log10();
            if x_hi > x_lo {
                ox + (lr - x_lo) / (x_hi - x_lo) * plot_w
            } else {
                ox + plot_w / 2.0
            }
        };
        let sy = |frac: f64| oy + (1.0 - frac) * plot_h;

        let _ = writeln!(s, r#"<g id="panel-t{t}">"#);
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="13">T = {t}</text>"#,
            ox + plot_w / 2.0,
            oy - 10.0
        );
        let _ = writeln!(
            s,
            r##"<rect x="{ox:.2}" y="{oy:.2}" width="{plot_w:.2}" height="{plot_h:.2}" fill="none" stroke="#000"/>"##
        );
        for pct in [0, 25, 50, 75, 100] {
            let y = sy(pct as f64 / 100.0);
            let _ = writeln!(
                s,
                r##"<line x1="{ox:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#ddd"/><text x="{:.2}" y="{:.2}" text-anchor="end">{pct}%</text>"##,
                ox + plot_w,
                ox - 5.0,
                y + 4.0
            );
        }
        let mut decade = x_lo.ceil() as i32;
        while decade as f64 <= x_hi + 1e-9 {
            let x = sx(10u64.saturating_pow(decade.max(0) as u32));
            let _ = writeln!(
                s,
                r##"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="#000"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">10<tspan dy="-5" font-size="8">{decade}</tspan></text>"##,
                oy + plot_h,
                oy + plot_h + 5.0,
                oy + plot_h + 18.0
            );
            decade += 1;
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">function reads</text>"#,
            ox + plot_w / 2.0,
            oy + plot_h + 36.0
        );
        for c in curves.iter().filter(|c| c.runs_t == t) {
            let st = line_style(&c.algorithm);
            let mut d = String::new();
            for (k, &(reads, frac)) in c.points.iter().enumerate() {
                if k == 0 {
                    let _ = write!(d, "M{:.2},{:.2}", sx(reads), sy(frac));
                } else {
                    let _ = write!(d, " H{:.2} V{:.2}", sx(reads), sy(frac));
                }
            }
            let dash = st
                .dash
                .map(|v| format!(r#" stroke-dasharray="{v}""#))
                .unwrap_or_default();
            let _ = writeln!(
                s,
                r#"<path d="{d}" fill="none" stroke="{}" stroke-width="{:.1}"{dash}><title>{} T={t}</title></path>"#,
                st.color, st.width, c.algorithm
            );
        }
        let _ = writeln!(s, "</g>");
    }

    let ly = PANEL_H + LEGEND_H / 2.0;
    for (k, a) in plan.algorithms.iter().enumerate() {
        let st = line_style(a.as_str());
        let x = MARGIN_L + k as f64 * 90.0;
        let dash = st
            .dash
            .map(|v| format!(r#" stroke-dasharray="{v}""#))
            .unwrap_or_default();
        let _ = writeln!(
            s,
            r#"<line x1="{x:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{}" stroke-width="{:.1}"{dash}/><text x="{:.2}" y="{:.2}">{}</text>"#,
            x + 30.0,
            st.color,
            st.width,
            x + 35.0,
            ly + 4.0,
            a.as_str().to_uppercase()
        );
    }
    s.push_str("</svg>\n");
    s
}
