//! Per-group aggregation of `results.csv` for bound-versus-measured plots.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, Context};
use serde::Deserialize;

use qrmix_core::sum::CompensatedSum;

use crate::fmt_float;

pub const PLOT_HEADER: [&str; 7] = ["group", "order", "D", "bound", "measured_max", "measured_mean", "experiment"];

#[derive(Debug, Deserialize)]
struct ResultRecord {
    group: String,
    order: usize,
    #[serde(rename = "D")]
    d: String,
    experiment: String,
    bound: Option<f64>,
    measured: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotRow {
    pub group: String,
    pub order: usize,
    /// `None` for the trivial group.
    pub d: Option<u64>,
    pub experiment: String,
    /// Largest bound over the aggregated rows.
    pub bound: f64,
    pub measured_max: f64,
    pub measured_mean: f64,
}

/// Order, `D`, largest bound and measured values of one (group, experiment).
type Bucket = (usize, Option<u64>, f64, Vec<f64>);

/// Aggregates rows with both a bound and a measured value (every experiment
/// except `degrees`) per (group, experiment), sorted by `D`.
pub fn aggregate(results_csv: &str) -> anyhow::Result<Vec<PlotRow>> {
    let mut reader = csv::Reader::from_reader(results_csv.as_bytes());
    let mut groups: BTreeMap<(String, String), Bucket> = BTreeMap::new();
    for (line, rec) in reader.deserialize::<ResultRecord>().enumerate() {
        let rec = rec.with_context(|| format!("results row {}", line + 1))?;
        let (Some(bound), Some(measured)) = (rec.bound, rec.measured) else { continue };
        let d = match rec.d.as_str() {
            "inf" => None,
            s => Some(s.parse().map_err(|_| anyhow!("results row {}: bad D {s:?}", line + 1))?),
        };
        let entry = groups.entry((rec.group, rec.experiment)).or_insert((rec.order, d, f64::NEG_INFINITY, Vec::new()));
        entry.2 = entry.2.max(bound);
        entry.3.push(measured);
    }
    let mut rows: Vec<PlotRow> = groups
        .into_iter()
        .map(|((group, experiment), (order, d, bound, measured))| PlotRow {
            measured_max: measured.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            measured_mean: measured.iter().copied().collect::<CompensatedSum>().value() / measured.len() as f64,
            group,
            order,
            d,
            experiment,
            bound,
        })
        .collect();
    rows.sort_by(|a, b| {
        (a.d.is_none(), a.d, a.order, &a.group, &a.experiment).cmp(&(b.d.is_none(), b.d, b.order, &b.group, &b.experiment))
    });
    Ok(rows)
}

pub fn to_csv(rows: &[PlotRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(PLOT_HEADER).expect("in-memory write");
    for r in rows {
        w.write_record([
            r.group.clone(),
            r.order.to_string(),
            crate::experiments::opt_degree(r.d),
            fmt_float(r.bound),
            fmt_float(r.measured_max),
            fmt_float(r.measured_mean),
            r.experiment.clone(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

/// Reads `results.csv` and returns the plot CSV.
pub fn emit_plot_data(results: &Path) -> anyhow::Result<String> {
    let text = std::fs::read_to_string(results).with_context(|| format!("cannot read {}", results.display()))?;
    Ok(to_csv(&aggregate(&text)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ExperimentConfig;
    use crate::sweep::run_sweep;

    #[test]
    fn empty_results_give_header_only() {
        let empty = crate::experiments::to_csv::<crate::sweep::SweepRow>(&[]);
        let out = to_csv(&aggregate(&empty).unwrap());
        assert_eq!(out, "group,order,D,bound,measured_max,measured_mean,experiment\n");
    }

    #[test]
    fn single_trial_has_max_equal_mean() {
        let c = ExperimentConfig::from_json(r#"{"groups":["symmetric:3"],"experiments":["recurrence"],"trials":1}"#).unwrap();
        let rows = aggregate(&run_sweep(&c, 0).results_csv()).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].measured_max, rows[0].measured_mean);
    }

    #[test]
    fn rows_sorted_by_degree() {
        let c = ExperimentConfig::from_json(
            r#"{"groups":["psl2:5","cyclic:4","symmetric:3"],"experiments":["degrees","mixing"],"trials":2}"#,
        )
        .unwrap();
        let rows = aggregate(&run_sweep(&c, 0).results_csv()).unwrap();
        let ds: Vec<_> = rows.iter().map(|r| (r.group.as_str(), r.d)).collect();
        assert_eq!(ds, [("cyclic:4", Some(1)), ("symmetric:3", Some(1)), ("psl2:5", Some(3))]);
        assert!(rows.iter().all(|r| r.measured_max <= r.bound + 1e-9));
    }

    #[test]
    fn malformed_input_is_an_error() {
        assert!(aggregate("group,order\nx,notanumber\n").is_err());
        assert!(emit_plot_data(Path::new("/nonexistent/results.csv")).is_err());
    }
}
