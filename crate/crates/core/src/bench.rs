//! Eigendrop-vs-k records and their CSV form.

use std::io::Write;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::selection::{select, Method, SelectOptions};
use crate::spectral::{lambda1, EigendropReport};

/// First line of every CSV this crate writes.
pub const SCHEMA_LINE: &str = "# schema=1";

pub const BENCH_COLUMNS: [&str; 9] = [
    "dataset",
    "method",
    "k",
    "lambda_before",
    "lambda_after",
    "eigendrop_pct",
    "wall_ms",
    "picks",
    "status",
];

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub dataset: String,
    pub method: Method,
    pub k: usize,
    pub lambda_before: Option<f64>,
    pub lambda_after: Option<f64>,
    pub eigendrop_pct: Option<f64>,
    pub wall_ms: f64,
    /// External labels of the picks, in pick order.
    pub picks: Vec<String>,
    /// `ok`, or the error that stopped this cell.
    pub status: String,
}

/// Runs one selection and measures its eigendrop.
///
/// `lambda_before` is passed in so sweeps compute it once per graph.
pub fn run_cell(
    g: &Graph,
    dataset: &str,
    method: Method,
    k: usize,
    opts: &SelectOptions,
    lambda_before: f64,
) -> Result<BenchRecord> {
    let sel = select(g, method, k, opts)?;
    let residual = g.remove_vertices(&sel.as_set())?;
    let after = lambda1(&residual, opts.power)?.lambda1;
    let report = EigendropReport::new(lambda_before, after);
    Ok(BenchRecord {
        dataset: dataset.to_owned(),
        method,
        k,
        lambda_before: Some(report.lambda_before),
        lambda_after: Some(report.lambda_after),
        eigendrop_pct: Some(report.drop_pct),
        wall_ms: sel.wall_time.as_secs_f64() * 1e3,
        picks: sel.picks.iter().map(|&v| g.label(v).to_owned()).collect(),
        status: "ok".into(),
    })
}

impl BenchRecord {
    /// Row for a cell that failed; numeric columns stay empty.
    pub fn failed(dataset: &str, method: Method, k: usize, err: &Error) -> Self {
        BenchRecord {
            dataset: dataset.to_owned(),
            method,
            k,
            lambda_before: None,
            lambda_after: None,
            eigendrop_pct: None,
            wall_ms: 0.0,
            picks: Vec::new(),
            status: err.to_string(),
        }
    }

    fn fields(&self, timing: bool) -> [String; 9] {
        let num = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
        [
            self.dataset.clone(),
            self.method.to_string(),
            self.k.to_string(),
            num(self.lambda_before),
            num(self.lambda_after),
            num(self.eigendrop_pct),
            if timing && self.status == "ok" {
                format!("{:.3}", self.wall_ms)
            } else {
                "NA".into()
            },
            self.picks.join(";"),
            self.status.clone(),
        ]
    }
}

/// Writes the schema line, any `# key=value` metadata, the header and rows.
///
/// Wall times are replaced by `NA` unless `timing` is set, which keeps
/// output byte-identical across repeated runs.
pub fn write_bench_csv<W: Write>(
    mut out: W,
    metadata: &[(String, String)],
    records: &[BenchRecord],
    timing: bool,
) -> Result<()> {
    writeln!(out, "{SCHEMA_LINE}")?;
    for (k, v) in metadata {
        writeln!(out, "# {k}={v}")?;
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(BENCH_COLUMNS).map_err(csv_err)?;
    for r in records {
        w.write_record(r.fields(timing)).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub(crate) fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Argument(format!("csv: {other:?}")),
    }
}
