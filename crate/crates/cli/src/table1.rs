use graphent::bounds::{entanglement_report, BoundsReport, ReportOptions};
use graphent::capacity::achievable_rate;
use graphent::{build_family, Family};
use serde_json::{json, Value};

use crate::output::Output;

/// Expected `(E_low, E_high)` from the closed forms.
fn expected(f: &Family) -> (usize, usize) {
    match *f {
        Family::Cluster1d { n } => (n / 2, n / 2),
        Family::Cluster2d { rows, cols } => (rows * cols / 2, rows * cols / 2),
        Family::Cluster3d { rows, cols, layers } => (rows * cols * layers / 2, rows * cols * layers / 2),
        Family::Ring { n } => (n / 2, n - n / 2),
        Family::GhzStar { .. } | Family::GhzComplete { .. } => (1, 1),
        Family::Steane7 => (3, 3),
        Family::EdgeList { .. } => unreachable!("not a table family"),
    }
}

pub fn families() -> Vec<Family> {
    let mut out: Vec<Family> = (4..=10).map(|n| Family::Cluster1d { n }).collect();
    for (rows, cols) in [(2, 2), (2, 3), (3, 3), (3, 4), (4, 4)] {
        out.push(Family::Cluster2d { rows, cols });
    }
    out.push(Family::Cluster3d { rows: 2, cols: 2, layers: 2 });
    out.extend((3..=8).map(|n| Family::GhzStar { n }));
    out.extend((4..=8).map(|n| Family::Ring { n }));
    out.push(Family::Steane7);
    out
}

pub struct Row {
    pub label: String,
    pub report: BoundsReport,
    pub expected: (usize, usize),
}

impl Row {
    pub fn matches(&self) -> bool {
        self.report.interval() == self.expected
    }
}

pub fn compute(options: &ReportOptions) -> Vec<Row> {
    families()
        .into_iter()
        .map(|f| {
            let g = build_family(&f).expect("table family builds");
            Row { label: f.label(), report: entanglement_report(&g, options), expected: expected(&f) }
        })
        .collect()
}

fn row_json(row: &Row) -> Value {
    let r = &row.report;
    json!({
        "graph": row.label,
        "n": r.n,
        "lower_N": format!("2^{}", r.lower_log_n),
        "upper_N": format!("2^{}", r.upper_log_n),
        "E_low": r.e_low,
        "E_high": r.e_high,
        "E": r.value(),
        "C": r.exact.then(|| r.n - r.e_low),
        "C_achievable": achievable_rate(r),
        "C_bound": r.n - r.e_low,
        "expected": format!("[{}, {}]", row.expected.0, row.expected.1),
        "match": row.matches(),
    })
}

pub fn output(rows: &[Row]) -> Output {
    let records: Vec<Value> = rows.iter().map(row_json).collect();
    let columns = match &records[0] {
        Value::Object(m) => m.keys().cloned().collect(),
        _ => unreachable!(),
    };
    let table = records
        .iter()
        .map(|r| match r {
            Value::Object(m) => m.values().cloned().collect(),
            _ => unreachable!(),
        })
        .collect();
    let mismatches: Vec<String> = rows
        .iter()
        .filter(|r| !r.matches())
        .map(|r| format!("{}: got {:?}, expected {:?}", r.label, r.report.interval(), r.expected))
        .collect();
    let tail = (!mismatches.is_empty()).then(|| format!("mismatches:\n{}\n", mismatches.join("\n")));
    Output { json: Value::Array(records), columns, rows: table, text_tail: tail }
}
