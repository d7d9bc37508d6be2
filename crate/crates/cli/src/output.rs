use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A command result: the JSON document plus a flat table for csv/text.
pub struct Output {
    pub json: Value,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    /// Extra lines appended in text mode only.
    pub text_tail: Option<String>,
}

impl Output {
    /// Single-record output whose columns are the object's keys.
    pub fn record(json: Value) -> Self {
        let (columns, row) = match &json {
            Value::Object(map) => map.iter().map(|(k, v)| (k.clone(), v.clone())).unzip(),
            other => (vec!["value".to_string()], vec![other.clone()]),
        };
        Output { json, columns, rows: vec![row], text_tail: None }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json values serialize");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut s = csv_line(self.columns.iter().map(|c| c.to_string()));
                for row in &self.rows {
                    s.push_str(&csv_line(row.iter().map(cell)));
                }
                s
            }
            Format::Text => {
                let mut s = if self.rows.len() == 1 {
                    let width = self.columns.iter().map(|c| c.len()).max().unwrap_or(0);
                    self.columns.iter().zip(&self.rows[0]).map(|(c, v)| format!("{c:<width$}  {}\n", cell(v))).collect()
                } else {
                    table(&self.columns, &self.rows)
                };
                if let Some(tail) = &self.text_tail {
                    s.push_str(tail);
                }
                s
            }
        }
    }
}

fn table(columns: &[String], rows: &[Vec<Value>]) -> String {
    let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(cell).collect()).collect();
    let widths: Vec<usize> = (0..columns.len())
        .map(|i| cells.iter().map(|r| r[i].len()).chain([columns[i].len()]).max().unwrap_or(0))
        .collect();
    let line = |items: &mut dyn Iterator<Item = &str>| {
        let parts: Vec<String> = items.zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
        format!("{}\n", parts.join("  ").trim_end())
    };
    let mut s = line(&mut columns.iter().map(|c| c.as_str()));
    for r in &cells {
        s.push_str(&line(&mut r.iter().map(|c| c.as_str())));
    }
    s
}

fn csv_line(items: impl Iterator<Item = String>) -> String {
    let parts: Vec<String> = items
        .map(|s| if s.contains([',', '"', '\n']) { format!("\"{}\"", s.replace('"', "\"\"")) } else { s })
        .collect();
    format!("{}\n", parts.join(","))
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "null".into(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) if n.is_f64() => sig6(n.as_f64().unwrap_or(f64::NAN)),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(cell).collect();
            format!("[{}]", parts.join(" "))
        }
        Value::Object(_) => v.to_string(),
    }
}

/// Six significant digits, `%g` style.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let s = format!("{x:.5e}");
        let (mantissa, e) = s.split_once('e').expect("exponent present");
        format!("{}e{e}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn six_significant_digits() {
        assert_eq!(sig6(0.188_721_875_540_867), "0.188722");
        assert_eq!(sig6(1.0), "1");
        assert_eq!(sig6(0.5), "0.5");
        assert_eq!(sig6(123_456.7), "123457");
        assert_eq!(sig6(1_234_567.0), "1.23457e6");
        assert_eq!(sig6(-2.5e-7), "-2.5e-7");
    }

    #[test]
    fn record_rendering() {
        let out = Output::record(json!({"a": 1, "b": 0.25, "c": null}));
        assert_eq!(out.render(Format::Csv), "a,b,c\n1,0.25,null\n");
        assert_eq!(out.render(Format::Text), "a  1\nb  0.25\nc  null\n");
    }
}
