//! Tabular report emission: CSV with trailing '#' comment lines, or a JSON
//! mirror `{columns, data, comments}`. Floats are printed in shortest
//! round-trip form with a decimal marker, so `parse_csv(emit_csv(r)) == r`.

use serde_json::{json, Value as Json};

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    F64(f64),
    Int(i64),
    Bool(bool),
    Str(String),
}

impl Value {
    fn to_csv(&self) -> String {
        match self {
            // {:?} keeps a ".0" on integral floats, marking the type
            Value::F64(v) => format!("{v:?}"),
            Value::Int(v) => format!("{v}"),
            Value::Bool(v) => format!("{v}"),
            Value::Str(s) => {
                debug_assert!(!s.contains(',') && !s.contains('\n'));
                s.clone()
            }
        }
    }

    fn to_json(&self) -> Json {
        match self {
            Value::F64(v) => json!(v),
            Value::Int(v) => json!(v),
            Value::Bool(v) => json!(v),
            Value::Str(s) => json!(s),
        }
    }

    fn parse(field: &str) -> Value {
        if field == "true" {
            return Value::Bool(true);
        }
        if field == "false" {
            return Value::Bool(false);
        }
        if let Ok(i) = field.parse::<i64>() {
            return Value::Int(i);
        }
        if field
            .bytes()
            .all(|b| b.is_ascii_digit() || b"+-.eE".contains(&b))
        {
            if let Ok(f) = field.parse::<f64>() {
                return Value::F64(f);
            }
        }
        Value::Str(field.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Report {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    pub comments: Vec<String>,
}

impl Report {
    pub fn new(columns: &[&str]) -> Self {
        Report {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            comments: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn comment(&mut self, text: impl Into<String>) {
        self.comments.push(text.into());
    }

    pub fn emit_csv(&self) -> String {
        let mut out = String::new();
        if !self.columns.is_empty() {
            out.push_str(&self.columns.join(","));
            out.push('\n');
        }
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Value::to_csv).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        for c in &self.comments {
            out.push_str("# ");
            out.push_str(c);
            out.push('\n');
        }
        out
    }

    pub fn emit_json(&self) -> String {
        let data: Vec<Json> = self
            .rows
            .iter()
            .map(|r| Json::Array(r.iter().map(Value::to_json).collect()))
            .collect();
        let v = json!({
            "columns": self.columns,
            "data": data,
            "comments": self.comments,
        });
        let mut s = serde_json::to_string_pretty(&v).expect("static structure");
        s.push('\n');
        s
    }

    /// Inverse of [`emit_csv`] over the value space this crate emits.
    pub fn parse_csv(text: &str) -> Report {
        let mut report = Report::default();
        for (i, line) in text.lines().enumerate() {
            if let Some(c) = line.strip_prefix("# ") {
                report.comments.push(c.to_string());
                continue;
            }
            if line.is_empty() {
                continue;
            }
            if i == 0 {
                report.columns = line.split(',').map(|s| s.to_string()).collect();
            } else {
                report
                    .rows
                    .push(line.split(',').map(Value::parse).collect());
            }
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let mut r = Report::new(&["a", "b", "c", "d"]);
        r.push_row(vec![
            Value::F64(1.0),
            Value::Int(-3),
            Value::Bool(true),
            Value::Str("x".into()),
        ]);
        r.push_row(vec![
            Value::F64(1.5e-7),
            Value::Int(0),
            Value::Bool(false),
            Value::Str("DISK-CONSISTENT".into()),
        ]);
        r.comment("verdict = something");
        let text = r.emit_csv();
        assert_eq!(Report::parse_csv(&text), r);
    }

    #[test]
    fn floats_keep_their_type_marker() {
        let mut r = Report::new(&["v"]);
        r.push_row(vec![Value::F64(42.0)]);
        let text = r.emit_csv();
        assert!(text.contains("42.0"), "{text}");
        assert_eq!(Report::parse_csv(&text), r);
    }

    #[test]
    fn json_shape() {
        let mut r = Report::new(&["x"]);
        r.push_row(vec![Value::F64(0.5)]);
        r.comment("note");
        let j: serde_json::Value = serde_json::from_str(&r.emit_json()).unwrap();
        assert_eq!(j["columns"][0], "x");
        assert_eq!(j["data"][0][0], 0.5);
        assert_eq!(j["comments"][0], "note");
    }
}
