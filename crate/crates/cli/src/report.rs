//! Deterministic JSON and CSV report documents.

use hklab_core::estimator::{CheckStatus, HKEstimate, HKSampleSequence};
use hklab_core::rational::{decimal_string, exact_string};
use num_rational::BigRational;
use serde_json::{Map, Value};

pub const DECIMAL_PLACES: u32 = 12;

/// A JSON object that remembers whether any flag written into it failed.
/// Keys serialize in sorted order, so equal inputs give byte-identical output.
#[derive(Debug, Clone, Default)]
pub struct Obj {
    map: Map<String, Value>,
    failed: bool,
}

impl Obj {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.map.insert(key.to_string(), value.into());
        self
    }

    /// Writes `key` as "num/den" and `key_decimal` rounded to 12 places.
    pub fn rational(&mut self, key: &str, r: &BigRational) -> &mut Self {
        self.set(key, exact_string(r));
        self.set(&format!("{key}_decimal"), decimal_string(r, DECIMAL_PLACES))
    }

    pub fn flag(&mut self, key: &str, status: CheckStatus) -> &mut Self {
        self.failed |= status == CheckStatus::Fail;
        self.set(key, status.as_str())
    }

    pub fn child(&mut self, key: &str, obj: Obj) -> &mut Self {
        self.failed |= obj.failed;
        self.set(key, Value::Object(obj.map))
    }

    pub fn list(&mut self, key: &str, rows: Vec<Obj>) -> &mut Self {
        let mut values = Vec::with_capacity(rows.len());
        for r in rows {
            self.failed |= r.failed;
            values.push(Value::Object(r.map));
        }
        self.set(key, Value::Array(values))
    }

    pub fn failed(&self) -> bool {
        self.failed
    }

    pub fn into_value(self) -> Value {
        Value::Object(self.map)
    }

    fn get(&self, key: &str) -> Option<&Value> {
        self.map.get(key)
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub body: Obj,
    /// Name of the list in `body` exported by `--csv`.
    pub table: Option<&'static str>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut body = Obj::new();
        body.set("command", command);
        Report { body, table: None }
    }

    pub fn has_failure(&self) -> bool {
        self.body.failed()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.body.map).expect("JSON values always serialize");
        s.push('\n');
        s
    }

    /// The sample table as CSV, or key,value pairs of scalar fields when the
    /// command has no table.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let rows = self.table.and_then(|t| self.body.get(t)).and_then(Value::as_array);
        match rows {
            Some(rows) => {
                let header: Vec<String> = rows
                    .first()
                    .and_then(Value::as_object)
                    .map(|o| o.keys().cloned().collect())
                    .unwrap_or_default();
                w.write_record(&header).expect("in-memory write");
                for row in rows {
                    let obj = row.as_object();
                    let record: Vec<String> = header
                        .iter()
                        .map(|k| obj.and_then(|o| o.get(k)).map(scalar_text).unwrap_or_default())
                        .collect();
                    w.write_record(&record).expect("in-memory write");
                }
            }
            None => {
                w.write_record(["key", "value"]).expect("in-memory write");
                for (k, v) in &self.body.map {
                    if !v.is_object() && !v.is_array() {
                        w.write_record([k.as_str(), &scalar_text(v)]).expect("in-memory write");
                    }
                }
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV is UTF-8")
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

pub fn sample_rows(samples: &HKSampleSequence) -> Vec<Obj> {
    samples
        .samples
        .iter()
        .map(|s| {
            let mut row = Obj::new();
            row.set("e", s.e).set("q", s.q).set("length", s.length.to_string());
            row.rational("ratio", &s.ratio);
            row
        })
        .collect()
}

pub fn estimate_obj(est: &HKEstimate) -> Obj {
    let mut o = Obj::new();
    o.rational("point", &est.point)
        .rational("last_sample", &est.last_sample)
        .rational("two_point", &est.two_point)
        .set("method", serde_json::to_value(est.method).expect("enum serializes"))
        .set("monotone", est.monotone)
        .set("deltas", est.deltas.iter().map(exact_string).collect::<Vec<_>>());
    o
}

#[cfg(test)]
mod tests {
    use super::*;
    use hklab_core::rational::rat;

    #[test]
    fn rational_fields_and_flags() {
        let mut r = Report::new("demo");
        r.body.rational("ehk", &rat(4, 3)).flag("check", CheckStatus::Pass);
        assert!(!r.has_failure());
        let json = r.to_json();
        assert!(json.contains("\"ehk\": \"4/3\""));
        assert!(json.contains("\"ehk_decimal\": \"1.333333333333\""));
        let mut row = Obj::new();
        row.flag("oracle", CheckStatus::Fail);
        r.body.list("rows", vec![row]);
        assert!(r.has_failure());
    }

    #[test]
    fn keys_are_sorted() {
        let mut r = Report::new("demo");
        r.body.set("zeta", 1).set("alpha", 2);
        let json = r.to_json();
        assert!(json.find("alpha").unwrap() < json.find("command").unwrap());
        assert!(json.find("command").unwrap() < json.find("zeta").unwrap());
    }

    #[test]
    fn csv_table_and_scalars() {
        let mut r = Report::new("demo");
        let mut a = Obj::new();
        a.set("q", 2).set("length", "4");
        let mut b = Obj::new();
        b.set("q", 4).set("length", "16");
        r.body.list("samples", vec![a, b]);
        r.table = Some("samples");
        assert_eq!(r.to_csv(), "length,q\n4,2\n16,4\n");
        let mut s = Report::new("demo");
        s.body.set("value", "6");
        assert_eq!(s.to_csv(), "key,value\ncommand,demo\nvalue,6\n");
    }
}
