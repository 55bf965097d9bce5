//! Report envelope, rounding-tagged numbers and the json/csv/text renderers.

use gapprin::exact::{Ball, PosReal};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "gapprin-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Decimal rendering of `q` with `digits` significant digits, rounded toward `+∞` if `up`.
pub fn decimal(q: &BigRational, digits: usize, up: bool) -> String {
    if q.is_zero() {
        return "0".into();
    }
    let neg = q.is_negative();
    let a = q.abs();
    let ten = BigRational::from_integer(BigInt::from(10));
    let pow10 = |e: i64| -> BigRational {
        if e >= 0 {
            num_traits::pow(ten.clone(), e as usize)
        } else {
            num_traits::pow(ten.clone(), (-e) as usize).recip()
        }
    };
    let mut e = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    while a < pow10(e) {
        e -= 1;
    }
    while a >= pow10(e + 1) {
        e += 1;
    }
    let m = &a * pow10(digits as i64 - 1 - e);
    let ceil_mag = up != neg;
    let mut n = if ceil_mag { m.ceil().to_integer() } else { m.floor().to_integer() };
    if n == num_traits::pow(BigInt::from(10), digits) {
        n /= 10;
        e += 1;
    }
    let s = n.to_string();
    let (head, tail) = s.split_at(1);
    let tail = tail.trim_end_matches('0');
    let sign = if neg { "-" } else { "" };
    if tail.is_empty() {
        format!("{sign}{head}e{e}")
    } else {
        format!("{sign}{head}.{tail}e{e}")
    }
}

pub fn int(n: &BigInt) -> Value {
    json!({ "value": n.to_string(), "rounding": "exact" })
}

pub fn exact(q: &BigRational) -> Value {
    json!({ "value": q.to_string(), "decimal": decimal(q, 12, true), "rounding": "exact" })
}

pub fn up(q: &BigRational) -> Value {
    json!({ "value": q.to_string(), "decimal": decimal(q, 12, true), "rounding": "up" })
}

pub fn down(q: &BigRational) -> Value {
    json!({ "value": q.to_string(), "decimal": decimal(q, 12, false), "rounding": "down" })
}

pub fn pos_up(x: &PosReal) -> Value {
    json!({ "value": x.sci_up(8), "rounding": "up" })
}

pub fn enclosure(b: &Ball) -> Value {
    json!({
        "lower": decimal(&b.lower_rational(), 15, false),
        "upper": decimal(&b.upper_rational(), 15, true),
        "rounding": "enclosure",
    })
}

pub fn envelope(command: &str, config: Value, result: Value) -> Value {
    json!({ "schema": SCHEMA, "command": command, "config": config, "result": result })
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

/// Rows of scalar cells for CSV output; nested cells are written as JSON.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    /// One row per object, taking the listed keys in order.
    pub fn new(header: &[&str], items: &[Value]) -> Table {
        let rows = items
            .iter()
            .map(|it| {
                let m = it.as_object().cloned().unwrap_or_else(Map::new);
                header.iter().map(|h| cell(m.get(*h).unwrap_or(&Value::Null))).collect()
            })
            .collect();
        Table { header: header.iter().map(|h| h.to_string()).collect(), rows }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        Value::Object(m) if m.contains_key("value") && m.contains_key("rounding") => cell(&m["value"]),
        other => other.to_string(),
    }
}

pub fn render(format: Format, report: &Value, table: Option<Table>) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut pairs = Vec::new();
            flatten("", report, &mut pairs);
            pairs.into_iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            match table {
                Some(t) => {
                    w.write_record(&t.header).expect("in-memory write");
                    for r in &t.rows {
                        w.write_record(r).expect("in-memory write");
                    }
                }
                None => {
                    let mut pairs = Vec::new();
                    flatten("", report, &mut pairs);
                    w.write_record(["key", "value"]).expect("in-memory write");
                    for (k, v) in pairs {
                        w.write_record([k, v]).expect("in-memory write");
                    }
                }
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
        }
    }
}
