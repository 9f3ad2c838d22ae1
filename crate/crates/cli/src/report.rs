//! Report assembly and rendering.
//!
//! Every number is rendered as an exact integer or `p/q` string. Decimal
//! approximations appear only when requested and are prefixed with `≈`.
//!
//! CSV output always uses the header `record,class,k,value,approx`:
//!
//! | record          | class | k        | value              |
//! |-----------------|-------|----------|--------------------|
//! | `meta:<field>`  |       |          | metadata value     |
//! | `critical`      | class | size     | critical number    |
//! | `index:<name>`  | class |          | index value        |
//! | `rank`          | class | position | index value        |
//! | `<verdict key>` |       |          | verdict value      |

use std::fmt::Write as _;

use clap::ValueEnum;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde_json::{json, Map, Value};
use votepower::{CountVector, Natural, Ratio};

/// Critical numbers longer than this many digits are elided in table and CSV
/// output unless `--full` is given.
pub const ELIDE_DIGITS: usize = 120;
const APPROX_DIGITS: usize = 12;
const CSV_HEADER: [&str; 5] = ["record", "class", "k", "value", "approx"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RenderOptions {
    pub full: bool,
    pub approx: bool,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    /// Echo of the analysed input; `None` under `--no-meta`.
    pub input: Option<Value>,
    pub vectors: Vec<(String, CountVector)>,
    pub index: Option<(String, Vec<(String, Ratio)>)>,
    pub ranking: Vec<RankLine>,
    pub verdicts: Vec<(String, Value)>,
}

#[derive(Debug, Clone)]
pub struct RankLine {
    pub class: String,
    pub value: Ratio,
    pub tied_with_previous: bool,
}

impl Report {
    pub fn new(command: &'static str, input: Option<Value>) -> Self {
        Self {
            command,
            input,
            vectors: Vec::new(),
            index: None,
            ranking: Vec::new(),
            verdicts: Vec::new(),
        }
    }

    pub fn verdict(&mut self, key: impl Into<String>, value: impl Into<Value>) {
        self.verdicts.push((key.into(), value.into()));
    }

    pub fn render(&self, format: Format, opts: RenderOptions) -> String {
        match format {
            Format::Table => self.table(opts),
            Format::Csv => self.csv(opts),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json(opts)).expect("json value");
                s.push('\n');
                s
            }
        }
    }

    /// 1-based ranks; tied entries share the rank of the first of them.
    fn positions(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::with_capacity(self.ranking.len());
        for (i, r) in self.ranking.iter().enumerate() {
            let p = match out.last() {
                Some(&prev) if r.tied_with_previous => prev,
                _ => i + 1,
            };
            out.push(p);
        }
        out
    }

    fn meta(&self) -> Option<Vec<(&'static str, String)>> {
        self.input.as_ref().map(|input| {
            vec![
                ("tool", "votepower".to_string()),
                ("version", env!("CARGO_PKG_VERSION").to_string()),
                ("input", input.to_string()),
            ]
        })
    }

    fn json(&self, opts: RenderOptions) -> Value {
        let mut out = Map::new();
        out.insert("command".into(), self.command.into());
        if let Some(input) = &self.input {
            out.insert(
                "meta".into(),
                json!({
                    "tool": "votepower",
                    "version": env!("CARGO_PKG_VERSION"),
                    "input": input,
                }),
            );
        }
        if !self.vectors.is_empty() {
            let vectors: Vec<Value> = self
                .vectors
                .iter()
                .map(|(class, v)| {
                    let counts: Vec<Value> = v
                        .iter()
                        .map(|(k, c)| json!({"k": k, "count": c.to_string()}))
                        .collect();
                    json!({"class": class, "counts": counts})
                })
                .collect();
            out.insert("critical_vectors".into(), vectors.into());
        }
        let value_entry = |class: &str, value: &Ratio| {
            let mut m = Map::new();
            m.insert("class".into(), class.into());
            m.insert("value".into(), value.to_string().into());
            if opts.approx {
                m.insert("approx".into(), approx(value).into());
            }
            m
        };
        if let Some((name, values)) = &self.index {
            let values: Vec<Value> = values.iter().map(|(c, v)| value_entry(c, v).into()).collect();
            out.insert("index".into(), json!({"name": name, "values": values}));
        }
        if !self.ranking.is_empty() {
            let ranking: Vec<Value> = self
                .ranking
                .iter()
                .zip(self.positions())
                .map(|(r, position)| {
                    let mut m = value_entry(&r.class, &r.value);
                    m.insert("position".into(), position.into());
                    m.insert("tied_with_previous".into(), r.tied_with_previous.into());
                    m.into()
                })
                .collect();
            out.insert("ranking".into(), ranking.into());
        }
        if !self.verdicts.is_empty() {
            let verdicts: Map<String, Value> = self.verdicts.iter().cloned().collect();
            out.insert("verdicts".into(), verdicts.into());
        }
        out.into()
    }

    fn table(&self, opts: RenderOptions) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        for (key, value) in self.meta().unwrap_or_default() {
            let _ = writeln!(out, "{key}: {value}");
        }
        if !self.vectors.is_empty() {
            out.push_str("\ncritical vectors\n");
            let mut rows = vec![vec!["class".into(), "k".into(), "count".into()]];
            for (class, v) in &self.vectors {
                for (k, c) in v.iter() {
                    rows.push(vec![class.clone(), k.to_string(), natural(c, opts.full)]);
                }
            }
            out.push_str(&columns(&rows));
        }
        let with_approx = |mut row: Vec<String>, value: &Ratio| {
            row.push(value.to_string());
            if opts.approx {
                row.push(approx(value));
            }
            row
        };
        let header = |mut row: Vec<String>| {
            row.push("value".into());
            if opts.approx {
                row.push("approx".into());
            }
            row
        };
        if let Some((name, values)) = &self.index {
            let _ = writeln!(out, "\nindex: {name}");
            let mut rows = vec![header(vec!["class".into()])];
            rows.extend(values.iter().map(|(c, v)| with_approx(vec![c.clone()], v)));
            out.push_str(&columns(&rows));
        }
        if !self.ranking.is_empty() {
            out.push_str("\nranking\n");
            let mut rows = vec![header(vec!["rank".into(), "class".into()])];
            for (r, position) in self.ranking.iter().zip(self.positions()) {
                let label = if r.tied_with_previous {
                    format!("{position}=")
                } else {
                    position.to_string()
                };
                rows.push(with_approx(vec![label, r.class.clone()], &r.value));
            }
            out.push_str(&columns(&rows));
        }
        if !self.verdicts.is_empty() {
            out.push_str("\nverdicts\n");
            let rows: Vec<Vec<String>> = self
                .verdicts
                .iter()
                .map(|(k, v)| vec![k.clone(), plain(v)])
                .collect();
            out.push_str(&columns(&rows));
        }
        out
    }

    fn csv(&self, opts: RenderOptions) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut row = |record: &str, class: &str, k: String, value: String, approx: String| {
            w.write_record([record, class, &k, &value, &approx]).expect("in-memory csv");
        };
        row(
            CSV_HEADER[0],
            CSV_HEADER[1],
            CSV_HEADER[2].into(),
            CSV_HEADER[3].into(),
            CSV_HEADER[4].into(),
        );
        for (key, value) in self.meta().unwrap_or_default() {
            row(&format!("meta:{key}"), "", String::new(), value, String::new());
        }
        let maybe_approx = |v: &Ratio| if opts.approx { approx(v) } else { String::new() };
        for (class, v) in &self.vectors {
            for (k, c) in v.iter() {
                row("critical", class, k.to_string(), natural(c, opts.full), String::new());
            }
        }
        if let Some((name, values)) = &self.index {
            for (class, v) in values {
                row(&format!("index:{name}"), class, String::new(), v.to_string(), maybe_approx(v));
            }
        }
        for (r, position) in self.ranking.iter().zip(self.positions()) {
            row("rank", &r.class, position.to_string(), r.value.to_string(), maybe_approx(&r.value));
        }
        for (key, value) in &self.verdicts {
            row(key, "", String::new(), plain(value), String::new());
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(plain).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn columns(rows: &[Vec<String>]) -> String {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..width)
        .map(|i| rows.iter().filter_map(|r| r.get(i)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::from("  ");
        for (i, cell) in row.iter().enumerate() {
            if i + 1 == row.len() {
                line.push_str(cell);
            } else {
                let pad = widths[i] - cell.chars().count();
                line.push_str(cell);
                line.push_str(&" ".repeat(pad + 2));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Decimal rendering of a natural, elided past [`ELIDE_DIGITS`] unless `full`.
pub fn natural(n: &Natural, full: bool) -> String {
    let s = n.to_string();
    if full || s.len() <= ELIDE_DIGITS {
        s
    } else {
        format!("{}…[{} digits]", &s[..20], s.len())
    }
}

/// Scientific-notation approximation computed with integer arithmetic,
/// rounded half up to twelve significant digits.
pub fn approx(r: &Ratio) -> String {
    if r.is_zero() {
        return "≈0".into();
    }
    let sign = if r.is_negative() { "-" } else { "" };
    let num = r.numer().abs();
    let den = r.denom().clone();
    let mut exp = num.to_string().len() as i64 - den.to_string().len() as i64;
    if scaled(&num, &den, -exp) < BigInt::from(1) {
        exp -= 1;
    }
    let shift = APPROX_DIGITS as i64 - 1 - exp;
    let (q, rem) = scaled_parts(&num, &den, shift);
    let mut mantissa: BigInt = q + if rem * 2u8 >= den { 1u8 } else { 0u8 };
    if mantissa.to_string().len() > APPROX_DIGITS {
        mantissa /= 10;
        exp += 1;
    }
    let digits = mantissa.to_string();
    format!("≈{sign}{}.{}e{exp}", &digits[..1], &digits[1..])
}

fn scaled(num: &BigInt, den: &BigInt, shift: i64) -> BigInt {
    scaled_parts(num, den, shift).0
}

/// `num · 10^shift / den` as quotient and remainder over the adjusted denominator.
fn scaled_parts(num: &BigInt, den: &BigInt, shift: i64) -> (BigInt, BigInt) {
    let ten = BigInt::from(10);
    if shift >= 0 {
        (num * num_traits::pow(ten, shift as usize)).div_rem(den)
    } else {
        num.div_rem(&(den * num_traits::pow(ten, (-shift) as usize)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Ratio {
        Ratio::new(n.into(), d.into())
    }

    #[test]
    fn approximations() {
        assert_eq!(approx(&r(1, 3)), "≈3.33333333333e-1");
        assert_eq!(approx(&r(2, 3)), "≈6.66666666667e-1");
        assert_eq!(approx(&r(1, 1)), "≈1.00000000000e0");
        assert_eq!(approx(&r(-123, 1)), "≈-1.23000000000e2");
        assert_eq!(approx(&r(9_999_999_999_999, 10)), "≈1.00000000000e12");
        assert_eq!(approx(&r(1, 1000)), "≈1.00000000000e-3");
        assert_eq!(approx(&r(0, 1)), "≈0");
    }

    #[test]
    fn elision() {
        let small = Natural::from(12345u32);
        assert_eq!(natural(&small, false), "12345");
        let big: Natural = "1".repeat(130).parse().unwrap();
        assert_eq!(natural(&big, false), format!("{}…[130 digits]", "1".repeat(20)));
        assert_eq!(natural(&big, true), "1".repeat(130));
    }

    #[test]
    fn columns_align() {
        let rows = vec![
            vec!["a".to_string(), "bb".to_string(), "c".to_string()],
            vec!["aaa".to_string(), "b".to_string(), "cc".to_string()],
        ];
        assert_eq!(columns(&rows), "  a    bb  c\n  aaa  b   cc\n");
    }
}
