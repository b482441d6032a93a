//! Versioned trace CSV: a header comment, one row per emission and a
//! summary comment.

use std::collections::BTreeMap;
use std::io::{self, BufRead, Write};

use anytime_search::{BoundPair, Cost, Ratio, Status};

use crate::error::BenchError;

pub const TRACE_VERSION: &str = "anytime-bench trace v1";

pub const COLUMNS: [&str; 10] = [
    "wall_time_s",
    "expansions",
    "stored",
    "incumbent_cost",
    "lower_bound",
    "upper_bound",
    "bound_difference",
    "approx_ratio",
    "quality",
    "lower_witness_g",
];

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub wall_time_s: Option<f64>,
    pub expansions: u64,
    pub stored: u64,
    pub incumbent_cost: Option<Cost>,
    pub lower_bound: Cost,
    pub upper_bound: Cost,
    pub bound_difference: Option<Cost>,
    pub approx_ratio: Option<f64>,
    pub quality: Option<f64>,
    pub lower_witness_g: Option<Cost>,
}

impl TraceRow {
    pub fn new(
        expansions: u64,
        stored: u64,
        incumbent: Option<Cost>,
        bounds: BoundPair,
        ratio: Option<Ratio>,
        fstar: Option<Cost>,
    ) -> TraceRow {
        TraceRow {
            wall_time_s: None,
            expansions,
            stored,
            incumbent_cost: incumbent,
            lower_bound: bounds.lower,
            upper_bound: bounds.upper,
            bound_difference: bounds.difference(),
            approx_ratio: ratio.map(|r| r.to_f64()),
            quality: incumbent.zip(fstar).map(|(f, s)| quality(f, s)),
            lower_witness_g: bounds.lower_witness_g,
        }
    }

    /// Equal in everything but wall time.
    pub fn same_point(&self, other: &TraceRow) -> bool {
        TraceRow {
            wall_time_s: None,
            ..self.clone()
        } == TraceRow {
            wall_time_s: None,
            ..other.clone()
        }
    }

    fn record(&self) -> [String; 10] {
        [
            self.wall_time_s.map(|t| format!("{t:.6}")).unwrap_or_default(),
            self.expansions.to_string(),
            self.stored.to_string(),
            opt_cost(self.incumbent_cost),
            self.lower_bound.to_string(),
            self.upper_bound.to_string(),
            opt_cost(self.bound_difference),
            self.approx_ratio.map(|r| format!("{r:.6}")).unwrap_or_default(),
            self.quality.map(|q| format!("{q:.6}")).unwrap_or_default(),
            opt_cost(self.lower_witness_g),
        ]
    }
}

/// `1 - (f - f*)/f*`; a zero-cost optimum gives 1 for a zero-cost solution.
pub fn quality(f: Cost, fstar: Cost) -> f64 {
    if fstar == Cost::ZERO {
        return if f == Cost::ZERO { 1.0 } else { 0.0 };
    }
    let (f, s) = (f.value() as f64, fstar.value() as f64);
    1.0 - (f - s) / s
}

fn opt_cost(c: Option<Cost>) -> String {
    c.map(|c| c.to_string()).unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub status: Status,
    pub cost: Option<Cost>,
    pub expansions: u64,
    pub distinct: u64,
    pub reexpansions: u64,
    pub stored: u64,
    /// RBFS family only.
    pub recursive_calls: Option<u64>,
    pub wall_time_s: Option<f64>,
}

impl Summary {
    pub fn line(&self) -> String {
        let mut s = format!(
            "status={} cost={} expansions={} distinct={} reexpansions={} stored={}",
            self.status.as_str(),
            self.cost.map(|c| c.to_string()).unwrap_or_else(|| "none".into()),
            self.expansions,
            self.distinct,
            self.reexpansions,
            self.stored
        );
        if let Some(r) = self.recursive_calls {
            s.push_str(&format!(" recursive_calls={r}"));
        }
        if let Some(t) = self.wall_time_s {
            s.push_str(&format!(" wall_time_s={t:.6}"));
        }
        s
    }
}

/// `key=value` pairs describing the run, written in the header comment.
pub type Meta = Vec<(String, String)>;

pub fn write_trace<W: Write>(out: W, meta: &Meta, rows: &[TraceRow], summary: &Summary) -> Result<(), BenchError> {
    let mut out = out;
    let mut header = String::from(TRACE_VERSION);
    for (k, v) in meta {
        header.push_str(&format!(" {k}={v}"));
    }
    writeln!(out, "# {header}")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COLUMNS)?;
    for r in rows {
        w.write_record(r.record())?;
    }
    w.flush()?;
    let mut out = w.into_inner().map_err(|e| e.into_error())?;
    writeln!(out, "# summary {}", summary.line())?;
    Ok(())
}

pub fn trace_to_string(meta: &Meta, rows: &[TraceRow], summary: &Summary) -> String {
    let mut buf = Vec::new();
    write_trace(&mut buf, meta, rows, summary).expect("writing to memory");
    String::from_utf8(buf).expect("trace is ASCII")
}

/// A trace read back from disk.
#[derive(Debug, Clone, Default)]
pub struct TraceFile {
    pub meta: BTreeMap<String, String>,
    pub rows: Vec<TraceRow>,
    pub summary: BTreeMap<String, String>,
}

fn pairs(s: &str) -> BTreeMap<String, String> {
    s.split_whitespace()
        .filter_map(|kv| kv.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

pub fn read_trace<R: BufRead>(input: R, name: &str) -> Result<TraceFile, BenchError> {
    let bad = |message: String| BenchError::Trace {
        path: name.to_string(),
        message,
    };
    let mut file = TraceFile::default();
    let mut body = String::new();
    let mut versioned = false;
    for line in input.lines() {
        let line = line?;
        if let Some(c) = line.strip_prefix("# ") {
            if let Some(rest) = c.strip_prefix(TRACE_VERSION) {
                versioned = true;
                file.meta = pairs(rest);
            } else if let Some(rest) = c.strip_prefix("summary") {
                file.summary = pairs(rest);
            }
        } else {
            body.push_str(&line);
            body.push('\n');
        }
    }
    if !versioned {
        return Err(bad(format!("missing \"# {TRACE_VERSION}\" header")));
    }
    let mut r = csv::Reader::from_reader(io::Cursor::new(body));
    let headers = r.headers()?.clone();
    if headers.iter().ne(COLUMNS) {
        return Err(bad(format!("unexpected columns {headers:?}")));
    }
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let row = i + 1;
        let num = |j: usize| -> Result<u64, BenchError> {
            rec[j]
                .parse()
                .map_err(|_| bad(format!("row {row}: bad {} {:?}", COLUMNS[j], &rec[j])))
        };
        let cost = |j: usize| -> Result<Cost, BenchError> {
            if &rec[j] == "inf" {
                Ok(Cost::INFINITY)
            } else {
                num(j).map(Cost::new)
            }
        };
        let opt_cost = |j: usize| -> Result<Option<Cost>, BenchError> {
            if rec[j].is_empty() {
                Ok(None)
            } else {
                cost(j).map(Some)
            }
        };
        let opt_f = |j: usize| -> Result<Option<f64>, BenchError> {
            if rec[j].is_empty() {
                return Ok(None);
            }
            rec[j]
                .parse()
                .map(Some)
                .map_err(|_| bad(format!("row {row}: bad {} {:?}", COLUMNS[j], &rec[j])))
        };
        file.rows.push(TraceRow {
            wall_time_s: opt_f(0)?,
            expansions: num(1)?,
            stored: num(2)?,
            incumbent_cost: opt_cost(3)?,
            lower_bound: cost(4)?,
            upper_bound: cost(5)?,
            bound_difference: opt_cost(6)?,
            approx_ratio: opt_f(7)?,
            quality: opt_f(8)?,
            lower_witness_g: opt_cost(9)?,
        });
    }
    Ok(file)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(lower: u64, upper: Option<u64>) -> TraceRow {
        let bounds = BoundPair {
            lower: Cost::new(lower),
            upper: upper.map(Cost::new).unwrap_or(Cost::INFINITY),
            lower_witness_g: Some(Cost::new(1)),
        };
        TraceRow::new(5, 9, upper.map(Cost::new), bounds, bounds.ratio(), Some(Cost::new(10)))
    }

    #[test]
    fn quality_formula() {
        assert_eq!(quality(Cost::new(10), Cost::new(10)), 1.0);
        assert_eq!(quality(Cost::new(15), Cost::new(10)), 0.5);
        assert_eq!(quality(Cost::ZERO, Cost::ZERO), 1.0);
    }

    #[test]
    fn roundtrip() {
        let rows = vec![row(3, None), row(8, Some(12)), row(10, Some(10))];
        let summary = Summary {
            status: Status::Converged,
            cost: Some(Cost::new(10)),
            expansions: 5,
            distinct: 5,
            reexpansions: 0,
            stored: 9,
            recursive_calls: None,
            wall_time_s: None,
        };
        let meta = vec![("weight".to_string(), "3/2".to_string())];
        let text = trace_to_string(&meta, &rows, &summary);
        assert!(text.starts_with("# anytime-bench trace v1 weight=3/2\nwall_time_s,"));
        assert!(text.ends_with("# summary status=converged cost=10 expansions=5 distinct=5 reexpansions=0 stored=9\n"));
        let back = read_trace(text.as_bytes(), "t").unwrap();
        assert_eq!(back.meta["weight"], "3/2");
        assert_eq!(back.summary["status"], "converged");
        assert_eq!(back.rows.len(), 3);
        assert_eq!(back.rows[0].upper_bound, Cost::INFINITY);
        assert_eq!(back.rows[1].quality, Some(0.8));
        assert_eq!(back.rows[2].incumbent_cost, Some(Cost::new(10)));
    }

    #[test]
    fn unversioned_rejected() {
        let err = read_trace("a,b\n1,2\n".as_bytes(), "t").unwrap_err();
        assert!(err.to_string().contains("header"));
    }
}
