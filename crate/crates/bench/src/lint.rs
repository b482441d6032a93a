//! Row-to-row checks on trace files.

use std::fmt;

use anytime_search::{Cost, WeightSpec};

use crate::error::BenchError;
use crate::trace::{TraceFile, TraceRow};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// 1-based data row.
    pub row: usize,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "row {}: {}", self.row, self.message)
    }
}

/// Checks a trace against the bound invariants.
///
/// `fstar` overrides the optimum recorded in the header, if any. The weight
/// comes from the header; with a weight above 1, every row with an
/// incumbent and a lower-bound witness at positive g must have
/// `upper/lower < w`. ARA* traces are exempt from that ratio check: their
/// lower bound ranges over INCONS as well as Open, and the bound they
/// report is `min(w, upper/lower)`.
pub fn lint(trace: &TraceFile, fstar: Option<Cost>) -> Result<Vec<Violation>, BenchError> {
    let weight: Option<WeightSpec> = match trace.meta.get("weight") {
        Some(w) => Some(w.parse().map_err(|e: anytime_search::Error| BenchError::Trace {
            path: "header".into(),
            message: e.to_string(),
        })?),
        None => None,
    };
    let ratio_checked = trace.meta.get("algorithm").map(String::as_str) != Some("ara_star");
    let fstar = match fstar {
        Some(f) => Some(f),
        None => match trace.meta.get("fstar") {
            Some(s) => Some(Cost::new(s.parse().map_err(|_| BenchError::Trace {
                path: "header".into(),
                message: format!("bad fstar {s:?}"),
            })?)),
            None => None,
        },
    };
    let mut out = Vec::new();
    let mut prev: Option<&TraceRow> = None;
    for (i, r) in trace.rows.iter().enumerate() {
        let mut bad = |message: String| out.push(Violation { row: i + 1, message });
        if r.lower_bound > r.upper_bound {
            bad(format!("lower {} exceeds upper {}", r.lower_bound, r.upper_bound));
        }
        match r.incumbent_cost {
            Some(c) if c != r.upper_bound => {
                bad(format!("incumbent {c} differs from upper {}", r.upper_bound))
            }
            None if r.upper_bound.is_finite() => bad("finite upper without an incumbent".into()),
            _ => {}
        }
        if let Some(p) = prev {
            if r.lower_bound < p.lower_bound {
                bad(format!("lower fell from {} to {}", p.lower_bound, r.lower_bound));
            }
            if r.upper_bound > p.upper_bound {
                bad(format!("upper rose from {} to {}", p.upper_bound, r.upper_bound));
            }
            if r.expansions < p.expansions {
                bad(format!("expansions fell from {} to {}", p.expansions, r.expansions));
            }
        }
        if let Some(f) = fstar {
            if r.lower_bound > f {
                bad(format!("lower {} exceeds optimum {f}", r.lower_bound));
            }
            if r.upper_bound < f {
                bad(format!("upper {} is below optimum {f}", r.upper_bound));
            }
        }
        if let Some(w) = weight.filter(|w| ratio_checked && !w.is_one()) {
            let witnessed = r.lower_witness_g.is_some_and(|g| g > Cost::ZERO);
            if r.incumbent_cost.is_some() && witnessed && r.lower_bound > Cost::ZERO {
                let lhs = r.upper_bound.value() as u128 * w.q() as u128;
                let rhs = r.lower_bound.value() as u128 * w.p() as u128;
                if lhs >= rhs {
                    bad(format!(
                        "upper/lower = {}/{} is not below w = {w}",
                        r.upper_bound, r.lower_bound
                    ));
                }
            }
        }
        prev = Some(r);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use anytime_search::BoundPair;

    fn row(lower: u64, upper: Option<u64>, g: Option<u64>) -> TraceRow {
        let bounds = BoundPair {
            lower: Cost::new(lower),
            upper: upper.map(Cost::new).unwrap_or(Cost::INFINITY),
            lower_witness_g: g.map(Cost::new),
        };
        TraceRow::new(0, 0, upper.map(Cost::new), bounds, None, None)
    }

    fn file(w: &str, rows: Vec<TraceRow>) -> TraceFile {
        TraceFile {
            meta: [("weight".to_string(), w.to_string())].into(),
            rows,
            summary: Default::default(),
        }
    }

    #[test]
    fn clean_trace() {
        let t = file("2", vec![row(3, None, Some(0)), row(5, Some(9), Some(2)), row(9, Some(9), None)]);
        assert_eq!(lint(&t, Some(Cost::new(9))).unwrap(), vec![]);
    }

    #[test]
    fn catches_each_violation() {
        let t = file("2", vec![row(6, Some(9), Some(1)), row(5, Some(10), Some(1))]);
        let v = lint(&t, None).unwrap();
        assert!(v.iter().any(|v| v.message.contains("lower fell")));
        assert!(v.iter().any(|v| v.message.contains("upper rose")));
        assert!(v.iter().any(|v| v.message.contains("not below")));
        let v = lint(&file("2", vec![row(3, Some(4), None)]), Some(Cost::new(5))).unwrap();
        assert!(v[0].message.contains("below optimum"));
    }

    #[test]
    fn ara_star_skips_ratio_check() {
        let mut t = file("2", vec![row(4, Some(10), Some(2))]);
        assert_eq!(lint(&t, None).unwrap().len(), 1);
        t.meta.insert("algorithm".into(), "ara_star".into());
        assert!(lint(&t, None).unwrap().is_empty());
    }

    #[test]
    fn ratio_needs_positive_witness_g() {
        let t = file("3/2", vec![row(4, Some(8), Some(0))]);
        assert_eq!(lint(&t, None).unwrap(), vec![]);
        let t = file("3/2", vec![row(4, Some(6), Some(1))]);
        assert_eq!(lint(&t, None).unwrap().len(), 1);
    }
}
