use std::io::Write;

use super::rates::{base_rate, entropy_bound, truncated_rate};
use crate::alphabet::Distribution;
use crate::error::{Error, Result};
use crate::extractors::Scheme;

pub const COMPARE_HEADER: [&str; 5] = ["p", "scheme", "metric", "depth", "value"];

/// Base-part rate of the two-level unrolled original recursion,
/// `pq(1 + p² + q² + ½pq/(p² + q²))`.
pub fn psi_squared_base_rate_formula(p: f64) -> f64 {
    let q = 1.0 - p;
    let s = p * p + q * q;
    p * q * (1.0 + s + 0.5 * p * q / s)
}

/// Rate of `E_4` per input bit, `pq(1 + p² + q² + ½pq)`.
pub fn e4_base_rate_formula(p: f64) -> f64 {
    let q = 1.0 - p;
    p * q * (1.0 + p * p + q * q + 0.5 * p * q)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareRow {
    pub p: f64,
    pub scheme: String,
    pub metric: &'static str,
    pub depth: usize,
    pub value: f64,
}

/// Rows for every binary-source scheme and every `p` in the grid: the
/// entropy bound, the base rate, and the rate truncated at `depth`. Two
/// formula rows are added per grid point, for the unrolled original
/// recursion and for `E_4`.
pub fn compare_rows(schemes: &[Scheme], grid: &[f64], depth: usize) -> Result<Vec<CompareRow>> {
    if let Some(s) = schemes.iter().find(|s| s.source_alphabet() != 2) {
        return Err(Error::InvalidScheme(format!(
            "{} has a {}-symbol source; comparisons run over <p, 1-p>",
            s.name(),
            s.source_alphabet()
        )));
    }
    let mut rows = Vec::new();
    for &p in grid {
        let d = Distribution::bernoulli(p)?;
        for s in schemes {
            let row = |metric, depth, value| CompareRow {
                p,
                scheme: s.name().to_string(),
                metric,
                depth,
                value,
            };
            rows.push(row("entropy", 0, entropy_bound(s, &d)?));
            rows.push(row("base_rate", 1, base_rate(s, &d)?));
            rows.push(row("truncated_rate", depth, truncated_rate(s, &d, depth)?));
        }
        rows.push(CompareRow {
            p,
            scheme: "peres2_unrolled".into(),
            metric: "base_rate_formula",
            depth: 2,
            value: psi_squared_base_rate_formula(p),
        });
        rows.push(CompareRow {
            p,
            scheme: "e4".into(),
            metric: "base_rate_formula",
            depth: 1,
            value: e4_base_rate_formula(p),
        });
    }
    Ok(rows)
}

/// Writes rows as CSV with header `p,scheme,metric,depth,value`.
pub fn compare_csv<W: Write>(rows: &[CompareRow], out: W) -> Result<()> {
    let io = |e: csv::Error| Error::Io(e.to_string());
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(COMPARE_HEADER).map_err(io)?;
    for r in rows {
        writer
            .write_record([
                r.p.to_string(),
                r.scheme.clone(),
                r.metric.to_string(),
                r.depth.to_string(),
                r.value.to_string(),
            ])
            .map_err(io)?;
    }
    writer.flush().map_err(|e| Error::Io(e.to_string()))
}
