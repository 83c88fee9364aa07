//! Sample ingestion from CSV. The accepted layout is a header line
//! `x` or `x,w` followed by one row per point. Weights are optional;
//! when absent the sample is uniform. Malformed input reports the
//! offending 1-based line number.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::sample::WeightedSample;

pub fn read_sample(path: &Path) -> Result<WeightedSample> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Csv { line: 0, msg: format!("cannot read {}: {e}", path.display()) })?;
    parse_sample(&text)
}

pub fn parse_sample(text: &str) -> Result<WeightedSample> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (hline, header) = lines
        .next()
        .ok_or(Error::Csv { line: 1, msg: "empty input, expected a header `x` or `x,w`".into() })?;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    let weighted = match cols.as_slice() {
        ["x"] => false,
        ["x", "w"] => true,
        _ => {
            return Err(Error::Csv {
                line: hline + 1,
                msg: format!("expected header `x` or `x,w`, got `{}`", header.trim()),
            })
        }
    };

    let mut points = Vec::new();
    let mut weights = Vec::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let expected = if weighted { 2 } else { 1 };
        if fields.len() != expected {
            return Err(Error::Csv {
                line: lineno,
                msg: format!("expected {expected} field(s), got {}", fields.len()),
            });
        }
        let parse = |field: &str, what: &str| -> Result<f64> {
            let v: f64 = field.parse().map_err(|_| Error::Csv {
                line: lineno,
                msg: format!("cannot parse {what} `{field}` as a number"),
            })?;
            if !v.is_finite() {
                return Err(Error::Csv { line: lineno, msg: format!("{what} `{field}` is not finite") });
            }
            Ok(v)
        };
        points.push(parse(fields[0], "x")?);
        if weighted {
            let w = parse(fields[1], "w")?;
            if w < 0.0 {
                return Err(Error::Csv { line: lineno, msg: format!("negative weight {w}") });
            }
            weights.push(w);
        }
    }
    if points.is_empty() {
        return Err(Error::Csv { line: 1, msg: "no data rows".into() });
    }
    if weighted {
        WeightedSample::from_unnormalized(points, weights)
    } else {
        WeightedSample::uniform(points)
    }
}
