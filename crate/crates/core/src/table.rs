//! CSV serialization of sweep results.
//!
//! Synthetic sweeps use the header
//! `family,d,r,trial,n,k,precision,recall,c_precision,c_recall,sym_precision,sym_recall`;
//! scale sweeps replace `d,r` with `s`. Floats carry 17 significant digits.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::metrics::{Metric, MetricValues};
use crate::sweep::{SweepAxis, SweepRecord, SweepResult};

/// Formats like C's `%.17g`: 17 significant digits, trailing zeros removed.
pub fn fmt_g17(v: f64) -> String {
    if v == 0.0 {
        return if v.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp) as usize;
        let fixed = format!("{v:.decimals$}");
        strip_zeros(&fixed).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", strip_zeros(mantissa), exp.abs())
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn header(axis: SweepAxis) -> Vec<&'static str> {
    let mut h = vec!["family"];
    match axis {
        SweepAxis::Radius => h.extend(["d", "r"]),
        SweepAxis::Scale => h.push("s"),
    }
    h.extend(["trial", "n", "k"]);
    h.extend(Metric::ALL.map(Metric::key));
    h
}

fn csv_err(path: &Path, e: csv::Error) -> Error {
    Error::Csv {
        path: path.to_path_buf(),
        source: e,
    }
}

fn write_into<W: Write>(result: &SweepResult, w: W) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(header(result.axis))?;
    for rec in &result.records {
        let mut row = vec![rec.family.clone()];
        if result.axis == SweepAxis::Radius {
            row.push(rec.d.map_or_else(String::new, |d| d.to_string()));
        }
        row.push(fmt_g17(rec.param));
        row.extend([rec.trial.to_string(), rec.n.to_string(), rec.k.to_string()]);
        row.extend(rec.values.to_array().map(fmt_g17));
        out.write_record(&row)?;
    }
    out.flush()?;
    Ok(())
}

pub fn to_csv_string(result: &SweepResult) -> String {
    let mut buf = Vec::new();
    write_into(result, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("csv output is utf-8")
}

pub fn write_csv(result: &SweepResult, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_into(result, file).map_err(|e| csv_err(path, e))
}

fn parse_field<T: std::str::FromStr>(
    row: &csv::StringRecord,
    idx: usize,
    name: &str,
    line: u64,
) -> Result<T> {
    row.get(idx)
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| Error::InvalidInput(format!("line {line}: bad or missing {name}")))
}

pub fn parse_csv<R: Read>(reader: R) -> Result<SweepResult> {
    let mut rdr = csv::Reader::from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| Error::InvalidInput(format!("csv header: {e}")))?
        .clone();
    let names: Vec<&str> = headers.iter().collect();
    let axis = if names == header(SweepAxis::Radius) {
        SweepAxis::Radius
    } else if names == header(SweepAxis::Scale) {
        SweepAxis::Scale
    } else {
        return Err(Error::InvalidInput(format!(
            "unrecognized csv header {names:?}"
        )));
    };
    let mut result = SweepResult::new(axis);
    for (i, row) in rdr.records().enumerate() {
        let line = i as u64 + 2;
        let row = row.map_err(|e| Error::InvalidInput(format!("line {line}: {e}")))?;
        let (d, offset) = match axis {
            SweepAxis::Radius => (Some(parse_field::<usize>(&row, 1, "d", line)?), 2),
            SweepAxis::Scale => (None, 1),
        };
        let mut values = [0.0; 6];
        for (j, m) in Metric::ALL.iter().enumerate() {
            values[j] = parse_field(&row, offset + 4 + j, m.key(), line)?;
        }
        result.records.push(SweepRecord {
            family: row.get(0).unwrap_or_default().to_string(),
            d,
            param: parse_field(&row, offset, axis.label(), line)?,
            trial: parse_field(&row, offset + 1, "trial", line)?,
            n: parse_field(&row, offset + 2, "n", line)?,
            k: parse_field(&row, offset + 3, "k", line)?,
            values: MetricValues::from_array(values),
        });
    }
    Ok(result)
}

pub fn read_csv(path: impl AsRef<Path>) -> Result<SweepResult> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_csv(file).map_err(|e| e.at_path(path))
}
