//! Parsing of parameter grids: `start:stop:step` ranges or comma lists.

use crate::error::{Error, Result};

fn parse_f64(s: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("not a number: {s:?}")))?;
    if !v.is_finite() {
        return Err(Error::InvalidInput(format!("not a finite number: {s:?}")));
    }
    Ok(v)
}

/// Snaps to 12 decimal places so `0.5 + 3 * 0.05` prints as `0.65`.
fn snap(v: f64) -> f64 {
    let snapped = (v * 1e12).round() / 1e12;
    if (snapped - v).abs() <= 1e-9 * v.abs().max(1.0) {
        snapped
    } else {
        v
    }
}

/// Inclusive arithmetic range; `stop` is included when it lies within half a
/// step of a grid point.
pub fn range_inclusive(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "grid step must be positive, got {step}"
        )));
    }
    if stop < start {
        return Err(Error::InvalidInput(format!(
            "grid stop {stop} is below start {start}"
        )));
    }
    let count = ((stop - start) / step + 0.5).floor() as usize + 1;
    if count > 1_000_000 {
        return Err(Error::InvalidInput(format!("grid has {count} points")));
    }
    Ok((0..count).map(|i| snap(start + i as f64 * step)).collect())
}

/// Parses `start:stop:step`, a comma separated list, or a single value.
/// An empty string yields an empty grid.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Ok(Vec::new());
    }
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [single] => single.split(',').map(parse_f64).collect(),
        [start, stop, step] => {
            range_inclusive(parse_f64(start)?, parse_f64(stop)?, parse_f64(step)?)
        }
        _ => Err(Error::InvalidInput(format!(
            "grid {spec:?} must be start:stop:step or a comma list"
        ))),
    }
}

/// Like [`parse_grid`] but for positive integers.
pub fn parse_int_grid(spec: &str) -> Result<Vec<usize>> {
    parse_grid(spec)?
        .into_iter()
        .map(|v| {
            if v >= 1.0 && v.fract() == 0.0 && v <= u32::MAX as f64 {
                Ok(v as usize)
            } else {
                Err(Error::InvalidInput(format!(
                    "expected a positive integer, got {v}"
                )))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_radius_grid() {
        let g = parse_grid("0.5:1.5:0.05").unwrap();
        assert_eq!(g.len(), 21);
        assert_eq!(g[0], 0.5);
        assert_eq!(g[3], 0.65);
        assert_eq!(g[10], 1.0);
        assert_eq!(*g.last().unwrap(), 1.5);
    }

    #[test]
    fn half_step_tolerance() {
        assert_eq!(parse_grid("0:1.04:0.1").unwrap().len(), 11);
        assert_eq!(parse_grid("0:1.06:0.1").unwrap().len(), 12);
        assert_eq!(parse_grid("1:1:0.5").unwrap(), vec![1.0]);
    }

    #[test]
    fn lists_and_errors() {
        assert_eq!(parse_grid("0.4, 2.0").unwrap(), vec![0.4, 2.0]);
        assert_eq!(parse_grid("").unwrap(), Vec::<f64>::new());
        assert!(parse_grid("1:0:0.1").is_err());
        assert!(parse_grid("0:1:0").is_err());
        assert!(parse_grid("a,b").is_err());
        assert!(parse_grid("1:2").is_err());
        assert_eq!(parse_int_grid("2,4,8").unwrap(), vec![2, 4, 8]);
        assert_eq!(parse_int_grid("2:8:2").unwrap(), vec![2, 4, 6, 8]);
        assert!(parse_int_grid("2.5").is_err());
        assert!(parse_int_grid("0").is_err());
    }
}
