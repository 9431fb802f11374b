//! Precision, Recall, their complements and the symmetric minima.
//!
//! `precision` counts generated points inside the k-NN support of the real
//! cloud, `recall` swaps the roles. The complement variants keep the counted
//! set but build the balls on the other cloud: `c_precision` counts generated
//! points whose own k-NN ball contains a real point, and `c_recall` (also
//! known as Coverage) counts real points whose ball contains a generated one.

use std::fmt;

use crate::cloud::PointCloud;
use crate::error::{Error, Result};
use crate::knn::{covered_count, knn_radii, neighborhoods_hit_count};

/// Neighbor count used throughout the experiments.
pub const DEFAULT_K: usize = 5;

/// The six metrics as integer counts, before division.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MetricCounts {
    /// Generated points inside the real support.
    pub precision: usize,
    /// Real points inside the generated support.
    pub recall: usize,
    /// Generated balls containing a real point.
    pub c_precision: usize,
    /// Real balls containing a generated point.
    pub c_recall: usize,
    pub n_real: usize,
    pub n_gen: usize,
}

/// Which of the six values to read from a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    Precision,
    Recall,
    CPrecision,
    CRecall,
    SymPrecision,
    SymRecall,
}

impl Metric {
    pub const ALL: [Metric; 6] = [
        Metric::Precision,
        Metric::Recall,
        Metric::CPrecision,
        Metric::CRecall,
        Metric::SymPrecision,
        Metric::SymRecall,
    ];

    /// Column name used in CSV output.
    pub fn key(self) -> &'static str {
        match self {
            Metric::Precision => "precision",
            Metric::Recall => "recall",
            Metric::CPrecision => "c_precision",
            Metric::CRecall => "c_recall",
            Metric::SymPrecision => "sym_precision",
            Metric::SymRecall => "sym_recall",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Metric::Precision => "Precision",
            Metric::Recall => "Recall",
            Metric::CPrecision => "cPrecision",
            Metric::CRecall => "cRecall",
            Metric::SymPrecision => "symPrecision",
            Metric::SymRecall => "symRecall",
        }
    }

    pub fn from_key(s: &str) -> Option<Metric> {
        Metric::ALL.into_iter().find(|m| m.key() == s)
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

/// The six metric values in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricValues {
    pub precision: f64,
    pub recall: f64,
    pub c_precision: f64,
    pub c_recall: f64,
    pub sym_precision: f64,
    pub sym_recall: f64,
}

impl MetricValues {
    pub fn get(&self, m: Metric) -> f64 {
        match m {
            Metric::Precision => self.precision,
            Metric::Recall => self.recall,
            Metric::CPrecision => self.c_precision,
            Metric::CRecall => self.c_recall,
            Metric::SymPrecision => self.sym_precision,
            Metric::SymRecall => self.sym_recall,
        }
    }

    pub fn to_array(&self) -> [f64; 6] {
        Metric::ALL.map(|m| self.get(m))
    }

    pub fn from_array(v: [f64; 6]) -> Self {
        Self {
            precision: v[0],
            recall: v[1],
            c_precision: v[2],
            c_recall: v[3],
            sym_precision: v[4],
            sym_recall: v[5],
        }
    }
}

impl From<MetricCounts> for MetricValues {
    fn from(c: MetricCounts) -> Self {
        let g = c.n_gen as f64;
        let r = c.n_real as f64;
        Self {
            precision: c.precision as f64 / g,
            recall: c.recall as f64 / r,
            c_precision: c.c_precision as f64 / g,
            c_recall: c.c_recall as f64 / r,
            sym_precision: c.precision.min(c.c_precision) as f64 / g,
            sym_recall: c.recall.min(c.c_recall) as f64 / r,
        }
    }
}

/// One evaluation of a (real, generated, k) triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricReport {
    pub values: MetricValues,
    pub counts: MetricCounts,
    pub k: usize,
}

impl MetricReport {
    pub fn from_counts(counts: MetricCounts, k: usize) -> Self {
        Self {
            values: counts.into(),
            counts,
            k,
        }
    }

    pub fn n_real(&self) -> usize {
        self.counts.n_real
    }

    pub fn n_gen(&self) -> usize {
        self.counts.n_gen
    }

    pub fn get(&self, m: Metric) -> f64 {
        self.values.get(m)
    }
}

impl fmt::Display for MetricReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "n_real={} n_gen={} k={}",
            self.counts.n_real, self.counts.n_gen, self.k
        )?;
        for m in Metric::ALL {
            writeln!(f, "{:<14}{:.6}", m.key(), self.get(m))?;
        }
        Ok(())
    }
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    Ok(())
}

fn ratio(count: usize, n: usize) -> f64 {
    count as f64 / n as f64
}

pub fn precision(x_real: &PointCloud, x_gen: &PointCloud, k: usize) -> Result<f64> {
    check_k(k)?;
    x_real.check_same_dim(x_gen)?;
    let support = knn_radii(x_real, k)?;
    Ok(ratio(covered_count(&support, x_gen)?, x_gen.n()))
}

pub fn recall(x_real: &PointCloud, x_gen: &PointCloud, k: usize) -> Result<f64> {
    precision(x_gen, x_real, k)
}

pub fn c_precision(x_real: &PointCloud, x_gen: &PointCloud, k: usize) -> Result<f64> {
    check_k(k)?;
    x_real.check_same_dim(x_gen)?;
    let support = knn_radii(x_gen, k)?;
    Ok(ratio(neighborhoods_hit_count(&support, x_real)?, x_gen.n()))
}

pub fn c_recall(x_real: &PointCloud, x_gen: &PointCloud, k: usize) -> Result<f64> {
    c_precision(x_gen, x_real, k)
}

/// All six metrics, building each cloud's k-NN radii once.
pub fn evaluate_suite(x_real: &PointCloud, x_gen: &PointCloud, k: usize) -> Result<MetricReport> {
    check_k(k)?;
    x_real.check_same_dim(x_gen)?;
    let real_support = knn_radii(x_real, k)?;
    let gen_support = knn_radii(x_gen, k)?;
    let counts = MetricCounts {
        precision: covered_count(&real_support, x_gen)?,
        recall: covered_count(&gen_support, x_real)?,
        c_precision: neighborhoods_hit_count(&gen_support, x_real)?,
        c_recall: neighborhoods_hit_count(&real_support, x_gen)?,
        n_real: x_real.n(),
        n_gen: x_gen.n(),
    };
    Ok(MetricReport::from_counts(counts, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(xs: &[f64]) -> PointCloud {
        PointCloud::new(xs.to_vec(), xs.len(), 1).unwrap()
    }

    #[test]
    fn hand_example() {
        let real = line(&[0.0, 2.0]);
        let gen = line(&[1.0, 5.0]);
        assert_eq!(precision(&real, &gen, 1).unwrap(), 0.5);
        assert_eq!(recall(&real, &gen, 1).unwrap(), 1.0);
        assert_eq!(c_precision(&real, &gen, 1).unwrap(), 1.0);
        assert_eq!(c_recall(&real, &gen, 1).unwrap(), 1.0);
        let r = evaluate_suite(&real, &gen, 1).unwrap();
        assert_eq!(r.values.to_array(), [0.5, 1.0, 1.0, 1.0, 0.5, 1.0]);
    }

    #[test]
    fn identical_clouds_score_one() {
        let x = line(&[0.0, 0.3, 1.7, 2.2, 5.0]);
        let r = evaluate_suite(&x, &x, 2).unwrap();
        assert_eq!(r.values.to_array(), [1.0; 6]);
    }

    #[test]
    fn disjoint_clouds_score_zero() {
        let x = line(&[0.0, 0.3, 1.7, 2.2, 5.0]);
        let far: Vec<f64> = x.as_slice().iter().map(|v| v + 1e6).collect();
        let far = line(&far);
        assert_eq!(precision(&x, &far, 1).unwrap(), 0.0);
        assert_eq!(c_precision(&x, &far, 1).unwrap(), 0.0);
        let r = evaluate_suite(&x, &far, 1).unwrap();
        assert_eq!(r.values.to_array(), [0.0; 6]);
    }

    #[test]
    fn errors_propagate() {
        let a = line(&[0.0, 1.0]);
        let b = PointCloud::from_rows(&[[0.0, 0.0], [1.0, 1.0]]).unwrap();
        assert!(matches!(
            evaluate_suite(&a, &b, 1),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            evaluate_suite(&a, &a, 2),
            Err(Error::InsufficientSamples { .. })
        ));
        assert!(precision(&a, &a, 0).is_err());
    }

    #[test]
    fn metric_keys_round_trip() {
        for m in Metric::ALL {
            assert_eq!(Metric::from_key(m.key()), Some(m));
        }
        assert_eq!(Metric::from_key("density"), None);
    }
}
