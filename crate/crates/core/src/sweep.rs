//! Experiment sweeps: synthetic radius x dimension grids, feature-space
//! scaling and image contrast.

use std::path::{Path, PathBuf};

use crate::cloud::PointCloud;
use crate::error::{Error, Result};
use crate::formats::{read_features, read_images};
use crate::metrics::{evaluate_suite, MetricValues, DEFAULT_K};
use crate::par;
use crate::rng::RngSpec;
use crate::samplers::{scaled_pair, PairFamily};
use crate::table::write_csv;
use crate::transforms::{adjust_contrast, random_embed, scale_about_mean, ImageTensor};

pub const DEFAULT_N: usize = 10_000;
/// Reduced sample count for quick runs; high-dimensional behavior is
/// insensitive to it.
pub const FAST_N: usize = 2_000;
pub const DEFAULT_TRIALS: usize = 5;
pub const DEFAULT_DIMS: [usize; 9] = [2, 4, 8, 16, 32, 64, 128, 256, 512];
pub const DEFAULT_RADII: &str = "0.5:1.5:0.05";
pub const DEFAULT_SCALES: &str = "0.5:1.5:0.05";

/// Which parameter the sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    /// Synthetic sweeps keyed by `(d, r)`.
    Radius,
    /// Feature or contrast sweeps keyed by `s`.
    Scale,
}

impl SweepAxis {
    pub fn label(self) -> &'static str {
        match self {
            SweepAxis::Radius => "r",
            SweepAxis::Scale => "s",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub family: String,
    /// Ambient dimension; absent for scale sweeps.
    pub d: Option<usize>,
    /// `r` or `s` depending on the sweep axis.
    pub param: f64,
    pub trial: usize,
    pub n: usize,
    pub k: usize,
    pub values: MetricValues,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub axis: SweepAxis,
    pub records: Vec<SweepRecord>,
}

impl SweepResult {
    pub fn new(axis: SweepAxis) -> Self {
        Self {
            axis,
            records: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Orders records by `(d, param, trial)`.
    pub fn sort(&mut self) {
        self.records.sort_by(|a, b| {
            a.d.cmp(&b.d)
                .then(a.param.total_cmp(&b.param))
                .then(a.trial.cmp(&b.trial))
                .then(a.family.cmp(&b.family))
        });
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub family: PairFamily,
    pub dims: Vec<usize>,
    pub radii: Vec<f64>,
    pub n: usize,
    pub k: usize,
    pub trials: usize,
    pub seed: u64,
    /// When set, the CSV is written here after the sweep.
    pub out_path: Option<PathBuf>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            family: PairFamily::Sphere,
            dims: DEFAULT_DIMS.to_vec(),
            radii: crate::grid::parse_grid(DEFAULT_RADII).expect("default grid parses"),
            n: DEFAULT_N,
            k: DEFAULT_K,
            trials: DEFAULT_TRIALS,
            seed: 0,
            out_path: None,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidInput(m));
        if self.k == 0 || self.n <= self.k {
            return bad(format!(
                "need n > k >= 1, got n = {}, k = {}",
                self.n, self.k
            ));
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.dims.is_empty() || self.dims.contains(&0) {
            return bad("dims must be a nonempty list of positive integers".into());
        }
        if self.radii.is_empty() || self.radii.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
            return bad("radii must be a nonempty list of positive numbers".into());
        }
        Ok(())
    }

    /// Stream for one grid point; every `(d, r, trial)` gets its own draw.
    pub fn grid_rng(&self, d: usize, r: f64, trial: usize) -> RngSpec {
        RngSpec::new(self.seed, 0).substream_path(&[d as u64, r.to_bits(), trial as u64])
    }
}

/// Evaluates every `(d, r, trial)` point of `cfg`; records come back sorted.
pub fn run_synthetic_sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    cfg.validate()?;
    let mut points = Vec::with_capacity(cfg.dims.len() * cfg.radii.len() * cfg.trials);
    for &d in &cfg.dims {
        for &r in &cfg.radii {
            for trial in 0..cfg.trials {
                points.push((d, r, trial));
            }
        }
    }
    let evaluated = par::map_range(points.len(), |i| {
        let (d, r, trial) = points[i];
        let eval = || -> Result<SweepRecord> {
            let (real, gen) = scaled_pair(cfg.family, d, r, cfg.n, cfg.grid_rng(d, r, trial))?;
            let report = evaluate_suite(&real, &gen, cfg.k)?;
            Ok(SweepRecord {
                family: cfg.family.key().to_string(),
                d: Some(d),
                param: r,
                trial,
                n: cfg.n,
                k: cfg.k,
                values: report.values,
            })
        };
        eval().map_err(|e| Error::AtGridPoint {
            context: format!("family={} d={d} r={r} trial={trial}", cfg.family),
            source: Box::new(e),
        })
    });
    let mut result = SweepResult {
        axis: SweepAxis::Radius,
        records: evaluated.into_iter().collect::<Result<_>>()?,
    };
    result.sort();
    if let Some(path) = &cfg.out_path {
        write_csv(&result, path)?;
    }
    Ok(result)
}

fn scale_record(family: &str, s: f64, n: usize, k: usize, values: MetricValues) -> SweepRecord {
    SweepRecord {
        family: family.to_string(),
        d: None,
        param: s,
        trial: 0,
        n,
        k,
        values,
    }
}

/// For each `s`, scales the generated features about their mean and
/// evaluates them against the untouched real features.
pub fn feature_sweep(
    real: &PointCloud,
    gen: &PointCloud,
    s_grid: &[f64],
    k: usize,
) -> Result<SweepResult> {
    real.check_same_dim(gen)?;
    let mut result = SweepResult::new(SweepAxis::Scale);
    for &s in s_grid {
        let scaled = scale_about_mean(gen, s)?;
        let report = evaluate_suite(real, &scaled, k).map_err(|e| Error::AtGridPoint {
            context: format!("s={s}"),
            source: Box::new(e),
        })?;
        result
            .records
            .push(scale_record("feature", s, gen.n(), k, report.values));
    }
    result.sort();
    Ok(result)
}

pub fn run_feature_sweep(
    real_path: impl AsRef<Path>,
    gen_path: impl AsRef<Path>,
    s_grid: &[f64],
    k: usize,
    out_path: Option<&Path>,
) -> Result<SweepResult> {
    let real = read_features(real_path.as_ref())?;
    let gen = read_features(gen_path.as_ref())?;
    if real.d() != gen.d() {
        return Err(Error::DimensionMismatch {
            left: real.d(),
            right: gen.d(),
        }
        .at_path(gen_path.as_ref()));
    }
    let result = feature_sweep(&real, &gen, s_grid, k)?;
    if let Some(path) = out_path {
        write_csv(&result, path)?;
    }
    Ok(result)
}

/// The projection stream used for image embeddings under `seed`.
///
/// Real features meant to be compared in a contrast sweep should be embedded
/// with the same stream.
pub fn embedding_rng(seed: u64) -> RngSpec {
    RngSpec::new(seed, 0).substream(u64::from_le_bytes(*b"embed\0\0\0"))
}

/// For each `s`, adjusts image contrast, embeds the images and evaluates them
/// against `real_features`.
pub fn contrast_sweep(
    images: &ImageTensor,
    real_features: &PointCloud,
    s_grid: &[f64],
    embed_dim: usize,
    k: usize,
    seed: u64,
) -> Result<SweepResult> {
    if embed_dim != real_features.d() {
        return Err(Error::DimensionMismatch {
            left: embed_dim,
            right: real_features.d(),
        });
    }
    let mut result = SweepResult::new(SweepAxis::Scale);
    for &s in s_grid {
        let eval = || -> Result<MetricValues> {
            let adjusted = adjust_contrast(images, s)?;
            let embedded = random_embed(&adjusted, embed_dim, embedding_rng(seed))?;
            Ok(evaluate_suite(real_features, &embedded, k)?.values)
        };
        let values = eval().map_err(|e| Error::AtGridPoint {
            context: format!("s={s}"),
            source: Box::new(e),
        })?;
        result
            .records
            .push(scale_record("contrast", s, images.count(), k, values));
    }
    result.sort();
    Ok(result)
}

#[allow(clippy::too_many_arguments)]
pub fn run_contrast_sweep(
    images_path: impl AsRef<Path>,
    real_feats_path: impl AsRef<Path>,
    s_grid: &[f64],
    embed_dim: usize,
    k: usize,
    seed: u64,
    out_path: Option<&Path>,
) -> Result<SweepResult> {
    let images = read_images(images_path.as_ref())?;
    let real = read_features(real_feats_path.as_ref())?;
    let result = contrast_sweep(&images, &real, s_grid, embed_dim, k, seed)
        .map_err(|e| e.at_path(real_feats_path.as_ref()))?;
    if let Some(path) = out_path {
        write_csv(&result, path)?;
    }
    Ok(result)
}
