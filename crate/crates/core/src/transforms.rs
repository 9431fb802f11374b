//! Feature scaling, image contrast and random image embeddings.

use crate::cloud::PointCloud;
use crate::error::{Error, Result};
use crate::par;
use crate::rng::RngSpec;

/// `s * (x - mean) + mean` per row, with the mean of `features` itself.
pub fn scale_about_mean(features: &PointCloud, s: f64) -> Result<PointCloud> {
    let mean = features.mean();
    scale_about(features, s, &mean)
}

/// `s * (x - center) + center` per row.
pub fn scale_about(features: &PointCloud, s: f64, center: &[f64]) -> Result<PointCloud> {
    if center.len() != features.d() {
        return Err(Error::DimensionMismatch {
            left: features.d(),
            right: center.len(),
        });
    }
    if !s.is_finite() || s < 0.0 {
        return Err(Error::InvalidInput(format!("scale must be >= 0, got {s}")));
    }
    if s == 1.0 {
        return Ok(features.clone());
    }
    features.map_rows(features.d(), |src, dst| {
        for ((o, &x), &c) in dst.iter_mut().zip(src).zip(center) {
            *o = s * (x - c) + c;
        }
    })
}

/// A batch of 8-bit images stored as `count x height x width x channels`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageTensor {
    count: usize,
    height: usize,
    width: usize,
    channels: usize,
    pixels: Vec<u8>,
}

impl ImageTensor {
    pub fn new(
        count: usize,
        height: usize,
        width: usize,
        channels: usize,
        pixels: Vec<u8>,
    ) -> Result<Self> {
        if count == 0 || height == 0 || width == 0 {
            return Err(Error::InvalidInput(format!(
                "image tensor dims must be >= 1, got {count} x {height} x {width}"
            )));
        }
        if channels != 1 && channels != 3 {
            return Err(Error::InvalidInput(format!(
                "channels must be 1 or 3, got {channels}"
            )));
        }
        let expected = [count, height, width, channels]
            .iter()
            .try_fold(1usize, |acc, &v| acc.checked_mul(v))
            .ok_or_else(|| Error::InvalidInput("image tensor size overflows".into()))?;
        if pixels.len() != expected {
            return Err(Error::InvalidInput(format!(
                "expected {expected} pixel bytes, got {}",
                pixels.len()
            )));
        }
        Ok(Self {
            count,
            height,
            width,
            channels,
            pixels,
        })
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    /// Bytes per image.
    pub fn image_len(&self) -> usize {
        self.height * self.width * self.channels
    }

    pub fn image(&self, i: usize) -> &[u8] {
        let len = self.image_len();
        &self.pixels[i * len..(i + 1) * len]
    }

    pub fn images(&self) -> std::slice::ChunksExact<'_, u8> {
        self.pixels.chunks_exact(self.image_len())
    }
}

/// Scales every channel of every image about that channel's mean:
/// `round(mean + s * (p - mean))`, clamped to `[0, 255]`, rounding half away from zero.
pub fn adjust_contrast(images: &ImageTensor, s: f64) -> Result<ImageTensor> {
    if !s.is_finite() || s < 0.0 {
        return Err(Error::InvalidInput(format!(
            "contrast scale must be >= 0, got {s}"
        )));
    }
    let ch = images.channels;
    let mut out = images.pixels.clone();
    par::for_each_chunk_mut(&mut out, images.image_len(), |_, img| {
        let mut sums = [0.0f64; 3];
        for px in img.chunks_exact(ch) {
            for (c, &v) in px.iter().enumerate() {
                sums[c] += f64::from(v);
            }
        }
        let area = (img.len() / ch) as f64;
        let means = sums.map(|v| v / area);
        for px in img.chunks_exact_mut(ch) {
            for (c, v) in px.iter_mut().enumerate() {
                let m = means[c];
                *v = (m + s * (f64::from(*v) - m)).round().clamp(0.0, 255.0) as u8;
            }
        }
    });
    ImageTensor::new(images.count, images.height, images.width, ch, out)
}

/// A fixed `out_dim x in_dim` Gaussian matrix with entry variance `1 / in_dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomProjection {
    in_dim: usize,
    out_dim: usize,
    weights: Vec<f64>,
}

impl RandomProjection {
    pub fn new(in_dim: usize, out_dim: usize, rng: RngSpec) -> Result<Self> {
        if in_dim == 0 || out_dim == 0 {
            return Err(Error::InvalidInput(
                "projection dims must be positive".into(),
            ));
        }
        let std = 1.0 / (in_dim as f64).sqrt();
        let mut s = rng.generator();
        let weights = (0..in_dim * out_dim).map(|_| std * s.normal()).collect();
        Ok(Self {
            in_dim,
            out_dim,
            weights,
        })
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn apply_into(&self, input: &[f64], out: &mut [f64]) {
        assert_eq!(input.len(), self.in_dim);
        assert_eq!(out.len(), self.out_dim);
        for (o, w) in out.iter_mut().zip(self.weights.chunks_exact(self.in_dim)) {
            *o = w.iter().zip(input).map(|(a, b)| a * b).sum();
        }
    }

    pub fn apply(&self, input: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.out_dim];
        self.apply_into(input, &mut out);
        out
    }
}

/// Flattens each image to `[0, 1]` floats and projects it with a
/// [`RandomProjection`] drawn once from `rng`.
pub fn random_embed(images: &ImageTensor, out_dim: usize, rng: RngSpec) -> Result<PointCloud> {
    let proj = RandomProjection::new(images.image_len(), out_dim, rng)?;
    let mut out = vec![0.0; images.count * out_dim];
    par::for_each_chunk_mut(&mut out, out_dim, |i, row| {
        let flat: Vec<f64> = images
            .image(i)
            .iter()
            .map(|&p| f64::from(p) / 255.0)
            .collect();
        proj.apply_into(&flat, row);
    });
    PointCloud::new(out, images.count, out_dim)
}
