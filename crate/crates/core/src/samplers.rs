//! Deterministic samplers for the synthetic supports.

use std::fmt;
use std::str::FromStr;

use crate::cloud::PointCloud;
use crate::error::{Error, Result};
use crate::rng::{RngSpec, Sampler};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SupportFamily {
    /// Uniform on the sphere of radius `scale`.
    SphereSurface,
    /// Uniform in the ball of radius `scale`.
    Ball,
    /// Uniform on the boundary of the cube with half-edge `scale`.
    CubeSurface,
    /// Isotropic normal with standard deviation `scale`.
    Gaussian,
}

impl SupportFamily {
    pub fn key(self) -> &'static str {
        match self {
            SupportFamily::SphereSurface => "sphere_surface",
            SupportFamily::Ball => "ball",
            SupportFamily::CubeSurface => "cube_surface",
            SupportFamily::Gaussian => "gaussian",
        }
    }
}

impl FromStr for SupportFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sphere_surface" | "sphere" => Ok(SupportFamily::SphereSurface),
            "ball" => Ok(SupportFamily::Ball),
            "cube_surface" | "cube" => Ok(SupportFamily::CubeSurface),
            "gaussian" => Ok(SupportFamily::Gaussian),
            other => Err(Error::InvalidInput(format!(
                "unknown support family {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportSpec {
    family: SupportFamily,
    scale: f64,
    dim: usize,
}

impl SupportSpec {
    pub fn new(family: SupportFamily, scale: f64, dim: usize) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::InvalidInput(format!(
                "scale must be positive, got {scale}"
            )));
        }
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be at least 1".into()));
        }
        Ok(Self { family, scale, dim })
    }

    pub fn family(&self) -> SupportFamily {
        self.family
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

fn unit_direction(s: &mut Sampler, out: &mut [f64]) {
    loop {
        let mut norm2 = 0.0;
        for v in out.iter_mut() {
            *v = s.normal();
            norm2 += *v * *v;
        }
        if norm2 > 0.0 {
            let norm = norm2.sqrt();
            out.iter_mut().for_each(|v| *v /= norm);
            return;
        }
    }
}

fn sample_row(spec: &SupportSpec, s: &mut Sampler, out: &mut [f64]) {
    let scale = spec.scale;
    match spec.family {
        SupportFamily::SphereSurface => {
            unit_direction(s, out);
            out.iter_mut().for_each(|v| *v *= scale);
        }
        SupportFamily::Ball => {
            unit_direction(s, out);
            let radial = scale * libm::pow(s.uniform_open(), 1.0 / spec.dim as f64);
            out.iter_mut().for_each(|v| *v *= radial);
        }
        SupportFamily::CubeSurface => {
            for v in out.iter_mut() {
                *v = scale * (2.0 * s.uniform_open() - 1.0);
            }
            let face = s.below(2 * spec.dim as u64) as usize;
            out[face / 2] = if face.is_multiple_of(2) {
                scale
            } else {
                -scale
            };
        }
        SupportFamily::Gaussian => {
            for v in out.iter_mut() {
                *v = scale * s.normal();
            }
        }
    }
}

/// Draws `n` points from `spec` on the stream named by `rng`.
pub fn sample(spec: &SupportSpec, n: usize, rng: RngSpec) -> Result<PointCloud> {
    if n == 0 {
        return Err(Error::InvalidInput(
            "sample count must be at least 1".into(),
        ));
    }
    let mut s = rng.generator();
    let mut data = vec![0.0; n * spec.dim];
    for row in data.chunks_exact_mut(spec.dim) {
        sample_row(spec, &mut s, row);
    }
    Ok(PointCloud::from_raw(data, n, spec.dim))
}

/// Experiment families: a reference support and a generated support scaled by `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairFamily {
    /// Unit sphere vs. sphere of radius `r`.
    Sphere,
    /// Unit half-edge cube surface vs. cube surface of half-edge `r`.
    Cube,
    /// Standard normal cloud vs. sphere of radius `r * sqrt(d)`.
    Gaussian,
}

impl PairFamily {
    pub const ALL: [PairFamily; 3] = [PairFamily::Sphere, PairFamily::Cube, PairFamily::Gaussian];

    pub fn key(self) -> &'static str {
        match self {
            PairFamily::Sphere => "sphere",
            PairFamily::Cube => "cube",
            PairFamily::Gaussian => "gaussian",
        }
    }

    /// Support specs for the reference and the generated cloud.
    pub fn specs(self, d: usize, r: f64) -> Result<(SupportSpec, SupportSpec)> {
        Ok(match self {
            PairFamily::Sphere => (
                SupportSpec::new(SupportFamily::SphereSurface, 1.0, d)?,
                SupportSpec::new(SupportFamily::SphereSurface, r, d)?,
            ),
            PairFamily::Cube => (
                SupportSpec::new(SupportFamily::CubeSurface, 1.0, d)?,
                SupportSpec::new(SupportFamily::CubeSurface, r, d)?,
            ),
            PairFamily::Gaussian => (
                SupportSpec::new(SupportFamily::Gaussian, 1.0, d)?,
                SupportSpec::new(SupportFamily::SphereSurface, r * (d as f64).sqrt(), d)?,
            ),
        })
    }
}

impl fmt::Display for PairFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for PairFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sphere" | "sphere_surface" => Ok(PairFamily::Sphere),
            "cube" | "cube_surface" => Ok(PairFamily::Cube),
            "gaussian" => Ok(PairFamily::Gaussian),
            other => Err(Error::InvalidInput(format!(
                "unknown family {other:?} (expected sphere, cube or gaussian)"
            ))),
        }
    }
}

/// Reference and generated clouds of `n` points each, on independent substreams of `rng`.
pub fn scaled_pair(
    family: PairFamily,
    d: usize,
    r: f64,
    n: usize,
    rng: RngSpec,
) -> Result<(PointCloud, PointCloud)> {
    let (real_spec, gen_spec) = family.specs(d, r)?;
    let real = sample(&real_spec, n, rng.substream(0))?;
    let gen = sample(&gen_spec, n, rng.substream(1))?;
    Ok((real, gen))
}
