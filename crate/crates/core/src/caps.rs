//! Hyperspherical cap fractions and Monte Carlo checks of nearest-neighbor
//! distance concentration on the unit sphere.
//!
//! A cap at colatitude `phi` is the part of the ball (or sphere) beyond the
//! hyperplane at height `R cos(phi)`. As fractions of the whole:
//!
//! * volume: `1/2 * I_{sin^2 phi}((d + 1) / 2, 1/2)`
//! * area:   `1/2 * I_{sin^2 phi}((d - 1) / 2, 1/2)`

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::knn::neighbor_extremes;
use crate::rng::RngSpec;
use crate::samplers::{sample, SupportFamily, SupportSpec};
use crate::special::{gamma, reg_inc_beta};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapQuery {
    d: usize,
    phi: f64,
}

impl CapQuery {
    pub fn new(d: usize, phi: f64) -> Result<Self> {
        if d < 2 {
            return Err(Error::Domain(format!(
                "cap dimension must be >= 2, got {d}"
            )));
        }
        if !(phi > 0.0 && phi <= FRAC_PI_2) {
            return Err(Error::Domain(format!(
                "colatitude must lie in (0, pi/2], got {phi}"
            )));
        }
        Ok(Self { d, phi })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    fn sin2(&self) -> f64 {
        if self.phi == FRAC_PI_2 {
            1.0
        } else {
            let s = self.phi.sin();
            s * s
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapKind {
    Volume,
    Area,
}

impl CapKind {
    /// `d + 1` for volume, `d - 1` for area.
    fn order(self, d: usize) -> f64 {
        match self {
            CapKind::Volume => d as f64 + 1.0,
            CapKind::Area => d as f64 - 1.0,
        }
    }
}

/// Cap volume over ball volume.
pub fn cap_volume_fraction(q: CapQuery) -> Result<f64> {
    Ok(0.5 * reg_inc_beta(q.sin2(), CapKind::Volume.order(q.d) / 2.0, 0.5)?)
}

/// Cap surface area over sphere surface area.
pub fn cap_area_fraction(q: CapQuery) -> Result<f64> {
    Ok(0.5 * reg_inc_beta(q.sin2(), CapKind::Area.order(q.d) / 2.0, 0.5)?)
}

/// Leading-order large-`d` approximation of a cap fraction,
/// `C * sqrt(sin(phi)^(2m) / m)` with `m = d + 1` (volume) or `m = d - 1` (area).
///
/// Keeping the leading series term of the incomplete beta integral and the
/// Stirling form `B(m/2, 1/2) ~ Γ(1/2) (m/2)^(-1/2)` gives
/// `I ~ sqrt(2) / Γ(1/2) * sqrt(sin^(2m) / m)`, so for the half-normalized
/// fraction `C = 1 / (sqrt(2) Γ(1/2)) = 1 / sqrt(2 pi)`. The dropped factor is
/// `1 / cos(phi)`, so this underestimates and only tracks trends in `d`.
pub fn cap_fraction_approx(q: CapQuery, kind: CapKind) -> Result<f64> {
    if q.phi == FRAC_PI_2 || q.phi.sin() >= 1.0 {
        return Err(Error::Domain(
            "cap approximation requires sin(phi) < 1".into(),
        ));
    }
    let m = kind.order(q.d);
    let c = 1.0 / (2.0f64.sqrt() * gamma(0.5));
    Ok(c * (m * q.phi.sin().ln() - 0.5 * m.ln()).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceEvent {
    /// Some point has its nearest neighbor at distance `>= t`.
    MinExceeds,
    /// Every point has its farthest neighbor at distance `<= t`.
    MaxBelow,
}

impl FromStr for DistanceEvent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min_exceeds" | "min-exceeds" => Ok(DistanceEvent::MinExceeds),
            "max_below" | "max-below" => Ok(DistanceEvent::MaxBelow),
            other => Err(Error::InvalidInput(format!(
                "unknown event {other:?} (expected min_exceeds or max_below)"
            ))),
        }
    }
}

impl fmt::Display for DistanceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DistanceEvent::MinExceeds => "min_exceeds",
            DistanceEvent::MaxBelow => "max_below",
        })
    }
}

/// Monte Carlo frequency of a [`DistanceEvent`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EventEstimate {
    pub frequency: f64,
    pub hits: usize,
    pub trials: usize,
    pub n: usize,
    pub d: usize,
    pub threshold_factor: f64,
    pub event: DistanceEvent,
}

fn check_mc_args(d: usize, n: usize, t: f64, trials: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InsufficientSamples { k: 1, n });
    }
    if d == 0 || trials == 0 {
        return Err(Error::InvalidInput("d and trials must be positive".into()));
    }
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "threshold must be >= 0, got {t}"
        )));
    }
    Ok(())
}

/// Nearest and farthest neighbor distances of `n` uniform points on the unit sphere.
fn sphere_extremes(d: usize, n: usize, rng: RngSpec) -> Result<Vec<(f64, f64)>> {
    let spec = SupportSpec::new(SupportFamily::SphereSurface, 1.0, d)?;
    let cloud = sample(&spec, n, rng)?;
    Ok(neighbor_extremes(&cloud)?
        .into_iter()
        .map(|(lo, hi)| (lo.sqrt(), hi.sqrt()))
        .collect())
}

/// Frequency over `trials` draws of `n` points on the unit `(d-1)`-sphere
/// with which `event` occurs at distance threshold `t`.
pub fn nn_distance_event(
    d: usize,
    n: usize,
    t: f64,
    event: DistanceEvent,
    trials: usize,
    rng: RngSpec,
) -> Result<EventEstimate> {
    check_mc_args(d, n, t, trials)?;
    let mut hits = 0;
    for trial in 0..trials {
        let ext = sphere_extremes(d, n, rng.substream(trial as u64))?;
        let occurred = match event {
            DistanceEvent::MinExceeds => ext.iter().any(|&(lo, _)| lo >= t),
            DistanceEvent::MaxBelow => ext.iter().all(|&(_, hi)| hi <= t),
        };
        hits += usize::from(occurred);
    }
    Ok(EventEstimate {
        frequency: hits as f64 / trials as f64,
        hits,
        trials,
        n,
        d,
        threshold_factor: t,
        event,
    })
}

/// Mean over trials of the fraction of points whose nearest neighbor is at
/// distance `>= t` on the unit sphere.
pub fn nn_fraction(d: usize, n: usize, t: f64, trials: usize, rng: RngSpec) -> Result<f64> {
    check_mc_args(d, n, t, trials)?;
    let mut count = 0usize;
    for trial in 0..trials {
        let ext = sphere_extremes(d, n, rng.substream(trial as u64))?;
        count += ext.iter().filter(|&&(lo, _)| lo >= t).count();
    }
    Ok(count as f64 / (n * trials) as f64)
}
