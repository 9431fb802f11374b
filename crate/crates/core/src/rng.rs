//! Seeded random streams.
//!
//! Uniforms come from ChaCha8 keyed by `seed` with the ChaCha stream id set to
//! `stream`, so any `(seed, stream)` pair names an independent, platform
//! independent sequence. Normal variates use the Box-Muller transform with
//! `libm` transcendentals, keeping the output bit-identical across targets
//! (including wasm).

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Identifies one reproducible random sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngSpec {
    pub seed: u64,
    pub stream: u64,
}

impl RngSpec {
    pub const fn new(seed: u64, stream: u64) -> Self {
        Self { seed, stream }
    }

    /// A child stream, deterministically derived from this one and `tag`.
    pub fn substream(self, tag: u64) -> Self {
        Self {
            seed: self.seed,
            stream: mix(self.stream ^ mix(tag.wrapping_add(0x9e37_79b9_7f4a_7c15))),
        }
    }

    /// A child stream derived from several tags in order.
    pub fn substream_path(self, tags: &[u64]) -> Self {
        tags.iter().fold(self, |s, &t| s.substream(t))
    }

    pub fn generator(self) -> Sampler {
        Sampler::new(self)
    }
}

/// splitmix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

const TWO_POW_M53: f64 = 1.0 / (1u64 << 53) as f64;

/// Draws uniforms and normals from one [`RngSpec`].
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
    spare_normal: Option<f64>,
}

impl Sampler {
    pub fn new(spec: RngSpec) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        rng.set_stream(spec.stream);
        Self {
            rng,
            spare_normal: None,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform on the open interval (0, 1): `(m + 0.5) / 2^53` for a 53-bit `m`.
    pub fn uniform_open(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * TWO_POW_M53
    }

    /// Uniform integer in `0..n` by rejection, `n > 0`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        let zone = u64::MAX - (u64::MAX % n);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % n;
            }
        }
    }

    /// Standard normal via Box-Muller; the second variate of each pair is cached.
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        let u1 = self.uniform_open();
        let u2 = self.uniform_open();
        let radius = (-2.0 * libm::log(u1)).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        self.spare_normal = Some(radius * libm::sin(theta));
        radius * libm::cos(theta)
    }
}
