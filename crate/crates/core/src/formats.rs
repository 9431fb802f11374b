//! Binary containers for feature matrices (`FV32`) and image batches (`IMU8`).
//!
//! All integers are little-endian.
//!
//! ```text
//! FV32: "FV32" | u32 version=1 | u64 count | u32 dim | count*dim f32, row-major
//! IMU8: "IMU8" | u32 version=1 | u64 count | u32 height | u32 width | u32 channels | raw u8
//! ```

use std::fs;
use std::path::Path;

use crate::cloud::PointCloud;
use crate::error::{Error, Result};
use crate::transforms::ImageTensor;

pub const FEATURE_MAGIC: &[u8; 4] = b"FV32";
pub const IMAGE_MAGIC: &[u8; 4] = b"IMU8";
pub const FORMAT_VERSION: u32 = 1;

fn format_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Format {
        offset: offset as u64,
        message: message.into(),
    }
}

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(buf: &'a [u8]) -> Self {
        Self { buf, pos: 0 }
    }

    fn take(&mut self, len: usize, what: &str) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(len).filter(|&e| e <= self.buf.len());
        match end {
            Some(end) => {
                let s = &self.buf[self.pos..end];
                self.pos = end;
                Ok(s)
            }
            None => Err(format_err(
                self.buf.len(),
                format!("truncated {what}: need {len} bytes at offset {}", self.pos),
            )),
        }
    }

    fn u32(&mut self, what: &str) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4, what)?.try_into().unwrap()))
    }

    fn u64(&mut self, what: &str) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8, what)?.try_into().unwrap()))
    }

    fn header(&mut self, magic: &[u8; 4]) -> Result<()> {
        let got = self.take(4, "magic")?;
        if got != magic {
            return Err(format_err(
                0,
                format!(
                    "bad magic {:?}, expected {:?}",
                    String::from_utf8_lossy(got),
                    String::from_utf8_lossy(magic)
                ),
            ));
        }
        let version = self.u32("version")?;
        if version != FORMAT_VERSION {
            return Err(format_err(4, format!("unsupported version {version}")));
        }
        Ok(())
    }

    fn finish(&self) -> Result<()> {
        if self.pos != self.buf.len() {
            return Err(format_err(
                self.pos,
                format!("{} trailing bytes", self.buf.len() - self.pos),
            ));
        }
        Ok(())
    }
}

fn dim_to_usize(v: u64, offset: usize, what: &str) -> Result<usize> {
    usize::try_from(v).map_err(|_| format_err(offset, format!("{what} {v} does not fit in memory")))
}

/// Serializes a cloud as FV32. Coordinates are narrowed to `f32`.
pub fn encode_features(cloud: &PointCloud) -> Result<Vec<u8>> {
    let dim = u32::try_from(cloud.d())
        .map_err(|_| Error::InvalidInput(format!("dimension {} exceeds u32", cloud.d())))?;
    let mut out = Vec::with_capacity(20 + cloud.as_slice().len() * 4);
    out.extend_from_slice(FEATURE_MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.extend_from_slice(&(cloud.n() as u64).to_le_bytes());
    out.extend_from_slice(&dim.to_le_bytes());
    for &v in cloud.as_slice() {
        let narrow = v as f32;
        if !narrow.is_finite() {
            return Err(Error::InvalidInput(format!("value {v} overflows f32")));
        }
        out.extend_from_slice(&narrow.to_le_bytes());
    }
    Ok(out)
}

pub fn decode_features(bytes: &[u8]) -> Result<PointCloud> {
    let mut cur = Cursor::new(bytes);
    cur.header(FEATURE_MAGIC)?;
    let n = dim_to_usize(cur.u64("count")?, 8, "count")?;
    let d = cur.u32("dim")? as usize;
    if n == 0 {
        return Err(format_err(8, "count must be at least 1"));
    }
    if d == 0 {
        return Err(format_err(16, "dim must be at least 1"));
    }
    let len = n
        .checked_mul(d)
        .and_then(|v| v.checked_mul(4))
        .ok_or_else(|| format_err(8, format!("{n} x {d} values overflow")))?;
    let start = cur.pos;
    let payload = cur.take(len, "feature payload")?;
    cur.finish()?;
    let mut data = Vec::with_capacity(n * d);
    for (i, chunk) in payload.chunks_exact(4).enumerate() {
        let v = f32::from_le_bytes(chunk.try_into().unwrap());
        if !v.is_finite() {
            return Err(format_err(start + 4 * i, format!("non-finite value {v}")));
        }
        data.push(f64::from(v));
    }
    PointCloud::new(data, n, d)
}

pub fn read_features(path: impl AsRef<Path>) -> Result<PointCloud> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_features(&bytes).map_err(|e| e.at_path(path))
}

pub fn write_features(cloud: &PointCloud, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, encode_features(cloud)?).map_err(|e| Error::io(path, e))
}

pub fn encode_images(images: &ImageTensor) -> Result<Vec<u8>> {
    let to_u32 = |v: usize, what: &str| {
        u32::try_from(v).map_err(|_| Error::InvalidInput(format!("{what} {v} exceeds u32")))
    };
    let mut out = Vec::with_capacity(28 + images.pixels().len());
    out.extend_from_slice(IMAGE_MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.extend_from_slice(&(images.count() as u64).to_le_bytes());
    out.extend_from_slice(&to_u32(images.height(), "height")?.to_le_bytes());
    out.extend_from_slice(&to_u32(images.width(), "width")?.to_le_bytes());
    out.extend_from_slice(&to_u32(images.channels(), "channels")?.to_le_bytes());
    out.extend_from_slice(images.pixels());
    Ok(out)
}

pub fn decode_images(bytes: &[u8]) -> Result<ImageTensor> {
    let mut cur = Cursor::new(bytes);
    cur.header(IMAGE_MAGIC)?;
    let count = dim_to_usize(cur.u64("count")?, 8, "count")?;
    let height = cur.u32("height")? as usize;
    let width = cur.u32("width")? as usize;
    let channels = cur.u32("channels")? as usize;
    if count == 0 || height == 0 || width == 0 {
        return Err(format_err(8, "count, height and width must be at least 1"));
    }
    if channels != 1 && channels != 3 {
        return Err(format_err(
            24,
            format!("channels must be 1 or 3, got {channels}"),
        ));
    }
    let len = [count, height, width, channels]
        .iter()
        .try_fold(1usize, |acc, &v| acc.checked_mul(v))
        .ok_or_else(|| format_err(8, "image payload size overflows"))?;
    let payload = cur.take(len, "image payload")?;
    cur.finish()?;
    ImageTensor::new(count, height, width, channels, payload.to_vec())
}

pub fn read_images(path: impl AsRef<Path>) -> Result<ImageTensor> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_images(&bytes).map_err(|e| e.at_path(path))
}

pub fn write_images(images: &ImageTensor, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, encode_images(images)?).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_cloud() -> PointCloud {
        PointCloud::new(vec![0.5, -1.25, 3.0, 1e-3_f32 as f64], 2, 2).unwrap()
    }

    fn offset_of(err: Error) -> u64 {
        match err {
            Error::Format { offset, .. } => offset,
            other => panic!("expected format error, got {other:?}"),
        }
    }

    #[test]
    fn feature_header_layout() {
        let bytes = encode_features(&small_cloud()).unwrap();
        assert_eq!(&bytes[..4], b"FV32");
        assert_eq!(bytes[4..8], 1u32.to_le_bytes());
        assert_eq!(bytes[8..16], 2u64.to_le_bytes());
        assert_eq!(bytes[16..20], 2u32.to_le_bytes());
        assert_eq!(bytes[20..24], 0.5f32.to_le_bytes());
        assert_eq!(bytes.len(), 20 + 16);
        assert_eq!(decode_features(&bytes).unwrap(), small_cloud());
    }

    #[test]
    fn feature_errors() {
        let good = encode_features(&small_cloud()).unwrap();

        let mut bad = good.clone();
        bad[0] = b'X';
        assert_eq!(offset_of(decode_features(&bad).unwrap_err()), 0);

        let mut bad = good.clone();
        bad[4] = 2;
        assert_eq!(offset_of(decode_features(&bad).unwrap_err()), 4);

        assert_eq!(offset_of(decode_features(&good[..30]).unwrap_err()), 30);
        assert_eq!(offset_of(decode_features(&good[..10]).unwrap_err()), 10);

        let mut zero = good[..20].to_vec();
        zero[8..16].copy_from_slice(&0u64.to_le_bytes());
        assert_eq!(offset_of(decode_features(&zero).unwrap_err()), 8);

        let mut huge = good.clone();
        huge[8..16].copy_from_slice(&u64::MAX.to_le_bytes());
        assert!(matches!(decode_features(&huge), Err(Error::Format { .. })));

        let mut trailing = good.clone();
        trailing.push(0);
        assert_eq!(offset_of(decode_features(&trailing).unwrap_err()), 36);

        let mut nan = good;
        nan[24..28].copy_from_slice(&f32::NAN.to_le_bytes());
        assert_eq!(offset_of(decode_features(&nan).unwrap_err()), 24);
    }

    #[test]
    fn image_layout_and_errors() {
        let img = ImageTensor::new(2, 1, 2, 3, (0..12).collect()).unwrap();
        let bytes = encode_images(&img).unwrap();
        assert_eq!(&bytes[..4], b"IMU8");
        assert_eq!(bytes.len(), 28 + 12);
        assert_eq!(decode_images(&bytes).unwrap(), img);

        let mut bad = bytes.clone();
        bad[24..28].copy_from_slice(&2u32.to_le_bytes());
        assert_eq!(offset_of(decode_images(&bad).unwrap_err()), 24);
        assert!(decode_images(&bytes[..35]).is_err());
        assert!(decode_features(&bytes).is_err());
    }
}
