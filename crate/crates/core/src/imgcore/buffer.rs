use crate::error::{Error, Result};

/// Converts a real intensity to `u8`: clamp to `[0, 255]`, then round half
/// away from zero. NaN maps to 0.
#[inline]
pub fn quantize(v: f64) -> u8 {
    if v.is_nan() {
        return 0;
    }
    let v = v.clamp(0.0, 255.0);
    let t = v as u32;
    (t + u32::from(v - t as f64 >= 0.5)) as u8
}

// The helpers below avoid libm calls on targets without SSE4.1. They are
// exact for finite `|v| < 2^52`.

/// Rounds half away from zero.
#[inline]
pub(crate) fn round_half_away(v: f64) -> f64 {
    let t = v as i64;
    let f = v - t as f64;
    (t + i64::from(f >= 0.5) - i64::from(f <= -0.5)) as f64
}

#[inline]
pub(crate) fn floor_small(v: f64) -> f64 {
    let t = v as i64;
    (t - i64::from(t as f64 > v)) as f64
}

/// `v mod m` in `[0, m)` for positive `m`, matching `f64::rem_euclid`.
#[inline]
pub(crate) fn wrap(v: f64, m: f64) -> f64 {
    if (0.0..m).contains(&v) {
        return v;
    }
    let r = v - floor_small(v / m) * m;
    if (0.0..m).contains(&r) {
        r
    } else {
        v.rem_euclid(m)
    }
}

/// 8-bit RGB raster, row-major and channel-interleaved.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ImageBuffer {
    width: u32,
    height: u32,
    data: Vec<u8>,
}

impl ImageBuffer {
    pub const CHANNELS: usize = 3;

    pub fn new(width: u32, height: u32, data: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::invalid_param(format!(
                "image dimensions must be positive, got {width}x{height}"
            )));
        }
        let expected = width as usize * height as usize * Self::CHANNELS;
        if data.len() != expected {
            return Err(Error::invalid_param(format!(
                "image data has {} bytes, expected {expected}",
                data.len()
            )));
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub fn filled(width: u32, height: u32, rgb: [u8; 3]) -> Self {
        Self::from_fn(width, height, |_, _| rgb)
    }

    /// Builds an image from a per-pixel function. Panics on zero dimensions.
    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> [u8; 3]) -> Self {
        assert!(width > 0 && height > 0, "image dimensions must be positive");
        let mut data = Vec::with_capacity(width as usize * height as usize * 3);
        for y in 0..height {
            for x in 0..width {
                data.extend_from_slice(&f(x, y));
            }
        }
        Self {
            width,
            height,
            data,
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn dimensions(&self) -> (u32, u32) {
        (self.width, self.height)
    }

    pub fn as_raw(&self) -> &[u8] {
        &self.data
    }

    pub fn into_raw(self) -> Vec<u8> {
        self.data
    }

    #[inline]
    fn offset(&self, x: u32, y: u32) -> usize {
        (y as usize * self.width as usize + x as usize) * 3
    }

    pub fn pixel(&self, x: u32, y: u32) -> [u8; 3] {
        let i = self.offset(x, y);
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }

    pub fn put_pixel(&mut self, x: u32, y: u32, rgb: [u8; 3]) {
        let i = self.offset(x, y);
        self.data[i..i + 3].copy_from_slice(&rgb);
    }

    pub fn pixels(&self) -> impl Iterator<Item = [u8; 3]> + '_ {
        self.data.chunks_exact(3).map(|p| [p[0], p[1], p[2]])
    }

    pub fn to_float(&self) -> FloatImage {
        FloatImage {
            width: self.width,
            height: self.height,
            channels: 3,
            data: self.data.iter().map(|&v| f64::from(v)).collect(),
        }
    }

    /// Per-channel `(min, max)` over all pixels.
    pub fn channel_range(&self) -> [(u8, u8); 3] {
        let mut out = [(u8::MAX, u8::MIN); 3];
        for p in self.pixels() {
            for c in 0..3 {
                out[c].0 = out[c].0.min(p[c]);
                out[c].1 = out[c].1.max(p[c]);
            }
        }
        out
    }
}

impl From<image::RgbImage> for ImageBuffer {
    fn from(img: image::RgbImage) -> Self {
        let (width, height) = img.dimensions();
        Self {
            width,
            height,
            data: img.into_raw(),
        }
    }
}

impl From<ImageBuffer> for image::RgbImage {
    fn from(img: ImageBuffer) -> Self {
        image::RgbImage::from_raw(img.width, img.height, img.data)
            .expect("ImageBuffer length invariant")
    }
}

/// Real-valued raster used for intermediate computations.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatImage {
    width: u32,
    height: u32,
    channels: usize,
    data: Vec<f64>,
}

impl FloatImage {
    pub fn new(width: u32, height: u32, channels: usize, data: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 || channels == 0 {
            return Err(Error::invalid_param(
                "float image dimensions must be positive",
            ));
        }
        if data.len() != width as usize * height as usize * channels {
            return Err(Error::invalid_param(format!(
                "float image data has {} samples, expected {}",
                data.len(),
                width as usize * height as usize * channels
            )));
        }
        Ok(Self {
            width,
            height,
            channels,
            data,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn get(&self, x: u32, y: u32, c: usize) -> f64 {
        self.data[(y as usize * self.width as usize + x as usize) * self.channels + c]
    }

    /// Clamp-and-round back to 8 bits. Requires three channels.
    pub fn to_image_buffer(&self) -> Result<ImageBuffer> {
        if self.channels != 3 {
            return Err(Error::invalid_param(format!(
                "cannot quantize a {}-channel image to RGB",
                self.channels
            )));
        }
        Ok(ImageBuffer {
            width: self.width,
            height: self.height,
            data: self.data.iter().map(|&v| quantize(v)).collect(),
        })
    }
}

/// Single-channel blending weights in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SoftMask {
    width: u32,
    height: u32,
    data: Vec<f64>,
}

impl SoftMask {
    pub fn new(width: u32, height: u32, data: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::invalid_param("mask dimensions must be positive"));
        }
        if data.len() != width as usize * height as usize {
            return Err(Error::invalid_param(format!(
                "mask has {} weights, expected {}",
                data.len(),
                width as usize * height as usize
            )));
        }
        if let Some(bad) = data.iter().find(|w| !(0.0..=1.0).contains(*w)) {
            return Err(Error::invalid_param(format!(
                "mask weight {bad} outside [0, 1]"
            )));
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub fn filled(width: u32, height: u32, weight: f64) -> Self {
        Self::from_fn(width, height, |_, _| weight)
    }

    /// Builds a mask from a per-pixel function; weights are clamped to `[0, 1]`.
    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> f64) -> Self {
        assert!(width > 0 && height > 0, "mask dimensions must be positive");
        let mut data = Vec::with_capacity(width as usize * height as usize);
        for y in 0..height {
            for x in 0..width {
                data.push(clamp_unit(f(x, y)));
            }
        }
        Self {
            width,
            height,
            data,
        }
    }

    /// Loads weights from an 8-bit single-channel raster as `value / 255`.
    pub fn from_luma(img: &image::GrayImage) -> Self {
        let (width, height) = img.dimensions();
        Self {
            width,
            height,
            data: img.as_raw().iter().map(|&v| f64::from(v) / 255.0).collect(),
        }
    }

    pub fn to_luma(&self) -> image::GrayImage {
        let raw = self.data.iter().map(|&w| quantize(w * 255.0)).collect();
        image::GrayImage::from_raw(self.width, self.height, raw).expect("mask length invariant")
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn dimensions(&self) -> (u32, u32) {
        (self.width, self.height)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn get(&self, x: u32, y: u32) -> f64 {
        self.data[y as usize * self.width as usize + x as usize]
    }

    /// Sum of all weights.
    pub fn mass(&self) -> f64 {
        self.data.iter().sum()
    }
}

#[inline]
fn clamp_unit(w: f64) -> f64 {
    if w.is_nan() {
        0.0
    } else {
        w.clamp(0.0, 1.0)
    }
}

/// Common view over real-valued rasters so blur and warps serve both
/// [`FloatImage`] and [`SoftMask`].
pub trait Raster: Sized {
    fn width(&self) -> u32;
    fn height(&self) -> u32;
    fn channels(&self) -> usize;
    fn samples(&self) -> &[f64];
    /// Rebuilds a raster of the same shape from new samples.
    fn with_samples(&self, samples: Vec<f64>) -> Self;
}

impl Raster for FloatImage {
    fn width(&self) -> u32 {
        self.width
    }
    fn height(&self) -> u32 {
        self.height
    }
    fn channels(&self) -> usize {
        self.channels
    }
    fn samples(&self) -> &[f64] {
        &self.data
    }
    fn with_samples(&self, samples: Vec<f64>) -> Self {
        debug_assert_eq!(samples.len(), self.data.len());
        Self {
            data: samples,
            ..*self
        }
    }
}

impl Raster for SoftMask {
    fn width(&self) -> u32 {
        self.width
    }
    fn height(&self) -> u32 {
        self.height
    }
    fn channels(&self) -> usize {
        1
    }
    fn samples(&self) -> &[f64] {
        &self.data
    }
    fn with_samples(&self, samples: Vec<f64>) -> Self {
        debug_assert_eq!(samples.len(), self.data.len());
        Self {
            width: self.width,
            height: self.height,
            data: samples.into_iter().map(clamp_unit).collect(),
        }
    }
}

/// Face bounding box; may extend past the image, clamped where used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BBox {
    pub x: i64,
    pub y: i64,
    pub w: u32,
    pub h: u32,
}

impl BBox {
    pub fn new(x: i64, y: i64, w: u32, h: u32) -> Result<Self> {
        if w == 0 || h == 0 {
            return Err(Error::invalid_param(format!(
                "bbox extent must be positive, got {w}x{h}"
            )));
        }
        Ok(Self { x, y, w, h })
    }
}

/// In-bounds crop window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rect {
    pub x: u32,
    pub y: u32,
    pub w: u32,
    pub h: u32,
}
