//! Simulated physical spoofing clues: color jitter (print attacks) and a
//! polar moiré warp (replay attacks).

use crate::error::{Error, Result};
use crate::imgcore::{
    hsv_to_rgb_pixel, quantize, rgb_to_hsv_pixel, round_half_away, wrap, ImageBuffer,
};
use crate::rng::{RngStream, UniformRange};

/// Jitter strength: factors are drawn from `[1 - 0.4, 1 + 0.4]` and the hue
/// shift from `[-0.4, 0.4]` of the hue circle.
pub const JITTER_STRENGTH: f64 = 0.4;
pub const FACTOR_RANGE: UniformRange =
    UniformRange::new(1.0 - JITTER_STRENGTH, 1.0 + JITTER_STRENGTH);
pub const HUE_RANGE: UniformRange = UniformRange::new(-JITTER_STRENGTH, JITTER_STRENGTH);
/// Moiré intensity, in radians of extra rotation per pixel of radius.
pub const MOIRE_DEGREE_RANGE: UniformRange = UniformRange::new(0.0005, 0.01);

/// Weight of the source pixel in the moiré blend; the warped pixel gets the rest.
const MOIRE_SOURCE_WEIGHT: f64 = 0.8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JitterOp {
    Brightness,
    Contrast,
    Saturation,
    Hue,
}

impl JitterOp {
    pub const ALL: [JitterOp; 4] = [
        JitterOp::Brightness,
        JitterOp::Contrast,
        JitterOp::Saturation,
        JitterOp::Hue,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColorJitterParams {
    pub brightness: f64,
    pub contrast: f64,
    pub saturation: f64,
    pub hue_shift: f64,
    pub op_order: [JitterOp; 4],
}

impl ColorJitterParams {
    pub const IDENTITY: ColorJitterParams = ColorJitterParams {
        brightness: 1.0,
        contrast: 1.0,
        saturation: 1.0,
        hue_shift: 0.0,
        op_order: JitterOp::ALL,
    };

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("brightness", self.brightness),
            ("contrast", self.contrast),
            ("saturation", self.saturation),
        ] {
            if !FACTOR_RANGE.contains(v) {
                return Err(Error::invalid_param(format!(
                    "{name} factor {v} outside {FACTOR_RANGE}"
                )));
            }
        }
        if !HUE_RANGE.contains(self.hue_shift) {
            return Err(Error::invalid_param(format!(
                "hue shift {} outside {HUE_RANGE}",
                self.hue_shift
            )));
        }
        if !JitterOp::ALL.iter().all(|op| self.op_order.contains(op)) {
            return Err(Error::invalid_param(format!(
                "jitter order {:?} is not a permutation",
                self.op_order
            )));
        }
        Ok(())
    }
}

/// Sampling ranges for the physical-clue family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpscRanges {
    pub brightness: UniformRange,
    pub contrast: UniformRange,
    pub saturation: UniformRange,
    pub hue: UniformRange,
    pub moire_degree: UniformRange,
}

impl Default for SpscRanges {
    fn default() -> Self {
        Self {
            brightness: FACTOR_RANGE,
            contrast: FACTOR_RANGE,
            saturation: FACTOR_RANGE,
            hue: HUE_RANGE,
            moire_degree: MOIRE_DEGREE_RANGE,
        }
    }
}

impl SpscRanges {
    /// Draws brightness, contrast, saturation, hue, then the sub-op order.
    pub fn sample_jitter(&self, rng: &mut RngStream) -> ColorJitterParams {
        let brightness = self.brightness.sample(rng);
        let contrast = self.contrast.sample(rng);
        let saturation = self.saturation.sample(rng);
        let hue_shift = self.hue.sample(rng);
        let perm = rng.permutation(4);
        ColorJitterParams {
            brightness,
            contrast,
            saturation,
            hue_shift,
            op_order: [0, 1, 2, 3].map(|i| JitterOp::ALL[perm[i]]),
        }
    }

    /// Draws the mode first, then jitter parameters (if used), then the
    /// moiré degree (if used).
    pub fn sample(&self, rng: &mut RngStream) -> SpscParams {
        let mode = match rng.uniform_int(0, 2) {
            0 => SpscMode::JitterOnly,
            1 => SpscMode::MoireOnly,
            _ => SpscMode::Both,
        };
        let jitter = mode.uses_jitter().then(|| self.sample_jitter(rng));
        let moire_degree = mode.uses_moire().then(|| self.moire_degree.sample(rng));
        SpscParams {
            mode,
            jitter,
            moire_degree,
        }
    }
}

pub fn sample_color_jitter(rng: &mut RngStream) -> ColorJitterParams {
    SpscRanges::default().sample_jitter(rng)
}

pub fn sample_moire_degree(rng: &mut RngStream) -> f64 {
    MOIRE_DEGREE_RANGE.sample(rng)
}

fn map_pixels(img: &ImageBuffer, f: impl Fn([u8; 3]) -> [u8; 3]) -> ImageBuffer {
    let mut data = vec![0; img.as_raw().len()];
    for (dst, src) in data.chunks_exact_mut(3).zip(img.as_raw().chunks_exact(3)) {
        dst.copy_from_slice(&f([src[0], src[1], src[2]]));
    }
    ImageBuffer::new(img.width(), img.height(), data).expect("shape preserved")
}

fn map_hsv(img: &ImageBuffer, f: impl Fn([f64; 3]) -> [f64; 3]) -> ImageBuffer {
    map_pixels(img, |p| {
        let hsv = f(rgb_to_hsv_pixel(p.map(|c| f64::from(c) / 255.0)));
        hsv_to_rgb_pixel(hsv).map(|c| quantize(c * 255.0))
    })
}

/// `pixel <- clamp(factor * pixel)`.
pub fn adjust_brightness(img: &ImageBuffer, factor: f64) -> ImageBuffer {
    map_pixels(img, |p| p.map(|c| quantize(factor * f64::from(c))))
}

/// Luma weights used for the contrast pivot.
pub fn luma([r, g, b]: [u8; 3]) -> f64 {
    0.299 * f64::from(r) + 0.587 * f64::from(g) + 0.114 * f64::from(b)
}

/// Scales every channel about the mean luma of the image.
pub fn adjust_contrast(img: &ImageBuffer, factor: f64) -> ImageBuffer {
    let n = f64::from(img.width()) * f64::from(img.height());
    let mean = img.pixels().map(luma).sum::<f64>() / n;
    map_pixels(img, |p| {
        p.map(|c| quantize(mean + factor * (f64::from(c) - mean)))
    })
}

pub fn adjust_saturation(img: &ImageBuffer, factor: f64) -> ImageBuffer {
    map_hsv(img, |[h, s, v]| [h, (factor * s).clamp(0.0, 1.0), v])
}

/// Rotates hue by `shift` of the full circle.
pub fn adjust_hue(img: &ImageBuffer, shift: f64) -> ImageBuffer {
    map_hsv(img, |[h, s, v]| [wrap(h + shift, 1.0), s, v])
}

/// Applies the four jitter sub-ops in `params.op_order`, quantizing to 8 bits
/// after each one.
pub fn color_jitter(img: &ImageBuffer, params: &ColorJitterParams) -> Result<ImageBuffer> {
    params.validate()?;
    let mut out = img.clone();
    for op in params.op_order {
        out = match op {
            JitterOp::Brightness => adjust_brightness(&out, params.brightness),
            JitterOp::Contrast => adjust_contrast(&out, params.contrast),
            JitterOp::Saturation => adjust_saturation(&out, params.saturation),
            JitterOp::Hue => adjust_hue(&out, params.hue_shift),
        };
    }
    Ok(out)
}

/// Polar swirl used by the moiré simulation.
///
/// Each pixel is rotated about the center by `degree * rho` radians, where
/// `rho` is its distance from the center. The center is the pixel
/// `(width / 2, height / 2)` under integer division.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoireWarp {
    pub width: u32,
    pub height: u32,
    pub center_x: f64,
    pub center_y: f64,
    pub degree: f64,
}

impl MoireWarp {
    pub fn new(width: u32, height: u32, degree: f64) -> Result<Self> {
        if !degree.is_finite() || degree < 0.0 {
            return Err(Error::invalid_param(format!(
                "moiré degree must be finite and non-negative, got {degree}"
            )));
        }
        Ok(Self {
            width,
            height,
            center_x: f64::from(width / 2),
            center_y: f64::from(height / 2),
            degree,
        })
    }

    /// Unrounded warped coordinate of pixel `(x, y)`.
    pub fn warp(&self, x: u32, y: u32) -> (f64, f64) {
        let offset_x = f64::from(x) - self.center_x;
        let offset_y = f64::from(y) - self.center_y;
        let theta = offset_y.atan2(offset_x);
        let rho = offset_x.hypot(offset_y);
        let angle = theta + self.degree * rho;
        (
            self.center_x + rho * angle.cos(),
            self.center_y + rho * angle.sin(),
        )
    }

    /// Source pixel read for `(x, y)`: the warped coordinate rounded to the
    /// nearest pixel and clipped to the image.
    pub fn source_pixel(&self, x: u32, y: u32) -> (u32, u32) {
        let (nx, ny) = self.warp(x, y);
        let clip = |v: f64, max: u32| round_half_away(v).clamp(0.0, f64::from(max)) as u32;
        (clip(nx, self.width - 1), clip(ny, self.height - 1))
    }
}

/// `dst = 0.8 * src + 0.2 * src[warped]`, per channel.
pub fn moire_pattern(img: &ImageBuffer, degree: f64) -> Result<ImageBuffer> {
    let warp = MoireWarp::new(img.width(), img.height(), degree)?;
    let mut out = img.clone();
    for y in 0..img.height() {
        for x in 0..img.width() {
            let (sx, sy) = warp.source_pixel(x, y);
            let src = img.pixel(x, y);
            let moved = img.pixel(sx, sy);
            let blended = [0, 1, 2].map(|c| {
                quantize(
                    MOIRE_SOURCE_WEIGHT * f64::from(src[c])
                        + (1.0 - MOIRE_SOURCE_WEIGHT) * f64::from(moved[c]),
                )
            });
            out.put_pixel(x, y, blended);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpscMode {
    JitterOnly,
    MoireOnly,
    Both,
}

impl SpscMode {
    pub fn uses_jitter(self) -> bool {
        matches!(self, SpscMode::JitterOnly | SpscMode::Both)
    }

    pub fn uses_moire(self) -> bool {
        matches!(self, SpscMode::MoireOnly | SpscMode::Both)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpscParams {
    pub mode: SpscMode,
    pub jitter: Option<ColorJitterParams>,
    pub moire_degree: Option<f64>,
}

/// Jitter first, then moiré, for whichever are present.
pub fn apply_spsc_params(img: &ImageBuffer, params: &SpscParams) -> Result<ImageBuffer> {
    let mut out = match &params.jitter {
        Some(j) => color_jitter(img, j)?,
        None => img.clone(),
    };
    if let Some(degree) = params.moire_degree {
        out = moire_pattern(&out, degree)?;
    }
    Ok(out)
}

pub fn apply_spsc_with(
    img: &ImageBuffer,
    rng: &mut RngStream,
    ranges: &SpscRanges,
) -> Result<(ImageBuffer, SpscParams)> {
    let params = ranges.sample(rng);
    Ok((apply_spsc_params(img, &params)?, params))
}

/// Random physical-clue augmentation with the default ranges.
pub fn apply_spsc(img: &ImageBuffer, rng: &mut RngStream) -> ImageBuffer {
    apply_spsc_with(img, rng, &SpscRanges::default())
        .expect("default ranges produce valid parameters")
        .0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_image() -> ImageBuffer {
        ImageBuffer::from_fn(8, 8, |x, y| {
            [(x * 30) as u8, (y * 30) as u8, ((x * y * 7) % 256) as u8]
        })
    }

    fn within_one(a: &ImageBuffer, b: &ImageBuffer) -> bool {
        a.as_raw()
            .iter()
            .zip(b.as_raw())
            .all(|(x, y)| x.abs_diff(*y) <= 1)
    }

    #[test]
    fn identity_jitter_any_order() {
        let img = sample_image();
        let mut rng = RngStream::new(9);
        for _ in 0..6 {
            let mut p = ColorJitterParams::IDENTITY;
            p.op_order = sample_color_jitter(&mut rng).op_order;
            assert!(within_one(&color_jitter(&img, &p).unwrap(), &img));
        }
    }

    #[test]
    fn brightness_linear() {
        let img = ImageBuffer::filled(2, 2, [100, 100, 100]);
        let p = ColorJitterParams {
            brightness: 1.4,
            ..ColorJitterParams::IDENTITY
        };
        let out = color_jitter(&img, &p).unwrap();
        assert!(out.pixels().all(|px| px == [140, 140, 140]));
    }

    #[test]
    fn rejects_out_of_range() {
        let img = sample_image();
        let bad = [
            ColorJitterParams {
                brightness: 1.5,
                ..ColorJitterParams::IDENTITY
            },
            ColorJitterParams {
                hue_shift: -0.41,
                ..ColorJitterParams::IDENTITY
            },
            ColorJitterParams {
                op_order: [JitterOp::Hue; 4],
                ..ColorJitterParams::IDENTITY
            },
        ];
        for p in bad {
            assert!(matches!(
                color_jitter(&img, &p),
                Err(Error::InvalidParameter(_))
            ));
        }
    }

    #[test]
    fn contrast_zero_spread_pivots_on_mean() {
        let img = ImageBuffer::from_fn(2, 1, |x, _| if x == 0 { [0; 3] } else { [200; 3] });
        let out = adjust_contrast(&img, 0.6);
        // mean luma 100: 100 + 0.6 * (0 - 100) = 40, 100 + 0.6 * 100 = 160
        assert_eq!(out.pixel(0, 0), [40; 3]);
        assert_eq!(out.pixel(1, 0), [160; 3]);
    }

    #[test]
    fn moire_zero_degree_identity() {
        let img = sample_image();
        assert_eq!(moire_pattern(&img, 0.0).unwrap(), img);
    }

    #[test]
    fn moire_center_fixed() {
        let img = ImageBuffer::from_fn(7, 5, |x, y| [(x * 37) as u8, (y * 51) as u8, 9]);
        let out = moire_pattern(&img, 0.01).unwrap();
        assert_eq!(out.pixel(3, 2), img.pixel(3, 2));
    }

    #[test]
    fn moire_negative_degree() {
        assert!(moire_pattern(&sample_image(), -0.001).is_err());
    }

    #[test]
    fn spsc_deterministic() {
        let img = sample_image();
        let a = apply_spsc(&img, &mut RngStream::new(5));
        let b = apply_spsc(&img, &mut RngStream::new(5));
        assert_eq!(a, b);
        assert_eq!(a.dimensions(), img.dimensions());
    }
}
