//! Simulated digital spoofing clues: self-blended forgeries and additive
//! Gaussian noise.
//!
//! A forgery is built from one live image `I`:
//!
//! 1. `O1` = `I` after a hue shift, a brightness scale and a down/up-sample
//!    round trip (the pseudo source);
//! 2. `O2` = `I` after a small scale + translation (the target);
//! 3. the face mask gets the same scale + translation as `O2`, then an
//!    elastic deformation and a blur;
//! 4. `O1 * mask + O2 * (1 - mask)`.

use crate::error::{Error, Result};
use crate::imgcore::{
    affine_transform, affine_transform_raster, blur_samples, gaussian_blur, gaussian_kernel,
    quantize, remap_bilinear, resize_bilinear, round_half_away, Affine, ImageBuffer, SoftMask,
};
use crate::rng::{RngStream, UniformRange};
use crate::spsc::{adjust_brightness, adjust_hue};

pub const SOURCE_HUE_RANGE: UniformRange = UniformRange::new(-0.1, 0.1);
pub const SOURCE_BRIGHTNESS_RANGE: UniformRange = UniformRange::new(0.8, 1.2);
pub const DOWNSCALE_RANGE: UniformRange = UniformRange::new(0.25, 0.5);
pub const TARGET_SCALE_RANGE: UniformRange = UniformRange::new(0.95, 1.05);
/// Horizontal translation as a fraction of the image width.
pub const TARGET_SHIFT_X_RANGE: UniformRange = UniformRange::new(-0.03, 0.03);
/// Vertical translation as a fraction of the image height.
pub const TARGET_SHIFT_Y_RANGE: UniformRange = UniformRange::new(-0.015, 0.015);
pub const ELASTIC_ALPHA_RANGE: UniformRange = UniformRange::new(0.0, 50.0);
pub const ELASTIC_SIGMA_RANGE: UniformRange = UniformRange::new(4.0, 8.0);
pub const MASK_BLUR_RANGE: UniformRange = UniformRange::new(0.0, 7.0);
pub const NOISE_SIGMA_RANGE: UniformRange = UniformRange::new(5.0, 25.0);

/// Semi-axes of the fallback face ellipse, as fractions of width and height.
const FACE_SEMI_AXES: (f64, f64) = (0.30, 0.40);

fn check(name: &str, v: f64, range: UniformRange) -> Result<()> {
    if range.contains(v) {
        Ok(())
    } else {
        Err(Error::invalid_param(format!("{name} {v} outside {range}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceTransformParams {
    pub hue_shift: f64,
    pub brightness: f64,
    pub downscale: f64,
}

impl SourceTransformParams {
    pub fn validate(&self) -> Result<()> {
        check("source hue shift", self.hue_shift, SOURCE_HUE_RANGE)?;
        check(
            "source brightness",
            self.brightness,
            SOURCE_BRIGHTNESS_RANGE,
        )?;
        check("downscale factor", self.downscale, DOWNSCALE_RANGE)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TargetTransformParams {
    pub scale_x: f64,
    pub scale_y: f64,
    pub translate_x: f64,
    pub translate_y: f64,
}

impl TargetTransformParams {
    pub const IDENTITY: TargetTransformParams = TargetTransformParams {
        scale_x: 1.0,
        scale_y: 1.0,
        translate_x: 0.0,
        translate_y: 0.0,
    };

    /// Translations are bounded relative to the image they apply to.
    pub fn validate(&self, width: u32, height: u32) -> Result<()> {
        check("target scale_x", self.scale_x, TARGET_SCALE_RANGE)?;
        check("target scale_y", self.scale_y, TARGET_SCALE_RANGE)?;
        let w = f64::from(width);
        let h = f64::from(height);
        let bound_x = UniformRange::new(TARGET_SHIFT_X_RANGE.lo * w, TARGET_SHIFT_X_RANGE.hi * w);
        let bound_y = UniformRange::new(TARGET_SHIFT_Y_RANGE.lo * h, TARGET_SHIFT_Y_RANGE.hi * h);
        check("target translate_x", self.translate_x, bound_x)?;
        check("target translate_y", self.translate_y, bound_y)
    }

    pub fn affine(&self) -> Affine {
        Affine {
            scale_x: self.scale_x,
            scale_y: self.scale_y,
            translate_x: self.translate_x,
            translate_y: self.translate_y,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaskDeformParams {
    pub elastic_alpha: f64,
    pub elastic_sigma: f64,
    pub blur_sigma: f64,
}

impl MaskDeformParams {
    pub const IDENTITY: MaskDeformParams = MaskDeformParams {
        elastic_alpha: 0.0,
        elastic_sigma: 4.0,
        blur_sigma: 0.0,
    };

    pub fn validate(&self) -> Result<()> {
        check("elastic alpha", self.elastic_alpha, ELASTIC_ALPHA_RANGE)?;
        check("elastic sigma", self.elastic_sigma, ELASTIC_SIGMA_RANGE)?;
        check("mask blur sigma", self.blur_sigma, MASK_BLUR_RANGE)
    }
}

/// Sampling ranges for the digital-clue family. Translation ranges are
/// fractions of the image size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SdscRanges {
    pub hue: UniformRange,
    pub brightness: UniformRange,
    pub downscale: UniformRange,
    pub scale: UniformRange,
    pub translate_x: UniformRange,
    pub translate_y: UniformRange,
    pub elastic_alpha: UniformRange,
    pub elastic_sigma: UniformRange,
    pub blur_sigma: UniformRange,
}

impl Default for SdscRanges {
    fn default() -> Self {
        Self {
            hue: SOURCE_HUE_RANGE,
            brightness: SOURCE_BRIGHTNESS_RANGE,
            downscale: DOWNSCALE_RANGE,
            scale: TARGET_SCALE_RANGE,
            translate_x: TARGET_SHIFT_X_RANGE,
            translate_y: TARGET_SHIFT_Y_RANGE,
            elastic_alpha: ELASTIC_ALPHA_RANGE,
            elastic_sigma: ELASTIC_SIGMA_RANGE,
            blur_sigma: MASK_BLUR_RANGE,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SdscParams {
    pub source: SourceTransformParams,
    pub target: TargetTransformParams,
    pub deform: MaskDeformParams,
}

impl SdscRanges {
    /// Draw order: hue, brightness, downscale, scale_x, scale_y, translate_x,
    /// translate_y, elastic alpha, elastic sigma, blur sigma.
    pub fn sample(&self, rng: &mut RngStream, width: u32, height: u32) -> SdscParams {
        let source = SourceTransformParams {
            hue_shift: self.hue.sample(rng),
            brightness: self.brightness.sample(rng),
            downscale: self.downscale.sample(rng),
        };
        let target = TargetTransformParams {
            scale_x: self.scale.sample(rng),
            scale_y: self.scale.sample(rng),
            translate_x: self.translate_x.sample(rng) * f64::from(width),
            translate_y: self.translate_y.sample(rng) * f64::from(height),
        };
        let deform = MaskDeformParams {
            elastic_alpha: self.elastic_alpha.sample(rng),
            elastic_sigma: self.elastic_sigma.sample(rng),
            blur_sigma: self.blur_sigma.sample(rng),
        };
        SdscParams {
            source,
            target,
            deform,
        }
    }
}

/// Size of the downsampled intermediate: `round(dim * factor)`, at least 1.
pub fn downscaled_size(width: u32, height: u32, factor: f64) -> (u32, u32) {
    let scale = |d: u32| (round_half_away(f64::from(d) * factor) as u32).max(1);
    (scale(width), scale(height))
}

/// Hue shift, brightness scale, then a bilinear down/up-sample round trip.
/// Each stage is quantized to 8 bits.
pub fn source_color_transform(
    img: &ImageBuffer,
    params: &SourceTransformParams,
) -> Result<ImageBuffer> {
    params.validate()?;
    let hued = adjust_hue(img, params.hue_shift);
    let bright = adjust_brightness(&hued, params.brightness);
    let (dw, dh) = downscaled_size(img.width(), img.height(), params.downscale);
    let small = resize_bilinear(&bright, dw, dh)?;
    resize_bilinear(&small, img.width(), img.height())
}

pub fn target_spatial_transform(
    img: &ImageBuffer,
    params: &TargetTransformParams,
) -> Result<ImageBuffer> {
    params.validate(img.width(), img.height())?;
    affine_transform(img, params.affine())
}

/// Smoothed random displacement field in `[-alpha, alpha]`.
fn displacement_field(
    rng: &mut RngStream,
    width: usize,
    height: usize,
    taps: &[f64],
    alpha: f64,
) -> Vec<f64> {
    let noise: Vec<f64> = (0..width * height)
        .map(|_| rng.uniform(-1.0, 1.0))
        .collect();
    let mut field = blur_samples(&noise, width, height, 1, taps);
    let peak = field.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if peak > 0.0 {
        let k = alpha / peak;
        field.iter_mut().for_each(|v| *v *= k);
    }
    field
}

/// Elastic deformation followed by a blur.
///
/// Two noise fields (dx then dy, row-major) are drawn uniformly from
/// `[-1, 1]`, blurred with `elastic_sigma`, normalized to unit max-abs and
/// scaled by `elastic_alpha`. The mask is resampled at `(x + dx, y + dy)`
/// and blurred with `blur_sigma`. No draws are made when `elastic_alpha`
/// is zero.
pub fn deform_mask(
    mask: &SoftMask,
    params: &MaskDeformParams,
    rng: &mut RngStream,
) -> Result<SoftMask> {
    params.validate()?;
    let mut out = mask.clone();
    if params.elastic_alpha > 0.0 {
        let (w, h) = (mask.width() as usize, mask.height() as usize);
        let taps = gaussian_kernel(params.elastic_sigma)?;
        let dx = displacement_field(rng, w, h, &taps, params.elastic_alpha);
        let dy = displacement_field(rng, w, h, &taps, params.elastic_alpha);
        out = remap_bilinear(mask, |x, y| {
            let i = y as usize * w + x as usize;
            (f64::from(x) + dx[i], f64::from(y) + dy[i])
        });
    }
    gaussian_blur(&out, params.blur_sigma)
}

/// Centered axis-aligned ellipse with semi-axes `0.30 * width` and
/// `0.40 * height`, tested at pixel centers.
pub fn default_face_mask(width: u32, height: u32) -> SoftMask {
    let (w, h) = (f64::from(width), f64::from(height));
    let (ax, ay) = (FACE_SEMI_AXES.0 * w, FACE_SEMI_AXES.1 * h);
    SoftMask::from_fn(width, height, |x, y| {
        let u = (f64::from(x) + 0.5 - w / 2.0) / ax;
        let v = (f64::from(y) + 0.5 - h / 2.0) / ay;
        if u * u + v * v <= 1.0 {
            1.0
        } else {
            0.0
        }
    })
}

/// Pseudo source, target and final mask, all the same size.
#[derive(Debug, Clone, PartialEq)]
pub struct BlendTriple {
    o1: ImageBuffer,
    o2: ImageBuffer,
    mask: SoftMask,
}

impl BlendTriple {
    pub fn new(o1: ImageBuffer, o2: ImageBuffer, mask: SoftMask) -> Result<Self> {
        if o1.dimensions() != o2.dimensions() || o1.dimensions() != mask.dimensions() {
            return Err(Error::invalid_param(format!(
                "blend inputs differ in size: o1 {:?}, o2 {:?}, mask {:?}",
                o1.dimensions(),
                o2.dimensions(),
                mask.dimensions()
            )));
        }
        Ok(Self { o1, o2, mask })
    }

    pub fn o1(&self) -> &ImageBuffer {
        &self.o1
    }

    pub fn o2(&self) -> &ImageBuffer {
        &self.o2
    }

    pub fn mask(&self) -> &SoftMask {
        &self.mask
    }

    /// `o1 * m + o2 * (1 - m)` per channel.
    pub fn blend(&self) -> ImageBuffer {
        blend_unchecked(&self.o1, &self.o2, &self.mask)
    }
}

fn blend_unchecked(o1: &ImageBuffer, o2: &ImageBuffer, mask: &SoftMask) -> ImageBuffer {
    let mut data = vec![0; o1.as_raw().len()];
    let sources = o1.as_raw().chunks_exact(3).zip(o2.as_raw().chunks_exact(3));
    for ((dst, (a, b)), &m) in data.chunks_exact_mut(3).zip(sources).zip(mask.as_slice()) {
        for c in 0..3 {
            dst[c] = quantize(f64::from(a[c]) * m + f64::from(b[c]) * (1.0 - m));
        }
    }
    ImageBuffer::new(o1.width(), o1.height(), data).expect("shape preserved")
}

pub fn blend(o1: &ImageBuffer, o2: &ImageBuffer, mask: &SoftMask) -> Result<ImageBuffer> {
    if o1.dimensions() != o2.dimensions() || o1.dimensions() != mask.dimensions() {
        return Err(Error::invalid_param(format!(
            "blend inputs differ in size: o1 {:?}, o2 {:?}, mask {:?}",
            o1.dimensions(),
            o2.dimensions(),
            mask.dimensions()
        )));
    }
    Ok(blend_unchecked(o1, o2, mask))
}

/// Adds `sigma * N(0, 1)` to every channel, one draw per sample in
/// row-major, channel-interleaved order.
pub fn gauss_noise(img: &ImageBuffer, sigma: f64, rng: &mut RngStream) -> Result<ImageBuffer> {
    if !sigma.is_finite() || sigma < 0.0 {
        return Err(Error::invalid_param(format!(
            "noise sigma must be finite and non-negative, got {sigma}"
        )));
    }
    let data = img
        .as_raw()
        .iter()
        .map(|&v| quantize(f64::from(v) + sigma * rng.standard_normal()))
        .collect();
    ImageBuffer::new(img.width(), img.height(), data)
}

/// Intermediate products of one forgery, for inspection and testing.
#[derive(Debug, Clone)]
pub struct SdscOutput {
    pub params: SdscParams,
    pub triple: BlendTriple,
    pub forgery: ImageBuffer,
}

/// Builds a forgery with fixed parameters; `rng` feeds only the elastic
/// deformation.
pub fn apply_sdsc_params(
    img: &ImageBuffer,
    mask: Option<&SoftMask>,
    params: &SdscParams,
    rng: &mut RngStream,
) -> Result<SdscOutput> {
    let (w, h) = img.dimensions();
    let face = match mask {
        Some(m) if m.dimensions() != (w, h) => {
            return Err(Error::invalid_param(format!(
                "mask is {:?} but image is {:?}",
                m.dimensions(),
                (w, h)
            )))
        }
        Some(m) => m.clone(),
        None => default_face_mask(w, h),
    };
    let o1 = source_color_transform(img, &params.source)?;
    let o2 = target_spatial_transform(img, &params.target)?;
    let aligned = affine_transform_raster(&face, params.target.affine())?;
    let final_mask = deform_mask(&aligned, &params.deform, rng)?;
    let triple = BlendTriple::new(o1, o2, final_mask)?;
    let forgery = triple.blend();
    Ok(SdscOutput {
        params: *params,
        triple,
        forgery,
    })
}

pub fn apply_sdsc_with(
    img: &ImageBuffer,
    mask: Option<&SoftMask>,
    rng: &mut RngStream,
    ranges: &SdscRanges,
) -> Result<SdscOutput> {
    let params = ranges.sample(rng, img.width(), img.height());
    apply_sdsc_params(img, mask, &params, rng)
}

/// Random self-blended forgery with the default ranges. Without a mask the
/// default face ellipse is used.
pub fn apply_sdsc(
    img: &ImageBuffer,
    mask: Option<&SoftMask>,
    rng: &mut RngStream,
) -> Result<ImageBuffer> {
    Ok(apply_sdsc_with(img, mask, rng, &SdscRanges::default())?.forgery)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gradient(w: u32, h: u32) -> ImageBuffer {
        ImageBuffer::from_fn(w, h, |x, y| [(x * 8) as u8, (y * 8) as u8, 128])
    }

    #[test]
    fn blend_endpoints() {
        let a = gradient(6, 5);
        let b = ImageBuffer::filled(6, 5, [3, 200, 17]);
        assert_eq!(blend(&a, &b, &SoftMask::filled(6, 5, 1.0)).unwrap(), a);
        assert_eq!(blend(&a, &b, &SoftMask::filled(6, 5, 0.0)).unwrap(), b);
        let half = blend(
            &ImageBuffer::filled(1, 1, [200; 3]),
            &ImageBuffer::filled(1, 1, [100; 3]),
            &SoftMask::filled(1, 1, 0.5),
        )
        .unwrap();
        assert_eq!(half.pixel(0, 0), [150; 3]);
    }

    #[test]
    fn blend_size_mismatch() {
        let a = gradient(4, 4);
        let b = gradient(4, 3);
        assert!(matches!(
            blend(&a, &b, &SoftMask::filled(4, 4, 0.5)),
            Err(Error::InvalidParameter(_))
        ));
        assert!(blend(&a, &a, &SoftMask::filled(3, 4, 0.5)).is_err());
    }

    #[test]
    fn source_transform_constant_and_brightness() {
        let c = ImageBuffer::filled(16, 16, [100, 100, 100]);
        let ident = SourceTransformParams {
            hue_shift: 0.0,
            brightness: 1.0,
            downscale: 0.5,
        };
        assert_eq!(source_color_transform(&c, &ident).unwrap(), c);
        let bright = SourceTransformParams {
            brightness: 1.2,
            ..ident
        };
        let out = source_color_transform(&c, &bright).unwrap();
        assert!(out.pixels().all(|p| p == [120; 3]));
        let bad = SourceTransformParams {
            downscale: 0.9,
            ..ident
        };
        assert!(source_color_transform(&c, &bad).is_err());
    }

    #[test]
    fn target_identity_and_bounds() {
        let img = gradient(20, 20);
        assert_eq!(
            target_spatial_transform(&img, &TargetTransformParams::IDENTITY).unwrap(),
            img
        );
        let too_far = TargetTransformParams {
            translate_x: 2.0,
            ..TargetTransformParams::IDENTITY
        };
        // 3% of 20 px is 0.6 px
        assert!(target_spatial_transform(&img, &too_far).is_err());
    }

    #[test]
    fn deform_identity() {
        let m = default_face_mask(32, 24);
        let out = deform_mask(&m, &MaskDeformParams::IDENTITY, &mut RngStream::new(1)).unwrap();
        assert_eq!(out, m);
    }

    #[test]
    fn deform_stays_in_unit_range() {
        let m = default_face_mask(40, 40);
        let p = MaskDeformParams {
            elastic_alpha: 50.0,
            elastic_sigma: 4.0,
            blur_sigma: 7.0,
        };
        let out = deform_mask(&m, &p, &mut RngStream::new(2)).unwrap();
        assert!(out.as_slice().iter().all(|w| (0.0..=1.0).contains(w)));
        assert!(deform_mask(
            &m,
            &MaskDeformParams {
                elastic_sigma: 1.0,
                ..p
            },
            &mut RngStream::new(2)
        )
        .is_err());
    }

    #[test]
    fn face_mask_center_and_corner() {
        let m = default_face_mask(64, 48);
        assert_eq!(m.get(32, 24), 1.0);
        assert_eq!(m.get(0, 0), 0.0);
        assert_eq!(m.get(63, 47), 0.0);
    }

    #[test]
    fn noise_zero_sigma_identity() {
        let img = gradient(5, 5);
        assert_eq!(gauss_noise(&img, 0.0, &mut RngStream::new(3)).unwrap(), img);
        assert!(gauss_noise(&img, -1.0, &mut RngStream::new(3)).is_err());
    }

    #[test]
    fn sdsc_mask_size_mismatch() {
        let img = gradient(16, 16);
        let m = SoftMask::filled(8, 8, 1.0);
        assert!(matches!(
            apply_sdsc(&img, Some(&m), &mut RngStream::new(4)),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn sdsc_deterministic() {
        let img = gradient(32, 32);
        let a = apply_sdsc(&img, None, &mut RngStream::new(11)).unwrap();
        let b = apply_sdsc(&img, None, &mut RngStream::new(11)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dimensions(), img.dimensions());
    }
}
