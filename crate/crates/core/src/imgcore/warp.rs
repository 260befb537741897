//! Bilinear resampling with replicate borders.

use super::buffer::{quantize, ImageBuffer, Raster};
use crate::error::{Error, Result};

/// Scale about the image center followed by a translation.
///
/// Output pixel `(x, y)` samples the input at
/// `((x - cx) / scale_x + cx - translate_x, (y - cy) / scale_y + cy - translate_y)`
/// where `(cx, cy) = ((w - 1) / 2, (h - 1) / 2)` is the center of the pixel grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Affine {
    pub scale_x: f64,
    pub scale_y: f64,
    pub translate_x: f64,
    pub translate_y: f64,
}

impl Affine {
    pub const IDENTITY: Affine = Affine {
        scale_x: 1.0,
        scale_y: 1.0,
        translate_x: 0.0,
        translate_y: 0.0,
    };

    pub fn translate(dx: f64, dy: f64) -> Self {
        Self {
            translate_x: dx,
            translate_y: dy,
            ..Self::IDENTITY
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = |s: f64| s > 0.0 && s.is_finite();
        if !ok(self.scale_x) || !ok(self.scale_y) {
            return Err(Error::invalid_param(format!(
                "affine scale factors must be positive, got ({}, {})",
                self.scale_x, self.scale_y
            )));
        }
        if !self.translate_x.is_finite() || !self.translate_y.is_finite() {
            return Err(Error::invalid_param("affine translation must be finite"));
        }
        Ok(())
    }

    /// Input coordinate sampled by output pixel `(x, y)`.
    #[inline]
    pub fn source_of(&self, x: f64, y: f64, width: u32, height: u32) -> (f64, f64) {
        let cx = (f64::from(width) - 1.0) / 2.0;
        let cy = (f64::from(height) - 1.0) / 2.0;
        (
            (x - cx) / self.scale_x + cx - self.translate_x,
            (y - cy) / self.scale_y + cy - self.translate_y,
        )
    }
}

/// Samples every channel of a row-major raster at a real coordinate.
/// Coordinates outside the grid are clamped to the border.
#[inline]
pub fn bilinear_sample(
    samples: &[f64],
    width: usize,
    height: usize,
    channels: usize,
    x: f64,
    y: f64,
    out: &mut [f64],
) {
    let x = if x.is_nan() {
        0.0
    } else {
        x.clamp(0.0, width as f64 - 1.0)
    };
    let y = if y.is_nan() {
        0.0
    } else {
        y.clamp(0.0, height as f64 - 1.0)
    };
    let x0 = x as usize;
    let y0 = y as usize;
    let x1 = (x0 + 1).min(width - 1);
    let y1 = (y0 + 1).min(height - 1);
    let fx = x - x0 as f64;
    let fy = y - y0 as f64;
    let i00 = (y0 * width + x0) * channels;
    let i10 = (y0 * width + x1) * channels;
    let i01 = (y1 * width + x0) * channels;
    let i11 = (y1 * width + x1) * channels;
    for (c, o) in out.iter_mut().enumerate().take(channels) {
        let top = samples[i00 + c] * (1.0 - fx) + samples[i10 + c] * fx;
        let bottom = samples[i01 + c] * (1.0 - fx) + samples[i11 + c] * fx;
        *o = top * (1.0 - fy) + bottom * fy;
    }
}

/// Clamped neighbor indices and weight along one axis, as in
/// [`bilinear_sample`].
#[derive(Clone, Copy)]
struct AxisTap {
    i0: usize,
    i1: usize,
    f: f64,
}

impl AxisTap {
    fn new(v: f64, n: usize) -> Self {
        let v = if v.is_nan() {
            0.0
        } else {
            v.clamp(0.0, n as f64 - 1.0)
        };
        let i0 = v as usize;
        Self {
            i0,
            i1: (i0 + 1).min(n - 1),
            f: v - i0 as f64,
        }
    }
}

/// Bilinear resampling where the source column depends only on the output
/// column and the source row only on the output row.
fn remap_separable<O>(
    samples: &[f64],
    (width, height, channels): (usize, usize, usize),
    xs: impl Iterator<Item = f64>,
    ys: impl Iterator<Item = f64>,
    emit: impl Fn(f64) -> O,
) -> Vec<O> {
    let cols: Vec<AxisTap> = xs.map(|x| AxisTap::new(x, width)).collect();
    let rows: Vec<AxisTap> = ys.map(|y| AxisTap::new(y, height)).collect();
    let stride = width * channels;
    let mut out = Vec::with_capacity(cols.len() * rows.len() * channels);
    for r in &rows {
        let top = &samples[r.i0 * stride..(r.i0 + 1) * stride];
        let bottom = &samples[r.i1 * stride..(r.i1 + 1) * stride];
        for col in &cols {
            let (a, b) = (col.i0 * channels, col.i1 * channels);
            for c in 0..channels {
                let t = top[a + c] * (1.0 - col.f) + top[b + c] * col.f;
                let u = bottom[a + c] * (1.0 - col.f) + bottom[b + c] * col.f;
                out.push(emit(t * (1.0 - r.f) + u * r.f));
            }
        }
    }
    out
}

/// Resamples a raster of the same size through a coordinate map.
pub fn remap_bilinear<T: Raster>(img: &T, mut source_of: impl FnMut(u32, u32) -> (f64, f64)) -> T {
    let (w, h, c) = (img.width(), img.height(), img.channels());
    let src = img.samples();
    let mut out = vec![0.0; src.len()];
    let mut px = vec![0.0; c];
    for y in 0..h {
        for x in 0..w {
            let (sx, sy) = source_of(x, y);
            bilinear_sample(src, w as usize, h as usize, c, sx, sy, &mut px);
            let i = (y as usize * w as usize + x as usize) * c;
            out[i..i + c].copy_from_slice(&px);
        }
    }
    img.with_samples(out)
}

pub fn affine_transform_raster<T: Raster>(img: &T, t: Affine) -> Result<T> {
    t.validate()?;
    let (w, h) = (img.width(), img.height());
    let xs = (0..w).map(|x| t.source_of(f64::from(x), 0.0, w, h).0);
    let ys = (0..h).map(|y| t.source_of(0.0, f64::from(y), w, h).1);
    let dims = (w as usize, h as usize, img.channels());
    Ok(img.with_samples(remap_separable(img.samples(), dims, xs, ys, |v| v)))
}

/// Same-size affine warp of an 8-bit image; see [`Affine`] for the mapping.
pub fn affine_transform(img: &ImageBuffer, t: Affine) -> Result<ImageBuffer> {
    t.validate()?;
    let (w, h) = img.dimensions();
    let xs = (0..w).map(|x| t.source_of(f64::from(x), 0.0, w, h).0);
    let ys = (0..h).map(|y| t.source_of(0.0, f64::from(y), w, h).1);
    let src = img.to_float();
    let dims = (w as usize, h as usize, 3);
    ImageBuffer::new(
        w,
        h,
        remap_separable(src.as_slice(), dims, xs, ys, quantize),
    )
}

/// Bilinear resize using pixel-center alignment:
/// output `x` samples input `(x + 0.5) * in_w / out_w - 0.5`.
pub fn resize_bilinear(img: &ImageBuffer, width: u32, height: u32) -> Result<ImageBuffer> {
    if width == 0 || height == 0 {
        return Err(Error::invalid_param(format!(
            "resize target must be positive, got {width}x{height}"
        )));
    }
    let src = img.to_float();
    let sx = f64::from(img.width()) / f64::from(width);
    let sy = f64::from(img.height()) / f64::from(height);
    let xs = (0..width).map(|x| (f64::from(x) + 0.5) * sx - 0.5);
    let ys = (0..height).map(|y| (f64::from(y) + 0.5) * sy - 0.5);
    let dims = (img.width() as usize, img.height() as usize, 3);
    let data = remap_separable(src.as_slice(), dims, xs, ys, quantize);
    ImageBuffer::new(width, height, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imgcore::SoftMask;

    fn ramp(w: u32, h: u32) -> ImageBuffer {
        ImageBuffer::from_fn(w, h, |x, y| [(x * 10) as u8, (y * 7) as u8, (x + y) as u8])
    }

    #[test]
    fn identity_is_exact() {
        let img = ramp(9, 6);
        assert_eq!(affine_transform(&img, Affine::IDENTITY).unwrap(), img);
    }

    #[test]
    fn integer_shift() {
        let img = ramp(12, 5);
        let out = affine_transform(&img, Affine::translate(2.0, 0.0)).unwrap();
        for y in 0..5 {
            for x in 2..12 {
                assert_eq!(out.pixel(x, y), img.pixel(x - 2, y));
            }
            // replicate border on the left edge
            assert_eq!(out.pixel(0, y), img.pixel(0, y));
        }
    }

    #[test]
    fn rejects_bad_scale() {
        let img = ramp(3, 3);
        for s in [0.0, -1.0, f64::NAN] {
            let t = Affine {
                scale_x: s,
                ..Affine::IDENTITY
            };
            assert!(matches!(
                affine_transform(&img, t),
                Err(Error::InvalidParameter(_))
            ));
        }
    }

    #[test]
    fn mask_warp_stays_in_unit_range() {
        let m = SoftMask::from_fn(8, 8, |x, y| if (x + y) % 2 == 0 { 1.0 } else { 0.0 });
        let t = Affine {
            scale_x: 1.03,
            scale_y: 0.97,
            translate_x: 0.4,
            translate_y: -1.3,
        };
        let out = affine_transform_raster(&m, t).unwrap();
        assert!(out.as_slice().iter().all(|w| (0.0..=1.0).contains(w)));
    }

    #[test]
    fn resize_constant_and_identity() {
        let c = ImageBuffer::filled(7, 5, [10, 20, 30]);
        let small = resize_bilinear(&c, 3, 2).unwrap();
        assert!(small.pixels().all(|p| p == [10, 20, 30]));
        let img = ramp(6, 4);
        assert_eq!(resize_bilinear(&img, 6, 4).unwrap(), img);
    }
}
