//! Hexcone RGB <-> HSV conversion. Hue is a fraction of the full circle.

use super::buffer::{quantize, wrap, FloatImage, ImageBuffer};

/// Converts one RGB triple with components in `[0, 1]` to `(h, s, v)`,
/// `h` in `[0, 1)`.
pub fn rgb_to_hsv_pixel([r, g, b]: [f64; 3]) -> [f64; 3] {
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    let delta = max - min;
    let s = if max > 0.0 { delta / max } else { 0.0 };
    let h = if delta <= 0.0 {
        0.0
    } else if max == r {
        wrap((g - b) / delta, 6.0) / 6.0
    } else if max == g {
        ((b - r) / delta + 2.0) / 6.0
    } else {
        ((r - g) / delta + 4.0) / 6.0
    };
    [wrap_hue(h), s, max]
}

/// Inverse of [`rgb_to_hsv_pixel`]; hue is wrapped modulo 1 first.
pub fn hsv_to_rgb_pixel([h, s, v]: [f64; 3]) -> [f64; 3] {
    let h6 = wrap_hue(h) * 6.0;
    let sector = h6 as u8;
    let f = h6 - f64::from(sector);
    let p = v * (1.0 - s);
    let q = v * (1.0 - s * f);
    let t = v * (1.0 - s * (1.0 - f));
    match sector {
        0 => [v, t, p],
        1 => [q, v, p],
        2 => [p, v, t],
        3 => [p, q, v],
        4 => [t, p, v],
        _ => [v, p, q],
    }
}

#[inline]
fn wrap_hue(h: f64) -> f64 {
    let w = wrap(h, 1.0);
    if w >= 1.0 {
        0.0
    } else {
        w
    }
}

pub fn rgb_to_hsv(img: &ImageBuffer) -> FloatImage {
    let mut data = vec![0.0; img.as_raw().len()];
    for (dst, p) in data.chunks_exact_mut(3).zip(img.pixels()) {
        dst.copy_from_slice(&rgb_to_hsv_pixel(p.map(|c| f64::from(c) / 255.0)));
    }
    FloatImage::new(img.width(), img.height(), 3, data).expect("shape preserved")
}

/// Panics if `img` does not have three channels.
pub fn hsv_to_rgb(img: &FloatImage) -> ImageBuffer {
    assert_eq!(img.channels(), 3, "HSV image must have three channels");
    let mut data = vec![0; img.as_slice().len()];
    for (dst, p) in data.chunks_exact_mut(3).zip(img.as_slice().chunks_exact(3)) {
        dst.copy_from_slice(&hsv_to_rgb_pixel([p[0], p[1], p[2]]).map(|c| quantize(c * 255.0)));
    }
    ImageBuffer::new(img.width(), img.height(), data).expect("shape preserved")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(rgb: [u8; 3]) -> [f64; 3] {
        let hsv = rgb_to_hsv(&ImageBuffer::filled(1, 1, rgb));
        [hsv.get(0, 0, 0), hsv.get(0, 0, 1), hsv.get(0, 0, 2)]
    }

    fn back(hsv: [f64; 3]) -> [u8; 3] {
        hsv_to_rgb(&FloatImage::new(1, 1, 3, hsv.to_vec()).unwrap()).pixel(0, 0)
    }

    #[test]
    fn pure_red() {
        assert_eq!(single([255, 0, 0]), [0.0, 1.0, 1.0]);
    }

    #[test]
    fn gray_is_achromatic() {
        let [_, s, v] = single([128, 128, 128]);
        assert_eq!(s, 0.0);
        assert_eq!(v, 128.0 / 255.0);
    }

    #[test]
    fn white_and_green() {
        assert_eq!(back([0.0, 0.0, 1.0]), [255, 255, 255]);
        assert_eq!(back([1.0 / 3.0, 1.0, 1.0]), [0, 255, 0]);
    }

    #[test]
    fn hue_wraps() {
        assert_eq!(back([1.0, 1.0, 1.0]), [255, 0, 0]);
        assert_eq!(back([-2.0 / 3.0, 1.0, 1.0]), [0, 255, 0]);
    }

    #[test]
    fn hue_in_unit_interval() {
        for rgb in [[255, 0, 1], [1, 0, 255], [0, 255, 255], [200, 10, 100]] {
            let [h, _, _] = single(rgb);
            assert!((0.0..1.0).contains(&h), "{rgb:?} -> {h}");
        }
    }
}
