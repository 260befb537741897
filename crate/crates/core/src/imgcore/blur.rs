use super::buffer::Raster;
use crate::error::{Error, Result};

/// Normalized 1-D Gaussian taps with radius `ceil(3 * sigma)`.
///
/// `sigma == 0` yields the single tap `[1.0]`.
pub fn gaussian_kernel(sigma: f64) -> Result<Vec<f64>> {
    if !sigma.is_finite() || sigma < 0.0 {
        return Err(Error::invalid_param(format!(
            "blur sigma must be finite and non-negative, got {sigma}"
        )));
    }
    if sigma == 0.0 {
        return Ok(vec![1.0]);
    }
    let radius = (3.0 * sigma).ceil() as i64;
    let denom = 2.0 * sigma * sigma;
    let mut taps: Vec<f64> = (-radius..=radius)
        .map(|i| (-((i * i) as f64) / denom).exp())
        .collect();
    let total: f64 = taps.iter().sum();
    taps.iter_mut().for_each(|t| *t /= total);
    Ok(taps)
}

/// Separable Gaussian blur with replicate borders, applied per channel.
pub fn gaussian_blur<T: Raster>(img: &T, sigma: f64) -> Result<T> {
    let taps = gaussian_kernel(sigma)?;
    if taps.len() == 1 {
        return Ok(img.with_samples(img.samples().to_vec()));
    }
    let out = blur_samples(
        img.samples(),
        img.width() as usize,
        img.height() as usize,
        img.channels(),
        &taps,
    );
    Ok(img.with_samples(out))
}

pub(crate) fn blur_samples(
    data: &[f64],
    width: usize,
    height: usize,
    channels: usize,
    taps: &[f64],
) -> Vec<f64> {
    let radius = taps.len() / 2;
    let stride = width * channels;
    let clamp = |i: isize, n: usize| i.clamp(0, n as isize - 1) as usize;

    // Horizontal pass over a replicate-padded copy of each row.
    let mut tmp = vec![0.0; data.len()];
    let mut padded = vec![0.0; (width + 2 * radius) * channels];
    for (src, dst) in data.chunks_exact(stride).zip(tmp.chunks_exact_mut(stride)) {
        for (i, px) in padded.chunks_exact_mut(channels).enumerate() {
            let x = clamp(i as isize - radius as isize, width);
            px.copy_from_slice(&src[x * channels..(x + 1) * channels]);
        }
        let at = |k: usize| &padded[k * channels..k * channels + stride];
        accumulate_symmetric(dst, taps, at);
    }

    // Vertical pass, accumulated a row at a time.
    let mut out = vec![0.0; data.len()];
    for (y, dst) in out.chunks_exact_mut(stride).enumerate() {
        let at = |k: usize| {
            let sy = clamp(y as isize + k as isize - radius as isize, height);
            &tmp[sy * stride..(sy + 1) * stride]
        };
        accumulate_symmetric(dst, taps, at);
    }
    out
}

/// `dst += sum_k taps[k] * row(k)` for a symmetric kernel, pairing rows
/// `k` and `n - 1 - k` so each weight is applied once.
fn accumulate_symmetric<'a>(dst: &mut [f64], taps: &[f64], row: impl Fn(usize) -> &'a [f64]) {
    let n = taps.len();
    let radius = n / 2;
    for (d, &v) in dst.iter_mut().zip(row(radius)) {
        *d = taps[radius] * v;
    }
    for (k, &t) in taps[..radius].iter().enumerate() {
        for ((d, &a), &b) in dst.iter_mut().zip(row(k)).zip(row(n - 1 - k)) {
            *d += t * (a + b);
        }
    }
}
