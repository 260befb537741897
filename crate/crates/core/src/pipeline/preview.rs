use std::fmt;
use std::path::Path;
use std::str::FromStr;

use super::io::{load_image, load_mask, save_png};
use super::params::ParamRanges;
use crate::error::Result;
use crate::imgcore::{ImageBuffer, SoftMask};
use crate::rng::RngStream;
use crate::sdsc::{apply_sdsc_with, gauss_noise};
use crate::spsc::{apply_spsc_with, color_jitter, moire_pattern};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PreviewAug {
    Spsc,
    Sdsc,
    Moire,
    Jitter,
    Noise,
}

impl PreviewAug {
    pub const ALL: [PreviewAug; 5] = [
        PreviewAug::Spsc,
        PreviewAug::Sdsc,
        PreviewAug::Moire,
        PreviewAug::Jitter,
        PreviewAug::Noise,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PreviewAug::Spsc => "spsc",
            PreviewAug::Sdsc => "sdsc",
            PreviewAug::Moire => "moire",
            PreviewAug::Jitter => "jitter",
            PreviewAug::Noise => "noise",
        }
    }
}

impl fmt::Display for PreviewAug {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PreviewAug {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| format!("unknown augmentation `{s}`"))
    }
}

/// Applies one augmentation with parameters drawn from `RngStream::new(seed)`.
pub fn render_preview(
    img: &ImageBuffer,
    mask: Option<&SoftMask>,
    aug: PreviewAug,
    seed: u64,
    ranges: &ParamRanges,
) -> Result<ImageBuffer> {
    let mut rng = RngStream::new(seed);
    match aug {
        PreviewAug::Spsc => Ok(apply_spsc_with(img, &mut rng, &ranges.spsc)?.0),
        PreviewAug::Sdsc => Ok(apply_sdsc_with(img, mask, &mut rng, &ranges.sdsc)?.forgery),
        PreviewAug::Moire => {
            let degree = ranges.spsc.moire_degree.sample(&mut rng);
            moire_pattern(img, degree)
        }
        PreviewAug::Jitter => color_jitter(img, &ranges.spsc.sample_jitter(&mut rng)),
        PreviewAug::Noise => {
            let sigma = ranges.noise_sigma.sample(&mut rng);
            gauss_noise(img, sigma, &mut rng)
        }
    }
}

/// `left` and `right` next to each other; the shorter one is padded with black.
pub fn side_by_side(left: &ImageBuffer, right: &ImageBuffer) -> ImageBuffer {
    let height = left.height().max(right.height());
    ImageBuffer::from_fn(left.width() + right.width(), height, |x, y| {
        let (img, x) = if x < left.width() {
            (left, x)
        } else {
            (right, x - left.width())
        };
        if y < img.height() {
            img.pixel(x, y)
        } else {
            [0, 0, 0]
        }
    })
}

/// Writes the original and its augmented version side by side to `out`.
pub fn run_preview(
    input: &Path,
    mask: Option<&Path>,
    aug: PreviewAug,
    seed: u64,
    ranges: &ParamRanges,
    out: &Path,
) -> Result<()> {
    let img = load_image(input)?;
    let mask = mask.map(load_mask).transpose()?;
    let augmented = render_preview(&img, mask.as_ref(), aug, seed, ranges)?;
    save_png(&side_by_side(&img, &augmented), out)
}
