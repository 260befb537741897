//! Tunable sampling ranges and their `KEY=LO:HI` overrides.

use crate::error::{Error, Result};
use crate::rng::UniformRange;
use crate::sdsc::{self, SdscRanges};
use crate::spsc::{self, SpscRanges};

/// Bounds for the additive-noise sigma override.
const NOISE_SIGMA_BOUNDS: UniformRange = UniformRange::new(0.0, 255.0);

/// Every override key, in documentation order.
pub const PARAM_KEYS: [&str; 15] = [
    "spsc.brightness",
    "spsc.contrast",
    "spsc.saturation",
    "spsc.hue",
    "spsc.moire_degree",
    "sdsc.hue",
    "sdsc.brightness",
    "sdsc.downscale",
    "sdsc.scale",
    "sdsc.translate_x",
    "sdsc.translate_y",
    "sdsc.elastic_alpha",
    "sdsc.elastic_sigma",
    "sdsc.blur_sigma",
    "noise.sigma",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamRanges {
    pub spsc: SpscRanges,
    pub sdsc: SdscRanges,
    pub noise_sigma: UniformRange,
}

impl Default for ParamRanges {
    fn default() -> Self {
        Self {
            spsc: SpscRanges::default(),
            sdsc: SdscRanges::default(),
            noise_sigma: sdsc::NOISE_SIGMA_RANGE,
        }
    }
}

impl ParamRanges {
    /// Slot for `key` and the widest range it accepts.
    fn slot(&mut self, key: &str) -> Option<(&mut UniformRange, UniformRange)> {
        Some(match key {
            "spsc.brightness" => (&mut self.spsc.brightness, spsc::FACTOR_RANGE),
            "spsc.contrast" => (&mut self.spsc.contrast, spsc::FACTOR_RANGE),
            "spsc.saturation" => (&mut self.spsc.saturation, spsc::FACTOR_RANGE),
            "spsc.hue" => (&mut self.spsc.hue, spsc::HUE_RANGE),
            "spsc.moire_degree" => (&mut self.spsc.moire_degree, spsc::MOIRE_DEGREE_RANGE),
            "sdsc.hue" => (&mut self.sdsc.hue, sdsc::SOURCE_HUE_RANGE),
            "sdsc.brightness" => (&mut self.sdsc.brightness, sdsc::SOURCE_BRIGHTNESS_RANGE),
            "sdsc.downscale" => (&mut self.sdsc.downscale, sdsc::DOWNSCALE_RANGE),
            "sdsc.scale" => (&mut self.sdsc.scale, sdsc::TARGET_SCALE_RANGE),
            "sdsc.translate_x" => (&mut self.sdsc.translate_x, sdsc::TARGET_SHIFT_X_RANGE),
            "sdsc.translate_y" => (&mut self.sdsc.translate_y, sdsc::TARGET_SHIFT_Y_RANGE),
            "sdsc.elastic_alpha" => (&mut self.sdsc.elastic_alpha, sdsc::ELASTIC_ALPHA_RANGE),
            "sdsc.elastic_sigma" => (&mut self.sdsc.elastic_sigma, sdsc::ELASTIC_SIGMA_RANGE),
            "sdsc.blur_sigma" => (&mut self.sdsc.blur_sigma, sdsc::MASK_BLUR_RANGE),
            "noise.sigma" => (&mut self.noise_sigma, NOISE_SIGMA_BOUNDS),
            _ => return None,
        })
    }

    /// Narrows one range. Overrides must stay inside the default bounds of
    /// the parameter so every sampled value remains valid.
    pub fn set(&mut self, key: &str, range: UniformRange) -> Result<()> {
        let (slot, bounds) = self.slot(key).ok_or_else(|| {
            Error::invalid_param(format!(
                "unknown parameter `{key}` (known: {})",
                PARAM_KEYS.join(", ")
            ))
        })?;
        if !range.is_within(&bounds) {
            return Err(Error::invalid_param(format!(
                "range {range} for `{key}` must lie within {bounds}"
            )));
        }
        *slot = range;
        Ok(())
    }

    /// Applies `KEY=LO:HI` (or `KEY=V` for a fixed value).
    pub fn apply_override(&mut self, arg: &str) -> Result<()> {
        let (key, value) = arg
            .split_once('=')
            .ok_or_else(|| Error::invalid_param(format!("expected KEY=LO:HI, got `{arg}`")))?;
        let num = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::invalid_param(format!("invalid number `{s}` in `{arg}`")))
        };
        let range = match value.split_once(':') {
            Some((lo, hi)) => UniformRange::new(num(lo)?, num(hi)?),
            None => {
                let v = num(value)?;
                UniformRange::new(v, v)
            }
        };
        self.set(key.trim(), range)
    }

    pub fn with_overrides<'a>(overrides: impl IntoIterator<Item = &'a str>) -> Result<Self> {
        let mut ranges = Self::default();
        for o in overrides {
            ranges.apply_override(o)?;
        }
        Ok(ranges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_key_resolves() {
        let mut r = ParamRanges::default();
        for key in PARAM_KEYS {
            assert!(r.slot(key).is_some(), "{key}");
        }
    }

    #[test]
    fn narrowing_override() {
        let r = ParamRanges::with_overrides(["sdsc.blur_sigma=1:2", "spsc.hue=0"]).unwrap();
        assert_eq!(r.sdsc.blur_sigma, UniformRange::new(1.0, 2.0));
        assert_eq!(r.spsc.hue, UniformRange::new(0.0, 0.0));
    }

    #[test]
    fn rejects_bad_overrides() {
        for bad in [
            "sdsc.blur_sigma=0:9",
            "spsc.brightness=1.2:1.0",
            "bogus=1:2",
            "spsc.hue",
            "spsc.hue=a:b",
        ] {
            assert!(ParamRanges::with_overrides([bad]).is_err(), "{bad}");
        }
    }
}
