use std::path::Path;

use crate::error::{Error, Result};
use crate::imgcore::{ImageBuffer, SoftMask};

fn image_err(path: &Path, source: image::ImageError) -> Error {
    Error::Image {
        path: path.to_path_buf(),
        source,
    }
}

/// Decodes any supported raster and converts it to 8-bit RGB.
pub fn load_image(path: impl AsRef<Path>) -> Result<ImageBuffer> {
    let path = path.as_ref();
    let img = image::open(path).map_err(|e| image_err(path, e))?;
    Ok(img.to_rgb8().into())
}

/// Loads a single-channel mask; weights are `value / 255`.
pub fn load_mask(path: impl AsRef<Path>) -> Result<SoftMask> {
    let path = path.as_ref();
    let img = image::open(path).map_err(|e| image_err(path, e))?;
    Ok(SoftMask::from_luma(&img.to_luma8()))
}

/// Writes an RGB PNG.
pub fn save_png(img: &ImageBuffer, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    image::save_buffer_with_format(
        path,
        img.as_raw(),
        img.width(),
        img.height(),
        image::ExtendedColorType::Rgb8,
        image::ImageFormat::Png,
    )
    .map_err(|e| image_err(path, e))
}
