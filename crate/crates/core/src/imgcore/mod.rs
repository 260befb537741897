//! Pixel primitives shared by both augmentation families.

mod blur;
mod buffer;
mod color;
mod crop;
mod warp;

pub(crate) use blur::blur_samples;
pub use blur::{gaussian_blur, gaussian_kernel};
pub use buffer::{quantize, BBox, FloatImage, ImageBuffer, Raster, Rect, SoftMask};
pub(crate) use buffer::{round_half_away, wrap};
pub use color::{hsv_to_rgb, hsv_to_rgb_pixel, rgb_to_hsv, rgb_to_hsv_pixel};
pub use crop::{
    center_crop, center_crop_region, crop, crop_expanded_bbox, crop_mask, expanded_bbox_region,
};
pub use warp::{
    affine_transform, affine_transform_raster, bilinear_sample, remap_bilinear, resize_bilinear,
    Affine,
};
