use super::manifest::SampleRecord;
use crate::error::Result;
use crate::imgcore::{center_crop_region, crop, expanded_bbox_region, ImageBuffer, Rect};

/// Both sides must exceed this for the bbox crop to apply.
pub const DETECTION_MIN_SIDE: u32 = 700;
pub const BBOX_MARGIN: u32 = 20;
pub const CENTER_CROP_SIZE: u32 = 500;

/// Crop window for a `width x height` image, or `None` to keep it whole.
///
/// Large images (both sides above 700 px) with a bbox use the bbox grown by
/// 20 px; everything else gets a centered 500 px square when it fits.
pub fn preprocess_region(width: u32, height: u32, record: &SampleRecord) -> Result<Option<Rect>> {
    match record.bbox {
        Some(bbox) if width > DETECTION_MIN_SIDE && height > DETECTION_MIN_SIDE => {
            expanded_bbox_region(width, height, bbox, BBOX_MARGIN).map(Some)
        }
        _ => Ok(center_crop_region(width, height, CENTER_CROP_SIZE)),
    }
}

pub fn preprocess_sample(img: &ImageBuffer, record: &SampleRecord) -> Result<ImageBuffer> {
    match preprocess_region(img.width(), img.height(), record)? {
        Some(r) => crop(img, r),
        None => Ok(img.clone()),
    }
}
