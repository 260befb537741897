use super::buffer::{BBox, ImageBuffer, Rect, SoftMask};
use crate::error::{Error, Result};

pub fn crop(img: &ImageBuffer, r: Rect) -> Result<ImageBuffer> {
    check_rect(img.width(), img.height(), r)?;
    let mut data = Vec::with_capacity(r.w as usize * r.h as usize * 3);
    let row = img.width() as usize * 3;
    for y in r.y..r.y + r.h {
        let start = y as usize * row + r.x as usize * 3;
        data.extend_from_slice(&img.as_raw()[start..start + r.w as usize * 3]);
    }
    ImageBuffer::new(r.w, r.h, data)
}

pub fn crop_mask(mask: &SoftMask, r: Rect) -> Result<SoftMask> {
    check_rect(mask.width(), mask.height(), r)?;
    let w = mask.width() as usize;
    let data = (r.y..r.y + r.h)
        .flat_map(|y| {
            let start = y as usize * w + r.x as usize;
            mask.as_slice()[start..start + r.w as usize].iter().copied()
        })
        .collect();
    SoftMask::new(r.w, r.h, data)
}

fn check_rect(width: u32, height: u32, r: Rect) -> Result<()> {
    let fits = r.w > 0
        && r.h > 0
        && u64::from(r.x) + u64::from(r.w) <= u64::from(width)
        && u64::from(r.y) + u64::from(r.h) <= u64::from(height);
    if fits {
        Ok(())
    } else {
        Err(Error::invalid_param(format!(
            "crop {r:?} does not fit in {width}x{height}"
        )))
    }
}

/// Centered `size x size` window, or `None` when either dimension is smaller
/// than `size` (the image is then used as is).
pub fn center_crop_region(width: u32, height: u32, size: u32) -> Option<Rect> {
    (size > 0 && width >= size && height >= size).then(|| Rect {
        x: (width - size) / 2,
        y: (height - size) / 2,
        w: size,
        h: size,
    })
}

/// Centered square crop; undersized images pass through unchanged.
pub fn center_crop(img: &ImageBuffer, size: u32) -> Result<ImageBuffer> {
    if size == 0 {
        return Err(Error::invalid_param("center crop size must be at least 1"));
    }
    match center_crop_region(img.width(), img.height(), size) {
        Some(r) => crop(img, r),
        None => Ok(img.clone()),
    }
}

/// The bbox grown by `margin` on every side, clamped to the image.
pub fn expanded_bbox_region(width: u32, height: u32, bbox: BBox, margin: u32) -> Result<Rect> {
    let m = i64::from(margin);
    let x0 = (bbox.x - m).max(0);
    let y0 = (bbox.y - m).max(0);
    let x1 = (bbox.x + i64::from(bbox.w) + m).min(i64::from(width));
    let y1 = (bbox.y + i64::from(bbox.h) + m).min(i64::from(height));
    if x0 >= x1 || y0 >= y1 {
        return Err(Error::invalid_param(format!(
            "bbox {bbox:?} with margin {margin} lies outside the {width}x{height} image"
        )));
    }
    Ok(Rect {
        x: x0 as u32,
        y: y0 as u32,
        w: (x1 - x0) as u32,
        h: (y1 - y0) as u32,
    })
}

pub fn crop_expanded_bbox(img: &ImageBuffer, bbox: BBox, margin: u32) -> Result<ImageBuffer> {
    let r = expanded_bbox_region(img.width(), img.height(), bbox, margin)?;
    crop(img, r)
}
