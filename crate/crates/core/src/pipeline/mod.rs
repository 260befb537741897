//! Manifests, protocol policies, preprocessing and the batch jobs.

mod io;
mod job;
mod manifest;
mod params;
mod policy;
mod preprocess;
mod preview;
mod score;
mod seed;

pub use io::{load_image, load_mask, save_png};
pub use job::{augment_sample, run_augment_job, AugmentJobConfig, OUTPUT_MANIFEST};
pub use manifest::{
    load_job_manifest, load_manifest, parse_manifest, write_manifest, AttackType, SampleRecord,
};
pub use params::{ParamRanges, PARAM_KEYS};
pub use policy::{policy_for_protocol, Augmentation, Protocol, ProtocolPolicy};
pub use preprocess::{
    preprocess_region, preprocess_sample, BBOX_MARGIN, CENTER_CROP_SIZE, DETECTION_MIN_SIDE,
};
pub use preview::{render_preview, run_preview, side_by_side, PreviewAug};
pub use score::{run_score_job, write_report, DEFAULT_THRESHOLD};
pub use seed::{derive_seed, derive_seed_value};
