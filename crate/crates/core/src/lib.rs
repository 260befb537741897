//! Simulated spoofing-clue augmentation and face anti-spoofing evaluation.
//!
//! Live face images are turned into simulated attack samples by two
//! augmentation families:
//!
//! * [`spsc`]: simulated physical clues, i.e. color jitter (print attacks)
//!   and a polar moiré warp (replay attacks);
//! * [`sdsc`]: simulated digital clues, i.e. self-blending of a
//!   color-perturbed copy and a spatially perturbed copy through a deformed
//!   face mask, plus an additive Gaussian noise augmentation.
//!
//! [`metrics`] scores prediction files with APCER / BPCER / ACER and AUC, and
//! [`pipeline`] ties everything together over CSV manifests with
//! deterministic per-sample random streams.
//!
//! ```
//! use spoofsim::{pipeline::derive_seed, sdsc::apply_sdsc, spsc::apply_spsc, ImageBuffer};
//!
//! let face = ImageBuffer::filled(64, 64, [180, 140, 120]);
//! let mut rng = derive_seed(42, "s001", 0);
//! let physical = apply_spsc(&face, &mut rng);
//! let digital = apply_sdsc(&face, None, &mut rng)?;
//! assert_eq!(physical.dimensions(), digital.dimensions());
//! # Ok::<(), spoofsim::Error>(())
//! ```

pub mod error;
pub mod imgcore;
pub mod metrics;
pub mod pipeline;
pub mod rng;
pub mod sdsc;
pub mod spsc;

pub use error::{Error, Result};
pub use imgcore::{BBox, FloatImage, ImageBuffer, Rect, SoftMask};
pub use metrics::{ConfusionCounts, ErrorRates, Label, MetricsReport, ScoreRecord};
pub use pipeline::{
    AttackType, AugmentJobConfig, Augmentation, ParamRanges, Protocol, ProtocolPolicy, SampleRecord,
};
pub use rng::RngStream;
