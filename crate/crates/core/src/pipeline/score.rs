use std::path::Path;

use crate::error::{Error, Result};
use crate::metrics::{evaluate, read_predictions, select_threshold, MetricsReport};

pub const DEFAULT_THRESHOLD: f64 = 0.5;

/// Scores a prediction file at a threshold chosen on `dev_path` (minimum dev
/// ACER) or fixed; with neither, [`DEFAULT_THRESHOLD`] is used.
pub fn run_score_job(
    predictions_path: &Path,
    dev_path: Option<&Path>,
    fixed_threshold: Option<f64>,
) -> Result<MetricsReport> {
    let threshold = match (dev_path, fixed_threshold) {
        (Some(_), Some(_)) => {
            return Err(Error::invalid_input(
                "give either a dev file or a fixed threshold, not both",
            ))
        }
        (Some(dev), None) => select_threshold(&read_predictions(dev)?)?,
        (None, Some(t)) if !(0.0..=1.0).contains(&t) => {
            return Err(Error::invalid_input(format!(
                "threshold {t} outside [0, 1]"
            )))
        }
        (None, Some(t)) => t,
        (None, None) => DEFAULT_THRESHOLD,
    };
    evaluate(&read_predictions(predictions_path)?, threshold)
}

/// Writes the report as pretty-printed JSON.
pub fn write_report(path: &Path, report: &MetricsReport) -> Result<()> {
    let mut text = report.to_json()?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}
