use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::io::{load_image, load_mask, save_png};
use super::manifest::{load_manifest, write_manifest, AttackType, SampleRecord};
use super::params::ParamRanges;
use super::policy::{policy_for_protocol, Augmentation, Protocol, ProtocolPolicy};
use super::preprocess::preprocess_region;
use super::seed::derive_seed;
use crate::error::{Error, Result};
use crate::imgcore::{crop, crop_mask, ImageBuffer};
use crate::metrics::Label;
use crate::rng::RngStream;
use crate::sdsc::apply_sdsc_with;
use crate::spsc::apply_spsc_with;

/// File name of the manifest written into the output directory.
pub const OUTPUT_MANIFEST: &str = "augmented_manifest.csv";

#[derive(Debug, Clone)]
pub struct AugmentJobConfig {
    pub manifest_path: PathBuf,
    pub protocol: Protocol,
    pub output_dir: PathBuf,
    pub global_seed: u64,
    /// Augmented copies per live sample, at least 1.
    pub multiplier: u32,
    pub ranges: ParamRanges,
    /// Worker threads; `None` uses all cores.
    pub workers: Option<usize>,
}

impl AugmentJobConfig {
    pub fn new(
        manifest_path: impl Into<PathBuf>,
        protocol: Protocol,
        output_dir: impl Into<PathBuf>,
        global_seed: u64,
    ) -> Self {
        Self {
            manifest_path: manifest_path.into(),
            protocol,
            output_dir: output_dir.into(),
            global_seed,
            multiplier: 1,
            ranges: ParamRanges::default(),
            workers: None,
        }
    }
}

fn augmented_id(sample_id: &str, rep: u32) -> String {
    format!("{sample_id}__aug{rep}")
}

/// One augmented copy of a live record.
///
/// The image (and mask, if any) is loaded and preprocessed, then one of the
/// policy's augmentations is applied. With two augmentations in the policy
/// the first draw of `rng` picks between them. The returned record's path
/// is the bare output file name `<sample_id>__aug<rep>.png`.
pub fn augment_sample(
    record: &SampleRecord,
    rep: u32,
    policy: &ProtocolPolicy,
    rng: &mut RngStream,
    ranges: &ParamRanges,
) -> Result<(ImageBuffer, SampleRecord)> {
    if record.label != Label::Live {
        return Err(Error::ContractViolation(format!(
            "sample `{}` is an attack; only live samples are augmented",
            record.sample_id
        )));
    }
    if policy.augmentations.is_empty() {
        return Err(Error::ContractViolation(
            "policy has no augmentations".into(),
        ));
    }
    let image = load_image(&record.path)?;
    let mask = record.mask_path.as_ref().map(load_mask).transpose()?;
    if let Some(m) = &mask {
        if m.dimensions() != image.dimensions() {
            return Err(Error::invalid_input(format!(
                "mask {:?} does not match image {:?}",
                m.dimensions(),
                image.dimensions()
            )));
        }
    }
    let (image, mask) = match preprocess_region(image.width(), image.height(), record)? {
        Some(r) => (
            crop(&image, r)?,
            mask.map(|m| crop_mask(&m, r)).transpose()?,
        ),
        None => (image, mask),
    };

    let choice = match policy.augmentations.as_slice() {
        [only] => *only,
        many => many[rng.uniform_int(0, many.len() as u64 - 1) as usize],
    };
    let (output, attack_type) = match choice {
        Augmentation::Spsc => (
            apply_spsc_with(&image, rng, &ranges.spsc)?.0,
            AttackType::SimulatedPhysical,
        ),
        Augmentation::Sdsc => (
            apply_sdsc_with(&image, mask.as_ref(), rng, &ranges.sdsc)?.forgery,
            AttackType::SimulatedDigital,
        ),
    };
    let id = augmented_id(&record.sample_id, rep);
    let out_record = SampleRecord {
        path: PathBuf::from(format!("{id}.png")),
        sample_id: id,
        label: Label::Attack,
        attack_type,
        bbox: None,
        mask_path: None,
    };
    Ok((output, out_record))
}

fn run_task(
    record: &SampleRecord,
    rep: u32,
    config: &AugmentJobConfig,
    policy: &ProtocolPolicy,
) -> Result<SampleRecord> {
    let mut rng = derive_seed(config.global_seed, &record.sample_id, u64::from(rep));
    let (image, out) = augment_sample(record, rep, policy, &mut rng, &config.ranges)?;
    save_png(&image, config.output_dir.join(&out.path))?;
    Ok(out)
}

fn build_pool(workers: Option<usize>) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.unwrap_or(0))
        .build()
        .map_err(|e| Error::invalid_input(format!("cannot start worker pool: {e}")))
}

/// Augments every live record `multiplier` times and writes the images plus
/// an output manifest listing all originals and augmented records.
///
/// Each (sample, repetition) gets its own stream from [`derive_seed`], so
/// the pixels do not depend on scheduling or worker count. Originals are
/// listed unchanged except that their paths are absolute; each original is
/// followed by its augmented copies. If any sample fails, no manifest is
/// written and all failures are returned.
pub fn run_augment_job(config: &AugmentJobConfig) -> Result<PathBuf> {
    if config.multiplier == 0 {
        return Err(Error::invalid_param("multiplier must be at least 1"));
    }
    if config.workers == Some(0) {
        return Err(Error::invalid_param("worker count must be at least 1"));
    }
    let records = load_manifest(&config.manifest_path)?;
    std::fs::create_dir_all(&config.output_dir).map_err(|e| Error::io(&config.output_dir, e))?;
    let output_dir =
        std::fs::canonicalize(&config.output_dir).map_err(|e| Error::io(&config.output_dir, e))?;
    let manifest_out = output_dir.join(OUTPUT_MANIFEST);
    if std::fs::canonicalize(&config.manifest_path).ok().as_deref() == Some(manifest_out.as_path())
    {
        return Err(Error::invalid_param(format!(
            "output manifest would overwrite the input {}",
            manifest_out.display()
        )));
    }
    let policy = policy_for_protocol(config.protocol);

    let tasks: Vec<(usize, u32)> = records
        .iter()
        .enumerate()
        .filter(|(_, r)| r.label == Label::Live)
        .flat_map(|(i, _)| (0..config.multiplier).map(move |rep| (i, rep)))
        .collect();

    let pool = build_pool(config.workers)?;
    let results: Vec<Result<SampleRecord>> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(i, rep)| {
                run_task(&records[i], rep, config, &policy).map_err(|e| Error::Sample {
                    sample_id: augmented_id(&records[i].sample_id, rep),
                    source: Box::new(e),
                })
            })
            .collect()
    });

    let mut augmented: Vec<Vec<SampleRecord>> = vec![Vec::new(); records.len()];
    let mut failures = Vec::new();
    for (&(i, _), result) in tasks.iter().zip(results) {
        match result {
            Ok(r) => augmented[i].push(r),
            Err(e) => failures.push(e),
        }
    }
    if !failures.is_empty() {
        return Err(Error::SampleFailures(failures));
    }

    let mut listing = Vec::with_capacity(records.len() + tasks.len());
    for (original, copies) in records.into_iter().zip(augmented) {
        listing.push(original);
        listing.extend(copies);
    }
    write_manifest_file(&manifest_out, &listing)?;
    Ok(manifest_out)
}

fn write_manifest_file(path: &Path, records: &[SampleRecord]) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_manifest(std::io::BufWriter::new(file), records)
}
