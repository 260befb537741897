//! CSV manifests: `sample_id,path,label,attack_type,bbox,mask_path`.
//!
//! `bbox` is `x;y;w;h` or empty, `mask_path` may be empty. A first row whose
//! first field is `sample_id` is a header. Relative paths are resolved
//! against the manifest's directory.

use std::collections::HashSet;
use std::fmt;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::imgcore::BBox;
use crate::metrics::Label;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AttackType {
    None,
    Print,
    Replay,
    DigitalForgery,
    Adversarial,
    SimulatedPhysical,
    SimulatedDigital,
}

impl AttackType {
    pub fn as_str(self) -> &'static str {
        match self {
            AttackType::None => "none",
            AttackType::Print => "print",
            AttackType::Replay => "replay",
            AttackType::DigitalForgery => "digital_forgery",
            AttackType::Adversarial => "adversarial",
            AttackType::SimulatedPhysical => "simulated_physical",
            AttackType::SimulatedDigital => "simulated_digital",
        }
    }

    pub fn is_simulated(self) -> bool {
        matches!(
            self,
            AttackType::SimulatedPhysical | AttackType::SimulatedDigital
        )
    }
}

impl fmt::Display for AttackType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AttackType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "none" => AttackType::None,
            "print" => AttackType::Print,
            "replay" => AttackType::Replay,
            "digital_forgery" => AttackType::DigitalForgery,
            "adversarial" => AttackType::Adversarial,
            "simulated_physical" => AttackType::SimulatedPhysical,
            "simulated_digital" => AttackType::SimulatedDigital,
            other => return Err(format!("unknown attack type `{other}`")),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleRecord {
    pub sample_id: String,
    pub path: PathBuf,
    pub label: Label,
    pub attack_type: AttackType,
    pub bbox: Option<BBox>,
    pub mask_path: Option<PathBuf>,
}

impl SampleRecord {
    /// Live records carry attack type `none` and only they do.
    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.sample_id.is_empty() {
            return Err("empty sample id".into());
        }
        match (self.label, self.attack_type) {
            (Label::Live, AttackType::None) => Ok(()),
            (Label::Live, t) => Err(format!("live record with attack type `{t}`")),
            (Label::Attack, AttackType::None) => {
                Err("attack record with attack type `none`".into())
            }
            (Label::Attack, _) => Ok(()),
        }
    }
}

fn parse_bbox(s: &str) -> std::result::Result<Option<BBox>, String> {
    if s.is_empty() {
        return Ok(None);
    }
    let parts: Vec<&str> = s.split(';').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(format!("malformed bbox `{s}` (expected x;y;w;h)"));
    }
    let bad = || format!("malformed bbox `{s}` (expected integers x;y;w;h)");
    let x: i64 = parts[0].parse().map_err(|_| bad())?;
    let y: i64 = parts[1].parse().map_err(|_| bad())?;
    let w: u32 = parts[2].parse().map_err(|_| bad())?;
    let h: u32 = parts[3].parse().map_err(|_| bad())?;
    BBox::new(x, y, w, h).map(Some).map_err(|e| e.to_string())
}

fn format_bbox(b: &Option<BBox>) -> String {
    b.map(|b| format!("{};{};{};{}", b.x, b.y, b.w, b.h))
        .unwrap_or_default()
}

fn resolve(base: &Path, p: &str) -> PathBuf {
    let p = Path::new(p);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

/// Parses manifest rows. `path` is used for error messages and `base` for
/// resolving relative file paths. Simulated attack types are rejected unless
/// `allow_simulated` is set.
pub fn parse_manifest(
    reader: impl Read,
    path: &Path,
    base: &Path,
    allow_simulated: bool,
) -> Result<Vec<SampleRecord>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (index, row) in rdr.records().enumerate() {
        let err = |line: u64, message: String| Error::Parse {
            path: path.to_path_buf(),
            line,
            message,
        };
        let row = row.map_err(|e| err(e.position().map_or(0, |p| p.line()), e.to_string()))?;
        let line = row.position().map_or(index as u64 + 1, |p| p.line());
        if index == 0 && row.get(0) == Some("sample_id") {
            continue;
        }
        if row.len() != 6 {
            return Err(err(
                line,
                format!(
                    "expected 6 fields (sample_id,path,label,attack_type,bbox,mask_path), found {}",
                    row.len()
                ),
            ));
        }
        if row[1].is_empty() {
            return Err(err(line, "empty image path".into()));
        }
        let label: Label = row[2].parse().map_err(|m| err(line, m))?;
        let attack_type: AttackType = row[3].parse().map_err(|m| err(line, m))?;
        if attack_type.is_simulated() && !allow_simulated {
            return Err(err(
                line,
                format!("attack type `{attack_type}` is reserved for augmented outputs"),
            ));
        }
        let record = SampleRecord {
            sample_id: row[0].to_string(),
            path: resolve(base, &row[1]),
            label,
            attack_type,
            bbox: parse_bbox(&row[4]).map_err(|m| err(line, m))?,
            mask_path: (!row[5].is_empty()).then(|| resolve(base, &row[5])),
        };
        record.validate().map_err(|m| err(line, m))?;
        if !seen.insert(record.sample_id.clone()) {
            return Err(err(
                line,
                format!("duplicate sample id `{}`", record.sample_id),
            ));
        }
        out.push(record);
    }
    Ok(out)
}

fn load(path: &Path, allow_simulated: bool) -> Result<Vec<SampleRecord>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let parent = path.parent().unwrap_or(Path::new("."));
    let parent = if parent.as_os_str().is_empty() {
        Path::new(".")
    } else {
        parent
    };
    let base = std::fs::canonicalize(parent).map_err(|e| Error::io(parent, e))?;
    parse_manifest(file, path, &base, allow_simulated)
}

/// Loads an input manifest; simulated attack types are rejected.
pub fn load_manifest(path: impl AsRef<Path>) -> Result<Vec<SampleRecord>> {
    load(path.as_ref(), false)
}

/// Loads a manifest written by the augmentation job.
pub fn load_job_manifest(path: impl AsRef<Path>) -> Result<Vec<SampleRecord>> {
    load(path.as_ref(), true)
}

/// Writes records with a header row. Paths are written as given.
pub fn write_manifest(writer: impl Write, records: &[SampleRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let to_io = |e: csv::Error| Error::invalid_input(format!("manifest write failed: {e}"));
    w.write_record([
        "sample_id",
        "path",
        "label",
        "attack_type",
        "bbox",
        "mask_path",
    ])
    .map_err(to_io)?;
    for r in records {
        let mask = r
            .mask_path
            .as_ref()
            .map(|p| p.to_string_lossy().into_owned())
            .unwrap_or_default();
        w.write_record([
            r.sample_id.as_str(),
            &r.path.to_string_lossy(),
            r.label.as_str(),
            r.attack_type.as_str(),
            &format_bbox(&r.bbox),
            &mask,
        ])
        .map_err(to_io)?;
    }
    w.flush()
        .map_err(|e| Error::invalid_input(format!("manifest write failed: {e}")))?;
    Ok(())
}
