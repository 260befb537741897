#![allow(dead_code)]

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use spoofsim::pipeline::save_png;
use spoofsim::{ImageBuffer, RngStream};

/// Smooth face-like blob with a little per-seed texture.
pub fn synthetic_face(w: u32, h: u32, seed: u64) -> ImageBuffer {
    let mut rng = RngStream::new(seed);
    let tint = [0; 3].map(|_| rng.uniform(-30.0, 30.0));
    ImageBuffer::from_fn(w, h, |x, y| {
        let dx = (x as f64 - w as f64 / 2.0) / w as f64;
        let dy = (y as f64 - h as f64 / 2.0) / h as f64;
        let r = (dx * dx + dy * dy).sqrt();
        let base = [
            200.0 - 180.0 * r,
            150.0 - 120.0 * r + 40.0 * dx,
            120.0 + 60.0 * dy,
        ];
        let mut px = [0u8; 3];
        for c in 0..3 {
            let noise = rng.uniform(-6.0, 6.0);
            px[c] = (base[c] + tint[c] + noise).clamp(0.0, 255.0).round() as u8;
        }
        px
    })
}

/// Writes `n_live` live and `n_attack` attack images plus a manifest.
pub fn synthetic_dataset(dir: &Path, n_live: usize, n_attack: usize, size: u32) -> PathBuf {
    std::fs::create_dir_all(dir.join("img")).unwrap();
    let mut manifest = String::from("sample_id,path,label,attack_type,bbox,mask_path\n");
    let attack_types = ["print", "replay", "digital_forgery", "adversarial"];
    for i in 0..n_live + n_attack {
        let live = i < n_live;
        let id = format!("{}{i:03}", if live { "live" } else { "atk" });
        let file = format!("img/{id}.png");
        save_png(&synthetic_face(size, size, i as u64), dir.join(&file)).unwrap();
        let (label, kind) = if live {
            ("live", "none")
        } else {
            ("attack", attack_types[i % attack_types.len()])
        };
        writeln!(manifest, "{id},{file},{label},{kind},,").unwrap();
    }
    let path = dir.join("manifest.csv");
    std::fs::write(&path, manifest).unwrap();
    path
}

/// Decoded RGB bytes of a PNG.
pub fn decode(path: &Path) -> Vec<u8> {
    spoofsim::pipeline::load_image(path).unwrap().into_raw()
}
