use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub image_file: PathBuf,
    pub annotation_file: PathBuf,
}

impl ManifestEntry {
    pub fn image_id(&self) -> String {
        image_id_of(&self.image_file)
    }
}

/// File stem used as the image identifier.
pub fn image_id_of(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

pub fn is_image_file(path: &Path) -> bool {
    matches!(
        path.extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase)
            .as_deref(),
        Some("png" | "jpg" | "jpeg")
    )
}

/// Image/annotation pairs of a dataset.
///
/// Manifest files list one pair per line, `image<TAB>annotation`, with paths
/// relative to the manifest's directory. Blank lines and `#` comments are skipped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetManifest {
    pub root: PathBuf,
    pub entries: Vec<ManifestEntry>,
}

impl DatasetManifest {
    pub fn count(&self) -> usize {
        self.entries.len()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let root = path.parent().unwrap_or(Path::new(".")).to_path_buf();
        let mut entries = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((image, annotation)) = line.split_once('\t') else {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line: n + 1,
                    column: 1,
                    message: "expected `image<TAB>annotation`".into(),
                });
            };
            entries.push(ManifestEntry {
                image_file: root.join(image.trim()),
                annotation_file: root.join(annotation.trim()),
            });
        }
        let manifest = DatasetManifest { root, entries };
        manifest.check_files()?;
        Ok(manifest)
    }

    /// Pairs every PNG/JPEG in `dir` with the `<stem>.json` next to it. Images
    /// without an annotation file are skipped. Entries are sorted by file name.
    pub fn scan_dir(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        let mut entries: Vec<ManifestEntry> = list_images(dir)?
            .into_iter()
            .filter_map(|image_file| {
                let annotation_file = image_file.with_extension("json");
                annotation_file.is_file().then_some(ManifestEntry {
                    image_file,
                    annotation_file,
                })
            })
            .collect();
        entries.sort_by(|a, b| a.image_file.cmp(&b.image_file));
        Ok(DatasetManifest {
            root: dir.to_path_buf(),
            entries,
        })
    }

    /// Loads a manifest file, or scans a directory.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        if path.is_dir() {
            Self::scan_dir(path)
        } else {
            Self::load(path)
        }
    }

    pub fn check_files(&self) -> Result<()> {
        for e in &self.entries {
            for f in [&e.image_file, &e.annotation_file] {
                if !f.is_file() {
                    return Err(Error::io(
                        f,
                        std::io::Error::new(std::io::ErrorKind::NotFound, "listed in manifest but missing"),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Manifest text with paths relative to `root` where possible.
    pub fn to_text(&self) -> String {
        let rel = |p: &Path| {
            p.strip_prefix(&self.root)
                .unwrap_or(p)
                .to_string_lossy()
                .into_owned()
        };
        self.entries
            .iter()
            .map(|e| format!("{}\t{}\n", rel(&e.image_file), rel(&e.annotation_file)))
            .collect()
    }
}

/// PNG/JPEG files directly inside `dir`, sorted by path.
pub fn list_images(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        let p = entry.map_err(|e| Error::io(dir, e))?.path();
        if p.is_file() && is_image_file(&p) {
            out.push(p);
        }
    }
    out.sort();
    Ok(out)
}
