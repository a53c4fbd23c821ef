//! Ground-truth annotations and dataset manifests.

mod annotation;
mod manifest;

pub use annotation::{
    flatten_ground_truth, import_tsv, load_annotation, save_annotation, AnnotatedBox,
    GroundTruthAnnotation,
};
pub use manifest::{image_id_of, is_image_file, list_images, DatasetManifest, ManifestEntry};
