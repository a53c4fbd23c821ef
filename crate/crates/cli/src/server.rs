//! JSON API behind the annotation UI.
//!
//! | method | path | response |
//! |--------|------|----------|
//! | GET | `/api/images` | `{"images": [{"id", "file", "width", "height", "annotated", "version"}]}` |
//! | GET | `/api/images/{id}/image` | the image bytes |
//! | GET | `/api/images/{id}/annotation` | `{"version", "exists", "annotation"}`; an empty annotation when no file exists yet |
//! | PUT | `/api/images/{id}/annotation` | body is an annotation; `{"version", "annotation"}` with the canonical form as saved |
//! | GET | `/api/images/{id}/detections` | detection record for the image under the server's detector settings |
//!
//! Errors are `{"error": message}` with status 404 (unknown id), 422 (invalid
//! annotation, file left untouched) or 500. Annotations live next to the
//! images as `<id>.json`. Writes to one image are serialized; every
//! successful PUT bumps that image's version counter, which starts at 0 when
//! the server starts.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path as UrlPath, State};
use axum::http::{header, StatusCode};
use axum::response::{Html, IntoResponse, Response};
use axum::routing::get;
use axum::{Json, Router};
use scenetext::dataset::{image_id_of, list_images, load_annotation, save_annotation, GroundTruthAnnotation};
use scenetext::detector::{self, DetectionRecord, DetectorConfig};
use scenetext::RasterImage;
use serde::Serialize;
use serde_json::json;
use tokio::sync::Mutex;
use tower_http::services::ServeDir;

#[derive(Debug)]
struct ImageSlot {
    path: PathBuf,
    width: u32,
    height: u32,
    /// Held while the annotation file is read or replaced; the value is the version.
    version: Mutex<u64>,
}

#[derive(Debug)]
pub struct AppState {
    root: PathBuf,
    images: BTreeMap<String, ImageSlot>,
    detector: DetectorConfig,
    ui_dir: Option<PathBuf>,
}

/// Image files the dataset scan had to leave out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skipped {
    pub path: PathBuf,
    pub reason: String,
}

impl AppState {
    /// Scans `root` for PNG/JPEG images. Images whose header cannot be read are
    /// skipped and returned; two images sharing a stem are an error because
    /// they would share one annotation file.
    pub fn open(
        root: &Path,
        detector: DetectorConfig,
        ui_dir: Option<PathBuf>,
    ) -> Result<(AppState, Vec<Skipped>), String> {
        if !root.is_dir() {
            return Err(format!("{} is not a directory", root.display()));
        }
        let mut images = BTreeMap::new();
        let mut skipped = Vec::new();
        for path in list_images(root).map_err(|e| e.to_string())? {
            let id = image_id_of(&path);
            let (width, height) = match RasterImage::read_dimensions(&path) {
                Ok(d) => d,
                Err(e) => {
                    skipped.push(Skipped {
                        path,
                        reason: e.to_string(),
                    });
                    continue;
                }
            };
            let slot = ImageSlot {
                path,
                width,
                height,
                version: Mutex::new(0),
            };
            if let Some(prev) = images.insert(id.clone(), slot) {
                return Err(format!("{} and another image share the id `{id}`", prev.path.display()));
            }
        }
        let state = AppState {
            root: root.to_path_buf(),
            images,
            detector,
            ui_dir,
        };
        Ok((state, skipped))
    }

    pub fn image_count(&self) -> usize {
        self.images.len()
    }

    pub fn annotation_path(&self, id: &str) -> PathBuf {
        self.root.join(format!("{id}.json"))
    }
}

type Shared = Arc<AppState>;

fn error(status: StatusCode, msg: impl std::fmt::Display) -> Response {
    (status, Json(json!({ "error": msg.to_string() }))).into_response()
}

fn slot<'a>(state: &'a AppState, id: &str) -> Result<&'a ImageSlot, Response> {
    state
        .images
        .get(id)
        .ok_or_else(|| error(StatusCode::NOT_FOUND, format!("unknown image `{id}`")))
}

#[derive(Serialize)]
struct ImageEntry<'a> {
    id: &'a str,
    file: String,
    width: u32,
    height: u32,
    annotated: bool,
    version: u64,
}

async fn list(State(state): State<Shared>) -> Response {
    let mut images = Vec::with_capacity(state.images.len());
    for (id, s) in &state.images {
        images.push(ImageEntry {
            id,
            file: s.path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default(),
            width: s.width,
            height: s.height,
            annotated: state.annotation_path(id).is_file(),
            version: *s.version.lock().await,
        });
    }
    Json(json!({ "images": images })).into_response()
}

async fn image_bytes(State(state): State<Shared>, UrlPath(id): UrlPath<String>) -> Response {
    let s = match slot(&state, &id) {
        Ok(s) => s,
        Err(r) => return r,
    };
    let mime = match s.path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
        Some("png") => "image/png",
        _ => "image/jpeg",
    };
    match tokio::fs::read(&s.path).await {
        Ok(bytes) => ([(header::CONTENT_TYPE, mime)], bytes).into_response(),
        Err(e) => error(StatusCode::INTERNAL_SERVER_ERROR, format!("{}: {e}", s.path.display())),
    }
}

async fn get_annotation(State(state): State<Shared>, UrlPath(id): UrlPath<String>) -> Response {
    let s = match slot(&state, &id) {
        Ok(s) => s,
        Err(r) => return r,
    };
    let version = s.version.lock().await;
    let path = state.annotation_path(&id);
    if !path.exists() {
        let empty = GroundTruthAnnotation::empty(&id, s.width, s.height);
        return Json(json!({ "version": *version, "exists": false, "annotation": empty })).into_response();
    }
    match load_annotation(&path) {
        Ok(ann) => Json(json!({ "version": *version, "exists": true, "annotation": ann })).into_response(),
        Err(e) => error(StatusCode::INTERNAL_SERVER_ERROR, format!("stored annotation is unreadable: {e}")),
    }
}

fn check_put(id: &str, s: &ImageSlot, body: &[u8]) -> Result<GroundTruthAnnotation, String> {
    let text = std::str::from_utf8(body).map_err(|_| "request body must be UTF-8".to_string())?;
    let ann = GroundTruthAnnotation::from_json(text, Path::new("request body")).map_err(|e| e.to_string())?;
    if ann.image_id != id {
        return Err(format!("imageId `{}` does not match `{id}`", ann.image_id));
    }
    if (ann.image_width, ann.image_height) != (s.width, s.height) {
        return Err(format!(
            "annotation is for a {}x{} image but `{id}` is {}x{}",
            ann.image_width, ann.image_height, s.width, s.height
        ));
    }
    Ok(ann)
}

async fn put_annotation(State(state): State<Shared>, UrlPath(id): UrlPath<String>, body: Bytes) -> Response {
    let s = match slot(&state, &id) {
        Ok(s) => s,
        Err(r) => return r,
    };
    let ann = match check_put(&id, s, &body) {
        Ok(a) => a,
        Err(msg) => return error(StatusCode::UNPROCESSABLE_ENTITY, msg),
    };
    let mut version = s.version.lock().await;
    if let Err(e) = save_annotation(&ann, state.annotation_path(&id)) {
        return error(StatusCode::INTERNAL_SERVER_ERROR, e);
    }
    *version += 1;
    Json(json!({ "version": *version, "annotation": ann.canonical() })).into_response()
}

async fn detections(State(state): State<Shared>, UrlPath(id): UrlPath<String>) -> Response {
    let (path, cfg) = match slot(&state, &id) {
        Ok(s) => (s.path.clone(), state.detector.clone()),
        Err(r) => return r,
    };
    let job = tokio::task::spawn_blocking(move || -> scenetext::Result<DetectionRecord> {
        let img = RasterImage::open(&path)?;
        let regions = detector::detect(&img, &cfg)?;
        Ok(DetectionRecord::new(id, img.width(), img.height(), &regions))
    });
    match job.await {
        Ok(Ok(record)) => Json(record).into_response(),
        Ok(Err(e)) => error(StatusCode::INTERNAL_SERVER_ERROR, e),
        Err(e) => error(StatusCode::INTERNAL_SERVER_ERROR, e),
    }
}

const PLACEHOLDER: &str = "<!doctype html>
<html><head><meta charset=\"utf-8\"><title>scenetext annotate</title></head>
<body>
<h1>scenetext annotate</h1>
<p>No UI directory was given (<code>--ui DIR</code>). The JSON API is available:</p>
<ul>
<li><a href=\"/api/images\">GET /api/images</a></li>
<li>GET /api/images/{id}/image</li>
<li>GET, PUT /api/images/{id}/annotation</li>
<li>GET /api/images/{id}/detections</li>
</ul>
</body></html>
";

pub fn router(state: Arc<AppState>) -> Router {
    let ui_dir = state.ui_dir.clone();
    let api = Router::new()
        .route("/api/images", get(list))
        .route("/api/images/{id}/image", get(image_bytes))
        .route("/api/images/{id}/annotation", get(get_annotation).put(put_annotation))
        .route("/api/images/{id}/detections", get(detections))
        .with_state(state);
    match ui_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api.route("/", get(|| async { Html(PLACEHOLDER) })),
    }
}
