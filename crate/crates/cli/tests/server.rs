use std::path::Path;
use std::sync::Arc;

use axum::body::Body;
use axum::http::{header, Method, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use scenetext::dataset::{AnnotatedBox, GroundTruthAnnotation};
use scenetext::detector::{DetectionRecord, DetectorConfig};
use scenetext::synth::text_scene;
use scenetext::RasterImage;
use scenetext_cli::server::{router, AppState};
use serde_json::Value;
use tower::ServiceExt;

const W: u32 = 320;
const H: u32 = 200;

fn dataset(dir: &Path, n: u64) {
    for i in 0..n {
        text_scene(i, W, H).image.save(dir.join(format!("img{i}.png"))).unwrap();
    }
}

fn app(dir: &Path) -> Router {
    let (state, skipped) = AppState::open(dir, DetectorConfig::default(), None).unwrap();
    assert!(skipped.is_empty());
    router(Arc::new(state))
}

async fn send(app: &Router, method: Method, uri: &str, body: Option<String>) -> (StatusCode, Vec<u8>, Option<String>) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header(header::CONTENT_TYPE, "application/json")
        .body(body.map(Body::from).unwrap_or_else(Body::empty))
        .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let ctype = resp
        .headers()
        .get(header::CONTENT_TYPE)
        .map(|v| v.to_str().unwrap().to_owned());
    let bytes = resp.into_body().collect().await.unwrap().to_bytes().to_vec();
    (status, bytes, ctype)
}

async fn json(app: &Router, method: Method, uri: &str, body: Option<String>) -> (StatusCode, Value) {
    let (status, bytes, _) = send(app, method, uri, body).await;
    (status, serde_json::from_slice(&bytes).unwrap())
}

fn sample(id: &str) -> GroundTruthAnnotation {
    GroundTruthAnnotation {
        image_id: id.into(),
        image_width: W,
        image_height: H,
        boxes: vec![
            AnnotatedBox {
                x: 40,
                y: 120,
                w: 100,
                h: 30,
                transcription: "METRO İSTASYONU".into(),
            },
            AnnotatedBox {
                x: 10,
                y: 20,
                w: 90,
                h: 25,
                transcription: "ÇIKIŞ".into(),
            },
        ],
    }
}

#[tokio::test]
async fn lists_every_image() {
    let dir = tempfile::tempdir().unwrap();
    dataset(dir.path(), 3);
    let app = app(dir.path());
    let (status, body) = json(&app, Method::GET, "/api/images", None).await;
    assert_eq!(status, StatusCode::OK);
    let images = body["images"].as_array().unwrap();
    assert_eq!(images.len(), 3);
    let ids: Vec<_> = images.iter().map(|i| i["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["img0", "img1", "img2"]);
    assert_eq!(images[0]["width"], W);
    assert_eq!(images[0]["height"], H);
    assert_eq!(images[0]["annotated"], false);
    assert_eq!(images[0]["version"], 0);
}

#[tokio::test]
async fn put_then_get_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    dataset(dir.path(), 1);
    let app = app(dir.path());
    let ann = sample("img0");

    let (status, body) = json(&app, Method::PUT, "/api/images/img0/annotation", Some(serde_json::to_string(&ann).unwrap())).await;
    assert_eq!(status, StatusCode::OK, "{body}");
    assert_eq!(body["version"], 1);

    let saved = std::fs::read_to_string(dir.path().join("img0.json")).unwrap();
    assert_eq!(saved, ann.to_canonical_json());

    let (status, body) = json(&app, Method::GET, "/api/images/img0/annotation", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["version"], 1);
    assert_eq!(body["exists"], true);
    let back: GroundTruthAnnotation = serde_json::from_value(body["annotation"].clone()).unwrap();
    assert_eq!(back, ann.canonical());
    assert!(back.boxes.iter().any(|b| b.transcription == "ÇIKIŞ"));

    let (_, listing) = json(&app, Method::GET, "/api/images", None).await;
    assert_eq!(listing["images"][0]["annotated"], true);
}

#[tokio::test]
async fn unannotated_image_gets_an_empty_annotation() {
    let dir = tempfile::tempdir().unwrap();
    dataset(dir.path(), 1);
    let (status, body) = json(&app(dir.path()), Method::GET, "/api/images/img0/annotation", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["exists"], false);
    let ann: GroundTruthAnnotation = serde_json::from_value(body["annotation"].clone()).unwrap();
    assert_eq!(ann, GroundTruthAnnotation::empty("img0", W, H));
    assert!(!dir.path().join("img0.json").exists());
}

#[tokio::test]
async fn invalid_put_is_rejected_and_file_untouched() {
    let dir = tempfile::tempdir().unwrap();
    dataset(dir.path(), 1);
    let app = app(dir.path());
    let good = sample("img0");
    let (status, _) = json(&app, Method::PUT, "/api/images/img0/annotation", Some(serde_json::to_string(&good).unwrap())).await;
    assert_eq!(status, StatusCode::OK);
    let before = std::fs::read(dir.path().join("img0.json")).unwrap();

    let mut out_of_bounds = good.clone();
    out_of_bounds.boxes[0].x = W - 10;
    let mut wrong_id = good.clone();
    wrong_id.image_id = "img9".into();
    let mut wrong_size = good.clone();
    wrong_size.image_width = W + 1;
    let mut zero = good.clone();
    zero.boxes[1].h = 0;
    let bodies = [
        serde_json::to_string(&out_of_bounds).unwrap(),
        serde_json::to_string(&wrong_id).unwrap(),
        serde_json::to_string(&wrong_size).unwrap(),
        serde_json::to_string(&zero).unwrap(),
        "{\"imageId\": ".to_string(),
        "{\"imageId\":\"img0\",\"imageWidth\":320,\"imageHeight\":200,\"boxes\":[],\"extra\":1}".to_string(),
    ];
    for body in bodies {
        let (status, resp) = json(&app, Method::PUT, "/api/images/img0/annotation", Some(body.clone())).await;
        assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY, "{body}");
        assert!(!resp["error"].as_str().unwrap().is_empty());
        assert_eq!(std::fs::read(dir.path().join("img0.json")).unwrap(), before);
    }
    let (_, body) = json(&app, Method::GET, "/api/images/img0/annotation", None).await;
    assert_eq!(body["version"], 1);
}

#[tokio::test]
async fn unknown_ids_are_404() {
    let dir = tempfile::tempdir().unwrap();
    dataset(dir.path(), 1);
    let app = app(dir.path());
    for uri in [
        "/api/images/nope/image",
        "/api/images/nope/annotation",
        "/api/images/nope/detections",
        "/api/images/..%2Fimg0/image",
    ] {
        let (status, _, _) = send(&app, Method::GET, uri, None).await;
        assert_eq!(status, StatusCode::NOT_FOUND, "{uri}");
    }
    let body = serde_json::to_string(&sample("nope")).unwrap();
    let (status, _, _) = send(&app, Method::PUT, "/api/images/nope/annotation", Some(body)).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn serves_image_bytes() {
    let dir = tempfile::tempdir().unwrap();
    dataset(dir.path(), 2);
    let (status, bytes, ctype) = send(&app(dir.path()), Method::GET, "/api/images/img1/image", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(ctype.as_deref(), Some("image/png"));
    assert_eq!(bytes, std::fs::read(dir.path().join("img1.png")).unwrap());
    assert_eq!(RasterImage::decode(&bytes).unwrap(), text_scene(1, W, H).image);
}

#[tokio::test]
async fn detections_match_the_library() {
    let dir = tempfile::tempdir().unwrap();
    dataset(dir.path(), 1);
    let (status, body) = json(&app(dir.path()), Method::GET, "/api/images/img0/detections", None).await;
    assert_eq!(status, StatusCode::OK);
    let record: DetectionRecord = serde_json::from_value(body).unwrap();
    let img = text_scene(0, W, H).image;
    let regions = scenetext::detector::detect(&img, &DetectorConfig::default()).unwrap();
    assert_eq!(record, DetectionRecord::new("img0", W, H, &regions));
}

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn concurrent_puts_get_distinct_versions() {
    let dir = tempfile::tempdir().unwrap();
    dataset(dir.path(), 1);
    let app = app(dir.path());
    let n = 12u32;
    let mut tasks = Vec::new();
    for k in 0..n {
        let app = app.clone();
        let mut ann = sample("img0");
        ann.boxes[0].w = 50 + k;
        let body = serde_json::to_string(&ann).unwrap();
        tasks.push(tokio::spawn(async move {
            let (status, resp) = json(&app, Method::PUT, "/api/images/img0/annotation", Some(body)).await;
            assert_eq!(status, StatusCode::OK);
            (resp["version"].as_u64().unwrap(), ann)
        }));
    }
    let mut results = Vec::new();
    for t in tasks {
        results.push(t.await.unwrap());
    }
    let mut versions: Vec<u64> = results.iter().map(|r| r.0).collect();
    versions.sort_unstable();
    assert_eq!(versions, (1..=u64::from(n)).collect::<Vec<_>>());

    // last writer wins: the file holds the canonical form of the highest version
    let last = &results.iter().max_by_key(|r| r.0).unwrap().1;
    let saved = std::fs::read_to_string(dir.path().join("img0.json")).unwrap();
    assert_eq!(saved, last.to_canonical_json());
}

#[tokio::test]
async fn index_placeholder_and_ui_dir() {
    let dir = tempfile::tempdir().unwrap();
    dataset(dir.path(), 1);
    let (status, bytes, _) = send(&app(dir.path()), Method::GET, "/", None).await;
    assert_eq!(status, StatusCode::OK);
    assert!(String::from_utf8(bytes).unwrap().contains("/api/images"));

    let ui = tempfile::tempdir().unwrap();
    std::fs::write(ui.path().join("index.html"), "<p>annotator</p>").unwrap();
    let (state, _) = AppState::open(dir.path(), DetectorConfig::default(), Some(ui.path().to_path_buf())).unwrap();
    let app = router(Arc::new(state));
    let (status, bytes, _) = send(&app, Method::GET, "/", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(bytes, b"<p>annotator</p>");
    let (status, _) = json(&app, Method::GET, "/api/images", None).await;
    assert_eq!(status, StatusCode::OK);
}

#[test]
fn scan_rejects_shared_stems_and_skips_broken_files() {
    let dir = tempfile::tempdir().unwrap();
    dataset(dir.path(), 1);
    std::fs::write(dir.path().join("broken.png"), b"not a png").unwrap();
    let (state, skipped) = AppState::open(dir.path(), DetectorConfig::default(), None).unwrap();
    assert_eq!(state.image_count(), 1);
    assert_eq!(skipped.len(), 1);

    text_scene(5, 80, 80).image.save(dir.path().join("img0.jpg")).unwrap();
    assert!(AppState::open(dir.path(), DetectorConfig::default(), None).is_err());
    assert!(AppState::open(&dir.path().join("missing"), DetectorConfig::default(), None).is_err());
}
