use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use scenetext::detector::{compute_edge_mask, merge_detections, DetectorConfig, TextRegion};
use scenetext::eval::edit_distance;
use scenetext::imgproc::{
    canny, connected_components, downsample, max_channel_gx, morph_close, otsu_threshold, sobel_gx,
    to_grayscale, GradientMethod,
};
use scenetext::Rect;
use scenetext_bench::scenes;

fn primitives(c: &mut Criterion) {
    let img = scenes(1).remove(0);
    let gray = to_grayscale(&img).unwrap();
    let grad = max_channel_gx(&img, GradientMethod::Morph).unwrap();
    let edges = compute_edge_mask(&img, &DetectorConfig::default()).unwrap();
    let closed = morph_close(&edges, 9, 3);

    c.bench_function("grayscale", |b| b.iter(|| to_grayscale(black_box(&img)).unwrap()));
    c.bench_function("sobel_gx", |b| b.iter(|| sobel_gx(black_box(&gray)).unwrap()));
    c.bench_function("max_channel_morph_gx", |b| {
        b.iter(|| max_channel_gx(black_box(&img), GradientMethod::Morph).unwrap())
    });
    c.bench_function("canny", |b| b.iter(|| canny(black_box(&gray)).unwrap()));
    c.bench_function("otsu_threshold", |b| b.iter(|| otsu_threshold(black_box(&grad))));
    c.bench_function("close_17x5", |b| b.iter(|| morph_close(black_box(&edges), 17, 5)));
    c.bench_function("close_9x3", |b| b.iter(|| morph_close(black_box(&edges), 9, 3)));
    c.bench_function("connected_components", |b| b.iter(|| connected_components(black_box(&closed))));
    c.bench_function("downsample_1.4", |b| b.iter(|| downsample(black_box(&img), 1.4).unwrap()));

    let boxes: Vec<TextRegion> = (0..200u32)
        .map(|i| TextRegion {
            bbox: Rect::new((i * 37) % 900, (i * 53) % 500, 40 + i % 60, 20 + i % 30),
            scale_index: i % 4,
            weighted_extent: 0.5,
        })
        .collect();
    c.bench_function("merge_200", |b| b.iter(|| merge_detections(black_box(&boxes), 0.8)));

    let gt = "ÇIKIŞ METRO İSTASYONU ".repeat(20);
    let ocr = "CIKIS METR0 ISTASYONU ".repeat(20);
    c.bench_function("edit_distance_440", |b| b.iter(|| edit_distance(black_box(&gt), black_box(&ocr))));
}

criterion_group!(benches, primitives);
criterion_main!(benches);
