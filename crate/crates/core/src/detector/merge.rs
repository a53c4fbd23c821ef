use std::cmp::Reverse;

use super::TextRegion;

/// Intersection area over the smaller of the two areas.
pub fn overlap_ratio(a: &TextRegion, b: &TextRegion) -> f64 {
    let smaller = a.bbox.area().min(b.bbox.area());
    if smaller == 0 {
        return 0.0;
    }
    a.bbox.intersection_area(&b.bbox) as f64 / smaller as f64
}

/// Combines detections from all scales. Regions are visited largest first;
/// a region is dropped when it lies inside an already kept region or when its
/// overlap ratio with one exceeds `overlap_threshold` (the kept region is never
/// smaller). Output is in visiting order.
pub fn merge_detections(regions: &[TextRegion], overlap_threshold: f64) -> Vec<TextRegion> {
    let mut order: Vec<&TextRegion> = regions.iter().collect();
    order.sort_by_key(|r| {
        (
            Reverse(r.bbox.area()),
            r.bbox.y,
            r.bbox.x,
            r.bbox.h,
            r.bbox.w,
            r.scale_index,
        )
    });
    let mut kept: Vec<TextRegion> = Vec::with_capacity(order.len());
    for candidate in order {
        let redundant = kept.iter().any(|k| {
            k.bbox.contains(&candidate.bbox) || overlap_ratio(k, candidate) > overlap_threshold
        });
        if !redundant {
            kept.push(*candidate);
        }
    }
    kept
}
