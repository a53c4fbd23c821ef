use crate::image::Rect;

use super::TextRegion;

/// Vertical overlap needed, relative to the shorter box, to share a line.
pub const LINE_OVERLAP_FRACTION: f64 = 0.5;

fn same_line(a: &Rect, b: &Rect) -> bool {
    let top = a.y.max(b.y);
    let bottom = a.bottom().min(b.bottom());
    let overlap = bottom.saturating_sub(top);
    f64::from(overlap) >= LINE_OVERLAP_FRACTION * f64::from(a.h.min(b.h))
}

/// Reading-order permutation of `rects`: boxes are grouped into lines (a box
/// joins the first line holding a box it vertically overlaps by at least half
/// the shorter height), lines go top to bottom, boxes within a line left to right.
pub fn reading_order(rects: &[Rect]) -> Vec<usize> {
    let mut by_top: Vec<usize> = (0..rects.len()).collect();
    by_top.sort_by_key(|&i| (rects[i].y, rects[i].x, i));

    let mut lines: Vec<Vec<usize>> = Vec::new();
    for i in by_top {
        match lines
            .iter_mut()
            .find(|line| line.iter().any(|&j| same_line(&rects[i], &rects[j])))
        {
            Some(line) => line.push(i),
            None => lines.push(vec![i]),
        }
    }
    lines
        .into_iter()
        .flat_map(|mut line| {
            line.sort_by_key(|&i| (rects[i].x, rects[i].y, i));
            line
        })
        .collect()
}

pub fn sort_reading_order(regions: &[TextRegion]) -> Vec<TextRegion> {
    let rects: Vec<Rect> = regions.iter().map(|r| r.bbox).collect();
    reading_order(&rects).into_iter().map(|i| regions[i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn top_before_bottom() {
        let rects = [Rect::new(0, 200, 50, 20), Rect::new(300, 10, 50, 20)];
        assert_eq!(reading_order(&rects), vec![1, 0]);
    }

    #[test]
    fn same_line_left_first() {
        // overlap [105, 130) = 25 >= 15
        let rects = [Rect::new(300, 100, 80, 30), Rect::new(10, 105, 80, 30)];
        assert_eq!(reading_order(&rects), vec![1, 0]);
    }

    #[test]
    fn small_overlap_starts_new_line() {
        // overlap [120, 130) = 10 < 15
        let rects = [Rect::new(300, 100, 80, 30), Rect::new(10, 120, 80, 30)];
        assert_eq!(reading_order(&rects), vec![0, 1]);
    }

    #[test]
    fn empty() {
        assert!(reading_order(&[]).is_empty());
    }
}
