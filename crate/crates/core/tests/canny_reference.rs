//! Canny output compared pixel-for-pixel with masks produced by OpenCV's
//! `Canny(img, 50, 200, apertureSize=3)` on the same synthetic inputs
//! (see data/gen_canny_golden.py).

use scenetext::imgproc::canny;
use scenetext::RasterImage;

fn rectangle(x: u32, y: u32) -> u8 {
    if (5..19).contains(&x) && (4..15).contains(&y) {
        160
    } else {
        30
    }
}

fn disc(x: u32, y: u32) -> u8 {
    let (dx, dy) = (x as i64 - 12, y as i64 - 10);
    if dx * dx + dy * dy < 49 {
        200
    } else {
        40
    }
}

fn texture(x: u32, y: u32) -> u8 {
    ((x * x * 3 + y * 17 + ((x * y) % 23) * 9) % 256) as u8
}

fn golden(name: &str) -> Vec<String> {
    let text = include_str!("data/canny_golden.txt");
    let mut lines = text.lines();
    for l in lines.by_ref() {
        if l == name {
            break;
        }
    }
    lines
        .take_while(|l| !l.is_empty())
        .map(str::to_owned)
        .collect()
}

fn check(name: &str, f: fn(u32, u32) -> u8, w: u32, h: u32) {
    let img = RasterImage::gray_from_fn(w, h, f).unwrap();
    let edges = canny(&img).unwrap();
    let rendered: Vec<String> = (0..h)
        .map(|y| {
            (0..w)
                .map(|x| if edges.get(x, y) { '#' } else { '.' })
                .collect()
        })
        .collect();
    let expected = golden(name);
    assert_eq!(expected.len(), h as usize, "{name}: golden height");
    assert_eq!(
        rendered,
        expected,
        "{name}: mismatch\nours:\n{}\nreference:\n{}",
        rendered.join("\n"),
        expected.join("\n")
    );
}

#[test]
fn rectangle_outline_matches_reference() {
    check("rectangle", rectangle, 24, 20);
}

#[test]
fn disc_matches_reference() {
    check("disc", disc, 25, 21);
}

#[test]
fn texture_matches_reference() {
    check("texture", texture, 31, 17);
}

#[test]
fn rectangle_outline_is_closed() {
    let (w, h) = (24u32, 20u32);
    let img = RasterImage::gray_from_fn(w, h, rectangle).unwrap();
    let edges = canny(&img).unwrap();
    // an 8-connected closed contour blocks every 4-connected path from the
    // border to the interior
    let mut seen = vec![false; (w * h) as usize];
    let mut stack = vec![(0u32, 0u32)];
    while let Some((x, y)) = stack.pop() {
        let i = (y * w + x) as usize;
        if seen[i] || edges.get(x, y) {
            continue;
        }
        seen[i] = true;
        if x > 0 {
            stack.push((x - 1, y));
        }
        if x + 1 < w {
            stack.push((x + 1, y));
        }
        if y > 0 {
            stack.push((x, y - 1));
        }
        if y + 1 < h {
            stack.push((x, y + 1));
        }
    }
    assert!(!seen[(9 * w + 12) as usize]);
}
