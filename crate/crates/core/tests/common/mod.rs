//! Brute-force reference implementations shared by the property and
//! acceptance tests. Each one follows the textbook definition as directly as
//! possible and shares no code with the library.

#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scenetext::imgproc::{connected_components, max_channel_gx, GradientMethod};
use scenetext::{BinaryMask, GradientImage, RasterImage};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Tries every level and keeps the first one with the largest between-class
/// variance. Variances are compared exactly as fractions:
/// `sigma_b^2 * N^2 = (n1*S0 - n0*S1)^2 / (n0*n1)`.
pub fn otsu_oracle(values: &[u8]) -> u8 {
    let mut best: Option<(u8, u128, u128)> = None;
    for t in 0..=255u8 {
        let (mut n0, mut s0, mut n1, mut s1) = (0i128, 0i128, 0i128, 0i128);
        for &v in values {
            if v <= t {
                n0 += 1;
                s0 += i128::from(v);
            } else {
                n1 += 1;
                s1 += i128::from(v);
            }
        }
        if n0 == 0 || n1 == 0 {
            continue;
        }
        let num = (n1 * s0 - n0 * s1).pow(2) as u128;
        let den = (n0 * n1) as u128;
        let better = match best {
            None => true,
            Some((_, bn, bd)) => num * bd > bn * den,
        };
        if better {
            best = Some((t, num, den));
        }
    }
    best.map_or(values[0], |(t, _, _)| t)
}

/// Random 64x64 gradient images: half are gradients of random pictures,
/// half are raw histograms of assorted shapes.
pub fn random_gradient(seed: u64) -> GradientImage {
    let mut r = rng(seed);
    let (w, h) = (64u32, 64u32);
    if seed % 2 == 0 {
        let blocks = r.gen_range(2..12);
        let cells: Vec<[u8; 3]> = (0..blocks * blocks).map(|_| r.gen()).collect();
        let noise = r.gen_range(0..40u8);
        let mut r2 = rng(seed ^ 0xabcdef);
        let img = RasterImage::rgb_from_fn(w, h, |x, y| {
            let c = cells[(y * blocks / h * blocks + x * blocks / w) as usize];
            c.map(|v| v.saturating_add(r2.gen_range(0..=noise)))
        })
        .unwrap();
        let method = if seed % 4 == 0 { GradientMethod::Sobel } else { GradientMethod::Morph };
        max_channel_gx(&img, method).unwrap()
    } else {
        let kind = r.gen_range(0..4);
        let values = (0..w * h)
            .map(|_| match kind {
                0 => r.gen(),
                1 => r.gen_range(0..8u8) * 30,
                2 => {
                    if r.gen_bool(0.15) {
                        r.gen_range(150..=255)
                    } else {
                        r.gen_range(0..40)
                    }
                }
                _ => r.gen_range(0..3u8),
            })
            .collect();
        GradientImage::new(w, h, values).unwrap()
    }
}

/// Breadth-first 8-connected labeling, numbering components in the raster
/// order of their first pixel. Returns labels and (area, x0, y0, x1, y1).
pub fn flood_fill_labels(mask: &BinaryMask) -> (Vec<u32>, Vec<(u64, u32, u32, u32, u32)>) {
    let (w, h) = (mask.width(), mask.height());
    let mut labels = vec![0u32; (w * h) as usize];
    let mut stats = Vec::new();
    for sy in 0..h {
        for sx in 0..w {
            if !mask.get(sx, sy) || labels[(sy * w + sx) as usize] != 0 {
                continue;
            }
            let label = stats.len() as u32 + 1;
            let mut s = (0u64, sx, sy, sx, sy);
            let mut queue = VecDeque::from([(sx, sy)]);
            labels[(sy * w + sx) as usize] = label;
            while let Some((x, y)) = queue.pop_front() {
                s.0 += 1;
                s.1 = s.1.min(x);
                s.2 = s.2.min(y);
                s.3 = s.3.max(x);
                s.4 = s.4.max(y);
                for dy in -1i64..=1 {
                    for dx in -1i64..=1 {
                        let (nx, ny) = (i64::from(x) + dx, i64::from(y) + dy);
                        if nx < 0 || ny < 0 || nx >= i64::from(w) || ny >= i64::from(h) {
                            continue;
                        }
                        let (nx, ny) = (nx as u32, ny as u32);
                        let i = (ny * w + nx) as usize;
                        if mask.get(nx, ny) && labels[i] == 0 {
                            labels[i] = label;
                            queue.push_back((nx, ny));
                        }
                    }
                }
            }
            stats.push(s);
        }
    }
    (labels, stats)
}

pub fn random_mask(seed: u64) -> BinaryMask {
    let mut r = rng(seed);
    let w = r.gen_range(1..=64);
    let h = r.gen_range(1..=64);
    let density = r.gen_range(0.05..0.7);
    BinaryMask::from_fn(w, h, |_, _| r.gen_bool(density)).unwrap()
}

/// Compares the library labeling with the flood-fill oracle; `Err` explains
/// the first difference.
pub fn check_components(mask: &BinaryMask) -> Result<(), String> {
    let (map, comps) = connected_components(mask);
    let (labels, stats) = flood_fill_labels(mask);
    if map.labels != labels {
        return Err("label maps differ".into());
    }
    if comps.len() != stats.len() || map.count as usize != stats.len() {
        return Err(format!("{} components, oracle {}", comps.len(), stats.len()));
    }
    for (c, s) in comps.iter().zip(&stats) {
        let b = c.bbox;
        if (c.area, b.x, b.y, b.right() - 1, b.bottom() - 1) != *s {
            return Err(format!("component {} stats {:?} vs {:?}", c.label, c, s));
        }
    }
    let total: u64 = comps.iter().map(|c| c.area).sum();
    if total != mask.count() as u64 {
        return Err(format!("areas sum to {total}, mask has {}", mask.count()));
    }
    Ok(())
}

/// Edit distance straight from the recursive definition, memoized on the
/// suffix positions so that length-12 inputs stay tractable.
pub fn edit_distance_oracle(a: &str, b: &str) -> usize {
    fn go(a: &[char], b: &[char], memo: &mut HashMap<(usize, usize), usize>) -> usize {
        if a.is_empty() {
            return b.len();
        }
        if b.is_empty() {
            return a.len();
        }
        let key = (a.len(), b.len());
        if let Some(&d) = memo.get(&key) {
            return d;
        }
        let sub = go(&a[1..], &b[1..], memo) + usize::from(a[0] != b[0]);
        let del = go(&a[1..], b, memo) + 1;
        let ins = go(a, &b[1..], memo) + 1;
        let d = sub.min(del).min(ins);
        memo.insert(key, d);
        d
    }
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    go(&a, &b, &mut HashMap::new())
}

pub const TURKISH_ALPHABET: &[char] = &[
    'a', 'b', 'c', 'ç', 'd', 'e', 'ğ', 'ı', 'i', 'ö', 'ş', 'ü', 'A', 'Ç', 'Ğ', 'I', 'İ', 'Ö', 'Ş', 'Ü', ' ',
];

pub fn random_turkish(r: &mut impl Rng, max_len: usize) -> String {
    let n = r.gen_range(0..=max_len);
    (0..n)
        .map(|_| TURKISH_ALPHABET[r.gen_range(0..TURKISH_ALPHABET.len())])
        .collect()
}
