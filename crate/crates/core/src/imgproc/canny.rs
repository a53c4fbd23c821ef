use crate::error::Result;
use crate::image::{BinaryMask, RasterImage};

pub const CANNY_LOW_THRESHOLD: i32 = 50;
pub const CANNY_HIGH_THRESHOLD: i32 = 200;

// tan(22.5 deg) in Q15
const TG22: i64 = 13573;
const SHIFT: u32 = 15;

/// Canny edges without Gaussian pre-smoothing: 3x3 Sobel derivatives with
/// replicated borders, L1 magnitude, non-maximum suppression quantized to four
/// directions, then hysteresis with low 50 / high 200 over 8-neighbourhoods.
pub fn canny(img: &RasterImage) -> Result<BinaryMask> {
    canny_with_thresholds(img, CANNY_LOW_THRESHOLD, CANNY_HIGH_THRESHOLD)
}

pub(crate) fn canny_with_thresholds(img: &RasterImage, low: i32, high: i32) -> Result<BinaryMask> {
    img.require_channels(1)?;
    img.require_min_size(3, 3)?;
    let (w, h) = (img.width() as usize, img.height() as usize);
    let src = img.data();
    let at = |x: isize, y: isize| -> i32 {
        let xc = x.clamp(0, w as isize - 1) as usize;
        let yc = y.clamp(0, h as isize - 1) as usize;
        i32::from(src[yc * w + xc])
    };

    let mut dx = vec![0i32; w * h];
    let mut dy = vec![0i32; w * h];
    // padded by one on every side, zero outside
    let pw = w + 2;
    let mut mag = vec![0i32; pw * (h + 2)];
    for y in 0..h {
        for x in 0..w {
            let (xi, yi) = (x as isize, y as isize);
            let gx = at(xi + 1, yi - 1) + 2 * at(xi + 1, yi) + at(xi + 1, yi + 1)
                - at(xi - 1, yi - 1)
                - 2 * at(xi - 1, yi)
                - at(xi - 1, yi + 1);
            let gy = at(xi - 1, yi + 1) + 2 * at(xi, yi + 1) + at(xi + 1, yi + 1)
                - at(xi - 1, yi - 1)
                - 2 * at(xi, yi - 1)
                - at(xi + 1, yi - 1);
            dx[y * w + x] = gx;
            dy[y * w + x] = gy;
            mag[(y + 1) * pw + x + 1] = gx.abs() + gy.abs();
        }
    }

    const CANDIDATE: u8 = 0;
    const NOT_EDGE: u8 = 1;
    const EDGE: u8 = 2;
    let mut map = vec![NOT_EDGE; pw * (h + 2)];
    let mut stack = Vec::new();

    for y in 0..h {
        for x in 0..w {
            let j = (y + 1) * pw + x + 1;
            let m = mag[j];
            if m <= low {
                continue;
            }
            let xs = dx[y * w + x];
            let ys = dy[y * w + x];
            let ax = i64::from(xs.abs());
            let ay = i64::from(ys.abs()) << SHIFT;
            let tg22x = ax * TG22;
            let is_max = if ay < tg22x {
                m > mag[j - 1] && m >= mag[j + 1]
            } else {
                let tg67x = tg22x + (ax << (SHIFT + 1));
                if ay > tg67x {
                    m > mag[j - pw] && m >= mag[j + pw]
                } else {
                    let s: isize = if (xs ^ ys) < 0 { -1 } else { 1 };
                    m > mag[(j - pw).wrapping_add_signed(-s)] && m > mag[(j + pw).wrapping_add_signed(s)]
                }
            };
            if !is_max {
                continue;
            }
            if m > high {
                map[j] = EDGE;
                stack.push(j);
            } else {
                map[j] = CANDIDATE;
            }
        }
    }

    while let Some(j) = stack.pop() {
        for n in [
            j - pw - 1,
            j - pw,
            j - pw + 1,
            j - 1,
            j + 1,
            j + pw - 1,
            j + pw,
            j + pw + 1,
        ] {
            if map[n] == CANDIDATE {
                map[n] = EDGE;
                stack.push(n);
            }
        }
    }

    BinaryMask::from_fn(img.width(), img.height(), |x, y| {
        map[(y as usize + 1) * pw + x as usize + 1] == EDGE
    })
}
