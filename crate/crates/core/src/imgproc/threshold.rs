use crate::image::{BinaryMask, GradientImage};

/// Full 256-bit product of two `u128` values as `(high, low)`.
fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    const MASK: u128 = u64::MAX as u128;
    let (a_hi, a_lo) = (a >> 64, a & MASK);
    let (b_hi, b_lo) = (b >> 64, b & MASK);
    let lo_lo = a_lo * b_lo;
    let mid1 = a_hi * b_lo;
    let mid2 = a_lo * b_hi;
    let hi_hi = a_hi * b_hi;
    let (mid, mid_carry) = mid1.overflowing_add(mid2);
    let (lo, lo_carry) = lo_lo.overflowing_add(mid << 64);
    let hi = hi_hi + (mid >> 64) + ((mid_carry as u128) << 64) + lo_carry as u128;
    (hi, lo)
}

/// Otsu's threshold over the 256-bin histogram of `grad`.
///
/// Returns the level `t` maximizing the between-class variance of the split
/// `{v <= t}` / `{v > t}`. Ties resolve to the smallest level. A constant image
/// has no valid split; its value is returned so that the mask comes out empty.
///
/// Variances are compared exactly: up to a constant factor the between-class
/// variance is `(N * s0 - n0 * S)^2 / (n0 * n1)`, and two such fractions are
/// compared by cross-multiplying in 256-bit integers.
pub fn otsu_level(grad: &GradientImage) -> u8 {
    let mut hist = [0u64; 256];
    for &v in grad.values() {
        hist[v as usize] += 1;
    }
    let total = grad.values().len() as u128;
    let sum_all: u128 = hist.iter().enumerate().map(|(i, &n)| i as u128 * u128::from(n)).sum();

    // (level, squared numerator, denominator)
    let mut best: Option<(u8, u128, u128)> = None;
    let (mut n0, mut s0) = (0u128, 0u128);
    for t in 0..256usize {
        n0 += u128::from(hist[t]);
        s0 += t as u128 * u128::from(hist[t]);
        let n1 = total - n0;
        if n0 == 0 || n1 == 0 {
            continue;
        }
        let diff = (total * s0).abs_diff(n0 * sum_all);
        let num = diff * diff;
        let den = n0 * n1;
        let better = match best {
            None => true,
            Some((_, bn, bd)) => mul_wide(num, bd) > mul_wide(bn, den),
        };
        if better {
            best = Some((t as u8, num, den));
        }
    }
    match best {
        Some((t, _, _)) => t,
        // single populated bin
        None => grad.values()[0],
    }
}

/// Otsu binarization: foreground where the gradient exceeds [`otsu_level`].
pub fn otsu_threshold(grad: &GradientImage) -> BinaryMask {
    threshold_above(grad, otsu_level(grad))
}

pub fn threshold_above(grad: &GradientImage, level: u8) -> BinaryMask {
    let bits = grad.values().iter().map(|&v| v > level).collect();
    BinaryMask::new(grad.width(), grad.height(), bits).expect("same dimensions as gradient")
}
