use crate::image::BinaryMask;

#[derive(Clone, Copy)]
enum Combine {
    Any,
    All,
}

/// Binary dilation with a `kernel_w` x `kernel_h` rectangle anchored at its centre.
pub fn dilate(mask: &BinaryMask, kernel_w: u32, kernel_h: u32) -> BinaryMask {
    let (ax, ay) = (kernel_w / 2, kernel_h / 2);
    // reflected element
    box_filter(mask, kernel_w - 1 - ax, ax, kernel_h - 1 - ay, ay, Combine::Any)
}

/// Binary erosion with a `kernel_w` x `kernel_h` rectangle anchored at its centre.
pub fn erode(mask: &BinaryMask, kernel_w: u32, kernel_h: u32) -> BinaryMask {
    let (ax, ay) = (kernel_w / 2, kernel_h / 2);
    box_filter(mask, ax, kernel_w - 1 - ax, ay, kernel_h - 1 - ay, Combine::All)
}

/// Closing (dilation then erosion). Kernel sides of zero are treated as one.
pub fn morph_close(mask: &BinaryMask, kernel_w: u32, kernel_h: u32) -> BinaryMask {
    let (kw, kh) = (kernel_w.max(1), kernel_h.max(1));
    erode(&dilate(mask, kw, kh), kw, kh)
}

/// Separable rectangular OR/AND filter. The window of pixel `x` spans
/// `[x - before, x + after]` clipped to the image, which is the same as
/// replicating the border for min/max filters.
fn box_filter(
    mask: &BinaryMask,
    left: u32,
    right: u32,
    up: u32,
    down: u32,
    combine: Combine,
) -> BinaryMask {
    let (w, h) = (mask.width as usize, mask.height as usize);
    let src = &mask.bits;

    let mut horiz = vec![false; w * h];
    let mut prefix = vec![0u32; w + 1];
    for y in 0..h {
        let row = &src[y * w..][..w];
        for x in 0..w {
            prefix[x + 1] = prefix[x] + u32::from(row[x]);
        }
        let out = &mut horiz[y * w..][..w];
        for (x, o) in out.iter_mut().enumerate() {
            let lo = x.saturating_sub(left as usize);
            let hi = (x + right as usize + 1).min(w);
            *o = decide(prefix[hi] - prefix[lo], (hi - lo) as u32, combine);
        }
    }

    let mut col_prefix = vec![0u32; w * (h + 1)];
    for y in 0..h {
        for x in 0..w {
            col_prefix[(y + 1) * w + x] = col_prefix[y * w + x] + u32::from(horiz[y * w + x]);
        }
    }
    let mut bits = vec![false; w * h];
    for y in 0..h {
        let lo = y.saturating_sub(up as usize);
        let hi = (y + down as usize + 1).min(h);
        let len = (hi - lo) as u32;
        for x in 0..w {
            let count = col_prefix[hi * w + x] - col_prefix[lo * w + x];
            bits[y * w + x] = decide(count, len, combine);
        }
    }
    BinaryMask {
        width: mask.width,
        height: mask.height,
        bits,
    }
}

#[inline]
fn decide(count: u32, len: u32, combine: Combine) -> bool {
    match combine {
        Combine::Any => count > 0,
        Combine::All => count == len,
    }
}
