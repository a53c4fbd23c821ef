use serde::{Deserialize, Serialize};

use crate::image::{BinaryMask, Rect};

/// Dense component labels: 0 is background, components are numbered `1..=count`
/// in raster order of their first pixel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMap {
    pub width: u32,
    pub height: u32,
    pub labels: Vec<u32>,
    pub count: u32,
}

impl LabelMap {
    pub fn get(&self, x: u32, y: u32) -> u32 {
        self.labels[y as usize * self.width as usize + x as usize]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentStats {
    pub label: u32,
    /// Foreground pixel count.
    pub area: u64,
    pub bbox: Rect,
}

impl ComponentStats {
    pub fn aspect_ratio(&self) -> f64 {
        f64::from(self.bbox.w) / f64::from(self.bbox.h)
    }

    /// Foreground fraction of the bounding box.
    pub fn extent(&self) -> f64 {
        self.area as f64 / self.bbox.area() as f64
    }
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    let mut root = x;
    while parent[root as usize] != root {
        root = parent[root as usize];
    }
    while parent[x as usize] != root {
        let next = parent[x as usize];
        parent[x as usize] = root;
        x = next;
    }
    root
}

fn union(parent: &mut [u32], a: u32, b: u32) -> u32 {
    let ra = find(parent, a);
    let rb = find(parent, b);
    let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
    parent[hi as usize] = lo;
    lo
}

/// Two-pass 8-connected labeling with union-find; per-component area and
/// bounding box are gathered during the relabeling pass.
pub fn connected_components(mask: &BinaryMask) -> (LabelMap, Vec<ComponentStats>) {
    let (w, h) = (mask.width as usize, mask.height as usize);
    let bits = &mask.bits;
    let mut labels = vec![0u32; w * h];
    // provisional label 0 is unused so that labels index directly
    let mut parent: Vec<u32> = vec![0];

    for y in 0..h {
        for x in 0..w {
            let i = y * w + x;
            if !bits[i] {
                continue;
            }
            let mut current = 0u32;
            let mut neighbours = [0u32; 4];
            if x > 0 {
                neighbours[0] = labels[i - 1];
            }
            if y > 0 {
                let up = i - w;
                if x > 0 {
                    neighbours[1] = labels[up - 1];
                }
                neighbours[2] = labels[up];
                if x + 1 < w {
                    neighbours[3] = labels[up + 1];
                }
            }
            for n in neighbours.into_iter().filter(|&n| n != 0) {
                current = if current == 0 {
                    find(&mut parent, n)
                } else {
                    union(&mut parent, current, n)
                };
            }
            if current == 0 {
                current = parent.len() as u32;
                parent.push(current);
            }
            labels[i] = current;
        }
    }

    // roots are the smallest provisional label of each set, and provisional
    // labels were issued in raster order, so numbering roots in increasing
    // order numbers components by their first pixel
    let mut final_label = vec![0u32; parent.len()];
    let mut count = 0u32;
    for l in 1..parent.len() as u32 {
        let r = find(&mut parent, l);
        if r == l {
            count += 1;
            final_label[l as usize] = count;
        }
    }
    for l in 1..parent.len() {
        let r = parent[l] as usize;
        final_label[l] = final_label[r];
    }

    struct Acc {
        area: u64,
        x0: u32,
        y0: u32,
        x1: u32,
        y1: u32,
    }
    let mut acc: Vec<Acc> = (0..count)
        .map(|_| Acc {
            area: 0,
            x0: u32::MAX,
            y0: u32::MAX,
            x1: 0,
            y1: 0,
        })
        .collect();
    for y in 0..h {
        for x in 0..w {
            let i = y * w + x;
            if labels[i] == 0 {
                continue;
            }
            let l = final_label[labels[i] as usize];
            labels[i] = l;
            let a = &mut acc[l as usize - 1];
            a.area += 1;
            a.x0 = a.x0.min(x as u32);
            a.y0 = a.y0.min(y as u32);
            a.x1 = a.x1.max(x as u32);
            a.y1 = a.y1.max(y as u32);
        }
    }

    let stats = acc
        .into_iter()
        .enumerate()
        .map(|(i, a)| ComponentStats {
            label: i as u32 + 1,
            area: a.area,
            bbox: Rect::new(a.x0, a.y0, a.x1 - a.x0 + 1, a.y1 - a.y0 + 1),
        })
        .collect();

    (
        LabelMap {
            width: mask.width,
            height: mask.height,
            labels,
            count,
        },
        stats,
    )
}
