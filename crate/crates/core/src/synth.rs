//! Synthetic scene-text fixtures: dark text lines rendered with the bundled
//! DejaVu Sans faces on plain light backgrounds, plus blank and noise-only images. Used by tests, benchmarks and
//! the `synth` CLI subcommand.

use ab_glyph::{Font, FontRef, PxScale, ScaleFont};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::dataset::{AnnotatedBox, GroundTruthAnnotation};
use crate::image::{RasterImage, Rect};

static REGULAR: &[u8] = include_bytes!("../assets/DejaVuSans.ttf");
static BOLD: &[u8] = include_bytes!("../assets/DejaVuSans-Bold.ttf");

/// Bundled DejaVu Sans faces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Typeface {
    #[default]
    Regular,
    Bold,
}

impl Typeface {
    fn font(self) -> FontRef<'static> {
        let bytes = match self {
            Typeface::Regular => REGULAR,
            Typeface::Bold => BOLD,
        };
        FontRef::try_from_slice(bytes).expect("bundled font parses")
    }
}

/// Pixel scale at which capital letters are `cap_height` pixels tall.
fn scale_for(font: &FontRef<'_>, cap_height: u32) -> PxScale {
    let cap = font
        .outline(font.glyph_id('H'))
        .map(|o| (o.bounds.max.y - o.bounds.min.y).abs())
        .expect("font has H");
    PxScale::from(cap_height as f32 * font.height_unscaled() / cap)
}

/// Vertical ink extent of `text` relative to the capital-letter height: 1.0
/// for plain capitals, larger when accents or cedillas stick out.
pub fn ink_height_ratio(text: &str, face: Typeface) -> f64 {
    let font = face.font();
    let cap = font
        .outline(font.glyph_id('H'))
        .map(|o| (o.bounds.max.y - o.bounds.min.y).abs())
        .expect("font has H");
    let (mut top, mut bottom) = (cap, 0.0f32);
    for c in text.chars() {
        if let Some(o) = font.outline(font.glyph_id(c)) {
            top = top.max(o.bounds.max.y.max(o.bounds.min.y));
            bottom = bottom.min(o.bounds.min.y.min(o.bounds.max.y));
        }
    }
    f64::from((top - bottom) / cap)
}

/// Horizontal advance of `text` at cap height `height`, kerning included.
pub fn text_width(text: &str, height: u32, face: Typeface) -> u32 {
    let font = face.font();
    let scaled = font.as_scaled(scale_for(&font, height));
    let mut width = 0.0f32;
    let mut prev = None;
    for c in text.chars() {
        let id = font.glyph_id(c);
        if let Some(p) = prev {
            width += scaled.kern(p, id);
        }
        width += scaled.h_advance(id);
        prev = Some(id);
    }
    width.ceil() as u32
}

/// Draws `text` with anti-aliasing so that capital letters span rows
/// `y..y + height` starting at column `x`. Accents may ink a little above `y`
/// and below the baseline. Returns the box of pixels with at least half ink
/// coverage, if any.
pub fn draw_text(
    img: &mut RasterImage,
    text: &str,
    x: u32,
    y: u32,
    height: u32,
    color: [u8; 3],
    face: Typeface,
) -> Option<Rect> {
    let font = face.font();
    let scaled = font.as_scaled(scale_for(&font, height));
    let (iw, ih) = (img.width() as i64, img.height() as i64);
    let c = img.channels() as usize;
    let baseline = y as f32 + height as f32;
    let mut cursor = x as f32;
    let mut prev = None;
    let mut ink: Option<(i64, i64, i64, i64)> = None;
    for ch in text.chars() {
        let id = font.glyph_id(ch);
        if let Some(p) = prev {
            cursor += scaled.kern(p, id);
        }
        let glyph = id.with_scale_and_position(scaled.scale(), ab_glyph::point(cursor, baseline));
        cursor += scaled.h_advance(id);
        prev = Some(id);
        let Some(outlined) = font.outline_glyph(glyph) else { continue };
        let b = outlined.px_bounds();
        let data = img.data_mut();
        outlined.draw(|gx, gy, cov| {
            let px = b.min.x as i64 + i64::from(gx);
            let py = b.min.y as i64 + i64::from(gy);
            if px < 0 || py < 0 || px >= iw || py >= ih || cov <= 0.0 {
                return;
            }
            let cov = cov.min(1.0);
            let i = (py as usize * iw as usize + px as usize) * c;
            for k in 0..c {
                let bg = f32::from(data[i + k]);
                let fg = f32::from(color[k.min(2)]);
                data[i + k] = (bg + (fg - bg) * cov).round() as u8;
            }
            if cov >= 0.5 {
                ink = Some(match ink {
                    None => (px, py, px, py),
                    Some((a, b2, cx, d)) => (a.min(px), b2.min(py), cx.max(px), d.max(py)),
                });
            }
        });
    }
    ink.map(|(x0, y0, x1, y1)| Rect::new(x0 as u32, y0 as u32, (x1 - x0 + 1) as u32, (y1 - y0 + 1) as u32))
}

/// A generated image with the tight boxes and strings of its text lines.
#[derive(Debug, Clone)]
pub struct SyntheticScene {
    pub image: RasterImage,
    pub lines: Vec<(Rect, String)>,
}

impl SyntheticScene {
    pub fn annotation(&self, image_id: impl Into<String>) -> GroundTruthAnnotation {
        GroundTruthAnnotation {
            image_id: image_id.into(),
            image_width: self.image.width(),
            image_height: self.image.height(),
            boxes: self
                .lines
                .iter()
                .map(|(r, t)| AnnotatedBox {
                    x: r.x,
                    y: r.y,
                    w: r.w,
                    h: r.h,
                    transcription: t.clone(),
                })
                .collect(),
        }
    }
}

const LETTERS: &[char] = &[
    'A', 'B', 'C', 'Ç', 'D', 'E', 'F', 'G', 'Ğ', 'H', 'I', 'İ', 'J', 'K', 'L', 'M', 'N', 'O', 'Ö', 'P',
    'R', 'S', 'Ş', 'T', 'U', 'Ü', 'V', 'Y', 'Z',
];
const PLAIN_LETTERS: &[char] = &[
    'A', 'B', 'C', 'D', 'E', 'F', 'G', 'H', 'I', 'J', 'K', 'L', 'M', 'N', 'O', 'P', 'R', 'S', 'T', 'U',
    'V', 'Y', 'Z',
];

fn random_word(rng: &mut impl Rng, alphabet: &[char], min: usize, max: usize) -> String {
    let n = rng.gen_range(min..=max);
    (0..n).map(|_| *alphabet.choose(rng).expect("non-empty")).collect()
}

fn light_background(rng: &mut impl Rng) -> [u8; 3] {
    [rng.gen_range(185..=255), rng.gen_range(185..=255), rng.gen_range(185..=255)]
}

/// Parameters for [`text_scene_with`].
#[derive(Debug, Clone)]
pub struct SceneSpec {
    pub line_count: std::ops::RangeInclusive<u32>,
    /// Height of each line's ink box in pixels, accents included.
    pub heights: std::ops::RangeInclusive<u32>,
    pub face: Typeface,
    /// Probability that a line holds two words instead of one.
    pub two_word_probability: f64,
    /// Draw from the full Turkish capital alphabet (with dotted and
    /// cedilla letters) instead of the undecorated subset.
    pub diacritics: bool,
}

impl Default for SceneSpec {
    fn default() -> Self {
        SceneSpec {
            line_count: 1..=5,
            heights: 20..=80,
            face: Typeface::Regular,
            two_word_probability: 0.3,
            diacritics: true,
        }
    }
}

/// 1-5 horizontal dark uppercase Turkish text lines with ink box heights in
/// `[20, 80]` on a plain light background. Lines never overlap and always
/// fit inside the image.
pub fn text_scene(seed: u64, width: u32, height: u32) -> SyntheticScene {
    text_scene_with(seed, width, height, &SceneSpec::default())
}

pub fn text_scene_with(seed: u64, width: u32, height: u32, spec: &SceneSpec) -> SyntheticScene {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bg = light_background(&mut rng);
    let mut image = RasterImage::rgb_from_fn(width, height, |_, _| bg).expect("positive size");
    let wanted = rng.gen_range(spec.line_count.clone());
    let mut lines = Vec::new();
    let mut taken: Vec<(u32, u32)> = Vec::new();
    for _ in 0..wanted {
        // a few attempts to find a free horizontal band
        for _attempt in 0..20 {
            let line_height = rng.gen_range(spec.heights.clone());
            let alphabet = if spec.diacritics { LETTERS } else { PLAIN_LETTERS };
            let mut word = random_word(&mut rng, alphabet, 3, 10);
            if rng.gen_bool(spec.two_word_probability) {
                word.push(' ');
                word.push_str(&random_word(&mut rng, alphabet, 2, 6));
            }
            while text_width(&word, line_height, spec.face) + 20 > width && word.chars().count() > 2 {
                word.pop();
            }
            let word = word.trim_end().to_owned();
            let h = (f64::from(line_height) / ink_height_ratio(&word, spec.face)).round() as u32;
            let w = text_width(&word, h, spec.face);
            // room for accents above and cedillas below the capitals
            let accent = h / 3 + 2;
            if w + 20 > width || h + 2 * accent + 20 > height {
                continue;
            }
            let y = rng.gen_range(10 + accent..=height - h - accent - 10);
            // keep a clear band of half a line height around each line
            let margin = accent + h / 2;
            let band = (y.saturating_sub(margin), y + h + margin);
            if taken.iter().any(|&(a, b)| band.0 < b && a < band.1) {
                continue;
            }
            let x = rng.gen_range(10..=width - w - 10);
            let ink = [rng.gen_range(0..=70), rng.gen_range(0..=70), rng.gen_range(0..=70)];
            if let Some(r) = draw_text(&mut image, &word, x, y, h, ink, spec.face) {
                taken.push((y - accent, y + h + accent));
                lines.push((r, word));
            }
            break;
        }
    }
    SyntheticScene { image, lines }
}

/// Plain light image, no content at all.
pub fn blank_scene(seed: u64, width: u32, height: u32) -> RasterImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bg = light_background(&mut rng);
    RasterImage::rgb_from_fn(width, height, |_, _| bg).expect("positive size")
}

/// Light background with i.i.d. Gaussian noise of standard deviation `sigma`
/// added to every channel.
pub fn noise_scene(seed: u64, width: u32, height: u32, sigma: f64) -> RasterImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bg = light_background(&mut rng);
    let normal = Normal::new(0.0, sigma).expect("finite sigma");
    let mut data = Vec::with_capacity(width as usize * height as usize * 3);
    for _ in 0..width as usize * height as usize {
        for &b in &bg {
            let v = f64::from(b) + normal.sample(&mut rng);
            data.push(v.round().clamp(0.0, 255.0) as u8);
        }
    }
    RasterImage::new(width, height, 3, data).expect("buffer sized above")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_box_is_tight_and_inside() {
        let mut img = RasterImage::filled(400, 100, 3, 255).unwrap();
        let r = draw_text(&mut img, "MERKEZ", 20, 30, 35, [0, 0, 0], Typeface::Regular).unwrap();
        assert!(r.x >= 20 && r.x <= 25, "{r:?}");
        assert_eq!(r.y, 30);
        assert_eq!(r.h, 35);
        assert!(r.right() <= 20 + text_width("MERKEZ", 35, Typeface::Regular));
        assert!(r.fits_in(400, 100));
    }

    #[test]
    fn scenes_are_deterministic() {
        let a = text_scene(7, 640, 360);
        let b = text_scene(7, 640, 360);
        assert_eq!(a.image, b.image);
        assert_eq!(a.lines, b.lines);
        assert!(!a.lines.is_empty());
        for (r, _) in &a.lines {
            assert!(r.fits_in(640, 360));
        }
    }
}
