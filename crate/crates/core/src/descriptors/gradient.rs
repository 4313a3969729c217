use crate::distmap::DistanceGrid;

use super::DescriptorParams;

/// Pixels at or below this gradient magnitude carry no orientation.
pub const ACTIVE_THRESHOLD: f64 = 1e-12;

/// Per-pixel gradient of a square image, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientField {
    pub size: usize,
    pub gx: Vec<f64>,
    pub gy: Vec<f64>,
    pub magnitude: Vec<f64>,
    /// Degrees in [0, 360); 0 for inactive pixels.
    pub angle: Vec<f64>,
    /// Orientation bin for co-occurrence counting.
    pub cooc_bin: Vec<u8>,
    /// Orientation bin for the PHOG histograms.
    pub hog_bin: Vec<u8>,
    pub active: Vec<bool>,
}

fn orientation_bin(angle: f64, bins: u8) -> u8 {
    let width = 360.0 / bins as f64;
    ((angle / width).floor() as usize % bins as usize) as u8
}

/// Central differences with edge replication. `gx` runs along columns,
/// `gy` along rows.
pub fn gradient_field(image: &DistanceGrid, params: &DescriptorParams) -> GradientField {
    let n = image.size();
    let len = n * n;
    let mut field = GradientField {
        size: n,
        gx: Vec::with_capacity(len),
        gy: Vec::with_capacity(len),
        magnitude: Vec::with_capacity(len),
        angle: Vec::with_capacity(len),
        cooc_bin: Vec::with_capacity(len),
        hog_bin: Vec::with_capacity(len),
        active: Vec::with_capacity(len),
    };
    let last = n - 1;
    for r in 0..n {
        for c in 0..n {
            let gx = 0.5 * (image.get(r, (c + 1).min(last)) - image.get(r, c.saturating_sub(1)));
            let gy = 0.5 * (image.get((r + 1).min(last), c) - image.get(r.saturating_sub(1), c));
            let magnitude = gx.hypot(gy);
            let active = magnitude > ACTIVE_THRESHOLD;
            let angle = if active {
                let mut a = gy.atan2(gx).to_degrees();
                if a < 0.0 {
                    a += 360.0;
                }
                if a >= 360.0 {
                    a -= 360.0;
                }
                a
            } else {
                0.0
            };
            field.gx.push(gx);
            field.gy.push(gy);
            field.magnitude.push(magnitude);
            field.angle.push(angle);
            field.cooc_bin.push(orientation_bin(angle, params.cooc_bins));
            field.hog_bin.push(orientation_bin(angle, params.hog_bins));
            field.active.push(active);
        }
    }
    field
}
