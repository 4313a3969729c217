//! Single-level 2D Daubechies-2 (D4) transform with periodic extension.

use std::sync::LazyLock;

use crate::distmap::DistanceGrid;
use crate::error::{Error, Result};

/// Orthonormal D4 low-pass analysis filter.
pub static LOWPASS: LazyLock<[f64; 4]> = LazyLock::new(|| {
    let s3 = 3.0f64.sqrt();
    let d = 4.0 * 2.0f64.sqrt();
    [(1.0 + s3) / d, (3.0 + s3) / d, (3.0 - s3) / d, (1.0 - s3) / d]
});

/// Quadrature-mirror high-pass partner of [`LOWPASS`].
pub static HIGHPASS: LazyLock<[f64; 4]> = LazyLock::new(|| {
    let h = *LOWPASS;
    [h[3], -h[2], h[1], -h[0]]
});

/// The four half-size subbands of one transform level.
///
/// `horizontal` is low-pass along columns and high-pass along rows,
/// `vertical` the reverse.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveletBands {
    pub approx: DistanceGrid,
    pub horizontal: DistanceGrid,
    pub vertical: DistanceGrid,
    pub diagonal: DistanceGrid,
}

impl WaveletBands {
    pub fn size(&self) -> usize {
        self.approx.size()
    }

    pub fn map(&self, f: impl Fn(&DistanceGrid) -> DistanceGrid) -> Self {
        Self {
            approx: f(&self.approx),
            horizontal: f(&self.horizontal),
            vertical: f(&self.vertical),
            diagonal: f(&self.diagonal),
        }
    }

    pub fn sum_of_squares(&self) -> f64 {
        [&self.approx, &self.horizontal, &self.vertical, &self.diagonal]
            .iter()
            .map(|b| b.sum_of_squares())
            .sum()
    }
}

fn analyze(signal: &[f64], low: &mut [f64], high: &mut [f64]) {
    let n = signal.len();
    let (h, g) = (&*LOWPASS, &*HIGHPASS);
    for k in 0..n / 2 {
        let mut a = 0.0;
        let mut d = 0.0;
        for m in 0..4 {
            let x = signal[(2 * k + m) % n];
            a += h[m] * x;
            d += g[m] * x;
        }
        low[k] = a;
        high[k] = d;
    }
}

fn synthesize(low: &[f64], high: &[f64], signal: &mut [f64]) {
    let n = signal.len();
    let (h, g) = (&*LOWPASS, &*HIGHPASS);
    signal.fill(0.0);
    for k in 0..n / 2 {
        for m in 0..4 {
            signal[(2 * k + m) % n] += h[m] * low[k] + g[m] * high[k];
        }
    }
}

/// Forward transform: rows, then columns.
pub fn dwt2(image: &DistanceGrid) -> Result<WaveletBands> {
    let n = image.size();
    if !n.is_multiple_of(2) {
        return Err(Error::OddDimension { size: n });
    }
    let half = n / 2;

    // row pass: each row splits into low (cols 0..half) and high (cols half..n)
    let mut rows = vec![0.0; n * n];
    for r in 0..n {
        let (low, high) = rows[r * n..(r + 1) * n].split_at_mut(half);
        analyze(image.row(r), low, high);
    }

    let mut out = vec![0.0; n * n];
    let mut column = vec![0.0; n];
    let mut low = vec![0.0; half];
    let mut high = vec![0.0; half];
    for c in 0..n {
        for r in 0..n {
            column[r] = rows[r * n + c];
        }
        analyze(&column, &mut low, &mut high);
        for k in 0..half {
            out[k * n + c] = low[k];
            out[(k + half) * n + c] = high[k];
        }
    }

    let band = |r0: usize, c0: usize| DistanceGrid::from_fn(half, |r, c| out[(r0 + r) * n + c0 + c]);
    Ok(WaveletBands {
        approx: band(0, 0),
        horizontal: band(half, 0),
        vertical: band(0, half),
        diagonal: band(half, half),
    })
}

/// Inverse of [`dwt2`]; output is twice the band size.
pub fn idwt2(bands: &WaveletBands) -> Result<DistanceGrid> {
    let half = bands.size();
    if [&bands.horizontal, &bands.vertical, &bands.diagonal].iter().any(|b| b.size() != half) {
        return Err(Error::InvalidArgument("wavelet bands differ in size".into()));
    }
    let n = 2 * half;

    // undo the column pass into a row-transformed buffer
    let mut rows = vec![0.0; n * n];
    let mut column = vec![0.0; n];
    let mut low = vec![0.0; half];
    let mut high = vec![0.0; half];
    for c in 0..n {
        let (top, bottom) = if c < half {
            (&bands.approx, &bands.horizontal)
        } else {
            (&bands.vertical, &bands.diagonal)
        };
        let cc = c % half;
        for k in 0..half {
            low[k] = top.get(k, cc);
            high[k] = bottom.get(k, cc);
        }
        synthesize(&low, &high, &mut column);
        for r in 0..n {
            rows[r * n + c] = column[r];
        }
    }

    let mut out = vec![0.0; n * n];
    for r in 0..n {
        let (low, high) = rows[r * n..(r + 1) * n].split_at(half);
        synthesize(low, high, &mut out[r * n..(r + 1) * n]);
    }
    DistanceGrid::new(n, out)
}
