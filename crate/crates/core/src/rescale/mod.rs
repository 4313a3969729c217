//! Brings distance grids of any chain length to the canonical 128×128 image.
//!
//! A grid is first resampled bicubically to the power of two nearest its
//! size (in log scale). Larger images are then halved by keeping the
//! approximation band of a D4 transform; smaller ones are doubled by
//! transforming, bicubically enlarging all four bands, and inverting.

pub mod bicubic;
pub mod wavelet;

pub use wavelet::{dwt2, idwt2, WaveletBands};

use crate::distmap::DistanceGrid;
use crate::error::{Error, Result};

pub const CANONICAL_SIZE: usize = 128;

/// Smallest grid accepted by [`nearest_pow2_resize`] and [`canonicalize`].
pub const MIN_GRID_SIZE: usize = 16;

/// Power of two closest to `n` in log scale, ties rounding up.
pub fn nearest_pow2(n: usize) -> usize {
    assert!(n > 0);
    let lo = 1usize << (usize::BITS - 1 - n.leading_zeros());
    if lo == n {
        return n;
    }
    // log2(n) - p >= p + 1 - log2(n)  <=>  n^2 >= 2^(2p+1) = 2 * lo^2
    if (n as u128).pow(2) >= 2 * (lo as u128).pow(2) {
        lo * 2
    } else {
        lo
    }
}

fn check_size(grid: &DistanceGrid) -> Result<()> {
    if grid.size() < MIN_GRID_SIZE {
        return Err(Error::GridTooSmall { size: grid.size(), min: MIN_GRID_SIZE });
    }
    Ok(())
}

pub fn nearest_pow2_resize(grid: &DistanceGrid) -> Result<DistanceGrid> {
    check_size(grid)?;
    Ok(bicubic::resize(grid, nearest_pow2(grid.size())))
}

/// Halves a power-of-two image by keeping the approximation band.
pub fn downscale(image: &DistanceGrid) -> Result<DistanceGrid> {
    Ok(dwt2(image)?.approx)
}

/// Doubles an image through its enlarged wavelet bands.
pub fn upscale(image: &DistanceGrid) -> Result<DistanceGrid> {
    let bands = dwt2(image)?;
    let target = image.size();
    idwt2(&bands.map(|b| bicubic::resize(b, target)))
}

/// Resamples `grid` to exactly [`CANONICAL_SIZE`] × [`CANONICAL_SIZE`].
///
/// Exactly symmetric inputs (every distance matrix) give exactly symmetric
/// outputs: each intermediate image is re-symmetrized, removing the
/// rounding asymmetry of the separable passes.
pub fn canonicalize(grid: &DistanceGrid) -> Result<DistanceGrid> {
    let symmetric = grid.is_symmetric();
    let fix = |mut g: DistanceGrid| {
        if symmetric {
            g.symmetrize();
        }
        g
    };

    let mut image = fix(nearest_pow2_resize(grid)?);
    while image.size() > CANONICAL_SIZE {
        image = fix(downscale(&image)?);
    }
    while image.size() < CANONICAL_SIZE {
        image = fix(upscale(&image)?);
    }
    Ok(image)
}
