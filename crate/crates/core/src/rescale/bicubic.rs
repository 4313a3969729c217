//! Separable cubic-convolution resampling with edge replication.

use crate::distmap::DistanceGrid;

/// Kernel parameter of the cubic convolution.
pub const KERNEL_A: f64 = -0.5;

fn cubic(x: f64) -> f64 {
    let x = x.abs();
    let a = KERNEL_A;
    if x <= 1.0 {
        ((a + 2.0) * x - (a + 3.0)) * x * x + 1.0
    } else if x < 2.0 {
        ((a * x - 5.0 * a) * x + 8.0 * a) * x - 4.0 * a
    } else {
        0.0
    }
}

/// Four source indices and weights for each output position along one axis.
fn taps(input: usize, output: usize) -> Vec<([usize; 4], [f64; 4])> {
    let scale = input as f64 / output as f64;
    let last = input as isize - 1;
    (0..output)
        .map(|i| {
            // pixel-center alignment
            let src = (i as f64 + 0.5) * scale - 0.5;
            let base = src.floor();
            let frac = src - base;
            let mut idx = [0usize; 4];
            let mut w = [0.0; 4];
            for k in 0..4 {
                let offset = k as isize - 1;
                idx[k] = (base as isize + offset).clamp(0, last) as usize;
                w[k] = cubic(frac - offset as f64);
            }
            (idx, w)
        })
        .collect()
}

/// Resamples a square grid to `output` × `output`.
pub fn resize(grid: &DistanceGrid, output: usize) -> DistanceGrid {
    let input = grid.size();
    if input == output {
        return grid.clone();
    }
    let taps = taps(input, output);

    // rows first: input rows × output cols
    let mut horizontal = vec![0.0; input * output];
    for r in 0..input {
        let row = grid.row(r);
        for (c, (idx, w)) in taps.iter().enumerate() {
            horizontal[r * output + c] = (0..4).map(|k| w[k] * row[idx[k]]).sum();
        }
    }

    DistanceGrid::from_fn(output, |r, c| {
        let (idx, w) = &taps[r];
        (0..4).map(|k| w[k] * horizontal[idx[k] * output + c]).sum()
    })
}
