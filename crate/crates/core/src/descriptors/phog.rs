use crate::error::{Error, Result};

use super::{Descriptor, DescriptorKind, DescriptorParams, GradientField};

/// Number of quad-tree nodes from the root down to `depth` inclusive.
pub fn quad_tree_nodes(depth: u8) -> usize {
    (0..=depth as u32).map(|l| 4usize.pow(l)).sum()
}

/// Node regions `(row0, col0, side)` in breadth-first order, children of
/// each node ordered top-left, top-right, bottom-left, bottom-right.
fn node_regions(size: usize, depth: u8) -> Vec<(usize, usize, usize)> {
    let mut regions = vec![(0, 0, size)];
    let mut level_start = 0;
    for _ in 0..depth {
        let level_end = regions.len();
        for i in level_start..level_end {
            let (r, c, side) = regions[i];
            let half = side / 2;
            regions.extend([(r, c, half), (r, c + half, half), (r + half, c, half), (r + half, c + half, half)]);
        }
        level_start = level_end;
    }
    regions
}

/// Unnormalized magnitude-weighted orientation histograms, one block of
/// `hog_bins` per node in breadth-first order.
pub fn phog_histograms(field: &GradientField, params: &DescriptorParams) -> Result<Vec<f64>> {
    let n = field.size;
    let cells = 1usize << params.pyramid_depth;
    if !n.is_multiple_of(cells) {
        return Err(Error::InvalidArgument(format!(
            "image size {n} is not divisible into {cells}×{cells} pyramid cells"
        )));
    }
    let bins = params.hog_bins as usize;
    let regions = node_regions(n, params.pyramid_depth);
    let mut hist = vec![0.0; regions.len() * bins];
    for (node, &(r0, c0, side)) in regions.iter().enumerate() {
        let block = &mut hist[node * bins..(node + 1) * bins];
        for r in r0..r0 + side {
            for c in c0..c0 + side {
                let p = r * n + c;
                if field.active[p] {
                    block[field.hog_bin[p] as usize] += field.magnitude[p];
                }
            }
        }
    }
    Ok(hist)
}

/// Pyramid histogram of oriented gradients, normalized to unit sum.
pub fn phog(field: &GradientField, params: &DescriptorParams) -> Result<Descriptor> {
    let mut values = phog_histograms(field, params)?;
    let total: f64 = values.iter().sum();
    if total > 0.0 {
        values.iter_mut().for_each(|v| *v /= total);
    }
    Ok(Descriptor { kind: DescriptorKind::Phog, params: *params, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptors::gradient_field;
    use crate::distmap::DistanceGrid;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    /// Pixel-driven reference: each pixel finds its node at every level by
    /// interleaving the bits of its cell coordinates (Z-order).
    fn naive(field: &GradientField, params: &DescriptorParams) -> Vec<f64> {
        let n = field.size;
        let bins = params.hog_bins as usize;
        let depth = params.pyramid_depth as u32;
        let mut hist = vec![0.0; quad_tree_nodes(params.pyramid_depth) * bins];
        for r in 0..n {
            for c in 0..n {
                let p = r * n + c;
                if !field.active[p] {
                    continue;
                }
                let mut level_offset = 0;
                for level in 0..=depth {
                    let cell = n >> level;
                    let (cr, cc) = (r / cell, c / cell);
                    let mut z = 0;
                    for bit in (0..level).rev() {
                        z = z * 4 + 2 * ((cr >> bit) & 1) + ((cc >> bit) & 1);
                    }
                    hist[(level_offset + z) * bins + field.hog_bin[p] as usize] += field.magnitude[p];
                    level_offset += 4usize.pow(level);
                }
            }
        }
        let mut total = 0.0;
        for v in &hist {
            total += v;
        }
        if total > 0.0 {
            for v in &mut hist {
                *v /= total;
            }
        }
        hist
    }

    #[test]
    fn node_count_and_order() {
        assert_eq!(quad_tree_nodes(0), 1);
        assert_eq!(quad_tree_nodes(1), 5);
        assert_eq!(quad_tree_nodes(3), 85);
        let regions = node_regions(128, 3);
        assert_eq!(regions.len(), 85);
        assert_eq!(&regions[..5], &[(0, 0, 128), (0, 0, 64), (0, 64, 64), (64, 0, 64), (64, 64, 64)]);
        // level 2 starts with the children of the top-left quadrant
        assert_eq!(&regions[5..9], &[(0, 0, 32), (0, 32, 32), (32, 0, 32), (32, 32, 32)]);
        assert_eq!(regions[9], (0, 64, 32));
        assert_eq!(regions[84], (112, 112, 16));
    }

    #[test]
    fn constant_image_gives_zero_vector() {
        let params = DescriptorParams::default();
        let f = gradient_field(&DistanceGrid::from_fn(128, |_, _| 1.0), &params);
        let d = phog(&f, &params).unwrap();
        assert_eq!(d.values.len(), 765);
        assert!(d.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn horizontal_ramp_mass_in_bin_zero() {
        let params = DescriptorParams::default();
        let f = gradient_field(&DistanceGrid::from_fn(128, |_, c| c as f64), &params);
        let d = phog(&f, &params).unwrap();
        assert_eq!(d.values, naive(&f, &params));
        for (i, &v) in d.values.iter().enumerate() {
            if i % 9 == 0 {
                assert!(v > 0.0);
            } else {
                assert_eq!(v, 0.0);
            }
        }
        assert!((d.values.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        // 4 levels, each carrying the full magnitude once
        assert!((d.values[0] - 0.25).abs() < 1e-12);
    }

    #[test]
    fn matches_naive_on_random_grids() {
        let mut rng = StdRng::seed_from_u64(8);
        for depth in [0u8, 1, 2] {
            let params = DescriptorParams { pyramid_depth: depth, ..Default::default() };
            for _ in 0..20 {
                let grid = DistanceGrid::from_fn(8, |_, _| if rng.random_bool(0.25) { 2.0 } else { rng.random_range(0.0..9.0) });
                let f = gradient_field(&grid, &params);
                assert_eq!(phog(&f, &params).unwrap().values, naive(&f, &params));
            }
        }
    }

    #[test]
    fn parent_equals_sum_of_children() {
        let params = DescriptorParams::default();
        let f = gradient_field(&DistanceGrid::from_fn(128, |r, c| ((r * 7 + c * 3) % 11) as f64 + (r as f64 * 0.1).sin()), &params);
        let h = phog_histograms(&f, &params).unwrap();
        let regions = node_regions(128, 3);
        // node i at level < 3 has children starting at 4i + 1
        for parent in 0..quad_tree_nodes(2) {
            for bin in 0..9 {
                let children: f64 = (0..4).map(|k| h[(4 * parent + 1 + k) * 9 + bin]).sum();
                let value = h[parent * 9 + bin];
                assert!((value - children).abs() <= 1e-12 * value.max(1.0), "node {parent} {:?}", regions[parent]);
            }
        }
    }

    #[test]
    fn indivisible_size_rejected() {
        let params = DescriptorParams::default();
        let f = gradient_field(&DistanceGrid::from_fn(12, |r, _| r as f64), &params);
        assert!(phog(&f, &params).is_err());
    }
}
