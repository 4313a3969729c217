use super::{Descriptor, DescriptorKind, DescriptorParams, GradientField};

/// Raw co-occurrence counts, `bins × bins` row-major, plus the pair total.
pub fn cooccurrence_counts(field: &GradientField, params: &DescriptorParams) -> (Vec<u64>, u64) {
    let bins = params.cooc_bins as usize;
    let n = field.size as isize;
    let mut counts = vec![0u64; bins * bins];
    let mut total = 0;
    for r in 0..n {
        for c in 0..n {
            let p = (r * n + c) as usize;
            if !field.active[p] {
                continue;
            }
            for &(dr, dc) in params.displacements.offsets() {
                let (r2, c2) = (r + dr, c + dc);
                if r2 < 0 || r2 >= n || c2 < 0 || c2 >= n {
                    continue;
                }
                let q = (r2 * n + c2) as usize;
                if field.active[q] {
                    counts[field.cooc_bin[p] as usize * bins + field.cooc_bin[q] as usize] += 1;
                    total += 1;
                }
            }
        }
    }
    (counts, total)
}

/// Co-occurrence matrix of oriented gradients, normalized by the number of
/// counted pairs and flattened row-major.
pub fn comograd(field: &GradientField, params: &DescriptorParams) -> Descriptor {
    let (counts, total) = cooccurrence_counts(field, params);
    let values = if total == 0 {
        vec![0.0; counts.len()]
    } else {
        counts.iter().map(|&c| c as f64 / total as f64).collect()
    };
    Descriptor { kind: DescriptorKind::CoMOGrad, params: *params, values }
}
