//! Exhaustive Euclidean ranking of a feature database against a query.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::descriptors::Descriptor;
use crate::error::{Error, Result};
use crate::store::FeatureDb;

/// Entries per parallel scan partition.
const PARTITION: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct RankedHit {
    pub id: String,
    pub distance: f64,
    /// 1-based.
    pub rank: usize,
}

/// ℓ² distance of two stored vectors, accumulated in double precision.
#[inline]
pub fn l2_distance(a: &[f32], b: &[f32]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            let d = x as f64 - y as f64;
            d * d
        })
        .sum::<f64>()
        .sqrt()
}

pub fn euclidean_distance(a: &Descriptor, b: &Descriptor) -> Result<f64> {
    if a.kind != b.kind {
        return Err(Error::KindMismatch { expected: a.kind, found: b.kind });
    }
    if a.values.len() != b.values.len() {
        return Err(Error::ParamsMismatch(format!(
            "descriptor lengths differ ({} vs {})",
            a.values.len(),
            b.values.len()
        )));
    }
    Ok(a.values.iter().zip(&b.values).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt())
}

fn by_distance_then_id(a: &(f64, usize), b: &(f64, usize), db: &FeatureDb) -> Ordering {
    a.0.total_cmp(&b.0).then_with(|| db.id(a.1).cmp(db.id(b.1)))
}

/// The `k` smallest of `entries` by (distance, id), sorted.
fn top_k(mut entries: Vec<(f64, usize)>, k: usize, db: &FeatureDb) -> Vec<(f64, usize)> {
    if entries.len() > k {
        entries.select_nth_unstable_by(k - 1, |a, b| by_distance_then_id(a, b, db));
        entries.truncate(k);
    }
    entries.sort_unstable_by(|a, b| by_distance_then_id(a, b, db));
    entries
}

fn check_vector(db: &FeatureDb, vector: &[f32], k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if db.is_empty() {
        return Err(Error::EmptyDatabase);
    }
    if vector.len() != db.vector_len() {
        return Err(Error::ParamsMismatch(format!(
            "query vector has {} values, database holds {}",
            vector.len(),
            db.vector_len()
        )));
    }
    Ok(())
}

/// Ranks every entry against a raw stored-precision vector, scanning
/// `partitions` disjoint slices in parallel and merging their top-k lists.
pub fn query_vector_partitioned(db: &FeatureDb, vector: &[f32], k: usize, partitions: usize) -> Result<Vec<RankedHit>> {
    check_vector(db, vector, k)?;
    let chunk = db.len().div_ceil(partitions.max(1));
    let partial: Vec<(f64, usize)> = (0..db.len())
        .collect::<Vec<_>>()
        .par_chunks(chunk)
        .flat_map_iter(|idx| {
            let scored = idx.iter().map(|&i| (l2_distance(vector, db.vector(i)), i)).collect();
            top_k(scored, k, db)
        })
        .collect();
    Ok(top_k(partial, k, db)
        .into_iter()
        .enumerate()
        .map(|(r, (distance, i))| RankedHit { id: db.id(i).to_string(), distance, rank: r + 1 })
        .collect())
}

pub fn query_vector(db: &FeatureDb, vector: &[f32], k: usize) -> Result<Vec<RankedHit>> {
    query_vector_partitioned(db, vector, k, db.len().div_ceil(PARTITION))
}

/// Top `k` database entries nearest to `q`.
///
/// The query is rounded to the stored f32 precision first, so a stored
/// entry queried with its own descriptor is found at distance exactly 0.
pub fn query(db: &FeatureDb, q: &Descriptor, k: usize) -> Result<Vec<RankedHit>> {
    if q.kind != db.kind() {
        return Err(Error::ParamsMismatch(format!("database holds {} vectors, query is {}", db.kind(), q.kind)));
    }
    if q.params != db.params() {
        return Err(Error::ParamsMismatch(format!(
            "database was built with {:?}, query uses {:?}",
            db.params(),
            q.params
        )));
    }
    query_vector(db, &q.to_f32(), k)
}
