//! Commands behind the `comograd` binary: extract, index, query, eval, serve.

pub mod serve;

use std::collections::HashSet;
use std::fmt::Write as _;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use rayon::prelude::*;

use comograd_core::evalkit::{self, MatchCurve, QueryResult};
use comograd_core::retrieval::{self, RankedHit};
use comograd_core::store::{read_db, write_db};
use comograd_core::{parse_structure, CaTrace, Descriptor, DescriptorKind, Error, Extractor, FeatureDb};

/// Structure name used for ids: the file name up to its first dot.
pub fn source_name(path: &Path) -> String {
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    match name.split_once('.') {
        Some((stem, _)) if !stem.is_empty() => stem.to_string(),
        _ => name,
    }
}

/// Traces of a coordinate file. A file yielding a single chain is
/// identified by its name alone, multi-chain files by `name_chain`.
pub fn read_traces(path: &Path, chain: Option<char>) -> Result<Vec<CaTrace>> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    traces_from_bytes(&bytes, chain, &source_name(path))
}

pub fn traces_from_bytes(bytes: &[u8], chain: Option<char>, name: &str) -> Result<Vec<CaTrace>> {
    let mut traces = parse_structure(bytes, chain, name)?;
    if let [only] = traces.as_mut_slice() {
        only.id = name.to_string();
    }
    Ok(traces)
}

pub fn extract_file(path: &Path, chain: Option<char>, kind: DescriptorKind) -> Result<Vec<(String, Descriptor)>> {
    let extractor = Extractor::default();
    read_traces(path, chain)?
        .into_iter()
        .map(|t| Ok((t.id.clone(), extractor.extract(&t, kind)?)))
        .collect()
}

pub fn format_descriptor(id: &str, descriptor: &Descriptor) -> String {
    let mut line = id.to_string();
    for v in &descriptor.values {
        let _ = write!(line, "\t{v}");
    }
    line
}

#[derive(Debug, Default, Clone, PartialEq)]
pub struct IndexSummary {
    pub indexed: usize,
    /// `(file or chain id, reason)` for everything left out.
    pub skipped: Vec<(String, String)>,
}

/// Extracts every chain of every file in `paths` into a new database.
/// Failures are recorded in the summary and never abort the batch.
pub fn index_files(paths: &[PathBuf], kind: DescriptorKind, extractor: &Extractor) -> (FeatureDb, IndexSummary) {
    type Outcome = std::result::Result<(String, Vec<f32>), (String, String)>;
    let outcomes: Vec<Vec<Outcome>> = paths
        .par_iter()
        .map(|path| match read_traces(path, None) {
            Err(e) => vec![Err((path.display().to_string(), format!("{e:#}")))],
            Ok(traces) => traces
                .iter()
                .map(|t| match extractor.extract(t, kind) {
                    Ok(d) => Ok((t.id.clone(), d.to_f32())),
                    Err(e) => Err((t.id.clone(), e.to_string())),
                })
                .collect(),
        })
        .collect();

    let mut db = FeatureDb::new(kind, extractor.params);
    let mut summary = IndexSummary::default();
    for outcome in outcomes.into_iter().flatten() {
        match outcome {
            Ok((id, values)) => match db.push(id.clone(), &values) {
                Ok(()) => summary.indexed += 1,
                Err(e) => summary.skipped.push((id, e.to_string())),
            },
            Err(skip) => summary.skipped.push(skip),
        }
    }
    (db, summary)
}

/// Regular, non-hidden files of `dir`, sorted by name.
pub fn list_structure_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut paths = Vec::new();
    for entry in fs::read_dir(dir).with_context(|| format!("reading directory {}", dir.display()))? {
        let entry = entry?;
        let hidden = entry.file_name().to_string_lossy().starts_with('.');
        if entry.file_type()?.is_file() && !hidden {
            paths.push(entry.path());
        }
    }
    paths.sort();
    Ok(paths)
}

pub fn save_db(db: &FeatureDb, path: &Path) -> Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    write_db(db, &mut BufWriter::new(file)).with_context(|| format!("writing {}", path.display()))
}

pub fn load_db(path: &Path) -> Result<FeatureDb> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    read_db(&mut BufReader::new(file)).with_context(|| format!("loading {}", path.display()))
}

pub fn cmd_index(dir: &Path, db_path: &Path, kind: DescriptorKind) -> Result<IndexSummary> {
    let paths = list_structure_files(dir)?;
    let (db, summary) = index_files(&paths, kind, &Extractor::default());
    if db.is_empty() {
        return Err(Error::EmptyDatabase).context("nothing was indexed; refusing to write an empty database");
    }
    save_db(&db, db_path)?;
    Ok(summary)
}

fn check_kind(db: &FeatureDb, kind: Option<DescriptorKind>) -> Result<()> {
    match kind {
        Some(k) if k != db.kind() => {
            Err(Error::ParamsMismatch(format!("database holds {} vectors, {} requested", db.kind(), k)).into())
        }
        _ => Ok(()),
    }
}

/// Ranks `db` against the first (or selected) chain of a coordinate file,
/// extracted with the database's own parameters.
pub fn query_bytes(db: &FeatureDb, bytes: &[u8], name: &str, chain: Option<char>, k: usize) -> Result<Vec<RankedHit>> {
    let traces = traces_from_bytes(bytes, chain, name)?;
    let extractor = Extractor::new(db.params())?;
    let descriptor = extractor.extract(&traces[0], db.kind())?;
    Ok(retrieval::query(db, &descriptor, k)?)
}

pub fn cmd_query(
    db_path: &Path,
    query_path: &Path,
    k: usize,
    kind: Option<DescriptorKind>,
    chain: Option<char>,
) -> Result<Vec<RankedHit>> {
    if k == 0 {
        bail!(Error::InvalidArgument("k must be at least 1".into()));
    }
    let db = load_db(db_path)?;
    check_kind(&db, kind)?;
    let bytes = fs::read(query_path).with_context(|| format!("reading {}", query_path.display()))?;
    query_bytes(&db, &bytes, &source_name(query_path), chain, k)
}

/// `rank id distance`, tab-separated, distance to 6 decimals.
pub fn format_hits(hits: &[RankedHit]) -> String {
    let mut out = String::new();
    for h in hits {
        let _ = writeln!(out, "{}\t{}\t{:.6}", h.rank, h.id, h.distance);
    }
    out
}

/// Query ids, one per line; blank lines and `#` comments are ignored.
pub fn parse_query_list(text: &str) -> Vec<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split_whitespace().next().unwrap_or(l).to_string())
        .collect()
}

/// Runs every listed query against the database (vectors taken from the
/// database itself) and scores the rankings.
pub fn evaluate(db: &FeatureDb, queries: &[String], labels: &evalkit::Labels, k_values: &[usize]) -> Result<Vec<MatchCurve>> {
    let Some(&max_k) = k_values.iter().max() else {
        bail!(Error::InvalidArgument("no k values given".into()));
    };
    let mut seen = HashSet::new();
    let mut results = Vec::with_capacity(queries.len());
    for q in queries {
        if !labels.contains_key(q) {
            return Err(Error::MissingLabel(q.clone()).into());
        }
        if !seen.insert(q.as_str()) {
            continue;
        }
        let vector = db
            .get(q)
            .ok_or_else(|| Error::InvalidArgument(format!("query '{q}' is not in the database")))?;
        // one extra hit makes room for dropping the self-match
        let hits = retrieval::query_vector(db, vector, max_k + 1)?;
        results.push(QueryResult { query: q.clone(), hits: hits.into_iter().map(|h| h.id).collect() });
    }
    Ok(evalkit::match_curves(&results, labels, k_values)?)
}

pub fn cmd_eval(db_path: &Path, queries_path: &Path, scop_path: &Path, k_values: &[usize]) -> Result<Vec<MatchCurve>> {
    let db = load_db(db_path)?;
    let queries = parse_query_list(
        &fs::read_to_string(queries_path).with_context(|| format!("reading {}", queries_path.display()))?,
    );
    let labels = evalkit::parse_scop_classification(
        &fs::read(scop_path).with_context(|| format!("reading {}", scop_path.display()))?,
    )?;
    evaluate(&db, &queries, &labels, k_values)
}
