//! Retrieval accuracy against SCOP labels.
//!
//! For each query, the fraction of its top-k hits that share the query's
//! label at a given level, averaged over queries and expressed in percent.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    Class,
    Fold,
    Superfamily,
    Family,
}

impl Level {
    pub const ALL: [Level; 4] = [Level::Class, Level::Fold, Level::Superfamily, Level::Family];

    pub fn name(self) -> &'static str {
        match self {
            Level::Class => "class",
            Level::Fold => "fold",
            Level::Superfamily => "superfamily",
            Level::Family => "family",
        }
    }

    fn depth(self) -> usize {
        self as usize + 1
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Hierarchical SCOP label parsed from an sccs code such as `b.1.1.1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScopLabel {
    pub domain: String,
    sccs: String,
    /// Byte offsets where each level's prefix ends.
    ends: [usize; 4],
}

impl ScopLabel {
    pub fn parse(domain: impl Into<String>, sccs: &str) -> Option<Self> {
        let parts: Vec<&str> = sccs.split('.').collect();
        if parts.len() != 4 || parts.iter().any(|p| p.is_empty() || p.contains(char::is_whitespace)) {
            return None;
        }
        if !parts[0].chars().all(|c| c.is_ascii_alphabetic()) || !parts[1..].iter().all(|p| p.chars().all(|c| c.is_ascii_digit())) {
            return None;
        }
        let mut ends = [0; 4];
        let mut pos = 0;
        for (i, p) in parts.iter().enumerate() {
            pos += p.len() + usize::from(i > 0);
            ends[i] = pos;
        }
        Some(Self { domain: domain.into(), sccs: sccs.to_string(), ends })
    }

    /// Identifier at `level`, including all coarser levels (`b.1` for fold).
    pub fn at(&self, level: Level) -> &str {
        &self.sccs[..self.ends[level.depth() - 1]]
    }

    pub fn class(&self) -> &str {
        self.at(Level::Class)
    }

    pub fn fold(&self) -> &str {
        self.at(Level::Fold)
    }

    pub fn superfamily(&self) -> &str {
        self.at(Level::Superfamily)
    }

    pub fn family(&self) -> &str {
        self.at(Level::Family)
    }

    pub fn matches(&self, other: &ScopLabel, level: Level) -> bool {
        self.at(level) == other.at(level)
    }
}

pub type Labels = HashMap<String, ScopLabel>;

/// Parses a tab-separated `dir.cla`-style file: domain id in field 1, sccs in field 4.
pub fn parse_scop_classification(bytes: &[u8]) -> Result<Labels> {
    let text = String::from_utf8_lossy(bytes);
    let mut labels = HashMap::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() < 4 {
            return Err(Error::MalformedLine { line: lineno, reason: format!("expected at least 4 tab-separated fields, found {}", fields.len()) });
        }
        let domain = fields[0].trim();
        let label = ScopLabel::parse(domain, fields[3].trim())
            .ok_or_else(|| Error::MalformedLine { line: lineno, reason: format!("unparseable sccs '{}'", fields[3]) })?;
        labels.insert(domain.to_string(), label);
    }
    Ok(labels)
}

/// Ranked hit ids of one query, best first.
#[derive(Debug, Clone, PartialEq)]
pub struct QueryResult {
    pub query: String,
    pub hits: Vec<String>,
}

fn label<'a>(labels: &'a Labels, id: &str) -> Result<&'a ScopLabel> {
    labels.get(id).ok_or_else(|| Error::MissingLabel(id.to_string()))
}

/// First `k` hits with the query's own id removed.
fn scored_window(result: &QueryResult, k: usize) -> Result<Vec<&str>> {
    let window: Vec<&str> = result.hits.iter().map(String::as_str).filter(|h| *h != result.query).take(k).collect();
    if window.len() < k {
        return Err(Error::InsufficientResults { query: result.query.clone(), found: window.len(), needed: k });
    }
    Ok(window)
}

pub fn percent_match(results: &[QueryResult], labels: &Labels, level: Level, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if results.is_empty() {
        return Err(Error::InvalidArgument("no queries to score".into()));
    }
    let mut matches = 0usize;
    for result in results {
        let query = label(labels, &result.query)?;
        for hit in scored_window(result, k)? {
            if label(labels, hit)?.matches(query, level) {
                matches += 1;
            }
        }
    }
    // mean matches per query, as a percentage of k
    Ok(matches as f64 * 100.0 / (results.len() * k) as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatchCurve {
    pub level: Level,
    pub points: Vec<(usize, f64)>,
}

pub fn default_k_values() -> Vec<usize> {
    (5..=50).step_by(5).collect()
}

pub fn match_curves(results: &[QueryResult], labels: &Labels, k_values: &[usize]) -> Result<Vec<MatchCurve>> {
    if k_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("k values must be strictly increasing".into()));
    }
    Level::ALL
        .iter()
        .map(|&level| {
            let points = k_values
                .iter()
                .map(|&k| percent_match(results, labels, level, k).map(|p| (k, p)))
                .collect::<Result<_>>()?;
            Ok(MatchCurve { level, points })
        })
        .collect()
}

/// Tab-separated `k level percent` rows under a header line.
pub fn format_curves(curves: &[MatchCurve]) -> String {
    let mut out = String::from("k\tlevel\tpercent\n");
    for curve in curves {
        for (k, p) in &curve.points {
            let _ = writeln!(out, "{k}\t{}\t{p:.4}", curve.level);
        }
    }
    out
}
