//! Cα trace extraction from legacy fixed-column coordinate files.
//!
//! Only `ATOM` records whose atom name is `CA` are read. Multi-model files
//! contribute their first model only, and of the alternate locations only
//! blank and `A` are kept.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Ordered α-carbon coordinates of one chain, in ångströms.
#[derive(Debug, Clone, PartialEq)]
pub struct CaTrace {
    pub id: String,
    pub chain: char,
    pub residues: Vec<[f64; 3]>,
}

impl CaTrace {
    /// Builds a trace, rejecting empty or non-finite coordinate lists.
    pub fn new(id: impl Into<String>, residues: Vec<[f64; 3]>) -> Result<Self> {
        Self::with_chain(id, 'A', residues)
    }

    pub fn with_chain(id: impl Into<String>, chain: char, residues: Vec<[f64; 3]>) -> Result<Self> {
        let id = id.into();
        if residues.is_empty() {
            return Err(Error::InvalidTrace(format!("trace '{id}' has no residues")));
        }
        if residues.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidTrace(format!("trace '{id}' has non-finite coordinates")));
        }
        Ok(Self { id, chain, residues })
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }
}

fn column(line: &[u8], start: usize, end: usize) -> Option<&str> {
    line.get(start..end).and_then(|b| std::str::from_utf8(b).ok())
}

fn parse_coord(line: &[u8], start: usize, lineno: usize, axis: char) -> Result<f64> {
    let text = column(line, start, start + 8).ok_or_else(|| Error::MalformedRecord {
        line: lineno,
        reason: format!("missing {axis} coordinate columns"),
    })?;
    let value: f64 = text.trim().parse().map_err(|_| Error::MalformedRecord {
        line: lineno,
        reason: format!("unparseable {axis} coordinate '{}'", text.trim()),
    })?;
    if !value.is_finite() {
        return Err(Error::MalformedRecord {
            line: lineno,
            reason: format!("non-finite {axis} coordinate"),
        });
    }
    Ok(value)
}

/// Parses coordinate-file content into one [`CaTrace`] per chain.
///
/// `source` names the structure; trace ids are `"{source}_{chain}"`, or just
/// `source` for a blank chain identifier. With `chain` set, only that chain
/// is returned.
pub fn parse_structure(bytes: &[u8], chain: Option<char>, source: &str) -> Result<Vec<CaTrace>> {
    let mut chains: Vec<(char, Vec<[f64; 3]>)> = Vec::new();
    let mut seen_model = false;

    for (idx, raw) in bytes.split(|&b| b == b'\n').enumerate() {
        let lineno = idx + 1;
        let line = raw.strip_suffix(b"\r").unwrap_or(raw);

        if line.starts_with(b"MODEL") {
            if seen_model {
                break;
            }
            seen_model = true;
            continue;
        }
        if line.starts_with(b"ENDMDL") || line == b"END" || line.starts_with(b"END ") {
            break;
        }
        if !line.starts_with(b"ATOM  ") {
            continue;
        }
        if column(line, 12, 16).map(str::trim) != Some("CA") {
            continue;
        }
        let alt_loc = line.get(16).copied().unwrap_or(b' ');
        if alt_loc != b' ' && alt_loc != b'A' {
            continue;
        }
        let chain_id = line.get(21).map(|&b| b as char).unwrap_or(' ');
        if chain.is_some_and(|c| c != chain_id) {
            continue;
        }
        let xyz = [
            parse_coord(line, 30, lineno, 'x')?,
            parse_coord(line, 38, lineno, 'y')?,
            parse_coord(line, 46, lineno, 'z')?,
        ];
        match chains.iter_mut().find(|(c, _)| *c == chain_id) {
            Some((_, residues)) => residues.push(xyz),
            None => chains.push((chain_id, vec![xyz])),
        }
    }

    if chains.is_empty() {
        return Err(Error::NoCaAtoms { chain });
    }
    Ok(chains
        .into_iter()
        .map(|(c, residues)| CaTrace {
            id: if c == ' ' { source.to_string() } else { format!("{source}_{c}") },
            chain: c,
            residues,
        })
        .collect())
}

/// Renders traces as `ATOM` records (glycine Cα only) followed by `END`.
pub fn to_pdb(traces: &[CaTrace]) -> String {
    let mut out = String::new();
    let mut serial = 1;
    for trace in traces {
        for (i, [x, y, z]) in trace.residues.iter().enumerate() {
            let _ = writeln!(
                out,
                "ATOM  {serial:>5}  CA  GLY {chain}{resseq:>4}    {x:>8.3}{y:>8.3}{z:>8.3}  1.00  0.00           C",
                chain = trace.chain,
                resseq = (i + 1) % 10000,
            );
            serial += 1;
        }
        let _ = writeln!(out, "TER");
    }
    out.push_str("END\n");
    out
}
