//! Binary feature database (`.cmgf`).
//!
//! Layout, all integers little-endian:
//!
//! | field            | size                                  |
//! |------------------|---------------------------------------|
//! | magic `CMGF`     | 4                                     |
//! | version = 1      | u32                                   |
//! | kind code        | u8                                    |
//! | params           | u8 depth, u8 cooc bins, u8 hog bins, u8 displacement code |
//! | vector length    | u32                                   |
//! | entry count      | u64                                   |
//! | entries          | u16 id length, id bytes (UTF-8), `vector length` × f32 |

use std::collections::HashMap;
use std::io::{self, Read, Write};

use crate::descriptors::{DescriptorKind, DescriptorParams, Displacements};
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"CMGF";
pub const VERSION: u32 = 1;
pub const HEADER_LEN: usize = 25;

/// An ordered, id-unique collection of stored descriptor vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureDb {
    kind: DescriptorKind,
    params: DescriptorParams,
    ids: Vec<String>,
    values: Vec<f32>,
    index: HashMap<String, usize>,
}

impl FeatureDb {
    pub fn new(kind: DescriptorKind, params: DescriptorParams) -> Self {
        Self { kind, params, ids: Vec::new(), values: Vec::new(), index: HashMap::new() }
    }

    pub fn kind(&self) -> DescriptorKind {
        self.kind
    }

    pub fn params(&self) -> DescriptorParams {
        self.params
    }

    pub fn vector_len(&self) -> usize {
        self.params.vector_len(self.kind)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn push(&mut self, id: impl Into<String>, values: &[f32]) -> Result<()> {
        let id = id.into();
        if values.len() != self.vector_len() {
            return Err(Error::InvalidArgument(format!(
                "entry '{id}' has {} values, database expects {}",
                values.len(),
                self.vector_len()
            )));
        }
        if id.len() > u16::MAX as usize {
            return Err(Error::InvalidArgument(format!("id of {} bytes is too long", id.len())));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!("entry '{id}' has non-finite values")));
        }
        if self.index.contains_key(&id) {
            return Err(Error::InvalidArgument(format!("duplicate id '{id}'")));
        }
        self.index.insert(id.clone(), self.ids.len());
        self.ids.push(id);
        self.values.extend_from_slice(values);
        Ok(())
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn vector(&self, i: usize) -> &[f32] {
        let len = self.vector_len();
        &self.values[i * len..(i + 1) * len]
    }

    pub fn get(&self, id: &str) -> Option<&[f32]> {
        self.index.get(id).map(|&i| self.vector(i))
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = (&str, &[f32])> {
        let len = self.vector_len();
        self.ids.iter().map(String::as_str).zip(self.values.chunks_exact(len.max(1)))
    }
}

fn io_failure(e: io::Error) -> Error {
    Error::Io(e)
}

pub fn write_db<W: Write>(db: &FeatureDb, sink: &mut W) -> Result<()> {
    let mut header = Vec::with_capacity(HEADER_LEN);
    header.extend_from_slice(MAGIC);
    header.extend_from_slice(&VERSION.to_le_bytes());
    header.push(db.kind.code());
    header.extend_from_slice(&[
        db.params.pyramid_depth,
        db.params.cooc_bins,
        db.params.hog_bins,
        db.params.displacements.code(),
    ]);
    header.extend_from_slice(&(db.vector_len() as u32).to_le_bytes());
    header.extend_from_slice(&(db.len() as u64).to_le_bytes());
    sink.write_all(&header).map_err(io_failure)?;

    let mut record = Vec::new();
    for (id, values) in db.iter() {
        record.clear();
        record.extend_from_slice(&(id.len() as u16).to_le_bytes());
        record.extend_from_slice(id.as_bytes());
        for v in values {
            record.extend_from_slice(&v.to_le_bytes());
        }
        sink.write_all(&record).map_err(io_failure)?;
    }
    sink.flush().map_err(io_failure)
}

fn read_exact<R: Read>(source: &mut R, buf: &mut [u8], what: &str) -> Result<()> {
    source.read_exact(buf).map_err(|e| match e.kind() {
        io::ErrorKind::UnexpectedEof => Error::CorruptRecord(format!("truncated {what}")),
        _ => Error::Io(e),
    })
}

pub fn read_db<R: Read>(source: &mut R) -> Result<FeatureDb> {
    let mut magic = [0u8; 4];
    source.read_exact(&mut magic).map_err(|e| match e.kind() {
        io::ErrorKind::UnexpectedEof => Error::BadMagic,
        _ => Error::Io(e),
    })?;
    if &magic != MAGIC {
        return Err(Error::BadMagic);
    }
    let mut rest = [0u8; HEADER_LEN - 4];
    read_exact(source, &mut rest, "header")?;
    let version = u32::from_le_bytes(rest[0..4].try_into().unwrap());
    if version != VERSION {
        return Err(Error::UnsupportedVersion(version));
    }
    let kind = DescriptorKind::from_code(rest[4])
        .ok_or_else(|| Error::CorruptRecord(format!("unknown kind code {}", rest[4])))?;
    let displacements = Displacements::from_code(rest[8])
        .ok_or_else(|| Error::CorruptRecord(format!("unknown displacement code {}", rest[8])))?;
    let params = DescriptorParams { pyramid_depth: rest[5], cooc_bins: rest[6], hog_bins: rest[7], displacements };
    params.validate().map_err(|e| Error::CorruptRecord(e.to_string()))?;
    let vector_len = u32::from_le_bytes(rest[9..13].try_into().unwrap()) as usize;
    if vector_len != params.vector_len(kind) {
        return Err(Error::CorruptRecord(format!(
            "vector length {vector_len} does not match {kind} with the stored parameters ({})",
            params.vector_len(kind)
        )));
    }
    let count = u64::from_le_bytes(rest[13..21].try_into().unwrap());

    let mut db = FeatureDb::new(kind, params);
    let mut len_buf = [0u8; 2];
    let mut value_bytes = vec![0u8; vector_len * 4];
    let mut values = vec![0f32; vector_len];
    for n in 0..count {
        read_exact(source, &mut len_buf, "record")?;
        let mut id = vec![0u8; u16::from_le_bytes(len_buf) as usize];
        read_exact(source, &mut id, "record id")?;
        let id = String::from_utf8(id).map_err(|_| Error::CorruptRecord(format!("record {n}: id is not UTF-8")))?;
        read_exact(source, &mut value_bytes, "record values")?;
        for (v, b) in values.iter_mut().zip(value_bytes.chunks_exact(4)) {
            *v = f32::from_le_bytes(b.try_into().unwrap());
        }
        db.push(id, &values).map_err(|e| Error::CorruptRecord(format!("record {n}: {e}")))?;
    }

    let mut probe = [0u8; 1];
    match source.read(&mut probe) {
        Ok(0) => Ok(db),
        Ok(_) => Err(Error::CorruptRecord("trailing bytes after the last record".into())),
        Err(e) => Err(Error::Io(e)),
    }
}
