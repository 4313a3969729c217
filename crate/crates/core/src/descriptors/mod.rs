//! Oriented-gradient descriptors of canonical distance images.

mod comograd;
mod gradient;
mod phog;

pub use comograd::{comograd, cooccurrence_counts};
pub use gradient::{gradient_field, GradientField, ACTIVE_THRESHOLD};
pub use phog::{phog, phog_histograms, quad_tree_nodes};

use std::fmt;

use crate::error::{Error, Result};

/// Which descriptor a vector holds. The discriminant is the on-disk code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum DescriptorKind {
    CoMOGrad = 1,
    Phog = 2,
    Combined = 3,
}

impl DescriptorKind {
    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            1 => Some(Self::CoMOGrad),
            2 => Some(Self::Phog),
            3 => Some(Self::Combined),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::CoMOGrad => "comograd",
            Self::Phog => "phog",
            Self::Combined => "combined",
        }
    }
}

impl fmt::Display for DescriptorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for DescriptorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "comograd" => Ok(Self::CoMOGrad),
            "phog" => Ok(Self::Phog),
            "combined" => Ok(Self::Combined),
            other => Err(Error::InvalidArgument(format!(
                "unknown descriptor kind '{other}' (expected comograd, phog or combined)"
            ))),
        }
    }
}

/// Pixel displacements along which orientation co-occurrences are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum Displacements {
    /// One column right and one row down.
    AxisAligned = 1,
    /// Right, down, down-right and down-left.
    WithDiagonals = 2,
}

impl Displacements {
    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            1 => Some(Self::AxisAligned),
            2 => Some(Self::WithDiagonals),
            _ => None,
        }
    }

    /// `(row, col)` offsets.
    pub fn offsets(self) -> &'static [(isize, isize)] {
        match self {
            Self::AxisAligned => &[(0, 1), (1, 0)],
            Self::WithDiagonals => &[(0, 1), (1, 0), (1, 1), (1, -1)],
        }
    }
}

/// Extraction parameters. Stored in every feature database header so that a
/// query is only ever compared against vectors built the same way.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DescriptorParams {
    /// Deepest quad-tree level of the PHOG pyramid (root is level 0).
    pub pyramid_depth: u8,
    /// Orientation bins for the co-occurrence matrix.
    pub cooc_bins: u8,
    /// Orientation bins for the PHOG histograms.
    pub hog_bins: u8,
    pub displacements: Displacements,
}

impl Default for DescriptorParams {
    fn default() -> Self {
        Self {
            pyramid_depth: 3,
            cooc_bins: 16,
            hog_bins: 9,
            displacements: Displacements::AxisAligned,
        }
    }
}

impl DescriptorParams {
    pub fn validate(&self) -> Result<()> {
        if self.cooc_bins == 0 || self.hog_bins == 0 {
            return Err(Error::InvalidArgument("orientation bin counts must be positive".into()));
        }
        if self.pyramid_depth > 7 {
            return Err(Error::InvalidArgument(format!(
                "pyramid depth {} exceeds the 128-pixel image (max 7)",
                self.pyramid_depth
            )));
        }
        Ok(())
    }

    pub fn comograd_len(&self) -> usize {
        self.cooc_bins as usize * self.cooc_bins as usize
    }

    pub fn phog_len(&self) -> usize {
        quad_tree_nodes(self.pyramid_depth) * self.hog_bins as usize
    }

    pub fn vector_len(&self, kind: DescriptorKind) -> usize {
        match kind {
            DescriptorKind::CoMOGrad => self.comograd_len(),
            DescriptorKind::Phog => self.phog_len(),
            DescriptorKind::Combined => self.comograd_len() + self.phog_len(),
        }
    }
}

/// A fixed-length descriptor vector tagged with how it was built.
#[derive(Debug, Clone, PartialEq)]
pub struct Descriptor {
    pub kind: DescriptorKind,
    pub params: DescriptorParams,
    pub values: Vec<f64>,
}

impl Descriptor {
    /// Concatenates a CoMOGrad and a PHOG descriptor, CoMOGrad first.
    pub fn combined(c: &Descriptor, p: &Descriptor) -> Result<Descriptor> {
        if c.kind != DescriptorKind::CoMOGrad {
            return Err(Error::KindMismatch { expected: DescriptorKind::CoMOGrad, found: c.kind });
        }
        if p.kind != DescriptorKind::Phog {
            return Err(Error::KindMismatch { expected: DescriptorKind::Phog, found: p.kind });
        }
        if c.params != p.params {
            return Err(Error::ParamsMismatch(
                "CoMOGrad and PHOG descriptors were extracted with different parameters".into(),
            ));
        }
        let mut values = Vec::with_capacity(c.values.len() + p.values.len());
        values.extend_from_slice(&c.values);
        values.extend_from_slice(&p.values);
        Ok(Descriptor { kind: DescriptorKind::Combined, params: c.params, values })
    }

    /// Values rounded to the storage precision.
    pub fn to_f32(&self) -> Vec<f32> {
        self.values.iter().map(|&v| v as f32).collect()
    }
}
