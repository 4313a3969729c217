//! Protein tertiary-structure retrieval from Cα distance-matrix images.
//!
//! The pipeline turns a chain's α-carbon trace into a square distance
//! matrix, brings that matrix to a canonical 128×128 image, takes its
//! gradient, and summarizes the gradient as two fixed-length descriptors:
//!
//! * **CoMOGrad**: a 16×16 co-occurrence matrix of quantized gradient
//!   orientations of neighboring pixels, flattened to 256 values.
//! * **PHOG**: magnitude-weighted 9-bin orientation histograms over an
//!   85-node quad tree, sum-normalized to 765 values.
//!
//! Database proteins are ranked against a query by plain Euclidean distance
//! between descriptors.
//!
//! ```
//! use comograd_core::{CaTrace, DescriptorKind, Extractor};
//!
//! // A straight 40-residue chain with 3.8 Å spacing.
//! let coords = (0..40).map(|i| [3.8 * i as f64, 0.0, 0.0]).collect();
//! let trace = CaTrace::new("toy_A", coords).unwrap();
//! let descriptor = Extractor::default().extract(&trace, DescriptorKind::Combined).unwrap();
//! assert_eq!(descriptor.values.len(), 1021);
//! ```

pub mod descriptors;
pub mod distmap;
mod error;
pub mod evalkit;
mod pipeline;
pub mod rescale;
pub mod retrieval;
pub mod store;
pub mod structure;
pub mod synth;

pub use descriptors::{Descriptor, DescriptorKind, DescriptorParams, Displacements, GradientField};
pub use distmap::{compute_distance_matrix, DistanceGrid};
pub use error::{Error, Result};
pub use pipeline::Extractor;
pub use rescale::{canonicalize, CANONICAL_SIZE};
pub use retrieval::{query, RankedHit};
pub use store::FeatureDb;
pub use structure::{parse_structure, CaTrace};
