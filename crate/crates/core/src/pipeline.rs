use crate::descriptors::{comograd, gradient_field, phog, Descriptor, DescriptorKind, DescriptorParams};
use crate::distmap::{compute_distance_matrix, DistanceGrid};
use crate::error::Result;
use crate::rescale::canonicalize;
use crate::structure::CaTrace;

/// Full trace-to-descriptor pipeline for one parameter set.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Extractor {
    pub params: DescriptorParams,
}

impl Extractor {
    pub fn new(params: DescriptorParams) -> Result<Self> {
        params.validate()?;
        Ok(Self { params })
    }

    /// The canonical 128×128 distance image of a trace.
    pub fn canonical_image(&self, trace: &CaTrace) -> Result<DistanceGrid> {
        canonicalize(&compute_distance_matrix(trace))
    }

    pub fn extract(&self, trace: &CaTrace, kind: DescriptorKind) -> Result<Descriptor> {
        self.extract_image(&self.canonical_image(trace)?, kind)
    }

    /// Descriptor of an already canonical image.
    pub fn extract_image(&self, image: &DistanceGrid, kind: DescriptorKind) -> Result<Descriptor> {
        let field = gradient_field(image, &self.params);
        match kind {
            DescriptorKind::CoMOGrad => Ok(comograd(&field, &self.params)),
            DescriptorKind::Phog => phog(&field, &self.params),
            DescriptorKind::Combined => {
                Descriptor::combined(&comograd(&field, &self.params), &phog(&field, &self.params)?)
            }
        }
    }
}
