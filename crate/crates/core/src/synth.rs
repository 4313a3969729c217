//! Synthetic Cα traces with protein-like secondary structure.
//!
//! A [`SyntheticFold`] is a blueprint of helices and strands placed in
//! space; [`SyntheticFold::sample`] draws family members from it by
//! jittering segment lengths, placement, and coordinates. Used for test
//! corpora and benchmarks when real coordinate files are unavailable.

use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Distribution, Normal, UnitSphere};

use crate::structure::CaTrace;

type Vec3 = [f64; 3];

fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn scale(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn norm(a: Vec3) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

fn unit(a: Vec3) -> Vec3 {
    scale(a, 1.0 / norm(a))
}

/// Some unit vector perpendicular to `a`.
fn perpendicular(a: Vec3) -> Vec3 {
    let helper = if a[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    unit(cross(a, helper))
}

const HELIX_RISE: f64 = 1.5;
const HELIX_RADIUS: f64 = 2.3;
const HELIX_TWIST: f64 = 100.0 * PI / 180.0;
const STRAND_RISE: f64 = 3.3;
const STRAND_PLEAT: f64 = 0.9;
const CA_SPACING: f64 = 3.8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentKind {
    Helix,
    Strand,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub kind: SegmentKind,
    /// Axis point of the first residue.
    pub anchor: Vec3,
    pub axis: Vec3,
    pub len: usize,
    pub phase: f64,
}

impl Segment {
    fn rise(&self) -> f64 {
        match self.kind {
            SegmentKind::Helix => HELIX_RISE,
            SegmentKind::Strand => STRAND_RISE,
        }
    }

    fn residues(&self) -> Vec<Vec3> {
        let u = perpendicular(self.axis);
        let v = cross(self.axis, u);
        (0..self.len)
            .map(|k| {
                let along = add(self.anchor, scale(self.axis, self.rise() * k as f64));
                match self.kind {
                    SegmentKind::Helix => {
                        let t = self.phase + HELIX_TWIST * k as f64;
                        add(along, add(scale(u, HELIX_RADIUS * t.cos()), scale(v, HELIX_RADIUS * t.sin())))
                    }
                    SegmentKind::Strand => {
                        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                        add(along, scale(u, STRAND_PLEAT * sign))
                    }
                }
            })
            .collect()
    }
}

/// Overall secondary-structure arrangement of a blueprint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Topology {
    /// Up-down helix bundle.
    Alpha,
    /// Antiparallel sheet, or a two-sheet sandwich for many strands.
    Beta,
    /// Parallel sheet with helices packed on both faces.
    AlphaBeta,
}

impl Topology {
    pub fn scop_class(self) -> char {
        match self {
            Topology::Alpha => 'a',
            Topology::Beta => 'b',
            Topology::AlphaBeta => 'c',
        }
    }
}

/// Member-to-member variability within a family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Variation {
    /// Standard deviation of per-atom Gaussian noise, Å.
    pub coord_noise: f64,
    /// Segment lengths vary uniformly by up to this many residues.
    pub length_jitter: usize,
    /// Standard deviation of segment placement noise, Å.
    pub anchor_noise: f64,
    /// Standard deviation of the axis perturbation before renormalizing.
    pub tilt: f64,
    /// Loops gain up to this many extra residues.
    pub loop_extra: usize,
}

impl Default for Variation {
    fn default() -> Self {
        Self { coord_noise: 0.5, length_jitter: 1, anchor_noise: 0.8, tilt: 0.08, loop_extra: 2 }
    }
}

impl Variation {
    pub fn none() -> Self {
        Self { coord_noise: 0.0, length_jitter: 0, anchor_noise: 0.0, tilt: 0.0, loop_extra: 0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticFold {
    pub topology: Topology,
    pub segments: Vec<Segment>,
}

impl SyntheticFold {
    pub fn random<R: Rng + ?Sized>(rng: &mut R, topology: Topology) -> Self {
        let z = [0.0, 0.0, 1.0];
        let x = [1.0, 0.0, 0.0];
        let mut segments = Vec::new();
        match topology {
            Topology::Alpha => {
                let count = rng.random_range(3..=6);
                let radius = 4.0 + 2.0 * count as f64;
                for i in 0..count {
                    let len = rng.random_range(10..=22);
                    let up = i % 2 == 0;
                    let theta = 2.0 * PI * i as f64 / count as f64 + rng.random_range(-0.2..0.2);
                    let tilt = [rng.random_range(-0.25..0.25), rng.random_range(-0.25..0.25), 0.0];
                    let axis = unit(add(scale(z, if up { 1.0 } else { -1.0 }), tilt));
                    let base = [radius * theta.cos(), radius * theta.sin(), 0.0];
                    let anchor = if up { base } else { sub(base, scale(axis, HELIX_RISE * len as f64)) };
                    segments.push(Segment { kind: SegmentKind::Helix, anchor, axis, len, phase: rng.random_range(0.0..2.0 * PI) });
                }
            }
            Topology::Beta => {
                let count = rng.random_range(4..=8);
                let mut slots: Vec<usize> = (0..count).collect();
                slots[1..].shuffle(rng);
                let per_sheet = if count >= 6 { count.div_ceil(2) } else { count };
                for (i, &slot) in slots.iter().enumerate() {
                    let len = rng.random_range(4..=10);
                    let sheet = slot / per_sheet;
                    let row = slot % per_sheet;
                    let forward = i % 2 == 0;
                    let axis = unit(add(scale(x, if forward { 1.0 } else { -1.0 }), [0.0, rng.random_range(-0.1..0.1), 0.0]));
                    let base = [0.0, 4.8 * row as f64, 10.0 * sheet as f64];
                    let anchor = if forward { base } else { sub(base, scale(axis, STRAND_RISE * len as f64)) };
                    segments.push(Segment { kind: SegmentKind::Strand, anchor, axis, len, phase: 0.0 });
                }
            }
            Topology::AlphaBeta => {
                let pairs = rng.random_range(2..=4);
                for j in 0..pairs {
                    let strand_len = rng.random_range(4..=7);
                    segments.push(Segment {
                        kind: SegmentKind::Strand,
                        anchor: [0.0, 4.8 * j as f64, 0.0],
                        axis: x,
                        len: strand_len,
                        phase: 0.0,
                    });
                    let helix_len = rng.random_range(10..=16);
                    let side = if j % 2 == 0 { 1.0 } else { -1.0 };
                    let axis = unit([-1.0, rng.random_range(-0.2..0.2), 0.0]);
                    let base = [STRAND_RISE * strand_len as f64 + 2.0, 4.8 * j as f64 + 2.4, 10.0 * side];
                    segments.push(Segment { kind: SegmentKind::Helix, anchor: base, axis, len: helix_len, phase: rng.random_range(0.0..2.0 * PI) });
                }
            }
        }
        Self { topology, segments }
    }

    /// Draws one member; `Variation::none()` gives the ideal blueprint chain.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, variation: &Variation) -> Vec<Vec3> {
        let gauss = |rng: &mut R, sd: f64| if sd > 0.0 { Normal::new(0.0, sd).unwrap().sample(rng) } else { 0.0 };
        let mut coords: Vec<Vec3> = Vec::new();
        for seg in &self.segments {
            let jitter = variation.length_jitter as i64;
            let delta = if jitter > 0 { rng.random_range(-jitter..=jitter) } else { 0 };
            let axis = unit(add(seg.axis, [gauss(rng, variation.tilt), gauss(rng, variation.tilt), gauss(rng, variation.tilt)]));
            let anchor = add(seg.anchor, [gauss(rng, variation.anchor_noise), gauss(rng, variation.anchor_noise), gauss(rng, variation.anchor_noise)]);
            let member = Segment { anchor, axis, len: (seg.len as i64 + delta).max(3) as usize, ..seg.clone() };
            let residues = member.residues();

            if let Some(&last) = coords.last() {
                let first = residues[0];
                let gap = norm(sub(first, last));
                let extra = if variation.loop_extra > 0 { rng.random_range(0..=variation.loop_extra) } else { 0 };
                let n = ((gap / CA_SPACING).round() as usize).max(1) + extra;
                let dir = unit(sub(first, last));
                let bulge = perpendicular(dir);
                let amplitude = 1.0 + extra as f64;
                for j in 1..=n {
                    let t = j as f64 / (n + 1) as f64;
                    let on_line = add(last, scale(sub(first, last), t));
                    coords.push(add(on_line, scale(bulge, amplitude * (PI * t).sin())));
                }
            }
            coords.extend(residues);
        }
        if variation.coord_noise > 0.0 {
            for p in &mut coords {
                for v in p.iter_mut() {
                    *v += gauss(rng, variation.coord_noise);
                }
            }
        }
        coords
    }

    /// Noise-free chain of the blueprint.
    pub fn trace(&self, id: &str) -> CaTrace {
        let coords = self.sample(&mut rand::rng(), &Variation::none());
        CaTrace::new(id, coords).expect("blueprint chains are non-empty and finite")
    }
}

/// Persistent random walk with Cα spacing, for shape-agnostic tests.
pub fn random_walk<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<Vec3> {
    let mut dir: Vec3 = UnitSphere.sample(rng);
    let mut pos = [0.0; 3];
    let mut coords = Vec::with_capacity(len);
    for _ in 0..len {
        coords.push(pos);
        let kick: Vec3 = UnitSphere.sample(rng);
        dir = unit(add(dir, scale(kick, 0.7)));
        pos = add(pos, scale(dir, CA_SPACING));
    }
    coords
}

/// One labelled member of a synthetic classification corpus.
#[derive(Debug, Clone)]
pub struct LabelledTrace {
    pub trace: CaTrace,
    /// Four-level code `class.fold.superfamily.family`.
    pub sccs: String,
}

/// `families` blueprints with `members` variants each. Topologies cycle
/// through alpha, beta, and alpha/beta; every blueprint is its own fold.
pub fn labelled_corpus<R: Rng + ?Sized>(rng: &mut R, families: usize, members: usize, variation: &Variation) -> Vec<LabelledTrace> {
    let topologies = [Topology::Alpha, Topology::Beta, Topology::AlphaBeta];
    let mut out = Vec::with_capacity(families * members);
    for f in 0..families {
        let topology = topologies[f % topologies.len()];
        let fold = SyntheticFold::random(rng, topology);
        let sccs = format!("{}.{}.1.1", topology.scop_class(), f + 1);
        for m in 0..members {
            let id = format!("d{:02}{:02}a_", f, m);
            let trace = CaTrace::new(id, fold.sample(rng, variation)).expect("sampled chains are finite");
            out.push(LabelledTrace { trace, sccs: sccs.clone() });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn spacing(coords: &[Vec3]) -> Vec<f64> {
        coords.windows(2).map(|w| norm(sub(w[1], w[0]))).collect()
    }

    #[test]
    fn ideal_segments_have_expected_spacing() {
        let helix = Segment { kind: SegmentKind::Helix, anchor: [0.0; 3], axis: [0.0, 0.0, 1.0], len: 10, phase: 0.0 };
        for d in spacing(&helix.residues()) {
            assert!((d - 3.8).abs() < 0.1, "helix spacing {d}");
        }
        let strand = Segment { kind: SegmentKind::Strand, ..helix };
        for d in spacing(&strand.residues()) {
            assert!((d - 3.8).abs() < 0.1, "strand spacing {d}");
        }
    }

    #[test]
    fn blueprints_are_long_enough() {
        let mut rng = StdRng::seed_from_u64(2);
        for topology in [Topology::Alpha, Topology::Beta, Topology::AlphaBeta] {
            for _ in 0..20 {
                let fold = SyntheticFold::random(&mut rng, topology);
                let coords = fold.sample(&mut rng, &Variation::default());
                assert!(coords.len() >= 16, "{topology:?} gave {}", coords.len());
                assert!(coords.iter().flatten().all(|v| v.is_finite()));
            }
        }
    }

    #[test]
    fn random_walk_spacing() {
        let mut rng = StdRng::seed_from_u64(4);
        let walk = random_walk(&mut rng, 50);
        assert_eq!(walk.len(), 50);
        assert!(spacing(&walk).iter().all(|d| (d - 3.8).abs() < 1e-9));
    }

    #[test]
    fn corpus_labels() {
        let mut rng = StdRng::seed_from_u64(6);
        let corpus = labelled_corpus(&mut rng, 4, 3, &Variation::default());
        assert_eq!(corpus.len(), 12);
        assert_eq!(corpus[0].sccs, "a.1.1.1");
        assert_eq!(corpus[3].sccs, "b.2.1.1");
        assert_eq!(corpus[11].trace.id, "d0302a_");
    }
}
