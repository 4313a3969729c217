//! Acceptance criteria, one test per criterion. Each prints a
//! `[PASS]`/`[FAIL]` line; run with `--nocapture` to see them.

mod common;

use std::fs;
use std::hint::black_box;
use std::time::Instant;

use comograd_cli::{cmd_index, cmd_query, evaluate};
use comograd_core::descriptors::{comograd, gradient_field, phog, quad_tree_nodes, GradientField};
use comograd_core::evalkit::{format_curves, percent_match, Labels, Level, QueryResult, ScopLabel};
use comograd_core::rescale::{dwt2, idwt2, nearest_pow2_resize};
use comograd_core::retrieval::{l2_distance, query, query_vector};
use comograd_core::synth::{labelled_corpus, random_walk, Variation};
use comograd_core::{canonicalize, CaTrace, DescriptorKind, DescriptorParams, DistanceGrid, Extractor, FeatureDb};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

// Tolerances and thresholds, fixed from the acceptance criteria.
const WORKED_EXAMPLE_PERCENT: f64 = 90.0;
const DWT_ROUND_TRIP_MAX_ABS: f64 = 1e-10;
const DWT_ENERGY_REL: f64 = 1e-8;
const RIGID_MOTION_PER_ENTRY: f64 = 1e-6;
const COST_RATIO_RANGE: (f64, f64) = (0.125, 0.5);
const MIN_COMPARISONS: usize = 100_000;

fn report(id: u32, name: &str, pass: bool, detail: &str) {
    println!("[{}] criterion {id}: {name} — {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {id} ({name}) failed: {detail}");
}

fn label_map(entries: impl IntoIterator<Item = (String, String)>) -> Labels {
    entries.into_iter().map(|(d, s)| (d.clone(), ScopLabel::parse(d, &s).unwrap())).collect()
}

#[test]
fn c01_worked_example() {
    // three queries with 40, 42 and 48 same-family hits among their top 50
    let mut entries = vec![("other".to_string(), "z.1.1.1".to_string())];
    let mut results = Vec::new();
    for (q, matches) in [40usize, 42, 48].into_iter().enumerate() {
        let query = format!("q{q}");
        entries.push((query.clone(), format!("a.{q}.1.1")));
        let mut hits = Vec::new();
        for j in 0..50 {
            if j < matches {
                let id = format!("q{q}h{j}");
                entries.push((id.clone(), format!("a.{q}.1.1")));
                hits.push(id);
            } else {
                hits.push("other".to_string());
            }
        }
        results.push(QueryResult { query, hits });
    }
    let p = percent_match(&results, &label_map(entries), Level::Family, 50).unwrap();
    report(
        1,
        "worked example (40, 42, 48) at k=50",
        p == WORKED_EXAMPLE_PERCENT,
        &format!("got {p:.6} %, expected exactly {WORKED_EXAMPLE_PERCENT}"),
    );
}

#[test]
fn c02_dimension_contracts() {
    let mut rng = StdRng::seed_from_u64(2);
    let ex = Extractor::default();
    let trace = CaTrace::new("t", random_walk(&mut rng, 77)).unwrap();
    let c = ex.extract(&trace, DescriptorKind::CoMOGrad).unwrap().values.len();
    let p = ex.extract(&trace, DescriptorKind::Phog).unwrap().values.len();
    let both = ex.extract(&trace, DescriptorKind::Combined).unwrap().values.len();
    let nodes = quad_tree_nodes(DescriptorParams::default().pyramid_depth);
    let sizes: Vec<usize> = [16, 17, 45, 90, 128, 129, 181, 260, 513]
        .iter()
        .map(|&n| canonicalize(&DistanceGrid::from_fn(n, |r, col| (r as f64 - col as f64).abs())).unwrap().size())
        .collect();
    let pass = c == 256 && nodes == 85 && p == 765 && both == 1021 && sizes.iter().all(|&s| s == 128);
    report(2, "dimension contracts", pass, &format!("comograd {c}, nodes {nodes}, phog {p}, combined {both}, canonical sizes {sizes:?}"));
}

#[test]
fn c03_resize_rounding() {
    let g = |n| DistanceGrid::from_fn(n, |r, c| (r + c) as f64);
    let a = nearest_pow2_resize(&g(80)).unwrap().size();
    let b = nearest_pow2_resize(&g(100)).unwrap().size();
    report(3, "power-of-two resize", a == 64 && b == 128, &format!("80 → {a}, 100 → {b}"));
}

#[test]
fn c04_dwt_reconstruction() {
    let mut rng = StdRng::seed_from_u64(4);
    let (mut worst_abs, mut worst_energy) = (0.0f64, 0.0f64);
    for i in 0..100 {
        let n = if i == 0 { 4 } else if i == 1 { 256 } else { 2 * rng.random_range(2..=128) };
        let x = DistanceGrid::from_fn(n, |_, _| rng.random_range(-100.0..100.0));
        let bands = dwt2(&x).unwrap();
        worst_abs = worst_abs.max(idwt2(&bands).unwrap().max_abs_diff(&x));
        let e = x.sum_of_squares();
        worst_energy = worst_energy.max(((bands.sum_of_squares() - e) / e).abs());
    }
    report(
        4,
        "DWT perfect reconstruction",
        worst_abs < DWT_ROUND_TRIP_MAX_ABS && worst_energy < DWT_ENERGY_REL,
        &format!("max |x - idwt(dwt(x))| = {worst_abs:.2e}, max relative energy error = {worst_energy:.2e} over 100 matrices"),
    );
}

fn rotation(rng: &mut StdRng) -> [[f64; 3]; 3] {
    let v: Vec<f64> = (0..4).map(|_| rng.random_range(-1.0..1.0)).collect();
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let [w, x, y, z] = [v[0] / n, v[1] / n, v[2] / n, v[3] / n];
    [
        [1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y)],
        [2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x)],
        [2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y)],
    ]
}

#[test]
fn c05_rigid_motion_invariance() {
    let mut rng = StdRng::seed_from_u64(5);
    let ex = Extractor::default();
    let mut originals = Vec::new();
    let mut moved = Vec::new();
    for i in 0..50 {
        let len = rng.random_range(30..=300);
        let coords = random_walk(&mut rng, len);
        let rot = rotation(&mut rng);
        let shift: [f64; 3] = std::array::from_fn(|_| rng.random_range(-200.0..200.0));
        let moved_coords = coords
            .iter()
            .map(|p| std::array::from_fn(|r| rot[r][0] * p[0] + rot[r][1] * p[1] + rot[r][2] * p[2] + shift[r]))
            .collect();
        originals.push(ex.extract(&CaTrace::new(format!("p{i:02}"), coords).unwrap(), DescriptorKind::Combined).unwrap());
        moved.push(ex.extract(&CaTrace::new(format!("p{i:02}"), moved_coords).unwrap(), DescriptorKind::Combined).unwrap());
    }
    let worst = originals
        .iter()
        .zip(&moved)
        .flat_map(|(a, b)| a.values.iter().zip(&b.values).map(|(x, y)| (x - y).abs()))
        .fold(0.0, f64::max);

    let mut db = FeatureDb::new(DescriptorKind::Combined, ex.params);
    for (i, d) in originals.iter().enumerate() {
        db.push(format!("p{i:02}"), &d.to_f32()).unwrap();
    }
    let ids = |d| query(&db, d, 50).unwrap().into_iter().map(|h| h.id).collect::<Vec<_>>();
    let rank_mismatches = originals.iter().zip(&moved).filter(|(a, b)| ids(a) != ids(b)).count();
    report(
        5,
        "rigid-motion invariance",
        worst <= RIGID_MOTION_PER_ENTRY && rank_mismatches == 0,
        &format!("max per-entry deviation {worst:.2e} over 50 traces, {rank_mismatches} ranking mismatches"),
    );
}

fn naive_comograd(f: &GradientField, bins: usize) -> Vec<f64> {
    let n = f.size;
    let mut counts = vec![0u64; bins * bins];
    let mut total = 0u64;
    for p in 0..n * n {
        for q in 0..n * n {
            let right = q == p + 1 && q / n == p / n;
            let down = q == p + n;
            if (right || down) && f.active[p] && f.active[q] {
                counts[f.cooc_bin[p] as usize * bins + f.cooc_bin[q] as usize] += 1;
                total += 1;
            }
        }
    }
    counts.iter().map(|&c| if total == 0 { 0.0 } else { c as f64 / total as f64 }).collect()
}

/// Depth-1 pyramid: root, then quadrants TL, TR, BL, BR.
fn naive_phog_depth1(f: &GradientField, bins: usize) -> Vec<f64> {
    let n = f.size;
    let mut hist = vec![0.0; 5 * bins];
    for r in 0..n {
        for c in 0..n {
            let p = r * n + c;
            if f.active[p] {
                let quadrant = 2 * (r >= n / 2) as usize + (c >= n / 2) as usize;
                hist[f.hog_bin[p] as usize] += f.magnitude[p];
                hist[(1 + quadrant) * bins + f.hog_bin[p] as usize] += f.magnitude[p];
            }
        }
    }
    let mut total = 0.0;
    for v in &hist {
        total += v;
    }
    if total > 0.0 {
        for v in &mut hist {
            *v /= total;
        }
    }
    hist
}

fn naive_ranking(db: &FeatureDb, q: &[f32], k: usize) -> Vec<(String, f64)> {
    let mut all: Vec<(String, f64)> = db
        .iter()
        .map(|(id, v)| {
            let mut acc = 0.0f64;
            for j in 0..v.len() {
                let d = q[j] as f64 - v[j] as f64;
                acc += d * d;
            }
            (id.to_string(), acc.sqrt())
        })
        .collect();
    all.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap().then(a.0.cmp(&b.0)));
    all.truncate(k);
    all
}

#[test]
fn c06_oracle_equivalence() {
    let mut rng = StdRng::seed_from_u64(6);
    let params = DescriptorParams { pyramid_depth: 1, ..Default::default() };
    let (mut bad_c, mut bad_p, mut bad_q) = (0, 0, 0);
    for _ in 0..200 {
        let grid = DistanceGrid::from_fn(8, |_, _| if rng.random_bool(0.2) { 1.0 } else { rng.random_range(0.0..6.0) });
        let field = gradient_field(&grid, &params);
        if comograd(&field, &params).values != naive_comograd(&field, 16) {
            bad_c += 1;
        }
        if phog(&field, &params).unwrap().values != naive_phog_depth1(&field, 9) {
            bad_p += 1;
        }

        let mut db = FeatureDb::new(DescriptorKind::CoMOGrad, DescriptorParams::default());
        for i in 0..rng.random_range(1..60) {
            let v: Vec<f32> = (0..256).map(|_| rng.random_range(0..3) as f32).collect();
            db.push(format!("e{i:03}"), &v).unwrap();
        }
        let q: Vec<f32> = (0..256).map(|_| rng.random_range(0..3) as f32).collect();
        let k = rng.random_range(1..70);
        let got: Vec<(String, f64)> = query_vector(&db, &q, k).unwrap().into_iter().map(|h| (h.id, h.distance)).collect();
        if got != naive_ranking(&db, &q, k) {
            bad_q += 1;
        }
    }
    report(
        6,
        "oracle equivalence",
        bad_c + bad_p + bad_q == 0,
        &format!("mismatches over 200 instances: comograd {bad_c}, phog {bad_p}, query {bad_q}"),
    );
}

#[test]
fn c07_self_retrieval() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("corpus");
    fs::create_dir(&input).unwrap();
    let files = common::write_corpus(&input, 100, 7);
    let db_path = dir.path().join("corpus.cmgf");
    let summary = cmd_index(&input, &db_path, DescriptorKind::Combined).unwrap();
    let mut failures = Vec::new();
    for (i, f) in files.iter().enumerate() {
        let hits = cmd_query(&db_path, f, 1, None, None).unwrap();
        let expected = format!("s{i:03}");
        if hits[0].id != expected || hits[0].distance != 0.0 || hits[0].rank != 1 {
            failures.push(format!("{expected} → {:?}", hits[0]));
        }
    }
    report(
        7,
        "self-retrieval",
        summary.indexed == 100 && failures.is_empty(),
        &format!("{} indexed, {} of 100 queries not at rank 1 with distance 0 {failures:?}", summary.indexed, failures.len()),
    );
}

struct DeskEval {
    curves: Vec<comograd_core::evalkit::MatchCurve>,
    baseline: f64,
}

fn desk_scale_eval(kind: DescriptorKind) -> DeskEval {
    let mut rng = StdRng::seed_from_u64(10);
    let corpus = labelled_corpus(&mut rng, 5, 10, &Variation::default());
    let ex = Extractor::default();
    let mut db = FeatureDb::new(kind, ex.params);
    for entry in &corpus {
        db.push(entry.trace.id.clone(), &ex.extract(&entry.trace, kind).unwrap().to_f32()).unwrap();
    }
    let labels = label_map(corpus.iter().map(|e| (e.trace.id.clone(), e.sccs.clone())));
    let queries: Vec<String> = corpus.iter().map(|e| e.trace.id.clone()).collect();
    let k_values: Vec<usize> = std::iter::once(1).chain((5..=45).step_by(5)).collect();
    let curves = evaluate(&db, &queries, &labels, &k_values).unwrap();
    // a random ranking finds 9 same-family entries among the other 49
    DeskEval { curves, baseline: 9.0 / 49.0 * 100.0 }
}

#[test]
fn c08_hierarchy_monotonicity() {
    let mut violations = 0;
    let mut checked = 0;
    for kind in [DescriptorKind::CoMOGrad, DescriptorKind::Phog, DescriptorKind::Combined] {
        let curves = desk_scale_eval(kind).curves;
        let at = |level: Level, i: usize| curves.iter().find(|c| c.level == level).unwrap().points[i].1;
        for i in 0..curves[0].points.len() {
            checked += 1;
            let ok = at(Level::Family, i) <= at(Level::Superfamily, i)
                && at(Level::Superfamily, i) <= at(Level::Fold, i)
                && at(Level::Fold, i) <= at(Level::Class, i);
            violations += usize::from(!ok);
        }
    }
    report(8, "hierarchy monotonicity", violations == 0, &format!("{violations} violations over {checked} (kind, k) points"));
}

fn time_scan(db: &FeatureDb, queries: &[Vec<f32>]) -> f64 {
    let mut best = f64::INFINITY;
    for _ in 0..5 {
        let start = Instant::now();
        let mut acc = 0.0;
        for q in queries {
            for (_, v) in db.iter() {
                acc += l2_distance(black_box(q), black_box(v));
            }
        }
        black_box(acc);
        best = best.min(start.elapsed().as_secs_f64());
    }
    best / (queries.len() * db.len()) as f64
}

#[test]
fn c09_relative_comparison_cost() {
    let mut rng = StdRng::seed_from_u64(9);
    let entries = 5_000;
    let query_count = 25;
    let mut per_comparison = Vec::new();
    for kind in [DescriptorKind::CoMOGrad, DescriptorKind::Combined] {
        let mut db = FeatureDb::new(kind, DescriptorParams::default());
        let len = db.vector_len();
        for i in 0..entries {
            let v: Vec<f32> = (0..len).map(|_| rng.random::<f32>() / len as f32).collect();
            db.push(format!("e{i}"), &v).unwrap();
        }
        let queries: Vec<Vec<f32>> = (0..query_count).map(|_| (0..len).map(|_| rng.random::<f32>() / len as f32).collect()).collect();
        per_comparison.push(time_scan(&db, &queries));
    }
    assert!(entries * query_count >= MIN_COMPARISONS);
    let ratio = per_comparison[0] / per_comparison[1];
    report(
        9,
        "relative comparison cost",
        (COST_RATIO_RANGE.0..=COST_RATIO_RANGE.1).contains(&ratio),
        &format!(
            "CoMOGrad {:.1} ns, Combined {:.1} ns per comparison over {} comparisons each, ratio {ratio:.3} (ideal {:.3})",
            per_comparison[0] * 1e9,
            per_comparison[1] * 1e9,
            entries * query_count,
            256.0 / 1021.0
        ),
    );
}

#[test]
fn c10_desk_scale_retrieval() {
    let DeskEval { curves, baseline } = desk_scale_eval(DescriptorKind::Combined);
    println!("{}", format_curves(&curves));
    let family = curves.iter().find(|c| c.level == Level::Family).unwrap();
    let top1 = family.points[0];
    assert_eq!(top1.0, 1);
    report(
        10,
        "desk-scale retrieval sanity",
        top1.1 > baseline,
        &format!("Combined leave-self-out top-1 family match {:.1} % vs random baseline {baseline:.1} % (5 families × 10)", top1.1),
    );
}
