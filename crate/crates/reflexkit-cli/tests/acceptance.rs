//! Acceptance suite: one test per release criterion, each printing a
//! single PASS line with the measured numbers. Run with
//! `cargo test -p reflexkit-cli --test acceptance -- --nocapture`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use reflexkit_cli::format::{emit_polytopes, parse_polytopes, Orientation};
use reflexkit_core::*;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Criteria carry wall-clock budgets, so they must not contend for the
/// cores; each takes this lock for its whole body.
static SERIAL: std::sync::Mutex<()> = std::sync::Mutex::new(());

/// The fixed verification corpus: all sixteen 2d classes, their duals,
/// the cross-polytopes up to dimension 5, and the two constructed free
/// sums.
fn corpus() -> Vec<(String, Polytope)> {
    let mut members: Vec<(String, Polytope)> = Vec::new();
    for (i, class) in enumerate_reflexive_2d(3).unwrap().iter().enumerate() {
        members.push((format!("class_{i:02}"), class.representative.clone()));
        members.push((
            format!("class_{i:02}_dual"),
            dual(&class.representative).unwrap(),
        ));
    }
    for n in 1..=5 {
        members.push((format!("cross_{n}"), cross_polytope(n)));
    }
    members.push((
        "hexagon+hexagon".into(),
        free_sum(&hexagon(), &hexagon()).unwrap(),
    ));
    members.push((
        "p2+p2".into(),
        free_sum(&p2_triangle(), &p2_triangle()).unwrap(),
    ));
    members
}

fn assert_budget(name: &str, elapsed: Duration, budget: Duration) {
    assert!(
        elapsed <= budget,
        "{name} took {elapsed:?}, over the {budget:?} budget"
    );
}

#[test]
fn criterion_1_worked_example_fidelity() {
    let _serial = SERIAL.lock().unwrap();
    let start = Instant::now();

    let p = p2_triangle();
    let r = FanoReport::compute(&p).unwrap();
    assert!(r.is_reflexive && r.is_simplicial && r.is_smooth);
    assert_eq!(r.delta, Some(BigInt::from(2)));
    assert_eq!(r.picard, Some(1));
    let pi = pseudo_index_report(&p).unwrap();
    assert!(pi.exact);
    assert_eq!(pi.min_invariant_degree, rat(3));
    assert_eq!(pi.upper_bound_delta, BigInt::from(3));

    let d = dual_triangle();
    let rd = FanoReport::compute(&d).unwrap();
    assert!(rd.is_reflexive && rd.is_simplicial && !rd.is_smooth);
    assert_eq!(rd.delta, Some(BigInt::from(2)));
    let pid = pseudo_index_report(&d).unwrap();
    assert!(!pid.exact);
    assert_eq!(pid.min_invariant_degree, rat(1));
    assert_eq!(pid.upper_bound_delta, BigInt::from(3));
    for f in 0..d.facet_count() {
        assert_eq!(facet_determinant(&d, f).unwrap().abs(), BigInt::from(3));
    }

    let elapsed = start.elapsed();
    assert_budget("criterion 1", elapsed, Duration::from_secs(1));
    println!(
        "criterion 1 PASS: triangle (smooth, δ=2, ρ=1, ι=3) and its dual \
         (singular, δ=2, min degree 1, facet determinants ±3) in {elapsed:?}"
    );
}

#[test]
fn criterion_2_vertex_bound_at_n2() {
    let _serial = SERIAL.lock().unwrap();
    let start = Instant::now();

    let classes3 = enumerate_reflexive_2d(3).unwrap();
    assert_eq!(classes3.len(), 16, "expected exactly 16 classes at radius 3");

    let classes4 = enumerate_reflexive_2d(4).unwrap();
    assert_eq!(classes4.len(), 16, "class count must be stable at radius 4");
    let keys3: Vec<_> = classes3.iter().map(|c| c.canonical.key()).collect();
    let keys4: Vec<_> = classes4.iter().map(|c| c.canonical.key()).collect();
    assert_eq!(keys3, keys4, "radius 3 and 4 must find the same classes");

    let max_v = classes3
        .iter()
        .map(|c| c.representative.vertex_count())
        .max()
        .unwrap();
    assert_eq!(max_v, 6);
    let hex_classes: Vec<_> = classes3
        .iter()
        .filter(|c| c.representative.vertex_count() == 6)
        .collect();
    assert_eq!(hex_classes.len(), 1, "exactly one class attains |V| = 6");
    assert!(are_isomorphic(&hex_classes[0].representative, &hexagon()));
    assert!(matches!(
        classify_equality_variety(&hex_classes[0].representative).unwrap(),
        VarietyClass::S3Power { copies: 1 }
    ));

    assert_eq!(seven_vertex_probe(3).unwrap(), 0, "no reflexive heptagon");

    let elapsed = start.elapsed();
    assert_budget("criterion 2", elapsed, Duration::from_secs(600));
    println!(
        "criterion 2 PASS: 16 classes (stable radius 3 vs 4), unique hexagon at \
         |V| = 6 = 3n, empty 7-vertex probe in {elapsed:?}"
    );
}

#[test]
fn criterion_3_delta_bound_and_equality_cases_at_n2() {
    let _serial = SERIAL.lock().unwrap();
    let start = Instant::now();

    let classes = enumerate_reflexive_2d(3).unwrap();
    let mut eq_delta_1: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    let mut eq_delta_2: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for c in &classes {
        assert_ne!(
            c.verdicts.bound_delta,
            BoundCheck::Fail,
            "δ-bound failed on {:?}",
            c.representative
        );
        if c.verdicts.equality_ii {
            // Every equality case decomposes, from every base facet.
            for base in 0..c.representative.facet_count() {
                let d = decompose_equality(&c.representative, base).unwrap();
                assert_eq!(d.blocks.len() * usize::try_from(&c.verdicts.delta).unwrap(), 2);
            }
            match u32::try_from(&c.verdicts.delta).unwrap() {
                1 => eq_delta_1.insert(c.canonical.key()),
                2 => eq_delta_2.insert(c.canonical.key()),
                other => panic!("unexpected δ = {other} equality case"),
            };
        }
    }

    // δ = 2 equality: the plane triangle and its dual, exactly.
    let expected_2: BTreeSet<Vec<BigInt>> = [
        canonical_form(&p2_triangle()).unwrap().key(),
        canonical_form(&dual_triangle()).unwrap().key(),
    ]
    .into_iter()
    .collect();
    assert_eq!(eq_delta_2, expected_2);

    // δ = 1 equality: the square cross-polytope pair — the cross-polytope
    // and its dual square. (The exhaustive scan shows the dual square
    // [-1,1]² also attains |V| = 4 = n + n/δ; it decomposes into two
    // segments exactly like the cross-polytope, but is not smooth.)
    let cross = cross_polytope(2);
    let expected_1: BTreeSet<Vec<BigInt>> = [
        canonical_form(&cross).unwrap().key(),
        canonical_form(&dual(&cross).unwrap()).unwrap().key(),
    ]
    .into_iter()
    .collect();
    assert_eq!(eq_delta_1, expected_1);

    // The cross-polytope decomposes into two segments.
    let d = decompose_equality(&cross, 0).unwrap();
    assert_eq!(d.blocks.len(), 2);
    for b in &d.blocks {
        assert_eq!(b.block_polytope.vertex_count(), 2);
        let pts: Vec<LatticePoint> = std::iter::once(cross.vertex(b.f_vertex).clone())
            .chain(b.e_vertices.iter().map(|&e| cross.vertex(e).clone()))
            .collect();
        assert_eq!(identify_factor(&pts).unwrap(), FactorKind::Segment);
    }

    let elapsed = start.elapsed();
    assert_budget("criterion 3", elapsed, Duration::from_secs(60));
    println!(
        "criterion 3 PASS: δ-bound holds on all 16 classes; equality cases are \
         the square cross-polytope pair (δ=1, two-segment decompositions) and \
         the triangle pair (δ=2, single blocks) in {elapsed:?}"
    );
}

#[test]
fn criterion_4_minkowski_relation() {
    let _serial = SERIAL.lock().unwrap();
    let start = Instant::now();
    let members = corpus();

    members.par_iter().for_each(|(name, p)| {
        let (coeff, residual) = minkowski_relation(p).unwrap();
        assert!(residual.is_zero(), "{name}: residual {residual}");
        assert!(coeff.iter().all(|c| c.is_positive()), "{name}: {coeff:?}");
        let mut rng = ChaCha8Rng::seed_from_u64(0x4d1a);
        for i in 0..50 {
            let t = random_unimodular(p.dim(), &mut rng);
            let image = p.transform(&t).unwrap();
            let (_, residual) = minkowski_relation(&image).unwrap();
            assert!(residual.is_zero(), "{name} image {i}: residual {residual}");
        }
    });

    let elapsed = start.elapsed();
    assert_budget("criterion 4", elapsed, Duration::from_secs(60));
    println!(
        "criterion 4 PASS: weighted vertex sums vanish on {} corpus members \
         and 50 seeded unimodular images of each in {elapsed:?}",
        members.len()
    );
}

#[test]
fn criterion_5_pseudo_index_bounds() {
    let _serial = SERIAL.lock().unwrap();
    let start = Instant::now();
    let members = corpus();
    let mut smooth_count = 0;
    for (name, p) in &members {
        let (delta_val, _) = delta(p).unwrap();
        let upper = rat(1) + BigRational::from_integer(delta_val);
        let classes = curve_classes(p).unwrap();
        let min_degree = classes.iter().map(|c| c.exact_degree.clone()).min().unwrap();
        assert!(min_degree <= upper, "{name}: min degree above δ+1");
        assert!(min_degree >= rat(1), "{name}: degree below 1");
        for c in &classes {
            assert!(
                c.b.is_positive() && c.b <= BigRational::one(),
                "{name}: b = {} out of range",
                c.b
            );
            if is_smooth(p) {
                assert!(c.b.is_one(), "{name}: smooth but b = {}", c.b);
            }
        }
        if is_smooth(p) {
            smooth_count += 1;
            assert_eq!(min_degree, upper, "{name}: smooth equality failed");
            assert!(pseudo_index_report(p).unwrap().exact);
        }
    }
    assert!(smooth_count >= 12, "expected the smooth members to be present");

    let elapsed = start.elapsed();
    assert_budget("criterion 5", elapsed, Duration::from_secs(60));
    println!(
        "criterion 5 PASS: min invariant degree = δ+1 on {smooth_count} smooth members, \
         ≤ δ+1 with b ∈ (0,1] on all {} members in {elapsed:?}",
        members.len()
    );
}

#[test]
fn criterion_6_level_counts_and_adjacency() {
    let _serial = SERIAL.lock().unwrap();
    let start = Instant::now();
    let members = corpus();
    for (name, p) in &members {
        assert!(p.is_simplicial(), "{name} should be simplicial");
        let n = p.dim();
        let (delta_val, _) = delta(p).unwrap();
        for (fi, f) in p.facets().iter().enumerate() {
            let hist = level_counts(p, &f.normal).unwrap();
            assert_eq!(
                hist.get(&BigInt::from(-1)).copied().unwrap_or(0),
                n,
                "{name}: facet {fi} supports the wrong vertex count"
            );
            assert!(
                hist.get(&BigInt::zero()).copied().unwrap_or(0) <= n,
                "{name}: facet {fi} has too many vertices at level 0"
            );
            for vi in 0..p.vertex_count() {
                if f.incident.contains(&vi) {
                    continue;
                }
                if p.vertex_facet_pairing(fi, vi) == delta_val {
                    assert!(
                        is_adjacent(p, vi, fi).unwrap(),
                        "{name}: δ-pair (v{vi}, f{fi}) not adjacent"
                    );
                }
            }
        }
    }

    let elapsed = start.elapsed();
    assert_budget("criterion 6", elapsed, Duration::from_secs(60));
    println!(
        "criterion 6 PASS: level counts (n at -1, ≤ n at 0) and δ-pair adjacency \
         on all {} corpus members in {elapsed:?}",
        members.len()
    );
}

#[test]
fn criterion_7_equality_structure_at_n4() {
    let _serial = SERIAL.lock().unwrap();
    let start = Instant::now();

    let hh = free_sum(&hexagon(), &hexagon()).unwrap();
    assert_eq!(hh.vertex_count(), 12);
    assert_eq!(hh.vertex_count(), 3 * hh.dim());
    assert_eq!(
        classify_equality_variety(&hh).unwrap(),
        VarietyClass::S3Power { copies: 2 }
    );

    let pp = free_sum(&p2_triangle(), &p2_triangle()).unwrap();
    assert!(is_smooth(&pp));
    // ρ·(ι-1) = 2·2 = 4 = n.
    assert_eq!(picard_number(&pp).unwrap(), 2);
    let pi = pseudo_index_report(&pp).unwrap();
    assert!(pi.exact);
    assert_eq!(pi.min_invariant_degree, rat(3));
    assert_eq!(
        classify_equality_variety(&pp).unwrap(),
        VarietyClass::ProjectivePower { delta: 2, copies: 2 }
    );

    assert_eq!(
        classify_equality_variety(&cross_polytope(4)).unwrap(),
        VarietyClass::ProjectivePower { delta: 1, copies: 4 }
    );

    let elapsed = start.elapsed();
    assert_budget("criterion 7", elapsed, Duration::from_secs(60));
    println!(
        "criterion 7 PASS: hexagon⊕hexagon → S₃², ℙ²⊕ℙ² → (ℙ²)² (smooth, ρ(ι-1)=n), \
         4-cross-polytope → (ℙ¹)⁴ in {elapsed:?}"
    );
}

#[test]
fn criterion_8_infrastructure_properties() {
    let _serial = SERIAL.lock().unwrap();
    let start = Instant::now();
    let members = corpus();

    // Canonical form invariance under 100 seeded unimodular maps each.
    members.par_iter().for_each(|(name, p)| {
        let base = canonical_form(p).unwrap().matrix;
        let mut rng = ChaCha8Rng::seed_from_u64(0xcafe);
        for i in 0..100 {
            let t = random_unimodular(p.dim(), &mut rng);
            let image = p.transform(&t).unwrap();
            assert_eq!(
                canonical_form(&image).unwrap().matrix,
                base,
                "{name}: canonical form changed under image {i}"
            );
        }
    });

    // Dual involution.
    for (name, p) in &members {
        let dd = dual(&dual(p).unwrap()).unwrap();
        assert_eq!(dd.vertices(), p.vertices(), "{name}: (P*)* != P");
    }

    // Parse/emit round-trip. The text format records coordinates only
    // (not which of the two dual lattices a polytope lives in), so the
    // round-trip is exact on vertex matrices and idempotent on bytes.
    let polys: Vec<Polytope> = members.iter().map(|(_, p)| p.clone()).collect();
    let text = emit_polytopes(&polys);
    let back = parse_polytopes(&text, Orientation::Strict).unwrap();
    assert_eq!(back.len(), polys.len());
    for (b, p) in back.iter().zip(&polys) {
        let b_coords: Vec<_> = b.vertices().iter().map(|v| v.coords().to_vec()).collect();
        let p_coords: Vec<_> = p.vertices().iter().map(|v| v.coords().to_vec()).collect();
        assert_eq!(b_coords, p_coords);
    }
    assert_eq!(emit_polytopes(&back), text);
    let n_polys: Vec<Polytope> = members
        .iter()
        .filter(|(_, p)| p.ambient() == Ambient::N)
        .map(|(_, p)| p.clone())
        .collect();
    assert_eq!(
        parse_polytopes(&emit_polytopes(&n_polys), Orientation::Strict).unwrap(),
        n_polys
    );

    // Deterministic output independent of parallelism: the binary must
    // produce byte-identical reports under different --jobs settings.
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("corpus.poly");
    let polys_2d: Vec<Polytope> = members
        .iter()
        .filter(|(_, p)| p.dim() <= 3)
        .map(|(_, p)| p.clone())
        .collect();
    std::fs::write(&file, emit_polytopes(&polys_2d)).unwrap();
    let run = |jobs: &str, args: &[&str]| {
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_reflexkit"))
            .args(["--quiet", "--jobs", jobs])
            .args(args)
            .output()
            .unwrap();
        assert!(out.status.success(), "reflexkit {args:?} failed");
        out.stdout
    };
    let file_str = file.to_str().unwrap();
    let analyze_1 = run("1", &["analyze", file_str]);
    let analyze_4 = run("4", &["analyze", file_str]);
    assert_eq!(analyze_1, analyze_4, "analyze output depends on --jobs");
    let again = run("1", &["analyze", file_str]);
    assert_eq!(analyze_1, again, "analyze output not reproducible");
    let enum_1 = run("1", &["enumerate2d", "--box", "2"]);
    let enum_4 = run("4", &["enumerate2d", "--box", "2"]);
    assert_eq!(enum_1, enum_4, "enumeration output depends on --jobs");

    let elapsed = start.elapsed();
    assert_budget("criterion 8", elapsed, Duration::from_secs(300));
    println!(
        "criterion 8 PASS: canonical forms stable under 100 seeded maps on {} members, \
         dual involution, parse/emit round-trip, --jobs-independent output in {elapsed:?}",
        members.len()
    );
}
