//! Exhaustive enumeration of 2-dimensional reflexive polytopes up to
//! lattice equivalence, and a corpus harness that runs every invariant
//! check over an arbitrary polytope collection.

use crate::classifier::{
    classify_equality_variety, verify_bounds, BoundCheck, BoundsVerdict, VarietyClass,
};
use crate::error::{Error, Result};
use crate::exact::{lattice_pairing, random_unimodular, Ambient, LatticePoint};
use crate::fano::{delta, is_adjacent, is_smooth, level_counts, minkowski_relation, FanoReport};
use crate::mori::{curve_classes, pseudo_index_report};
use crate::polytope::Polytope;
use crate::reflexive::{canonical_form, dual, is_reflexive, CanonicalForm};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// One lattice-equivalence class found by the enumerator.
#[derive(Debug, Clone)]
pub struct PolytopeClass {
    pub canonical: CanonicalForm,
    pub representative: Polytope,
    pub provenance: String,
    pub report: FanoReport,
    pub verdicts: BoundsVerdict,
}

/// Scans all vertex subsets of size `sizes` from the lattice points in
/// `[-r, r]²`, keeping those in convex position with the origin strictly
/// interior that form a reflexive polygon. Survivors come back as
/// counterclockwise vertex lists.
///
/// Points with a non-trivial coordinate gcd are skipped up front: a
/// vertex of a reflexive polytope pairs to -1 against an integral facet
/// normal, which forces it to be primitive, and an interior or
/// edge-interior point already fails convex position.
fn scan_polygons(box_radius: i64, min_size: usize, max_size: usize) -> Vec<Vec<LatticePoint>> {
    let mut pts: Vec<(BigInt, BigInt)> = Vec::new();
    for x in -box_radius..=box_radius {
        for y in -box_radius..=box_radius {
            if (x, y) == (0, 0) || x.gcd(&y) != 1 {
                continue;
            }
            pts.push((BigInt::from(x), BigInt::from(y)));
        }
    }
    // Counterclockwise angular order starting from the positive x-axis.
    // Primitive points have pairwise distinct directions, so the cross
    // product is a total order within each half-plane.
    let half = |p: &(BigInt, BigInt)| -> u8 {
        if p.1.is_positive() || (p.1.is_zero() && p.0.is_positive()) {
            0
        } else {
            1
        }
    };
    let cross =
        |a: &(BigInt, BigInt), b: &(BigInt, BigInt)| -> BigInt { &a.0 * &b.1 - &a.1 * &b.0 };
    pts.sort_by(|a, b| {
        half(a)
            .cmp(&half(b))
            .then_with(|| BigInt::zero().cmp(&cross(a, b)))
    });

    let m = pts.len();
    // edge_ok[i][j]: (p_i, p_j) can be a counterclockwise boundary edge of
    // a reflexive polygon: positive origin cross and lattice distance 1,
    // i.e. cross(p_i, p_j) = gcd(p_j - p_i).
    let edge_ok: Vec<Vec<bool>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if i == j {
                        return false;
                    }
                    let c = cross(&pts[i], &pts[j]);
                    if !c.is_positive() {
                        return false;
                    }
                    let dx = &pts[j].0 - &pts[i].0;
                    let dy = &pts[j].1 - &pts[i].1;
                    c == dx.gcd(&dy)
                })
                .collect()
        })
        .collect();
    let turns_left = |a: usize, b: usize, c: usize| -> bool {
        let ux = &pts[b].0 - &pts[a].0;
        let uy = &pts[b].1 - &pts[a].1;
        let vx = &pts[c].0 - &pts[b].0;
        let vy = &pts[c].1 - &pts[b].1;
        (&ux * &vy - &uy * &vx).is_positive()
    };

    // Depth-first scan over index-increasing chains; the subset space is
    // partitioned by smallest point index, one cell per start index.
    let cells: Vec<Vec<Vec<usize>>> = (0..m)
        .into_par_iter()
        .map(|start| {
            let mut survivors = Vec::new();
            let mut path = vec![start];
            dfs(
                start,
                &mut path,
                &edge_ok,
                &turns_left,
                min_size,
                max_size,
                m,
                &mut survivors,
            );
            survivors
        })
        .collect();

    cells
        .into_iter()
        .flatten()
        .map(|subset| {
            subset
                .into_iter()
                .map(|i| {
                    LatticePoint::new(vec![pts[i].0.clone(), pts[i].1.clone()], Ambient::N)
                })
                .collect()
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    start: usize,
    path: &mut Vec<usize>,
    edge_ok: &[Vec<bool>],
    turns_left: &dyn Fn(usize, usize, usize) -> bool,
    min_size: usize,
    max_size: usize,
    m: usize,
    survivors: &mut Vec<Vec<usize>>,
) {
    let last = *path.last().unwrap();
    if path.len() >= min_size
        && edge_ok[last][start]
        && turns_left(path[path.len() - 2], last, start)
        && turns_left(last, start, path[1])
    {
        survivors.push(path.clone());
    }
    if path.len() == max_size {
        return;
    }
    for next in last + 1..m {
        if !edge_ok[last][next] {
            continue;
        }
        if path.len() >= 2 && !turns_left(path[path.len() - 2], last, next) {
            continue;
        }
        path.push(next);
        dfs(start, path, edge_ok, turns_left, min_size, max_size, m, survivors);
        path.pop();
    }
}

/// Enumerates all reflexive polygons with vertices in `[-r, r]²` up to
/// lattice equivalence, deduplicated by canonical form and sorted by it.
/// The vertex-count cap of 6 is cross-checked separately by
/// [`seven_vertex_probe`].
pub fn enumerate_reflexive_2d(box_radius: i64) -> Result<Vec<PolytopeClass>> {
    if box_radius < 2 {
        return Err(Error::InvalidInput(format!(
            "box radius must be at least 2, got {box_radius}"
        )));
    }
    let survivors = scan_polygons(box_radius, 3, 6);
    let mut classes: BTreeMap<Vec<BigInt>, PolytopeClass> = BTreeMap::new();
    for verts in survivors {
        let p = Polytope::hull(&verts)?;
        debug_assert_eq!(p.vertex_count(), verts.len());
        let cf = canonical_form(&p)?;
        let key = cf.key();
        if classes.contains_key(&key) {
            continue;
        }
        let representative = Polytope::hull(
            &(0..cf.matrix.cols())
                .map(|j| LatticePoint::new(cf.matrix.column(j), Ambient::N))
                .collect::<Vec<_>>(),
        )?;
        debug_assert_eq!(canonical_form(&representative)?.matrix, cf.matrix);
        let report = FanoReport::compute(&representative)?;
        let verdicts = verify_bounds(&representative)?;
        let provenance = format!(
            "box scan r={box_radius}, first found at {}",
            verts
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        );
        classes.insert(
            key,
            PolytopeClass {
                canonical: cf,
                representative,
                provenance,
                report,
                verdicts,
            },
        );
    }
    Ok(classes.into_values().collect())
}

/// Falsification probe for the subset-size cap: scans all size-7 subsets
/// of the box and returns how many pass the same three filters. Zero
/// means no reflexive heptagon exists with vertices in the box, so
/// capping the main scan at 6 vertices loses nothing.
pub fn seven_vertex_probe(box_radius: i64) -> Result<usize> {
    if box_radius < 2 {
        return Err(Error::InvalidInput(format!(
            "box radius must be at least 2, got {box_radius}"
        )));
    }
    Ok(scan_polygons(box_radius, 7, 7).len())
}

/// A single failed check, with enough context to reproduce it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub polytope: usize,
    pub check: String,
    pub witness: String,
}

/// Which bound held with equality, and what the equality case turned out
/// to be.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualityCase {
    pub polytope: usize,
    pub vertex_bound_equality: bool,
    pub delta_bound_equality: bool,
    pub classification: VarietyClass,
}

/// Aggregate result of a corpus verification run.
#[derive(Debug, Clone)]
pub struct CorpusSummary {
    pub total: usize,
    /// Inputs skipped because they are not simplicial reflexive, with the
    /// reason; no checks run for these.
    pub filtered_out: Vec<(usize, String)>,
    /// Number of distinct canonical forms among the checked polytopes.
    pub class_count: usize,
    /// Histogram over (vertex count, δ, Picard number, minimal invariant
    /// curve degree).
    pub histogram: BTreeMap<(usize, BigInt, usize, BigRational), usize>,
    pub violations: Vec<Violation>,
    pub equality_inventory: Vec<EqualityCase>,
}

impl CorpusSummary {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Options for [`verify_corpus`]: how many seeded unimodular images of
/// each polytope to re-check, and the seed that generates them.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub seed: u64,
    pub transforms: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            transforms: 2,
        }
    }
}

/// Runs every invariant check over a polytope collection. Violations are
/// collected as data, never raised; the summary is deterministic in the
/// input order.
type CheckOutcome = (Vec<(usize, String)>, Vec<Violation>, Option<PerPolytope>);

pub fn verify_corpus(polytopes: &[Polytope], opts: &VerifyOptions) -> CorpusSummary {
    let results: Vec<CheckOutcome> = polytopes
        .par_iter()
        .enumerate()
        .map(|(idx, p)| check_one(idx, p, opts))
        .collect();

    let mut filtered_out = Vec::new();
    let mut violations = Vec::new();
    let mut histogram: BTreeMap<(usize, BigInt, usize, BigRational), usize> = BTreeMap::new();
    let mut equality_inventory = Vec::new();
    let mut keys: Vec<Vec<BigInt>> = Vec::new();
    for (skips, viols, per) in results {
        filtered_out.extend(skips);
        violations.extend(viols);
        if let Some(per) = per {
            *histogram.entry(per.histogram_key).or_insert(0) += 1;
            keys.push(per.canonical_key);
            if let Some(case) = per.equality {
                equality_inventory.push(case);
            }
        }
    }
    keys.sort();
    keys.dedup();
    CorpusSummary {
        total: polytopes.len(),
        filtered_out,
        class_count: keys.len(),
        histogram,
        violations,
        equality_inventory,
    }
}

struct PerPolytope {
    histogram_key: (usize, BigInt, usize, BigRational),
    canonical_key: Vec<BigInt>,
    equality: Option<EqualityCase>,
}

fn check_one(idx: usize, p: &Polytope, opts: &VerifyOptions) -> CheckOutcome {
    let mut filtered = Vec::new();
    let mut violations: Vec<Violation> = Vec::new();
    let mut fail = |check: &str, witness: String| {
        violations.push(Violation {
            polytope: idx,
            check: check.to_string(),
            witness,
        });
    };

    match is_reflexive(p) {
        Ok(diag) if diag.reflexive => {}
        Ok(_) => {
            filtered.push((idx, "not reflexive".to_string()));
            return (filtered, violations, None);
        }
        Err(e) => {
            filtered.push((idx, format!("origin check failed: {e}")));
            return (filtered, violations, None);
        }
    }
    if !p.is_simplicial() {
        filtered.push((idx, "not simplicial".to_string()));
        return (filtered, violations, None);
    }

    let n = p.dim();
    let (delta_val, _) = delta(p).expect("reflexive");
    let smooth = is_smooth(p);

    // Vertex-count bounds.
    let verdicts = verify_bounds(p).expect("simplicial reflexive");
    if verdicts.bound_3n == BoundCheck::Fail {
        fail("bound_3n", format!("|V| = {} > 3n = {}", p.vertex_count(), 3 * n));
    }
    if verdicts.bound_delta == BoundCheck::Fail {
        fail(
            "bound_delta",
            format!("|V| = {}, n = {n}, δ = {delta_val}", p.vertex_count()),
        );
    }

    // Level counts: each dual vertex sees exactly n vertices at -1 and at
    // most n at 0.
    for f in p.facets() {
        let hist = level_counts(p, &f.normal).expect("dual pair");
        let at_minus_one = hist.get(&BigInt::from(-1)).copied().unwrap_or(0);
        let at_zero = hist.get(&BigInt::zero()).copied().unwrap_or(0);
        if at_minus_one != n {
            fail(
                "level_count_minus_one",
                format!("u = {}: {} vertices at -1, expected {n}", f.normal, at_minus_one),
            );
        }
        if at_zero > n {
            fail(
                "level_count_zero",
                format!("u = {}: {} vertices at 0 > n = {n}", f.normal, at_zero),
            );
        }
    }

    // Every δ-achieving off-facet pair is adjacent.
    for (fi, f) in p.facets().iter().enumerate() {
        for vi in 0..p.vertex_count() {
            if f.incident.contains(&vi) {
                continue;
            }
            if p.vertex_facet_pairing(fi, vi) == delta_val {
                match is_adjacent(p, vi, fi) {
                    Ok(true) => {}
                    Ok(false) => fail(
                        "delta_pair_adjacent",
                        format!("vertex {vi} achieves δ on facet {fi} but is not adjacent"),
                    ),
                    Err(e) => fail("delta_pair_adjacent", e.to_string()),
                }
            }
        }
    }

    // Minkowski relation: positive coefficients, zero residual.
    match minkowski_relation(p) {
        Ok((coeff, residual)) => {
            if !residual.is_zero() {
                fail("minkowski_residual", residual.to_string());
            }
            if coeff.iter().any(|c| !c.is_positive()) {
                fail("minkowski_coefficients", format!("{coeff:?}"));
            }
        }
        Err(e) => fail("minkowski_residual", e.to_string()),
    }

    // Wall relations and curve degrees.
    let mut min_degree: Option<BigRational> = None;
    match curve_classes(p) {
        Ok(classes) => {
            for c in &classes {
                if !c.gamma.residual(p).iter().all(Zero::is_zero) {
                    fail("wall_relation_residual", format!("wall {:?}", c.wall));
                }
                if !c.b.is_positive() || c.b > BigRational::one() {
                    fail("wall_b_range", format!("b = {} on wall {:?}", c.b, c.wall));
                }
                if smooth && !c.b.is_one() {
                    fail("wall_b_smooth", format!("b = {} on smooth polytope", c.b));
                }
                if !c.exact_degree.is_integer()
                    || c.exact_degree < BigRational::one()
                {
                    fail(
                        "curve_degree_integral",
                        format!("degree {} on wall {:?}", c.exact_degree, c.wall),
                    );
                }
                min_degree = Some(match min_degree.take() {
                    None => c.exact_degree.clone(),
                    Some(d) => d.min(c.exact_degree.clone()),
                });
            }
        }
        Err(e) => fail("curve_classes", e.to_string()),
    }
    let min_degree = min_degree.unwrap_or_else(BigRational::zero);
    let delta_plus_one = BigRational::from_integer(&delta_val + 1);
    if min_degree > delta_plus_one {
        fail(
            "pseudo_index_bound",
            format!("min degree {min_degree} > δ+1 = {delta_plus_one}"),
        );
    }
    if smooth && min_degree != delta_plus_one {
        fail(
            "pseudo_index_smooth_equality",
            format!("min degree {min_degree} != δ+1 = {delta_plus_one}"),
        );
    }
    if pseudo_index_report(p).is_err() {
        fail("pseudo_index_report", "report construction failed".into());
    }

    // Duality involution.
    match dual(p) {
        Ok(d) => match dual(&d) {
            Ok(dd) => {
                if dd.vertices() != p.vertices() {
                    fail("dual_involution", "(P*)* differs from P".into());
                }
            }
            Err(e) => fail("dual_involution", e.to_string()),
        },
        Err(e) => fail("dual", e.to_string()),
    }

    // Equality cases.
    let mut equality = None;
    if verdicts.equality_i || verdicts.equality_ii {
        let classification = match classify_equality_variety(p) {
            Ok(c) => c,
            Err(e) => {
                fail("classify_equality", e.to_string());
                VarietyClass::Other
            }
        };
        if verdicts.equality_i {
            // Forced structure: pairings in {-1, 0, 1} and central symmetry
            // of both P and its dual.
            for fi in 0..p.facet_count() {
                for vi in 0..p.vertex_count() {
                    let val = p.vertex_facet_pairing(fi, vi);
                    if val.abs() > BigInt::one() {
                        fail(
                            "equality_i_pairing_range",
                            format!("⟨v_{vi}, u_{fi}⟩ = {val}"),
                        );
                    }
                }
            }
            let sym = |poly: &Polytope| {
                poly.vertices()
                    .iter()
                    .all(|v| poly.vertices().binary_search(&v.neg()).is_ok())
            };
            if !sym(p) || !dual(p).map(|d| sym(&d)).unwrap_or(false) {
                fail("equality_i_central_symmetry", "vertex set not closed under negation".into());
            }
            if !matches!(classification, VarietyClass::S3Power { .. }) {
                fail(
                    "equality_i_classification",
                    format!("classified {classification:?}"),
                );
            }
        }
        if verdicts.equality_ii {
            match crate::classifier::decompose_equality(p, 0) {
                Ok(_) => {}
                Err(e) => fail("equality_ii_decomposition", e.to_string()),
            }
            let is_proj = matches!(classification, VarietyClass::ProjectivePower { .. });
            if is_proj != smooth {
                fail(
                    "equality_ii_smooth_iff_projective",
                    format!("smooth = {smooth}, classified {classification:?}"),
                );
            }
        }
        equality = Some(EqualityCase {
            polytope: idx,
            vertex_bound_equality: verdicts.equality_i,
            delta_bound_equality: verdicts.equality_ii,
            classification,
        });
    }

    // Seeded unimodular images: δ, canonical form and the Minkowski
    // residual must be invariant.
    let canonical_key = match canonical_form(p) {
        Ok(cf) => cf.key(),
        Err(e) => {
            fail("canonical_form", e.to_string());
            Vec::new()
        }
    };
    if opts.transforms > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (idx as u64).wrapping_mul(0x9e3779b9));
        for t in 0..opts.transforms {
            let map = random_unimodular(n, &mut rng);
            let image = match p.transform(&map) {
                Ok(q) => q,
                Err(e) => {
                    fail("transform", e.to_string());
                    continue;
                }
            };
            if delta(&image).map(|(d, _)| d) != Ok(delta_val.clone()) {
                fail("transform_delta", format!("image {t} changed δ"));
            }
            match minkowski_relation(&image) {
                Ok((_, residual)) if residual.is_zero() => {}
                other => fail(
                    "transform_minkowski",
                    format!("image {t}: {other:?}"),
                ),
            }
            match canonical_form(&image) {
                Ok(cf) if cf.key() == canonical_key => {}
                _ => fail("transform_canonical", format!("image {t} changed canonical form")),
            }
        }
    }

    let per = PerPolytope {
        histogram_key: (
            p.vertex_count(),
            delta_val,
            p.vertex_count() - n,
            min_degree,
        ),
        canonical_key,
        equality,
    };
    (filtered, violations, Some(per))
}

/// Sanity for the pairing table used throughout: entries are at least -1
/// on reflexive polytopes.
pub fn pairing_table_floor(p: &Polytope) -> Result<BigInt> {
    let mut min = BigInt::zero();
    for f in p.facets() {
        for v in p.vertices() {
            min = min.min(lattice_pairing(v, &f.normal)?);
        }
    }
    Ok(min)
}
