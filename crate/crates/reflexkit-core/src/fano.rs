//! Invariants of reflexive polytopes: the pairing minimum δ_P,
//! simpliciality and smoothness, Picard numbers, facet lattice volumes via
//! pulling triangulations, the Minkowski relation, facet adjacency and
//! pairing-level histograms.

use crate::error::{Error, Result};
use crate::exact::{
    coords_in_lattice_basis, determinant, lattice_pairing, saturation_basis, IntMatrix,
    LatticePoint,
};
use crate::polytope::Polytope;
use crate::reflexive::{dual, is_reflexive};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// The computed invariants of one polytope. Fields that only make sense
/// for reflexive or simplicial inputs are optional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanoReport {
    pub dim: usize,
    pub vertex_count: usize,
    pub is_reflexive: bool,
    pub is_simplicial: bool,
    pub is_smooth: bool,
    pub delta: Option<BigInt>,
    /// A `(vertex, facet)` pair achieving δ_P.
    pub delta_witness: Option<(usize, usize)>,
    pub picard: Option<usize>,
    pub volume_per_facet: Option<Vec<BigInt>>,
    pub minkowski_coefficients: Option<Vec<BigInt>>,
    pub minkowski_residual: Option<LatticePoint>,
}

impl FanoReport {
    pub fn compute(p: &Polytope) -> Result<FanoReport> {
        let reflexive = is_reflexive(p).map(|d| d.reflexive).unwrap_or(false);
        let simplicial = p.is_simplicial();
        let (delta_val, witness) = if reflexive {
            let (d, w) = delta(p)?;
            (Some(d), Some(w))
        } else {
            (None, None)
        };
        let (volumes, coefficients, residual) = if reflexive {
            let vols = (0..p.facet_count())
                .map(|f| facet_lattice_volume(p, f, PullRule::LowestIndex))
                .collect::<Result<Vec<_>>>()?;
            let (coeff, res) = minkowski_relation(p)?;
            (Some(vols), Some(coeff), Some(res))
        } else {
            (None, None, None)
        };
        Ok(FanoReport {
            dim: p.dim(),
            vertex_count: p.vertex_count(),
            is_reflexive: reflexive,
            is_simplicial: simplicial,
            is_smooth: is_smooth(p),
            delta: delta_val,
            delta_witness: witness,
            picard: simplicial.then(|| p.vertex_count() - p.dim()),
            volume_per_facet: volumes,
            minkowski_coefficients: coefficients,
            minkowski_residual: residual,
        })
    }
}

fn require_reflexive(p: &Polytope) -> Result<()> {
    let diag = is_reflexive(p)?;
    if !diag.reflexive {
        return Err(Error::NotReflexive {
            offending: diag.offending,
        });
    }
    Ok(())
}

/// `δ_P = min ⟨v, u⟩` over vertices `v` and dual vertices `u` with `v`
/// off the facet `F_u`. Returns the minimum and one `(vertex, facet)`
/// witness. Nonnegative for reflexive polytopes, since `⟨v, u⟩ = -1`
/// happens exactly on the facet.
pub fn delta(p: &Polytope) -> Result<(BigInt, (usize, usize))> {
    require_reflexive(p)?;
    let mut best: Option<(BigInt, (usize, usize))> = None;
    for (fi, f) in p.facets().iter().enumerate() {
        for vi in 0..p.vertex_count() {
            if f.incident.contains(&vi) {
                continue;
            }
            let val = p.vertex_facet_pairing(fi, vi);
            match &best {
                Some((b, _)) if *b <= val => {}
                _ => best = Some((val, (vi, fi))),
            }
        }
    }
    let (val, witness) = best.expect("a polytope has off-facet vertex pairs");
    debug_assert!(!val.is_negative());
    Ok((val, witness))
}

/// Signed determinant of the vertex matrix of a simplicial facet.
pub fn facet_determinant(p: &Polytope, facet: usize) -> Result<BigInt> {
    let f = &p.facets()[facet];
    if f.incident.len() != p.dim() {
        return Err(Error::NotSimplicial {
            facet,
            vertices: f.incident.len(),
        });
    }
    let pts: Vec<LatticePoint> = f.incident.iter().map(|&i| p.vertex(i).clone()).collect();
    determinant(&IntMatrix::from_point_rows(&pts))
}

/// A polytope is smooth when it is simplicial and the vertices of every
/// facet form a lattice basis (all facet determinants ±1).
pub fn is_smooth(p: &Polytope) -> bool {
    if !p.is_simplicial() {
        return false;
    }
    (0..p.facet_count()).all(|f| {
        facet_determinant(p, f)
            .map(|d| d.abs().is_one())
            .unwrap_or(false)
    })
}

/// Picard number of the associated variety: `|V(P)| - n` for simplicial `P`.
pub fn picard_number(p: &Polytope) -> Result<usize> {
    for (i, f) in p.facets().iter().enumerate() {
        if f.incident.len() != p.dim() {
            return Err(Error::NotSimplicial {
                facet: i,
                vertices: f.incident.len(),
            });
        }
    }
    Ok(p.vertex_count() - p.dim())
}

/// Which vertex a pulling triangulation is anchored at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PullRule {
    LowestIndex,
    HighestIndex,
}

/// Lattice volume of a facet of a reflexive polytope, normalized so that
/// a unimodular simplex has volume 1.
///
/// A simplicial facet with vertices `e₁,…,eₙ` contributes `|det(e₁,…,eₙ)|`;
/// a general facet is summed over a pulling triangulation. The facet sits
/// at lattice distance 1 from the origin, which is what makes the plain
/// determinant the right normalization.
pub fn facet_lattice_volume(p: &Polytope, facet: usize, rule: PullRule) -> Result<BigInt> {
    require_reflexive(p)?;
    let f = &p.facets()[facet];
    let n = p.dim();
    if f.incident.len() == n {
        return Ok(facet_determinant(p, facet)?.abs());
    }
    let labels: Vec<usize> = f.incident.clone();
    let pts: Vec<LatticePoint> = labels.iter().map(|&i| p.vertex(i).clone()).collect();
    let simplices = pull_triangulation(&pts, &labels, rule)?;
    let mut total = BigInt::zero();
    for simplex in simplices {
        debug_assert_eq!(simplex.len(), n);
        let rows: Vec<LatticePoint> = simplex.iter().map(|&i| p.vertex(i).clone()).collect();
        total += determinant(&IntMatrix::from_point_rows(&rows))?.abs();
    }
    Ok(total)
}

/// Pulling triangulation of `conv(pts)` inside its own affine span.
/// Returns simplices as sorted lists of the given labels; each simplex has
/// `affine_dim + 1` labels.
pub fn pull_triangulation(
    pts: &[LatticePoint],
    labels: &[usize],
    rule: PullRule,
) -> Result<Vec<Vec<usize>>> {
    assert_eq!(pts.len(), labels.len());
    if pts.len() == 1 {
        return Ok(vec![vec![labels[0]]]);
    }
    // Re-embed into the saturated lattice of the affine span, so the face
    // polytope becomes full-dimensional with integer coordinates.
    let base = &pts[0];
    let diffs: Vec<LatticePoint> = pts[1..].iter().map(|q| q.sub(base)).collect();
    let basis = saturation_basis(&IntMatrix::from_point_rows(&diffs));
    let d = basis.len();
    if d == 0 {
        // All points coincide; a single 0-simplex.
        return Ok(vec![vec![*labels.iter().min().unwrap()]]);
    }
    let embedded: Vec<LatticePoint> = pts
        .iter()
        .map(|q| {
            let coords = coords_in_lattice_basis(&basis, &q.sub(base))
                .expect("lattice points have integer coordinates in a saturated basis");
            LatticePoint::new(coords, q.ambient())
        })
        .collect();
    let hull = Polytope::hull(&embedded)?;

    // Map hull vertices back to labels.
    let vertex_labels: Vec<usize> = hull
        .vertices()
        .iter()
        .map(|v| {
            let at = embedded
                .iter()
                .position(|e| e == v)
                .expect("hull vertices come from the input");
            labels[at]
        })
        .collect();

    if hull.vertex_count() == d + 1 {
        let mut s = vertex_labels;
        s.sort_unstable();
        return Ok(vec![s]);
    }

    let anchor_pos = match rule {
        PullRule::LowestIndex => vertex_labels
            .iter()
            .enumerate()
            .min_by_key(|(_, &l)| l)
            .map(|(i, _)| i)
            .unwrap(),
        PullRule::HighestIndex => vertex_labels
            .iter()
            .enumerate()
            .max_by_key(|(_, &l)| l)
            .map(|(i, _)| i)
            .unwrap(),
    };
    let anchor_label = vertex_labels[anchor_pos];

    let mut simplices = Vec::new();
    for f in hull.facets() {
        if f.incident.contains(&anchor_pos) {
            continue;
        }
        let face_pts: Vec<LatticePoint> = f
            .incident
            .iter()
            .map(|&i| hull.vertex(i).clone())
            .collect();
        let face_labels: Vec<usize> = f.incident.iter().map(|&i| vertex_labels[i]).collect();
        for sub in pull_triangulation(&face_pts, &face_labels, rule)? {
            let mut s = sub;
            s.push(anchor_label);
            s.sort_unstable();
            simplices.push(s);
        }
    }
    simplices.sort();
    Ok(simplices)
}

/// The Minkowski relation of a reflexive polytope: with `c_v` the lattice
/// volume of the facet of the dual corresponding to the vertex `v`, the
/// weighted vertex sum `Σ c_v · v` vanishes. Returns the coefficients
/// (aligned with the vertex list) and the residual sum, which callers
/// assert to be zero. This doubles as a positive integer relation among
/// all vertices.
pub fn minkowski_relation(p: &Polytope) -> Result<(Vec<BigInt>, LatticePoint)> {
    require_reflexive(p)?;
    let d = dual(p)?;
    let mut coefficients = Vec::with_capacity(p.vertex_count());
    let mut residual = LatticePoint::zero(p.dim(), p.ambient());
    for v in p.vertices() {
        let fi = d
            .facets()
            .iter()
            .position(|f| &f.normal == v)
            .expect("vertices of P are the facet normals of its dual");
        let vol = facet_lattice_volume(&d, fi, PullRule::LowestIndex)?;
        residual = residual.add(&v.scale(&vol));
        coefficients.push(vol);
    }
    Ok((coefficients, residual))
}

/// Whether vertex `v` is adjacent to the simplicial facet `f`: some single
/// vertex swap of the facet through `v` is again a facet.
pub fn is_adjacent(p: &Polytope, vertex: usize, facet: usize) -> Result<bool> {
    for (i, f) in p.facets().iter().enumerate() {
        if f.incident.len() != p.dim() {
            return Err(Error::NotSimplicial {
                facet: i,
                vertices: f.incident.len(),
            });
        }
    }
    let f = &p.facets()[facet];
    if f.incident.contains(&vertex) {
        return Err(Error::VertexOnFacet { vertex, facet });
    }
    let all: BTreeSet<Vec<usize>> = p
        .facets()
        .iter()
        .map(|g| g.incident.clone())
        .collect();
    for &drop in &f.incident {
        let mut swapped: Vec<usize> = f
            .incident
            .iter()
            .copied()
            .filter(|&i| i != drop)
            .chain(std::iter::once(vertex))
            .collect();
        swapped.sort_unstable();
        if all.contains(&swapped) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Histogram of the pairings `⟨v, u⟩` over the vertices of `p`.
pub fn level_counts(p: &Polytope, u: &LatticePoint) -> Result<BTreeMap<BigInt, usize>> {
    let mut histogram = BTreeMap::new();
    for v in p.vertices() {
        let val = lattice_pairing(v, u)?;
        *histogram.entry(val).or_insert(0) += 1;
    }
    Ok(histogram)
}
