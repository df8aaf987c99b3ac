//! Per-polytope verification of the vertex-count bounds, extraction of the
//! equality-case decomposition, free-sum factorization, and recognition of
//! hexagon powers and projective-space powers.

use crate::error::{Error, Result};
use crate::exact::{
    coords_in_lattice_basis, dual_basis, rank, saturation_basis, IntMatrix,
    LatticePoint,
};
use crate::fano::{delta, is_smooth};
use crate::polytope::Polytope;
use crate::reflexive::{canonical_form, is_reflexive};
use crate::standard::{hexagon, projective_simplex};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundCheck {
    Pass,
    Fail,
    NotApplicable,
}

/// Verdicts for the two vertex-count bounds on a simplicial reflexive
/// polytope: `|V| ≤ 3n` always, and `|V| ≤ n + n/δ` when δ > 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsVerdict {
    pub bound_3n: BoundCheck,
    pub bound_delta: BoundCheck,
    pub equality_i: bool,
    pub equality_ii: bool,
    pub delta: BigInt,
}

pub fn verify_bounds(p: &Polytope) -> Result<BoundsVerdict> {
    require_simplicial_reflexive(p)?;
    let n = BigInt::from(p.dim());
    let v = BigInt::from(p.vertex_count());
    let (d, _) = delta(p)?;
    let bound_3n = if v <= 3 * &n {
        BoundCheck::Pass
    } else {
        BoundCheck::Fail
    };
    let equality_i = v == 3 * &n;
    let (bound_delta, equality_ii) = if d.is_zero() {
        (BoundCheck::NotApplicable, false)
    } else {
        // |V| ≤ n + n/δ compared without division: δ|V| ≤ δn + n.
        let lhs = &d * &v;
        let rhs = &d * &n + &n;
        (
            if lhs <= rhs { BoundCheck::Pass } else { BoundCheck::Fail },
            lhs == rhs,
        )
    };
    Ok(BoundsVerdict {
        bound_3n,
        bound_delta,
        equality_i,
        equality_ii,
        delta: d,
    })
}

fn require_simplicial_reflexive(p: &Polytope) -> Result<()> {
    for (i, f) in p.facets().iter().enumerate() {
        if f.incident.len() != p.dim() {
            return Err(Error::NotSimplicial {
                facet: i,
                vertices: f.incident.len(),
            });
        }
    }
    let diag = is_reflexive(p)?;
    if !diag.reflexive {
        return Err(Error::NotReflexive {
            offending: diag.offending,
        });
    }
    Ok(())
}

/// One block `Q_j = Conv(f_j, {e_k : φ(k) = j})` of an equality-case
/// decomposition, together with the saturated lattice of its span and the
/// block polytope expressed in that lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionBlock {
    pub f_vertex: usize,
    pub e_vertices: Vec<usize>,
    pub span_basis: Vec<LatticePoint>,
    pub block_polytope: Polytope,
}

/// The structure forced by equality in the δ-bound: a base facet with
/// vertices `e₁,…,eₙ`, the remaining vertices `f₁,…,f_r`, the map φ
/// matching each dropped ridge to its partner vertex, and the r blocks
/// whose spans decompose the ambient space as a direct sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub base_facet: usize,
    pub basis_vertices: Vec<usize>,
    pub remaining_vertices: Vec<usize>,
    /// `phi[k] = j` with `f_j` the partner vertex of the ridge dropping `e_k`.
    pub phi: Vec<usize>,
    pub blocks: Vec<DecompositionBlock>,
}

/// Extracts the equality-case decomposition with respect to the given
/// base facet. Fails with `EqualityHypothesisFails` if `δ = 0` or
/// `|V| ≠ n + n/δ`; any failure after that point is reported as a
/// theorem violation, i.e. a bug.
pub fn decompose_equality(p: &Polytope, base_facet: usize) -> Result<Decomposition> {
    require_simplicial_reflexive(p)?;
    if base_facet >= p.facet_count() {
        return Err(Error::InvalidInput(format!("no facet {base_facet}")));
    }
    let n = p.dim();
    let (d, _) = delta(p)?;
    if d.is_zero() {
        return Err(Error::EqualityHypothesisFails("δ = 0".into()));
    }
    let dn = BigInt::from(n);
    if &d * BigInt::from(p.vertex_count()) != &d * &dn + &dn {
        return Err(Error::EqualityHypothesisFails(format!(
            "|V| = {} but n + n/δ requires δ|V| = δn + n with n = {n}, δ = {d}",
            p.vertex_count()
        )));
    }
    let delta_usize = d.to_usize().expect("δ fits in a machine word at desk scale");
    let r = n / delta_usize;

    let basis_vertices: Vec<usize> = p.facets()[base_facet].incident.clone();
    let remaining_vertices: Vec<usize> = (0..p.vertex_count())
        .filter(|v| !basis_vertices.contains(v))
        .collect();
    if remaining_vertices.len() != r {
        return Err(Error::TheoremViolation(format!(
            "{} off-facet vertices, expected r = {r}",
            remaining_vertices.len()
        )));
    }

    // φ(k): the unique partner facet across the ridge dropping e_k
    // acquires exactly one new vertex, which must be one of the f_j.
    let violation = |msg: String| Error::TheoremViolation(msg);
    let mut phi = Vec::with_capacity(n);
    for &ek in &basis_vertices {
        let ridge: Vec<usize> = basis_vertices
            .iter()
            .copied()
            .filter(|&v| v != ek)
            .collect();
        let partners: Vec<usize> = p
            .facets()
            .iter()
            .enumerate()
            .filter(|(fi, f)| {
                *fi != base_facet && ridge.iter().all(|v| f.incident.contains(v))
            })
            .map(|(fi, _)| fi)
            .collect();
        if partners.len() != 1 {
            return Err(violation(format!(
                "ridge off vertex {ek} lies on {} facets besides the base",
                partners.len()
            )));
        }
        let extra: Vec<usize> = p.facets()[partners[0]]
            .incident
            .iter()
            .copied()
            .filter(|v| !ridge.contains(v))
            .collect();
        let j = remaining_vertices
            .iter()
            .position(|&f| extra == [f])
            .ok_or_else(|| {
                violation(format!(
                    "partner facet across vertex {ek} does not pick up an off-facet vertex"
                ))
            })?;
        phi.push(j);

        // Cross-check the partner normal: u_k = u + (δ+1)·e_k*.
        let basis_points: Vec<_> = basis_vertices
            .iter()
            .map(|&i| p.vertex(i).to_rational())
            .collect();
        let duals = dual_basis(&basis_points)?;
        let k_pos = basis_vertices.iter().position(|&v| v == ek).unwrap();
        let u = p.facets()[base_facet].normal.to_rational();
        let expected: Vec<_> = (0..n)
            .map(|c| {
                &u.coords()[c]
                    + num_rational::BigRational::from_integer(&d + 1) * &duals[k_pos].coords()[c]
            })
            .collect();
        let actual = p.facets()[partners[0]].normal.to_rational();
        if expected != actual.coords() {
            return Err(violation(format!(
                "partner normal differs from u + (δ+1)e_k* at vertex {ek}"
            )));
        }
    }

    // Every fiber has δ elements and satisfies f_j + Σ e_k = 0.
    let mut blocks = Vec::with_capacity(r);
    for (j, &fj) in remaining_vertices.iter().enumerate() {
        let e_vertices: Vec<usize> = basis_vertices
            .iter()
            .enumerate()
            .filter(|(k, _)| phi[*k] == j)
            .map(|(_, &v)| v)
            .collect();
        if e_vertices.len() != delta_usize {
            return Err(violation(format!(
                "fiber of f_{j} has {} elements, expected δ = {delta_usize}",
                e_vertices.len()
            )));
        }
        let mut sum = p.vertex(fj).clone();
        for &e in &e_vertices {
            sum = sum.add(p.vertex(e));
        }
        if !sum.is_zero() {
            return Err(violation(format!(
                "f_{j} plus its fiber sums to {sum}, not zero"
            )));
        }

        let members: Vec<LatticePoint> = std::iter::once(p.vertex(fj).clone())
            .chain(e_vertices.iter().map(|&e| p.vertex(e).clone()))
            .collect();
        let span_basis = saturation_basis(&IntMatrix::from_point_rows(&members));
        if span_basis.len() != delta_usize {
            return Err(violation(format!(
                "block {j} spans dimension {}, expected δ = {delta_usize}",
                span_basis.len()
            )));
        }
        let embedded: Vec<LatticePoint> = members
            .iter()
            .map(|m| {
                let coords = coords_in_lattice_basis(&span_basis, m)
                    .expect("block vertices lie in the saturated span lattice");
                LatticePoint::new(coords, m.ambient())
            })
            .collect();
        let block_polytope = Polytope::hull(&embedded)
            .map_err(|e| violation(format!("block {j} hull failed: {e}")))?;
        let diag = is_reflexive(&block_polytope)
            .map_err(|e| violation(format!("block {j} reflexivity: {e}")))?;
        if !diag.reflexive {
            return Err(violation(format!("block {j} is not reflexive in its span")));
        }
        blocks.push(DecompositionBlock {
            f_vertex: fj,
            e_vertices,
            span_basis,
            block_polytope,
        });
    }

    // The spans form a direct sum decomposition of the ambient space.
    let all_spans: Vec<LatticePoint> = blocks
        .iter()
        .flat_map(|b| b.span_basis.iter().cloned())
        .collect();
    if all_spans.len() != n || rank(&IntMatrix::from_point_rows(&all_spans)) != n {
        return Err(violation("block spans do not form a direct sum".into()));
    }

    // Equality forces every pairing into {-1, δ}.
    for fi in 0..p.facet_count() {
        for vi in 0..p.vertex_count() {
            let val = p.vertex_facet_pairing(fi, vi);
            if val != BigInt::from(-1) && val != d {
                return Err(violation(format!(
                    "pairing ⟨v_{vi}, u_{fi}⟩ = {val} outside {{-1, δ}}"
                )));
            }
        }
    }

    Ok(Decomposition {
        base_facet,
        basis_vertices,
        remaining_vertices,
        phi,
        blocks,
    })
}

/// A factor of the finest free-sum decomposition: the vertices lying in
/// one summand and a saturated basis of its span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeSumFactor {
    pub vertex_indices: Vec<usize>,
    pub span_basis: Vec<LatticePoint>,
}

/// Finest partition of the vertex set whose spans decompose the ambient
/// space as a direct sum. Vertices are merged along fundamental circuits
/// (the linear-dependence witnesses of each non-basis vertex against a
/// fixed greedy basis) with union-find.
pub fn free_sum_decompose(p: &Polytope) -> Vec<FreeSumFactor> {
    let m = p.vertex_count();
    let n = p.dim();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    fn union(parent: &mut Vec<usize>, a: usize, b: usize) {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }

    // Greedy basis by vertex index.
    let mut basis_idx: Vec<usize> = Vec::new();
    for v in 0..m {
        let mut trial: Vec<LatticePoint> =
            basis_idx.iter().map(|&i| p.vertex(i).clone()).collect();
        trial.push(p.vertex(v).clone());
        if rank(&IntMatrix::from_point_rows(&trial)) == trial.len() {
            basis_idx.push(v);
        }
        if basis_idx.len() == n {
            break;
        }
    }
    debug_assert_eq!(basis_idx.len(), n, "vertices span the ambient space");
    let basis_pts: Vec<LatticePoint> = basis_idx.iter().map(|&i| p.vertex(i).clone()).collect();

    for v in 0..m {
        if basis_idx.contains(&v) {
            continue;
        }
        let coords = crate::exact::solve_in_basis(&basis_pts, p.vertex(v))
            .expect("the greedy basis spans");
        for (pos, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                union(&mut parent, v, basis_idx[pos]);
            }
        }
    }

    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 0..m {
        let root = find(&mut parent, v);
        groups.entry(root).or_default().push(v);
    }
    groups
        .into_values()
        .map(|vertex_indices| {
            let pts: Vec<LatticePoint> = vertex_indices
                .iter()
                .map(|&i| p.vertex(i).clone())
                .collect();
            let span_basis = saturation_basis(&IntMatrix::from_point_rows(&pts));
            FreeSumFactor {
                vertex_indices,
                span_basis,
            }
        })
        .collect()
}

/// What a full-dimensional factor polytope is, up to lattice isomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorKind {
    /// The smooth simplex `Conv(e₁,…,e_d, -Σeᵢ)` of projective d-space, d ≥ 2.
    SimplexP { dim: usize },
    /// The hexagon of the degree-six del Pezzo surface.
    Hexagon,
    /// The segment `Conv(-e₁, e₁)` of the projective line.
    Segment,
    Other,
}

/// Identifies the polytope spanned by the given points inside its own
/// span, using the saturated sublattice of the span as the reference
/// lattice and canonical forms for the comparison.
pub fn identify_factor(points: &[LatticePoint]) -> Result<FactorKind> {
    if points.is_empty() {
        return Err(Error::InvalidInput("empty factor".into()));
    }
    let span_basis = saturation_basis(&IntMatrix::from_point_rows(points));
    let d = span_basis.len();
    if d == 0 {
        return Err(Error::LowerDimensional {
            dim: 0,
            ambient: points[0].dim(),
        });
    }
    let embedded: Vec<LatticePoint> = points
        .iter()
        .map(|m| {
            let coords = coords_in_lattice_basis(&span_basis, m)
                .expect("points lie in the saturated span lattice");
            LatticePoint::new(coords, m.ambient())
        })
        .collect();
    let q = Polytope::hull(&embedded)?;
    let reflexive = matches!(is_reflexive(&q), Ok(diag) if diag.reflexive);
    if !reflexive {
        return Ok(FactorKind::Other);
    }
    let cf = canonical_form(&q)?.matrix;
    if d == 1 {
        // The only reflexive segment is Conv(-e, e).
        return Ok(FactorKind::Segment);
    }
    if d == 2 && q.vertex_count() == 6 && cf == canonical_form(&hexagon())?.matrix {
        return Ok(FactorKind::Hexagon);
    }
    if q.vertex_count() == d + 1 && cf == canonical_form(&projective_simplex(d))?.matrix {
        return Ok(FactorKind::SimplexP { dim: d });
    }
    Ok(FactorKind::Other)
}

/// Recognition of the two equality-case families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarietyClass {
    /// `|V| = 3n` with the polytope a free sum of n/2 hexagons.
    S3Power { copies: usize },
    /// Equality in the δ-bound with all blocks smooth δ-simplices and the
    /// polytope smooth: the variety is a power of projective δ-space.
    ProjectivePower { delta: usize, copies: usize },
    Other,
}

pub fn classify_equality_variety(p: &Polytope) -> Result<VarietyClass> {
    let verdict = verify_bounds(p)?;
    if verdict.equality_i {
        let n = p.dim();
        if n.is_multiple_of(2) {
            let factors = free_sum_decompose(p);
            if factors.len() == n / 2 {
                let all_hex = factors.iter().all(|f| {
                    let pts: Vec<LatticePoint> = f
                        .vertex_indices
                        .iter()
                        .map(|&i| p.vertex(i).clone())
                        .collect();
                    matches!(identify_factor(&pts), Ok(FactorKind::Hexagon))
                });
                if all_hex {
                    return Ok(VarietyClass::S3Power { copies: n / 2 });
                }
            }
        }
        return Ok(VarietyClass::Other);
    }
    if verdict.equality_ii {
        let decomp = decompose_equality(p, 0)?;
        let delta_usize = verdict.delta.to_usize().expect("δ fits in a machine word");
        let blocks_match = decomp.blocks.iter().all(|b| {
            let pts: Vec<LatticePoint> = std::iter::once(p.vertex(b.f_vertex).clone())
                .chain(b.e_vertices.iter().map(|&e| p.vertex(e).clone()))
                .collect();
            match identify_factor(&pts) {
                Ok(FactorKind::Segment) => delta_usize == 1,
                Ok(FactorKind::SimplexP { dim }) => dim == delta_usize,
                _ => false,
            }
        });
        if blocks_match && is_smooth(p) {
            return Ok(VarietyClass::ProjectivePower {
                delta: delta_usize,
                copies: decomp.blocks.len(),
            });
        }
        return Ok(VarietyClass::Other);
    }
    Ok(VarietyClass::Other)
}
