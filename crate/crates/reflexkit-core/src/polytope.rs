//! V-representation lattice polytopes: hull construction, facet
//! enumeration, ridges (walls), containment and interior lattice points.
//!
//! Facets are enumerated by an exhaustive n-subset scan with coplanar
//! merging. That is O(C(|V|, n) · |V|), which is fine at desk scale:
//! every polytope this crate handles has at most a few dozen vertices.

use crate::error::{Error, Result};
use crate::exact::{
    determinant, lattice_pairing, rank, Ambient, IntMatrix, LatticePoint, RationalPoint,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// One facet of a full-dimensional polytope: the inequality
/// `⟨x, normal⟩ ≥ -offset`, with equality exactly on the facet.
///
/// The normal is primitive and points inward; `incident` lists the
/// vertices on the facet by index into the polytope's vertex list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetData {
    pub normal: LatticePoint,
    pub offset: BigInt,
    pub incident: Vec<usize>,
}

/// A ridge of a simplicial polytope: the common face of exactly two
/// facets, recorded with the vertex each facet has off the ridge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wall {
    pub facet_a: usize,
    pub facet_b: usize,
    /// The n-1 shared vertex indices, sorted.
    pub common: Vec<usize>,
    pub opp_a: usize,
    pub opp_b: usize,
}

/// Classification of a point against a polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    Interior,
    /// On the boundary; carries the indices of the tight facets.
    Boundary(Vec<usize>),
    Outside,
}

/// A full-dimensional lattice polytope given by its vertices, with facet
/// data cached at construction. Immutable afterwards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    vertices: Vec<LatticePoint>,
    dim: usize,
    ambient: Ambient,
    facets: Vec<FacetData>,
}

impl Polytope {
    /// Convex hull of a set of lattice points.
    ///
    /// Vertices are the extreme points of the input, sorted
    /// lexicographically; duplicate and non-extreme input points are
    /// dropped. Errors if the affine span is lower-dimensional.
    pub fn hull(points: &[LatticePoint]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput("no points given".into()));
        }
        let dim = points[0].dim();
        let ambient = points[0].ambient();
        for p in points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
            if p.ambient() != ambient {
                return Err(Error::InvalidInput(
                    "points from both lattices in one hull".into(),
                ));
            }
        }
        let mut pts: Vec<LatticePoint> = points.to_vec();
        pts.sort();
        pts.dedup();

        let affine_dim = affine_dimension(&pts);
        if affine_dim < dim {
            return Err(Error::LowerDimensional {
                dim: affine_dim,
                ambient: dim,
            });
        }

        let facets = enumerate_facets(&pts, dim, ambient);
        debug_assert!(!facets.is_empty());

        // A point is a vertex exactly when its tight facet normals span.
        let mut vertices = Vec::new();
        for (idx, p) in pts.iter().enumerate() {
            let tight: Vec<LatticePoint> = facets
                .iter()
                .filter(|f| f.incident.contains(&idx))
                .map(|f| f.normal.clone())
                .collect();
            if !tight.is_empty() && rank(&IntMatrix::from_point_rows(&tight)) == dim {
                vertices.push(p.clone());
            }
        }
        debug_assert!(vertices.len() > dim);

        Self::assemble(vertices, facets_with_recomputed_incidence(&facets), dim, ambient)
    }

    /// Builds a polytope from known vertices and a complete facet list,
    /// re-deriving incidences and validating every inequality.
    pub(crate) fn from_parts(
        vertices: Vec<LatticePoint>,
        facets: Vec<FacetData>,
        dim: usize,
        ambient: Ambient,
    ) -> Result<Self> {
        Self::assemble(vertices, facets, dim, ambient)
    }

    fn assemble(
        mut vertices: Vec<LatticePoint>,
        facets: Vec<FacetData>,
        dim: usize,
        ambient: Ambient,
    ) -> Result<Self> {
        vertices.sort();
        vertices.dedup();
        let mut facets: Vec<FacetData> = facets;
        facets.sort_by(|a, b| {
            (a.normal.coords(), &a.offset).cmp(&(b.normal.coords(), &b.offset))
        });
        facets.dedup_by(|a, b| a.normal == b.normal && a.offset == b.offset);

        for f in &mut facets {
            debug_assert_eq!(f.normal.ambient(), ambient.opposite());
            let mut incident = Vec::new();
            for (j, v) in vertices.iter().enumerate() {
                let val = lattice_pairing(v, &f.normal)?;
                if val < -&f.offset {
                    return Err(Error::InvalidInput(format!(
                        "vertex {v} violates facet inequality of {}",
                        f.normal
                    )));
                }
                if val == -&f.offset {
                    incident.push(j);
                }
            }
            if incident.len() < dim {
                return Err(Error::InvalidInput(format!(
                    "facet with normal {} touches only {} vertices",
                    f.normal,
                    incident.len()
                )));
            }
            f.incident = incident;
        }
        Ok(Self {
            vertices,
            dim,
            ambient,
            facets,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &LatticePoint {
        &self.vertices[i]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn facets(&self) -> &[FacetData] {
        &self.facets
    }

    pub fn facet(&self, i: usize) -> &FacetData {
        &self.facets[i]
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    /// Pairing of vertex `j` against the normal of facet `i`.
    pub fn vertex_facet_pairing(&self, facet: usize, vertex: usize) -> BigInt {
        lattice_pairing(&self.vertices[vertex], &self.facets[facet].normal)
            .expect("vertex and facet normal are in dual lattices")
    }

    /// True when the origin is strictly inside, i.e. all facet offsets are positive.
    pub fn origin_interior(&self) -> bool {
        self.facets.iter().all(|f| f.offset.is_positive())
    }

    /// Every facet of a simplicial polytope has exactly `dim` vertices.
    pub fn is_simplicial(&self) -> bool {
        self.facets.iter().all(|f| f.incident.len() == self.dim)
    }

    fn require_simplicial(&self) -> Result<()> {
        for (i, f) in self.facets.iter().enumerate() {
            if f.incident.len() != self.dim {
                return Err(Error::NotSimplicial {
                    facet: i,
                    vertices: f.incident.len(),
                });
            }
        }
        Ok(())
    }

    /// The walls (ridges) of a simplicial polytope. Every ridge lies on
    /// exactly two facets; the count is `dim · facet_count / 2`.
    pub fn ridges(&self) -> Result<Vec<Wall>> {
        self.require_simplicial()?;
        let mut by_ridge: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
        for (fi, f) in self.facets.iter().enumerate() {
            for &dropped in &f.incident {
                let common: Vec<usize> = f
                    .incident
                    .iter()
                    .copied()
                    .filter(|&v| v != dropped)
                    .collect();
                by_ridge.entry(common).or_default().push((fi, dropped));
            }
        }
        let mut walls = Vec::new();
        for (common, mut sides) in by_ridge {
            if sides.len() != 2 {
                return Err(Error::InvalidWall(format!(
                    "ridge {common:?} lies on {} facets",
                    sides.len()
                )));
            }
            sides.sort();
            let ((fa, oa), (fb, ob)) = (sides[0], sides[1]);
            walls.push(Wall {
                facet_a: fa,
                facet_b: fb,
                common,
                opp_a: oa,
                opp_b: ob,
            });
        }
        walls.sort_by(|x, y| (x.facet_a, x.facet_b, &x.common).cmp(&(y.facet_a, y.facet_b, &y.common)));
        debug_assert_eq!(walls.len() * 2, self.dim * self.facet_count());
        Ok(walls)
    }

    /// Classifies a rational point by the facet inequalities.
    pub fn contains(&self, p: &RationalPoint) -> Result<Location> {
        if p.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: p.dim(),
            });
        }
        if p.ambient() != self.ambient {
            return Err(Error::SameAmbient);
        }
        let mut tight = Vec::new();
        for (i, f) in self.facets.iter().enumerate() {
            let val = crate::exact::pairing(p, &f.normal.to_rational())?;
            let bound = -BigRational::from_integer(f.offset.clone());
            if val < bound {
                return Ok(Location::Outside);
            }
            if val == bound {
                tight.push(i);
            }
        }
        if tight.is_empty() {
            Ok(Location::Interior)
        } else {
            Ok(Location::Boundary(tight))
        }
    }

    /// All lattice points strictly inside, by bounding-box scan.
    pub fn interior_lattice_points(&self) -> Vec<LatticePoint> {
        let mut lo = vec![BigInt::zero(); self.dim];
        let mut hi = vec![BigInt::zero(); self.dim];
        for (i, (l, h)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
            *l = self
                .vertices
                .iter()
                .map(|v| v.coords()[i].clone())
                .min()
                .unwrap();
            *h = self
                .vertices
                .iter()
                .map(|v| v.coords()[i].clone())
                .max()
                .unwrap();
        }
        let mut found = Vec::new();
        let mut cursor = lo.clone();
        'scan: loop {
            let p = LatticePoint::new(cursor.clone(), self.ambient);
            let strictly_inside = self.facets.iter().all(|f| {
                lattice_pairing(&p, &f.normal).unwrap() > -&f.offset
            });
            if strictly_inside {
                found.push(p);
            }
            for i in 0..self.dim {
                cursor[i] += 1;
                if cursor[i] <= hi[i] {
                    continue 'scan;
                }
                cursor[i] = lo[i].clone();
            }
            break;
        }
        found.sort();
        found
    }

    /// Image of the polytope under a unimodular map: vertices map by `t`,
    /// facet normals by the inverse transpose, offsets are unchanged.
    pub fn transform(&self, t: &IntMatrix) -> Result<Polytope> {
        if t.rows() != self.dim || t.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: t.rows(),
            });
        }
        if !t.is_unimodular() {
            return Err(Error::InvalidInput("transform is not unimodular".into()));
        }
        let t_inv_t = unimodular_inverse(t).transpose();
        let vertices = self.vertices.iter().map(|v| t.apply(v)).collect();
        let facets = self
            .facets
            .iter()
            .map(|f| FacetData {
                normal: t_inv_t.apply(&f.normal),
                offset: f.offset.clone(),
                incident: Vec::new(),
            })
            .collect();
        Self::assemble(vertices, facets, self.dim, self.ambient)
    }
}

/// `Conv(A ∪ B)` with the two summands placed in complementary coordinate
/// blocks. Both polytopes must contain the origin in their interior, so
/// the result is full-dimensional.
pub fn free_sum(a: &Polytope, b: &Polytope) -> Result<Polytope> {
    if a.ambient() != b.ambient() {
        return Err(Error::SameAmbient);
    }
    if !a.origin_interior() || !b.origin_interior() {
        return Err(Error::OriginNotInterior);
    }
    let dim = a.dim() + b.dim();
    let mut points = Vec::with_capacity(a.vertex_count() + b.vertex_count());
    for v in a.vertices() {
        let mut coords = v.coords().to_vec();
        coords.resize(dim, BigInt::zero());
        points.push(LatticePoint::new(coords, a.ambient()));
    }
    for w in b.vertices() {
        let mut coords = vec![BigInt::zero(); a.dim()];
        coords.extend(w.coords().iter().cloned());
        points.push(LatticePoint::new(coords, a.ambient()));
    }
    debug_assert_eq!(points[0].dim(), dim);
    Polytope::hull(&points)
}

/// Exact inverse of a unimodular integer matrix.
pub fn unimodular_inverse(t: &IntMatrix) -> IntMatrix {
    let n = t.rows();
    let det = determinant(t).expect("square");
    assert!(det.abs().is_one(), "matrix is not unimodular");
    // Gauss-Jordan over the rationals; entries of the inverse are integers.
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = t
                .row(i)
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect();
            row.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row
        })
        .collect();
    let pivots = crate::exact::gauss_jordan(&mut m, n);
    assert_eq!(pivots.len(), n, "unimodular matrices are invertible");
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    debug_assert!(m[i][j + n].is_integer());
                    m[i][j + n].to_integer()
                })
                .collect()
        })
        .collect();
    IntMatrix::from_rows(rows)
}

fn affine_dimension(pts: &[LatticePoint]) -> usize {
    if pts.len() < 2 {
        return 0;
    }
    let diffs: Vec<LatticePoint> = pts[1..].iter().map(|p| p.sub(&pts[0])).collect();
    rank(&IntMatrix::from_point_rows(&diffs))
}

fn facets_with_recomputed_incidence(facets: &[FacetData]) -> Vec<FacetData> {
    facets
        .iter()
        .map(|f| FacetData {
            normal: f.normal.clone(),
            offset: f.offset.clone(),
            incident: Vec::new(),
        })
        .collect()
}

/// Exhaustive facet scan over n-subsets with coplanar merging.
fn enumerate_facets(pts: &[LatticePoint], dim: usize, ambient: Ambient) -> Vec<FacetData> {
    let mut found: BTreeMap<(Vec<BigInt>, BigInt), Vec<usize>> = BTreeMap::new();

    if dim == 1 {
        // Facets of a segment are its two endpoints.
        let min = pts.iter().min().unwrap();
        let max = pts.iter().max().unwrap();
        let plus = LatticePoint::from_ints(&[1], ambient.opposite());
        let minus = LatticePoint::from_ints(&[-1], ambient.opposite());
        found.insert(
            (plus.coords().to_vec(), -min.coords()[0].clone()),
            Vec::new(),
        );
        found.insert(
            (minus.coords().to_vec(), max.coords()[0].clone()),
            Vec::new(),
        );
        return finish_facets(found, pts, ambient);
    }

    let mut subset: Vec<usize> = (0..dim).collect();
    loop {
        if let Some(normal) = hyperplane_normal(pts, &subset, dim) {
            let h = plain_dot(&normal, pts[subset[0]].coords());
            let mut above = false;
            let mut below = false;
            for p in pts {
                let v = plain_dot(&normal, p.coords());
                if v > h {
                    above = true;
                } else if v < h {
                    below = true;
                }
                if above && below {
                    break;
                }
            }
            if !(above && below) {
                // Supporting hyperplane; orient the normal inward.
                let (w, c) = if below {
                    (normal.iter().map(|x| -x).collect::<Vec<_>>(), h.clone())
                } else {
                    (normal, -h)
                };
                found.entry((w, c)).or_default();
            }
        }
        // next n-combination of 0..pts.len()
        if !next_combination(&mut subset, pts.len()) {
            break;
        }
    }
    finish_facets(found, pts, ambient)
}

fn finish_facets(
    found: BTreeMap<(Vec<BigInt>, BigInt), Vec<usize>>,
    pts: &[LatticePoint],
    ambient: Ambient,
) -> Vec<FacetData> {
    found
        .into_iter()
        .map(|((w, c), _)| {
            let normal = LatticePoint::new(w, ambient.opposite());
            let incident = pts
                .iter()
                .enumerate()
                .filter(|(_, p)| plain_dot(normal.coords(), p.coords()) == -&c)
                .map(|(j, _)| j)
                .collect();
            FacetData {
                normal,
                offset: c,
                incident,
            }
        })
        .collect()
}

/// Primitive normal of the hyperplane through `dim` affinely independent
/// points, via signed maximal minors of the difference matrix. Returns
/// `None` when the points are affinely dependent.
fn hyperplane_normal(pts: &[LatticePoint], subset: &[usize], dim: usize) -> Option<Vec<BigInt>> {
    let base = &pts[subset[0]];
    let diffs: Vec<LatticePoint> = subset[1..].iter().map(|&i| pts[i].sub(base)).collect();
    let mat = IntMatrix::from_point_rows(&diffs); // (dim-1) x dim
    let mut normal = Vec::with_capacity(dim);
    for j in 0..dim {
        let minor_rows: Vec<Vec<BigInt>> = (0..dim - 1)
            .map(|i| {
                (0..dim)
                    .filter(|&k| k != j)
                    .map(|k| mat[(i, k)].clone())
                    .collect()
            })
            .collect();
        let d = determinant(&IntMatrix::from_rows(minor_rows)).expect("square minor");
        normal.push(if j % 2 == 0 { d } else { -d });
    }
    if normal.iter().all(Zero::is_zero) {
        return None;
    }
    let mut g = BigInt::zero();
    for x in &normal {
        g = num_integer::Integer::gcd(&g, x);
    }
    Some(normal.into_iter().map(|x| x / &g).collect())
}

fn plain_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    loop {
        if i == 0 {
            return false;
        }
        i -= 1;
        if subset[i] < n - (k - i) {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::{cross_polytope, hexagon, p2_triangle};

    fn pt(c: &[i64]) -> LatticePoint {
        LatticePoint::from_ints(c, Ambient::N)
    }

    #[test]
    fn hull_p2_triangle() {
        let p = p2_triangle();
        assert_eq!(p.vertex_count(), 3);
        assert_eq!(p.facet_count(), 3);
        let mut normals: Vec<Vec<BigInt>> = p
            .facets()
            .iter()
            .map(|f| f.normal.coords().to_vec())
            .collect();
        normals.sort();
        let expect: Vec<Vec<BigInt>> = [[-1i64, -1], [-1, 2], [2, -1]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        assert_eq!(normals, expect);
        assert!(p.facets().iter().all(|f| f.offset.is_one()));
    }

    #[test]
    fn hull_drops_interior_and_duplicate_points() {
        let p = Polytope::hull(&[
            pt(&[1, 0]),
            pt(&[-1, 0]),
            pt(&[0, 1]),
            pt(&[0, -1]),
            pt(&[0, 0]),
            pt(&[1, 0]),
        ])
        .unwrap();
        assert_eq!(p.vertex_count(), 4);
        assert_eq!(p.facet_count(), 4);
    }

    #[test]
    fn hull_square_against_halfplane_oracle() {
        let points = [pt(&[1, 1]), pt(&[1, -1]), pt(&[-1, 1]), pt(&[-1, -1])];
        let p = Polytope::hull(&points).unwrap();
        assert_eq!(p.facet_count(), 4);

        // Oracle: brute-force scan of small primitive half-planes.
        let mut supporting = 0;
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                if (a, b) == (0, 0) || num_integer::gcd(a, b) != 1 {
                    continue;
                }
                let vals: Vec<i64> = points
                    .iter()
                    .map(|p| {
                        a * i64::try_from(&p.coords()[0]).unwrap()
                            + b * i64::try_from(&p.coords()[1]).unwrap()
                    })
                    .collect();
                let m = *vals.iter().min().unwrap();
                let tight = vals.iter().filter(|&&v| v == m).count();
                if tight >= 2 {
                    supporting += 1;
                }
            }
        }
        assert_eq!(supporting, p.facet_count());
    }

    #[test]
    fn hull_rejects_lower_dimensional_input() {
        let err = Polytope::hull(&[pt(&[0, 0]), pt(&[1, 1]), pt(&[2, 2])]).unwrap_err();
        assert_eq!(err, Error::LowerDimensional { dim: 1, ambient: 2 });
    }

    #[test]
    fn hull_is_idempotent_and_order_independent() {
        let pts = [pt(&[1, 0]), pt(&[1, 1]), pt(&[0, 1]), pt(&[-1, 0]), pt(&[-1, -1]), pt(&[0, -1])];
        let p = Polytope::hull(&pts).unwrap();
        let again = Polytope::hull(p.vertices()).unwrap();
        assert_eq!(p, again);

        let mut reordered = pts.to_vec();
        reordered.reverse();
        assert_eq!(Polytope::hull(&reordered).unwrap(), p);
    }

    #[test]
    fn ridges_counts() {
        assert_eq!(p2_triangle().ridges().unwrap().len(), 3);
        assert_eq!(hexagon().ridges().unwrap().len(), 6);
        assert_eq!(cross_polytope(3).ridges().unwrap().len(), 12);
    }

    #[test]
    fn ridges_reject_non_simplicial() {
        let cube = Polytope::hull(&[
            pt(&[1, 1, 1]),
            pt(&[1, 1, -1]),
            pt(&[1, -1, 1]),
            pt(&[1, -1, -1]),
            pt(&[-1, 1, 1]),
            pt(&[-1, 1, -1]),
            pt(&[-1, -1, 1]),
            pt(&[-1, -1, -1]),
        ])
        .unwrap();
        assert!(matches!(cube.ridges(), Err(Error::NotSimplicial { .. })));
    }

    #[test]
    fn contains_classifies() {
        let p = p2_triangle();
        let rp = |c: &[i64]| RationalPoint::from_ints(c, Ambient::N);
        assert_eq!(p.contains(&rp(&[0, 0])).unwrap(), Location::Interior);
        match p.contains(&rp(&[1, 0])).unwrap() {
            Location::Boundary(tight) => assert_eq!(tight.len(), 2),
            other => panic!("expected boundary, got {other:?}"),
        }
        assert_eq!(p.contains(&rp(&[1, 1])).unwrap(), Location::Outside);
    }

    #[test]
    fn interior_lattice_points_examples() {
        let origin_only = vec![pt(&[0, 0])];
        assert_eq!(p2_triangle().interior_lattice_points(), origin_only);

        let dual = Polytope::hull(&[pt(&[2, -1]), pt(&[-1, 2]), pt(&[-1, -1])]).unwrap();
        assert_eq!(dual.interior_lattice_points(), origin_only);

        let quad = Polytope::hull(&[pt(&[1, 0]), pt(&[-1, 0]), pt(&[1, 2]), pt(&[-1, -2])]).unwrap();
        assert_eq!(quad.interior_lattice_points(), origin_only);

        // Box-scan oracle for the dual triangle.
        let mut by_scan = Vec::new();
        for x in -1i64..=2 {
            for y in -1i64..=2 {
                let p = RationalPoint::from_ints(&[x, y], Ambient::N);
                if dual.contains(&p).unwrap() == Location::Interior {
                    by_scan.push(pt(&[x, y]));
                }
            }
        }
        assert_eq!(dual.interior_lattice_points(), by_scan);
    }

    #[test]
    fn every_facet_supports_exactly_its_incident_vertices() {
        for p in [p2_triangle(), hexagon(), cross_polytope(3)] {
            for (fi, f) in p.facets().iter().enumerate() {
                for (vi, _) in p.vertices().iter().enumerate() {
                    let val = p.vertex_facet_pairing(fi, vi);
                    if f.incident.contains(&vi) {
                        assert_eq!(val, -&f.offset);
                    } else {
                        assert!(val > -&f.offset);
                    }
                }
            }
        }
    }

    #[test]
    fn transform_matches_rehull() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for p in [p2_triangle(), hexagon(), cross_polytope(3)] {
            for _ in 0..20 {
                let t = crate::exact::random_unimodular(p.dim(), &mut rng);
                let fast = p.transform(&t).unwrap();
                let mapped: Vec<LatticePoint> =
                    p.vertices().iter().map(|v| t.apply(v)).collect();
                let slow = Polytope::hull(&mapped).unwrap();
                assert_eq!(fast, slow);
            }
        }
    }

    #[test]
    fn free_sum_of_crosses_is_cross() {
        let s = free_sum(&cross_polytope(1), &cross_polytope(1)).unwrap();
        assert_eq!(s, cross_polytope(2));
        let s3 = free_sum(&cross_polytope(2), &cross_polytope(1)).unwrap();
        assert_eq!(s3, cross_polytope(3));
    }

    #[test]
    fn segment_facets() {
        let seg = Polytope::hull(&[pt(&[-1]), pt(&[1]), pt(&[0])]).unwrap();
        assert_eq!(seg.vertex_count(), 2);
        assert_eq!(seg.facet_count(), 2);
        assert!(seg.origin_interior());
    }
}
