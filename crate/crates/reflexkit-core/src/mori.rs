//! Combinatorial toric Mori theory: 1-cycle classes as rational relations
//! among vertices, wall relations, exact anticanonical degrees of
//! invariant curves, the scaling factor b, and pseudo-index bounds.

use crate::error::{Error, Result};
use crate::exact::{cone_multiplicity, solve_in_basis, LatticePoint};
use crate::fano::{delta, is_smooth};
use crate::polytope::{Polytope, Wall};
use crate::reflexive::is_reflexive;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A rational relation `Σ coeff(v) · v = 0` among the vertices of a
/// polytope; 1-cycle classes of the associated variety are exactly such
/// relations, and the anticanonical degree of a class is the coefficient
/// sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    /// Dense coefficients, aligned with the polytope's vertex list.
    pub coefficients: Vec<BigRational>,
}

impl Relation {
    pub fn degree(&self) -> BigRational {
        self.coefficients.iter().cloned().sum()
    }

    pub fn support(&self) -> Vec<usize> {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// Recomputes `Σ coeff(v)·v` from scratch; zero for genuine relations.
    pub fn residual(&self, p: &Polytope) -> Vec<BigRational> {
        let mut acc = vec![BigRational::zero(); p.dim()];
        for (c, v) in self.coefficients.iter().zip(p.vertices()) {
            for (a, x) in acc.iter_mut().zip(v.coords()) {
                *a += c * BigRational::from_integer(x.clone());
            }
        }
        acc
    }

    /// Integer form with coprime coefficients, scaled so the coefficient
    /// at `pivot` is positive.
    pub fn primitive_integer(&self, pivot: usize) -> Vec<BigInt> {
        let mut lcm = BigInt::one();
        for c in &self.coefficients {
            lcm = lcm.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = self
            .coefficients
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for x in &ints {
            g = g.gcd(x);
        }
        if !g.is_zero() && !g.is_one() {
            for x in &mut ints {
                *x /= &g;
            }
        }
        if ints[pivot].is_negative() {
            for x in &mut ints {
                *x = -std::mem::take(x);
            }
        }
        ints
    }
}

/// The curve class of a wall: the normalized wall relation γ together
/// with the scaling factor `b ∈ (0, 1]` relating γ to the class of the
/// invariant curve, and the curve's exact anticanonical degree `b·deg γ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveClass {
    pub wall: Wall,
    pub gamma: Relation,
    pub b: BigRational,
    pub exact_degree: BigRational,
}

fn require_simplicial(p: &Polytope) -> Result<()> {
    for (i, f) in p.facets().iter().enumerate() {
        if f.incident.len() != p.dim() {
            return Err(Error::NotSimplicial {
                facet: i,
                vertices: f.incident.len(),
            });
        }
    }
    Ok(())
}

fn validate_wall(p: &Polytope, w: &Wall) -> Result<()> {
    let check = |facet: usize, opp: usize| -> bool {
        if facet >= p.facet_count() {
            return false;
        }
        let mut expected = w.common.clone();
        expected.push(opp);
        expected.sort_unstable();
        p.facets()[facet].incident == expected
    };
    if !check(w.facet_a, w.opp_a) || !check(w.facet_b, w.opp_b) || w.opp_a == w.opp_b {
        return Err(Error::InvalidWall(format!(
            "wall {:?} does not match the facet structure",
            w
        )));
    }
    Ok(())
}

/// The relation carried by a wall: with facet A = `Conv(e₁,…,eₙ)` and f₀
/// the vertex of the partner facet off the ridge, expresses f₀ in the
/// basis e₁,…,eₙ and returns `1·f₀ - Σ cᵢ·eᵢ = 0`.
pub fn wall_relation(p: &Polytope, w: &Wall) -> Result<Relation> {
    require_simplicial(p)?;
    validate_wall(p, w)?;
    let facet_a = &p.facets()[w.facet_a];
    let basis: Vec<LatticePoint> = facet_a
        .incident
        .iter()
        .map(|&i| p.vertex(i).clone())
        .collect();
    let f0 = p.vertex(w.opp_b);
    let coords = solve_in_basis(&basis, f0)?;
    let mut coefficients = vec![BigRational::zero(); p.vertex_count()];
    coefficients[w.opp_b] = BigRational::one();
    for (&vi, c) in facet_a.incident.iter().zip(&coords) {
        coefficients[vi] -= c;
    }
    Ok(Relation { coefficients })
}

/// The invariant curve class of a wall: `b = mult(τ) / mult(σ')` with τ
/// the cone over the ridge and σ' the cone over the facet acquiring f₀.
///
/// The symmetric identity `α·mult(σ') = β·mult(σ)` for the primitive
/// integer wall relation (α the coefficient on f₀, β on the dropped
/// vertex) is asserted at runtime; a failure is a bug, not an input
/// property.
pub fn curve_class(p: &Polytope, w: &Wall) -> Result<CurveClass> {
    let gamma = wall_relation(p, w)?;
    let ridge: Vec<LatticePoint> = w.common.iter().map(|&i| p.vertex(i).clone()).collect();
    let mult_tau = if ridge.is_empty() {
        BigInt::one() // the zero cone, for 1-dimensional polytopes
    } else {
        cone_multiplicity(&ridge)?
    };
    let cone_of = |facet: usize| -> Result<BigInt> {
        let gens: Vec<LatticePoint> = p.facets()[facet]
            .incident
            .iter()
            .map(|&i| p.vertex(i).clone())
            .collect();
        cone_multiplicity(&gens)
    };
    let mult_sigma = cone_of(w.facet_a)?;
    let mult_sigma_prime = cone_of(w.facet_b)?;

    let ints = gamma.primitive_integer(w.opp_b);
    let alpha = ints[w.opp_b].clone();
    let beta = ints[w.opp_a].clone();
    if !beta.is_positive() {
        return Err(Error::TheoremViolation(format!(
            "wall relation has non-positive coefficient {beta} on the dropped vertex"
        )));
    }
    if &alpha * &mult_sigma_prime != &beta * &mult_sigma {
        return Err(Error::TheoremViolation(format!(
            "wall relation inconsistency: {alpha}·{mult_sigma_prime} != {beta}·{mult_sigma}"
        )));
    }

    let b = BigRational::new(mult_tau, mult_sigma_prime);
    if !b.is_positive() || b > BigRational::one() {
        return Err(Error::TheoremViolation(format!(
            "scaling factor b = {b} is outside (0, 1]"
        )));
    }
    let exact_degree = &b * gamma.degree();
    Ok(CurveClass {
        wall: w.clone(),
        gamma,
        b,
        exact_degree,
    })
}

/// Curve classes for every wall of a simplicial polytope.
pub fn curve_classes(p: &Polytope) -> Result<Vec<CurveClass>> {
    p.ridges()?
        .iter()
        .map(|w| curve_class(p, w))
        .collect()
}

/// Pseudo-index bounds for a simplicial reflexive polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoIndexReport {
    /// δ_P + 1, always an upper bound for the pseudo-index.
    pub upper_bound_delta: BigInt,
    /// The smallest anticanonical degree among invariant curves; an
    /// independent upper bound.
    pub min_invariant_degree: BigRational,
    /// min(δ_P + 1, min invariant degree).
    pub iota_upper_bound: BigRational,
    /// True when the polytope is smooth; then the pseudo-index equals
    /// δ_P + 1 exactly, and the report asserts it.
    pub exact: bool,
}

pub fn pseudo_index_report(p: &Polytope) -> Result<PseudoIndexReport> {
    require_simplicial(p)?;
    let diag = is_reflexive(p)?;
    if !diag.reflexive {
        return Err(Error::NotReflexive {
            offending: diag.offending,
        });
    }
    let (delta_val, _) = delta(p)?;
    let upper: BigInt = &delta_val + 1;
    let classes = curve_classes(p)?;
    let min_degree = classes
        .iter()
        .map(|c| c.exact_degree.clone())
        .min()
        .expect("a full-dimensional polytope has walls");
    let exact = is_smooth(p);
    let upper_rat = BigRational::from_integer(upper.clone());
    if exact && min_degree != upper_rat {
        return Err(Error::TheoremViolation(format!(
            "smooth polytope with min invariant degree {min_degree} != δ+1 = {upper}"
        )));
    }
    let iota_upper_bound = upper_rat.min(min_degree.clone());
    Ok(PseudoIndexReport {
        upper_bound_delta: upper,
        min_invariant_degree: min_degree,
        iota_upper_bound,
        exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::{cross_polytope, dual_triangle, hexagon, p2_triangle};

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn p2_triangle_walls_have_degree_three() {
        let p = p2_triangle();
        for w in p.ridges().unwrap() {
            let c = curve_class(&p, &w).unwrap();
            assert_eq!(c.b, rat(1));
            assert_eq!(c.exact_degree, rat(3));
            let coeffs: Vec<BigRational> = c.gamma.coefficients.clone();
            assert!(coeffs.iter().all(|x| *x == rat(1)));
        }
    }

    #[test]
    fn dual_triangle_walls_have_b_one_third() {
        let p = dual_triangle();
        for w in p.ridges().unwrap() {
            let c = curve_class(&p, &w).unwrap();
            assert_eq!(c.b, ratio(1, 3));
            assert_eq!(c.gamma.degree(), rat(3));
            assert_eq!(c.exact_degree, rat(1));
        }
    }

    #[test]
    fn cross_polytope_wall_is_a_sign_pair() {
        let p = cross_polytope(2);
        let walls = p.ridges().unwrap();
        assert_eq!(walls.len(), 4);
        for w in walls {
            let c = curve_class(&p, &w).unwrap();
            assert_eq!(c.b, rat(1));
            assert_eq!(c.exact_degree, rat(2));
            // Relation is e + (-e) = 0 on an opposite vertex pair.
            let support = c.gamma.support();
            assert_eq!(support.len(), 2);
            assert_eq!(
                p.vertex(support[0]).add(p.vertex(support[1])),
                crate::exact::LatticePoint::zero(2, p.ambient())
            );
        }
    }

    #[test]
    fn hexagon_walls_have_degree_one() {
        let p = hexagon();
        for w in p.ridges().unwrap() {
            let c = curve_class(&p, &w).unwrap();
            assert_eq!(c.b, rat(1));
            assert_eq!(c.exact_degree, rat(1));
        }
    }

    #[test]
    fn relations_vanish_when_recomputed() {
        for p in [p2_triangle(), dual_triangle(), hexagon(), cross_polytope(3)] {
            for w in p.ridges().unwrap() {
                let rel = wall_relation(&p, &w).unwrap();
                assert!(rel.residual(&p).iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn degree_matches_pairing_formula_for_reflexive() {
        // deg γ = 1 + ⟨f₀, u⟩ with u the normal of the basis facet.
        for p in [p2_triangle(), dual_triangle(), hexagon(), cross_polytope(3)] {
            for w in p.ridges().unwrap() {
                let rel = wall_relation(&p, &w).unwrap();
                let u = &p.facets()[w.facet_a].normal;
                let f0 = p.vertex(w.opp_b);
                let expected = BigRational::from_integer(
                    crate::exact::lattice_pairing(f0, u).unwrap() + 1,
                );
                assert_eq!(rel.degree(), expected);
            }
        }
    }

    #[test]
    fn swapped_wall_orientation_gives_proportional_class() {
        for p in [p2_triangle(), dual_triangle(), hexagon()] {
            for w in p.ridges().unwrap() {
                let flipped = Wall {
                    facet_a: w.facet_b,
                    facet_b: w.facet_a,
                    common: w.common.clone(),
                    opp_a: w.opp_b,
                    opp_b: w.opp_a,
                };
                let g1 = wall_relation(&p, &w).unwrap();
                let g2 = wall_relation(&p, &flipped).unwrap();
                // g2 = λ·g1 with λ > 0: compare cross-scaled coefficients.
                let i = g1
                    .coefficients
                    .iter()
                    .position(|c| !c.is_zero())
                    .unwrap();
                let lambda = &g2.coefficients[i] / &g1.coefficients[i];
                assert!(lambda.is_positive());
                for (a, b) in g1.coefficients.iter().zip(&g2.coefficients) {
                    assert_eq!(a * &lambda, b.clone());
                }
            }
        }
    }

    #[test]
    fn pseudo_index_examples() {
        let r = pseudo_index_report(&p2_triangle()).unwrap();
        assert_eq!(r.upper_bound_delta, BigInt::from(3));
        assert_eq!(r.min_invariant_degree, rat(3));
        assert!(r.exact);

        let r = pseudo_index_report(&dual_triangle()).unwrap();
        assert_eq!(r.upper_bound_delta, BigInt::from(3));
        assert_eq!(r.min_invariant_degree, rat(1));
        assert_eq!(r.iota_upper_bound, rat(1));
        assert!(!r.exact, "the dual triangle is singular");

        let r = pseudo_index_report(&hexagon()).unwrap();
        assert_eq!(r.upper_bound_delta, BigInt::one());
        assert_eq!(r.min_invariant_degree, rat(1));
        assert!(r.exact);

        let r = pseudo_index_report(&cross_polytope(4)).unwrap();
        assert_eq!(r.upper_bound_delta, BigInt::from(2));
        assert_eq!(r.min_invariant_degree, rat(2));
        assert!(r.exact);
    }

    #[test]
    fn invalid_wall_is_rejected() {
        let p = p2_triangle();
        let w = Wall {
            facet_a: 0,
            facet_b: 1,
            common: vec![0],
            opp_a: 1,
            opp_b: 1,
        };
        assert!(matches!(
            wall_relation(&p, &w),
            Err(Error::InvalidWall(_))
        ));
    }
}
