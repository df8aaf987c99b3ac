//! Constructors for the standard polytopes used throughout the crate and
//! its test corpora.

use crate::exact::{Ambient, LatticePoint};
use crate::polytope::Polytope;
use num_bigint::BigInt;
use num_traits::One;

/// `Conv(e₁, …, e_d, -e₁-…-e_d)`, the smooth simplex of projective d-space.
pub fn projective_simplex(dim: usize) -> Polytope {
    assert!(dim >= 1);
    let mut pts: Vec<LatticePoint> = (0..dim)
        .map(|i| LatticePoint::basis_vector(i, dim, Ambient::N))
        .collect();
    pts.push(LatticePoint::new(
        vec![-BigInt::one(); dim],
        Ambient::N,
    ));
    Polytope::hull(&pts).expect("projective simplex is full-dimensional")
}

/// The triangle `Conv(e₁, e₂, -e₁-e₂)` of the projective plane.
pub fn p2_triangle() -> Polytope {
    projective_simplex(2)
}

/// `Conv((2,-1), (-1,2), (-1,-1))`, the dual of the plane triangle.
pub fn dual_triangle() -> Polytope {
    Polytope::hull(&[
        LatticePoint::from_ints(&[2, -1], Ambient::N),
        LatticePoint::from_ints(&[-1, 2], Ambient::N),
        LatticePoint::from_ints(&[-1, -1], Ambient::N),
    ])
    .expect("dual triangle is full-dimensional")
}

/// `Conv(±e₁, …, ±e_d)`, the cross-polytope of `(ℙ¹)^d`.
pub fn cross_polytope(dim: usize) -> Polytope {
    assert!(dim >= 1);
    let mut pts = Vec::with_capacity(2 * dim);
    for i in 0..dim {
        let e = LatticePoint::basis_vector(i, dim, Ambient::N);
        pts.push(e.neg());
        pts.push(e);
    }
    Polytope::hull(&pts).expect("cross-polytope is full-dimensional")
}

/// `Conv(±e₁, ±e₂, ±(e₁+e₂))`, the hexagon of the degree-six del Pezzo
/// surface S₃ (the plane blown up at three points).
pub fn hexagon() -> Polytope {
    Polytope::hull(&[
        LatticePoint::from_ints(&[1, 0], Ambient::N),
        LatticePoint::from_ints(&[-1, 0], Ambient::N),
        LatticePoint::from_ints(&[0, 1], Ambient::N),
        LatticePoint::from_ints(&[0, -1], Ambient::N),
        LatticePoint::from_ints(&[1, 1], Ambient::N),
        LatticePoint::from_ints(&[-1, -1], Ambient::N),
    ])
    .expect("hexagon is full-dimensional")
}

/// The dilated triangle `2 · Conv(e₁, e₂, -e₁-e₂)`; not reflexive.
pub fn dilated_triangle() -> Polytope {
    Polytope::hull(&[
        LatticePoint::from_ints(&[2, 0], Ambient::N),
        LatticePoint::from_ints(&[0, 2], Ambient::N),
        LatticePoint::from_ints(&[-2, -2], Ambient::N),
    ])
    .expect("dilated triangle is full-dimensional")
}
