//! Cross-module property tests: algebraic identities under random exact
//! inputs, and geometric invariance under random unimodular maps.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use reflexkit_core::*;

fn small_int() -> impl Strategy<Value = i64> {
    -9i64..=9
}

fn rational_point(dim: usize, ambient: Ambient) -> impl Strategy<Value = RationalPoint> {
    prop::collection::vec((small_int(), 1i64..=4), dim).prop_map(move |parts| {
        RationalPoint::new(
            parts
                .into_iter()
                .map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
                .collect(),
            ambient,
        )
    })
}

proptest! {
    #[test]
    fn pairing_is_bilinear(
        x in rational_point(3, Ambient::N),
        x2 in rational_point(3, Ambient::N),
        y in rational_point(3, Ambient::M),
        a in small_int(),
        b in small_int(),
    ) {
        let a = BigRational::from_integer(BigInt::from(a));
        let b = BigRational::from_integer(BigInt::from(b));
        let combo = RationalPoint::new(
            x.coords()
                .iter()
                .zip(x2.coords())
                .map(|(p, q)| &a * p + &b * q)
                .collect(),
            Ambient::N,
        );
        let lhs = pairing(&combo, &y).unwrap();
        let rhs = &a * pairing(&x, &y).unwrap() + &b * pairing(&x2, &y).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dual_basis_is_an_involution(
        rows in prop::collection::vec(prop::collection::vec(small_int(), 3), 3)
    ) {
        let basis: Vec<RationalPoint> = rows
            .iter()
            .map(|r| RationalPoint::from_ints(r, Ambient::N))
            .collect();
        match dual_basis(&basis) {
            Err(Error::SingularInput) => {}
            Err(e) => return Err(TestCaseError::fail(format!("unexpected error {e}"))),
            Ok(duals) => {
                let back = dual_basis(&duals).unwrap();
                prop_assert_eq!(back, basis);
            }
        }
    }

    #[test]
    fn snf_transforms_are_unimodular_and_reconstruct(
        rows in prop::collection::vec(prop::collection::vec(small_int(), 4), 3)
    ) {
        let a = IntMatrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
        );
        let snf = smith_normal_form(&a);
        prop_assert!(snf.u.is_unimodular());
        prop_assert!(snf.v.is_unimodular());
        prop_assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.d.clone());
        prop_assert_eq!(snf.u_inv.mul(&snf.d).mul(&snf.v_inv), a);
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn primitive_is_idempotent_and_positive_multiple(
        coords in prop::collection::vec(small_int(), 1..=4)
    ) {
        let p = LatticePoint::new(coords.iter().map(|&c| BigInt::from(c)).collect(), Ambient::N);
        if p.is_zero() {
            prop_assert!(primitive(&p).is_err());
        } else {
            let q = primitive(&p).unwrap();
            prop_assert_eq!(primitive(&q).unwrap(), q.clone());
            // q scaled by the gcd reproduces p.
            let mut g = BigInt::zero();
            for c in p.coords() {
                g = num_integer::Integer::gcd(&g, c);
            }
            prop_assert_eq!(q.scale(&g), p);
        }
    }
}

fn corpus() -> Vec<Polytope> {
    vec![
        p2_triangle(),
        dual_triangle(),
        hexagon(),
        cross_polytope(2),
        cross_polytope(3),
        free_sum(&p2_triangle(), &p2_triangle()).unwrap(),
    ]
}

#[test]
fn hull_facet_normals_are_equivariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for p in corpus() {
        for _ in 0..20 {
            let t = random_unimodular(p.dim(), &mut rng);
            let image = p.transform(&t).unwrap();
            // transform() maps normals by the inverse transpose; re-hulling
            // from scratch must agree.
            let rehulled = Polytope::hull(
                &p.vertices().iter().map(|v| t.apply(v)).collect::<Vec<_>>(),
            )
            .unwrap();
            assert_eq!(image.facets(), rehulled.facets());
        }
    }
}

#[test]
fn delta_is_a_lattice_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(57);
    for p in corpus() {
        let base = delta(&p).unwrap().0;
        for _ in 0..25 {
            let t = random_unimodular(p.dim(), &mut rng);
            assert_eq!(delta(&p.transform(&t).unwrap()).unwrap().0, base);
        }
    }
}

#[test]
fn reflexivity_is_self_dual() {
    for p in corpus() {
        let d = dual(&p).unwrap();
        assert!(is_reflexive(&d).unwrap().reflexive);
        assert_eq!(dual(&d).unwrap().vertices(), p.vertices());
    }
}

#[test]
fn facet_volume_is_independent_of_pulling_rule() {
    for p in corpus() {
        let d = dual(&p).unwrap();
        for target in [&p, &d] {
            for f in 0..target.facet_count() {
                assert_eq!(
                    facet_lattice_volume(target, f, PullRule::LowestIndex).unwrap(),
                    facet_lattice_volume(target, f, PullRule::HighestIndex).unwrap()
                );
            }
        }
    }
}

#[test]
fn free_sum_factors_survive_random_embeddings() {
    let mut rng = ChaCha8Rng::seed_from_u64(123);
    let sums: Vec<(Polytope, usize)> = vec![
        (free_sum(&cross_polytope(1), &cross_polytope(1)).unwrap(), 2),
        (free_sum(&p2_triangle(), &p2_triangle()).unwrap(), 2),
        (free_sum(&hexagon(), &p2_triangle()).unwrap(), 2),
        (free_sum(&hexagon(), &hexagon()).unwrap(), 2),
        (
            free_sum(&free_sum(&p2_triangle(), &p2_triangle()).unwrap(), &cross_polytope(1))
                .unwrap(),
            3,
        ),
    ];
    for (p, expected_factors) in &sums {
        for _ in 0..50 {
            let t = random_unimodular(p.dim(), &mut rng);
            let image = p.transform(&t).unwrap();
            let factors = free_sum_decompose(&image);
            assert_eq!(factors.len(), *expected_factors);
            let total: usize = factors.iter().map(|f| f.span_basis.len()).sum();
            assert_eq!(total, p.dim());
        }
    }
}

#[test]
fn wall_relations_recompute_to_zero_everywhere() {
    for p in corpus() {
        for w in p.ridges().unwrap() {
            let c = curve_class(&p, &w).unwrap();
            assert!(c.gamma.residual(&p).iter().all(Zero::is_zero));
            assert!(c.b.is_positive() && c.b <= BigRational::one());
        }
    }
}

#[test]
fn canonical_form_ignores_vertex_relabeling() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for p in corpus() {
        let base = canonical_form(&p).unwrap().matrix;
        for _ in 0..10 {
            // Shuffle the vertex list; hull re-normalizes order so combine
            // with a random unimodular map to actually move something.
            let t = random_unimodular(p.dim(), &mut rng);
            let mut pts: Vec<LatticePoint> =
                p.vertices().iter().map(|v| t.apply(v)).collect();
            let k = pts.len();
            for i in 0..k {
                let j = (i * 7 + 3) % k;
                pts.swap(i, j);
            }
            let q = Polytope::hull(&pts).unwrap();
            assert_eq!(canonical_form(&q).unwrap().matrix, base);
        }
    }
}

#[test]
fn vertex_facet_table_shape_for_simplicial_reflexive() {
    for p in corpus() {
        let table = vertex_facet_table(&p);
        for (i, row) in table.entries.iter().enumerate() {
            assert!(row.iter().all(|e| *e >= BigInt::from(-1)));
            let minus = row.iter().filter(|e| **e == BigInt::from(-1)).count();
            assert_eq!(minus, p.facets()[i].incident.len());
            if p.is_simplicial() {
                assert_eq!(minus, p.dim());
            }
        }
    }
}

#[test]
fn interior_lattice_point_of_reflexive_is_origin_only() {
    for p in corpus() {
        assert_eq!(
            p.interior_lattice_points(),
            vec![LatticePoint::zero(p.dim(), p.ambient())]
        );
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

/// Brute-force oracle for the canonical form: maximize the pairing table
/// over ALL row and column permutations, then take the smallest Hermite
/// form of the vertex matrix over every maximizing column order.
fn brute_canonical(p: &Polytope) -> IntMatrix {
    let table = vertex_facet_table(p);
    let h = p.facet_count();
    let m = p.vertex_count();
    let mut best: Option<Vec<Vec<BigInt>>> = None;
    let mut best_taus: Vec<Vec<usize>> = Vec::new();
    for sigma in permutations(h) {
        for tau in permutations(m) {
            let mat: Vec<Vec<BigInt>> = sigma
                .iter()
                .map(|&i| tau.iter().map(|&j| table.entries[i][j].clone()).collect())
                .collect();
            match &best {
                None => {
                    best = Some(mat);
                    best_taus.push(tau);
                }
                Some(b) => match mat.cmp(b) {
                    std::cmp::Ordering::Greater => {
                        best = Some(mat);
                        best_taus.clear();
                        best_taus.push(tau);
                    }
                    std::cmp::Ordering::Equal => best_taus.push(tau),
                    std::cmp::Ordering::Less => {}
                },
            }
        }
    }
    let mut winner: Option<IntMatrix> = None;
    for tau in best_taus {
        let cols: Vec<LatticePoint> = tau.iter().map(|&j| p.vertex(j).clone()).collect();
        let (hnf, _) = hermite_normal_form(&IntMatrix::from_columns(&cols));
        let smaller = match &winner {
            None => true,
            Some(w) => {
                let mut cmp = std::cmp::Ordering::Equal;
                'outer: for i in 0..hnf.rows() {
                    for j in 0..hnf.cols() {
                        cmp = hnf[(i, j)].cmp(&w[(i, j)]);
                        if cmp != std::cmp::Ordering::Equal {
                            break 'outer;
                        }
                    }
                }
                cmp == std::cmp::Ordering::Less
            }
        };
        if smaller {
            winner = Some(hnf);
        }
    }
    winner.unwrap()
}

#[test]
fn canonical_form_matches_brute_force_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    // All 2d classes small enough for full permutation enumeration.
    let smalls: Vec<Polytope> = enumerate_reflexive_2d(3)
        .unwrap()
        .into_iter()
        .map(|c| c.representative)
        .filter(|p| p.vertex_count() <= 5)
        .collect();
    assert_eq!(smalls.len(), 15);
    for p in smalls {
        assert_eq!(canonical_form(&p).unwrap().matrix, brute_canonical(&p));
        for _ in 0..3 {
            let t = random_unimodular(p.dim(), &mut rng);
            let image = p.transform(&t).unwrap();
            assert_eq!(canonical_form(&image).unwrap().matrix, brute_canonical(&image));
        }
    }
}
