use endsum_core::algebra::linalg::span_rank;
use endsum_core::algebra::{CoefficientRing, GradedRing};
use endsum_core::catalog::{cohomology_ring, ManifoldExpr};
use proptest::prelude::*;
use ManifoldExpr::*;

fn zp(p: u64) -> CoefficientRing {
    CoefficientRing::prime_field(p).unwrap()
}

fn suite() -> Vec<ManifoldExpr> {
    vec![
        Sphere(3),
        Lens(2),
        Lens(4),
        Lens(6),
        Surface(2),
        Torus(3),
        ManifoldExpr::conn_sum(Lens(2), Lens(2)),
        ManifoldExpr::product(Lens(2), Torus(1)),
    ]
}

/// Rank of the cup product map `H^a ⊗ H^b → H^{a+b}`, an isomorphism
/// invariant of the ring.
fn product_rank(r: &GradedRing, a: usize, b: usize) -> usize {
    let p = r.coefficients().characteristic();
    let target = r.generators_in_degree(a + b);
    let mut vectors = Vec::new();
    for x in r.generators_in_degree(a) {
        for y in r.generators_in_degree(b) {
            let v = r.mul_generators(x, y);
            vectors.push(target.iter().map(|&t| v[t]).collect());
        }
    }
    span_rank(&vectors, p)
}

fn ring_fingerprint(r: &GradedRing) -> Vec<usize> {
    let n = r.top_degree();
    let mut out = r.poincare_polynomial();
    for a in 1..n {
        for b in 1..=n - a {
            out.push(product_rank(r, a, b));
        }
    }
    out
}

#[test]
fn suite_rings_satisfy_axioms_and_duality() {
    for m in suite() {
        for p in [2, 3, 5] {
            let r = cohomology_ring(&m, zp(p)).unwrap();
            assert_eq!(r.check_axioms(), Ok(()), "{m} over Z_{p}");
            assert!(r.satisfies_poincare_duality(), "{m} over Z_{p}");
        }
    }
}

#[test]
fn lens_square_over_z2() {
    for k in [2u64, 4, 6, 8, 10, 12] {
        let r = cohomology_ring(&Lens(k), zp(2)).unwrap();
        let a = r.generators_in_degree(1)[0];
        let b = r.generators_in_degree(2)[0];
        let sq = r.mul_generators(a, a);
        if k % 4 == 2 {
            assert_eq!(sq, r.basis_element(b), "L({k})");
        } else {
            assert_eq!(sq, r.zero_element(), "L({k})");
        }
    }
}

fn atom() -> impl Strategy<Value = ManifoldExpr> {
    prop_oneof![
        (2u64..9).prop_map(Lens),
        Just(Sphere(3)),
        Just(Torus(3)),
        Just(ManifoldExpr::product(Surface(1), Torus(1))),
        (1u64..4).prop_map(|g| ManifoldExpr::product(Surface(g), Torus(1))),
        Just(HomologySphere3(3)),
    ]
}

fn three_manifold() -> impl Strategy<Value = ManifoldExpr> {
    atom().prop_recursive(2, 6, 2, |inner| {
        (inner.clone(), inner).prop_map(|(a, b)| ManifoldExpr::conn_sum(a, b))
    })
}

fn field() -> impl Strategy<Value = u64> {
    prop_oneof![Just(2u64), Just(3), Just(5), Just(7)]
}

fn ring_or_skip(m: &ManifoldExpr, p: u64) -> Option<GradedRing> {
    cohomology_ring(m, zp(p)).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn duality_and_euler_characteristic(m in three_manifold(), p in field()) {
        if let Some(r) = ring_or_skip(&m, p) {
            prop_assert_eq!(r.check_axioms(), Ok(()));
            prop_assert!(r.satisfies_poincare_duality());
            let chi: i64 = r
                .poincare_polynomial()
                .iter()
                .enumerate()
                .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
                .sum();
            prop_assert_eq!(chi, 0);
        }
    }

    #[test]
    fn conn_sum_dimensions(a in three_manifold(), b in three_manifold(), p in field()) {
        let sum = ManifoldExpr::conn_sum(a.clone(), b.clone());
        if let (Some(ra), Some(rb), Some(rs)) =
            (ring_or_skip(&a, p), ring_or_skip(&b, p), ring_or_skip(&sum, p))
        {
            let (pa, pb) = (ra.poincare_polynomial(), rb.poincare_polynomial());
            let expected = vec![1, pa[1] + pb[1], pa[2] + pb[2], 1];
            prop_assert_eq!(rs.poincare_polynomial(), expected);
        }
    }

    #[test]
    fn conn_sum_commutes_and_associates(
        a in three_manifold(),
        b in three_manifold(),
        c in three_manifold(),
        p in field(),
    ) {
        let ab = ManifoldExpr::conn_sum(a.clone(), b.clone());
        let ba = ManifoldExpr::conn_sum(b.clone(), a.clone());
        if let (Some(x), Some(y)) = (ring_or_skip(&ab, p), ring_or_skip(&ba, p)) {
            prop_assert_eq!(ring_fingerprint(&x), ring_fingerprint(&y));
        }
        let left = ManifoldExpr::conn_sum(ab, c.clone());
        let right = ManifoldExpr::conn_sum(a, ManifoldExpr::conn_sum(b, c));
        if let (Some(x), Some(y)) = (ring_or_skip(&left, p), ring_or_skip(&right, p)) {
            prop_assert_eq!(ring_fingerprint(&x), ring_fingerprint(&y));
            prop_assert_eq!(left.normalize().unwrap(), right.normalize().unwrap());
        }
    }

    #[test]
    fn integral_conn_sum_modules(a in three_manifold(), b in three_manifold()) {
        let z = CoefficientRing::Integers;
        let sum = ManifoldExpr::conn_sum(a.clone(), b.clone());
        if let (Ok(ra), Ok(rb), Ok(rs)) =
            (cohomology_ring(&a, z), cohomology_ring(&b, z), cohomology_ring(&sum, z))
        {
            for k in 1..3 {
                prop_assert_eq!(rs.module(k), ra.module(k).direct_sum(&rb.module(k)).unwrap());
            }
        }
    }

    #[test]
    fn product_poincare_polynomial(a in atom(), b in atom(), p in field()) {
        let prod = ManifoldExpr::product(a.clone(), b.clone());
        if let (Some(ra), Some(rb), Some(rp)) =
            (ring_or_skip(&a, p), ring_or_skip(&b, p), ring_or_skip(&prod, p))
        {
            let (pa, pb) = (ra.poincare_polynomial(), rb.poincare_polynomial());
            let mut expected = vec![0; pa.len() + pb.len() - 1];
            for (i, x) in pa.iter().enumerate() {
                for (j, y) in pb.iter().enumerate() {
                    expected[i + j] += x * y;
                }
            }
            prop_assert_eq!(rp.poincare_polynomial(), expected);
            prop_assert_eq!(rp.check_axioms(), Ok(()));
            prop_assert!(rp.satisfies_poincare_duality());
        }
    }
}

#[test]
fn odd_dimensional_euler_characteristic() {
    let odd = [
        Sphere(5),
        Torus(5),
        ManifoldExpr::product(Lens(3), Torus(2)),
        ManifoldExpr::product(Surface(2), Lens(4)),
        ManifoldExpr::conn_sum(Lens(5), Lens(5)),
    ];
    for m in odd {
        for p in [2, 3, 5] {
            let r = cohomology_ring(&m, zp(p)).unwrap();
            let chi: i64 = r
                .poincare_polynomial()
                .iter()
                .enumerate()
                .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
                .sum();
            assert_eq!(chi, 0, "{m} over Z_{p}");
        }
    }
}

#[test]
fn surface_sums_add_genera() {
    for (g, h) in [(1, 1), (1, 2), (2, 3)] {
        let s = ManifoldExpr::conn_sum(Surface(g), Surface(h));
        assert_eq!(s.normalize().unwrap(), Surface(g + h));
        let r = cohomology_ring(&s, zp(3)).unwrap();
        assert_eq!(r.poincare_polynomial(), vec![1, (2 * (g + h)) as usize, 1]);
    }
}
