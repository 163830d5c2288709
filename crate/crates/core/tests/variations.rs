use endsum_core::algebra::CoefficientRing;
use endsum_core::catalog::{cohomology_ring, ManifoldExpr};
use endsum_core::invariants::gamma_dim;
use endsum_core::ladder::{csi, end_algebra, make_ladder, make_stringer, Space};
use ManifoldExpr::*;

fn gamma(s: &Space, p: u64) -> usize {
    gamma_dim(&end_algebra(s, CoefficientRing::prime_field(p).unwrap()).unwrap()).unwrap()
}

#[test]
fn homology_sphere_replaces_sphere() {
    for p in [2, 3, 5, 7] {
        let y = make_ladder(Lens(p), HomologySphere3(p)).unwrap();
        let z = make_stringer(Lens(p)).unwrap();
        assert_eq!(gamma(&csi(&y, 0, &z, 0).unwrap(), p), 1);
        assert_eq!(gamma(&csi(&y, 1, &z, 0).unwrap(), p), 2);
        let zp = CoefficientRing::prime_field(p).unwrap();
        assert_eq!(
            cohomology_ring(&HomologySphere3(p), zp).unwrap(),
            cohomology_ring(&Sphere(3), zp).unwrap()
        );
    }
}

#[test]
fn multiples_of_p_replace_the_stringer() {
    for p in [2, 3, 5] {
        for j in 1..=6 {
            let zp = CoefficientRing::prime_field(p).unwrap();
            let ring = cohomology_ring(&Lens(j * p), zp).unwrap();
            assert_eq!(ring.poincare_polynomial(), vec![1, 1, 1, 1], "L({}) over Z_{p}", j * p);
            let y = make_ladder(Lens(p), Sphere(3)).unwrap();
            let z = make_stringer(Lens(j * p)).unwrap();
            assert_eq!(gamma(&csi(&y, 0, &z, 0).unwrap(), p), 1);
            assert_eq!(gamma(&csi(&y, 1, &z, 0).unwrap(), p), 2);
        }
    }
}
