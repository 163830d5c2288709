use endsum_core::algebra::{
    reduce_coefficients, smith_normal_form, tensor_product, CoefficientRing, IntMatrix, Prime,
};
use endsum_core::catalog::{cohomology_ring, ManifoldExpr};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

/// Fraction-free (Bareiss) determinant.
fn det(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a = rows.to_vec();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from determinantal divisors: `d_1 ⋯ d_k = gcd of k×k minors`.
fn invariant_factors_by_minors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut divisors = vec![BigInt::from(1)];
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<BigInt>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| BigInt::from(m[i][j])).collect())
                    .collect();
                g = g.gcd(&det(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        divisors.push(g);
    }
    divisors.windows(2).map(|w| &w[1] / &w[0]).collect()
}

fn square_det(m: &IntMatrix) -> BigInt {
    let rows: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m[(i, j)].clone()).collect())
        .collect();
    det(&rows)
}

fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-9i64..=9, c), r)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn smith_form_factorizes(m in matrix_strategy()) {
        let input = IntMatrix::from_rows(&m);
        let s = smith_normal_form(&input);
        prop_assert_eq!(s.row_transform.mul(&input).mul(&s.col_transform), s.diagonal.clone());
        prop_assert!(s.diagonal.is_diagonal());
        let d = s.diagonal.diagonal_entries();
        prop_assert!(d.iter().all(|x| !x.is_negative()));
        for w in d.windows(2) {
            prop_assert!(w[0].is_zero() && w[1].is_zero() || !w[0].is_zero() && w[1].is_multiple_of(&w[0]));
        }
        prop_assert_eq!(square_det(&s.row_transform).abs(), BigInt::from(1));
        prop_assert_eq!(square_det(&s.col_transform).abs(), BigInt::from(1));
        prop_assert_eq!(s.invariant_factors(), invariant_factors_by_minors(&m));
    }
}

#[test]
fn two_by_two_oracle() {
    // determinantal divisors of diag(2, 3): gcd = 1, det = 6
    assert_eq!(
        invariant_factors_by_minors(&[vec![2, 0], vec![0, 3]]),
        vec![BigInt::from(1), BigInt::from(6)]
    );
    let s = smith_normal_form(&IntMatrix::from_rows(&[[2, 0], [0, 3]]));
    assert_eq!(s.diagonal, IntMatrix::diagonal(2, 2, &[1, 6]));
}

fn catalog() -> Vec<ManifoldExpr> {
    use ManifoldExpr::*;
    vec![
        Sphere(3),
        Sphere(4),
        Lens(2),
        Lens(4),
        Lens(6),
        Lens(9),
        Surface(2),
        Torus(3),
        ManifoldExpr::conn_sum(Lens(2), Lens(2)),
        ManifoldExpr::conn_sum(Lens(2), Lens(3)),
        ManifoldExpr::product(Lens(2), Torus(1)),
        ManifoldExpr::product(Lens(6), Torus(2)),
        ManifoldExpr::product(Surface(1), Surface(2)),
    ]
}

/// Size of the subgroup of `⊕ Z_{d_i}` killed by p, by enumeration.
fn count_p_torsion(orders: &[u64], p: u64) -> u64 {
    let mut count = 0;
    let total: u64 = orders.iter().product();
    for mut code in 0..total {
        let mut killed = true;
        for &d in orders {
            let x = code % d;
            code /= d;
            if !(x * p).is_multiple_of(d) {
                killed = false;
            }
        }
        if killed {
            count += 1;
        }
    }
    count
}

/// Size of `M / pM` for `M = ⊕ Z_{d_i}`, by enumerating the image of
/// multiplication by p.
fn count_mod_p_quotient(orders: &[u64], p: u64) -> u64 {
    let total: u64 = orders.iter().product();
    let mut image = std::collections::BTreeSet::new();
    for mut code in 0..total {
        let mut v = Vec::new();
        for &d in orders {
            v.push((code % d) * p % d);
            code /= d;
        }
        image.insert(v);
    }
    total / image.len() as u64
}

fn log_p(x: u64, p: u64) -> usize {
    let mut k = 0;
    let mut y = 1;
    while y < x {
        y *= p;
        k += 1;
    }
    assert_eq!(y, x);
    k
}

/// `dim H^k(X; Z_p) = rank H^k + dim(H^k ⊗ Z_p)_{tors} + dim Tor(H^{k+1}, Z_p)`
/// counted from the integral groups.
fn uct_dims(m: &ManifoldExpr, p: u64) -> Vec<usize> {
    let integral = cohomology_ring(m, CoefficientRing::Integers).unwrap();
    let n = integral.top_degree();
    let torsion = |k: usize| -> Vec<u64> {
        if k > n {
            return vec![];
        }
        integral.module(k).torsion().to_vec()
    };
    let mut dims = vec![1];
    for k in 1..=n {
        let free = integral.module(k).rank();
        dims.push(
            free + log_p(count_mod_p_quotient(&torsion(k), p), p)
                + log_p(count_p_torsion(&torsion(k + 1), p), p),
        );
    }
    dims
}

#[test]
fn coefficient_reduction_matches_uct_count() {
    for m in catalog() {
        if cohomology_ring(&m, CoefficientRing::Integers).is_err() {
            continue;
        }
        for p in [2, 3, 5, 7] {
            let prime = Prime::new(p).unwrap();
            let expected = uct_dims(&m, p);
            let integral = cohomology_ring(&m, CoefficientRing::Integers).unwrap();
            let reduced = reduce_coefficients(&integral, prime).unwrap();
            assert_eq!(reduced.poincare_polynomial(), expected, "{m} mod {p}");
            let direct = cohomology_ring(&m, CoefficientRing::PrimeField(prime)).unwrap();
            assert_eq!(direct.poincare_polynomial(), expected, "{m} over Z_{p}");
            for k in 1..=direct.top_degree() {
                assert_eq!(reduced.module(k), direct.module(k));
            }
            assert_eq!(reduced.check_axioms(), Ok(()), "{m} mod {p}");
        }
    }
}

#[test]
fn tensor_dims_multiply() {
    let list = catalog();
    for p in [2, 3] {
        let r = CoefficientRing::prime_field(p).unwrap();
        for a in list.iter().take(10) {
            for b in list.iter().take(6) {
                let ra = cohomology_ring(a, r).unwrap();
                let rb = cohomology_ring(b, r).unwrap();
                let t = tensor_product(&ra, &rb).unwrap();
                let (pa, pb) = (ra.poincare_polynomial(), rb.poincare_polynomial());
                let mut expected = vec![0; pa.len() + pb.len() - 1];
                for (i, x) in pa.iter().enumerate() {
                    for (j, y) in pb.iter().enumerate() {
                        expected[i + j] += x * y;
                    }
                }
                assert_eq!(t.poincare_polynomial(), expected, "{a} x {b}");
                assert_eq!(t.check_axioms(), Ok(()), "{a} x {b}");
            }
        }
    }
}

#[test]
fn crossing_lens_with_torus_over_integers() {
    use ManifoldExpr::*;
    for n in 4..=6 {
        let m = ManifoldExpr::product(Lens(5), Torus(n - 3));
        let r = cohomology_ring(&m, CoefficientRing::Integers).unwrap();
        assert_eq!(r.module(1).rank(), n - 3);
        assert!(r.module(1).torsion().is_empty());
        assert_eq!(r.check_axioms(), Ok(()));
    }
}
