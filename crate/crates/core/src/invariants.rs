//! Proper-homotopy invariants extracted from end algebras.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::linalg::span_rank;
use crate::algebra::{CoefficientRing, FinModule, Prime};
use crate::error::{Error, Result};
use crate::ladder::{csi, end_algebra, EndAlgebra, Space};

/// `dim_{Z_p} Γ_p`: the dimension of the span, in the top degree, of all
/// products of two classes of lower degree.
///
/// Symbolic classes multiply to zero and the finite part of the top degree
/// injects into the quotient by the relation subgroup, so the span is
/// computed inside the direct sum of the cross-section top classes.
pub fn gamma_dim(e: &EndAlgebra) -> Result<usize> {
    let p = match e.coefficients() {
        CoefficientRing::PrimeField(p) => p.get(),
        other => return Err(Error::RequiresField(other)),
    };
    let n = e.n();
    let ring = e.finite_part();
    let tops = e.top_generators();
    let mut vectors = Vec::new();
    for (a, ga) in ring.generators().iter().enumerate() {
        if ga.degree >= n {
            continue;
        }
        for b in ring.generators_in_degree(n - ga.degree) {
            let product = ring.mul_generators(a, b);
            let v: Vec<i64> = tops.iter().map(|&t| product[t]).collect();
            if v.iter().any(|&c| c != 0) {
                vectors.push(v);
            }
        }
    }
    Ok(span_rank(&vectors, p))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeOne {
    /// Finite part of `H^1_∞(M; Z)`.
    pub finite: FinModule,
    /// At least one `Z[[τ]]/Z[τ]` summand is present.
    pub uncountable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantSummary {
    /// Cross-section dimension.
    pub n: usize,
    pub coefficients: Vec<CoefficientRing>,
    pub degree1: DegreeOne,
    /// `H^k_∞(M; Z)` for `2 <= k <= n-1`.
    pub middle: BTreeMap<usize, FinModule>,
    /// At least one `Z[[σ]]` summand is present in the top degree.
    pub top_uncountable: bool,
    /// `dim_{Z_p} Γ_p` per prime.
    pub gamma: BTreeMap<u64, usize>,
}

pub fn summarize(s: &Space, primes: &[u64]) -> Result<InvariantSummary> {
    let integral = end_algebra(s, CoefficientRing::Integers)?;
    let n = s.dimension();
    let d1 = integral.degree(1)?;
    let mut middle = BTreeMap::new();
    for k in 2..n {
        middle.insert(k, integral.degree(k)?.finite);
    }
    let mut coefficients = vec![CoefficientRing::Integers];
    let mut gamma = BTreeMap::new();
    for &p in primes {
        let ring = CoefficientRing::PrimeField(Prime::new(p)?);
        if gamma.contains_key(&p) {
            continue;
        }
        coefficients.push(ring);
        gamma.insert(p, gamma_dim(&end_algebra(s, ring)?)?);
    }
    Ok(InvariantSummary {
        n,
        coefficients,
        degree1: DegreeOne {
            finite: d1.finite,
            uncountable: d1.tau_summands > 0,
        },
        middle,
        top_uncountable: integral.degree(n)?.sigma_summands > 0,
        gamma,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Witness {
    Middle(usize),
    DegreeOneFinite,
    DegreeOneUncountable,
    TopUncountable,
    Gamma(u64),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Middle(k) => write!(f, "H^{k}"),
            Witness::DegreeOneFinite => write!(f, "H^1 finite part"),
            Witness::DegreeOneUncountable => write!(f, "H^1 uncountable summand"),
            Witness::TopUncountable => write!(f, "H^n uncountable summand"),
            Witness::Gamma(p) => write!(f, "gamma[{p}]"),
        }
    }
}

impl Serialize for Witness {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Some compared invariant differs; the spaces are not proper homotopy equivalent.
    Distinguished(Vec<Witness>),
    /// Every compared invariant agrees. This is not a proof of equivalence.
    NotDistinguished,
}

impl Verdict {
    pub fn is_distinguished(&self) -> bool {
        matches!(self, Verdict::Distinguished(_))
    }

    pub fn witnesses(&self) -> &[Witness] {
        match self {
            Verdict::Distinguished(w) => w,
            Verdict::NotDistinguished => &[],
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Distinguished(w) => {
                let w: Vec<String> = w.iter().map(ToString::to_string).collect();
                write!(f, "DISTINGUISHED by {}", w.join(", "))
            }
            Verdict::NotDistinguished => write!(f, "not distinguished by computed invariants"),
        }
    }
}

/// Compares two summaries field by field. The τ-summand count and the
/// integral top-degree quotient are not compared; only gamma values at
/// primes present in both summaries are.
pub fn distinguish(a: &InvariantSummary, b: &InvariantSummary) -> Result<Verdict> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch {
            left: a.n,
            right: b.n,
        });
    }
    let mut witnesses = Vec::new();
    for (k, m) in &a.middle {
        if b.middle.get(k) != Some(m) {
            witnesses.push(Witness::Middle(*k));
        }
    }
    if a.degree1.finite != b.degree1.finite {
        witnesses.push(Witness::DegreeOneFinite);
    }
    if a.degree1.uncountable != b.degree1.uncountable {
        witnesses.push(Witness::DegreeOneUncountable);
    }
    if a.top_uncountable != b.top_uncountable {
        witnesses.push(Witness::TopUncountable);
    }
    for (p, g) in &a.gamma {
        if let Some(h) = b.gamma.get(p) {
            if g != h {
                witnesses.push(Witness::Gamma(*p));
            }
        }
    }
    Ok(if witnesses.is_empty() {
        Verdict::NotDistinguished
    } else {
        Verdict::Distinguished(witnesses)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    /// Node of the first copy carrying the ray.
    pub first: usize,
    /// Node of the second copy carrying the ray.
    pub second: usize,
    pub summary: InvariantSummary,
    /// Index of the row's class; rows share a class iff not distinguished.
    pub class: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub rows: Vec<CensusRow>,
    pub distinct: usize,
}

/// Summarizes `csi(s, u, s, v)` for every unordered pair of nodes `{u, v}`
/// and counts the classes of pairwise-distinguished summaries.
pub fn self_csi_census(s: &Space, primes: &[u64]) -> Result<Census> {
    if primes.is_empty() {
        return Err(Error::EmptyPrimeList);
    }
    let n = s.nodes().len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u..n).map(move |v| (u, v))).collect();
    let summaries: Vec<InvariantSummary> = pairs
        .par_iter()
        .map(|&(u, v)| summarize(&csi(s, u, s, v)?, primes))
        .collect::<Result<_>>()?;

    let mut classes: Vec<&InvariantSummary> = Vec::new();
    let mut rows = Vec::with_capacity(pairs.len());
    for (&(first, second), summary) in pairs.iter().zip(&summaries) {
        let mut class = None;
        for (i, rep) in classes.iter().enumerate() {
            if !distinguish(rep, summary)?.is_distinguished() {
                class = Some(i);
                break;
            }
        }
        let class = class.unwrap_or_else(|| {
            classes.push(summary);
            classes.len() - 1
        });
        rows.push(CensusRow {
            first,
            second,
            summary: summary.clone(),
            class,
        });
    }
    Ok(Census {
        distinct: classes.len(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::ManifoldExpr::{self, *};
    use crate::ladder::{generalized_capped_ladder, make_ladder, make_stringer};

    fn zp(p: u64) -> CoefficientRing {
        CoefficientRing::prime_field(p).unwrap()
    }

    fn gamma(s: &Space, p: u64) -> usize {
        gamma_dim(&end_algebra(s, zp(p)).unwrap()).unwrap()
    }

    #[test]
    fn lens_ladders() {
        for p in [2, 3, 5] {
            let summed = make_ladder(ManifoldExpr::conn_sum(Lens(p), Lens(p)), Sphere(3)).unwrap();
            assert_eq!(gamma(&summed, p), 1);
            assert_eq!(gamma(&make_ladder(Lens(p), Lens(p)).unwrap(), p), 2);
        }
    }

    #[test]
    fn surface_ladders() {
        for p in [2, 7] {
            let s1 = make_ladder(ManifoldExpr::conn_sum(Surface(1), Surface(2)), Sphere(2)).unwrap();
            assert_eq!(gamma(&s1, p), 1);
            assert_eq!(gamma(&make_ladder(Surface(1), Surface(2)).unwrap(), p), 2);
        }
    }

    #[test]
    fn gamma_needs_a_field() {
        let e = end_algebra(&make_stringer(Lens(2)).unwrap(), CoefficientRing::Integers).unwrap();
        assert_eq!(gamma_dim(&e), Err(Error::RequiresField(CoefficientRing::Integers)));
    }

    #[test]
    fn sphere_ladder_has_no_products() {
        assert_eq!(gamma(&make_ladder(Sphere(3), Sphere(3)).unwrap(), 2), 0);
    }

    #[test]
    fn summaries_of_capped_spaces() {
        let y = summarize(&make_ladder(Lens(4), Sphere(3)).unwrap(), &[2]).unwrap();
        assert_eq!(y.middle[&2], FinModule::integral(0, &[4]));
        assert!(y.degree1.uncountable);
        assert!(y.top_uncountable);
        let z = summarize(&make_stringer(Lens(4)).unwrap(), &[2]).unwrap();
        assert_eq!(z.middle[&2], FinModule::integral(0, &[4]));
        assert!(z.degree1.finite.is_zero());
        assert!(!z.degree1.uncountable);
        let crossed = make_stringer(ManifoldExpr::product(Lens(3), Torus(2))).unwrap();
        assert_eq!(summarize(&crossed, &[3]).unwrap().degree1.finite, FinModule::integral(2, &[]));
    }

    #[test]
    fn distinguish_is_reflexive_and_witnessed() {
        let y = summarize(&make_ladder(Surface(1), Sphere(2)).unwrap(), &[2]).unwrap();
        assert_eq!(distinguish(&y, &y).unwrap(), Verdict::NotDistinguished);
        let z = summarize(&make_stringer(Surface(1)).unwrap(), &[2]).unwrap();
        let v = distinguish(&y, &z).unwrap();
        assert!(v.witnesses().contains(&Witness::DegreeOneUncountable));
        assert_eq!(distinguish(&z, &y).unwrap(), v);
        let other = summarize(&make_stringer(Lens(2)).unwrap(), &[2]).unwrap();
        assert!(distinguish(&y, &other).is_err());
    }

    #[test]
    fn verdict_wording() {
        assert_eq!(
            Verdict::Distinguished(vec![Witness::Gamma(2)]).to_string(),
            "DISTINGUISHED by gamma[2]"
        );
        assert_eq!(
            Verdict::NotDistinguished.to_string(),
            "not distinguished by computed invariants"
        );
    }

    #[test]
    fn census_of_two_lens_ladder() {
        let c = self_csi_census(&generalized_capped_ladder(&[2, 3]).unwrap(), &[2, 3]).unwrap();
        let rows: Vec<(usize, usize)> = c
            .rows
            .iter()
            .map(|r| (r.summary.gamma[&2], r.summary.gamma[&3]))
            .collect();
        assert_eq!(rows, vec![(1, 2), (2, 2), (2, 1)]);
        assert_eq!(c.distinct, 3);
    }

    #[test]
    fn census_of_sphere_stringer() {
        let c = self_csi_census(&make_stringer(Sphere(3)).unwrap(), &[2]).unwrap();
        assert_eq!(c.rows.len(), 1);
        assert_eq!(c.distinct, 1);
        assert!(self_csi_census(&make_stringer(Sphere(3)).unwrap(), &[]).is_err());
    }
}
