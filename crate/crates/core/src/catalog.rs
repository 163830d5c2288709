//! Closed oriented manifolds and their cohomology rings.

use std::fmt;

use crate::algebra::{direct_sum, tensor_product, CoefficientRing, GradedRing};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ManifoldExpr {
    /// `S^n`, n >= 2.
    Sphere(usize),
    /// The 3-dimensional lens space `L(k,1)`, k >= 1.
    Lens(u64),
    /// Closed orientable surface of genus g.
    Surface(u64),
    /// `T^k`, k >= 1.
    Torus(usize),
    /// An unspecified 3-manifold with the `Z_p`-cohomology of `S^3`.
    /// Only its `Z_p` ring is modeled.
    HomologySphere3(u64),
    Product(Box<ManifoldExpr>, Box<ManifoldExpr>),
    ConnSum(Box<ManifoldExpr>, Box<ManifoldExpr>),
}

impl ManifoldExpr {
    pub fn product(a: ManifoldExpr, b: ManifoldExpr) -> Self {
        ManifoldExpr::Product(Box::new(a), Box::new(b))
    }

    pub fn conn_sum(a: ManifoldExpr, b: ManifoldExpr) -> Self {
        ManifoldExpr::ConnSum(Box::new(a), Box::new(b))
    }

    pub fn dimension(&self) -> Result<usize> {
        match self {
            ManifoldExpr::Sphere(n) if *n >= 2 => Ok(*n),
            ManifoldExpr::Sphere(n) => Err(Error::InvalidManifold(format!(
                "S({n}): sphere dimension must be at least 2"
            ))),
            ManifoldExpr::Lens(0) => Err(Error::InvalidManifold("L(0) is not a lens space".into())),
            ManifoldExpr::Lens(_) => Ok(3),
            ManifoldExpr::Surface(_) => Ok(2),
            ManifoldExpr::Torus(0) => Err(Error::InvalidManifold("T(0) is a point".into())),
            ManifoldExpr::Torus(k) => Ok(*k),
            ManifoldExpr::HomologySphere3(p) => {
                crate::algebra::Prime::new(*p)?;
                Ok(3)
            }
            ManifoldExpr::Product(a, b) => Ok(a.dimension()? + b.dimension()?),
            ManifoldExpr::ConnSum(a, b) => {
                let (da, db) = (a.dimension()?, b.dimension()?);
                if da != db {
                    return Err(Error::DimensionMismatch { left: da, right: db });
                }
                if da < 2 {
                    return Err(Error::InvalidManifold(
                        "connected sum needs dimension at least 2".into(),
                    ));
                }
                Ok(da)
            }
        }
    }

    /// True for expressions that normalize to a standard sphere.
    pub fn is_sphere(&self) -> bool {
        matches!(
            self,
            ManifoldExpr::Sphere(_) | ManifoldExpr::Lens(1) | ManifoldExpr::Surface(0)
        )
    }

    /// Canonical representative: `L(1)` and `Sigma(0)` become spheres,
    /// connected sums are flattened and sorted with sphere summands dropped,
    /// and surface sums add genera.
    pub fn normalize(&self) -> Result<ManifoldExpr> {
        self.dimension()?;
        Ok(match self {
            ManifoldExpr::Lens(1) => ManifoldExpr::Sphere(3),
            ManifoldExpr::Surface(0) => ManifoldExpr::Sphere(2),
            ManifoldExpr::Product(a, b) => ManifoldExpr::product(a.normalize()?, b.normalize()?),
            ManifoldExpr::ConnSum(..) => {
                let n = self.dimension()?;
                let mut summands = Vec::new();
                self.collect_summands(&mut summands)?;
                summands.retain(|m| !m.is_sphere());
                if n == 2 && summands.iter().all(|m| genus(m).is_some()) {
                    let g: u64 = summands.iter().filter_map(genus).sum();
                    return Ok(if g == 0 {
                        ManifoldExpr::Sphere(2)
                    } else {
                        ManifoldExpr::Surface(g)
                    });
                }
                summands.sort();
                let mut it = summands.into_iter();
                match it.next() {
                    None => ManifoldExpr::Sphere(n),
                    Some(first) => it.fold(first, ManifoldExpr::conn_sum),
                }
            }
            other => other.clone(),
        })
    }

    fn collect_summands(&self, out: &mut Vec<ManifoldExpr>) -> Result<()> {
        match self {
            ManifoldExpr::ConnSum(a, b) => {
                a.collect_summands(out)?;
                b.collect_summands(out)
            }
            other => {
                out.push(other.normalize()?);
                Ok(())
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            ManifoldExpr::ConnSum(..) => 1,
            ManifoldExpr::Product(..) => 2,
            _ => 3,
        }
    }
}

fn genus(m: &ManifoldExpr) -> Option<u64> {
    match m {
        ManifoldExpr::Surface(g) => Some(*g),
        ManifoldExpr::Torus(2) => Some(1),
        _ => None,
    }
}

impl fmt::Display for ManifoldExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let operand = |f: &mut fmt::Formatter<'_>, m: &ManifoldExpr, min: u8| {
            if m.precedence() < min {
                write!(f, "({m})")
            } else {
                write!(f, "{m}")
            }
        };
        match self {
            ManifoldExpr::Sphere(n) => write!(f, "S({n})"),
            ManifoldExpr::Lens(k) => write!(f, "L({k})"),
            ManifoldExpr::Surface(g) => write!(f, "Sigma({g})"),
            ManifoldExpr::Torus(k) => write!(f, "T({k})"),
            ManifoldExpr::HomologySphere3(p) => write!(f, "HS({p})"),
            ManifoldExpr::Product(a, b) => {
                operand(f, a, 2)?;
                write!(f, " x ")?;
                operand(f, b, 3)
            }
            ManifoldExpr::ConnSum(a, b) => {
                operand(f, a, 1)?;
                write!(f, " # ")?;
                operand(f, b, 2)
            }
        }
    }
}

pub fn dimension(m: &ManifoldExpr) -> Result<usize> {
    m.dimension()
}

/// Reduced cohomology ring of `m` with coefficients in `r`.
pub fn cohomology_ring(m: &ManifoldExpr, r: CoefficientRing) -> Result<GradedRing> {
    let m = m.normalize()?;
    ring_of(&m, r)
}

fn ring_of(m: &ManifoldExpr, r: CoefficientRing) -> Result<GradedRing> {
    match m {
        ManifoldExpr::Sphere(n) => sphere(*n, r),
        ManifoldExpr::Lens(k) => lens(*k, r),
        ManifoldExpr::Surface(g) => surface(*g, r),
        ManifoldExpr::Torus(k) => torus(*k, r),
        ManifoldExpr::HomologySphere3(p) => match r {
            CoefficientRing::PrimeField(q) if q.get() == *p => sphere(3, r),
            _ => Err(Error::UnsupportedCoefficients {
                manifold: m.to_string(),
                ring: r,
            }),
        },
        ManifoldExpr::Product(a, b) => tensor_product(&ring_of(a, r)?, &ring_of(b, r)?),
        ManifoldExpr::ConnSum(a, b) => connected_sum(&ring_of(a, r)?, &ring_of(b, r)?),
    }
}

fn sphere(n: usize, r: CoefficientRing) -> Result<GradedRing> {
    let mut ring = GradedRing::new(r, n);
    ring.add_generator(n, 0, "s")?;
    Ok(ring)
}

/// `L(k,1)`. Over `Z`: `Z_k` in degree 2 and `Z` in degree 3. Over `Z_p`
/// with `p | k`: classes a, b, c in degrees 1, 2, 3 with `ab = ba = c`;
/// `a^2 = b` when `p = 2` and `k ≡ 2 (mod 4)`, otherwise `a^2 = 0`.
/// When `p ∤ k` only degree 3 survives.
fn lens(k: u64, r: CoefficientRing) -> Result<GradedRing> {
    let mut ring = GradedRing::new(r, 3);
    match r {
        CoefficientRing::Integers => {
            if k > 1 {
                ring.add_generator(2, k, "b")?;
            }
            ring.add_generator(3, 0, "c")?;
        }
        CoefficientRing::PrimeField(p) => {
            let p = p.get();
            if k.is_multiple_of(p) {
                let a = ring.add_generator(1, 0, "a")?;
                let b = ring.add_generator(2, 0, "b")?;
                let c = ring.add_generator(3, 0, "c")?;
                ring.set_product(a, b, &[(c, 1)])?;
                ring.set_product(b, a, &[(c, 1)])?;
                if p == 2 && k % 4 == 2 {
                    ring.set_product(a, a, &[(b, 1)])?;
                }
            } else {
                ring.add_generator(3, 0, "c")?;
            }
        }
    }
    Ok(ring)
}

/// Symplectic basis `a_i, b_i` with `a_i b_i = F = -b_i a_i`.
fn surface(g: u64, r: CoefficientRing) -> Result<GradedRing> {
    let mut ring = GradedRing::new(r, 2);
    let mut pairs = Vec::new();
    for i in 1..=g {
        let a = ring.add_generator(1, 0, format!("a{i}"))?;
        let b = ring.add_generator(1, 0, format!("b{i}"))?;
        pairs.push((a, b));
    }
    let top = ring.add_generator(2, 0, "F")?;
    for (a, b) in pairs {
        ring.set_product(a, b, &[(top, 1)])?;
        ring.set_product(b, a, &[(top, -1)])?;
    }
    Ok(ring)
}

/// Exterior algebra on k degree-1 classes; generator `e_S` per nonempty subset S.
fn torus(k: usize, r: CoefficientRing) -> Result<GradedRing> {
    let mut ring = GradedRing::new(r, k);
    let subsets: Vec<u32> = (1u32..(1 << k)).collect();
    let mut index = vec![usize::MAX; 1 << k];
    let mut by_degree = subsets.clone();
    by_degree.sort_by_key(|s| (s.count_ones(), *s));
    for s in by_degree {
        let label: String = (0..k)
            .filter(|i| s & (1 << i) != 0)
            .map(|i| format!("t{}", i + 1))
            .collect::<Vec<_>>()
            .join("");
        index[s as usize] = ring.add_generator(s.count_ones() as usize, 0, label)?;
    }
    for &s in &subsets {
        for &t in &subsets {
            if s & t != 0 {
                continue;
            }
            // sign of the shuffle putting S before T into increasing order
            let inversions: u32 = (0..k)
                .filter(|i| s & (1 << i) != 0)
                .map(|i| (t & ((1u32 << i) - 1)).count_ones())
                .sum();
            let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
            ring.set_product(index[s as usize], index[t as usize], &[(index[(s | t) as usize], sign)])?;
        }
    }
    Ok(ring)
}

/// `A # B`: degrees below the top are the direct sum with vanishing cross
/// products; both top classes are identified with the single top class.
fn connected_sum(a: &GradedRing, b: &GradedRing) -> Result<GradedRing> {
    let n = a.top_degree();
    if b.top_degree() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: b.top_degree(),
        });
    }
    let top_of = |r: &GradedRing| -> Result<usize> {
        match r.generators_in_degree(n)[..] {
            [t] if r.generators()[t].order == 0 || r.coefficients().is_field() => Ok(t),
            _ => Err(Error::Unsupported(
                "connected sum needs a closed oriented summand".into(),
            )),
        }
    };
    let (ta, tb) = (top_of(a)?, top_of(b)?);
    let mut below_a = a.clone();
    let mut below_b = b.clone();
    strip_top(&mut below_a)?;
    strip_top(&mut below_b)?;
    let sum = direct_sum(&below_a, &below_b)?;

    let mut out = GradedRing::new(a.coefficients(), n);
    let field = a.coefficients().is_field();
    for g in sum.generators() {
        out.add_generator(g.degree, if field { 0 } else { g.order }, g.label.clone())?;
    }
    let top = out.add_generator(n, 0, "[M]")?;
    for (&(x, y), c) in sum.products() {
        out.set_product(x, y, c)?;
    }
    // products landing in the top degree go through each summand's top class
    let lower_a = lower_generators(a, n);
    let lower_b = lower_generators(b, n);
    for (ring, lower, t, offset) in [(a, &lower_a, ta, 0usize), (b, &lower_b, tb, lower_a.len())] {
        for (ix, &x) in lower.iter().enumerate() {
            for (iy, &y) in lower.iter().enumerate() {
                if ring.generators()[x].degree + ring.generators()[y].degree != n {
                    continue;
                }
                let c = ring.mul_generators(x, y)[t];
                if c != 0 {
                    out.set_product(offset + ix, offset + iy, &[(top, c)])?;
                }
            }
        }
    }
    Ok(out)
}

fn lower_generators(r: &GradedRing, n: usize) -> Vec<usize> {
    (0..r.len()).filter(|&i| r.generators()[i].degree < n).collect()
}

/// Rebuilds `r` without its top-degree generators (products into the top dropped).
fn strip_top(r: &mut GradedRing) -> Result<()> {
    let n = r.top_degree();
    let keep = lower_generators(r, n);
    let mut out = GradedRing::new(r.coefficients(), n);
    let field = r.coefficients().is_field();
    let mut image = vec![None; r.len()];
    for &i in &keep {
        let g = &r.generators()[i];
        image[i] = Some(out.add_generator(g.degree, if field { 0 } else { g.order }, g.label.clone())?);
    }
    for (&(x, y), c) in r.products() {
        let (Some(ix), Some(iy)) = (image[x], image[y]) else { continue };
        let mapped: Vec<(usize, i64)> = c
            .iter()
            .filter_map(|&(g, k)| image[g].map(|ig| (ig, k)))
            .collect();
        if !mapped.is_empty() {
            out.set_product(ix, iy, &mapped)?;
        }
    }
    *r = out;
    Ok(())
}
