use super::coeff::{CoefficientRing, Prime};
use super::ring::GradedRing;
use crate::error::{Error, Result};

/// Cohomology ring of a wedge: modules add degreewise, products stay inside
/// each summand and cross products vanish.
pub fn direct_sum(a: &GradedRing, b: &GradedRing) -> Result<GradedRing> {
    if a.coefficients() != b.coefficients() {
        return Err(Error::CoefficientMismatch {
            left: a.coefficients(),
            right: b.coefficients(),
        });
    }
    let mut out = GradedRing::new(a.coefficients(), a.top_degree().max(b.top_degree()));
    let field = a.coefficients().is_field();
    let order = |o: u64| if field { 0 } else { o };
    for g in a.generators().iter().chain(b.generators()) {
        out.add_generator(g.degree, order(g.order), g.label.clone())?;
    }
    let shift = a.len();
    for (&(x, y), c) in a.products() {
        out.set_product(x, y, c)?;
    }
    for (&(x, y), c) in b.products() {
        let shifted: Vec<(usize, i64)> = c.iter().map(|&(g, k)| (g + shift, k)).collect();
        out.set_product(x + shift, y + shift, &shifted)?;
    }
    Ok(out)
}

/// Graded tensor product of the unreduced rings, re-reduced.
///
/// Generators of the result are pairs `x⊗y` where either side may be the
/// unit, excluding `1⊗1`; multiplication follows the Koszul rule
/// `(x⊗y)(x'⊗y') = (-1)^{|y||x'|} (xx')⊗(yy')`. Over `Z` one factor must be
/// torsion-free, so no Tor terms arise.
pub fn tensor_product(a: &GradedRing, b: &GradedRing) -> Result<GradedRing> {
    if a.coefficients() != b.coefficients() {
        return Err(Error::CoefficientMismatch {
            left: a.coefficients(),
            right: b.coefficients(),
        });
    }
    let integral = a.coefficients() == CoefficientRing::Integers;
    if integral && !a.is_torsion_free() && !b.is_torsion_free() {
        return Err(Error::UnsupportedTensor);
    }

    // unreduced bases: index 0 is the unit, i + 1 is generator i
    let deg_a = |x: usize| if x == 0 { 0 } else { a.generators()[x - 1].degree };
    let deg_b = |y: usize| if y == 0 { 0 } else { b.generators()[y - 1].degree };
    let ord_a = |x: usize| if x == 0 { 0 } else { a.generators()[x - 1].order };
    let ord_b = |y: usize| if y == 0 { 0 } else { b.generators()[y - 1].order };
    let lab_a = |x: usize| if x == 0 { "1".to_string() } else { a.generators()[x - 1].label.clone() };
    let lab_b = |y: usize| if y == 0 { "1".to_string() } else { b.generators()[y - 1].label.clone() };

    let mut out = GradedRing::new(a.coefficients(), a.top_degree() + b.top_degree());
    let width = b.len() + 1;
    let mut index = vec![None; (a.len() + 1) * width];
    for x in 0..=a.len() {
        for y in 0..=b.len() {
            if x == 0 && y == 0 {
                continue;
            }
            let order = if integral { ord_a(x).max(ord_b(y)) } else { 0 };
            let label = format!("{}⊗{}", lab_a(x), lab_b(y));
            index[x * width + y] = Some(out.add_generator(deg_a(x) + deg_b(y), order, label)?);
        }
    }

    let unreduced_mul = |r: &GradedRing, x: usize, y: usize| -> Vec<(usize, i64)> {
        match (x, y) {
            (0, y) => vec![(y, 1)],
            (x, 0) => vec![(x, 1)],
            (x, y) => r
                .mul_generators(x - 1, y - 1)
                .into_iter()
                .enumerate()
                .filter(|&(_, c)| c != 0)
                .map(|(g, c)| (g + 1, c))
                .collect(),
        }
    };

    for x in 0..=a.len() {
        for y in 0..=b.len() {
            let Some(left) = index[x * width + y] else { continue };
            for x2 in 0..=a.len() {
                for y2 in 0..=b.len() {
                    let Some(right) = index[x2 * width + y2] else { continue };
                    if deg_a(x) + deg_b(y) + deg_a(x2) + deg_b(y2) > out.top_degree() {
                        continue;
                    }
                    let sign = if (deg_b(y) * deg_a(x2)) % 2 == 1 { -1 } else { 1 };
                    let xs = unreduced_mul(a, x, x2);
                    let ys = unreduced_mul(b, y, y2);
                    let mut combo = Vec::new();
                    for &(u, cu) in &xs {
                        for &(v, cv) in &ys {
                            let target = index[u * width + v]
                                .expect("product of non-units is never the unit");
                            combo.push((target, sign * cu * cv));
                        }
                    }
                    if !combo.is_empty() {
                        out.set_product(left, right, &combo)?;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Passes an integral ring to `Z_p` coefficients by the universal coefficient
/// theorem: a free or p-divisible torsion summand in degree k reduces to a
/// class in degree k, and p-divisible torsion in degree k+1 contributes a
/// further class in degree k. Products of reduced classes are the residues
/// of the integral constants; the extra classes multiply to zero because
/// the integral ring does not determine their products.
pub fn reduce_coefficients(a: &GradedRing, p: Prime) -> Result<GradedRing> {
    if a.coefficients() != CoefficientRing::Integers {
        return Err(Error::Unsupported(format!(
            "coefficient reduction starts from Z, got {}",
            a.coefficients()
        )));
    }
    let pv = p.get();
    let mut out = GradedRing::new(CoefficientRing::PrimeField(p), a.top_degree());
    let mut image = vec![None; a.len()];
    for (i, g) in a.generators().iter().enumerate() {
        if g.order == 0 || g.order % pv == 0 {
            image[i] = Some(out.add_generator(g.degree, 0, g.label.clone())?);
        }
        if g.order != 0 && g.order % pv == 0 && g.degree >= 2 {
            out.add_generator(g.degree - 1, 0, format!("tor({})", g.label))?;
        }
    }
    for (&(x, y), combo) in a.products() {
        let (Some(rx), Some(ry)) = (image[x], image[y]) else { continue };
        let reduced: Vec<(usize, i64)> = combo
            .iter()
            .filter_map(|&(g, c)| image[g].map(|rg| (rg, c)))
            .collect();
        out.set_product(rx, ry, &reduced)?;
    }
    Ok(out)
}
