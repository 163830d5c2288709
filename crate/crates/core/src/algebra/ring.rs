//! Reduced graded-commutative rings given by generators and structure constants.

use std::collections::BTreeMap;
use std::fmt;

use super::coeff::CoefficientRing;
use super::linalg::Matrix;
use super::module::FinModule;
use crate::error::{Error, Result};

/// One cyclic summand of the underlying module.
///
/// `order` is 0 for a free summand over `Z`, `d >= 2` for a `Z_d` summand,
/// and `p` for a basis vector over `Z_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub degree: usize,
    pub order: u64,
    pub label: String,
}

/// A linear combination of generators, as `(generator index, coefficient)`.
pub type Combination = Vec<(usize, i64)>;

/// Reduced cohomology ring `H̃^*(X; R)` in degrees `1..=top_degree`.
///
/// Elements are dense coefficient vectors indexed by generator. There is no
/// unit: degree 0 is absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRing {
    coefficients: CoefficientRing,
    top_degree: usize,
    generators: Vec<Generator>,
    products: BTreeMap<(usize, usize), Combination>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    Commutativity { left: String, right: String },
    Associativity { a: String, b: String, c: String },
    Annihilator { torsion: String, other: String },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::Commutativity { left, right } => {
                write!(f, "graded commutativity fails for {left}, {right}")
            }
            AxiomViolation::Associativity { a, b, c } => {
                write!(f, "associativity fails for {a}, {b}, {c}")
            }
            AxiomViolation::Annihilator { torsion, other } => {
                write!(f, "annihilator of {torsion} does not kill its product with {other}")
            }
        }
    }
}

impl GradedRing {
    pub fn new(coefficients: CoefficientRing, top_degree: usize) -> Self {
        GradedRing {
            coefficients,
            top_degree,
            generators: Vec::new(),
            products: BTreeMap::new(),
        }
    }

    /// Adds a cyclic generator. `order` follows the `Generator` convention
    /// over `Z`; over `Z_p` pass 0 (a basis vector).
    pub fn add_generator(&mut self, degree: usize, order: u64, label: impl Into<String>) -> Result<usize> {
        if degree == 0 || degree > self.top_degree {
            return Err(Error::DegreeOutOfRange {
                degree,
                top: self.top_degree,
            });
        }
        let order = match self.coefficients {
            CoefficientRing::Integers => {
                if order == 1 {
                    return Err(Error::Unsupported("a generator of order 1 is zero".into()));
                }
                order
            }
            CoefficientRing::PrimeField(p) => {
                if order != 0 && order != p.get() {
                    return Err(Error::Unsupported(format!(
                        "generator of order {order} over {}",
                        self.coefficients
                    )));
                }
                p.get()
            }
        };
        self.generators.push(Generator {
            degree,
            order,
            label: label.into(),
        });
        Ok(self.generators.len() - 1)
    }

    /// Records `a · b = combination`. Degrees must add up.
    pub fn set_product(&mut self, a: usize, b: usize, combination: &[(usize, i64)]) -> Result<()> {
        let n = self.generators.len();
        if a >= n || b >= n {
            return Err(Error::Unsupported("product of unknown generators".into()));
        }
        let degree = self.generators[a].degree + self.generators[b].degree;
        let mut dense = vec![0i64; n];
        for &(g, c) in combination {
            let target = self
                .generators
                .get(g)
                .ok_or_else(|| Error::Unsupported("product lands on unknown generator".into()))?;
            if target.degree != degree {
                return Err(Error::Unsupported(format!(
                    "{} · {} has degree {degree} but {} has degree {}",
                    self.generators[a].label, self.generators[b].label, target.label, target.degree
                )));
            }
            dense[g] += c;
        }
        self.normalize(&mut dense);
        let sparse = to_sparse(&dense);
        if sparse.is_empty() {
            self.products.remove(&(a, b));
        } else {
            self.products.insert((a, b), sparse);
        }
        Ok(())
    }

    pub fn coefficients(&self) -> CoefficientRing {
        self.coefficients
    }

    pub fn top_degree(&self) -> usize {
        self.top_degree
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators_in_degree(&self, k: usize) -> Vec<usize> {
        (0..self.generators.len())
            .filter(|&i| self.generators[i].degree == k)
            .collect()
    }

    /// Stored nonzero structure constants.
    pub fn products(&self) -> impl Iterator<Item = (&(usize, usize), &Combination)> {
        self.products.iter()
    }

    pub fn module(&self, k: usize) -> FinModule {
        let orders: Vec<u64> = self
            .generators_in_degree(k)
            .into_iter()
            .map(|i| match self.coefficients {
                CoefficientRing::Integers => self.generators[i].order,
                CoefficientRing::PrimeField(_) => 0,
            })
            .collect();
        FinModule::from_cyclic_orders(self.coefficients, &orders)
    }

    pub fn is_torsion_free(&self) -> bool {
        match self.coefficients {
            CoefficientRing::Integers => self.generators.iter().all(|g| g.order == 0),
            CoefficientRing::PrimeField(_) => true,
        }
    }

    /// Number of generators in each degree `0..=top`, counting the unit in degree 0.
    pub fn poincare_polynomial(&self) -> Vec<usize> {
        let mut dims = vec![0usize; self.top_degree + 1];
        dims[0] = 1;
        for g in &self.generators {
            dims[g.degree] += 1;
        }
        dims
    }

    /// Reduces every coefficient modulo the order of its generator.
    pub fn normalize(&self, v: &mut [i64]) {
        for (c, g) in v.iter_mut().zip(&self.generators) {
            if g.order != 0 {
                *c = c.rem_euclid(g.order as i64);
            }
        }
    }

    pub fn zero_element(&self) -> Vec<i64> {
        vec![0; self.generators.len()]
    }

    pub fn basis_element(&self, g: usize) -> Vec<i64> {
        let mut v = self.zero_element();
        v[g] = 1;
        v
    }

    pub fn mul_generators(&self, a: usize, b: usize) -> Vec<i64> {
        let mut out = self.zero_element();
        if let Some(c) = self.products.get(&(a, b)) {
            for &(g, k) in c {
                out[g] = k;
            }
        }
        out
    }

    /// Bilinear extension of the stored products.
    pub fn mul(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let mut out = self.zero_element();
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for (b, &yb) in y.iter().enumerate() {
                if yb == 0 {
                    continue;
                }
                if let Some(c) = self.products.get(&(a, b)) {
                    for &(g, k) in c {
                        let term = i128::from(xa) * i128::from(yb) * i128::from(k);
                        let m = self.generators[g].order;
                        let term = if m == 0 {
                            term
                        } else {
                            term.rem_euclid(i128::from(m))
                        };
                        out[g] += i64::try_from(term).expect("coefficient overflow");
                    }
                }
            }
        }
        self.normalize(&mut out);
        out
    }

    /// Checks graded commutativity, associativity and annihilator
    /// compatibility on every generator pair and triple.
    pub fn check_axioms(&self) -> std::result::Result<(), AxiomViolation> {
        let n = self.generators.len();
        let label = |i: usize| self.generators[i].label.clone();
        for a in 0..n {
            for b in 0..n {
                let da = self.generators[a].degree;
                let db = self.generators[b].degree;
                if da + db > self.top_degree {
                    continue;
                }
                let ab = self.mul_generators(a, b);
                let mut ba = self.mul_generators(b, a);
                if (da * db) % 2 == 1 {
                    ba.iter_mut().for_each(|c| *c = -*c);
                }
                self.normalize(&mut ba);
                if ab != ba {
                    return Err(AxiomViolation::Commutativity {
                        left: label(a),
                        right: label(b),
                    });
                }
                let d = self.generators[a].order;
                if self.coefficients == CoefficientRing::Integers && d != 0 {
                    let mut scaled: Vec<i64> = ab.iter().map(|c| c * d as i64).collect();
                    self.normalize(&mut scaled);
                    if scaled.iter().any(|&c| c != 0) {
                        return Err(AxiomViolation::Annihilator {
                            torsion: label(a),
                            other: label(b),
                        });
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul_generators(a, b);
                for c in 0..n {
                    let total = self.generators[a].degree
                        + self.generators[b].degree
                        + self.generators[c].degree;
                    if total > self.top_degree {
                        continue;
                    }
                    let left = self.mul(&ab, &self.basis_element(c));
                    let bc = self.mul_generators(b, c);
                    let right = self.mul(&self.basis_element(a), &bc);
                    if left != right {
                        return Err(AxiomViolation::Associativity {
                            a: label(a),
                            b: label(b),
                            c: label(c),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Matrix of the cup pairing `H^k × H^{n-k} → H^n` over a field, with
    /// rows indexed by degree-`k` generators. `None` unless the top degree
    /// has exactly one generator.
    pub fn pairing_matrix(&self, k: usize) -> Option<Matrix> {
        let p = self.coefficients.characteristic();
        if p == 0 || k == 0 || k >= self.top_degree {
            return None;
        }
        let top = self.generators_in_degree(self.top_degree);
        let [top] = top[..] else {
            return None;
        };
        let left = self.generators_in_degree(k);
        let right = self.generators_in_degree(self.top_degree - k);
        let rows: Vec<Vec<i64>> = left
            .iter()
            .map(|&a| right.iter().map(|&b| self.mul_generators(a, b)[top]).collect())
            .collect();
        let mut m = Matrix::zeros(left.len(), right.len(), p);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Some(m)
    }

    /// True when every pairing `H^k × H^{n-k} → H^n`, `0 < k < n`, is perfect.
    pub fn satisfies_poincare_duality(&self) -> bool {
        (1..self.top_degree).all(|k| {
            let Some(m) = self.pairing_matrix(k) else {
                return false;
            };
            m.rows() == m.cols() && m.rank() == m.rows()
        })
    }

    /// Copy with every label prefixed by `prefix`.
    pub fn with_label_prefix(&self, prefix: &str) -> GradedRing {
        let mut r = self.clone();
        for g in &mut r.generators {
            g.label = format!("{prefix}{}", g.label);
        }
        r
    }
}

fn to_sparse(dense: &[i64]) -> Combination {
    dense
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(g, &c)| (g, c))
        .collect()
}
