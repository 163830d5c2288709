use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::coeff::{CoefficientRing, Prime};
use super::snf::{smith_normal_form, IntMatrix};
use crate::error::{Error, Result};

/// A finitely generated module over `Z` or `Z_p`, always in canonical form.
///
/// Over `Z` the torsion is stored as an invariant-factor chain
/// `d_1 | d_2 | ... | d_t` with every `d_i >= 2`, so two modules are
/// isomorphic exactly when they compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(untagged)]
pub enum FinModule {
    Integral { free_rank: usize, torsion: Vec<u64> },
    Vector { prime: Prime, dimension: usize },
}

impl FinModule {
    /// An integral module `Z^free_rank ⊕ Z_{t_1} ⊕ ...`; the torsion orders
    /// need not be in canonical form, orders 0 are counted as free and
    /// orders 1 are dropped.
    pub fn integral(free_rank: usize, torsion: &[u64]) -> Self {
        let free_extra = torsion.iter().filter(|&&t| t == 0).count();
        let finite: Vec<u64> = torsion.iter().copied().filter(|&t| t != 0).collect();
        FinModule::Integral {
            free_rank: free_rank + free_extra,
            torsion: canonical_divisors(&finite),
        }
    }

    pub fn vector(prime: Prime, dimension: usize) -> Self {
        FinModule::Vector { prime, dimension }
    }

    pub fn zero(ring: CoefficientRing) -> Self {
        match ring {
            CoefficientRing::Integers => FinModule::integral(0, &[]),
            CoefficientRing::PrimeField(p) => FinModule::vector(p, 0),
        }
    }

    /// Builds the module presented by cyclic summands of the given orders
    /// (0 = free) over `ring`. Over a field every summand is one dimension.
    pub fn from_cyclic_orders(ring: CoefficientRing, orders: &[u64]) -> Self {
        match ring {
            CoefficientRing::Integers => FinModule::integral(0, orders),
            CoefficientRing::PrimeField(p) => FinModule::vector(p, orders.len()),
        }
    }

    pub fn coefficient_ring(&self) -> CoefficientRing {
        match self {
            FinModule::Integral { .. } => CoefficientRing::Integers,
            FinModule::Vector { prime, .. } => CoefficientRing::PrimeField(*prime),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FinModule::Integral { free_rank, torsion } => *free_rank == 0 && torsion.is_empty(),
            FinModule::Vector { dimension, .. } => *dimension == 0,
        }
    }

    /// Free rank over `Z`, dimension over a field.
    pub fn rank(&self) -> usize {
        match self {
            FinModule::Integral { free_rank, .. } => *free_rank,
            FinModule::Vector { dimension, .. } => *dimension,
        }
    }

    pub fn torsion(&self) -> &[u64] {
        match self {
            FinModule::Integral { torsion, .. } => torsion,
            FinModule::Vector { .. } => &[],
        }
    }

    /// Torsion submodule (zero over a field).
    pub fn torsion_part(&self) -> FinModule {
        match self {
            FinModule::Integral { torsion, .. } => FinModule::Integral {
                free_rank: 0,
                torsion: torsion.clone(),
            },
            FinModule::Vector { prime, .. } => FinModule::vector(*prime, 0),
        }
    }

    pub fn direct_sum(&self, other: &FinModule) -> Result<FinModule> {
        match (self, other) {
            (
                FinModule::Integral { free_rank: a, torsion: ta },
                FinModule::Integral { free_rank: b, torsion: tb },
            ) => {
                let all: Vec<u64> = ta.iter().chain(tb).copied().collect();
                Ok(FinModule::integral(a + b, &all))
            }
            (
                FinModule::Vector { prime: p, dimension: a },
                FinModule::Vector { prime: q, dimension: b },
            ) if p == q => Ok(FinModule::vector(*p, a + b)),
            _ => Err(Error::CoefficientMismatch {
                left: self.coefficient_ring(),
                right: other.coefficient_ring(),
            }),
        }
    }
}

impl fmt::Display for FinModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FinModule::Integral { free_rank, torsion } => {
                let mut parts = Vec::new();
                match free_rank {
                    0 => {}
                    1 => parts.push("Z".to_string()),
                    r => parts.push(format!("Z^{r}")),
                }
                parts.extend(torsion.iter().map(|d| format!("Z_{d}")));
                if parts.is_empty() {
                    write!(f, "0")
                } else {
                    write!(f, "{}", parts.join(" + "))
                }
            }
            FinModule::Vector { prime, dimension } => match dimension {
                0 => write!(f, "0"),
                1 => write!(f, "Z_{prime}"),
                d => write!(f, "(Z_{prime})^{d}"),
            },
        }
    }
}

/// Canonical invariant-factor chain of `Z_{o_1} ⊕ ... ⊕ Z_{o_t}` (all `o_i >= 1`),
/// computed through the Smith normal form of the diagonal relation matrix.
pub fn canonical_divisors(orders: &[u64]) -> Vec<u64> {
    debug_assert!(orders.iter().all(|&o| o >= 1));
    let n = orders.len();
    let mut m = IntMatrix::zeros(n, n);
    for (i, &o) in orders.iter().enumerate() {
        m[(i, i)] = BigInt::from(o);
    }
    smith_normal_form(&m)
        .invariant_factors()
        .into_iter()
        .filter(|d| !d.is_one())
        .map(|d| d.to_u64().expect("invariant factor fits in u64"))
        .collect()
}

/// Canonical form of a module given by its cyclic summands.
pub fn iso_class(ring: CoefficientRing, orders: &[u64]) -> FinModule {
    FinModule::from_cyclic_orders(ring, orders)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_already() {
        assert_eq!(
            FinModule::integral(1, &[2, 4]),
            FinModule::Integral {
                free_rank: 1,
                torsion: vec![2, 4]
            }
        );
    }

    #[test]
    fn crt_merges_coprime_orders() {
        assert_eq!(
            iso_class(CoefficientRing::Integers, &[2, 3]),
            FinModule::Integral {
                free_rank: 0,
                torsion: vec![6]
            }
        );
        assert_eq!(canonical_divisors(&[4, 6]), vec![2, 12]);
        assert_eq!(canonical_divisors(&[6, 4, 1]), vec![2, 12]);
    }

    #[test]
    fn zero_module() {
        let z = iso_class(CoefficientRing::Integers, &[]);
        assert!(z.is_zero());
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn isomorphism_is_equality() {
        assert_eq!(FinModule::integral(0, &[2, 3]), FinModule::integral(0, &[6]));
        assert_ne!(FinModule::integral(0, &[2, 2]), FinModule::integral(0, &[4]));
    }

    #[test]
    fn direct_sum_checks_ring() {
        let p2 = Prime::new(2).unwrap();
        let p3 = Prime::new(3).unwrap();
        assert!(FinModule::vector(p2, 1)
            .direct_sum(&FinModule::vector(p3, 1))
            .is_err());
        assert!(FinModule::vector(p2, 1)
            .direct_sum(&FinModule::integral(1, &[]))
            .is_err());
        assert_eq!(
            FinModule::integral(1, &[2])
                .direct_sum(&FinModule::integral(0, &[3]))
                .unwrap(),
            FinModule::integral(1, &[6])
        );
    }

    #[test]
    fn display() {
        assert_eq!(FinModule::integral(2, &[2, 3]).to_string(), "Z^2 + Z_6");
        let p = Prime::new(5).unwrap();
        assert_eq!(FinModule::vector(p, 3).to_string(), "(Z_5)^3");
    }
}
