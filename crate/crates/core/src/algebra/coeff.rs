use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A prime number, checked at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Prime {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u64(self.0)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Coefficients for cohomology: the integers or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoefficientRing {
    Integers,
    PrimeField(Prime),
}

impl CoefficientRing {
    pub fn prime_field(p: u64) -> Result<Self> {
        Prime::new(p).map(CoefficientRing::PrimeField)
    }

    /// 0 for the integers, p for a prime field.
    pub fn characteristic(self) -> u64 {
        match self {
            CoefficientRing::Integers => 0,
            CoefficientRing::PrimeField(p) => p.get(),
        }
    }

    pub fn is_field(self) -> bool {
        matches!(self, CoefficientRing::PrimeField(_))
    }

    pub fn prime(self) -> Option<Prime> {
        match self {
            CoefficientRing::Integers => None,
            CoefficientRing::PrimeField(p) => Some(p),
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => write!(f, "Z"),
            CoefficientRing::PrimeField(p) => write!(f, "Z_{p}"),
        }
    }
}

impl Serialize for CoefficientRing {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_checked() {
        assert!(CoefficientRing::prime_field(7).is_ok());
        assert_eq!(CoefficientRing::prime_field(6), Err(Error::NotPrime(6)));
        assert_eq!(CoefficientRing::prime_field(1), Err(Error::NotPrime(1)));
        assert_eq!(CoefficientRing::prime_field(0), Err(Error::NotPrime(0)));
    }

    #[test]
    fn small_primes() {
        let found: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(found, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
