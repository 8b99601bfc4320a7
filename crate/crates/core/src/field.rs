//! Coefficient fields: the rationals and prime fields F_p.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

pub type Scalar = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Field {
    Rationals,
    Prime(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not invertible in characteristic {1}")]
    NotInvertible(String, u64),
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl Field {
    /// Characteristic 0 gives the rationals.
    pub fn with_characteristic(c: u64) -> Result<Field, FieldError> {
        match c {
            0 => Ok(Field::Rationals),
            p if is_prime(p) => Ok(Field::Prime(p)),
            p => Err(FieldError::NotPrime(p)),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    /// Maps a rational into the field, representing F_p elements by 0..p.
    pub fn from_rational(&self, x: &BigRational) -> Result<Scalar, FieldError> {
        match self {
            Field::Rationals => Ok(x.clone()),
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                let den = x.denom().mod_floor(&pb);
                if den.is_zero() {
                    return Err(FieldError::NotInvertible(x.denom().to_string(), *p));
                }
                let inv = den.modpow(&(&pb - 2u32), &pb);
                Ok(BigRational::from_integer((x.numer() * inv).mod_floor(&pb)))
            }
        }
    }

    pub fn from_int(&self, x: i64) -> Scalar {
        self.from_rational(&BigRational::from_integer(BigInt::from(x))).expect("integers embed")
    }

    fn wrap(&self, x: BigRational) -> Scalar {
        match self {
            Field::Rationals => x,
            Field::Prime(p) => BigRational::from_integer(x.to_integer().mod_floor(&BigInt::from(*p))),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.wrap(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.wrap(a - b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.wrap(a * b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.wrap(-a)
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        assert!(!a.is_zero(), "inverse of zero");
        match self {
            Field::Rationals => a.recip(),
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                BigRational::from_integer(a.to_integer().modpow(&(&pb - 2u32), &pb))
            }
        }
    }

    /// Row rank by Gaussian elimination.
    pub fn rank(&self, rows: &[Vec<Scalar>]) -> usize {
        let mut m: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|x| self.wrap(x.clone())).collect()).collect();
        let cols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(pivot) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(rank, pivot);
            let inv = self.inv(&m[rank][c]);
            for i in 0..m.len() {
                if i != rank && !m[i][c].is_zero() {
                    let f = self.mul(&m[i][c], &inv);
                    for j in c..cols {
                        let t = self.mul(&f, &m[rank][j]);
                        m[i][j] = self.sub(&m[i][j], &t);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn one(&self) -> Scalar {
        BigRational::one()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}
