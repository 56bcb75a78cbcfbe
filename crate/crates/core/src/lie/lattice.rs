//! Coordinate vectors: integral weights, rational weights and points of the
//! Cartan subalgebra.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_q, Q};

/// Integral weight in the fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Weight(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, s: i64) -> Weight {
        Weight(self.0.iter().map(|x| x * s).collect())
    }

    pub fn to_rational(&self) -> RatWeight {
        RatWeight(self.0.iter().map(|&x| Q::from_integer(x)).collect())
    }

    /// Comma separated coordinates, the command-line form.
    pub fn to_csv(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        parts.join(",")
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_csv().replace(',', ", "))
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(|p| {
                p.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("not an integer vector: {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

/// Rational vector in the fundamental-weight basis (rho_I, nu_I, ...).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatWeight(pub Vec<Q>);

impl RatWeight {
    pub fn zero(rank: usize) -> Self {
        RatWeight(vec![Q::zero(); rank])
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn scale(&self, s: Q) -> RatWeight {
        RatWeight(self.0.iter().map(|x| x * s).collect())
    }

    pub fn to_integral(&self) -> Option<Weight> {
        crate::rational::to_integers(&self.0).map(Weight)
    }
}

impl Add for &RatWeight {
    type Output = RatWeight;
    fn add(self, rhs: &RatWeight) -> RatWeight {
        RatWeight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RatWeight {
    type Output = RatWeight;
    fn sub(self, rhs: &RatWeight) -> RatWeight {
        RatWeight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for RatWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::rational::fmt_q_vec(&self.0))
    }
}

/// Point of the Cartan subalgebra in simple-coroot coordinates.
///
/// The integral lattice is the coroot lattice, so a point is integral exactly
/// when all coordinates are integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanPoint(pub Vec<Q>);

impl CartanPoint {
    pub fn zero(rank: usize) -> Self {
        CartanPoint(vec![Q::zero(); rank])
    }

    pub fn from_integers(v: &[i64]) -> Self {
        CartanPoint(v.iter().map(|&x| Q::from_integer(x)).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn scale(&self, s: Q) -> CartanPoint {
        CartanPoint(self.0.iter().map(|x| x * s).collect())
    }

    pub fn is_integral(&self) -> bool {
        crate::rational::is_integral(&self.0)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(fmt_q).collect()
    }

    pub fn from_strings<S: AsRef<str>>(parts: &[S]) -> Result<Self> {
        parts
            .iter()
            .map(|p| parse_q(p.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(CartanPoint)
    }
}

impl Add for &CartanPoint {
    type Output = CartanPoint;
    fn add(self, rhs: &CartanPoint) -> CartanPoint {
        CartanPoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &CartanPoint {
    type Output = CartanPoint;
    fn sub(self, rhs: &CartanPoint) -> CartanPoint {
        CartanPoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for CartanPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::rational::fmt_q_vec(&self.0))
    }
}

impl FromStr for CartanPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        CartanPoint::from_strings(&parts)
    }
}
