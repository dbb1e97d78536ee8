//! Scalars of the three instances: exact rationals and unit-interval doubles.

use num::{BigInt, BigRational, FromPrimitive, One, Signed, Zero};
use std::fmt;

/// Scalar arithmetic shared by probability tables, validities, and the
/// duality layer. Instances pick exact rationals or doubles.
pub trait Scalar: Clone + PartialEq + PartialOrd + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Division; `None` on a (numerically) zero divisor.
    fn div(&self, other: &Self) -> Option<Self>;
    fn to_f64(&self) -> f64;
    /// Stable textual rendering: `p/q` for rationals, shortest round-trip
    /// decimal for doubles.
    fn render(&self) -> String;
}

/// Exact rational scalar, used by the deterministic and probabilistic
/// instances end to end.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn new(num: i64, den: i64) -> Self {
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// Parses `"p/q"` or a plain integer `"p"`.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().ok()?;
                let d: BigInt = d.trim().parse().ok()?;
                if d.is_zero() {
                    return None;
                }
                Some(Rat(BigRational::new(n, d)))
            }
            None => {
                let n: BigInt = s.parse().ok()?;
                Some(Rat(BigRational::from_integer(n)))
            }
        }
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }
}

impl Scalar for Rat {
    fn zero() -> Self {
        Rat(BigRational::zero())
    }

    fn one() -> Self {
        Rat(BigRational::one())
    }

    fn add(&self, other: &Self) -> Self {
        Rat(&self.0 + &other.0)
    }

    fn sub(&self, other: &Self) -> Self {
        Rat(&self.0 - &other.0)
    }

    fn mul(&self, other: &Self) -> Self {
        Rat(&self.0 * &other.0)
    }

    fn div(&self, other: &Self) -> Option<Self> {
        if other.0.is_zero() {
            None
        } else {
            Some(Rat(&self.0 / &other.0))
        }
    }

    fn to_f64(&self) -> f64 {
        let n = self.0.numer();
        let d = self.0.denom();
        match (n.to_string().parse::<f64>(), d.to_string().parse::<f64>()) {
            (Ok(n), Ok(d)) => n / d,
            _ => f64::NAN,
        }
    }

    fn render(&self) -> String {
        format!("{}/{}", self.0.numer(), self.0.denom())
    }
}

impl From<f64> for Rat {
    fn from(v: f64) -> Self {
        Rat(BigRational::from_f64(v).expect("finite float"))
    }
}

/// Double-precision scalar in `[0, 1]` within tolerance, used by the
/// quantum instance.
#[derive(Clone, Copy, PartialEq, PartialOrd, Debug)]
pub struct Real(pub f64);

impl Scalar for Real {
    fn zero() -> Self {
        Real(0.0)
    }

    fn one() -> Self {
        Real(1.0)
    }

    fn add(&self, other: &Self) -> Self {
        Real(self.0 + other.0)
    }

    fn sub(&self, other: &Self) -> Self {
        Real(self.0 - other.0)
    }

    fn mul(&self, other: &Self) -> Self {
        Real(self.0 * other.0)
    }

    fn div(&self, other: &Self) -> Option<Self> {
        if other.0.abs() <= 1e-12 {
            None
        } else {
            Some(Real(self.0 / other.0))
        }
    }

    fn to_f64(&self) -> f64 {
        self.0
    }

    fn render(&self) -> String {
        format!("{}", self.0)
    }
}
