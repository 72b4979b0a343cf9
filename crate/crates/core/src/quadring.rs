//! Exact arithmetic in Z[√2].
//!
//! `α = 3 + 2√2` is the unit driving the balancing recurrences; its conjugate
//! is never stored, since `α^n − β^n` and `α^n + β^n` are read straight off the
//! two coordinates of `α^n`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};

/// `a + b√2` with big-integer coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl QuadInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Self {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    /// The fundamental balancing unit `3 + 2√2`.
    pub fn alpha() -> Self {
        Self::new(3, 2)
    }

    pub fn conjugate(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    /// `a² − 2b²`
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - BigInt::from(2) * &self.b * &self.b
    }

    pub fn square(&self) -> Self {
        qmul(self, self)
    }

    pub fn pow(&self, n: u64) -> Self {
        qpow(self, n)
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}√2", self.a, self.b)
    }
}

pub fn qmul(u: &QuadInt, v: &QuadInt) -> QuadInt {
    QuadInt {
        a: &u.a * &v.a + BigInt::from(2) * &u.b * &v.b,
        b: &u.a * &v.b + &u.b * &v.a,
    }
}

/// Binary exponentiation, most significant bit first.
pub fn qpow(u: &QuadInt, n: u64) -> QuadInt {
    let mut acc = QuadInt::one();
    if n == 0 {
        return acc;
    }
    for i in (0..64 - n.leading_zeros()).rev() {
        acc = acc.square();
        if (n >> i) & 1 == 1 {
            acc = qmul(&acc, u);
        }
    }
    acc
}

impl<'a> Mul<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn mul(self, rhs: &'a QuadInt) -> QuadInt {
        qmul(self, rhs)
    }
}

impl Mul for QuadInt {
    type Output = QuadInt;
    fn mul(self, rhs: QuadInt) -> QuadInt {
        qmul(&self, &rhs)
    }
}

impl Add for QuadInt {
    type Output = QuadInt;
    fn add(self, rhs: QuadInt) -> QuadInt {
        QuadInt {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
        }
    }
}

impl Sub for QuadInt {
    type Output = QuadInt;
    fn sub(self, rhs: QuadInt) -> QuadInt {
        QuadInt {
            a: self.a - rhs.a,
            b: self.b - rhs.b,
        }
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt {
            a: -self.a,
            b: -self.b,
        }
    }
}

/// `(B_n, C_n)` from one exponentiation of `α`.
///
/// With `α^n = a + b√2` we have `α^n + β^n = 2a` and `α^n − β^n = 2b√2`, so
/// `C_n = a` and `B_n = b / 2`.
pub fn binet_extract(n: u64) -> Result<(BigInt, BigInt)> {
    let QuadInt { a, b } = qpow(&QuadInt::alpha(), n);
    let (half, rem) = b.div_rem(&BigInt::from(2));
    if !rem.is_zero() {
        return Err(Error::InexactBinet(n));
    }
    Ok((half, a))
}
