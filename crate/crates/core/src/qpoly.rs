//! Exact rational polynomials in a formal variable `m`.
//!
//! Stability parameters, Hilbert polynomials, bound polynomials and walls
//! are all values of [`RationalPoly`]. Two polynomials are compared with
//! the *eventual* order: `p <= q` iff `p(m) <= q(m)` for all `m >> 0`,
//! which is decided exactly by scanning the coefficients of `p - q` from
//! the top degree down. No floating point is used anywhere.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact rational number with arbitrary-precision numerator and denominator.
pub type Rat = num_rational::BigRational;

/// Shorthand for the rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the rational `n/1`.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Polynomial in `m` with exact rational coefficients.
///
/// Stored by ascending degree in canonical form: the highest stored
/// coefficient is nonzero, and the zero polynomial stores no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPoly {
    coeffs: Vec<Rat>,
}

impl RationalPoly {
    /// Builds a polynomial from coefficients by ascending degree, trimming
    /// trailing zeros.
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn zero() -> Self {
        RationalPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// `slope * m + intercept`.
    pub fn linear(slope: Rat, intercept: Rat) -> Self {
        Self::new(vec![intercept, slope])
    }

    /// `a2 * m^2 + a1 * m + a0`.
    pub fn quadratic(a2: Rat, a1: Rat, a0: Rat) -> Self {
        Self::new(vec![a0, a1, a2])
    }

    /// Convenience constructor from integer coefficients by ascending degree.
    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rint(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `m^i` (zero beyond the stored degree).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    /// Coefficients by ascending degree, in canonical form.
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Exact evaluation at `m0` by Horner's rule.
    pub fn eval(&self, m0: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * m0 + c)
    }

    /// Eventual comparison: the order of `self(m)` versus `other(m)` for all
    /// sufficiently large `m`, decided by the top nonzero coefficient of the
    /// difference.
    pub fn cmp_eventual(&self, other: &RationalPoly) -> Ordering {
        let diff = self - other;
        match diff.leading_coeff() {
            None => Ordering::Equal,
            Some(c) if c.is_positive() => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }

    /// `true` iff `self(m) > 0` for `m >> 0`; the zero polynomial is not
    /// eventually positive.
    pub fn is_eventually_positive(&self) -> bool {
        self.leading_coeff().is_some_and(Signed::is_positive)
    }

    /// An explicit sample point beyond which the leading term dominates:
    /// for every rational `m >= dominance_bound()` the sign of `self(m)`
    /// equals the sign of the leading coefficient.
    ///
    /// With coefficients `p_i/q_i` in lowest terms and `Q` the product of
    /// all denominators, the bound is `1 + sum_i |p_i| * Q`. Clearing
    /// denominators by `Q` gives integer coefficients `P_i` with
    /// `|P_i| <= |p_i| * Q`, so the bound majorizes the Cauchy root bound
    /// `1 + max_{i<d} |P_i| / |P_d|` of the cleared polynomial.
    pub fn dominance_bound(&self) -> Rat {
        let q: BigInt = self
            .coeffs
            .iter()
            .map(|c| c.denom())
            .product::<BigInt>()
            .max(BigInt::one());
        let sum: BigInt = self.coeffs.iter().map(|c| c.numer().abs() * &q).sum();
        Rat::from_integer(sum + BigInt::one())
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;

    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        RationalPoly::new(coeffs)
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;

    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        RationalPoly::new(coeffs)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;

    fn neg(self) -> RationalPoly {
        RationalPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;

    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RationalPoly::new(coeffs)
    }
}

macro_rules! forward_owned_binop {
    ($($op:ident :: $f:ident),*) => {$(
        impl $op for RationalPoly {
            type Output = RationalPoly;
            fn $f(self, rhs: RationalPoly) -> RationalPoly {
                (&self).$f(&rhs)
            }
        }
    )*};
}
forward_owned_binop!(Add::add, Sub::sub, Mul::mul);

/// Renders as `a2*m^2 + a1*m + a0` with rationals as `p/q`, highest degree
/// first, zero coefficients skipped; the zero polynomial renders as `0`.
impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<String> = Vec::new();
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let term = match deg {
                0 => alloc::format!("{c}"),
                1 => alloc::format!("{c}*m"),
                _ => alloc::format!("{c}*m^{deg}"),
            };
            terms.push(term);
        }
        let joined = terms.join(" + ").replace("+ -", "- ");
        write!(f, "{joined}")
    }
}
