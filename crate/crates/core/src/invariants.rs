//! Euler characteristics, slopes and normalized Hilbert polynomials.
//!
//! On a surface the Euler characteristic of a rank-`n` sheaf with Chern
//! numbers `c1`, `c2` is `chi = (c1^2 - c1.K)/2 - c2 + n*chi(O)`, and the
//! rank-normalized Hilbert polynomial with respect to `H` is
//!
//! ```text
//! P(m)/n = H^2/2 * m^2 + (c1.H/n - K.H/2) * m + chi/n .
//! ```
//!
//! `chi` is computed symbolically as a rational and integrality is asserted
//! separately: numerical inputs need not come from genuine sheaves, and a
//! half-integral `chi` is exactly how an inconsistent lattice class shows
//! up.

use num_traits::Zero;

use crate::error::Error;
use crate::lattice::{DivisorClass, SurfaceData};
use crate::qpoly::{rint, Rat, RationalPoly};

/// Rank and Chern numbers of a torsion-free sheaf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SheafNumerics {
    rank: u32,
    c1: DivisorClass,
    c2: i64,
}

impl SheafNumerics {
    pub fn new(rank: u32, c1: DivisorClass, c2: i64) -> Result<Self, Error> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(SheafNumerics { rank, c1, c2 })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn c1(&self) -> &DivisorClass {
        &self.c1
    }

    pub fn c2(&self) -> i64 {
        self.c2
    }
}

/// The type `(n; c1, c2, k)` of a coherent system, with the standing
/// assumption `k < n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemType {
    n: u32,
    c1: DivisorClass,
    c2: i64,
    k: u32,
}

impl SystemType {
    pub fn new(n: u32, c1: DivisorClass, c2: i64, k: u32) -> Result<Self, Error> {
        if n == 0 || k >= n {
            return Err(Error::InvalidSystemType { n, k });
        }
        Ok(SystemType { n, c1, c2, k })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn c1(&self) -> &DivisorClass {
        &self.c1
    }

    pub fn c2(&self) -> i64 {
        self.c2
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// The underlying sheaf numerics `(n, c1, c2)`.
    pub fn sheaf(&self) -> SheafNumerics {
        SheafNumerics { rank: self.n, c1: self.c1.clone(), c2: self.c2 }
    }

    pub fn c1_dot_h(&self, s: &SurfaceData) -> Result<i64, Error> {
        s.pairing(&self.c1, s.polarization())
    }
}

/// `chi = (c1^2 - c1.K)/2 - c2 + n*chi(O)`, exact as a rational.
pub fn euler_char(s: &SurfaceData, t: &SheafNumerics) -> Result<Rat, Error> {
    let c1c1 = s.self_intersection(&t.c1)?;
    let c1k = s.pairing(&t.c1, s.canonical())?;
    Ok(rint(c1c1 - c1k) / rint(2) - rint(t.c2) + rint(i64::from(t.rank) * s.chi_o()))
}

/// Whether `euler_char` lands in the integers, i.e. `c1^2 - c1.K` is even.
/// Riemann-Roch forces this for classes of genuine sheaves, so a `false`
/// here flags inconsistent input.
pub fn chi_is_integral(s: &SurfaceData, t: &SheafNumerics) -> Result<bool, Error> {
    let c1c1 = s.self_intersection(&t.c1)?;
    let c1k = s.pairing(&t.c1, s.canonical())?;
    Ok((c1c1 - c1k) % 2 == 0)
}

/// The rank-normalized Hilbert polynomial
/// `H^2/2 * m^2 + (c1.H/n - K.H/2) * m + chi/n`.
pub fn hilbert_poly_normalized(s: &SurfaceData, t: &SheafNumerics) -> Result<RationalPoly, Error> {
    let h2 = s.h_squared()?;
    let c1h = s.pairing(&t.c1, s.polarization())?;
    let kh = s.canonical_dot_h()?;
    let n = rint(i64::from(t.rank));
    let chi = euler_char(s, t)?;
    Ok(RationalPoly::quadratic(
        rint(h2) / rint(2),
        rint(c1h) / &n - rint(kh) / rint(2),
        chi / n,
    ))
}

/// The slope `mu_H = c1.H / n`.
pub fn slope(s: &SurfaceData, t: &SheafNumerics) -> Result<Rat, Error> {
    let c1h = s.pairing(&t.c1, s.polarization())?;
    Ok(rint(c1h) / rint(i64::from(t.rank)))
}

/// Second Chern number of a direct sum (Whitney formula); used by the
/// additivity tests and handy when assembling examples.
pub fn direct_sum(
    s: &SurfaceData,
    a: &SheafNumerics,
    b: &SheafNumerics,
) -> Result<SheafNumerics, Error> {
    let c1 = a.c1() + b.c1();
    let c2 = a.c2() + b.c2() + s.pairing(a.c1(), b.c1())?;
    SheafNumerics::new(a.rank() + b.rank(), c1, c2)
}

pub(crate) fn rat_is_integral(r: &Rat) -> bool {
    (r.numer() % r.denom()).is_zero()
}
