//! Dimension formulas and hypothesis checks for the large-alpha moduli
//! space.
//!
//! Near the upper bound the moduli space fibers as a Grassmann bundle over
//! a moduli space of sheaves of rank `n - k`. This module evaluates the
//! three dimension quantities exactly and cross-checks the identity
//!
//! ```text
//! total = dim M + k p - k^2,    p = -(n-k) chi(O) - c1.K/2 - c1^2/2 + c2 ,
//! ```
//!
//! together with the hypothesis record (sign condition on
//! `((n-k) K + c1).H`, the coprimality advisory and the user-asserted
//! largeness of `c2`). Degenerate values (negative `dim M`, fiber below the
//! subspace dimension, half-integral invariants) are reported as warnings
//! rather than errors: the formulas stay evaluable and the identity stays
//! testable even when the geometric object is empty.

use alloc::vec::Vec;

use crate::error::Error;
use crate::invariants::{rat_is_integral, SystemType};
use crate::lattice::{DivisorClass, SurfaceData};
use crate::qpoly::{rat, rint, Rat};

/// Expected dimension `2 r c2 - (r-1) c1^2 - (r^2 - 1) chi(O)` of the
/// moduli space of sheaves of rank `r`.
pub fn dim_moduli_sheaves(
    s: &SurfaceData,
    r: u32,
    c1: &DivisorClass,
    c2: i64,
) -> Result<i64, Error> {
    if r == 0 {
        return Err(Error::ZeroRank);
    }
    let r = i64::from(r);
    let c1c1 = s.self_intersection(c1)?;
    Ok(2 * r * c2 - (r - 1) * c1c1 - (r * r - 1) * s.chi_o())
}

/// Fiber dimension source: `p = -(n-k) chi(O) - c1.K/2 - c1^2/2 + c2`,
/// exact as a rational (half-integral values flag inconsistent input).
pub fn ext_fiber_dim(s: &SurfaceData, t: &SystemType) -> Result<Rat, Error> {
    let r = i64::from(t.n() - t.k());
    let c1k = s.pairing(t.c1(), s.canonical())?;
    let c1c1 = s.self_intersection(t.c1())?;
    Ok(rint(-r * s.chi_o()) - rat(c1k, 2) - rat(c1c1, 2) + rint(t.c2()))
}

/// Degenerate-input flags carried by the dimension reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModuliWarning {
    /// `p < k`: the Grassmannian of `k`-planes in a `p`-dimensional space
    /// is empty.
    EmptyFiber,
    /// The moduli space of sheaves has negative expected dimension.
    NegativeModuliDim,
    /// `c1^2 + c1.K` is odd, so `p` (and `chi`) are half-integral; the
    /// class is not the Chern class of a genuine sheaf.
    NonIntegralInvariants,
}

/// Hypotheses of the Grassmann-bundle description.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrassmannHypotheses {
    /// `((n-k) K + c1).H <= 0`: the exact-dimension reading applies.
    pub kc1h_condition: bool,
    /// `gcd(n-k, c1.H) = 1`: a Poincare sheaf exists globally (the
    /// construction works locally regardless).
    pub coprime_advisory: bool,
    /// `c2 >> 0` cannot be made effective; the caller asserts it.
    pub c2_large_asserted: bool,
}

/// Exact evaluation of the Grassmann-bundle dimension data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrassmannBundleReport {
    /// `dim M(n-k; c1, c2)`.
    pub dim_moduli: i64,
    /// `p`, the fiber Ext-space dimension.
    pub ext_fiber: Rat,
    /// `k (p - k)`, the Grassmannian fiber dimension.
    pub fiber_dim: Rat,
    /// The displayed total-dimension formula.
    pub total_dim: Rat,
    /// `total_dim = dim_moduli + k p - k^2`, checked exactly.
    pub identity_holds: bool,
    pub hypotheses: GrassmannHypotheses,
    pub warnings: Vec<ModuliWarning>,
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Evaluates the total-dimension formula
/// `(2n-k) c2 + (1 - n(n-k)) chi(O) - k^2 - k (c1.K/2 + c1^2/2) - (n-k-1) c1^2`
/// and fills in the full report.
pub fn grassmann_bundle_report(
    s: &SurfaceData,
    t: &SystemType,
    c2_large_asserted: bool,
) -> Result<GrassmannBundleReport, Error> {
    let n = i64::from(t.n());
    let k = i64::from(t.k());
    let c1c1 = s.self_intersection(t.c1())?;
    let c1k = s.pairing(t.c1(), s.canonical())?;
    let c1h = t.c1_dot_h(s)?;
    let kh = s.canonical_dot_h()?;

    let total_dim = rint((2 * n - k) * t.c2())
        + rint((1 - n * (n - k)) * s.chi_o())
        - rint(k * k)
        - rint(k) * (rat(c1k, 2) + rat(c1c1, 2))
        - rint((n - k - 1) * c1c1);

    let dim_moduli = dim_moduli_sheaves(s, t.n() - t.k(), t.c1(), t.c2())?;
    let ext_fiber = ext_fiber_dim(s, t)?;
    let fiber_dim = rint(k) * (&ext_fiber - rint(k));
    let identity_holds = total_dim == rint(dim_moduli) + rint(k) * &ext_fiber - rint(k * k);

    let mut warnings = Vec::new();
    if ext_fiber < rint(k) {
        warnings.push(ModuliWarning::EmptyFiber);
    }
    if dim_moduli < 0 {
        warnings.push(ModuliWarning::NegativeModuliDim);
    }
    if !rat_is_integral(&ext_fiber) {
        warnings.push(ModuliWarning::NonIntegralInvariants);
    }

    Ok(GrassmannBundleReport {
        dim_moduli,
        ext_fiber,
        fiber_dim,
        total_dim,
        identity_holds,
        hypotheses: GrassmannHypotheses {
            kc1h_condition: (n - k) * kh + c1h <= 0,
            coprime_advisory: gcd(n - k, c1h) == 1,
            c2_large_asserted,
        },
        warnings,
    })
}

/// The same numeric value read as a lower bound; the exact reading applies
/// when the sign condition holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionBound {
    pub value: Rat,
    /// `true` when `((n-k) K + c1).H <= 0`, in which case the value is the
    /// exact dimension rather than only a lower bound.
    pub exact_reading: bool,
}

pub fn dimension_lower_bound(
    s: &SurfaceData,
    t: &SystemType,
    c2_large_asserted: bool,
) -> Result<DimensionBound, Error> {
    let report = grassmann_bundle_report(s, t, c2_large_asserted)?;
    Ok(DimensionBound {
        value: report.total_dim,
        exact_reading: report.hypotheses.kc1h_condition,
    })
}

/// Brute-force binomial coefficient (multiplicative, no simplification).
pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Hypothesis record of the section bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CliffordConditions {
    /// `K.H <= 0` (standing hypothesis of the first bound).
    pub kh_nonpositive: bool,
    /// `H^2 max{(n^2-1)/4, 1} < (C(a+2,2) - a - 1)/a` at the chosen `a`.
    pub h2_inequality: Option<bool>,
    /// `0 <= c1.H/n < a H^2 + K.H` at the chosen `a`.
    pub degree_window: Option<bool>,
    /// Whether the surface is the builtin projective plane (second bound).
    pub surface_is_p2: bool,
}

/// Upper bounds for the number of independent sections; each bound is
/// present only when its hypotheses hold exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordReport {
    /// `n + a c1.H / 2` (general surface, `K.H <= 0`, very ample `H` is a
    /// user assertion).
    pub bound_i: Option<Rat>,
    pub a_used: Option<i64>,
    /// `c1^2/(2(n-k)) + 3 c1/2 + n` on the projective plane, with `c1` read
    /// as the degree `c1.H`.
    pub bound_ii: Option<Rat>,
    pub conditions: CliffordConditions,
}

const CLIFFORD_SEARCH_LIMIT: i64 = 1000;

fn clifford_i_conditions_at(s: &SurfaceData, t: &SystemType, a: i64) -> Result<(bool, bool), Error> {
    let n = i64::from(t.n());
    let h2 = s.h_squared()?;
    let kh = s.canonical_dot_h()?;
    let c1h = t.c1_dot_h(s)?;
    let quarter = rat(n * n - 1, 4);
    let lhs = rint(h2) * if quarter > rint(1) { quarter } else { rint(1) };
    let rhs = rat(binomial(a + 2, 2) - a - 1, a);
    let h2_ok = lhs < rhs;
    let degree = rat(c1h, n);
    let degree_ok = rint(0) <= degree && degree < rint(a * h2 + kh);
    Ok((h2_ok, degree_ok))
}

/// Evaluates both section bounds. With `a = None` the smallest `a` in
/// `1..=1000` satisfying both hypotheses of the first bound is searched.
pub fn clifford_bounds(
    s: &SurfaceData,
    t: &SystemType,
    a: Option<i64>,
) -> Result<CliffordReport, Error> {
    let n = i64::from(t.n());
    let kh = s.canonical_dot_h()?;
    let c1h = t.c1_dot_h(s)?;
    let kh_nonpositive = kh <= 0;
    let surface_is_p2 = s.is_projective_plane();

    let mut h2_inequality = None;
    let mut degree_window = None;
    let mut a_used = None;
    let mut bound_i = None;
    if kh_nonpositive {
        match a {
            Some(a) => {
                if a < 1 {
                    return Err(Error::InvalidParams("clifford bound needs a >= 1"));
                }
                let (h2_ok, degree_ok) = clifford_i_conditions_at(s, t, a)?;
                h2_inequality = Some(h2_ok);
                degree_window = Some(degree_ok);
                a_used = Some(a);
                if h2_ok && degree_ok {
                    bound_i = Some(rint(n) + rat(a * c1h, 2));
                }
            }
            None => {
                for candidate in 1..=CLIFFORD_SEARCH_LIMIT {
                    let (h2_ok, degree_ok) = clifford_i_conditions_at(s, t, candidate)?;
                    if h2_ok && degree_ok {
                        h2_inequality = Some(true);
                        degree_window = Some(true);
                        a_used = Some(candidate);
                        bound_i = Some(rint(n) + rat(candidate * c1h, 2));
                        break;
                    }
                }
            }
        }
    }

    let bound_ii = if surface_is_p2 {
        // Pic(P2) = Z: c1 in the displayed formula means the degree c1.H
        let n_minus_k = i64::from(t.n() - t.k());
        Some(rat(c1h * c1h, 2 * n_minus_k) + rat(3 * c1h, 2) + rint(n))
    } else {
        None
    };

    Ok(CliffordReport {
        bound_i,
        a_used,
        bound_ii,
        conditions: CliffordConditions {
            kh_nonpositive,
            h2_inequality,
            degree_window,
            surface_is_p2,
        },
    })
}

/// Steiner presentation ranks and the generic-smoothness verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SmoothnessReport {
    pub generically_smooth: bool,
    /// Kernel rank `c1` of the Steiner resolution `O(-1)^c1 -> O^(n-k+c1)`.
    pub steiner_kernel_rank: i64,
    pub steiner_source_rank: i64,
}

/// Exact-integer form of `n - k < c1 (1 + sqrt(5))/2` on the projective
/// plane, for Steiner second Chern class `c2 = C(c1+1, 2)`: true outright
/// when `2(n-k) <= c1`, otherwise by squaring, `(2(n-k) - c1)^2 < 5 c1^2`.
pub fn generic_smoothness_predicate(
    s: &SurfaceData,
    t: &SystemType,
) -> Result<SmoothnessReport, Error> {
    if !s.is_projective_plane() {
        return Err(Error::WrongSurface("the builtin projective plane"));
    }
    let c1 = t.c1_dot_h(s)?;
    if c1 < 1 {
        return Err(Error::InvalidParams("smoothness predicate needs c1 > 0"));
    }
    let expected_c2 = binomial(c1 + 1, 2);
    if t.c2() != expected_c2 {
        return Err(Error::SecondChernMismatch { expected: expected_c2, got: t.c2() });
    }
    let r = i64::from(t.n() - t.k());
    let lhs = 2 * r - c1;
    let generically_smooth = lhs <= 0 || lhs * lhs < 5 * c1 * c1;
    Ok(SmoothnessReport {
        generically_smooth,
        steiner_kernel_rank: c1,
        steiner_source_rank: r + c1,
    })
}
