//! The alpha-stability calculus.
//!
//! A coherent system of type `(n; c1, c2, k)` is measured against numerical
//! shadows of its potential subsystems: a candidate carries only
//! `(n', c1'.H, chi', k')` since the rank-normalized polynomials depend on
//! nothing else. The module provides the reduced Hilbert polynomial, the
//! stability comparison, the sharp upper bound for admissible alpha, the
//! injectivity and torsion-freeness thresholds, the epsilon interpolation
//! underlying the thresholds, the strictness case analysis near the upper
//! bound and the strict-failure criterion at strictly semistable quotients.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::invariants::{euler_char, hilbert_poly_normalized, slope, SheafNumerics, SystemType};
use crate::lattice::SurfaceData;
use crate::qpoly::{rint, Rat, RationalPoly};

/// A stability parameter: a rational polynomial of degree at most one that
/// is eventually positive. The degree cap is the surface-dimension
/// constraint on critical values; it is enforced here even though
/// [`RationalPoly`] is generic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaPoly {
    poly: RationalPoly,
}

impl AlphaPoly {
    pub fn new(poly: RationalPoly) -> Result<Self, Error> {
        if let Some(degree) = poly.degree() {
            if degree > 1 {
                return Err(Error::AlphaDegreeTooHigh { degree });
            }
        }
        if !poly.is_eventually_positive() {
            return Err(Error::AlphaNotPositive);
        }
        Ok(AlphaPoly { poly })
    }

    /// `slope * m + intercept`, checked like [`AlphaPoly::new`].
    pub fn linear(slope: Rat, intercept: Rat) -> Result<Self, Error> {
        Self::new(RationalPoly::linear(slope, intercept))
    }

    /// The degenerate parameter `alpha = 0`. Not an admissible stability
    /// parameter; it exists so that the reduced polynomial can be inspected
    /// without the alpha shift.
    pub fn zero() -> Self {
        AlphaPoly { poly: RationalPoly::zero() }
    }

    pub fn poly(&self) -> &RationalPoly {
        &self.poly
    }

    pub fn into_poly(self) -> RationalPoly {
        self.poly
    }
}

/// Numerical shadow `(n', c1'.H, chi', k')` of a potential destabilizing
/// subsystem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsystemCandidate {
    rank: u32,
    c1h: i64,
    chi: Rat,
    k: u32,
}

impl SubsystemCandidate {
    pub fn new(rank: u32, c1h: i64, chi: Rat, k: u32) -> Result<Self, Error> {
        if rank == 0 {
            return Err(Error::InvalidCandidate("rank must be positive"));
        }
        Ok(SubsystemCandidate { rank, c1h, chi, k })
    }

    /// Convenience constructor with an integer Euler characteristic.
    pub fn from_ints(rank: u32, c1h: i64, chi: i64, k: u32) -> Result<Self, Error> {
        Self::new(rank, c1h, rint(chi), k)
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn c1h(&self) -> i64 {
        self.c1h
    }

    pub fn chi(&self) -> &Rat {
        &self.chi
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Whether the candidate coincides with the ambient tuple
    /// `(n, c1.H, chi(E), k)`.
    pub fn is_ambient(&self, s: &SurfaceData, t: &SystemType) -> Result<bool, Error> {
        Ok(self.rank == t.n()
            && self.c1h == t.c1_dot_h(s)?
            && self.chi == euler_char(s, &t.sheaf())?
            && self.k == t.k())
    }

    pub(crate) fn validate_against(&self, s: &SurfaceData, t: &SystemType) -> Result<(), Error> {
        if self.k > t.k() {
            return Err(Error::InvalidCandidate("k' exceeds the ambient k"));
        }
        if self.is_ambient(s, t)? {
            return Err(Error::InvalidCandidate("candidate equals the ambient type"));
        }
        Ok(())
    }
}

/// Verdict of the stability inequality against one candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateVerdict {
    /// Candidate polynomial eventually strictly below the ambient one.
    StrictlyStable,
    /// Exact polynomial equality: the candidate sits on a wall.
    Semistable,
    /// Candidate polynomial eventually strictly above the ambient one.
    Destabilized,
}

/// The reduced Hilbert polynomial `(k/n) * alpha + P(m)/n`.
pub fn reduced_hilbert(
    s: &SurfaceData,
    t: &SystemType,
    alpha: &AlphaPoly,
) -> Result<RationalPoly, Error> {
    let base = hilbert_poly_normalized(s, &t.sheaf())?;
    let shift = alpha.poly().scale(&(rint(i64::from(t.k())) / rint(i64::from(t.n()))));
    Ok(&base + &shift)
}

/// The candidate's reduced polynomial
/// `(k'/n') * alpha + H^2/2 m^2 + (s'/n' - K.H/2) m + chi'/n'`.
pub fn candidate_reduced_poly(
    s: &SurfaceData,
    alpha: &AlphaPoly,
    cand: &SubsystemCandidate,
) -> Result<RationalPoly, Error> {
    let h2 = rint(s.h_squared()?);
    let kh = rint(s.canonical_dot_h()?);
    let n_sub = rint(i64::from(cand.rank));
    let base = RationalPoly::quadratic(
        h2 / rint(2),
        rint(cand.c1h) / &n_sub - kh / rint(2),
        cand.chi.clone() / &n_sub,
    );
    let shift = alpha.poly().scale(&(rint(i64::from(cand.k)) / n_sub));
    Ok(&base + &shift)
}

/// Compares the candidate's reduced polynomial with the ambient one under
/// the eventual order.
pub fn check_against_candidate(
    s: &SurfaceData,
    t: &SystemType,
    alpha: &AlphaPoly,
    cand: &SubsystemCandidate,
) -> Result<CandidateVerdict, Error> {
    cand.validate_against(s, t)?;
    let candidate = candidate_reduced_poly(s, alpha, cand)?;
    let ambient = reduced_hilbert(s, t, alpha)?;
    Ok(match candidate.cmp_eventual(&ambient) {
        Ordering::Less => CandidateVerdict::StrictlyStable,
        Ordering::Equal => CandidateVerdict::Semistable,
        Ordering::Greater => CandidateVerdict::Destabilized,
    })
}

/// The necessary condition for a generated system, with its witness
/// polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedCondition {
    /// Whether `c1.H m + chi(E) - n chi(O)` is eventually nonnegative.
    pub holds: bool,
    pub witness: RationalPoly,
}

/// Evaluates `0 <= c1.H m + chi(E) - n chi(O)` in the eventual order.
pub fn generated_necessary_condition(
    s: &SurfaceData,
    t: &SystemType,
) -> Result<GeneratedCondition, Error> {
    let witness = generated_witness(s, t)?;
    let holds = witness.is_eventually_positive() || witness.is_zero();
    Ok(GeneratedCondition { holds, witness })
}

fn generated_witness(s: &SurfaceData, t: &SystemType) -> Result<RationalPoly, Error> {
    let c1h = t.c1_dot_h(s)?;
    let chi = euler_char(s, &t.sheaf())?;
    let shift = chi - rint(i64::from(t.n()) * s.chi_o());
    Ok(RationalPoly::linear(rint(c1h), shift))
}

/// The sharp upper bound for admissible alpha:
/// `(c1.H m + chi(E) - n chi(O)) / (n - k)`.
pub fn alpha_upper_bound(s: &SurfaceData, t: &SystemType) -> Result<RationalPoly, Error> {
    let witness = generated_witness(s, t)?;
    let n_minus_k = rint(i64::from(t.n() - t.k()));
    Ok(witness.scale(&(rint(1) / n_minus_k)))
}

/// The interpolation `epsilon(p, q) = (n/k) (d p + (n-k) q) / (n-k+p)` of
/// the threshold derivations; `d` and `q` are polynomial parameters.
pub fn epsilon(
    n: u32,
    k: u32,
    d: &RationalPoly,
    p: i64,
    q: &RationalPoly,
) -> Result<RationalPoly, Error> {
    if k == 0 {
        return Err(Error::SectionsRequired);
    }
    let n_minus_k = i64::from(n) - i64::from(k);
    let denom = n_minus_k + p;
    if denom == 0 {
        return Err(Error::DivisionByZero("epsilon denominator n - k + p"));
    }
    let numerator = &d.scale(&rint(p)) + &q.scale(&rint(n_minus_k));
    let factor = rint(i64::from(n)) / rint(i64::from(k)) / rint(denom);
    Ok(numerator.scale(&factor))
}

/// How to treat the unknowable kernel rank in the injectivity threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelRankMode {
    /// Evaluate the threshold for one kernel rank `k0` in `1..=k-1`.
    Exact(u32),
    /// Maximize over all kernel ranks `1..=k-1` (empty range yields 0).
    WorstCase,
}

/// The injectivity threshold
/// `alpha_I(k0) = (d - epsilon(1, (k - k0) chi(O))) / (n - k)` with
/// `d = c1.H m + chi(E)`.
pub fn alpha_injectivity_threshold(
    s: &SurfaceData,
    t: &SystemType,
    mode: KernelRankMode,
) -> Result<RationalPoly, Error> {
    let k = t.k();
    if k == 0 {
        return Err(Error::SectionsRequired);
    }
    match mode {
        KernelRankMode::Exact(k0) => {
            if k0 == 0 || k0 >= k {
                return Err(Error::KernelRankOutOfRange { k0, k });
            }
            injectivity_threshold_at(s, t, k0)
        }
        KernelRankMode::WorstCase => {
            let mut best: Option<RationalPoly> = None;
            for k0 in 1..k {
                let candidate = injectivity_threshold_at(s, t, k0)?;
                best = Some(match best {
                    None => candidate,
                    Some(prev) if prev.cmp_eventual(&candidate) == Ordering::Less => candidate,
                    Some(prev) => prev,
                });
            }
            Ok(best.unwrap_or_else(RationalPoly::zero))
        }
    }
}

fn injectivity_threshold_at(
    s: &SurfaceData,
    t: &SystemType,
    k0: u32,
) -> Result<RationalPoly, Error> {
    let c1h = t.c1_dot_h(s)?;
    let chi = euler_char(s, &t.sheaf())?;
    let d = RationalPoly::linear(rint(c1h), chi);
    let q = RationalPoly::constant(rint(i64::from(t.k() - k0) * s.chi_o()));
    let eps = epsilon(t.n(), t.k(), &d, 1, &q)?;
    let n_minus_k = rint(i64::from(t.n() - t.k()));
    Ok((&d - &eps).scale(&(rint(1) / n_minus_k)))
}

/// Collects the per-`k0` injectivity thresholds for reporting.
pub fn injectivity_threshold_table(
    s: &SurfaceData,
    t: &SystemType,
) -> Result<Vec<(u32, RationalPoly)>, Error> {
    let mut rows = Vec::new();
    for k0 in 1..t.k() {
        rows.push((k0, injectivity_threshold_at(s, t, k0)?));
    }
    Ok(rows)
}

/// The torsion-freeness threshold
/// `alpha_T = (c1.H m + chi(E) - n chi(O) - n/k) / (n - k)`.
pub fn alpha_torsion_threshold(s: &SurfaceData, t: &SystemType) -> Result<RationalPoly, Error> {
    if t.k() == 0 {
        return Err(Error::SectionsRequired);
    }
    let witness = generated_witness(s, t)?;
    let n_over_k = rint(i64::from(t.n())) / rint(i64::from(t.k()));
    let shifted = &witness - &RationalPoly::constant(n_over_k);
    let n_minus_k = rint(i64::from(t.n() - t.k()));
    Ok(shifted.scale(&(rint(1) / n_minus_k)))
}

/// The slope comparison `c1(F').H / rk(F') <= c1.H / (n - k)` for a
/// torsion-free quotient piece `F'` (its rank is `n' - k`).
pub fn quotient_slope_inequality(
    s: &SurfaceData,
    t: &SystemType,
    quotient_sub: &SheafNumerics,
) -> Result<bool, Error> {
    let sub_slope = slope(s, quotient_sub)?;
    let full_slope = rint(t.c1_dot_h(s)?) / rint(i64::from(t.n() - t.k()));
    Ok(sub_slope <= full_slope)
}

/// One case of the strictness analysis near the upper bound. The verdict
/// certifies the comparison for every sufficiently small `epsilon > 0` at
/// `alpha = alpha_upper_bound - epsilon/(n-k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrictnessCase {
    /// Nonzero quotient piece, trivial bundle part of full rank `k'`.
    A { sub_rank: u32, sub_sections: u32, sub_chi: Rat, delta: Rat },
    /// Nonzero quotient piece, bundle part `W` of rank `w_rank` with
    /// `k' <= w_rank` (sections of a subsheaf of a trivial bundle are
    /// bounded by its rank).
    B { sub_rank: u32, sub_sections: u32, w_rank: u32, sub_chi: Rat, delta: Rat },
    /// Zero quotient piece: the subobject lies in the trivial bundle, so
    /// `c1'.H <= 0` and `k' <= n'`.
    C { sub_rank: u32, sub_sections: u32, sub_chi: Rat },
    /// Full quotient piece, bundle part `W` with `c1(W).H <= 0` and
    /// `k' <= w_rank`; the subobject rank is `n - k + w_rank`.
    D { sub_sections: u32, w_rank: u32, w_c1h: i64, sub_chi: Rat },
}

/// Supremum of the certified interval of epsilons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MaxEpsilon {
    /// Every `epsilon > 0` keeps the bound eventually negative.
    Unbounded,
    /// Every `epsilon` in `(0, bound)` works; at the bound the comparison
    /// degenerates to equality.
    Bounded(Rat),
}

/// Outcome of [`strictness_epsilon_threshold`]: the bound polynomial is
/// `bound_base + epsilon * eps_slope` (the epsilon dependence sits in the
/// constant coefficient only).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictnessReport {
    /// Eventually negative for all sufficiently small `epsilon > 0`.
    pub verdict: bool,
    /// `Some` iff the verdict holds.
    pub max_epsilon: Option<MaxEpsilon>,
    pub bound_base: RationalPoly,
    pub eps_slope: Rat,
}

/// Forms the case's bound on the difference of reduced polynomials at
/// `alpha = alpha_upper_bound - epsilon/(n-k)` and solves for the largest
/// admissible `epsilon` exactly, coefficient by coefficient.
pub fn strictness_epsilon_threshold(
    s: &SurfaceData,
    t: &SystemType,
    case: &StrictnessCase,
) -> Result<StrictnessReport, Error> {
    let n = rint(i64::from(t.n()));
    let k = rint(i64::from(t.k()));
    let n_minus_k = rint(i64::from(t.n() - t.k()));
    let c1h = rint(t.c1_dot_h(s)?);
    let chi = euler_char(s, &t.sheaf())?;
    // constant part of the upper bound: (chi(E) - n chi(O)) / (n - k)
    let q0 = (&chi - rint(i64::from(t.n()) * s.chi_o())) / &n_minus_k;

    let (slope_coeff, chi_ratio, k_ratio_diff) = match case {
        StrictnessCase::A { sub_rank, sub_sections, sub_chi, delta } => {
            if !delta.is_positive() {
                return Err(Error::NonPositiveDelta);
            }
            if *sub_rank == 0 {
                return Err(Error::InvalidParams("case A needs n' >= 1"));
            }
            if sub_sections >= sub_rank {
                return Err(Error::InvalidParams("case A needs k' < n'"));
            }
            let n_sub = rint(i64::from(*sub_rank));
            let k_sub = rint(i64::from(*sub_sections));
            let slope_coeff = -(delta * (&n_sub - &k_sub)) / (&n_sub * &n_minus_k);
            let kdiff = &k_sub / &n_sub - &k / &n;
            (slope_coeff, sub_chi / &n_sub - &chi / &n, kdiff)
        }
        StrictnessCase::B { sub_rank, sub_sections, w_rank, sub_chi, delta } => {
            if !delta.is_positive() {
                return Err(Error::NonPositiveDelta);
            }
            if *sub_rank == 0 {
                return Err(Error::InvalidParams("case B needs n' >= 1"));
            }
            if sub_sections > w_rank {
                return Err(Error::InvalidParams("case B needs k' <= rk(W)"));
            }
            if w_rank > sub_rank {
                return Err(Error::InvalidParams("case B needs rk(W) <= n'"));
            }
            let n_sub = rint(i64::from(*sub_rank));
            let k_sub = rint(i64::from(*sub_sections));
            let l = rint(i64::from(*w_rank));
            let slope_coeff =
                (-(delta * (&n_sub - &l)) + &c1h * (&k_sub - &l)) / (&n_sub * &n_minus_k);
            let kdiff = &k_sub / &n_sub - &k / &n;
            (slope_coeff, sub_chi / &n_sub - &chi / &n, kdiff)
        }
        StrictnessCase::C { sub_rank, sub_sections, sub_chi } => {
            if *sub_rank == 0 {
                return Err(Error::InvalidParams("case C needs n' >= 1"));
            }
            if sub_sections > sub_rank {
                return Err(Error::InvalidParams("case C needs k' <= n'"));
            }
            let n_sub = rint(i64::from(*sub_rank));
            let slope_coeff = -((&n - rint(1)) / &n) * &c1h;
            let kdiff = rint(1) - &k / &n;
            (slope_coeff, sub_chi / &n_sub - &chi / &n, kdiff)
        }
        StrictnessCase::D { sub_sections, w_rank, w_c1h, sub_chi } => {
            if *w_rank == 0 {
                return Err(Error::InvalidParams("case D needs rk(W) >= 1"));
            }
            if sub_sections > w_rank {
                return Err(Error::InvalidParams("case D needs k' <= rk(W)"));
            }
            if *w_c1h > 0 {
                return Err(Error::InvalidParams("case D needs c1(W).H <= 0"));
            }
            let k_sub = rint(i64::from(*sub_sections));
            let l = rint(i64::from(*w_rank));
            let n_sub = &n_minus_k + &l;
            let slope_coeff = (rint(*w_c1h) + &c1h * (&k_sub - &l) / &n_minus_k) / &n_sub;
            let kdiff = &k_sub / &n_sub - &k / &n;
            (slope_coeff, sub_chi / &n_sub - &chi / &n, kdiff)
        }
    };

    let bound_base = RationalPoly::linear(slope_coeff, chi_ratio + &q0 * &k_ratio_diff);
    let eps_slope = -(&k_ratio_diff / &n_minus_k);
    let (verdict, max_epsilon) = solve_small_epsilon(&bound_base, &eps_slope);
    Ok(StrictnessReport { verdict, max_epsilon, bound_base, eps_slope })
}

/// Decides eventual negativity of `base + epsilon * slope` for small
/// `epsilon > 0`. The epsilon term only touches the constant coefficient,
/// so the positive-degree coefficients decide outright and the constant
/// coefficient is an affine function of epsilon.
fn solve_small_epsilon(base: &RationalPoly, eps_slope: &Rat) -> (bool, Option<MaxEpsilon>) {
    let degree = base.degree().unwrap_or(0);
    for d in (1..=degree).rev() {
        let c = base.coeff(d);
        if c.is_zero() {
            continue;
        }
        return if c.is_negative() {
            (true, Some(MaxEpsilon::Unbounded))
        } else {
            (false, None)
        };
    }
    let u0 = base.coeff(0);
    if eps_slope.is_zero() {
        return if u0.is_negative() {
            (true, Some(MaxEpsilon::Unbounded))
        } else {
            (false, None)
        };
    }
    if eps_slope.is_negative() {
        // descending in epsilon: small epsilons work iff the base constant
        // is already nonpositive
        return if u0.is_positive() {
            (false, None)
        } else {
            (true, Some(MaxEpsilon::Unbounded))
        };
    }
    if u0.is_negative() {
        let sup = -u0 / eps_slope;
        (true, Some(MaxEpsilon::Bounded(sup)))
    } else {
        (false, None)
    }
}

/// The strict-failure criterion at a strictly semistable quotient:
/// `[chi'/n' - chi/n] + [(chi - n chi(O))/(n-k) - eps/(n-k)][k'/n' - k/n] > 0`.
///
/// Slope equality of the quotient pieces is the caller's responsibility;
/// the candidate carries no slope data for them.
pub fn strict_failure_condition(
    s: &SurfaceData,
    t: &SystemType,
    cand: &SubsystemCandidate,
    eps: &Rat,
) -> Result<bool, Error> {
    if !eps.is_positive() {
        return Err(Error::NonPositiveEpsilon);
    }
    let n = rint(i64::from(t.n()));
    let k = rint(i64::from(t.k()));
    let n_minus_k = rint(i64::from(t.n() - t.k()));
    let n_sub = rint(i64::from(cand.rank));
    let k_sub = rint(i64::from(cand.k));
    let chi = euler_char(s, &t.sheaf())?;
    let chi_term = &cand.chi / &n_sub - &chi / &n;
    let bracket = (&chi - rint(i64::from(t.n()) * s.chi_o()) - eps) / &n_minus_k;
    let kdiff = k_sub / n_sub - k / n;
    Ok((chi_term + bracket * kdiff).is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::DivisorClass;
    use crate::qpoly::rat;

    fn p2() -> SurfaceData {
        SurfaceData::projective_plane()
    }

    fn system(n: u32, c1: &[i64], c2: i64, k: u32) -> SystemType {
        SystemType::new(n, DivisorClass::new(c1.to_vec()), c2, k).unwrap()
    }

    fn alpha_lin(a: i64, b: i64) -> AlphaPoly {
        AlphaPoly::linear(rint(a), rint(b)).unwrap()
    }

    struct SplitMix64(u64);
    impl SplitMix64 {
        fn next(&mut self) -> u64 {
            self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = self.0;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            z ^ (z >> 31)
        }
        fn in_range(&mut self, lo: i64, hi: i64) -> i64 {
            lo + (self.next() % (hi - lo + 1) as u64) as i64
        }
    }

    #[test]
    fn alpha_poly_validation() {
        assert!(AlphaPoly::linear(rint(2), rint(2)).is_ok());
        assert_eq!(
            AlphaPoly::new(RationalPoly::quadratic(rint(1), rint(0), rint(0))).unwrap_err(),
            Error::AlphaDegreeTooHigh { degree: 2 }
        );
        assert_eq!(
            AlphaPoly::linear(rint(-1), rint(5)).unwrap_err(),
            Error::AlphaNotPositive
        );
    }

    #[test]
    fn reduced_with_degenerate_alpha_is_the_normalized_polynomial() {
        let t = system(2, &[2], 3, 1);
        let r = reduced_hilbert(&p2(), &t, &AlphaPoly::zero()).unwrap();
        assert_eq!(r, RationalPoly::quadratic(rat(1, 2), rat(5, 2), rint(2)));
    }

    #[test]
    fn reduced_with_linear_alpha() {
        let t = system(2, &[2], 3, 1);
        let r = reduced_hilbert(&p2(), &t, &alpha_lin(2, 2)).unwrap();
        assert_eq!(r, RationalPoly::quadratic(rat(1, 2), rat(7, 2), rint(3)));
    }

    #[test]
    fn reduced_ignores_alpha_when_k_is_zero() {
        let t = system(2, &[2], 3, 0);
        let r0 = reduced_hilbert(&p2(), &t, &AlphaPoly::zero()).unwrap();
        let mut rng = SplitMix64(5);
        for _ in 0..20 {
            let alpha = alpha_lin(rng.in_range(1, 9), rng.in_range(-9, 9));
            assert_eq!(reduced_hilbert(&p2(), &t, &alpha).unwrap(), r0);
        }
    }

    #[test]
    fn verdict_flips_around_the_wall() {
        let t = system(2, &[2], 3, 1);
        let cand = SubsystemCandidate::from_ints(1, 0, 1, 1).unwrap();
        assert_eq!(
            check_against_candidate(&p2(), &t, &alpha_lin(1, 1), &cand).unwrap(),
            CandidateVerdict::StrictlyStable
        );
        assert_eq!(
            check_against_candidate(&p2(), &t, &alpha_lin(2, 2), &cand).unwrap(),
            CandidateVerdict::Semistable
        );
        assert_eq!(
            check_against_candidate(&p2(), &t, &alpha_lin(3, 3), &cand).unwrap(),
            CandidateVerdict::Destabilized
        );
    }

    #[test]
    fn candidate_difference_at_small_alpha() {
        // the strictly stable case above comes from difference -(m+1)/2
        let t = system(2, &[2], 3, 1);
        let cand = SubsystemCandidate::from_ints(1, 0, 1, 1).unwrap();
        let a = alpha_lin(1, 1);
        let diff = &candidate_reduced_poly(&p2(), &a, &cand).unwrap()
            - &reduced_hilbert(&p2(), &t, &a).unwrap();
        assert_eq!(diff, RationalPoly::linear(rat(-1, 2), rat(-1, 2)));
    }

    #[test]
    fn candidate_validation() {
        let t = system(2, &[2], 3, 1);
        let too_many_sections = SubsystemCandidate::from_ints(1, 0, 1, 2).unwrap();
        assert!(matches!(
            check_against_candidate(&p2(), &t, &alpha_lin(1, 1), &too_many_sections),
            Err(Error::InvalidCandidate(_))
        ));
        let ambient = SubsystemCandidate::from_ints(2, 2, 4, 1).unwrap();
        assert!(matches!(
            check_against_candidate(&p2(), &t, &alpha_lin(1, 1), &ambient),
            Err(Error::InvalidCandidate(_))
        ));
    }

    #[test]
    fn generated_condition_examples() {
        let ok = generated_necessary_condition(&p2(), &system(2, &[2], 3, 1)).unwrap();
        assert!(ok.holds);
        assert_eq!(ok.witness, RationalPoly::linear(rint(2), rint(2)));

        let bad = generated_necessary_condition(&p2(), &system(2, &[-1], 0, 1)).unwrap();
        assert!(!bad.holds);

        // chi(E) = n chi(O) and c1.H = 0: the witness degenerates to zero
        let boundary = generated_necessary_condition(&p2(), &system(1, &[0], 0, 0)).unwrap();
        assert!(boundary.holds);
        assert!(boundary.witness.is_zero());
    }

    #[test]
    fn upper_bound_examples() {
        let b = alpha_upper_bound(&p2(), &system(2, &[2], 3, 1)).unwrap();
        assert_eq!(b, RationalPoly::linear(rint(2), rint(2)));

        let b = alpha_upper_bound(&p2(), &system(3, &[2], 3, 1)).unwrap();
        assert_eq!(b, RationalPoly::linear(rint(1), rint(1)));
    }

    #[test]
    fn upper_bound_scales_inversely_with_n_minus_k() {
        let t = system(3, &[2], 3, 1);
        let witness = generated_necessary_condition(&p2(), &t).unwrap().witness;
        let bound = alpha_upper_bound(&p2(), &t).unwrap();
        assert_eq!(witness.scale(&rat(1, 2)), bound);
    }

    #[test]
    fn epsilon_examples() {
        let d = RationalPoly::constant(rint(5));
        let q = RationalPoly::constant(rint(1));
        assert_eq!(
            epsilon(3, 2, &d, 1, &q).unwrap(),
            RationalPoly::constant(rat(9, 2))
        );
        assert_eq!(
            epsilon(3, 2, &d, 2, &q).unwrap(),
            RationalPoly::constant(rat(11, 2))
        );
        // q = d collapses to (n/k) d for any p
        for p in 1..=5 {
            assert_eq!(
                epsilon(3, 2, &d, p, &d).unwrap(),
                RationalPoly::constant(rat(15, 2))
            );
        }
    }

    #[test]
    fn epsilon_error_paths() {
        let d = RationalPoly::constant(rint(5));
        assert_eq!(epsilon(3, 0, &d, 1, &d).unwrap_err(), Error::SectionsRequired);
        assert_eq!(
            epsilon(3, 2, &d, -1, &d).unwrap_err(),
            Error::DivisionByZero("epsilon denominator n - k + p")
        );
    }

    #[test]
    fn injectivity_threshold_example() {
        let t = system(3, &[2], 3, 2);
        let alpha_i =
            alpha_injectivity_threshold(&p2(), &t, KernelRankMode::Exact(1)).unwrap();
        assert_eq!(alpha_i, RationalPoly::linear(rat(1, 2), rat(1, 2)));
        // k = 2 leaves a singleton range, so worst case agrees
        assert_eq!(
            alpha_injectivity_threshold(&p2(), &t, KernelRankMode::WorstCase).unwrap(),
            alpha_i
        );
    }

    #[test]
    fn injectivity_threshold_edge_cases() {
        let t = system(2, &[2], 3, 1);
        // k = 1: no kernel rank between 1 and k-1 = 0 exists
        assert_eq!(
            alpha_injectivity_threshold(&p2(), &t, KernelRankMode::WorstCase).unwrap(),
            RationalPoly::zero()
        );
        assert_eq!(
            alpha_injectivity_threshold(&p2(), &t, KernelRankMode::Exact(1)).unwrap_err(),
            Error::KernelRankOutOfRange { k0: 1, k: 1 }
        );
        let k0 = system(2, &[2], 3, 0);
        assert_eq!(
            alpha_injectivity_threshold(&p2(), &k0, KernelRankMode::WorstCase).unwrap_err(),
            Error::SectionsRequired
        );
    }

    #[test]
    fn torsion_threshold_examples() {
        let t = system(2, &[2], 3, 1);
        assert_eq!(
            alpha_torsion_threshold(&p2(), &t).unwrap(),
            RationalPoly::linear(rint(2), rint(0))
        );
        let t = system(3, &[2], 3, 2);
        assert_eq!(
            alpha_torsion_threshold(&p2(), &t).unwrap(),
            RationalPoly::linear(rint(2), rat(1, 2))
        );
        assert_eq!(
            alpha_torsion_threshold(&p2(), &system(2, &[2], 3, 0)).unwrap_err(),
            Error::SectionsRequired
        );
    }

    #[test]
    fn torsion_threshold_sits_below_the_upper_bound() {
        let mut rng = SplitMix64(17);
        for _ in 0..100 {
            let n = rng.in_range(2, 8) as u32;
            let k = rng.in_range(1, i64::from(n) - 1) as u32;
            let t = system(n, &[rng.in_range(1, 6)], rng.in_range(-10, 30), k);
            let upper = alpha_upper_bound(&p2(), &t).unwrap();
            let torsion = alpha_torsion_threshold(&p2(), &t).unwrap();
            assert_eq!(torsion.cmp_eventual(&upper), Ordering::Less);
            // the gap is exactly (n/k)/(n-k)
            let gap = &upper - &torsion;
            let expected =
                rint(i64::from(n)) / rint(i64::from(k)) / rint(i64::from(n) - i64::from(k));
            assert_eq!(gap, RationalPoly::constant(expected));
        }
    }

    #[test]
    fn quotient_slope_examples() {
        let t = system(2, &[2], 3, 1);
        let sub = |c1h: i64| SheafNumerics::new(1, DivisorClass::from([c1h]), 0).unwrap();
        assert!(quotient_slope_inequality(&p2(), &t, &sub(1)).unwrap());
        assert!(quotient_slope_inequality(&p2(), &t, &sub(2)).unwrap());
        assert!(!quotient_slope_inequality(&p2(), &t, &sub(3)).unwrap());
    }

    #[test]
    fn strictness_case_c_is_unbounded_for_positive_degree() {
        let t = system(2, &[2], 3, 1);
        let case = StrictnessCase::C { sub_rank: 1, sub_sections: 1, sub_chi: rint(1) };
        let report = strictness_epsilon_threshold(&p2(), &t, &case).unwrap();
        assert!(report.verdict);
        assert_eq!(report.max_epsilon, Some(MaxEpsilon::Unbounded));
        // leading coefficient -((n-1)/n) c1.H = -1
        assert_eq!(report.bound_base.coeff(1), rint(-1));
    }

    #[test]
    fn strictness_rejects_nonpositive_delta() {
        let t = system(2, &[2], 3, 1);
        let a = StrictnessCase::A {
            sub_rank: 2,
            sub_sections: 1,
            sub_chi: rint(1),
            delta: rint(0),
        };
        assert_eq!(
            strictness_epsilon_threshold(&p2(), &t, &a).unwrap_err(),
            Error::NonPositiveDelta
        );
        let b = StrictnessCase::B {
            sub_rank: 2,
            sub_sections: 1,
            w_rank: 1,
            sub_chi: rint(1),
            delta: rint(-1),
        };
        assert_eq!(
            strictness_epsilon_threshold(&p2(), &t, &b).unwrap_err(),
            Error::NonPositiveDelta
        );
    }

    #[test]
    fn strictness_case_b_with_saturated_sections() {
        let t = system(2, &[2], 3, 1);
        // k' = rk(W) < n': the delta term alone carries the negativity
        let good = StrictnessCase::B {
            sub_rank: 2,
            sub_sections: 1,
            w_rank: 1,
            sub_chi: rint(1),
            delta: rint(1),
        };
        let report = strictness_epsilon_threshold(&p2(), &t, &good).unwrap();
        assert!(report.verdict);
        assert_eq!(report.max_epsilon, Some(MaxEpsilon::Unbounded));

        // k' = rk(W) = n': no m-coefficient survives and the constant term
        // (here 2 > 0) blocks every small epsilon
        let flat = StrictnessCase::B {
            sub_rank: 1,
            sub_sections: 1,
            w_rank: 1,
            sub_chi: rint(3),
            delta: rint(1),
        };
        let report = strictness_epsilon_threshold(&p2(), &t, &flat).unwrap();
        assert!(report.bound_base.coeff(1).is_zero());
        assert_eq!(report.bound_base.coeff(0), rint(2));
        assert!(!report.verdict);
        assert_eq!(report.max_epsilon, None);
    }

    #[test]
    fn strictness_case_a_slope_is_epsilon_free() {
        let t = system(3, &[2], 3, 1);
        let case = StrictnessCase::A {
            sub_rank: 2,
            sub_sections: 1,
            sub_chi: rint(5),
            delta: rat(1, 3),
        };
        let report = strictness_epsilon_threshold(&p2(), &t, &case).unwrap();
        // slope -(1/3)(2-1)/(2*2) = -1/12 < 0 regardless of epsilon
        assert_eq!(report.bound_base.coeff(1), rat(-1, 12));
        assert!(report.verdict);
        assert_eq!(report.max_epsilon, Some(MaxEpsilon::Unbounded));
    }

    #[test]
    fn strictness_case_d_sign_constraints() {
        let t = system(3, &[2], 3, 1);
        let bad = StrictnessCase::D { sub_sections: 1, w_rank: 1, w_c1h: 1, sub_chi: rint(0) };
        assert!(matches!(
            strictness_epsilon_threshold(&p2(), &t, &bad),
            Err(Error::InvalidParams(_))
        ));
        let good = StrictnessCase::D { sub_sections: 1, w_rank: 1, w_c1h: -1, sub_chi: rint(0) };
        let report = strictness_epsilon_threshold(&p2(), &t, &good).unwrap();
        // m-coefficient [c1(W).H + c1.H (k'-l)/(n-k)] / (n-k+l) = -1/3 < 0
        assert_eq!(report.bound_base.coeff(1), rat(-1, 3));
        assert!(report.verdict);
    }

    #[test]
    fn strict_failure_examples() {
        let t = system(2, &[2], 3, 1);
        // balanced candidate: both brackets vanish
        let balanced = SubsystemCandidate::from_ints(2, 0, 4, 1).unwrap();
        assert!(!strict_failure_condition(&p2(), &t, &balanced, &rint(1)).unwrap());

        let cand = SubsystemCandidate::from_ints(1, 0, 3, 1).unwrap();
        assert!(strict_failure_condition(&p2(), &t, &cand, &rint(1)).unwrap());

        let cand = SubsystemCandidate::from_ints(1, 0, 0, 1).unwrap();
        assert!(!strict_failure_condition(&p2(), &t, &cand, &rint(1)).unwrap());

        assert_eq!(
            strict_failure_condition(&p2(), &t, &cand, &rint(0)).unwrap_err(),
            Error::NonPositiveEpsilon
        );
    }

    #[test]
    fn epsilon_interpolation_monotonicity() {
        let mut rng = SplitMix64(23);
        for _ in 0..200 {
            let n = rng.in_range(2, 9) as u32;
            let k = rng.in_range(1, i64::from(n)) as u32;
            let p = rng.in_range(1, 6);
            let p_bigger = p + rng.in_range(1, 5);
            let q = RationalPoly::linear(
                rat(rng.in_range(-5, 5), rng.in_range(1, 4)),
                rat(rng.in_range(-5, 5), rng.in_range(1, 4)),
            );
            // force d - q eventually positive
            let bump = RationalPoly::linear(
                rat(rng.in_range(0, 5), 1),
                rat(rng.in_range(1, 9), rng.in_range(1, 4)),
            );
            let d = &q + &bump;
            let e_p = epsilon(n, k, &d, p, &q).unwrap();
            let e_pb = epsilon(n, k, &d, p_bigger, &q).unwrap();
            // (i): order in p matches the order of the epsilons
            assert_eq!(
                e_p.cmp_eventual(&e_pb),
                if n == k { Ordering::Equal } else { Ordering::Less }
            );
            // (ii): monotone in q
            let q_bigger = &q
                + &RationalPoly::linear(rint(rng.in_range(0, 3)), rat(rng.in_range(0, 9), 1));
            let e_q = epsilon(n, k, &d, p, &q_bigger).unwrap();
            assert_ne!(e_p.cmp_eventual(&e_q), Ordering::Greater);
        }
    }

    #[test]
    fn injectivity_bound_matches_displayed_quotient() {
        // (d - epsilon(k0, -d0)) / (n-k) = ((k-k0) d - n (-d0)) / (k (n-k+k0))
        let mut rng = SplitMix64(31);
        for _ in 0..200 {
            let n = rng.in_range(2, 9) as u32;
            let k = rng.in_range(1, i64::from(n) - 1) as u32;
            let k0 = rng.in_range(0, i64::from(k));
            let d = RationalPoly::linear(
                rat(rng.in_range(-9, 9), rng.in_range(1, 5)),
                rat(rng.in_range(-9, 9), rng.in_range(1, 5)),
            );
            let minus_d0 = RationalPoly::linear(
                rat(rng.in_range(-9, 9), rng.in_range(1, 5)),
                rat(rng.in_range(-9, 9), rng.in_range(1, 5)),
            );
            let eps = epsilon(n, k, &d, k0, &minus_d0).unwrap();
            let n_minus_k = rint(i64::from(n) - i64::from(k));
            let lhs = (&d - &eps).scale(&(rint(1) / n_minus_k));
            let rhs_num =
                &d.scale(&rint(i64::from(k) - k0)) - &minus_d0.scale(&rint(i64::from(n)));
            let rhs = rhs_num.scale(
                &(rint(1) / (rint(i64::from(k)) * rint(i64::from(n) - i64::from(k) + k0))),
            );
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn reduced_hilbert_is_affine_in_alpha() {
        let mut rng = SplitMix64(41);
        for _ in 0..100 {
            let n = rng.in_range(2, 8) as u32;
            let k = rng.in_range(1, i64::from(n) - 1) as u32;
            let t = system(n, &[rng.in_range(-6, 6)], rng.in_range(-10, 10), k);
            let a1 = alpha_lin(rng.in_range(1, 9), rng.in_range(-9, 9));
            let a2 = alpha_lin(rng.in_range(1, 9), rng.in_range(-9, 9));
            let c = rat(rng.in_range(1, 9), rng.in_range(1, 4));
            let combined = AlphaPoly::new(&a1.poly().clone() + &a2.poly().scale(&c)).unwrap();
            let lhs = reduced_hilbert(&p2(), &t, &combined).unwrap();
            let k_over_n = rint(i64::from(k)) / rint(i64::from(n));
            let rhs =
                &reduced_hilbert(&p2(), &t, &a1).unwrap() + &a2.poly().scale(&(c * k_over_n));
            assert_eq!(lhs, rhs);
        }
    }
}
