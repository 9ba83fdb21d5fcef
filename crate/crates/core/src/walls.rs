//! Enumeration of candidate critical values over a finite search window.
//!
//! For a fixed type, a candidate `(n', s', chi', k')` produces a wall where
//! its reduced polynomial equals the ambient one. The quadratic terms agree
//! on both sides, so the equality solves to a single linear polynomial in
//! `m` whenever `k'/n' != k/n`:
//!
//! ```text
//! alpha = [ (c1.H/n - s'/n') m + (chi/n - chi'/n') ] / (k'/n' - k/n) .
//! ```
//!
//! Candidates with `k'/n' = k/n` have no alpha dependence; the ones whose
//! polynomial exceeds the ambient one destabilize for *every* alpha and are
//! reported in a separate list rather than dropped.
//!
//! The true critical values are finitely many, but no effective localization
//! of the candidate invariants is available at this level of generality, so
//! enumeration runs over a user-supplied (or default) window and emitted
//! walls are candidate critical values: nothing certifies that a numerical
//! candidate is realized by an actual subsystem.
//!
//! Enumeration may be split into disjoint index ranges, run on independent
//! workers and merged: the canonical output is identical for every split.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::Range;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::invariants::euler_char;
use crate::lattice::SurfaceData;
use crate::qpoly::{rint, Rat, RationalPoly};
use crate::stability::{
    alpha_upper_bound, candidate_reduced_poly, reduced_hilbert, AlphaPoly, SubsystemCandidate,
};
use crate::SystemType;

/// Finite search box for subsystem candidates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallSearchWindow {
    pub n_max: u32,
    pub k_max: u32,
    pub s_min: i64,
    pub s_max: i64,
    pub chi_min: i64,
    pub chi_max: i64,
}

impl WallSearchWindow {
    pub fn new(
        n_max: u32,
        k_max: u32,
        s_min: i64,
        s_max: i64,
        chi_min: i64,
        chi_max: i64,
    ) -> Result<Self, Error> {
        if n_max == 0 {
            return Err(Error::InvalidWindow("n_max must be positive"));
        }
        if s_min > s_max {
            return Err(Error::InvalidWindow("s_min exceeds s_max"));
        }
        if chi_min > chi_max {
            return Err(Error::InvalidWindow("chi_min exceeds chi_max"));
        }
        Ok(WallSearchWindow { n_max, k_max, s_min, s_max, chi_min, chi_max })
    }

    /// Default window for a type: `s'` brackets `[-|c1.H| - 2, c1.H + 2]`,
    /// `chi'` brackets `chi(E)` by 4 on both sides, ranks up to the ambient
    /// ones. Wide enough for desk-scale examples and overridable.
    pub fn default_for(s: &SurfaceData, t: &SystemType) -> Result<Self, Error> {
        let c1h = t.c1_dot_h(s)?;
        let chi = euler_char(s, &t.sheaf())?;
        let chi_mag = chi.abs().ceil().to_integer().to_i64().ok_or(Error::Overflow)?;
        Self::new(t.n(), t.k(), -c1h.abs() - 2, c1h + 2, -chi_mag - 4, chi_mag + 4)
    }

    fn spans(&self) -> (u64, u64, u64, u64) {
        let n = u64::from(self.n_max);
        let k = u64::from(self.k_max) + 1;
        let s = (self.s_max - self.s_min + 1) as u64;
        let c = (self.chi_max - self.chi_min + 1) as u64;
        (n, k, s, c)
    }

    /// Number of grid points (the ambient tuple is skipped only during
    /// enumeration, so it still counts here).
    pub fn candidate_count(&self) -> u64 {
        let (n, k, s, c) = self.spans();
        n * k * s * c
    }

    /// Decodes a linear index into a candidate; iteration order is `n'`
    /// outermost, then `k'`, `s'`, `chi'`, all ascending.
    pub fn candidate_at(&self, index: u64) -> SubsystemCandidate {
        let (_, k, s, c) = self.spans();
        let n_i = index / (k * s * c);
        let rest = index % (k * s * c);
        let k_i = rest / (s * c);
        let rest = rest % (s * c);
        let s_i = rest / c;
        let c_i = rest % c;
        SubsystemCandidate::new(
            (n_i + 1) as u32,
            self.s_min + s_i as i64,
            rint(self.chi_min + c_i as i64),
            k_i as u32,
        )
        .expect("window indices decode to positive rank")
    }

    fn validate_for(&self, t: &SystemType) -> Result<(), Error> {
        if self.n_max > t.n() {
            return Err(Error::InvalidWindow("n_max exceeds the ambient rank"));
        }
        if self.k_max > t.k() {
            return Err(Error::InvalidWindow("k_max exceeds the ambient k"));
        }
        Ok(())
    }
}

/// A candidate critical value with every candidate in the window that
/// produces it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wall {
    pub alpha: AlphaPoly,
    pub witnesses: Vec<SubsystemCandidate>,
}

/// Result of a window enumeration: walls sorted ascending in the eventual
/// order, plus the alpha-independent destabilizers found along the way.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WallReport {
    pub walls: Vec<Wall>,
    pub alpha_independent: Vec<SubsystemCandidate>,
}

/// A single enumeration event, before deduplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WallHit {
    Wall { alpha: AlphaPoly, witness: SubsystemCandidate },
    AlphaIndependent(SubsystemCandidate),
}

/// Solves the wall equation for one candidate. `None` when the candidate
/// has no alpha dependence (`k'/n' = k/n`) or when the solved value is not
/// eventually positive.
pub fn wall_of_candidate(
    s: &SurfaceData,
    t: &SystemType,
    cand: &SubsystemCandidate,
) -> Result<Option<AlphaPoly>, Error> {
    cand.validate_against(s, t)?;
    let ambient = AmbientData::compute(s, t)?;
    Ok(solve_wall(&ambient, cand))
}

struct AmbientData {
    n: Rat,
    k: Rat,
    c1h: Rat,
    chi: Rat,
}

impl AmbientData {
    fn compute(s: &SurfaceData, t: &SystemType) -> Result<Self, Error> {
        Ok(AmbientData {
            n: rint(i64::from(t.n())),
            k: rint(i64::from(t.k())),
            c1h: rint(t.c1_dot_h(s)?),
            chi: euler_char(s, &t.sheaf())?,
        })
    }
}

fn solve_wall(ambient: &AmbientData, cand: &SubsystemCandidate) -> Option<AlphaPoly> {
    let n_sub = rint(i64::from(cand.rank()));
    let k_sub = rint(i64::from(cand.k()));
    let kdiff = &k_sub / &n_sub - &ambient.k / &ambient.n;
    if kdiff.is_zero() {
        return None;
    }
    let slope = (&ambient.c1h / &ambient.n - rint(cand.c1h()) / &n_sub) / &kdiff;
    let intercept = (&ambient.chi / &ambient.n - cand.chi() / &n_sub) / &kdiff;
    let alpha = RationalPoly::linear(slope, intercept);
    if alpha.is_eventually_positive() {
        Some(AlphaPoly::new(alpha).expect("linear eventually positive polynomial"))
    } else {
        None
    }
}

/// Whether a candidate with `k'/n' = k/n` beats the ambient polynomial for
/// every alpha (the alpha terms cancel, so only the alpha-free parts are
/// compared).
fn alpha_independent_exceeds(ambient: &AmbientData, cand: &SubsystemCandidate) -> bool {
    let n_sub = rint(i64::from(cand.rank()));
    let cand_part = RationalPoly::linear(rint(cand.c1h()) / &n_sub, cand.chi() / &n_sub);
    let ambient_part =
        RationalPoly::linear(&ambient.c1h / &ambient.n, &ambient.chi / &ambient.n);
    cand_part.cmp_eventual(&ambient_part) == Ordering::Greater
}

/// Enumerates one contiguous index range of the window, in index order.
/// Hits are emitted for walls inside `(0, alpha_upper_bound]` and for
/// alpha-independent destabilizers; the ambient tuple is skipped.
pub fn collect_hits(
    s: &SurfaceData,
    t: &SystemType,
    window: &WallSearchWindow,
    range: Range<u64>,
) -> Result<Vec<WallHit>, Error> {
    window.validate_for(t)?;
    let ambient = AmbientData::compute(s, t)?;
    let upper = alpha_upper_bound(s, t)?;
    let ambient_tuple = (t.n(), t.c1_dot_h(s)?, euler_char(s, &t.sheaf())?, t.k());
    let mut hits = Vec::new();
    for index in range {
        let cand = window.candidate_at(index);
        if (cand.rank(), cand.c1h(), cand.chi().clone(), cand.k()) == ambient_tuple {
            continue;
        }
        let n_sub = rint(i64::from(cand.rank()));
        let kdiff = rint(i64::from(cand.k())) / &n_sub - &ambient.k / &ambient.n;
        if kdiff.is_zero() {
            if alpha_independent_exceeds(&ambient, &cand) {
                hits.push(WallHit::AlphaIndependent(cand));
            }
            continue;
        }
        if let Some(alpha) = solve_wall(&ambient, &cand) {
            if alpha.poly().cmp_eventual(&upper) != Ordering::Greater {
                hits.push(WallHit::Wall { alpha, witness: cand });
            }
        }
    }
    Ok(hits)
}

/// Merges hit streams (in enumeration order) into the canonical report:
/// walls deduplicated by exact polynomial equality, witnesses in
/// enumeration order, walls sorted ascending under the eventual order.
pub fn canonicalize_hits(hits: Vec<WallHit>) -> WallReport {
    let mut walls: Vec<Wall> = Vec::new();
    let mut alpha_independent = Vec::new();
    for hit in hits {
        match hit {
            WallHit::Wall { alpha, witness } => {
                match walls.iter_mut().find(|w| w.alpha == alpha) {
                    Some(wall) => wall.witnesses.push(witness),
                    None => walls.push(Wall { alpha, witnesses: alloc::vec![witness] }),
                }
            }
            WallHit::AlphaIndependent(cand) => alpha_independent.push(cand),
        }
    }
    walls.sort_by(|a, b| a.alpha.poly().cmp_eventual(b.alpha.poly()));
    WallReport { walls, alpha_independent }
}

/// Full enumeration over the window.
pub fn enumerate_walls(
    s: &SurfaceData,
    t: &SystemType,
    window: &WallSearchWindow,
) -> Result<WallReport, Error> {
    let hits = collect_hits(s, t, window, 0..window.candidate_count())?;
    Ok(canonicalize_hits(hits))
}

/// Pointwise cross-check: evaluates both reduced polynomials at each sample
/// and reports the sign of candidate minus ambient.
pub fn oracle_compare_at_samples(
    s: &SurfaceData,
    t: &SystemType,
    alpha: &AlphaPoly,
    cand: &SubsystemCandidate,
    samples: &[Rat],
) -> Result<Vec<Ordering>, Error> {
    let cand_poly = candidate_reduced_poly(s, alpha, cand)?;
    let ambient_poly = reduced_hilbert(s, t, alpha)?;
    Ok(samples
        .iter()
        .map(|m0| {
            let diff = cand_poly.eval(m0) - ambient_poly.eval(m0);
            if diff.is_zero() {
                Ordering::Equal
            } else if diff.is_positive() {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        })
        .collect())
}
