//! Report construction and rendering for every subcommand.
//!
//! JSON reports are wrapped in an envelope that echoes the resolved input,
//! so a consumer can re-parse the report, recompute and compare
//! bit-exactly. The `walls` subcommand is the exception: its JSON output is
//! a bare array of walls, as consumers script against the list directly.

use serde::{Deserialize, Serialize};

use cohsys::invariants::{chi_is_integral, euler_char, hilbert_poly_normalized, slope};
use cohsys::moduli::{
    clifford_bounds, dimension_lower_bound, generic_smoothness_predicate,
    grassmann_bundle_report, ModuliWarning,
};
use cohsys::stability::{
    alpha_injectivity_threshold, alpha_torsion_threshold, alpha_upper_bound,
    candidate_reduced_poly, check_against_candidate, generated_necessary_condition,
    injectivity_threshold_table, reduced_hilbert, AlphaPoly, CandidateVerdict, KernelRankMode,
    SubsystemCandidate,
};
use cohsys::walls::WallReport;
use cohsys::{SurfaceData, SystemType};
use num_traits::One;

use crate::config::{CliError, JobConfig, OptionsInput, SurfaceInput, SystemInput};
use crate::jsonio::{JsonPoly, JsonRat};

/// Resolved input echoed into every enveloped report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub surface: SurfaceInput,
    pub system: SystemInput,
    pub assert_ample: bool,
    pub assert_c2_large: bool,
}

impl InputEcho {
    pub fn from_config(config: &JobConfig) -> Self {
        InputEcho {
            surface: config.surface.clone(),
            system: config.system.clone(),
            assert_ample: config.options.assert_ample,
            assert_c2_large: config.options.assert_c2_large,
        }
    }

    /// Reassembles a config that recomputes to the same report.
    pub fn to_config(&self) -> JobConfig {
        JobConfig {
            surface: self.surface.clone(),
            system: self.system.clone(),
            window: None,
            options: OptionsInput {
                format: None,
                assert_ample: self.assert_ample,
                assert_c2_large: self.assert_c2_large,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope<R> {
    pub command: String,
    pub input: InputEcho,
    pub report: R,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateJson {
    pub n: u32,
    pub c1h: i64,
    pub chi: JsonRat,
    pub k: u32,
}

impl From<&SubsystemCandidate> for CandidateJson {
    fn from(cand: &SubsystemCandidate) -> Self {
        CandidateJson {
            n: cand.rank(),
            c1h: cand.c1h(),
            chi: JsonRat(cand.chi().clone()),
            k: cand.k(),
        }
    }
}

fn candidate_text(cand: &SubsystemCandidate) -> String {
    format!(
        "(n' = {}, c1'.H = {}, chi' = {}, k' = {})",
        cand.rank(),
        cand.c1h(),
        cand.chi(),
        cand.k()
    )
}

fn surface_text(surface: &SurfaceData, assert_ample: bool) -> Result<String, CliError> {
    let name = surface.name().unwrap_or("custom surface");
    Ok(format!(
        "surface: {} (rank {}, H^2 = {}, K.H = {}, chi(O) = {}), ampleness asserted: {}",
        name,
        surface.rank(),
        surface.h_squared()?,
        surface.canonical_dot_h()?,
        surface.chi_o(),
        if assert_ample { "yes" } else { "no" }
    ))
}

fn system_text(surface: &SurfaceData, system: &SystemType) -> Result<String, CliError> {
    Ok(format!(
        "system type: n = {}, c1.H = {}, c2 = {}, k = {}",
        system.n(),
        system.c1_dot_h(surface)?,
        system.c2(),
        system.k()
    ))
}

/// Input-consistency diagnostics shared by the stability-flavored commands.
pub fn stability_diagnostics(
    surface: &SurfaceData,
    system: &SystemType,
) -> Result<Vec<String>, CliError> {
    let mut notes = Vec::new();
    if !chi_is_integral(surface, &system.sheaf())? {
        let chi = euler_char(surface, &system.sheaf())?;
        notes.push(format!(
            "warning: chi(E) = {chi} is not an integer; the numerical class is not realized by a sheaf"
        ));
    }
    if system.c1_dot_h(surface)? <= 0 {
        notes.push(
            "warning: c1.H <= 0; the stability theory assumes c1.H > 0 for nonconstant alpha"
                .to_string(),
        );
    }
    Ok(notes)
}

// ---------------------------------------------------------------- info

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfoReport {
    pub c1h: i64,
    pub chi: JsonRat,
    pub chi_integral: bool,
    pub slope: JsonRat,
    pub hilbert_normalized: JsonPoly,
    pub generated_holds: bool,
    pub generated_witness: JsonPoly,
}

pub fn info_report(surface: &SurfaceData, system: &SystemType) -> Result<InfoReport, CliError> {
    let sheaf = system.sheaf();
    let generated = generated_necessary_condition(surface, system)?;
    Ok(InfoReport {
        c1h: system.c1_dot_h(surface)?,
        chi: JsonRat(euler_char(surface, &sheaf)?),
        chi_integral: chi_is_integral(surface, &sheaf)?,
        slope: JsonRat(slope(surface, &sheaf)?),
        hilbert_normalized: JsonPoly(hilbert_poly_normalized(surface, &sheaf)?),
        generated_holds: generated.holds,
        generated_witness: JsonPoly(generated.witness),
    })
}

pub fn info_text(
    surface: &SurfaceData,
    system: &SystemType,
    report: &InfoReport,
    assert_ample: bool,
) -> Result<String, CliError> {
    Ok(format!(
        "{}\n{}\nchi(E) = {}\nslope mu_H = {}\nnormalized Hilbert polynomial: {}\ngenerated necessary condition: {} (witness {})\n",
        surface_text(surface, assert_ample)?,
        system_text(surface, system)?,
        report.chi.0,
        report.slope.0,
        report.hilbert_normalized.0,
        if report.generated_holds { "holds" } else { "fails" },
        report.generated_witness.0,
    ))
}

// ---------------------------------------------------------------- bound

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelRankRow {
    pub k0: u32,
    pub alpha: JsonPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub alpha_max: JsonPoly,
    pub alpha_torsion: JsonPoly,
    pub alpha_injectivity_worst_case: JsonPoly,
    pub alpha_injectivity_by_kernel_rank: Vec<KernelRankRow>,
}

pub fn bound_report(surface: &SurfaceData, system: &SystemType) -> Result<BoundReport, CliError> {
    let rows = injectivity_threshold_table(surface, system)?
        .into_iter()
        .map(|(k0, alpha)| KernelRankRow { k0, alpha: JsonPoly(alpha) })
        .collect();
    Ok(BoundReport {
        alpha_max: JsonPoly(alpha_upper_bound(surface, system)?),
        alpha_torsion: JsonPoly(alpha_torsion_threshold(surface, system)?),
        alpha_injectivity_worst_case: JsonPoly(alpha_injectivity_threshold(
            surface,
            system,
            KernelRankMode::WorstCase,
        )?),
        alpha_injectivity_by_kernel_rank: rows,
    })
}

pub fn bound_text(report: &BoundReport) -> String {
    let mut out = format!(
        "alpha_max = {}\nalpha_T = {}\nalpha_I (worst case over kernel ranks) = {}\n",
        report.alpha_max.0, report.alpha_torsion.0, report.alpha_injectivity_worst_case.0,
    );
    if report.alpha_injectivity_by_kernel_rank.is_empty() {
        out.push_str("alpha_I by kernel rank: none (k <= 1 leaves no admissible kernel rank)\n");
    } else {
        out.push_str("alpha_I by kernel rank:\n");
        for row in &report.alpha_injectivity_by_kernel_rank {
            out.push_str(&format!("  k0 = {}: {}\n", row.k0, row.alpha.0));
        }
    }
    out
}

// ---------------------------------------------------------------- walls

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallJson {
    pub alpha: JsonPoly,
    pub witnesses: Vec<CandidateJson>,
}

pub fn walls_json(report: &WallReport) -> Vec<WallJson> {
    report
        .walls
        .iter()
        .map(|wall| WallJson {
            alpha: JsonPoly(wall.alpha.poly().clone()),
            witnesses: wall.witnesses.iter().map(CandidateJson::from).collect(),
        })
        .collect()
}

pub fn walls_text(report: &WallReport) -> String {
    let mut out = String::new();
    if report.walls.is_empty() {
        out.push_str("no candidate critical values in the window\n");
    }
    for (i, wall) in report.walls.iter().enumerate() {
        out.push_str(&format!("wall {}: alpha = {}\n", i + 1, wall.alpha.poly()));
        for witness in &wall.witnesses {
            out.push_str(&format!("  witness {}\n", candidate_text(witness)));
        }
    }
    if !report.alpha_independent.is_empty() {
        out.push_str("alpha-independent destabilizers:\n");
        for cand in &report.alpha_independent {
            out.push_str(&format!("  {}\n", candidate_text(cand)));
        }
    }
    out
}

/// Stderr lines for destabilizers that beat the type for every alpha.
pub fn alpha_independent_diagnostics(report: &WallReport) -> Vec<String> {
    report
        .alpha_independent
        .iter()
        .map(|cand| {
            format!(
                "note: alpha-independent destabilizer {}",
                candidate_text(cand)
            )
        })
        .collect()
}

// ---------------------------------------------------------------- dim

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimHypothesesJson {
    pub kc1h_condition: bool,
    pub coprime_advisory: bool,
    pub c2_large_asserted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimReport {
    pub dim_moduli: i64,
    pub ext_fiber: JsonRat,
    pub fiber_dim: JsonRat,
    pub total_dim: JsonRat,
    pub identity_holds: bool,
    /// `exact` when the sign condition holds, else `lower_bound`.
    pub dimension_reading: String,
    pub hypotheses: DimHypothesesJson,
    pub warnings: Vec<String>,
}

fn moduli_warning_text(warning: ModuliWarning) -> &'static str {
    match warning {
        ModuliWarning::EmptyFiber => "fiber dimension source p is below k: empty Grassmannian",
        ModuliWarning::NegativeModuliDim => "moduli space of sheaves has negative expected dimension",
        ModuliWarning::NonIntegralInvariants => "c1^2 + c1.K is odd: invariants are half-integral",
    }
}

pub fn dim_report(
    surface: &SurfaceData,
    system: &SystemType,
    c2_large_asserted: bool,
) -> Result<DimReport, CliError> {
    let report = grassmann_bundle_report(surface, system, c2_large_asserted)?;
    let bound = dimension_lower_bound(surface, system, c2_large_asserted)?;
    Ok(DimReport {
        dim_moduli: report.dim_moduli,
        ext_fiber: JsonRat(report.ext_fiber),
        fiber_dim: JsonRat(report.fiber_dim),
        total_dim: JsonRat(report.total_dim),
        identity_holds: report.identity_holds,
        dimension_reading: if bound.exact_reading { "exact" } else { "lower_bound" }.to_string(),
        hypotheses: DimHypothesesJson {
            kc1h_condition: report.hypotheses.kc1h_condition,
            coprime_advisory: report.hypotheses.coprime_advisory,
            c2_large_asserted: report.hypotheses.c2_large_asserted,
        },
        warnings: report.warnings.iter().map(|w| moduli_warning_text(*w).to_string()).collect(),
    })
}

pub fn dim_text(report: &DimReport) -> String {
    let mut out = format!(
        "dim M(n-k; c1, c2) = {}\np = {}\nfiber dim k(p - k) = {}\ntotal dim = {}\nidentity total = dim M + k p - k^2: {}\nhypotheses: ((n-k)K + c1).H <= 0: {}; gcd(n-k, c1.H) = 1: {}; c2 large (asserted): {}\nreading: {}\n",
        report.dim_moduli,
        report.ext_fiber.0,
        report.fiber_dim.0,
        report.total_dim.0,
        if report.identity_holds { "ok" } else { "FAILED" },
        yes_no(report.hypotheses.kc1h_condition),
        yes_no(report.hypotheses.coprime_advisory),
        yes_no(report.hypotheses.c2_large_asserted),
        if report.dimension_reading == "exact" { "exact dimension" } else { "lower bound only" },
    );
    for warning in &report.warnings {
        out.push_str(&format!("warning: {warning}\n"));
    }
    out
}

fn yes_no(b: bool) -> &'static str {
    if b { "yes" } else { "no" }
}

// ---------------------------------------------------------------- clifford

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordConditionsJson {
    pub kh_nonpositive: bool,
    pub h2_inequality: Option<bool>,
    pub degree_window: Option<bool>,
    pub surface_is_p2: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordReportJson {
    pub bound_i: Option<JsonRat>,
    pub a_used: Option<i64>,
    pub bound_ii: Option<JsonRat>,
    pub conditions: CliffordConditionsJson,
}

pub fn clifford_report(
    surface: &SurfaceData,
    system: &SystemType,
    a: Option<i64>,
) -> Result<CliffordReportJson, CliError> {
    let report = clifford_bounds(surface, system, a)?;
    Ok(CliffordReportJson {
        bound_i: report.bound_i.map(JsonRat),
        a_used: report.a_used,
        bound_ii: report.bound_ii.map(JsonRat),
        conditions: CliffordConditionsJson {
            kh_nonpositive: report.conditions.kh_nonpositive,
            h2_inequality: report.conditions.h2_inequality,
            degree_window: report.conditions.degree_window,
            surface_is_p2: report.conditions.surface_is_p2,
        },
    })
}

pub fn clifford_text(report: &CliffordReportJson) -> String {
    let mut out = String::new();
    match (&report.bound_i, report.a_used) {
        (Some(bound), Some(a)) => {
            out.push_str(&format!("section bound (general surface, a = {a}): h^0(E) <= {}\n", bound.0));
        }
        _ => out.push_str("section bound (general surface): not applicable\n"),
    }
    match &report.bound_ii {
        Some(bound) => {
            out.push_str(&format!("section bound (projective plane): h^0(E) <= {}\n", bound.0));
        }
        None => out.push_str("section bound (projective plane): not applicable\n"),
    }
    out.push_str(&format!(
        "conditions: K.H <= 0: {}; H^2 inequality: {}; degree window: {}; surface is P2: {}\n",
        yes_no(report.conditions.kh_nonpositive),
        opt_yes_no(report.conditions.h2_inequality),
        opt_yes_no(report.conditions.degree_window),
        yes_no(report.conditions.surface_is_p2),
    ));
    out
}

fn opt_yes_no(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "not evaluated",
    }
}

// ---------------------------------------------------------------- smooth

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothReport {
    pub generically_smooth: bool,
    pub steiner_kernel_rank: i64,
    pub steiner_source_rank: i64,
}

pub fn smooth_report(surface: &SurfaceData, system: &SystemType) -> Result<SmoothReport, CliError> {
    let report = generic_smoothness_predicate(surface, system)?;
    Ok(SmoothReport {
        generically_smooth: report.generically_smooth,
        steiner_kernel_rank: report.steiner_kernel_rank,
        steiner_source_rank: report.steiner_source_rank,
    })
}

pub fn smooth_text(report: &SmoothReport) -> String {
    format!(
        "generically smooth: {}\nSteiner resolution ranks: O(-1)^{} -> O^{}\n",
        yes_no(report.generically_smooth),
        report.steiner_kernel_rank,
        report.steiner_source_rank,
    )
}

// ---------------------------------------------------------------- check

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub alpha: JsonPoly,
    pub candidate: CandidateJson,
    pub verdict: String,
    pub candidate_poly: JsonPoly,
    pub ambient_poly: JsonPoly,
}

pub fn check_report(
    surface: &SurfaceData,
    system: &SystemType,
    alpha: &AlphaPoly,
    cand: &SubsystemCandidate,
) -> Result<CheckReport, CliError> {
    let verdict = check_against_candidate(surface, system, alpha, cand)?;
    Ok(CheckReport {
        alpha: JsonPoly(alpha.poly().clone()),
        candidate: CandidateJson::from(cand),
        verdict: match verdict {
            CandidateVerdict::StrictlyStable => "strictly_stable",
            CandidateVerdict::Semistable => "semistable",
            CandidateVerdict::Destabilized => "destabilized",
        }
        .to_string(),
        candidate_poly: JsonPoly(candidate_reduced_poly(surface, alpha, cand)?),
        ambient_poly: JsonPoly(reduced_hilbert(surface, system, alpha)?),
    })
}

pub fn check_text(report: &CheckReport) -> String {
    format!(
        "alpha = {}\ncandidate reduced polynomial: {}\nambient reduced polynomial: {}\nverdict: {}\n",
        report.alpha.0, report.candidate_poly.0, report.ambient_poly.0, report.verdict,
    )
}

/// Diagnostic for candidates whose Euler characteristic is not an integer.
pub fn candidate_diagnostics(cand: &SubsystemCandidate) -> Vec<String> {
    if cand.chi().denom().is_one() {
        Vec::new()
    } else {
        vec![format!(
            "warning: candidate chi' = {} is not an integer",
            cand.chi()
        )]
    }
}

// ---------------------------------------------------------------- envelopes

pub fn info_envelope(config: &JobConfig) -> Result<Envelope<InfoReport>, CliError> {
    let (surface, system) = config.resolve()?;
    Ok(Envelope {
        command: "info".to_string(),
        input: InputEcho::from_config(config),
        report: info_report(&surface, &system)?,
    })
}

pub fn bound_envelope(config: &JobConfig) -> Result<Envelope<BoundReport>, CliError> {
    let (surface, system) = config.resolve()?;
    Ok(Envelope {
        command: "bound".to_string(),
        input: InputEcho::from_config(config),
        report: bound_report(&surface, &system)?,
    })
}

pub fn dim_envelope(config: &JobConfig) -> Result<Envelope<DimReport>, CliError> {
    let (surface, system) = config.resolve()?;
    Ok(Envelope {
        command: "dim".to_string(),
        input: InputEcho::from_config(config),
        report: dim_report(&surface, &system, config.options.assert_c2_large)?,
    })
}

pub fn clifford_envelope(
    config: &JobConfig,
    a: Option<i64>,
) -> Result<Envelope<CliffordReportJson>, CliError> {
    let (surface, system) = config.resolve()?;
    Ok(Envelope {
        command: "clifford".to_string(),
        input: InputEcho::from_config(config),
        report: clifford_report(&surface, &system, a)?,
    })
}

pub fn smooth_envelope(config: &JobConfig) -> Result<Envelope<SmoothReport>, CliError> {
    let (surface, system) = config.resolve()?;
    Ok(Envelope {
        command: "smooth".to_string(),
        input: InputEcho::from_config(config),
        report: smooth_report(&surface, &system)?,
    })
}
