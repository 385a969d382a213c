//! JSON shapes of command results. Field names are a stable interface.

use serde::Serialize;
use ulrich_core::{
    FreenessVerdict, HilbertSamuelTable, HomProbe, LinkageReport, MinimalMultiplicity, RegularityReport, UlrichIdealReport, UlrichModuleReport,
};

use crate::engine::Engine;

pub const ENGINE: &str = concat!("ulrich-kit ", env!("CARGO_PKG_VERSION"));

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report<T: Serialize> {
    pub command: String,
    pub source: String,
    pub engine: &'static str,
    pub characteristic: u32,
    pub ok: bool,
    pub result: T,
    pub timings: Timings,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Timings {
    pub elapsed_ms: u64,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ErrorReport {
    pub command: String,
    pub ok: bool,
    pub error: ErrorBody,
}

#[derive(Serialize)]
pub struct ErrorBody {
    pub kind: &'static str,
    pub message: String,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Periodicity {
    pub start: usize,
    pub period: usize,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ResolveJson {
    pub module: String,
    pub steps: usize,
    pub betti: Vec<usize>,
    pub periodic: Option<Periodicity>,
    /// `differentials[i]` is the matrix of `∂_{i+1}`, row by row.
    pub differentials: Vec<Vec<Vec<String>>>,
}

#[derive(Serialize)]
pub struct UlrichIdealJson {
    #[serde(rename = "isMPrimary")]
    pub is_m_primary: bool,
    #[serde(rename = "reductionExponent")]
    pub reduction_exponent: usize,
    #[serde(rename = "squareEqualsQI")]
    pub square_equals_qi: bool,
    #[serde(rename = "conormalFree")]
    pub conormal_free: bool,
    #[serde(rename = "isUlrich")]
    pub is_ulrich: bool,
    #[serde(rename = "isGorenstein")]
    pub is_gorenstein: bool,
    #[serde(rename = "isParameter")]
    pub is_parameter: bool,
}

impl From<&UlrichIdealReport> for UlrichIdealJson {
    fn from(r: &UlrichIdealReport) -> Self {
        UlrichIdealJson {
            is_m_primary: r.is_m_primary,
            reduction_exponent: r.reduction_exponent,
            square_equals_qi: r.square_equals_qi,
            conormal_free: r.conormal_free,
            is_ulrich: r.is_ulrich,
            is_gorenstein: r.is_gorenstein,
            is_parameter: r.is_parameter,
        }
    }
}

#[derive(Serialize)]
pub struct UlrichModuleJson {
    pub mcm: bool,
    #[serde(rename = "colonEquality")]
    pub colon_equality: bool,
    #[serde(rename = "freeOverQuotient")]
    pub free_over_quotient: bool,
    #[serde(rename = "isUlrich")]
    pub is_ulrich: bool,
    pub nu: usize,
    pub e0: Option<u64>,
    #[serde(rename = "lengthMIM")]
    pub length_mim: u64,
}

impl From<&UlrichModuleReport> for UlrichModuleJson {
    fn from(r: &UlrichModuleReport) -> Self {
        UlrichModuleJson {
            mcm: r.mcm,
            colon_equality: r.colon_equality,
            free_over_quotient: r.free_over_quotient,
            is_ulrich: r.is_ulrich,
            nu: r.nu,
            e0: r.e0,
            length_mim: r.length_mim,
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LinkageJson {
    pub stable: bool,
    pub trace_ideal_in_maximal: bool,
    pub ext1_tr_vanishes: bool,
    pub horizontally_linked: bool,
    /// `λM` has the presentation of `M` up to row/column permutation and scaling.
    pub lambda_equivalent: bool,
    pub transpose: Vec<Vec<String>>,
    pub lambda: Vec<Vec<String>>,
}

impl LinkageJson {
    pub fn new(e: &Engine, r: &LinkageReport, lambda_equivalent: bool) -> Self {
        LinkageJson {
            stable: r.stable,
            trace_ideal_in_maximal: r.trace_ideal_in_maximal,
            ext1_tr_vanishes: r.ext1_tr_vanishes,
            horizontally_linked: r.horizontally_linked,
            lambda_equivalent,
            transpose: e.show_matrix(r.transpose.presentation()),
            lambda: e.show_matrix(r.lambda.presentation()),
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HilbertJson {
    pub values: Vec<u64>,
    pub dim: usize,
    pub stabilized_from: Option<usize>,
    pub coefficients: Vec<i64>,
    pub polynomial_valid: bool,
    pub e0: Option<i64>,
    pub e1: Option<i64>,
}

impl From<&HilbertSamuelTable> for HilbertJson {
    fn from(t: &HilbertSamuelTable) -> Self {
        HilbertJson {
            values: t.values.clone(),
            dim: t.dim,
            stabilized_from: t.stabilized_from,
            coefficients: t.coefficients.clone(),
            polynomial_valid: t.polynomial_valid,
            e0: t.e(0),
            e1: if t.dim == 0 { Some(0) } else { t.e(1) },
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MinimalMultiplicityJson {
    pub holds: bool,
    pub definition_equality: bool,
    #[serde(rename = "qIMEqualsI2M")]
    pub q_im_equals_i2m: bool,
    pub chern_identity: Option<bool>,
    pub e0: i64,
    pub e1: Option<i64>,
    #[serde(rename = "lengthMIM")]
    pub length_m_im: u64,
    #[serde(rename = "lengthIMI2M")]
    pub length_im_i2m: u64,
}

impl From<&MinimalMultiplicity> for MinimalMultiplicityJson {
    fn from(m: &MinimalMultiplicity) -> Self {
        MinimalMultiplicityJson {
            holds: m.holds,
            definition_equality: m.definition_equality,
            q_im_equals_i2m: m.q_im_equals_i2m,
            chern_identity: m.chern_identity,
            e0: m.e0,
            e1: m.e1,
            length_m_im: m.length_m_im,
            length_im_i2m: m.length_im_i2m,
        }
    }
}

/// `regRees` and `regAssocGraded` are `"not determined"` unless minimal
/// multiplicity holds.
#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RegularityJson {
    pub r_q: usize,
    pub min_mult: bool,
    pub reg_rees: serde_json::Value,
    pub reg_assoc_graded: serde_json::Value,
    pub via_theorem: bool,
    pub intersection_condition: Option<bool>,
    /// Cohen–Macaulayness of the associated graded module, as a theorem consequence only.
    pub assoc_graded_cohen_macaulay_by_theorem: bool,
    pub minimal_multiplicity: MinimalMultiplicityJson,
}

fn determined(v: Option<usize>) -> serde_json::Value {
    match v {
        Some(x) => serde_json::Value::from(x),
        None => serde_json::Value::from("not determined"),
    }
}

impl RegularityJson {
    pub fn new(r: &RegularityReport, mm: &MinimalMultiplicity, ulrich: bool) -> Self {
        RegularityJson {
            r_q: r.r_q,
            min_mult: r.min_mult,
            reg_rees: determined(r.reg_rees),
            reg_assoc_graded: determined(r.reg_assoc_graded),
            via_theorem: r.via_theorem,
            intersection_condition: r.intersection_condition,
            assoc_graded_cohen_macaulay_by_theorem: ulrich,
            minimal_multiplicity: mm.into(),
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HomProbeJson {
    pub n: usize,
    pub hypotheses_met: bool,
    pub failed_hypothesis: Option<String>,
    pub m_mcm: bool,
    pub n_mcm: bool,
    pub hom_nonzero: bool,
    pub ext_vanishing: Vec<bool>,
    pub m_ulrich: bool,
    pub n_ulrich: bool,
    pub hom_ulrich: Option<bool>,
    pub hom_mod_i_free: Option<bool>,
    pub residual_free: Option<bool>,
    pub equivalent: Option<bool>,
}

impl From<&HomProbe> for HomProbeJson {
    fn from(p: &HomProbe) -> Self {
        HomProbeJson {
            n: p.n,
            hypotheses_met: p.hypotheses_met,
            failed_hypothesis: p.failed_hypothesis.clone(),
            m_mcm: p.m_mcm,
            n_mcm: p.n_mcm,
            hom_nonzero: p.hom_nonzero,
            ext_vanishing: p.ext_vanishing.clone(),
            m_ulrich: p.m_ulrich,
            n_ulrich: p.n_ulrich,
            hom_ulrich: p.hom_ulrich,
            hom_mod_i_free: p.hom_mod_i_free,
            residual_free: p.residual_free,
            equivalent: p.equivalent,
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HypothesisJson {
    pub name: String,
    pub holds: bool,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VanishingJson {
    pub index: usize,
    pub vanishes: bool,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FreenessJson {
    pub mode: String,
    pub hypotheses: Vec<HypothesisJson>,
    pub hypotheses_met: bool,
    pub failed_hypothesis: Option<String>,
    pub vanishing: Vec<VanishingJson>,
    pub vanishing_met: bool,
    pub free: bool,
    pub asserted: bool,
    pub note: Option<String>,
}

impl From<&FreenessVerdict> for FreenessJson {
    fn from(v: &FreenessVerdict) -> Self {
        FreenessJson {
            mode: v.mode.to_string(),
            hypotheses: v.hypotheses.iter().map(|h| HypothesisJson { name: h.name.clone(), holds: h.holds }).collect(),
            hypotheses_met: v.hypotheses_met,
            failed_hypothesis: v.failed_hypothesis.clone(),
            vanishing: v.vanishing.iter().map(|&(index, vanishes)| VanishingJson { index, vanishes }).collect(),
            vanishing_met: v.vanishing_met,
            free: v.free,
            asserted: v.asserted,
            note: v.note.clone(),
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RegularIffUlrichJson {
    pub is_regular: bool,
    pub ring_ulrich_wrt_maximal: bool,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InvariantsJson {
    pub dim: usize,
    pub embedding_dimension: u64,
    pub is_regular: bool,
    pub ring_length: Option<u64>,
    pub ideal: Option<IdealInvariantsJson>,
    pub module: Option<ModuleInvariantsJson>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IdealInvariantsJson {
    pub name: String,
    pub num_generators: usize,
    pub colength: Option<u64>,
    pub loewy_length: Option<usize>,
    pub socle_dimension: Option<u64>,
    pub reduction_exponent: Option<usize>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ModuleInvariantsJson {
    pub name: String,
    pub nu: usize,
    pub length: Option<u64>,
    pub rank: usize,
    pub maximal_cohen_macaulay: Option<bool>,
    pub presentation: Vec<Vec<String>>,
}

#[derive(Serialize, Clone, Debug)]
#[serde(rename_all = "camelCase")]
pub struct CriterionJson {
    pub id: usize,
    pub title: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyJson {
    pub criteria: Vec<CriterionJson>,
    pub passed: usize,
    pub failed: usize,
}
