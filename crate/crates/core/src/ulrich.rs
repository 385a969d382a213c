//! Ulrich ideals, Ulrich modules with respect to an ideal, and the
//! consistency probes built on top of them.

use std::fmt;
use std::str::FromStr;

use crate::error::{AlgebraError, Result};
use crate::hilbert::DEFAULT_K_MAX;
use crate::ideal::{as_vectors, IdealData, DEFAULT_N_MAX, DEFAULT_R_MAX};
use crate::module::ModuleData;
use crate::poly::Poly;
use crate::ring::AmbientRing;

/// Size of the search window for vanishing Ext/Tor in the freeness probe.
pub const DEFAULT_VANISHING_WINDOW: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UlrichIdealReport {
    pub is_m_primary: bool,
    pub reduction_exponent: usize,
    pub square_equals_qi: bool,
    pub conormal_free: bool,
    pub is_ulrich: bool,
    pub is_gorenstein: bool,
    pub is_parameter: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UlrichModuleReport {
    pub mcm: bool,
    pub colon_equality: bool,
    pub free_over_quotient: bool,
    pub is_ulrich: bool,
    pub nu: usize,
    /// `ℓ(M/QM)`, which is the multiplicity `e⁰_I(M)` for maximal Cohen–Macaulay `M`.
    pub e0: Option<u64>,
    pub length_mim: u64,
}

/// `Ω^k(R/I)` together with its Ulrich verdict.
#[derive(Clone, Debug)]
pub struct UlrichSyzygy {
    pub k: usize,
    pub module: ModuleData,
    pub report: Option<UlrichModuleReport>,
    pub warning: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomProbe {
    pub n: usize,
    pub hypotheses_met: bool,
    pub failed_hypothesis: Option<String>,
    pub m_mcm: bool,
    pub n_mcm: bool,
    pub hom_nonzero: bool,
    pub ext_vanishing: Vec<bool>,
    pub m_ulrich: bool,
    pub n_ulrich: bool,
    /// `Hom(M, N)` is Ulrich with respect to `I`.
    pub hom_ulrich: Option<bool>,
    /// `Hom(M, N)/I·Hom(M, N)` is free over `R/I`.
    pub hom_mod_i_free: Option<bool>,
    /// The residual Hom over `R/Q` is free over `R/I`; only for `n = d`.
    pub residual_free: Option<bool>,
    pub equivalent: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FreenessMode {
    I,
    II,
    III,
    IV,
}

impl FromStr for FreenessMode {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "i" | "1" => Ok(FreenessMode::I),
            "ii" | "2" => Ok(FreenessMode::II),
            "iii" | "3" => Ok(FreenessMode::III),
            "iv" | "4" => Ok(FreenessMode::IV),
            _ => Err(AlgebraError::InvalidArgument(format!("unknown freeness mode {s:?}"))),
        }
    }
}

impl fmt::Display for FreenessMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FreenessMode::I => "i",
            FreenessMode::II => "ii",
            FreenessMode::III => "iii",
            FreenessMode::IV => "iv",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessVerdict {
    pub mode: FreenessMode,
    pub hypotheses: Vec<HypothesisCheck>,
    pub hypotheses_met: bool,
    pub failed_hypothesis: Option<String>,
    /// Indices tested and whether the Ext/Tor group vanished there.
    pub vanishing: Vec<(usize, bool)>,
    pub vanishing_met: bool,
    /// Independent freeness of `M/IM` over `R/I`.
    pub free: bool,
    /// True when every hypothesis held, so freeness was asserted.
    pub asserted: bool,
    pub note: Option<String>,
}

impl AmbientRing {
    pub fn check_ulrich_ideal(&self, ideal: &IdealData) -> Result<UlrichIdealReport> {
        let q = ideal.q()?;
        let i = &ideal.gens;
        let is_m_primary = self.is_m_primary(i)?;
        if !is_m_primary {
            return Err(AlgebraError::NotMPrimary);
        }
        let reduction_exponent = self.verify_reduction(i, q, DEFAULT_R_MAX)?;
        let square_equals_qi = reduction_exponent <= 1;
        let (a, conormal) = self.reduce_to_quotient(&self.submodule(1, &as_vectors(i))?, i)?;
        let conormal_free = a.is_free_over_artinian(&conormal)?;
        Ok(UlrichIdealReport {
            is_m_primary,
            reduction_exponent,
            square_equals_qi,
            conormal_free,
            is_ulrich: square_equals_qi && conormal_free,
            is_gorenstein: self.is_gorenstein_ideal(i)?,
            is_parameter: self.ideals_equal(i, q)?,
        })
    }

    pub fn check_ulrich_module(&self, m: &ModuleData, ideal: &IdealData) -> Result<UlrichModuleReport> {
        let q = ideal.q()?;
        if self.is_zero_module(m)? {
            return Err(AlgebraError::ZeroModule);
        }
        let m = self.minimal_presentation(m)?;
        let mcm = self.is_maximal_cohen_macaulay(&m, q)?;
        let colon_equality = self.ideal_multiples_equal(&m, &ideal.gens, q)?;
        let (a, mbar) = self.reduce_to_quotient(&m, &ideal.gens)?;
        let free_over_quotient = a.is_free_over_artinian(&mbar)?;
        let length_mim = self.length_mod_ideal(&m, &ideal.gens)?.ok_or(AlgebraError::NotMPrimary)?;
        let e0 = if mcm { self.length_mod_ideal(&m, q)? } else { None };
        if let Some(e) = e0 {
            if e < length_mim {
                return Err(AlgebraError::Inconsistent(format!("e⁰ = {e} below ℓ(M/IM) = {length_mim}")));
            }
        }
        Ok(UlrichModuleReport {
            mcm,
            colon_equality,
            free_over_quotient,
            is_ulrich: mcm && colon_equality && free_over_quotient,
            nu: m.num_generators(),
            e0,
            length_mim,
        })
    }

    /// `Ω^k(R/I)` for an Ulrich ideal that is not a parameter ideal; for
    /// `k ≥ d` it must be Ulrich with respect to `I`.
    pub fn syzygies_of_ulrich_ideal(&self, ideal: &IdealData, k: usize) -> Result<UlrichSyzygy> {
        let rep = self.check_ulrich_ideal(ideal)?;
        if rep.is_parameter {
            return Err(AlgebraError::InvalidArgument("parameter ideal: syzygies of R/Q are free".into()));
        }
        if !rep.is_ulrich {
            return Err(AlgebraError::InvalidArgument("ideal is not Ulrich".into()));
        }
        let module = self.syzygy_module(&ModuleData::cyclic(&ideal.gens), k)?;
        if k < self.dim() {
            return Ok(UlrichSyzygy {
                k,
                module,
                report: None,
                warning: Some(format!("k = {k} is below d = {}; no Ulrich assertion made", self.dim())),
            });
        }
        let report = self.check_ulrich_module(&module, ideal)?;
        if !report.is_ulrich {
            return Err(AlgebraError::Inconsistent(format!("Ω^{k}(R/I) is not Ulrich with respect to an Ulrich ideal")));
        }
        Ok(UlrichSyzygy { k, module, report: Some(report), warning: None })
    }

    fn is_ulrich_module(&self, m: &ModuleData, ideal: &IdealData) -> Result<bool> {
        if self.is_zero_module(m)? {
            return Ok(false);
        }
        Ok(self.check_ulrich_module(m, ideal)?.is_ulrich)
    }

    /// Evaluates the three Ulrich conditions on `Hom(M, N)` and checks the
    /// equivalences, provided the hypotheses are verified.
    pub fn hom_ulrich_probe(&self, m: &ModuleData, n: &ModuleData, ideal: &IdealData, steps: usize) -> Result<HomProbe> {
        let q = ideal.q()?;
        let d = self.dim();
        let m = self.minimal_presentation(m)?;
        let n_mod = self.minimal_presentation(n)?;
        let mut probe = HomProbe {
            n: steps,
            hypotheses_met: false,
            failed_hypothesis: None,
            m_mcm: self.is_maximal_cohen_macaulay(&m, q)?,
            n_mcm: self.is_maximal_cohen_macaulay(&n_mod, q)?,
            hom_nonzero: false,
            ext_vanishing: Vec::new(),
            m_ulrich: false,
            n_ulrich: false,
            hom_ulrich: None,
            hom_mod_i_free: None,
            residual_free: None,
            equivalent: None,
        };
        let fail = |mut p: HomProbe, why: &str| {
            p.failed_hypothesis = Some(why.to_string());
            Ok(p)
        };
        if steps + 1 != d && steps != d {
            return fail(probe, "n must be d − 1 or d");
        }
        if !probe.m_mcm || !probe.n_mcm {
            return fail(probe, "M and N must be maximal Cohen–Macaulay");
        }
        let hom = self.hom_module(&m, &n_mod)?;
        probe.hom_nonzero = !self.is_zero_module(&hom)?;
        if !probe.hom_nonzero {
            return fail(probe, "Hom(M, N) is zero");
        }
        for i in 1..=steps {
            probe.ext_vanishing.push(self.ext_vanishes(&m, &n_mod, i)?);
        }
        if probe.ext_vanishing.iter().any(|v| !v) {
            return fail(probe, "Ext^i(M, N) does not vanish for some 1 ≤ i ≤ n");
        }
        probe.m_ulrich = self.is_ulrich_module(&m, ideal)?;
        probe.n_ulrich = self.is_ulrich_module(&n_mod, ideal)?;
        if !probe.m_ulrich && !probe.n_ulrich {
            return fail(probe, "neither M nor N is Ulrich with respect to I");
        }
        probe.hypotheses_met = true;

        let c1 = self.is_ulrich_module(&hom, ideal)?;
        let (a, hbar) = self.reduce_to_quotient(&hom, &ideal.gens)?;
        let c2 = a.is_free_over_artinian(&hbar)?;
        probe.hom_ulrich = Some(c1);
        probe.hom_mod_i_free = Some(c2);
        let mut all = vec![c1, c2];
        if steps == d {
            let c3 = self.residual_hom_free(&m, &n_mod, ideal, q, probe.m_ulrich)?;
            probe.residual_free = Some(c3);
            all.push(c3);
        }
        let eq = all.iter().all(|&c| c == all[0]);
        probe.equivalent = Some(eq);
        if !eq {
            return Err(AlgebraError::Inconsistent(format!("Hom Ulrich conditions disagree: {all:?}")));
        }
        Ok(probe)
    }

    /// `Hom_{R/Q}(R/I, N/QN)` when `M` is Ulrich, else `Hom_{R/Q}(M/QM, R/I)`,
    /// tested for freeness over `R/I`.
    fn residual_hom_free(&self, m: &ModuleData, n: &ModuleData, ideal: &IdealData, q: &[Poly], m_ulrich: bool) -> Result<bool> {
        let b = self.quotient(q)?;
        let r_mod_i = ModuleData::cyclic(&ideal.gens);
        let h = if m_ulrich {
            b.hom_module(&r_mod_i, &ModuleData::presented(n.presentation().clone()))?
        } else {
            b.hom_module(&ModuleData::presented(m.presentation().clone()), &r_mod_i)?
        };
        let h = b.minimal_presentation(&h)?;
        let a = self.quotient(&ideal.gens)?;
        a.is_free_over_artinian(&ModuleData::presented(h.presentation().clone()))
    }

    /// `(regular, R Ulrich with respect to 𝔪)`; the two must agree.
    pub fn regular_iff_ulrich_probe(&self) -> Result<(bool, bool)> {
        let regular = self.is_regular_ring()?;
        let mm = IdealData::new(self.variables());
        let table = self.hilbert_samuel(&ModuleData::free(1), &mm, DEFAULT_K_MAX.max(self.dim() + 3))?;
        let e0 = table.e(0).ok_or(AlgebraError::BoundExceeded { what: "Hilbert–Samuel stabilization", bound: DEFAULT_K_MAX })?;
        // ν(R) = 1, so R is Ulrich with respect to 𝔪 exactly when e⁰_𝔪(R) = 1.
        let ulrich = e0 == 1;
        if regular != ulrich {
            return Err(AlgebraError::Inconsistent(format!("regular = {regular} but e⁰_𝔪(R) = {e0}")));
        }
        Ok((regular, ulrich))
    }

    pub fn freeness_probe(&self, m: &ModuleData, ideal: &IdealData, mode: FreenessMode) -> Result<FreenessVerdict> {
        self.freeness_probe_with_window(m, ideal, mode, DEFAULT_VANISHING_WINDOW)
    }

    pub fn freeness_probe_with_window(&self, m: &ModuleData, ideal: &IdealData, mode: FreenessMode, window: usize) -> Result<FreenessVerdict> {
        let i = &ideal.gens;
        let (a, mbar) = self.reduce_to_quotient(m, i)?;
        let free = a.is_free_over_artinian(&mbar)?;
        let mut hyps: Vec<HypothesisCheck> = Vec::new();
        let mut push = |name: &str, holds: bool| hyps.push(HypothesisCheck { name: name.to_string(), holds });
        let mut note = None;
        let loewy = self.loewy_length(i, DEFAULT_N_MAX)?;
        if mode != FreenessMode::III {
            push("R/I Gorenstein", self.is_gorenstein_ideal(i)?);
        }
        let mut vanishing = Vec::new();
        let vanishing_met;
        match mode {
            FreenessMode::I => {
                let n = m.presentation().rows();
                let m2 = self.ideal_power(&self.variables(), 2);
                let lhs = self.relations_plus_ideal(m, &m2);
                let rhs = self.relations_plus_ideal(m, i);
                push("𝔪²M ⊆ IM", self.standard_basis(n, &rhs)?.contains_all(&lhs)?);
                let nu = self.num_generators(m)?;
                let l = self.length_mod_ideal(m, i)?.ok_or(AlgebraError::NotMPrimary)? as usize;
                let top = 3.max(nu).max(l.saturating_sub(nu));
                for k in 1..=top {
                    let v = a.ext_vanishes(&mbar, &mbar, k)?;
                    vanishing.push((k, v));
                    if !v {
                        break;
                    }
                }
                vanishing_met = vanishing.len() == top && vanishing.iter().all(|&(_, v)| v);
            }
            FreenessMode::II => {
                push("𝔪³ ⊆ I", loewy <= 3);
                for k in 1..=window {
                    let v = a.ext_vanishes(&mbar, &mbar, k)?;
                    vanishing.push((k, v));
                    if v {
                        break;
                    }
                }
                vanishing_met = vanishing.iter().any(|&(_, v)| v);
            }
            FreenessMode::III => {
                let q = ideal.q()?;
                note = Some(format!("residue field is F_{}, not infinite; that hypothesis is waived", self.characteristic()));
                push("I not a parameter ideal", !self.ideals_equal(i, q)?);
                push("𝔪³ ⊆ I", loewy <= 3);
                let e0 = self.ideal_colength(q)?.ok_or(AlgebraError::NotMPrimary)?;
                let m2i = self.ideal_sum(&self.ideal_power(&self.variables(), 2), i);
                let emb = self.ideal_colength(&m2i)?.ok_or(AlgebraError::NotMPrimary)? - 1;
                push("e⁰_I(R) ≤ 2ℓ(𝔪/𝔪²+I)", e0 <= 2 * emb);
                let mut run = 0;
                let mut met = false;
                for j in 2..2 + window + 2 {
                    let v = a.tor_vanishes(&mbar, &mbar, j)?;
                    vanishing.push((j, v));
                    run = if v { run + 1 } else { 0 };
                    if run == 3 {
                        met = true;
                        break;
                    }
                }
                vanishing_met = met;
            }
            FreenessMode::IV => {
                push("𝔪⁴ ⊆ I", loewy <= 4);
                push("(I : x)/I principal for some variable x ∉ I", self.principal_colon_witness(i)?);
                note = Some(format!("Tor vanishing for j ≫ 0 tested on the window [2, {})", 2 + window));
                for j in 2..2 + window {
                    vanishing.push((j, a.tor_vanishes(&mbar, &mbar, j)?));
                }
                vanishing_met = vanishing.iter().all(|&(_, v)| v);
            }
        }
        let failed = hyps.iter().find(|h| !h.holds).map(|h| h.name.clone());
        let hypotheses_met = failed.is_none();
        let asserted = hypotheses_met && vanishing_met;
        if asserted && !free {
            return Err(AlgebraError::Inconsistent(format!("freeness mode ({mode}) hypotheses hold but M/IM is not free")));
        }
        let failed_hypothesis = failed.or_else(|| (!vanishing_met).then(|| "required Ext/Tor vanishing not found".to_string()));
        Ok(FreenessVerdict { mode, hypotheses: hyps, hypotheses_met, failed_hypothesis, vanishing, vanishing_met, free, asserted, note })
    }

    /// Looks for a variable `x ∉ I` with `(I : x)/I` cyclic.
    fn principal_colon_witness(&self, i: &[Poly]) -> Result<bool> {
        for x in self.variables() {
            if self.ideal_contains(i, &x)? {
                continue;
            }
            let j = self.ideal_colon(i, &x)?;
            let mj = self.ideal_sum(&self.ideal_product(&self.variables(), &j), i);
            let lj = self.ideal_colength(&j)?.ok_or(AlgebraError::NotMPrimary)?;
            let lmj = self.ideal_colength(&mj)?.ok_or(AlgebraError::NotMPrimary)?;
            if lmj - lj == 1 {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn ring(vars: &[&str], weights: &[u32], rel: &str, dim: usize) -> AmbientRing {
        let f = PrimeField::new(32003).unwrap();
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let r = crate::parse::parse_poly(rel, &vars, weights, &f).unwrap();
        AmbientRing::new(f, vars, weights.to_vec(), vec![r], dim).unwrap()
    }

    fn sec6() -> (AmbientRing, IdealData) {
        let r = ring(&["x", "y", "z"], &[2, 2, 1], "x^2+y^2+z^4", 2);
        let i = IdealData::with_q(vec![r.p("x"), r.p("y"), r.p("z^2")], vec![r.p("x"), r.p("y")]);
        (r, i)
    }

    #[test]
    fn ulrich_ideal_examples() {
        let (r, i) = sec6();
        let rep = r.check_ulrich_ideal(&i).unwrap();
        assert!(rep.is_ulrich && rep.is_gorenstein && !rep.is_parameter);
        assert_eq!(rep.reduction_exponent, 1);
        let q = IdealData::with_q(vec![r.p("x"), r.p("y")], vec![r.p("x"), r.p("y")]);
        let rep = r.check_ulrich_ideal(&q).unwrap();
        assert!(rep.is_parameter && rep.is_ulrich);

        let s = ring(&["x", "y"], &[1, 1], "x^2+y^4", 1);
        let i = IdealData::with_q(vec![s.p("x"), s.p("y^2")], vec![s.p("x")]);
        assert!(s.check_ulrich_ideal(&i).unwrap().is_ulrich);
    }

    #[test]
    fn missing_reduction_is_an_error() {
        let (r, i) = sec6();
        let bare = IdealData::new(i.gens.clone());
        assert_eq!(r.check_ulrich_ideal(&bare), Err(AlgebraError::MissingReduction));
    }

    #[test]
    fn ring_itself_is_ulrich_only_for_parameter_ideals() {
        let (r, i) = sec6();
        let rep = r.check_ulrich_module(&ModuleData::free(1), &i).unwrap();
        assert!(rep.mcm && !rep.colon_equality && !rep.is_ulrich);
        let q = IdealData::with_q(vec![r.p("x"), r.p("y")], vec![r.p("x"), r.p("y")]);
        assert!(r.check_ulrich_module(&ModuleData::free(1), &q).unwrap().is_ulrich);
    }

    #[test]
    fn second_syzygy_is_ulrich() {
        let (r, i) = sec6();
        let s = r.syzygies_of_ulrich_ideal(&i, 2).unwrap();
        let rep = s.report.unwrap();
        assert_eq!((rep.nu, rep.e0), (4, Some(8)));
        let low = r.syzygies_of_ulrich_ideal(&i, 1).unwrap();
        assert!(low.report.is_none() && low.warning.is_some());
    }

    #[test]
    fn regularity_probe() {
        let (r, _) = sec6();
        assert_eq!(r.regular_iff_ulrich_probe().unwrap(), (false, false));
        let f = PrimeField::new(32003).unwrap();
        let k = AmbientRing::regular(f, vec!["x".into()], vec![1]).unwrap();
        assert_eq!(k.regular_iff_ulrich_probe().unwrap(), (true, true));
    }

    #[test]
    fn freeness_probe_on_residue_field_makes_no_assertion() {
        let (r, i) = sec6();
        let k = ModuleData::cyclic(&r.variables());
        let v = r.freeness_probe(&k, &i, FreenessMode::II).unwrap();
        assert!(v.hypotheses_met && !v.vanishing_met && !v.asserted && !v.free);
    }

    #[test]
    fn freeness_mode_parsing() {
        assert_eq!("iii".parse::<FreenessMode>().unwrap(), FreenessMode::III);
        assert!("v".parse::<FreenessMode>().is_err());
        assert_eq!(FreenessMode::IV.to_string(), "iv");
    }
}
