//! The acceptance suite behind `verify-paper`.

use std::fmt::Debug;

use ulrich_core::{AlgebraError, AmbientRing, IdealData, Matrix, ModuleData, DEFAULT_PRIME};

use crate::corpus::{builtin_corpus, corpus_session};
use crate::engine::{Engine, EngineError};
use crate::report::CriterionJson;
use crate::selfcheck;

pub const K_MAX: usize = 12;
pub const RANDOM_INSTANCES: u64 = 24;

pub const TITLES: [&str; 11] = [
    "resolution of I on sec6: Betti (3,4,4,4,4,4), period one, repeating matrix equivalent to Phi",
    "sec6 lengths and multiplicities: l(R/I) = 2, nu = 4, e0 = 8 by three routes",
    "sec6 Chern numbers e1(ImPsi) = e1(ImPhi) = 0",
    "sec6 Ulrich verdicts, horizontal linkage of ImPhi, lambda(ImPhi) = ImPhi",
    "sec6 regularity of Rees and associated graded modules is 0",
    "ex2.6ii-d1s2: Ulrich ideal, l(R/I) = 2, nu(I) = 2, HS polynomial 4k, rQ(I, I) = 0",
    "Example corpus: every (d, s) instance and the three-quadric instance pass check_ulrich_ideal",
    "Hom and duality suite: equivalences, duals of Ulrich modules, double duals",
    "Linkage suite: lambda of linked Ulrich modules, trace ideals of syzygies, Ext vanishing",
    "Hilbert coefficient suite: minimal multiplicity, Chern number identities, d = 1 Betti formula",
    "Oracle agreement on seeded random instances",
];

/// Collects named checks; the criterion passes when all of them hold.
#[derive(Default)]
pub struct Checks {
    failures: Vec<String>,
    notes: Vec<String>,
    count: usize,
}

impl Checks {
    pub fn expect(&mut self, label: impl Into<String>, cond: bool) {
        self.count += 1;
        if !cond {
            self.failures.push(label.into());
        }
    }

    pub fn equal<T: PartialEq + Debug>(&mut self, label: &str, got: T, want: T) {
        self.count += 1;
        if got != want {
            self.failures.push(format!("{label}: got {got:?}, expected {want:?}"));
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn finish(self, id: usize) -> CriterionJson {
        let passed = self.failures.is_empty() && self.count > 0;
        let mut detail = format!("{} checks", self.count);
        if !self.failures.is_empty() {
            detail.push_str(&format!("; failed: {}", self.failures.join("; ")));
        }
        if !self.notes.is_empty() {
            detail.push_str(&format!("; notes: {}", self.notes.join("; ")));
        }
        CriterionJson { id, title: TITLES[id - 1].to_string(), passed, detail }
    }
}

type Outcome = Result<Checks, EngineError>;

fn engine(id: &str, characteristic: u32) -> Result<Engine, EngineError> {
    let s = corpus_session(id).ok_or_else(|| EngineError::Usage(format!("unknown corpus id {id}")))?;
    Engine::new(s, Some(characteristic))
}

fn declared_matrix(e: &Engine, name: &str) -> Result<Matrix, EngineError> {
    e.declared_matrix(name).ok_or_else(|| EngineError::UnknownModule(name.to_string()))
}

pub fn run_criterion(id: usize, characteristic: u32) -> CriterionJson {
    let outcome = match id {
        1 => c1(characteristic),
        2 => c2(characteristic),
        3 => c3(characteristic),
        4 => c4(characteristic),
        5 => c5(characteristic),
        6 => c6(characteristic),
        7 => c7(characteristic),
        8 => c8(characteristic),
        9 => c9(characteristic),
        10 => c10(characteristic),
        11 => c11(characteristic),
        _ => Err(EngineError::Usage(format!("no criterion {id}"))),
    };
    match outcome {
        Ok(c) => c.finish(id),
        Err(e) => CriterionJson { id, title: TITLES.get(id.wrapping_sub(1)).unwrap_or(&"").to_string(), passed: false, detail: format!("error: {e}") },
    }
}

pub fn run_all(characteristic: u32) -> Vec<CriterionJson> {
    (1..=11).map(|id| run_criterion(id, characteristic)).collect()
}

pub fn run_all_default() -> Vec<CriterionJson> {
    run_all(DEFAULT_PRIME)
}

fn c1(p: u32) -> Outcome {
    let e = engine("sec6", p)?;
    let r = &e.ring;
    let mut c = Checks::default();
    let res = r.resolve(&e.module("I")?, 5)?;
    c.equal("Betti numbers", res.betti.clone(), vec![3, 4, 4, 4, 4, 4]);
    c.equal("periodicity (start, period)", res.periodic, Some((2, 1)));
    let psi = declared_matrix(&e, "ImPsi")?;
    let phi = declared_matrix(&e, "ImPhi")?;
    c.expect("first differential equivalent to Psi", r.matrices_equivalent(res.differential(1), &psi));
    for k in 2..=5 {
        c.expect(format!("differential {k} equivalent to Phi"), r.matrices_equivalent(res.differential(k), &phi));
    }
    Ok(c)
}

fn c2(p: u32) -> Outcome {
    let e = engine("sec6", p)?;
    let r = &e.ring;
    let i = e.ideal("I")?;
    let q = i.q()?;
    let mut c = Checks::default();
    c.equal("l(R/I)", r.ideal_colength(&i.gens)?, Some(2));
    c.equal("l(R/Q)", r.ideal_colength(q)?, Some(4));
    for name in ["ImPsi", "ImPhi"] {
        let m = e.module(name)?;
        c.equal(&format!("nu({name})"), r.num_generators(&m)?, 4);
        let table = r.hilbert_samuel(&m, i, K_MAX)?;
        c.equal(&format!("e0({name}) from the Hilbert-Samuel fit"), table.e(0), Some(8));
        c.equal(&format!("l({name}/Q {name})"), r.length_mod_ideal(&m, q)?, Some(8));
        let rank = r.module_rank(&m)?;
        c.equal(&format!("rank({name})"), rank, 2);
        c.equal(&format!("rank({name})·l(R/Q)"), rank as u64 * r.ideal_colength(q)?.unwrap_or(0), 8);
    }
    Ok(c)
}

fn c3(p: u32) -> Outcome {
    let e = engine("sec6", p)?;
    let r = &e.ring;
    let i = e.ideal("I")?;
    let mut c = Checks::default();
    for name in ["ImPsi", "ImPhi"] {
        let m = e.module(name)?;
        let table = r.hilbert_samuel(&m, i, K_MAX)?;
        c.expect(format!("{name}: polynomial fit valid by kMax = {K_MAX}"), table.polynomial_valid && table.stabilized_from.is_some_and(|s| s <= K_MAX));
        c.equal(&format!("e1({name})"), table.e(1), Some(0));
        c.equal(&format!("chern_number({name})"), r.chern_number(&m, i, K_MAX)?, 0);
    }
    Ok(c)
}

fn c4(p: u32) -> Outcome {
    let e = engine("sec6", p)?;
    let r = &e.ring;
    let i = e.ideal("I")?;
    let mut c = Checks::default();
    let rep = r.check_ulrich_ideal(i)?;
    c.expect("I is Ulrich", rep.is_ulrich);
    c.expect("I is Gorenstein", rep.is_gorenstein);
    c.expect("I is not a parameter ideal", !rep.is_parameter);
    for name in ["ImPsi", "ImPhi"] {
        c.expect(format!("{name} is Ulrich with respect to I"), r.check_ulrich_module(&e.module(name)?, i)?.is_ulrich);
    }
    let phi = e.module("ImPhi")?;
    let link = r.linkage(&phi)?;
    c.expect("ImPhi is horizontally linked", link.horizontally_linked);
    c.expect("lambda(ImPhi) has the presentation of ImPhi", r.matrices_equivalent(link.lambda.presentation(), phi.presentation()));
    c.expect("lambda(ImPhi) is Ulrich with respect to I", r.check_ulrich_module(&link.lambda, i)?.is_ulrich);
    Ok(c)
}

fn c5(p: u32) -> Outcome {
    let e = engine("sec6", p)?;
    let r = &e.ring;
    let i = e.ideal("I")?;
    let mut c = Checks::default();
    for name in ["ImPsi", "ImPhi"] {
        let rep = r.regularity_report(&e.module(name)?, i, K_MAX)?;
        c.equal(&format!("rQ(I, {name})"), rep.r_q, 0);
        c.equal(&format!("reg R(I, {name})"), rep.reg_rees, Some(0));
        c.equal(&format!("reg G(I, {name})"), rep.reg_assoc_graded, Some(0));
        c.expect(format!("{name}: regularity obtained from the reduction-number identification"), rep.via_theorem);
    }
    Ok(c)
}

fn c6(p: u32) -> Outcome {
    let e = engine("ex2.6ii-d1s2", p)?;
    let r = &e.ring;
    let i = e.ideal("I")?;
    let mut c = Checks::default();
    c.expect("I = (x, y^2) is Ulrich", r.check_ulrich_ideal(i)?.is_ulrich);
    c.equal("l(R/I)", r.ideal_colength(&i.gens)?, Some(2));
    let m = e.module("I")?;
    c.equal("nu(I)", r.num_generators(&m)?, 2);
    let table = r.hilbert_samuel(&m, i, K_MAX)?;
    c.expect("Hilbert-Samuel fit valid", table.polynomial_valid);
    c.equal("coefficients (e0, e1)", table.coefficients.clone(), vec![4, 0]);
    if let Some(s) = table.stabilized_from {
        let window: Vec<(usize, u64)> = (s..=table.values.len()).map(|k| (k, table.values[k - 1])).collect();
        c.expect(format!("l(I/I^(k+1)) = 4k on the window from k = {s}"), window.iter().all(|&(k, v)| v == 4 * k as u64));
    }
    let reg = r.regularity_report(&m, i, K_MAX)?;
    c.equal("rQ(I, I)", reg.r_q, 0);
    c.equal("reg of the irrelevant ideal of the Rees algebra", reg.reg_rees, Some(0));
    Ok(c)
}

fn c7(p: u32) -> Outcome {
    let mut c = Checks::default();
    for id in ["ex2.6ii-d1s1", "ex2.6ii-d1s2", "ex2.6ii-d2s2", "ex2.6ii-d2s3", "ex2.6i"] {
        let e = engine(id, p)?;
        match e.ring.check_ulrich_ideal(e.ideal("I")?) {
            Ok(rep) => {
                c.expect(format!("{id}: I^2 = QI"), rep.square_equals_qi);
                c.expect(format!("{id}: I/I^2 free over R/I"), rep.conormal_free);
            }
            Err(err) => c.expect(format!("{id}: {err}"), false),
        }
    }
    let e = engine("ex2.6ii-d2s3-alt", p)?;
    match e.ring.check_ulrich_ideal(e.ideal("I")?) {
        Ok(rep) => c.note(format!("ex2.6ii-d2s3-alt with Q = (z2, z3^3): isUlrich = {}", rep.is_ulrich)),
        Err(err) => c.note(format!("ex2.6ii-d2s3-alt: {err}")),
    }
    Ok(c)
}

/// A corpus ring whose canonical module is the ring itself.
fn is_hypersurface(r: &AmbientRing) -> bool {
    r.relations().len() <= 1
}

struct Context {
    id: &'static str,
    engine: Engine,
    /// Ideals with a verified reduction, with their Ulrich verdicts.
    ideals: Vec<(String, IdealData, ulrich_core::UlrichIdealReport)>,
}

fn contexts(p: u32, c: &mut Checks) -> Result<Vec<Context>, EngineError> {
    let mut out = Vec::new();
    for (id, session) in builtin_corpus() {
        let engine = Engine::new(session, Some(p))?;
        let mut ideals = Vec::new();
        for spec in &engine.session.ideals {
            let i = engine.ideal(&spec.name)?.clone();
            match engine.ring.check_ulrich_ideal(&i) {
                Ok(rep) => ideals.push((spec.name.clone(), i, rep)),
                Err(AlgebraError::ReductionNotContained(g)) => c.note(format!("{id}/{}: reduction hypothesis fails ({g} not in I), skipped", spec.name)),
                Err(err) => return Err(err.into()),
            }
        }
        out.push(Context { id, engine, ideals });
    }
    Ok(out)
}

/// Named session modules, syzygies `Ω^k(R/I)` for `k = d, d + 1`, and `R`.
fn candidate_modules(cx: &Context, i: &IdealData, non_parameter: bool) -> Result<Vec<(String, ModuleData)>, EngineError> {
    let r = &cx.engine.ring;
    let mut out: Vec<(String, ModuleData)> = Vec::new();
    for m in &cx.engine.session.modules {
        out.push((m.name.clone(), cx.engine.module(&m.name)?));
    }
    if !out.iter().any(|(_, m)| m.num_generators() == 1 && m.presentation().cols() == 0) {
        out.push(("R".into(), ModuleData::free(1)));
    }
    if non_parameter {
        for k in r.dim().max(1)..=r.dim().max(1) + 1 {
            out.push((format!("Omega^{k}(R/I)"), r.syzygy_module(&ModuleData::cyclic(&i.gens), k)?));
        }
    }
    Ok(out)
}

fn c8(p: u32) -> Outcome {
    let mut c = Checks::default();
    let cxs = contexts(p, &mut c)?;
    let mut verified = 0;
    for cx in &cxs {
        let r = &cx.engine.ring;
        let d = r.dim();
        let (regular, ulrich) = r.regular_iff_ulrich_probe()?;
        c.expect(format!("{}: regular iff R is Ulrich with respect to the maximal ideal", cx.id), regular == ulrich);
        for (iname, i, rep) in &cx.ideals {
            let tag = format!("{}/{iname}", cx.id);
            let q = i.q()?;
            let r_ulrich = r.check_ulrich_module(&ModuleData::free(1), i)?.is_ulrich;
            c.expect(format!("{tag}: R Ulrich with respect to I iff I is a parameter ideal"), r_ulrich == rep.is_parameter);
            if !rep.is_ulrich {
                continue;
            }
            if !rep.is_parameter {
                for k in d..=d + 3 {
                    let s = r.syzygies_of_ulrich_ideal(i, k)?;
                    c.expect(format!("{tag}: Omega^{k}(R/I) Ulrich"), s.report.is_some_and(|x| x.is_ulrich));
                }
            }
            let mods = candidate_modules(cx, i, !rep.is_parameter)?;
            let mcm: Vec<&(String, ModuleData)> = mods.iter().filter(|(_, m)| r.is_maximal_cohen_macaulay(m, q).unwrap_or(false)).collect();
            for (mn, m) in &mcm {
                for (nn, n) in &mcm {
                    for steps in [d.saturating_sub(1), d] {
                        if steps + 1 < d {
                            continue;
                        }
                        let probe = r.hom_ulrich_probe(m, n, i, steps)?;
                        if probe.hypotheses_met {
                            verified += 1;
                            c.expect(format!("{tag}: Hom({mn}, {nn}) conditions agree for n = {steps}"), probe.equivalent == Some(true));
                        }
                    }
                }
            }
            if !is_hypersurface(r) {
                continue;
            }
            for (mn, m) in &mcm {
                let m_ulrich = r.check_ulrich_module(m, i)?.is_ulrich;
                let dual = r.dual(m)?;
                let dual_ulrich = r.check_ulrich_module(&dual, i)?.is_ulrich;
                if rep.is_gorenstein {
                    c.expect(format!("{tag}: {mn} Ulrich iff its dual is"), m_ulrich == dual_ulrich);
                }
                if m_ulrich {
                    c.expect(format!("{tag}: dual of Ulrich {mn} is Ulrich iff I is Gorenstein"), dual_ulrich == rep.is_gorenstein);
                }
                let mm = r.minimal_presentation(m)?;
                let dd = r.dual(&dual)?;
                c.expect(format!("{tag}: double dual of {mn} has its presentation"), r.matrices_equivalent(dd.presentation(), mm.presentation()));
            }
        }
    }
    let sec6 = cxs.iter().find(|cx| cx.id == "sec6").expect("sec6 in corpus");
    let i = sec6.engine.ideal("I")?;
    for name in ["ImPsi", "ImPhi"] {
        let dual = sec6.engine.ring.dual(&sec6.engine.module(name)?)?;
        c.expect(format!("sec6: dual({name}) Ulrich with respect to I"), sec6.engine.ring.check_ulrich_module(&dual, i)?.is_ulrich);
    }
    c.expect("at least one Hom triple with verified hypotheses", verified > 0);
    c.note(format!("{verified} Hom probes with verified hypotheses"));
    Ok(c)
}

fn c9(p: u32) -> Outcome {
    let mut c = Checks::default();
    let cxs = contexts(p, &mut c)?;
    let mut linked = 0;
    for cx in &cxs {
        let r = &cx.engine.ring;
        let d = r.dim();
        for (iname, i, rep) in &cx.ideals {
            let tag = format!("{}/{iname}", cx.id);
            let q = i.q()?;
            let mods = candidate_modules(cx, i, !rep.is_parameter)?;
            for (mn, m) in &mods {
                if !r.is_maximal_cohen_macaulay(m, q)? {
                    continue;
                }
                let omega = r.syzygy_module(m, 1)?;
                if !r.is_zero_module(&omega)? {
                    c.expect(format!("{tag}: trace ideal of Omega({mn}) inside the maximal ideal"), r.trace_ideal(&omega)?.iter().all(|g| !g.is_unit()));
                }
                if !is_hypersurface(r) || !rep.is_ulrich {
                    continue;
                }
                let link = r.linkage(m)?;
                if link.horizontally_linked && r.check_ulrich_module(m, i)?.is_ulrich {
                    linked += 1;
                    c.expect(format!("{tag}: lambda({mn}) Ulrich"), r.check_ulrich_module(&link.lambda, i)?.is_ulrich);
                }
            }
            if !is_hypersurface(r) || !rep.is_ulrich {
                continue;
            }
            let quotient = ModuleData::cyclic(&i.gens);
            c.expect(format!("{tag}: Ext^(d+2)(R/I, R) = 0"), r.ext_vanishes(&quotient, &ModuleData::free(1), d + 2)?);
            if rep.is_parameter {
                continue;
            }
            for k in d.max(1)..=d.max(1) + 1 {
                let syz = r.syzygy_module(&quotient, k + 1)?;
                c.expect(format!("{tag}: lambda(Omega^{k} I) Ulrich"), r.check_ulrich_module(&r.lambda(&syz)?, i)?.is_ulrich);
            }
            if d == 1 {
                let lam = r.lambda(&cx.engine.module(iname)?)?;
                c.expect(format!("{tag}: lambda(I) Ulrich"), r.check_ulrich_module(&lam, i)?.is_ulrich);
            }
        }
    }
    c.expect("at least one horizontally linked Ulrich module", linked > 0);
    c.note(format!("{linked} horizontally linked Ulrich modules"));
    Ok(c)
}

fn c10(p: u32) -> Outcome {
    let mut c = Checks::default();
    let cxs = contexts(p, &mut c)?;
    for cx in &cxs {
        let r = &cx.engine.ring;
        let d = r.dim();
        for (iname, i, rep) in &cx.ideals {
            let tag = format!("{}/{iname}", cx.id);
            let q = i.q()?;
            for (mn, m) in candidate_modules(cx, i, rep.is_ulrich && !rep.is_parameter)? {
                if !r.is_maximal_cohen_macaulay(&m, q)? {
                    continue;
                }
                let ul = r.check_ulrich_module(&m, i)?;
                let mm = match r.minimal_multiplicity_check(&m, i, K_MAX) {
                    Ok(mm) => mm,
                    Err(err) => {
                        c.expect(format!("{tag}: minimal multiplicity criteria for {mn}: {err}"), false);
                        continue;
                    }
                };
                if ul.is_ulrich {
                    c.expect(format!("{tag}: Ulrich {mn} has minimal multiplicity"), mm.holds);
                }
                let e1 = r.chern_number(&m, i, K_MAX)?;
                c.expect(format!("{tag}: e1({mn}) >= 0"), e1 >= 0);
                c.expect(format!("{tag}: {mn} Ulrich iff M/IM free and e1 = 0"), ul.is_ulrich == (ul.free_over_quotient && e1 == 0));
                let rq = r.reduction_number_relative(i, &m, ulrich_core::hilbert::DEFAULT_M_MAX)?;
                c.expect(format!("{tag}: {mn} minimal multiplicity iff rQ <= 1"), mm.holds == (rq <= 1));
            }
            if d == 1 && rep.is_ulrich && !rep.is_parameter {
                let imod = cx.engine.module(iname)?;
                let lri = r.ideal_colength(&i.gens)?.unwrap_or(0) as i64;
                let res = r.resolve(&imod, 2)?;
                for j in 0..=2 {
                    let omega = r.syzygy_module(&imod, j)?;
                    let beta = res.betti[j] as i64;
                    let table = r.hilbert_samuel(&omega, i, K_MAX)?;
                    c.equal(&format!("{tag}: Hilbert-Samuel polynomial of Omega^{j} I"), table.coefficients.clone(), vec![beta * lri, 0]);
                }
            }
        }
    }
    Ok(c)
}

fn c11(p: u32) -> Outcome {
    let mut c = Checks::default();
    let f = ulrich_core::PrimeField::new(p)?;
    let mut agree = 0;
    for k in 0..RANDOM_INSTANCES {
        let out = selfcheck::run_instance(k, f)?;
        if out.agrees() {
            agree += 1;
        } else {
            c.expect(format!("{}: {out:?}", out.description), false);
        }
    }
    c.expect("at least 20 agreeing instances", agree >= 20);
    c.note(format!("{agree}/{RANDOM_INSTANCES} instances agree"));
    Ok(c)
}
