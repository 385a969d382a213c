//! Command-line surface: argument parsing, dispatch and exit codes.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;
use ulrich_core::{AlgebraError, FreenessMode, IdealData};

use crate::corpus::{corpus_session, CORPUS_IDS};
use crate::engine::{Engine, EngineError};
use crate::report::*;
use crate::session::parse_session;
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "ulrich-kit", version, about = "Ulrich ideals and modules over local quotient rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Source {
    /// Session file to load.
    #[arg(long, global = true, conflicts_with = "corpus")]
    pub session: Option<PathBuf>,
    /// Built-in session id (see `list-corpus`).
    #[arg(long, global = true)]
    pub corpus: Option<String>,
    /// Override the characteristic of the coefficient field.
    #[arg(long = "char", global = true, value_name = "P")]
    pub characteristic: Option<u32>,
    /// Print compact JSON instead of `key = value` lines.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Minimal free resolution of a module or ideal.
    Resolve {
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 8)]
        steps: usize,
        #[command(flatten)]
        src: Source,
    },
    /// Ulrich test for an ideal with its reduction `Q`.
    CheckUlrichIdeal {
        #[arg(long)]
        ideal: Option<String>,
        #[command(flatten)]
        src: Source,
    },
    /// Ulrich test for a module with respect to an ideal.
    CheckUlrichModule {
        #[arg(long)]
        module: String,
        #[arg(long)]
        ideal: Option<String>,
        #[command(flatten)]
        src: Source,
    },
    /// Transpose, `λM` and horizontal linkage.
    Linkage {
        #[arg(long)]
        module: String,
        #[command(flatten)]
        src: Source,
    },
    /// Hilbert–Samuel table of `M` with respect to an ideal.
    Hilbert {
        #[arg(long)]
        module: String,
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long, default_value_t = verify::K_MAX)]
        kmax: usize,
        #[command(flatten)]
        src: Source,
    },
    /// Ring, ideal and module invariants.
    Invariants {
        #[arg(long)]
        module: Option<String>,
        #[arg(long)]
        ideal: Option<String>,
        #[command(flatten)]
        src: Source,
    },
    /// Reduction number, minimal multiplicity and regularity of blowup modules.
    Regularity {
        #[arg(long)]
        module: String,
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long, default_value_t = verify::K_MAX)]
        kmax: usize,
        #[command(flatten)]
        src: Source,
    },
    /// Consistency probes.
    Probe {
        #[command(subcommand)]
        probe: Probe,
    },
    /// Runs every acceptance criterion on the built-in corpus.
    #[command(alias = "verify")]
    VerifyPaper {
        #[command(flatten)]
        src: Source,
    },
    /// Lists the built-in session ids.
    ListCorpus {
        #[command(flatten)]
        src: Source,
    },
    /// Prints the session in normalized form.
    Session {
        #[command(flatten)]
        src: Source,
    },
}

#[derive(Subcommand, Debug)]
pub enum Probe {
    /// Ulrich conditions on `Hom(M, N)`.
    Hom {
        #[arg(long)]
        module: String,
        #[arg(long)]
        module2: String,
        #[arg(long)]
        ideal: Option<String>,
        /// Number of Ext groups required to vanish; `d − 1` or `d`, default `d`.
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        src: Source,
    },
    /// Freeness of `M/IM` over `R/I` under one of the modes i–iv.
    Freeness {
        #[arg(long)]
        module: String,
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long)]
        mode: String,
        /// Size of the Ext/Tor search window.
        #[arg(long, default_value_t = ulrich_core::ulrich::DEFAULT_VANISHING_WINDOW)]
        window: usize,
        #[command(flatten)]
        src: Source,
    },
    /// Regularity of `R` against `R` being Ulrich with respect to `𝔪`.
    RegularIffUlrich {
        #[command(flatten)]
        src: Source,
    },
}

/// What a command prints and how it exits.
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Engine(EngineError),
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        Failure::Engine(e)
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure::Engine(e.into())
    }
}

impl Failure {
    fn kind(&self) -> &'static str {
        use AlgebraError as A;
        match self {
            Failure::Usage(_) => "usage",
            Failure::Engine(EngineError::Usage(_)) => "usage",
            Failure::Engine(EngineError::UnknownIdeal(_)) => "unknown-ideal",
            Failure::Engine(EngineError::UnknownModule(_)) => "unknown-module",
            Failure::Engine(EngineError::Algebra(a)) => match a {
                A::NotPrime(_) => "not-prime",
                A::DivisionByZero => "division-by-zero",
                A::TooManyVariables { .. } => "too-many-variables",
                A::RankMismatch { .. } => "rank-mismatch",
                A::RingMismatch => "ring-mismatch",
                A::UnitRelation(_) => "unit-relation",
                A::NotMPrimary => "not-m-primary",
                A::MissingReduction => "missing-reduction",
                A::ReductionNotContained(_) => "reduction-not-contained",
                A::NotParameterIdeal(_) => "not-parameter-ideal",
                A::BoundExceeded { .. } => "bound-exceeded",
                A::ZeroModule => "zero-module",
                A::DimensionMismatch(_) => "dimension-mismatch",
                A::InvalidArgument(_) => "invalid-argument",
                A::Inconsistent(_) => "inconsistent",
            },
        }
    }

    /// Malformed input exits with 2; a well-posed question whose
    /// hypotheses or internal assertions fail exits with 1.
    fn code(&self) -> i32 {
        use AlgebraError as A;
        match self {
            Failure::Usage(_) | Failure::Engine(EngineError::Usage(_) | EngineError::UnknownIdeal(_) | EngineError::UnknownModule(_)) => EXIT_USAGE,
            Failure::Engine(EngineError::Algebra(a)) => match a {
                A::NotPrime(_)
                | A::TooManyVariables { .. }
                | A::RankMismatch { .. }
                | A::RingMismatch
                | A::UnitRelation(_)
                | A::MissingReduction
                | A::DimensionMismatch(_)
                | A::InvalidArgument(_) => EXIT_USAGE,
                _ => EXIT_FAILURE,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Engine(e) => e.to_string(),
        }
    }
}

fn load(src: &Source) -> Result<(Engine, String), Failure> {
    let (session, source) = match (&src.session, &src.corpus) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            let s = parse_session(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            (s, path.display().to_string())
        }
        (None, Some(id)) => {
            let s = corpus_session(id).ok_or_else(|| Failure::Usage(format!("unknown corpus id {id:?}; see list-corpus")))?;
            (s, format!("corpus:{id}"))
        }
        (None, None) => return Err(Failure::Usage("a session is required: pass --session FILE or --corpus ID".into())),
    };
    Ok((Engine::new(session, src.characteristic)?, source))
}

/// The named ideal, or the only ideal of the session when no name is given.
fn pick_ideal<'a>(e: &'a Engine, name: &Option<String>) -> Result<(String, &'a IdealData), Failure> {
    let name = match name {
        Some(n) => n.clone(),
        None => match &e.session.ideals[..] {
            [only] => only.name.clone(),
            [] => return Err(Failure::Usage("the session declares no ideal".into())),
            _ => return Err(Failure::Usage("several ideals are declared; pass --ideal NAME".into())),
        },
    };
    let i = e.ideal(&name)?;
    Ok((name, i))
}

struct Done {
    command: String,
    source: String,
    characteristic: u32,
    ok: bool,
    result: Value,
    /// Replaces the generic `key = value` rendering.
    text: Option<String>,
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialize")
}

fn done<T: Serialize>(command: &str, e: &Engine, source: String, ok: bool, result: &T) -> Done {
    Done { command: command.to_string(), source, characteristic: e.ring.characteristic(), ok, result: to_value(result), text: None }
}

fn execute(command: &Command) -> Result<Done, Failure> {
    match command {
        Command::Resolve { module, steps, src } => {
            let (e, source) = load(src)?;
            let res = e.ring.resolve(&e.module(module)?, *steps)?;
            let out = ResolveJson {
                module: module.clone(),
                steps: *steps,
                betti: res.betti.clone(),
                periodic: res.periodic.map(|(start, period)| Periodicity { start, period }),
                differentials: res.matrices.iter().map(|m| e.show_matrix(m)).collect(),
            };
            Ok(done("resolve", &e, source, true, &out))
        }
        Command::CheckUlrichIdeal { ideal, src } => {
            let (e, source) = load(src)?;
            let (_, i) = pick_ideal(&e, ideal)?;
            let rep = e.ring.check_ulrich_ideal(i)?;
            Ok(done("check-ulrich-ideal", &e, source, true, &UlrichIdealJson::from(&rep)))
        }
        Command::CheckUlrichModule { module, ideal, src } => {
            let (e, source) = load(src)?;
            let (_, i) = pick_ideal(&e, ideal)?;
            let rep = e.ring.check_ulrich_module(&e.module(module)?, i)?;
            Ok(done("check-ulrich-module", &e, source, true, &UlrichModuleJson::from(&rep)))
        }
        Command::Linkage { module, src } => {
            let (e, source) = load(src)?;
            let r = &e.ring;
            let m = r.minimal_presentation(&e.module(module)?)?;
            let rep = r.linkage(&m)?;
            let same = r.matrices_equivalent(rep.lambda.presentation(), m.presentation());
            Ok(done("linkage", &e, source, true, &LinkageJson::new(&e, &rep, same)))
        }
        Command::Hilbert { module, ideal, kmax, src } => {
            let (e, source) = load(src)?;
            let (_, i) = pick_ideal(&e, ideal)?;
            let table = e.ring.hilbert_samuel(&e.module(module)?, i, *kmax)?;
            Ok(done("hilbert", &e, source, true, &HilbertJson::from(&table)))
        }
        Command::Invariants { module, ideal, src } => {
            let (e, source) = load(src)?;
            let out = invariants(&e, module.as_deref(), ideal)?;
            Ok(done("invariants", &e, source, true, &out))
        }
        Command::Regularity { module, ideal, kmax, src } => {
            let (e, source) = load(src)?;
            let (_, i) = pick_ideal(&e, ideal)?;
            let m = e.module(module)?;
            let r = &e.ring;
            let rep = r.regularity_report(&m, i, *kmax)?;
            let mm = r.minimal_multiplicity_check(&m, i, *kmax)?;
            let ulrich = r.check_ulrich_module(&m, i)?.is_ulrich;
            Ok(done("regularity", &e, source, true, &RegularityJson::new(&rep, &mm, ulrich)))
        }
        Command::Probe { probe } => execute_probe(probe),
        Command::VerifyPaper { src } => {
            if src.session.is_some() || src.corpus.is_some() {
                return Err(Failure::Usage("verify-paper always runs on the built-in corpus".into()));
            }
            let p = src.characteristic.unwrap_or(ulrich_core::DEFAULT_PRIME);
            ulrich_core::PrimeField::new(p)?;
            let criteria = verify::run_all(p);
            let passed = criteria.iter().filter(|c| c.passed).count();
            let mut text = String::new();
            for c in &criteria {
                text.push_str(&format!("{} criterion {:2}: {} ({})\n", if c.passed { "PASS" } else { "FAIL" }, c.id, c.title, c.detail));
            }
            let out = VerifyJson { failed: criteria.len() - passed, passed, criteria };
            text.push_str(&format!("{} passed, {} failed\n", out.passed, out.failed));
            Ok(Done { command: "verify-paper".into(), source: "corpus".into(), characteristic: p, ok: out.failed == 0, result: to_value(&out), text: Some(text) })
        }
        Command::ListCorpus { src } => {
            let ids: Vec<&str> = CORPUS_IDS.to_vec();
            let p = src.characteristic.unwrap_or(ulrich_core::DEFAULT_PRIME);
            Ok(Done { command: "list-corpus".into(), source: "corpus".into(), characteristic: p, ok: true, result: to_value(&ids), text: Some(ids.join("\n") + "\n") })
        }
        Command::Session { src } => {
            let (e, source) = load(src)?;
            let text = e.session.to_string();
            let mut d = done("session", &e, source, true, &text);
            d.text = Some(text);
            Ok(d)
        }
    }
}

fn execute_probe(probe: &Probe) -> Result<Done, Failure> {
    match probe {
        Probe::Hom { module, module2, ideal, n, src } => {
            let (e, source) = load(src)?;
            let (_, i) = pick_ideal(&e, ideal)?;
            let n = n.unwrap_or(e.ring.dim());
            let p = e.ring.hom_ulrich_probe(&e.module(module)?, &e.module(module2)?, i, n)?;
            Ok(done("probe hom", &e, source, true, &HomProbeJson::from(&p)))
        }
        Probe::Freeness { module, ideal, mode, window, src } => {
            let (e, source) = load(src)?;
            let (_, i) = pick_ideal(&e, ideal)?;
            let mode: FreenessMode = mode.parse().map_err(|err: AlgebraError| Failure::Usage(err.to_string()))?;
            let v = e.ring.freeness_probe_with_window(&e.module(module)?, i, mode, *window)?;
            Ok(done("probe freeness", &e, source, true, &FreenessJson::from(&v)))
        }
        Probe::RegularIffUlrich { src } => {
            let (e, source) = load(src)?;
            let (is_regular, ring_ulrich_wrt_maximal) = e.ring.regular_iff_ulrich_probe()?;
            Ok(done("probe regular-iff-ulrich", &e, source, true, &RegularIffUlrichJson { is_regular, ring_ulrich_wrt_maximal }))
        }
    }
}

fn invariants(e: &Engine, module: Option<&str>, ideal: &Option<String>) -> Result<InvariantsJson, Failure> {
    let r = &e.ring;
    let chosen = match ideal {
        Some(_) => Some(pick_ideal(e, ideal)?),
        None if e.session.ideals.len() == 1 => Some(pick_ideal(e, ideal)?),
        None => None,
    };
    let ideal_json = match &chosen {
        Some((name, i)) => Some(IdealInvariantsJson {
            name: name.clone(),
            num_generators: r.minimal_generators(1, &i.gens.iter().map(|g| vec![g.clone()]).collect::<Vec<_>>())?.len(),
            colength: r.ideal_colength(&i.gens)?,
            loewy_length: defined(r.loewy_length(&i.gens, ulrich_core::ideal::DEFAULT_N_MAX))?,
            socle_dimension: defined(r.socle_dimension(&i.gens))?,
            reduction_exponent: match &i.q {
                Some(q) => defined(r.verify_reduction(&i.gens, q, ulrich_core::ideal::DEFAULT_R_MAX))?,
                None => None,
            },
        }),
        None => None,
    };
    let module_json = match module {
        Some(name) => {
            let m = r.minimal_presentation(&e.module(name)?)?;
            let mcm = match chosen.as_ref().and_then(|(_, i)| i.q.as_deref()) {
                Some(q) => Some(r.is_maximal_cohen_macaulay(&m, q)?),
                None => None,
            };
            Some(ModuleInvariantsJson {
                name: name.to_string(),
                nu: m.num_generators(),
                length: r.module_length(&m)?,
                rank: r.module_rank(&m)?,
                maximal_cohen_macaulay: mcm,
                presentation: e.show_matrix(m.presentation()),
            })
        }
        None => None,
    };
    Ok(InvariantsJson {
        dim: r.dim(),
        embedding_dimension: r.embedding_dimension()?,
        is_regular: r.is_regular_ring()?,
        ring_length: r.length(),
        ideal: ideal_json,
        module: module_json,
    })
}

/// Invariants that only exist for `𝔪`-primary ideals or a verified
/// reduction come out as `null` otherwise.
fn defined<T>(v: ulrich_core::Result<T>) -> Result<Option<T>, Failure> {
    match v {
        Ok(x) => Ok(Some(x)),
        Err(AlgebraError::NotMPrimary | AlgebraError::BoundExceeded { .. } | AlgebraError::ReductionNotContained(_) | AlgebraError::NotParameterIdeal(_)) => Ok(None),
        Err(err) => Err(err.into()),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Resolve { .. } => "resolve",
        Command::CheckUlrichIdeal { .. } => "check-ulrich-ideal",
        Command::CheckUlrichModule { .. } => "check-ulrich-module",
        Command::Linkage { .. } => "linkage",
        Command::Hilbert { .. } => "hilbert",
        Command::Invariants { .. } => "invariants",
        Command::Regularity { .. } => "regularity",
        Command::Probe { probe: Probe::Hom { .. } } => "probe hom",
        Command::Probe { probe: Probe::Freeness { .. } } => "probe freeness",
        Command::Probe { probe: Probe::RegularIffUlrich { .. } } => "probe regular-iff-ulrich",
        Command::VerifyPaper { .. } => "verify-paper",
        Command::ListCorpus { .. } => "list-corpus",
        Command::Session { .. } => "session",
    }
}

fn source_of(c: &Command) -> &Source {
    match c {
        Command::Resolve { src, .. }
        | Command::CheckUlrichIdeal { src, .. }
        | Command::CheckUlrichModule { src, .. }
        | Command::Linkage { src, .. }
        | Command::Hilbert { src, .. }
        | Command::Invariants { src, .. }
        | Command::Regularity { src, .. }
        | Command::VerifyPaper { src }
        | Command::ListCorpus { src }
        | Command::Session { src } => src,
        Command::Probe { probe } => match probe {
            Probe::Hom { src, .. } | Probe::Freeness { src, .. } | Probe::RegularIffUlrich { src } => src,
        },
    }
}

/// `key = value` lines, one per leaf, with dotted and indexed paths.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&p, x, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::String(s) => out.push(format!("{prefix} = {s}")),
        other => out.push(format!("{prefix} = {other}")),
    }
}

fn render(v: &Value, json: bool) -> String {
    if json {
        let mut s = serde_json::to_string(v).expect("serializable");
        s.push('\n');
        s
    } else {
        let mut lines = Vec::new();
        flatten("", v, &mut lines);
        lines.join("\n") + "\n"
    }
}

/// Runs one command to completion.
pub fn run(cli: &Cli) -> Outcome {
    let json = source_of(&cli.command).json;
    let start = Instant::now();
    match execute(&cli.command) {
        Ok(d) => {
            let report = Report {
                command: d.command,
                source: d.source,
                engine: ENGINE,
                characteristic: d.characteristic,
                ok: d.ok,
                result: d.result,
                timings: Timings { elapsed_ms: start.elapsed().as_millis() as u64 },
            };
            let stdout = match d.text {
                Some(t) if !json => t,
                _ => render(&to_value(&report), json),
            };
            Outcome { code: if report.ok { EXIT_OK } else { EXIT_FAILURE }, stdout, stderr: String::new() }
        }
        Err(f) => {
            let report = ErrorReport { command: command_name(&cli.command).to_string(), ok: false, error: ErrorBody { kind: f.kind(), message: f.message() } };
            Outcome { code: f.code(), stdout: render(&to_value(&report), json), stderr: format!("error: {}\n", f.message()) }
        }
    }
}

/// Removes the timing block so reports can be compared byte for byte.
pub fn without_timings(v: &mut Value) {
    if let Value::Object(map) = v {
        map.remove("timings");
    }
}
