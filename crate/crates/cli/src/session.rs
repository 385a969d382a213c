//! Session files: a line-oriented description of a ring, named ideals and
//! named modules.
//!
//! ```text
//! [ring]
//! char = 32003
//! vars = x, y, z
//! weights = 2, 2, 1
//! relations = x^2+y^2+z^4
//! dim = 2
//!
//! [ideal I]
//! gens = x, y, z^2
//! Q = x, y
//!
//! [module ImPsi]
//! kind = submodule
//! matrix = -z^2, 0, -y, x; 0, -z^2, x, y; x, y, 0, z^2
//! ```

use std::collections::BTreeSet;
use std::fmt;

use ulrich_core::field::is_prime;
use ulrich_core::{parse_poly, PrimeField, DEFAULT_PRIME, MAX_VARS};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct SessionError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    pub characteristic: u32,
    pub vars: Vec<String>,
    pub weights: Vec<u32>,
    pub relations: Vec<String>,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSpec {
    pub name: String,
    pub gens: Vec<String>,
    pub q: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    Free { rank: usize },
    /// Column span of the matrix inside a free module.
    Submodule { matrix: Vec<Vec<String>> },
    /// Cokernel of the matrix.
    Presentation { matrix: Vec<Vec<String>> },
    /// `R/I`.
    Quotient { ideal: String },
    SyzygyOf { ideal: String, k: usize },
    LinkageOf { module: String },
    DualOf { module: String },
    Hom { source: String, target: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    pub name: String,
    pub kind: ModuleKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SessionFile {
    pub ring: RingSpec,
    pub ideals: Vec<IdealSpec>,
    pub modules: Vec<ModuleSpec>,
}

impl SessionFile {
    pub fn ideal(&self, name: &str) -> Option<&IdealSpec> {
        self.ideals.iter().find(|i| i.name == name)
    }

    pub fn module(&self, name: &str) -> Option<&ModuleSpec> {
        self.modules.iter().find(|m| m.name == name)
    }
}

fn err(line: usize, column: usize, message: impl Into<String>) -> SessionError {
    SessionError { line, column, message: message.into() }
}

/// A `key = value` line with the column where the value starts.
struct Entry<'a> {
    line: usize,
    key: &'a str,
    value: &'a str,
    value_col: usize,
}

struct Block<'a> {
    line: usize,
    header: &'a str,
    name: Option<&'a str>,
    entries: Vec<Entry<'a>>,
}

impl<'a> Block<'a> {
    fn get(&self, key: &str) -> Option<&Entry<'a>> {
        self.entries.iter().find(|e| e.key == key)
    }

    fn require(&self, key: &str, what: &str) -> Result<&Entry<'a>, SessionError> {
        self.get(key).ok_or_else(|| err(self.line, 1, format!("{what} requires {key}")))
    }

    fn allow_only(&self, keys: &[&str]) -> Result<(), SessionError> {
        for e in &self.entries {
            if !keys.contains(&e.key) {
                return Err(err(e.line, 1, format!("unknown key {:?} in [{}]", e.key, self.header)));
            }
        }
        Ok(())
    }
}

/// Splits on `sep`, returning trimmed pieces and their byte offsets in `s`.
fn split_with_offsets(s: &str, sep: char) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        if c == sep {
            out.push(trimmed(&s[start..i], start));
            start = i + c.len_utf8();
        }
    }
    out.push(trimmed(&s[start..], start));
    out
}

fn trimmed(s: &str, offset: usize) -> (&str, usize) {
    let lead = s.len() - s.trim_start().len();
    (s.trim(), offset + lead)
}

fn column_of(text_before: &str) -> usize {
    text_before.chars().count() + 1
}

fn parse_blocks(text: &str) -> Result<Vec<Block<'_>>, SessionError> {
    let mut blocks: Vec<Block> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let t = content.trim();
        if t.is_empty() {
            continue;
        }
        if let Some(inner) = t.strip_prefix('[') {
            let inner = inner.strip_suffix(']').ok_or_else(|| err(line, column_of(raw.trim_end()), "expected ']'"))?;
            let mut parts = inner.split_whitespace();
            let header = parts.next().ok_or_else(|| err(line, 1, "empty block header"))?;
            let name = parts.next();
            if parts.next().is_some() {
                return Err(err(line, 1, "block header has too many words"));
            }
            blocks.push(Block { line, header, name, entries: Vec::new() });
            continue;
        }
        let eq = content.find('=').ok_or_else(|| err(line, 1, "expected key = value"))?;
        let key = content[..eq].trim();
        let (value, off) = trimmed(&content[eq + 1..], eq + 1);
        let block = blocks.last_mut().ok_or_else(|| err(line, 1, "entry outside of a block"))?;
        if block.get(key).is_some() {
            return Err(err(line, 1, format!("duplicate key {key:?}")));
        }
        block.entries.push(Entry { line, key, value, value_col: column_of(&raw[..off]) });
    }
    Ok(blocks)
}

fn parse_usize(e: &Entry) -> Result<usize, SessionError> {
    e.value.parse().map_err(|_| err(e.line, e.value_col, format!("expected a non-negative integer, got {:?}", e.value)))
}

fn list(e: &Entry) -> Vec<(String, usize)> {
    if e.value.is_empty() {
        return Vec::new();
    }
    split_with_offsets(e.value, ',').into_iter().map(|(s, o)| (s.to_string(), e.value_col + o)).collect()
}

struct PolyChecker<'a> {
    vars: &'a [String],
    weights: &'a [u32],
    field: PrimeField,
}

impl PolyChecker<'_> {
    fn check(&self, text: &str, line: usize, col: usize) -> Result<(), SessionError> {
        if text.is_empty() {
            return Err(err(line, col, "empty polynomial"));
        }
        parse_poly(text, self.vars, self.weights, &self.field).map(|_| ()).map_err(|e| {
            let before = text.get(..e.pos).unwrap_or(text);
            err(line, col + before.chars().count(), e.message)
        })
    }

    fn polys(&self, e: &Entry) -> Result<Vec<String>, SessionError> {
        let mut out = Vec::new();
        for (p, col) in list(e) {
            self.check(&p, e.line, col)?;
            out.push(p);
        }
        Ok(out)
    }

    fn matrix(&self, e: &Entry) -> Result<Vec<Vec<String>>, SessionError> {
        let mut rows = Vec::new();
        for (row, off) in split_with_offsets(e.value, ';') {
            let mut out = Vec::new();
            for (p, o) in split_with_offsets(row, ',') {
                let col = e.value_col + off + o;
                self.check(p, e.line, col)?;
                out.push(p.to_string());
            }
            rows.push(out);
        }
        let width = rows[0].len();
        if rows.iter().any(|r| r.len() != width) {
            return Err(err(e.line, e.value_col, "matrix rows have different lengths"));
        }
        Ok(rows)
    }
}

/// `name(a, b)` or `name`, returning the arguments.
fn call(value: &str) -> (&str, Vec<&str>) {
    match value.find('(') {
        Some(i) if value.ends_with(')') => {
            let args = value[i + 1..value.len() - 1].split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            (value[..i].trim(), args)
        }
        _ => (value, Vec::new()),
    }
}

fn parse_ring(b: &Block) -> Result<RingSpec, SessionError> {
    b.allow_only(&["char", "vars", "weights", "relations", "dim"])?;
    let characteristic = match b.get("char") {
        Some(e) => {
            let p: u32 = e.value.parse().map_err(|_| err(e.line, e.value_col, format!("invalid characteristic {:?}", e.value)))?;
            if !is_prime(p) {
                return Err(err(e.line, e.value_col, format!("characteristic {p} is not prime")));
            }
            p
        }
        None => DEFAULT_PRIME,
    };
    let ve = b.require("vars", "ring")?;
    let mut vars = Vec::new();
    for (v, col) in list(ve) {
        let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(err(ve.line, col, format!("invalid variable name {v:?}")));
        }
        if vars.contains(&v) {
            return Err(err(ve.line, col, format!("variable {v} declared twice")));
        }
        vars.push(v);
    }
    if vars.is_empty() {
        return Err(err(ve.line, ve.value_col, "ring requires at least one variable"));
    }
    if vars.len() > MAX_VARS {
        return Err(err(ve.line, ve.value_col, format!("at most {MAX_VARS} variables are supported")));
    }
    let weights = match b.get("weights") {
        Some(e) => {
            let mut w = Vec::new();
            for (s, col) in list(e) {
                let x: u32 = s.parse().ok().filter(|&x| x > 0).ok_or_else(|| err(e.line, col, format!("invalid weight {s:?}")))?;
                w.push(x);
            }
            if w.len() != vars.len() {
                return Err(err(e.line, e.value_col, format!("{} weights for {} variables", w.len(), vars.len())));
            }
            w
        }
        None => vec![1; vars.len()],
    };
    let field = PrimeField::new(characteristic).map_err(|e| err(b.line, 1, e.to_string()))?;
    let checker = PolyChecker { vars: &vars, weights: &weights, field };
    let relations = match b.get("relations") {
        Some(e) => checker.polys(e)?,
        None => Vec::new(),
    };
    let dim = match b.get("dim") {
        Some(e) => parse_usize(e)?,
        None => vars.len() - relations.len().min(vars.len()),
    };
    if dim > vars.len() {
        return Err(err(b.get("dim").map_or(b.line, |e| e.line), 1, "dimension exceeds the number of variables"));
    }
    Ok(RingSpec { characteristic, vars, weights, relations, dim })
}

pub fn parse_session(text: &str) -> Result<SessionFile, SessionError> {
    let blocks = parse_blocks(text)?;
    let ring_block = blocks.iter().find(|b| b.header == "ring").ok_or_else(|| err(1, 1, "missing [ring] block"))?;
    let ring = parse_ring(ring_block)?;
    let field = PrimeField::new(ring.characteristic).map_err(|e| err(ring_block.line, 1, e.to_string()))?;
    let checker = PolyChecker { vars: &ring.vars, weights: &ring.weights, field };
    let mut ideals = Vec::new();
    let mut modules: Vec<ModuleSpec> = Vec::new();
    let mut names = BTreeSet::new();
    let mut module_lines = Vec::new();
    for b in &blocks {
        match b.header {
            "ring" => {
                if !std::ptr::eq(b, ring_block) {
                    return Err(err(b.line, 1, "duplicate [ring] block"));
                }
            }
            "ideal" | "module" => {
                let name = b.name.ok_or_else(|| err(b.line, 1, format!("[{}] requires a name", b.header)))?;
                if !names.insert(name.to_string()) {
                    return Err(err(b.line, 1, format!("name {name} used twice")));
                }
                if b.header == "ideal" {
                    b.allow_only(&["gens", "Q"])?;
                    let gens = checker.polys(b.require("gens", "ideal")?)?;
                    if gens.is_empty() {
                        return Err(err(b.line, 1, "ideal requires gens"));
                    }
                    let q = b.get("Q").map(|e| checker.polys(e)).transpose()?;
                    ideals.push(IdealSpec { name: name.to_string(), gens, q });
                } else {
                    let kind = parse_module_kind(b, &checker)?;
                    modules.push(ModuleSpec { name: name.to_string(), kind });
                    module_lines.push(b.line);
                }
            }
            other => return Err(err(b.line, 2, format!("unknown block [{other}]"))),
        }
    }
    let session = SessionFile { ring, ideals, modules };
    for (m, &line) in session.modules.iter().zip(&module_lines) {
        check_references(&session, m, line)?;
    }
    Ok(session)
}

fn parse_module_kind(b: &Block, checker: &PolyChecker) -> Result<ModuleKind, SessionError> {
    let ke = b.require("kind", "module")?;
    let (head, args) = call(ke.value);
    let bad_args = |n: usize| err(ke.line, ke.value_col, format!("{head} takes {n} argument(s)"));
    let kind = match head {
        "free" => {
            b.allow_only(&["kind", "rank"])?;
            ModuleKind::Free { rank: parse_usize(b.require("rank", "free module")?)? }
        }
        "submodule" | "presentation" => {
            b.allow_only(&["kind", "matrix"])?;
            let matrix = checker.matrix(b.require("matrix", "module")?)?;
            if head == "submodule" {
                ModuleKind::Submodule { matrix }
            } else {
                ModuleKind::Presentation { matrix }
            }
        }
        "quotient" => {
            b.allow_only(&["kind"])?;
            let [i] = args[..] else { return Err(bad_args(1)) };
            ModuleKind::Quotient { ideal: i.to_string() }
        }
        "syzygy-of" => {
            b.allow_only(&["kind"])?;
            let [i, k] = args[..] else { return Err(bad_args(2)) };
            let k = k.parse().map_err(|_| err(ke.line, ke.value_col, format!("invalid syzygy index {k:?}")))?;
            ModuleKind::SyzygyOf { ideal: i.to_string(), k }
        }
        "linkage-of" | "dual-of" => {
            b.allow_only(&["kind"])?;
            let [m] = args[..] else { return Err(bad_args(1)) };
            if head == "linkage-of" {
                ModuleKind::LinkageOf { module: m.to_string() }
            } else {
                ModuleKind::DualOf { module: m.to_string() }
            }
        }
        "hom" => {
            b.allow_only(&["kind"])?;
            let [m, n] = args[..] else { return Err(bad_args(2)) };
            ModuleKind::Hom { source: m.to_string(), target: n.to_string() }
        }
        other => return Err(err(ke.line, ke.value_col, format!("unknown module kind {other:?}"))),
    };
    Ok(kind)
}

/// Module references may only point at modules declared earlier, which
/// rules out cycles.
fn check_references(s: &SessionFile, m: &ModuleSpec, line: usize) -> Result<(), SessionError> {
    let pos = s.modules.iter().position(|x| x.name == m.name).unwrap_or(0);
    let earlier = |name: &str| s.modules[..pos].iter().any(|x| x.name == name) || s.ideal(name).is_some();
    let need_ideal = |name: &str| {
        if s.ideal(name).is_none() {
            Err(err(line, 1, format!("unknown ideal {name}")))
        } else {
            Ok(())
        }
    };
    let need_module = |name: &str| {
        if !earlier(name) {
            Err(err(line, 1, format!("unknown module {name} (modules must be declared before use)")))
        } else {
            Ok(())
        }
    };
    match &m.kind {
        ModuleKind::Quotient { ideal } | ModuleKind::SyzygyOf { ideal, .. } => need_ideal(ideal),
        ModuleKind::LinkageOf { module } | ModuleKind::DualOf { module } => need_module(module),
        ModuleKind::Hom { source, target } => need_module(source).and(need_module(target)),
        _ => Ok(()),
    }
}

fn join(v: &[String]) -> String {
    v.join(", ")
}

impl fmt::Display for SessionFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.ring;
        writeln!(f, "[ring]")?;
        writeln!(f, "char = {}", r.characteristic)?;
        writeln!(f, "vars = {}", join(&r.vars))?;
        let w: Vec<String> = r.weights.iter().map(|w| w.to_string()).collect();
        writeln!(f, "weights = {}", join(&w))?;
        if !r.relations.is_empty() {
            writeln!(f, "relations = {}", join(&r.relations))?;
        }
        writeln!(f, "dim = {}", r.dim)?;
        for i in &self.ideals {
            writeln!(f, "\n[ideal {}]", i.name)?;
            writeln!(f, "gens = {}", join(&i.gens))?;
            if let Some(q) = &i.q {
                writeln!(f, "Q = {}", join(q))?;
            }
        }
        for m in &self.modules {
            writeln!(f, "\n[module {}]", m.name)?;
            let matrix = |rows: &[Vec<String>]| rows.iter().map(|r| join(r)).collect::<Vec<_>>().join("; ");
            match &m.kind {
                ModuleKind::Free { rank } => writeln!(f, "kind = free\nrank = {rank}")?,
                ModuleKind::Submodule { matrix: mm } => writeln!(f, "kind = submodule\nmatrix = {}", matrix(mm))?,
                ModuleKind::Presentation { matrix: mm } => writeln!(f, "kind = presentation\nmatrix = {}", matrix(mm))?,
                ModuleKind::Quotient { ideal } => writeln!(f, "kind = quotient({ideal})")?,
                ModuleKind::SyzygyOf { ideal, k } => writeln!(f, "kind = syzygy-of({ideal}, {k})")?,
                ModuleKind::LinkageOf { module } => writeln!(f, "kind = linkage-of({module})")?,
                ModuleKind::DualOf { module } => writeln!(f, "kind = dual-of({module})")?,
                ModuleKind::Hom { source, target } => writeln!(f, "kind = hom({source}, {target})")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SEC6: &str = "[ring]\nchar = 32003\nvars = x, y, z\nweights = 2, 2, 1\nrelations = x^2+y^2+z^4\ndim = 2\n\n[ideal I]\ngens = x, y, z^2\nQ = x, y\n\n[module ImPsi]\nkind = submodule\nmatrix = -z^2, 0, -y, x; 0, -z^2, x, y; x, y, 0, z^2\n";

    #[test]
    fn parses_and_round_trips() {
        let s = parse_session(SEC6).unwrap();
        assert_eq!(s.ideals.len(), 1);
        assert_eq!(s.modules.len(), 1);
        assert_eq!(parse_session(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn empty_ideal_is_rejected() {
        let text = "[ring]\nvars = x\n[ideal J]\ngens =\n";
        assert!(parse_session(text).unwrap_err().message.contains("ideal requires gens"));
        let text = "[ring]\nvars = x\n[ideal J]\nQ = x\n";
        assert!(parse_session(text).unwrap_err().message.contains("ideal requires gens"));
    }

    #[test]
    fn undeclared_variable_is_located() {
        let text = "[ring]\nvars = x, y\nrelations = x^2 + w\n";
        let e = parse_session(text).unwrap_err();
        assert_eq!((e.line, e.column), (3, 19));
        assert!(e.message.contains('w'));
    }

    #[test]
    fn non_prime_characteristic() {
        let e = parse_session("[ring]\nchar = 32001\nvars = x\n").unwrap_err();
        assert!(e.message.contains("not prime"));
    }

    #[test]
    fn ragged_matrix_and_forward_reference() {
        let e = parse_session("[ring]\nvars = x\n[module M]\nkind = submodule\nmatrix = x, x; x\n").unwrap_err();
        assert!(e.message.contains("different lengths"));
        let e = parse_session("[ring]\nvars = x\n[module D]\nkind = dual-of(M)\n[module M]\nkind = free\nrank = 1\n").unwrap_err();
        assert!(e.message.contains("unknown module M"));
    }

    #[test]
    fn derived_kinds_round_trip() {
        let text = "[ring]\nvars = x, y\nrelations = x^2+y^4\ndim = 1\n[ideal I]\ngens = x, y^2\nQ = x\n[module S]\nkind = syzygy-of(I, 2)\n[module R]\nkind = free\nrank = 1\n[module H]\nkind = hom(S, R)\n[module L]\nkind = linkage-of(S)\n[module D]\nkind = dual-of(H)\n[module C]\nkind = quotient(I)\n";
        let s = parse_session(text).unwrap();
        assert_eq!(s.modules.len(), 6);
        assert_eq!(parse_session(&s.to_string()).unwrap(), s);
    }
}
