//! Turns a parsed session into core objects, evaluating derived modules on demand.

use std::cell::RefCell;
use std::collections::BTreeMap;

use ulrich_core::{AlgebraError, AmbientRing, IdealData, Matrix, ModuleData, Poly, PrimeField};

use crate::session::{ModuleKind, SessionFile};

#[derive(Debug, thiserror::Error)]
pub enum EngineError {
    #[error("{0}")]
    Algebra(#[from] AlgebraError),
    #[error("unknown ideal {0}")]
    UnknownIdeal(String),
    #[error("unknown module {0}")]
    UnknownModule(String),
    #[error("{0}")]
    Usage(String),
}

pub struct Engine {
    pub session: SessionFile,
    pub ring: AmbientRing,
    ideals: BTreeMap<String, IdealData>,
    cache: RefCell<BTreeMap<String, ModuleData>>,
}

impl Engine {
    /// Builds the ring, optionally overriding the characteristic.
    pub fn new(session: SessionFile, characteristic: Option<u32>) -> Result<Self, EngineError> {
        let mut session = session;
        if let Some(p) = characteristic {
            session.ring.characteristic = p;
        }
        let r = &session.ring;
        let field = PrimeField::new(r.characteristic)?;
        let parse = |t: &str| {
            ulrich_core::parse_poly(t, &r.vars, &r.weights, &field).map_err(|e| EngineError::Usage(format!("{t:?}: {e}")))
        };
        let relations = r.relations.iter().map(|t| parse(t)).collect::<Result<Vec<_>, _>>()?;
        let ring = AmbientRing::new(field, r.vars.clone(), r.weights.clone(), relations, r.dim)?;
        let mut ideals = BTreeMap::new();
        for i in &session.ideals {
            let gens = i.gens.iter().map(|t| parse(t)).collect::<Result<Vec<_>, _>>()?;
            let data = match &i.q {
                Some(q) => IdealData::with_q(gens, q.iter().map(|t| parse(t)).collect::<Result<Vec<_>, _>>()?),
                None => IdealData::new(gens),
            };
            ideals.insert(i.name.clone(), data);
        }
        Ok(Engine { session, ring, ideals, cache: RefCell::new(BTreeMap::new()) })
    }

    pub fn ideal(&self, name: &str) -> Result<&IdealData, EngineError> {
        self.ideals.get(name).ok_or_else(|| EngineError::UnknownIdeal(name.to_string()))
    }

    fn matrix(&self, rows: &[Vec<String>]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|t| self.ring.p(t)).collect()).collect())
    }

    /// A named module; an ideal name denotes the ideal as a submodule of `R`.
    pub fn module(&self, name: &str) -> Result<ModuleData, EngineError> {
        if let Some(m) = self.cache.borrow().get(name) {
            return Ok(m.clone());
        }
        let r = &self.ring;
        let m = match self.session.module(name) {
            Some(spec) => match &spec.kind {
                ModuleKind::Free { rank } => ModuleData::free(*rank),
                ModuleKind::Submodule { matrix } => {
                    let m = self.matrix(matrix);
                    r.submodule(m.rows(), &m.columns())?
                }
                ModuleKind::Presentation { matrix } => ModuleData::presented(self.matrix(matrix)),
                ModuleKind::Quotient { ideal } => ModuleData::cyclic(&self.ideal(ideal)?.gens),
                ModuleKind::SyzygyOf { ideal, k } => r.syzygy_module(&ModuleData::cyclic(&self.ideal(ideal)?.gens), *k)?,
                ModuleKind::LinkageOf { module } => r.lambda(&self.module(module)?)?,
                ModuleKind::DualOf { module } => r.dual(&self.module(module)?)?,
                ModuleKind::Hom { source, target } => r.hom_module(&self.module(source)?, &self.module(target)?)?,
            },
            None => {
                let i = self.ideals.get(name).ok_or_else(|| EngineError::UnknownModule(name.to_string()))?;
                let gens: Vec<Vec<Poly>> = i.gens.iter().map(|g| vec![g.clone()]).collect();
                r.submodule(1, &gens)?
            }
        };
        self.cache.borrow_mut().insert(name.to_string(), m.clone());
        Ok(m)
    }

    /// The matrix written in a `submodule` or `presentation` block.
    pub fn declared_matrix(&self, name: &str) -> Option<Matrix> {
        match &self.session.module(name)?.kind {
            ModuleKind::Submodule { matrix } | ModuleKind::Presentation { matrix } => Some(self.matrix(matrix)),
            _ => None,
        }
    }

    pub fn show(&self, p: &Poly) -> String {
        self.ring.show(p)
    }

    pub fn show_matrix(&self, m: &Matrix) -> Vec<Vec<String>> {
        (0..m.rows()).map(|i| (0..m.cols()).map(|j| self.show(m.get(i, j))).collect()).collect()
    }
}
