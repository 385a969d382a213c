//! The ambient local ring `K[x₁..xₙ]` localized at the origin, modulo relations.

use crate::error::{AlgebraError, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MAX_VARS};
use crate::parse::{parse_poly, PolyParseError};
use crate::poly::Poly;
use crate::sbasis::{Ctx, ModuleOrder, SVec, StandardBasis, Term};

#[derive(Clone, Debug)]
pub struct AmbientRing {
    field: PrimeField,
    vars: Vec<String>,
    weights: Vec<u32>,
    relations: Vec<Poly>,
    dim: usize,
    relation_basis: Vec<Poly>,
    finite_length: Option<u64>,
}

impl AmbientRing {
    /// Builds the ring and computes a standard basis of its relations.
    ///
    /// The declared dimension is recorded as given; see [`AmbientRing::verify_dimension`].
    pub fn new(field: PrimeField, vars: Vec<String>, weights: Vec<u32>, relations: Vec<Poly>, dim: usize) -> Result<Self> {
        if vars.len() > MAX_VARS {
            return Err(AlgebraError::TooManyVariables { max: MAX_VARS, got: vars.len() });
        }
        if vars.is_empty() {
            return Err(AlgebraError::InvalidArgument("a ring needs at least one variable".into()));
        }
        if weights.len() != vars.len() || weights.contains(&0) {
            return Err(AlgebraError::InvalidArgument("one positive weight per variable is required".into()));
        }
        if dim > vars.len() {
            return Err(AlgebraError::DimensionMismatch(format!("dimension {dim} exceeds the number of variables")));
        }
        for r in &relations {
            if r.is_unit() {
                return Err(AlgebraError::UnitRelation(r.display(&vars, &field).to_string()));
            }
        }
        let ctx = Ctx::new(field, weights.clone(), ModuleOrder::top(vec![0]));
        let gens: Vec<SVec> = relations.iter().filter(|p| !p.is_zero()).map(|p| poly_to_svec(p, 0)).collect();
        let sb = StandardBasis::compute(ctx, Vec::new(), gens, true)?;
        let relation_basis = sb.minimal_elements().iter().map(svec_to_poly).collect();
        let finite_length = sb.colength();
        Ok(AmbientRing { field, vars, weights, relations, dim, relation_basis, finite_length })
    }

    /// The regular local ring `K[x₁..xₙ]` localized at the origin.
    pub fn regular(field: PrimeField, vars: Vec<String>, weights: Vec<u32>) -> Result<Self> {
        let n = vars.len();
        AmbientRing::new(field, vars, weights, Vec::new(), n)
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Standard basis of the relation ideal.
    pub fn relation_basis(&self) -> &[Poly] {
        &self.relation_basis
    }

    /// `ℓ(R)` when the ring is Artinian.
    pub fn length(&self) -> Option<u64> {
        self.finite_length
    }

    pub fn is_artinian(&self) -> bool {
        self.finite_length.is_some()
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::term(Monomial::variable(i, &self.weights), 1)
    }

    pub fn variables(&self) -> Vec<Poly> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn monomial(&self, exps: &[u16]) -> Monomial {
        Monomial::from_exponents(exps, &self.weights)
    }

    pub fn constant(&self, c: i64) -> Poly {
        Poly::constant(self.field.from_i64(c))
    }

    pub fn parse(&self, text: &str) -> std::result::Result<Poly, PolyParseError> {
        parse_poly(text, &self.vars, &self.weights, &self.field)
    }

    /// Parses, panicking on malformed input. Intended for literals in code.
    pub fn p(&self, text: &str) -> Poly {
        self.parse(text).unwrap_or_else(|e| panic!("bad polynomial literal {text:?}: {e}"))
    }

    pub fn show(&self, p: &Poly) -> String {
        p.display(&self.vars, &self.field).to_string()
    }

    /// Arithmetic context for a computation in a free module of the given shifts.
    pub(crate) fn ctx(&self, order: ModuleOrder) -> Ctx {
        Ctx::new(self.field, self.weights.clone(), order)
    }

    /// The relation basis placed in each listed component.
    pub(crate) fn relation_vectors(&self, comps: impl Iterator<Item = usize>) -> Vec<SVec> {
        let mut out = Vec::new();
        for c in comps {
            for r in &self.relation_basis {
                out.push(poly_to_svec(r, c as u32));
            }
        }
        out
    }

    /// True iff `p` is zero in the ring.
    pub fn is_zero(&self, p: &Poly) -> bool {
        if p.is_zero() {
            return true;
        }
        if self.relation_basis.is_empty() {
            return false;
        }
        let ctx = self.ctx(ModuleOrder::top(vec![0]));
        let sb = StandardBasis::from_basis(ctx, self.relation_vectors(0..1));
        sb.contains(&poly_to_svec(p, 0))
    }

    /// The quotient `R/J`, which must be Artinian.
    pub fn quotient(&self, extra: &[Poly]) -> Result<AmbientRing> {
        let mut rels = self.relations.clone();
        rels.extend(extra.iter().filter(|p| !self.is_zero(p)).cloned());
        let q = AmbientRing::new(self.field, self.vars.clone(), self.weights.clone(), rels, 0)?;
        if !q.is_artinian() {
            return Err(AlgebraError::NotMPrimary);
        }
        Ok(q)
    }

    /// Checks the declared dimension against a parameter system `params`:
    /// `params` must have exactly `dim` elements, `R/(params)` must have finite
    /// length, and no subset of `dim − 1` of them may.
    pub fn verify_dimension(&self, params: &[Poly]) -> Result<()> {
        if params.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{} parameters supplied for declared dimension {}",
                params.len(),
                self.dim
            )));
        }
        let finite = |ps: &[Poly]| -> Result<bool> {
            let gens: Vec<Vec<Poly>> = ps.iter().map(|p| vec![p.clone()]).collect();
            Ok(self.quotient_length(1, &gens)?.is_some())
        };
        if !finite(params)? {
            return Err(AlgebraError::DimensionMismatch(
                "the parameters do not generate an ideal primary to the maximal ideal".into(),
            ));
        }
        if self.dim == 0 {
            return Ok(());
        }
        for skip in 0..params.len() {
            let sub: Vec<Poly> = params.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, p)| p.clone()).collect();
            if finite(&sub)? {
                return Err(AlgebraError::DimensionMismatch(format!(
                    "dropping parameter {} still leaves a finite-length quotient",
                    self.show(&params[skip])
                )));
            }
        }
        Ok(())
    }
}

pub(crate) fn poly_to_svec(p: &Poly, comp: u32) -> SVec {
    p.terms().iter().map(|&(mono, c)| (Term { comp, mono }, c)).collect()
}

fn svec_to_poly(v: &SVec) -> Poly {
    Poly::from_sorted(v.iter().map(|&(t, c)| (t.mono, c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn sec6() -> AmbientRing {
        let f = PrimeField::new(32003).unwrap();
        let vars = names(&["x", "y", "z"]);
        let rel = parse_poly("x^2+y^2+z^4", &vars, &[2, 2, 1], &f).unwrap();
        AmbientRing::new(f, vars, vec![2, 2, 1], vec![rel], 2).unwrap()
    }

    #[test]
    fn relation_is_zero_and_variables_are_not() {
        let r = sec6();
        assert!(r.is_zero(&r.p("x^2 + y^2 + z^4")));
        assert!(r.is_zero(&r.p("x^3 + x*y^2 + x*z^4")));
        assert!(!r.is_zero(&r.p("z")));
        assert!(!r.is_artinian());
    }

    #[test]
    fn dimension_is_verified_against_parameters() {
        let r = sec6();
        r.verify_dimension(&[r.p("x"), r.p("y")]).unwrap();
        assert!(r.verify_dimension(&[r.p("x")]).is_err());
        assert!(r.verify_dimension(&[r.p("x"), r.p("x^2")]).is_err());
    }

    #[test]
    fn unit_relations_are_rejected() {
        let f = PrimeField::new(101).unwrap();
        let vars = names(&["x"]);
        let rel = parse_poly("1 + x", &vars, &[1], &f).unwrap();
        assert!(matches!(AmbientRing::new(f, vars, vec![1], vec![rel], 0), Err(AlgebraError::UnitRelation(_))));
    }

    #[test]
    fn artinian_quotient_has_finite_length() {
        let r = sec6();
        let a = r.quotient(&[r.p("x"), r.p("y"), r.p("z^2")]).unwrap();
        assert_eq!(a.length(), Some(2));
        assert!(r.quotient(&[r.p("x")]).is_err());
    }
}
