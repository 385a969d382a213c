//! Hom, Ext, Tor, duals, transposes, horizontal linkage and depth tests.

use crate::error::{AlgebraError, Result};
use crate::matrix::{Matrix, Vector};
use crate::module::ModuleData;
use crate::poly::Poly;
use crate::ring::AmbientRing;

/// Outcome of the horizontal-linkage analysis of a module.
#[derive(Clone, Debug)]
pub struct LinkageReport {
    pub stable: bool,
    pub trace_ideal_in_maximal: bool,
    pub ext1_tr_vanishes: bool,
    pub horizontally_linked: bool,
    pub transpose: ModuleData,
    pub lambda: ModuleData,
}

fn unit_vectors(n: usize) -> Vec<Vector> {
    (0..n)
        .map(|i| {
            let mut v = vec![Poly::zero(); n];
            v[i] = Poly::constant(1);
            v
        })
        .collect()
}

/// A homology-type subquotient `Z / (Z ∩ B)` of a free module `R^k`,
/// with `Z` the cycles and `B` the boundaries.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub rank: usize,
    pub cycles: Vec<Vector>,
    pub boundaries: Vec<Vector>,
}

impl AmbientRing {
    /// `{v ∈ R^k : map·v ∈ span(target)}` for a `p × k` matrix `map`.
    pub fn preimage(&self, map: &Matrix, target: &[Vector]) -> Result<Vec<Vector>> {
        let k = map.cols();
        let mut gens = map.columns();
        gens.extend_from_slice(target);
        let mut out = Vec::new();
        for s in self.syzygies(map.rows(), &gens)? {
            let v: Vector = s[..k].to_vec();
            if !self.is_zero_vector(&v) {
                out.push(v);
            }
        }
        if map.rows() == 0 {
            return Ok(unit_vectors(k));
        }
        Ok(out)
    }

    /// True iff the subquotient is zero.
    pub fn subquotient_vanishes(&self, sq: &Subquotient) -> Result<bool> {
        if sq.cycles.is_empty() {
            return Ok(true);
        }
        self.standard_basis(sq.rank, &sq.boundaries)?.contains_all(&sq.cycles)
    }

    /// The subquotient as a module presented on the cycle generators.
    pub fn subquotient_module(&self, sq: &Subquotient) -> Result<ModuleData> {
        let z = self.minimal_generators(sq.rank, &{
            // Work with cycles modulo boundaries; drop cycles that are boundaries.
            let bs = self.standard_basis(sq.rank, &sq.boundaries)?;
            let mut keep = Vec::new();
            for c in &sq.cycles {
                if !bs.contains(c)? {
                    keep.push(c.clone());
                }
            }
            keep
        })?;
        if z.is_empty() {
            return Ok(ModuleData::zero());
        }
        let mut gens = z.clone();
        gens.extend_from_slice(&sq.boundaries);
        let rels: Vec<Vector> = self.syzygies(sq.rank, &gens)?.into_iter().map(|s| s[..z.len()].to_vec()).collect();
        let p = Matrix::from_columns(z.len(), &rels);
        self.minimal_presentation(&ModuleData::presented(p))
    }

    /// `ℓ` of the subquotient, if finite.
    pub fn subquotient_length(&self, sq: &Subquotient) -> Result<Option<u64>> {
        let b = self.quotient_length(sq.rank, &sq.boundaries)?;
        let mut zb = sq.boundaries.clone();
        zb.extend(sq.cycles.iter().cloned());
        let zb = self.quotient_length(sq.rank, &zb)?;
        match (b, zb) {
            (Some(b), Some(zb)) => Ok(Some(b - zb)),
            _ => self.module_length(&self.subquotient_module(sq)?),
        }
    }

    fn minimal_matrix(&self, m: &ModuleData) -> Result<Matrix> {
        Ok(self.minimal_presentation(m)?.presentation().clone())
    }

    /// `Ext^i(M, N)` as cycles and boundaries in `R^{n·β_i}`; `i = 0` gives `Hom`.
    pub fn ext_subquotient(&self, m: &ModuleData, n: &ModuleData, i: usize) -> Result<Subquotient> {
        let b = self.minimal_matrix(n)?;
        let nn = b.rows();
        let res = self.resolve(m, i + 1)?;
        let d_next = res.differential(i + 1);
        let beta_i = d_next.rows();
        let beta_next = d_next.cols();
        let rank = nn * beta_i;
        let target = b.identity_kron(beta_next).columns();
        let cycles = self.preimage(&d_next.transpose().kron_identity(nn), &target)?;
        let mut boundaries = b.identity_kron(beta_i).columns();
        if i >= 1 {
            boundaries.extend(res.differential(i).transpose().kron_identity(nn).columns());
        }
        Ok(Subquotient { rank, cycles, boundaries })
    }

    /// `Tor_j(M, N)` as cycles and boundaries in `R^{n·β_j}`.
    pub fn tor_subquotient(&self, m: &ModuleData, n: &ModuleData, j: usize) -> Result<Subquotient> {
        let b = self.minimal_matrix(n)?;
        let nn = b.rows();
        let res = self.resolve(m, j + 1)?;
        let beta_j = res.betti[j];
        let rank = nn * beta_j;
        let cycles = if j == 0 {
            unit_vectors(rank)
        } else {
            let d = res.differential(j);
            self.preimage(&d.kron_identity(nn), &b.identity_kron(d.rows()).columns())?
        };
        let mut boundaries = b.identity_kron(beta_j).columns();
        boundaries.extend(res.differential(j + 1).kron_identity(nn).columns());
        Ok(Subquotient { rank, cycles, boundaries })
    }

    pub fn hom_module(&self, m: &ModuleData, n: &ModuleData) -> Result<ModuleData> {
        self.subquotient_module(&self.ext_subquotient(m, n, 0)?)
    }

    pub fn ext_module(&self, m: &ModuleData, n: &ModuleData, i: usize) -> Result<ModuleData> {
        self.subquotient_module(&self.ext_subquotient(m, n, i)?)
    }

    pub fn tor_module(&self, m: &ModuleData, n: &ModuleData, j: usize) -> Result<ModuleData> {
        self.subquotient_module(&self.tor_subquotient(m, n, j)?)
    }

    pub fn ext_vanishes(&self, m: &ModuleData, n: &ModuleData, i: usize) -> Result<bool> {
        self.subquotient_vanishes(&self.ext_subquotient(m, n, i)?)
    }

    pub fn tor_vanishes(&self, m: &ModuleData, n: &ModuleData, j: usize) -> Result<bool> {
        self.subquotient_vanishes(&self.tor_subquotient(m, n, j)?)
    }

    /// Generators of `M* = Hom(M, R)` as vectors in `R^ν`, i.e. the kernel of `∂₁ᵀ`.
    pub fn dual_generators(&self, m: &ModuleData) -> Result<Vec<Vector>> {
        let d = self.minimal_matrix(m)?;
        if d.cols() == 0 {
            return Ok(unit_vectors(d.rows()));
        }
        let dt = d.transpose();
        self.syzygies(dt.rows(), &dt.columns())
    }

    /// `M*` as a submodule of `R^ν`.
    pub fn dual(&self, m: &ModuleData) -> Result<ModuleData> {
        let d = self.minimal_matrix(m)?;
        let gens = self.dual_generators(m)?;
        let sub = self.submodule(d.rows(), &gens)?;
        self.minimal_presentation(&sub)
    }

    /// `Tr M = coker ∂₁ᵀ`.
    pub fn transpose(&self, m: &ModuleData) -> Result<ModuleData> {
        let d = self.minimal_matrix(m)?;
        self.minimal_presentation(&ModuleData::presented(d.transpose()))
    }

    /// `λM = Ω Tr M`, the row span of `∂₁` inside `R^{β₁}`.
    pub fn lambda(&self, m: &ModuleData) -> Result<ModuleData> {
        let d = self.minimal_matrix(m)?;
        let sub = self.submodule(d.cols(), &d.row_vectors())?;
        self.minimal_presentation(&sub)
    }

    /// `Ω^k M` as the column span of `∂_k` inside `R^{β_{k−1}}`.
    pub fn syzygy_module(&self, m: &ModuleData, k: usize) -> Result<ModuleData> {
        if k == 0 {
            return self.minimal_presentation(m);
        }
        let res = self.resolve(m, k)?;
        let d = res.differential(k);
        let sub = self.submodule(d.rows(), &d.columns())?;
        self.minimal_presentation(&sub)
    }

    /// The trace ideal `Σ f(M)` over `f ∈ M*`.
    pub fn trace_ideal(&self, m: &ModuleData) -> Result<Vec<Poly>> {
        let mut out = Vec::new();
        for g in self.dual_generators(m)? {
            for p in g {
                if !self.is_zero(&p) && !out.contains(&p) {
                    out.push(p);
                }
            }
        }
        Ok(out)
    }

    /// No free direct summand, certified by a trace ideal inside the maximal ideal.
    pub fn is_stable(&self, m: &ModuleData) -> Result<bool> {
        if self.is_zero_module(m)? {
            return Ok(false);
        }
        Ok(self.trace_ideal(m)?.iter().all(|p| !p.is_unit()))
    }

    pub fn linkage(&self, m: &ModuleData) -> Result<LinkageReport> {
        if self.is_zero_module(m)? {
            return Err(AlgebraError::ZeroModule);
        }
        let trace = self.trace_ideal(m)?;
        let in_max = trace.iter().all(|p| !p.is_unit());
        let tr = self.transpose(m)?;
        let ext1 = self.ext_vanishes(&tr, &ModuleData::free(1), 1)?;
        let lambda = self.lambda(m)?;
        Ok(LinkageReport {
            stable: in_max,
            trace_ideal_in_maximal: in_max,
            ext1_tr_vanishes: ext1,
            horizontally_linked: in_max && ext1,
            transpose: tr,
            lambda,
        })
    }

    /// True iff `elems` is an `M`-regular sequence with `M/(elems)M ≠ 0`.
    pub fn is_regular_sequence_on(&self, m: &ModuleData, elems: &[Poly]) -> Result<bool> {
        let p = m.presentation();
        let n = p.rows();
        let mut k: Vec<Vector> = p.columns();
        for x in elems {
            let colon = self.colon_element(n, &k, x)?;
            if !self.standard_basis(n, &k)?.contains_all(&colon)? {
                return Ok(false);
            }
            for c in 0..n {
                let mut v = vec![Poly::zero(); n];
                v[c] = x.clone();
                k.push(v);
            }
        }
        Ok(self.quotient_length(n, &k)? != Some(0))
    }

    /// Maximal Cohen–Macaulay test via the parameter ideal `q`.
    pub fn is_maximal_cohen_macaulay(&self, m: &ModuleData, q: &[Poly]) -> Result<bool> {
        if q.len() != self.dim() {
            return Err(AlgebraError::NotParameterIdeal(format!("{} generators for dimension {}", q.len(), self.dim())));
        }
        if self.is_zero_module(m)? {
            return Ok(false);
        }
        self.is_regular_sequence_on(m, q)
    }

    /// For an Artinian ring `A`: `N` is free iff `ℓ(N) = ν(N)·ℓ(A)`.
    pub fn is_free_over_artinian(&self, n: &ModuleData) -> Result<bool> {
        let la = self.length().ok_or(AlgebraError::NotMPrimary)?;
        let ln = self.module_length(n)?.ok_or(AlgebraError::NotMPrimary)?;
        Ok(ln == self.num_generators(n)? as u64 * la)
    }

    /// `M/JM` regarded as a module over the Artinian ring `R/J`.
    pub fn reduce_to_quotient(&self, m: &ModuleData, j: &[Poly]) -> Result<(AmbientRing, ModuleData)> {
        let a = self.quotient(j)?;
        let p = self.minimal_matrix(m)?;
        Ok((a, ModuleData::presented(p)))
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

    fn sec6() -> AmbientRing {
        ring(&["x", "y", "z"], &[2, 2, 1], "x^2+y^2+z^4", 2)
    }

    #[test]
    fn hom_from_free_module() {
        let r = sec6();
        let n = ModuleData::cyclic(&[r.p("x"), r.p("y"), r.p("z^2")]);
        let h = r.hom_module(&ModuleData::free(1), &n).unwrap();
        assert_eq!(r.module_length(&h).unwrap(), Some(2));
        let e = r.hom_module(&n, &n).unwrap();
        assert_eq!(e.num_generators(), 1);
        assert_eq!(r.module_length(&e).unwrap(), Some(2));
    }

    #[test]
    fn duals_of_finite_length_modules_vanish() {
        let r = sec6();
        let n = ModuleData::cyclic(&[r.p("x"), r.p("y"), r.p("z^2")]);
        let d = r.dual(&n).unwrap();
        assert!(r.is_zero_module(&d).unwrap());
        assert!(!r.is_maximal_cohen_macaulay(&n, &[r.p("x"), r.p("y")]).unwrap());
        assert!(r.is_maximal_cohen_macaulay(&ModuleData::free(1), &[r.p("x"), r.p("y")]).unwrap());
    }

    #[test]
    fn regular_sequences() {
        let r = sec6();
        let free = ModuleData::free(1);
        assert!(r.is_regular_sequence_on(&free, &[r.p("x"), r.p("y")]).unwrap());
        assert!(!r.is_regular_sequence_on(&free, &[r.p("x"), r.p("x")]).unwrap());
    }

    #[test]
    fn tor_over_artinian_quotient() {
        let r = sec6();
        let a = r.quotient(&[r.p("x"), r.p("y"), r.p("z^2")]).unwrap();
        let k = ModuleData::cyclic(&a.variables());
        let t1 = a.tor_module(&k, &k, 1).unwrap();
        assert_eq!(a.module_length(&t1).unwrap(), Some(1));
        assert!(!a.is_free_over_artinian(&k).unwrap());
        assert!(a.is_free_over_artinian(&ModuleData::free(3)).unwrap());
    }

    #[test]
    fn free_modules_are_not_stable() {
        let r = sec6();
        let rep = r.linkage(&ModuleData::free(1)).unwrap();
        assert!(!rep.stable);
        assert!(!rep.horizontally_linked);
    }
}
