//! Ideals of the ambient local ring: arithmetic, lengths, reductions,
//! socles and Loewy lengths.

use crate::error::{AlgebraError, Result};
use crate::matrix::{Matrix, Vector};
use crate::poly::Poly;
use crate::ring::AmbientRing;

pub const DEFAULT_R_MAX: usize = 10;
pub const DEFAULT_N_MAX: usize = 20;

/// An ideal with an optional parameter subideal `Q` and its reduction exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealData {
    pub gens: Vec<Poly>,
    pub q: Option<Vec<Poly>>,
    pub reduction_exponent: Option<usize>,
}

impl IdealData {
    pub fn new(gens: Vec<Poly>) -> Self {
        IdealData { gens, q: None, reduction_exponent: None }
    }

    pub fn with_q(gens: Vec<Poly>, q: Vec<Poly>) -> Self {
        IdealData { gens, q: Some(q), reduction_exponent: None }
    }

    pub fn q(&self) -> Result<&[Poly]> {
        self.q.as_deref().ok_or(AlgebraError::MissingReduction)
    }
}

pub(crate) fn as_vectors(gens: &[Poly]) -> Vec<Vector> {
    gens.iter().map(|g| vec![g.clone()]).collect()
}

impl AmbientRing {
    fn nonzero(&self, gens: Vec<Poly>) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for g in gens {
            if !self.is_zero(&g) && !out.contains(&g) {
                out.push(g);
            }
        }
        out
    }

    pub fn ideal_sum(&self, a: &[Poly], b: &[Poly]) -> Vec<Poly> {
        self.nonzero(a.iter().chain(b.iter()).cloned().collect())
    }

    pub fn ideal_product(&self, a: &[Poly], b: &[Poly]) -> Vec<Poly> {
        let f = self.field();
        let mut out = Vec::new();
        for x in a {
            for y in b {
                out.push(x.mul(y, f));
            }
        }
        self.nonzero(out)
    }

    /// `I^k`, with `I^0 = R`.
    pub fn ideal_power(&self, a: &[Poly], k: usize) -> Vec<Poly> {
        let mut acc = vec![Poly::constant(1)];
        for _ in 0..k {
            acc = self.ideal_product(&acc, a);
        }
        acc
    }

    pub fn ideal_colon(&self, a: &[Poly], x: &Poly) -> Result<Vec<Poly>> {
        let cols = self.colon_element(1, &as_vectors(a), x)?;
        Ok(self.nonzero(cols.into_iter().map(|mut v| v.remove(0)).collect()))
    }

    pub fn ideal_intersection(&self, a: &[Poly], b: &[Poly]) -> Result<Vec<Poly>> {
        let cap = self.intersection(1, &as_vectors(a), &as_vectors(b))?;
        Ok(self.nonzero(cap.into_iter().map(|mut v| v.remove(0)).collect()))
    }

    pub fn ideal_contains(&self, a: &[Poly], f: &Poly) -> Result<bool> {
        self.submodule_contains(1, &as_vectors(a), std::slice::from_ref(f))
    }

    pub fn ideal_contains_all(&self, a: &[Poly], b: &[Poly]) -> Result<bool> {
        self.standard_basis(1, &as_vectors(a))?.contains_all(&as_vectors(b))
    }

    pub fn ideals_equal(&self, a: &[Poly], b: &[Poly]) -> Result<bool> {
        self.submodule_equals(1, &as_vectors(a), &as_vectors(b))
    }

    /// `ℓ(R/I)`, or `None` if infinite.
    pub fn ideal_colength(&self, a: &[Poly]) -> Result<Option<u64>> {
        self.quotient_length(1, &as_vectors(a))
    }

    pub fn is_m_primary(&self, a: &[Poly]) -> Result<bool> {
        Ok(self.ideal_colength(a)?.is_some())
    }

    /// Checks that `q` is a parameter ideal contained in `i`.
    pub fn check_parameter_ideal(&self, i: &[Poly], q: &[Poly]) -> Result<()> {
        if q.len() != self.dim() {
            return Err(AlgebraError::NotParameterIdeal(format!("{} generators for dimension {}", q.len(), self.dim())));
        }
        if !self.is_m_primary(q)? {
            return Err(AlgebraError::NotParameterIdeal("R/Q has infinite length".into()));
        }
        let sb = self.standard_basis(1, &as_vectors(i))?;
        for g in q {
            if !sb.contains(std::slice::from_ref(g))? {
                return Err(AlgebraError::ReductionNotContained(self.show(g)));
            }
        }
        Ok(())
    }

    /// Least `r ≤ r_max` with `Q·I^r = I^{r+1}`.
    pub fn verify_reduction(&self, i: &[Poly], q: &[Poly], r_max: usize) -> Result<usize> {
        self.check_parameter_ideal(i, q)?;
        let mut ir = vec![Poly::constant(1)];
        for r in 0..=r_max {
            let next = self.ideal_product(&ir, i);
            let qir = self.ideal_product(q, &ir);
            // Q·I^r ⊆ I^{r+1} always holds, so one inclusion suffices.
            if self.ideal_contains_all(&qir, &next)? {
                return Ok(r);
            }
            ir = next;
        }
        Err(AlgebraError::BoundExceeded { what: "reduction exponent", bound: r_max })
    }

    /// `(I : 𝔪)` via a single preimage computation.
    pub fn socle_ideal(&self, i: &[Poly]) -> Result<Vec<Poly>> {
        let n = self.nvars();
        let map = Matrix::from_columns(n, &[self.variables()]);
        let mut target = Vec::new();
        for c in 0..n {
            for g in i {
                let mut v = vec![Poly::zero(); n];
                v[c] = g.clone();
                target.push(v);
            }
        }
        let pre = self.preimage(&map, &target)?;
        let mut gens: Vec<Poly> = pre.into_iter().map(|mut v| v.remove(0)).collect();
        gens.extend(i.iter().cloned());
        Ok(self.nonzero(gens))
    }

    /// `ℓ((I : 𝔪)/I)`.
    pub fn socle_dimension(&self, i: &[Poly]) -> Result<u64> {
        let li = self.ideal_colength(i)?.ok_or(AlgebraError::NotMPrimary)?;
        let ls = self.ideal_colength(&self.socle_ideal(i)?)?.ok_or(AlgebraError::NotMPrimary)?;
        Ok(li - ls)
    }

    /// Monomials of ordinary degree `n`.
    pub fn monomials_of_degree(&self, n: usize) -> Vec<Poly> {
        let vars = self.nvars();
        let mut out = Vec::new();
        let mut e = vec![0u16; vars];
        fn rec(i: usize, left: usize, e: &mut Vec<u16>, ring: &AmbientRing, out: &mut Vec<Poly>) {
            if i + 1 == e.len() {
                e[i] = left as u16;
                out.push(Poly::term(ring.monomial(e), 1));
                return;
            }
            for a in 0..=left {
                e[i] = a as u16;
                rec(i + 1, left - a, e, ring, out);
            }
        }
        rec(0, n, &mut e, self, &mut out);
        out
    }

    /// Least `n ≤ n_max` with `𝔪^n ⊆ I`.
    pub fn loewy_length(&self, i: &[Poly], n_max: usize) -> Result<usize> {
        let sb = self.standard_basis(1, &as_vectors(i))?;
        for n in 0..=n_max {
            if sb.contains_all(&as_vectors(&self.monomials_of_degree(n)))? {
                return Ok(n);
            }
        }
        Err(AlgebraError::BoundExceeded { what: "Loewy length", bound: n_max })
    }

    /// Embedding dimension `ℓ(𝔪/𝔪²)`.
    pub fn embedding_dimension(&self) -> Result<u64> {
        let m = self.variables();
        let m2 = self.ideal_power(&m, 2);
        let a = self.ideal_colength(&m2)?.ok_or(AlgebraError::NotMPrimary)?;
        let b = self.ideal_colength(&m)?.ok_or(AlgebraError::NotMPrimary)?;
        Ok(a - b)
    }

    pub fn is_regular_ring(&self) -> Result<bool> {
        Ok(self.embedding_dimension()? == self.dim() as u64)
    }

    /// Gorenstein test for the Artinian quotient `R/I`.
    pub fn is_gorenstein_ideal(&self, i: &[Poly]) -> Result<bool> {
        Ok(self.socle_dimension(i)? == 1)
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

    fn ps(r: &AmbientRing, v: &[&str]) -> Vec<Poly> {
        v.iter().map(|s| r.p(s)).collect()
    }

    #[test]
    fn worked_example_ideal_invariants() {
        let r = ring(&["x", "y", "z"], &[2, 2, 1], "x^2+y^2+z^4", 2);
        let i = ps(&r, &["x", "y", "z^2"]);
        let q = ps(&r, &["x", "y"]);
        assert_eq!(r.verify_reduction(&i, &q, 10).unwrap(), 1);
        assert_eq!(r.socle_dimension(&i).unwrap(), 1);
        assert_eq!(r.loewy_length(&i, 20).unwrap(), 2);
        assert_eq!(r.embedding_dimension().unwrap(), 3);
        assert!(!r.is_regular_ring().unwrap());
        assert!(r.ideals_equal(&r.ideal_product(&q, &i), &r.ideal_power(&i, 2)).unwrap());
        assert!(!r.is_m_primary(&ps(&r, &["x"])).unwrap());
        assert_eq!(r.verify_reduction(&q, &q, 10).unwrap(), 0);
        assert!(matches!(r.verify_reduction(&i, &ps(&r, &["x", "z"]), 10), Err(AlgebraError::ReductionNotContained(_))));
    }

    #[test]
    fn curve_example() {
        let r = ring(&["x", "y"], &[2, 1], "x^2+y^4", 1);
        let i = ps(&r, &["x", "y^2"]);
        assert_eq!(r.verify_reduction(&i, &ps(&r, &["x"]), 10).unwrap(), 1);
        assert_eq!(r.loewy_length(&i, 20).unwrap(), 2);
        let col = r.ideal_colon(&i, &r.p("x")).unwrap();
        assert!(r.ideal_contains_all(&col, &i).unwrap());
        assert_eq!(r.ideal_colength(&col).unwrap(), Some(0));
        let col = r.ideal_colon(&i, &r.p("y")).unwrap();
        assert_eq!(r.ideal_colength(&col).unwrap(), Some(1));
    }

    #[test]
    fn power_zero_is_unit_ideal() {
        let r = ring(&["x", "y"], &[2, 1], "x^2+y^4", 1);
        assert_eq!(r.ideal_colength(&r.ideal_power(&ps(&r, &["x", "y^2"]), 0)).unwrap(), Some(0));
    }
}
