//! Submodules of free modules `R^r`: standard bases, membership, equality,
//! lengths, syzygies, intersections and colons.

use std::collections::HashMap;

use crate::error::{AlgebraError, Result};
use crate::field::PrimeField;
use crate::matrix::Vector;
use crate::poly::Poly;
use crate::ring::{poly_to_svec, AmbientRing};
use crate::sbasis::{Ctx, ModuleOrder, SVec, StandardBasis, Term};

pub(crate) fn to_svec(ctx: &Ctx, v: &[Poly]) -> SVec {
    let mut terms = Vec::new();
    for (c, p) in v.iter().enumerate() {
        terms.extend(poly_to_svec(p, c as u32));
    }
    ctx.sort(terms)
}

/// Collects the components `offset..offset+len` of `v` into a vector.
pub(crate) fn from_svec(v: &SVec, offset: usize, len: usize) -> Vector {
    let mut buckets: Vec<Vec<(crate::monomial::Monomial, u32)>> = vec![Vec::new(); len];
    for &(t, c) in v {
        let k = t.comp as usize;
        if k >= offset && k < offset + len {
            buckets[k - offset].push((t.mono, c));
        }
    }
    buckets
        .into_iter()
        .map(|mut b| {
            b.sort_by_key(|t| std::cmp::Reverse(t.0));
            Poly::from_sorted(b)
        })
        .collect()
}

/// A standard basis of `U + (relations)·R^r` inside `R^r`, under the
/// degree-first module order with automatic highest-corner truncation.
#[derive(Clone, Debug)]
pub struct SubmoduleBasis {
    rank: usize,
    sb: StandardBasis,
}

impl SubmoduleBasis {
    pub fn rank(&self) -> usize {
        self.rank
    }

    fn check(&self, v: &[Poly]) -> Result<()> {
        if v.len() != self.rank {
            return Err(AlgebraError::RankMismatch { expected: self.rank, found: v.len() });
        }
        Ok(())
    }

    pub fn contains(&self, v: &[Poly]) -> Result<bool> {
        self.check(v)?;
        Ok(self.sb.contains(&to_svec(self.sb.ctx(), v)))
    }

    pub fn contains_all(&self, vs: &[Vector]) -> Result<bool> {
        for v in vs {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Mora normal form of `v`; zero iff `v` is a member.
    pub fn normal_form(&self, v: &[Poly]) -> Result<Vector> {
        self.check(v)?;
        let nf = self.sb.normal_form(to_svec(self.sb.ctx(), v));
        Ok(from_svec(&nf, 0, self.rank))
    }

    /// `ℓ(R^r / U)`, or `None` if infinite.
    pub fn colength(&self) -> Option<u64> {
        self.sb.colength()
    }

    /// Minimal generators of the leading module.
    pub fn leading_terms(&self) -> Vec<Term> {
        self.sb.leading_terms()
    }

    pub fn extend(&self, gens: &[Vector]) -> Result<SubmoduleBasis> {
        for g in gens {
            self.check(g)?;
        }
        let svs = gens.iter().map(|g| to_svec(self.sb.ctx(), g)).collect();
        Ok(SubmoduleBasis { rank: self.rank, sb: self.sb.extend(svs)? })
    }

    /// For `R^r/U` of finite length: vectors spanning `(U : x)` modulo `U`,
    /// from the kernel of multiplication by `x` on the standard terms.
    pub fn colon_of_finite_colength(&self, x: &Poly) -> Option<Vec<Vector>> {
        let std = self.sb.standard_terms()?;
        let ctx = self.sb.ctx();
        let f = ctx.field;
        let index: HashMap<Term, usize> = std.iter().enumerate().map(|(i, t)| (*t, i)).collect();
        let xs = poly_to_svec(x, 0);
        let mut columns: Vec<Vec<u32>> = Vec::with_capacity(std.len());
        for t in &std {
            let prod = ctx.sort(xs.iter().map(|(u, c)| (Term { comp: t.comp, mono: u.mono.mul(&t.mono) }, *c)).collect());
            let rem = self.sb.reduce_completely(prod)?;
            let mut col = vec![0u32; std.len()];
            for (u, c) in rem {
                col[index[&u]] = c;
            }
            columns.push(col);
        }
        let out = nullspace(&f, &columns, std.len())
            .into_iter()
            .map(|k| {
                let sv = ctx.sort(k.iter().zip(&std).filter(|(c, _)| **c != 0).map(|(c, t)| (*t, *c)).collect());
                from_svec(&sv, 0, self.rank)
            })
            .collect();
        Some(out)
    }

    /// Standard basis elements as vectors.
    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.sb.minimal_elements().iter().map(|v| from_svec(v, 0, self.rank)).collect()
    }
}

/// Basis of `{k : Σ k_j·columns[j] = 0}`, each column of length `rows`.
fn nullspace(f: &PrimeField, columns: &[Vec<u32>], rows: usize) -> Vec<Vec<u32>> {
    let n = columns.len();
    let mut m: Vec<Vec<u32>> = (0..rows).map(|r| columns.iter().map(|c| c[r]).collect()).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(k) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, k);
        let inv = f.inv(m[r][c]).expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let a = f.neg(row[c]);
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = f.add(*x, f.mul(a, *y));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let mut out = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u32; n];
        v[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(m[i][free]);
        }
        out.push(v);
    }
    out
}

fn check_ranks(rank: usize, gens: &[Vector]) -> Result<()> {
    for g in gens {
        if g.len() != rank {
            return Err(AlgebraError::RankMismatch { expected: rank, found: g.len() });
        }
    }
    Ok(())
}

impl AmbientRing {
    /// Standard basis of the span of `gens` in `R^rank`.
    pub fn standard_basis(&self, rank: usize, gens: &[Vector]) -> Result<SubmoduleBasis> {
        check_ranks(rank, gens)?;
        let ctx = self.ctx(ModuleOrder::top(vec![0; rank]));
        let svs = gens.iter().map(|g| to_svec(&ctx, g)).collect();
        let known = self.relation_vectors(0..rank);
        let sb = StandardBasis::compute(ctx, known, svs, true)?;
        Ok(SubmoduleBasis { rank, sb })
    }

    /// Weak normal form of `f` against the raw list `g` (plus the relations),
    /// without completing `g` to a standard basis.
    pub fn mora_normal_form(&self, f: &[Poly], g: &[Vector]) -> Result<Vector> {
        let rank = f.len();
        check_ranks(rank, g)?;
        let ctx = self.ctx(ModuleOrder::top(vec![0; rank]));
        let mut elems = self.relation_vectors(0..rank);
        elems.extend(g.iter().map(|v| to_svec(&ctx, v)));
        let sb = StandardBasis::from_basis(ctx.clone(), elems);
        Ok(from_svec(&sb.normal_form(to_svec(&ctx, f)), 0, rank))
    }

    pub fn quotient_length(&self, rank: usize, gens: &[Vector]) -> Result<Option<u64>> {
        Ok(self.standard_basis(rank, gens)?.colength())
    }

    pub fn submodule_contains(&self, rank: usize, gens: &[Vector], v: &[Poly]) -> Result<bool> {
        self.standard_basis(rank, gens)?.contains(v)
    }

    pub fn submodule_equals(&self, rank: usize, a: &[Vector], b: &[Vector]) -> Result<bool> {
        let sa = self.standard_basis(rank, a)?;
        if !sa.contains_all(b)? {
            return Ok(false);
        }
        let sb = self.standard_basis(rank, b)?;
        sb.contains_all(a)
    }

    /// True iff the vector is zero in `R^r`.
    pub fn is_zero_vector(&self, v: &[Poly]) -> bool {
        v.iter().all(|p| self.is_zero(p))
    }

    /// Generators of the kernel of `R^m → R^rank`, `e_i ↦ gens[i]`.
    pub fn syzygies(&self, rank: usize, gens: &[Vector]) -> Result<Vec<Vector>> {
        let raw = self.raw_syzygies(rank, gens)?;
        self.prune(gens.len(), raw)
    }

    /// Syzygy generators straight from the zero reductions, with repeats
    /// removed but no other pruning.
    pub(crate) fn raw_syzygies(&self, rank: usize, gens: &[Vector]) -> Result<Vec<Vector>> {
        check_ranks(rank, gens)?;
        let m = gens.len();
        if m == 0 {
            return Ok(Vec::new());
        }
        let ctx = self.ctx(ModuleOrder::tracked(rank, vec![0; rank + m]));
        let mut svs = Vec::with_capacity(m);
        for (i, g) in gens.iter().enumerate() {
            let mut v = g.clone();
            v.resize(rank + m, Poly::zero());
            v[rank + i] = Poly::constant(1);
            svs.push(to_svec(&ctx, &v));
        }
        for c in 0..rank {
            for r in self.relations() {
                let mut v = vec![Poly::zero(); rank];
                v[c] = r.clone();
                svs.push(to_svec(&ctx, &v));
            }
        }
        let sb = StandardBasis::compute(ctx, Vec::new(), svs, false)?;
        let mut out: Vec<Vector> = Vec::new();
        for e in sb.zero_reductions() {
            let s = from_svec(e, rank, m);
            if !self.is_zero_vector(&s) && !out.contains(&s) {
                out.push(s);
            }
        }
        Ok(out)
    }

    /// Drops vectors lying in the span of the ones kept before them, tested
    /// over the polynomial ring. Short vectors are tried first.
    pub(crate) fn prune(&self, rank: usize, mut vecs: Vec<Vector>) -> Result<Vec<Vector>> {
        vecs.sort_by_key(|v| v.iter().map(|p| p.len()).sum::<usize>());
        let ctx = self.ctx(ModuleOrder::tracked(rank, vec![0; rank]));
        let mut base = Vec::new();
        for c in 0..rank {
            for r in self.relations() {
                let mut v = vec![Poly::zero(); rank];
                v[c] = r.clone();
                base.push(to_svec(&ctx, &v));
            }
        }
        let mut sb = StandardBasis::compute(ctx.clone(), Vec::new(), base, false)?;
        let mut out = Vec::new();
        for v in vecs {
            let sv = to_svec(&ctx, &v);
            if sb.contains(&sv) {
                continue;
            }
            sb = sb.extend(vec![sv])?;
            out.push(v);
        }
        Ok(out)
    }

    /// Generators of `span(a) ∩ span(b)` in `R^rank`.
    pub fn intersection(&self, rank: usize, a: &[Vector], b: &[Vector]) -> Result<Vec<Vector>> {
        check_ranks(rank, a)?;
        check_ranks(rank, b)?;
        let mut all = a.to_vec();
        all.extend_from_slice(b);
        let f = self.field();
        let mut out = Vec::new();
        for s in self.syzygies(rank, &all)? {
            let mut v = vec![Poly::zero(); rank];
            for (i, g) in a.iter().enumerate() {
                if s[i].is_zero() {
                    continue;
                }
                for c in 0..rank {
                    v[c] = v[c].add(&g[c].mul(&s[i], f), f);
                }
            }
            if !self.is_zero_vector(&v) {
                out.push(v);
            }
        }
        Ok(out)
    }

    /// Generators of `(span(gens) : x) = {v : x·v ∈ span(gens)}`.
    pub fn colon_element(&self, rank: usize, gens: &[Vector], x: &Poly) -> Result<Vec<Vector>> {
        check_ranks(rank, gens)?;
        if let Some(out) = self.standard_basis(rank, gens)?.colon_of_finite_colength(x) {
            let mut out = out;
            out.extend(gens.iter().cloned());
            return Ok(out);
        }
        let mut all: Vec<Vector> = (0..rank)
            .map(|c| {
                let mut v = vec![Poly::zero(); rank];
                v[c] = x.clone();
                v
            })
            .collect();
        all.extend_from_slice(gens);
        let mut out: Vec<Vector> = Vec::new();
        for s in self.syzygies(rank, &all)? {
            let v: Vector = s[..rank].to_vec();
            if !self.is_zero_vector(&v) {
                out.push(v);
            }
        }
        // The colon always contains the submodule itself.
        out.extend(gens.iter().cloned());
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn sec6() -> AmbientRing {
        let f = PrimeField::new(32003).unwrap();
        let vars: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let rel = crate::parse::parse_poly("x^2+y^2+z^4", &vars, &[2, 2, 1], &f).unwrap();
        AmbientRing::new(f, vars, vec![2, 2, 1], vec![rel], 2).unwrap()
    }

    fn ideal(r: &AmbientRing, gens: &[&str]) -> Vec<Vector> {
        gens.iter().map(|g| vec![r.p(g)]).collect()
    }

    #[test]
    fn normal_form_examples() {
        let r = sec6();
        let g = ideal(&r, &["x", "y", "z^2"]);
        assert!(r.mora_normal_form(&[r.p("x^2+y^2+z^4")], &g).unwrap()[0].is_zero());
        assert_eq!(r.mora_normal_form(&[r.p("z")], &g).unwrap()[0], r.p("z"));
        assert!(r.mora_normal_form(&[Poly::zero()], &g).unwrap()[0].is_zero());
    }

    #[test]
    fn lengths_of_the_worked_example() {
        let r = sec6();
        assert_eq!(r.quotient_length(1, &ideal(&r, &["x", "y", "z^2"])).unwrap(), Some(2));
        assert_eq!(r.quotient_length(1, &ideal(&r, &["x", "y"])).unwrap(), Some(4));
        assert_eq!(r.quotient_length(1, &ideal(&r, &["1"])).unwrap(), Some(0));
        assert_eq!(r.quotient_length(1, &ideal(&r, &["x"])).unwrap(), None);
    }

    #[test]
    fn membership_and_equality() {
        let r = sec6();
        let qi = ideal(&r, &["x^2", "x*y", "x*z^2", "y*x", "y^2", "y*z^2"]);
        assert!(r.submodule_contains(1, &qi, &[r.p("z^4")]).unwrap());
        assert!(!r.submodule_contains(1, &ideal(&r, &["x", "y", "z^2"]), &[r.p("1")]).unwrap());
        let i2 = ideal(&r, &["x^2", "x*y", "x*z^2", "y^2", "y*z^2", "z^4"]);
        assert!(r.submodule_equals(1, &i2, &qi).unwrap());
        assert!(r.submodule_equals(1, &ideal(&r, &["x"]), &ideal(&r, &["x", "x^2"])).unwrap());
        assert!(!r.submodule_equals(1, &ideal(&r, &["x"]), &ideal(&r, &["x", "y"])).unwrap());
    }

    #[test]
    fn syzygies_are_relations() {
        let r = sec6();
        let g = ideal(&r, &["x", "y", "z^2"]);
        let syz = r.syzygies(1, &g).unwrap();
        assert!(!syz.is_empty());
        let f = r.field();
        for s in &syz {
            let mut acc = Poly::zero();
            for (a, b) in s.iter().zip(g.iter()) {
                acc = acc.add(&a.mul(&b[0], f), f);
            }
            assert!(r.is_zero(&acc));
        }
    }

    #[test]
    fn colon_and_intersection() {
        let r = sec6();
        let i = ideal(&r, &["x", "y", "z^2"]);
        let col = r.colon_element(1, &i, &r.p("z")).unwrap();
        // (I : z) is the maximal ideal.
        assert!(r.submodule_equals(1, &col, &ideal(&r, &["x", "y", "z"])).unwrap());
        let a = ideal(&r, &["x"]);
        let b = ideal(&r, &["y"]);
        let cap = r.intersection(1, &a, &b).unwrap();
        assert!(r.submodule_equals(1, &cap, &ideal(&r, &["x*y"])).unwrap());
    }

    #[test]
    fn syzygies_over_a_relation_with_a_unit_factor() {
        // x·z·(c·x^2·y - 1) spoils Mora reduction with bookkeeping attached.
        let f = PrimeField::new(32003).unwrap();
        let vars: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let w = [1, 2, 2];
        let rel = crate::parse::parse_poly("-510*x^3*y - 1488*y*z + 4081*x*z", &vars, &w, &f).unwrap();
        let r = AmbientRing::new(f, vars, w.to_vec(), vec![rel.clone()], 2).unwrap();
        let g = ideal(&r, &["-5756*x^2*y*z + 12200*y^3 - 3225*x^2", "-6970*x^2*y^2*z - 2518*y^3", "-11473*x^2*z^2 - 8603*x*y*z - 15390*z^2", "3598*y*z^2"]);
        let syz = r.syzygies(1, &g).unwrap();
        for s in &syz {
            let mut acc = Poly::zero();
            for (a, b) in s.iter().zip(g.iter()) {
                acc = acc.add(&a.mul(&b[0], &f), &f);
            }
            assert!(r.is_zero(&acc));
        }
        assert!(crate::oracle::syzygies_agree(32003, 3, 1, &g, &[rel], &syz, 4, 5));
    }
}
