//! Finite modules over an [`AmbientRing`], stored as cokernels of
//! presentation matrices, together with minimal presentations and
//! minimal free resolutions.

use crate::canonical::canonical_form;
use crate::error::{AlgebraError, Result};
use crate::matrix::{Matrix, Vector};
use crate::oracle::Echelon;
use crate::poly::Poly;
use crate::ring::AmbientRing;
use crate::sbasis::{ModuleOrder, Term};
use crate::submodule::to_svec;

/// A finite module `coker(P: R^m → R^n)` on `n` generators.
///
/// When the module was given as a submodule of a free module, `embedding`
/// holds its generators as the columns of a matrix, in the same order as
/// the rows of the presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleData {
    presentation: Matrix,
    embedding: Option<Matrix>,
    minimal: bool,
}

impl ModuleData {
    /// `coker(p)`, not yet minimized.
    pub fn presented(p: Matrix) -> Self {
        ModuleData { presentation: p, embedding: None, minimal: false }
    }

    pub fn free(n: usize) -> Self {
        ModuleData { presentation: Matrix::zero(n, 0), embedding: None, minimal: true }
    }

    pub fn zero() -> Self {
        ModuleData::free(0)
    }

    /// The cyclic module `R/J`.
    pub fn cyclic(gens: &[Poly]) -> Self {
        ModuleData::presented(Matrix::from_rows(vec![gens.to_vec()]))
    }

    pub fn presentation(&self) -> &Matrix {
        &self.presentation
    }

    pub fn embedding(&self) -> Option<&Matrix> {
        self.embedding.as_ref()
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    /// Number of generators of this presentation (equal to `ν` once minimal).
    pub fn num_generators(&self) -> usize {
        self.presentation.rows()
    }

    /// The module over `R/J`-style rings is the same data; only the ring changes.
    pub fn with_presentation(&self, p: Matrix) -> Self {
        ModuleData { presentation: p, embedding: None, minimal: false }
    }
}

/// A prefix of a minimal free resolution `… → F₂ →∂₂ F₁ →∂₁ F₀ → M → 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeResolution {
    /// `matrices[i]` is `∂_{i+1}`.
    pub matrices: Vec<Matrix>,
    pub betti: Vec<usize>,
    /// `(start, period)` with 1-based step indices: `∂_{i+period} = ∂_i` for `i ≥ start`.
    pub periodic: Option<(usize, usize)>,
}

impl FreeResolution {
    /// `∂_k` for `k ≥ 1`.
    pub fn differential(&self, k: usize) -> &Matrix {
        &self.matrices[k - 1]
    }
}

/// Row and column operations that delete unit entries of a matrix.
///
/// For a unit entry `a = S[i][j]`, every other column is replaced by
/// `a·col_k − S[i][k]·col_j` (or the scalar-normalized form when `a` is a
/// constant), then row `i` and column `j` are removed. If `S` presents a
/// module on its rows, the result presents the same module on the remaining
/// rows. Returns the reduced matrix and the original indices of kept rows.
pub(crate) fn eliminate_units(ring: &AmbientRing, mut s: Matrix) -> (Matrix, Vec<usize>) {
    let f = *ring.field();
    let mut rows: Vec<usize> = (0..s.rows()).collect();
    loop {
        let mut pivot: Option<(usize, usize, usize)> = None;
        for i in 0..s.rows() {
            for j in 0..s.cols() {
                let e = s.get(i, j);
                if e.is_unit() {
                    // Prefer constant pivots, then short ones, then late rows.
                    let score = if e.len() == 1 { 0 } else { e.len() };
                    if pivot.is_none_or(|(_, _, best)| score <= best) {
                        pivot = Some((i, j, score));
                    }
                }
            }
        }
        let Some((pi, pj, _)) = pivot else { break };
        let a = s.get(pi, pj).clone();
        let constant = a.len() == 1;
        let mut cols = Vec::new();
        for k in 0..s.cols() {
            if k == pj {
                continue;
            }
            let b = s.get(pi, k).clone();
            let mut col = s.column(k);
            if !b.is_zero() {
                let pc = s.column(pj);
                if constant {
                    let inv = f.inv(a.constant_term()).expect("unit");
                    let factor = b.scale(inv, &f);
                    for (x, y) in col.iter_mut().zip(pc.iter()) {
                        *x = x.sub(&factor.mul(y, &f), &f);
                    }
                } else {
                    for (x, y) in col.iter_mut().zip(pc.iter()) {
                        *x = a.mul(x, &f).sub(&b.mul(y, &f), &f);
                    }
                }
            }
            col.remove(pi);
            for x in col.iter_mut() {
                if !x.is_zero() && ring.is_zero(x) {
                    *x = Poly::zero();
                }
            }
            if col.iter().any(|x| !x.is_zero()) {
                cols.push(col);
            }
        }
        rows.remove(pi);
        s = Matrix::from_columns(rows.len(), &cols);
    }
    (s, rows)
}

fn clean(ring: &AmbientRing, m: &Matrix) -> Matrix {
    let mut cols = Vec::new();
    for mut col in m.columns() {
        for x in col.iter_mut() {
            if !x.is_zero() && ring.is_zero(x) {
                *x = Poly::zero();
            }
        }
        if col.iter().any(|x| !x.is_zero()) {
            cols.push(col);
        }
    }
    Matrix::from_columns(m.rows(), &cols)
}

impl AmbientRing {
    /// The module generated by `gens` inside `R^rank`, with a minimal
    /// generating set and its presentation.
    pub fn submodule(&self, rank: usize, gens: &[Vector]) -> Result<ModuleData> {
        let gens: Vec<Vector> = gens.iter().filter(|g| !self.is_zero_vector(g)).cloned().collect();
        for g in &gens {
            if g.len() != rank {
                return Err(AlgebraError::RankMismatch { expected: rank, found: g.len() });
            }
        }
        let keep = self.minimal_generator_indices(rank, &gens)?;
        let mins: Vec<Vector> = keep.iter().map(|&i| gens[i].clone()).collect();
        let syz = self.syzygies(rank, &mins)?;
        let pres = Matrix::from_columns(mins.len(), &syz);
        Ok(ModuleData { presentation: pres, embedding: Some(Matrix::from_columns(rank, &mins)), minimal: false })
    }

    /// Indices of a minimal generating subset of `gens`.
    pub fn minimal_generator_indices(&self, rank: usize, gens: &[Vector]) -> Result<Vec<usize>> {
        if gens.is_empty() {
            return Ok(Vec::new());
        }
        let syz = self.raw_syzygies(rank, gens)?;
        Ok(self.kept_by_syzygies(gens.len(), &syz))
    }

    /// Given generators of the syzygies of `n` generators, the indices of a
    /// minimal generating subset: a row set of maximal rank in the matrix of
    /// constant terms is dropped, preferring late rows.
    fn kept_by_syzygies(&self, n: usize, syz: &[Vector]) -> Vec<usize> {
        let mut ech = Echelon::new(self.characteristic(), syz.len());
        let mut dropped = vec![false; n];
        for i in (0..n).rev() {
            let row: Vec<u64> = syz.iter().map(|s| s[i].constant_term() as u64).collect();
            if row.iter().any(|&c| c != 0) && ech.insert(&row) {
                dropped[i] = true;
            }
        }
        (0..n).filter(|&i| !dropped[i]).collect()
    }

    pub fn minimal_generators(&self, rank: usize, gens: &[Vector]) -> Result<Vec<Vector>> {
        let gens: Vec<Vector> = gens.iter().filter(|g| !self.is_zero_vector(g)).cloned().collect();
        Ok(self.minimal_generator_indices(rank, &gens)?.into_iter().map(|i| gens[i].clone()).collect())
    }

    /// One resolution step on a presentation `d` without unit entries:
    /// returns the indices of a minimal subset of its columns and generators
    /// of the syzygies among those columns, not necessarily minimal.
    fn syzygy_step(&self, d: &Matrix) -> Result<(Vec<usize>, Matrix)> {
        let cols = d.columns();
        if cols.is_empty() {
            return Ok((Vec::new(), Matrix::zero(0, 0)));
        }
        let syz = self.raw_syzygies(d.rows(), &cols)?;
        let kept = self.kept_by_syzygies(cols.len(), &syz);
        if kept.len() == cols.len() {
            let syz = self.prune(cols.len(), syz)?;
            return Ok((kept, Matrix::from_columns(cols.len(), &syz)));
        }
        let mins: Vec<Vector> = kept.iter().map(|&i| cols[i].clone()).collect();
        let syz = self.syzygies(d.rows(), &mins)?;
        Ok((kept, Matrix::from_columns(mins.len(), &syz)))
    }

    /// A minimal presentation: no unit entries and a minimal set of relations.
    pub fn minimal_presentation(&self, m: &ModuleData) -> Result<ModuleData> {
        if m.minimal {
            return Ok(m.clone());
        }
        let p = clean(self, &m.presentation);
        let (p, rows) = eliminate_units(self, p);
        let embedding = m.embedding.as_ref().map(|e| e.select_columns(&rows));
        let (kept, _) = self.syzygy_step(&p)?;
        let p = p.select_columns(&kept);
        let (p, _) = self.normalize_columns(&p);
        Ok(ModuleData { presentation: p, embedding, minimal: true })
    }

    /// `ν(M)`.
    pub fn num_generators(&self, m: &ModuleData) -> Result<usize> {
        if m.minimal {
            return Ok(m.presentation.rows());
        }
        let p = clean(self, &m.presentation);
        Ok(eliminate_units(self, p).1.len())
    }

    /// `ℓ(M)`, or `None` when infinite.
    pub fn module_length(&self, m: &ModuleData) -> Result<Option<u64>> {
        let p = &m.presentation;
        self.quotient_length(p.rows(), &p.columns())
    }

    pub fn is_zero_module(&self, m: &ModuleData) -> Result<bool> {
        Ok(self.module_length(m)? == Some(0))
    }

    /// `M/JM` as a module over `R`.
    pub fn quotient_module(&self, m: &ModuleData, j: &[Poly]) -> ModuleData {
        let p = &m.presentation;
        let n = p.rows();
        let mut cols = p.columns();
        for g in j {
            for c in 0..n {
                let mut v = vec![Poly::zero(); n];
                v[c] = g.clone();
                cols.push(v);
            }
        }
        ModuleData { presentation: Matrix::from_columns(n, &cols), embedding: m.embedding.clone(), minimal: false }
    }

    /// Generators of `U + J·R^n` where `U` is the relation module of `m`.
    pub fn relations_plus_ideal(&self, m: &ModuleData, j: &[Poly]) -> Vec<Vector> {
        self.quotient_module(m, j).presentation.columns()
    }

    /// `ℓ(M/JM)`, or `None` if infinite.
    pub fn length_mod_ideal(&self, m: &ModuleData, j: &[Poly]) -> Result<Option<u64>> {
        self.module_length(&self.quotient_module(m, j))
    }

    /// `J₁M = J₂M` as submodules of `M`.
    pub fn ideal_multiples_equal(&self, m: &ModuleData, j1: &[Poly], j2: &[Poly]) -> Result<bool> {
        let n = m.presentation.rows();
        self.submodule_equals(n, &self.relations_plus_ideal(m, j1), &self.relations_plus_ideal(m, j2))
    }

    /// Scales each column to a monic leading term (degree-first order on
    /// `R^n`) and sorts columns by leading term. Returns the permutation
    /// (new position → old column) and the scalars applied.
    pub fn normalize_columns(&self, d: &Matrix) -> (Matrix, Vec<(usize, u32)>) {
        let f = *self.field();
        let ctx = self.ctx(ModuleOrder::top(vec![0; d.rows()]));
        let mut cols: Vec<(usize, Vector, Vec<(Term, u32)>, u32)> = Vec::new();
        for (j, col) in d.columns().into_iter().enumerate() {
            let sv = to_svec(&ctx, &col);
            let lc = sv.first().map_or(1, |t| t.1);
            let inv = f.inv(lc).expect("nonzero");
            let col: Vector = col.iter().map(|p| p.scale(inv, &f)).collect();
            let sv = to_svec(&ctx, &col);
            cols.push((j, col, sv, inv));
        }
        cols.sort_by(|a, b| {
            for (x, y) in a.2.iter().zip(b.2.iter()) {
                let o = ctx.order.cmp(&y.0, &x.0).then_with(|| x.1.cmp(&y.1));
                if o != std::cmp::Ordering::Equal {
                    return o;
                }
            }
            a.2.len().cmp(&b.2.len()).then_with(|| a.0.cmp(&b.0))
        });
        let perm = cols.iter().map(|c| (c.0, c.3)).collect();
        let vs: Vec<Vector> = cols.into_iter().map(|c| c.1).collect();
        (Matrix::from_columns(d.rows(), &vs), perm)
    }

    /// Entrywise equality in `R`.
    pub fn matrices_equal(&self, a: &Matrix, b: &Matrix) -> bool {
        if a.rows() != b.rows() || a.cols() != b.cols() {
            return false;
        }
        let f = self.field();
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if !self.is_zero(&a.get(i, j).sub(b.get(i, j), f)) {
                    return false;
                }
            }
        }
        true
    }

    /// Equality up to row and column permutations and unit scalars.
    pub fn matrices_equivalent(&self, a: &Matrix, b: &Matrix) -> bool {
        if a.rows() != b.rows() || a.cols() != b.cols() {
            return false;
        }
        let f = self.field();
        match (canonical_form(a, f), canonical_form(b, f)) {
            (Some(x), Some(y)) => self.matrices_equal(&x, &y),
            _ => self.matrices_equal(&self.normalize_columns(a).0, &self.normalize_columns(b).0),
        }
    }

    /// Determinant of the square submatrix on `rows × cols`, by cofactor expansion.
    fn minor(&self, p: &Matrix, rows: &[usize], cols: &[usize]) -> Poly {
        let f = self.field();
        if rows.len() == 1 {
            return p.get(rows[0], cols[0]).clone();
        }
        let mut det = Poly::zero();
        for (k, &c) in cols.iter().enumerate() {
            let a = p.get(rows[0], c);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = a.mul(&self.minor(p, &rows[1..], &rest), f);
            det = if k % 2 == 0 { det.add(&term, f) } else { det.sub(&term, f) };
        }
        det
    }

    /// Rank of `p` over the fraction field of `R`, which must be a domain:
    /// the largest `t` with a `t × t` minor that is nonzero in `R`.
    pub fn determinantal_rank(&self, p: &Matrix) -> usize {
        fn subsets(n: usize, t: usize) -> Vec<Vec<usize>> {
            if t == 0 {
                return vec![Vec::new()];
            }
            if n < t {
                return Vec::new();
            }
            let mut out = subsets(n - 1, t);
            for mut s in subsets(n - 1, t - 1) {
                s.push(n - 1);
                out.push(s);
            }
            out
        }
        for t in (1..=p.rows().min(p.cols())).rev() {
            for rows in subsets(p.rows(), t) {
                for cols in subsets(p.cols(), t) {
                    if !self.is_zero(&self.minor(p, &rows, &cols)) {
                        return t;
                    }
                }
            }
        }
        0
    }

    /// `rank M = ν(M) − rank ∂₁` over a domain.
    pub fn module_rank(&self, m: &ModuleData) -> Result<usize> {
        let m = self.minimal_presentation(m)?;
        Ok(m.num_generators() - self.determinantal_rank(m.presentation()))
    }

    /// Minimal free resolution prefix with `steps` differentials.
    pub fn resolve(&self, m: &ModuleData, steps: usize) -> Result<FreeResolution> {
        if steps == 0 {
            return Err(AlgebraError::InvalidArgument("a resolution needs at least one step".into()));
        }
        let f = *self.field();
        let p = clean(self, &m.presentation);
        let (mut d, _) = eliminate_units(self, p);
        let mut matrices: Vec<Matrix> = Vec::new();
        let mut betti = vec![d.rows()];
        let mut periodic = None;
        while matrices.len() < steps {
            let (kept, s) = self.syzygy_step(&d)?;
            let dmin = d.select_columns(&kept);
            let (dn, perm) = self.normalize_columns(&dmin);
            // Column j of dn is column perm[j].0 of dmin scaled by perm[j].1;
            // the next matrix must act on the new basis of the source.
            let mut next = Matrix::zero(perm.len(), s.cols());
            for (newi, &(oldi, scal)) in perm.iter().enumerate() {
                let inv = f.inv(scal).expect("nonzero");
                for c in 0..s.cols() {
                    next.set(newi, c, s.get(oldi, c).scale(inv, &f));
                }
            }
            betti.push(dn.cols());
            matrices.push(dn);
            let k = matrices.len();
            if periodic.is_none() && matrices[k - 1].cols() > 0 {
                for period in 1..=2 {
                    if k > period && self.matrices_equivalent(&matrices[k - 1], &matrices[k - 1 - period]) {
                        periodic = Some((k - period, period));
                        break;
                    }
                }
            }
            // Once the differentials repeat verbatim the rest of the
            // resolution is a copy of the cycle.
            let exact_period = (1..=2).find(|&q| k > q && matrices[k - 1].cols() > 0 && self.matrices_equal(&matrices[k - 1], &matrices[k - 1 - q]));
            if let Some(q) = exact_period {
                while matrices.len() < steps {
                    let next = matrices[matrices.len() - q].clone();
                    betti.push(next.cols());
                    matrices.push(next);
                }
                break;
            }
            if next.cols() == 0 {
                while matrices.len() < steps {
                    let r = matrices.last().map_or(0, |m| m.cols());
                    matrices.push(Matrix::zero(r, 0));
                    betti.push(0);
                }
                break;
            }
            d = next;
        }
        Ok(FreeResolution { matrices, betti, periodic })
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

    #[test]
    fn free_and_cyclic_presentations() {
        let r = ring(&["x", "y", "z"], &[2, 2, 1], "x^2+y^2+z^4", 2);
        let free = ModuleData::free(1);
        let res = r.resolve(&free, 3).unwrap();
        assert_eq!(res.betti, vec![1, 0, 0, 0]);
        let cyc = ModuleData::cyclic(&[r.p("x"), r.p("y"), r.p("z^2")]);
        let mp = r.minimal_presentation(&cyc).unwrap();
        assert_eq!((mp.presentation().rows(), mp.presentation().cols()), (1, 3));
        assert_eq!(r.module_length(&cyc).unwrap(), Some(2));
    }

    #[test]
    fn hypersurface_resolution_is_periodic() {
        let r = ring(&["x", "y"], &[2, 1], "x^2+y^4", 1);
        let m = ModuleData::cyclic(&[r.p("x"), r.p("y^2")]);
        let res = r.resolve(&m, 4).unwrap();
        assert_eq!(res.betti, vec![1, 2, 2, 2, 2]);
        assert!(res.periodic.is_some());
        let f = r.field();
        for k in 1..4 {
            let prod = res.differential(k).mul(res.differential(k + 1), f);
            assert!(prod.entries().all(|p| r.is_zero(p)));
        }
    }

    #[test]
    fn unit_entries_are_eliminated() {
        let r = ring(&["x", "y"], &[1, 1], "x*y", 1);
        // Generators e1, e2 with relation e1 + x e2 = 0 leaves a free module of rank one.
        let p = Matrix::from_rows(vec![vec![r.p("1")], vec![r.p("x")]]);
        let m = r.minimal_presentation(&ModuleData::presented(p)).unwrap();
        assert_eq!(m.num_generators(), 1);
        assert_eq!(m.presentation().cols(), 0);
    }

    #[test]
    fn ranks_over_a_domain() {
        let r = ring(&["x", "y"], &[2, 1], "x^2+y^4", 1);
        let i = r.submodule(1, &[vec![r.p("x")], vec![r.p("y^2")]]).unwrap();
        assert_eq!(r.module_rank(&i).unwrap(), 1);
        assert_eq!(r.module_rank(&ModuleData::free(3)).unwrap(), 3);
        assert_eq!(r.module_rank(&ModuleData::cyclic(&[r.p("x"), r.p("y")])).unwrap(), 0);
    }
}
