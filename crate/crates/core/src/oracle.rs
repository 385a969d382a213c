//! Reference computations by dense linear algebra over `P/𝔪^D`, where `P`
//! is the polynomial ring and `𝔪` the ideal of the origin.
//!
//! Nothing here touches standard bases. These routines are slow and only
//! meant for cross-checking the engine on small instances.

use std::collections::HashMap;

use crate::matrix::{Matrix, Vector};
use crate::poly::Poly;

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Monomials of total degree `< bound` in `nvars` variables.
#[derive(Clone, Debug)]
pub struct Truncation {
    nvars: usize,
    bound: usize,
    monos: Vec<Vec<u16>>,
    index: HashMap<Vec<u16>, usize>,
}

impl Truncation {
    pub fn new(nvars: usize, bound: usize) -> Self {
        let mut monos = Vec::new();
        for deg in 0..bound {
            let mut e = vec![0u16; nvars];
            fill(0, deg, &mut e, &mut monos);
        }
        let index = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Truncation { nvars, bound, monos, index }
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// The exponent vectors, by increasing total degree.
    pub fn monomials(&self) -> &[Vec<u16>] {
        &self.monos
    }

    /// `x^shift · g`, truncated, written into `out[offset..offset + len]`.
    fn add_shifted(&self, g: &Poly, shift: &[u16], scale: u64, p: u64, out: &mut [u64], offset: usize) {
        for (m, c) in g.terms() {
            let mut e: Vec<u16> = m.exponents()[..self.nvars].to_vec();
            for (a, b) in e.iter_mut().zip(shift) {
                *a += b;
            }
            if let Some(&i) = self.index.get(&e) {
                let slot = &mut out[offset + i];
                *slot = (*slot + scale * *c as u64) % p;
            }
        }
    }
}

fn fill(i: usize, left: usize, e: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
    if e.is_empty() {
        if left == 0 {
            out.push(Vec::new());
        }
        return;
    }
    if i + 1 == e.len() {
        e[i] = left as u16;
        out.push(e.clone());
        return;
    }
    for a in (0..=left).rev() {
        e[i] = a as u16;
        fill(i + 1, left - a, e, out);
    }
    e[i] = 0;
}

/// A row-echelon basis of a subspace of `F_p^n`, grown one vector at a time.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u64,
    dim: usize,
    rows: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    pub fn new(p: u32, dim: usize) -> Self {
        Echelon { p: p as u64, dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [u64]) {
        let p = self.p;
        for (c, row) in &self.rows {
            let a = v[*c];
            if a != 0 {
                let f = p - a;
                for (x, r) in v.iter_mut().zip(row) {
                    if *r != 0 {
                        *x = (*x + f * r) % p;
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        v.iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        self.reduce(&mut v);
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(v[c], self.p);
        for x in v.iter_mut() {
            *x = *x * inv % self.p;
        }
        self.rows.push((c, v));
        true
    }
}

/// A basis of `{u : A·u = 0}` for the `rows × ncols` matrix `a`.
pub fn kernel(p: u32, a: &[Vec<u64>], ncols: usize) -> Vec<Vec<u64>> {
    let p = p as u64;
    let mut m: Vec<Vec<u64>> = a.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, k);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = p - row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    if *y != 0 {
                        *x = (*x + f * y) % p;
                    }
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
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; ncols];
        v[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - m[i][free]) % p;
        }
        out.push(v);
    }
    out
}

/// Span of `x^α·g` over all `α` with `|α| < bound`, for `g` among `gens`
/// (vectors of rank `rank`) and `f·e_c` for `f` among `relations`.
fn truncated_span(p: u32, t: &Truncation, rank: usize, gens: &[Vector], relations: &[Poly]) -> Echelon {
    let n = t.len();
    let mut ech = Echelon::new(p, rank * n);
    let mut all: Vec<Vector> = gens.to_vec();
    for f in relations {
        for c in 0..rank {
            let mut v = vec![Poly::zero(); rank];
            v[c] = f.clone();
            all.push(v);
        }
    }
    for g in &all {
        for shift in t.monomials() {
            let mut row = vec![0u64; rank * n];
            for (c, gc) in g.iter().enumerate() {
                t.add_shifted(gc, shift, 1, p as u64, &mut row, c * n);
            }
            ech.insert(&row);
        }
    }
    ech
}

/// `ℓ(P^rank / (U + relations·P^rank))` localized at the origin, where `U`
/// is spanned by `gens`. Searches `D ≤ d_max` with `𝔪^D ⊆ U + 𝔪^{D+1}`;
/// returns `None` if no such `D` is found.
pub fn quotient_length(p: u32, nvars: usize, rank: usize, gens: &[Vector], relations: &[Poly], d_max: usize) -> Option<u64> {
    if rank == 0 {
        return Some(0);
    }
    for d in 0..=d_max {
        let t = Truncation::new(nvars, d + 1);
        let ech = truncated_span(p, &t, rank, gens, relations);
        let n = t.len();
        let top: Vec<usize> = (0..n).filter(|&i| t.monos[i].iter().map(|&e| e as usize).sum::<usize>() == d).collect();
        let covered = (0..rank).all(|c| {
            top.iter().all(|&i| {
                let mut v = vec![0u64; rank * n];
                v[c * n + i] = 1;
                ech.contains(&v)
            })
        });
        if covered {
            let t = Truncation::new(nvars, d);
            let ech = truncated_span(p, &t, rank, gens, relations);
            return Some((rank * t.len() - ech.rank()) as u64);
        }
    }
    None
}

/// Compares a claimed generating set `syz` of the syzygies of `gens`
/// (over `P/(relations)`, localized) with the truncated kernel.
///
/// The kernel is solved modulo `𝔪^{e + margin}` and both sides are compared
/// modulo `𝔪^e`.
pub fn syzygies_agree(p: u32, nvars: usize, rank: usize, gens: &[Vector], relations: &[Poly], syz: &[Vector], e: usize, margin: usize) -> bool {
    let k = gens.len();
    let big = Truncation::new(nvars, e + margin);
    let n = big.len();
    let nrel = relations.len();
    let ncols = (k + rank * nrel) * n;
    let pp = p as u64;
    // Unknowns: v ∈ (P/𝔪^D)^k, then w ∈ (P/𝔪^D)^{rank·nrel};
    // equations: Σ v_i g_i + Σ w_{c,j} f_j e_c ≡ 0 in (P/𝔪^D)^rank.
    let mut a = vec![vec![0u64; ncols]; rank * n];
    let mut col = vec![0u64; rank * n];
    let set_column = |a: &mut Vec<Vec<u64>>, idx: usize, col: &[u64]| {
        for (r, &x) in col.iter().enumerate() {
            a[r][idx] = x;
        }
    };
    for (i, g) in gens.iter().enumerate() {
        for (s, shift) in big.monomials().iter().enumerate() {
            col.iter_mut().for_each(|x| *x = 0);
            for (c, gc) in g.iter().enumerate() {
                big.add_shifted(gc, shift, 1, pp, &mut col, c * n);
            }
            set_column(&mut a, i * n + s, &col);
        }
    }
    for c in 0..rank {
        for (j, f) in relations.iter().enumerate() {
            for (s, shift) in big.monomials().iter().enumerate() {
                col.iter_mut().for_each(|x| *x = 0);
                big.add_shifted(f, shift, 1, pp, &mut col, c * n);
                set_column(&mut a, (k + c * nrel + j) * n + s, &col);
            }
        }
    }
    let ker = kernel(p, &a, ncols);

    let small = Truncation::new(nvars, e);
    let m = small.len();
    let project = |v: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; k * m];
        for i in 0..k {
            for (s, mono) in small.monomials().iter().enumerate() {
                out[i * m + s] = v[i * n + big.index[mono]];
            }
        }
        out
    };
    let mut oracle = Echelon::new(p, k * m);
    for v in &ker {
        oracle.insert(&project(v));
    }
    let engine = truncated_span(p, &small, k, syz, relations);
    if engine.rank() != oracle.rank() {
        return false;
    }
    engine.rows.iter().all(|(_, r)| oracle.contains(r))
}

/// Freeness of `coker(presentation)` over the Artinian ring `P/(relations)`
/// by the dimension count `dim N = ν(N)·dim A`.
pub fn is_free(p: u32, nvars: usize, relations: &[Poly], presentation: &Matrix, d_max: usize) -> Option<bool> {
    let la = quotient_length(p, nvars, 1, &[], relations, d_max)?;
    let rank = presentation.rows();
    let cols = presentation.columns();
    let ln = quotient_length(p, nvars, rank, &cols, relations, d_max)?;
    let mut with_max = cols.clone();
    for c in 0..rank {
        for v in 0..nvars {
            let mut e = [0u16; crate::MAX_VARS];
            e[v] = 1;
            let mut g = vec![Poly::zero(); rank];
            g[c] = Poly::term(crate::Monomial::from_exponents(&e[..nvars], &vec![1; nvars]), 1);
            with_max.push(g);
        }
    }
    let nu = quotient_length(p, nvars, rank, &with_max, relations, d_max)?;
    Some(ln == nu * la)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::parse::parse_poly;

    fn polys(vars: &[&str], texts: &[&str]) -> Vec<Poly> {
        let f = PrimeField::new(32003).unwrap();
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let w = vec![1; vars.len()];
        texts.iter().map(|t| parse_poly(t, &names, &w, &f).unwrap()).collect()
    }

    #[test]
    fn truncation_sizes() {
        assert_eq!(Truncation::new(3, 3).len(), 10);
        assert_eq!(Truncation::new(2, 0).len(), 0);
    }

    #[test]
    fn kernel_of_small_matrix() {
        let k = kernel(7, &[vec![1, 2, 3]], 3);
        assert_eq!(k.len(), 2);
        for v in k {
            assert_eq!((v[0] + 2 * v[1] + 3 * v[2]) % 7, 0);
        }
    }

    #[test]
    fn lengths_of_monomial_and_hypersurface_quotients() {
        let g = polys(&["x", "y"], &["x^2", "y^3"]);
        let gens: Vec<Vector> = g.into_iter().map(|p| vec![p]).collect();
        assert_eq!(quotient_length(32003, 2, 1, &gens, &[], 10), Some(6));
        let rel = polys(&["x", "y", "z"], &["x^2+y^2+z^4", "x", "y", "z^2"]);
        assert_eq!(quotient_length(32003, 3, 1, &[], &rel, 10), Some(2));
        let unit = polys(&["x"], &["1+x"]);
        assert_eq!(quotient_length(32003, 1, 1, &[vec![unit[0].clone()]], &[], 5), Some(0));
        assert_eq!(quotient_length(32003, 2, 1, &[vec![polys(&["x", "y"], &["x"])[0].clone()]], &[], 6), None);
    }

    #[test]
    fn koszul_syzygy_agrees() {
        let g = polys(&["x", "y"], &["x", "y", "-x", "0"]);
        let gens = vec![vec![g[0].clone()], vec![g[1].clone()]];
        let syz = vec![vec![g[1].clone(), g[2].clone()]];
        assert!(syzygies_agree(32003, 2, 1, &gens, &[], &syz, 4, 3));
        assert!(!syzygies_agree(32003, 2, 1, &gens, &[], &[], 4, 3));
    }

    #[test]
    fn freeness_by_dimension_count() {
        let rel = polys(&["z"], &["z^2", "z"]);
        let free = Matrix::zero(2, 0);
        assert_eq!(is_free(32003, 1, &rel[..1], &free, 6), Some(true));
        let residue = Matrix::from_rows(vec![vec![rel[1].clone()]]);
        assert_eq!(is_free(32003, 1, &rel[..1], &residue, 6), Some(false));
    }
}
