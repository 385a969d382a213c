//! Canonical forms of matrices under row and column permutations and
//! nonzero scalings. Two presentations with the same canonical form have
//! isomorphic cokernels.

use std::cmp::Ordering;

use crate::field::PrimeField;
use crate::matrix::Matrix;
use crate::poly::Poly;

/// Search over all permutation pairs is skipped above this many candidates.
const PERMUTATION_BUDGET: u64 = 400_000;

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn cmp_poly(a: &Poly, b: &Poly) -> Ordering {
    let (ta, tb) = (a.terms(), b.terms());
    for (x, y) in ta.iter().zip(tb.iter()) {
        let o = y.0.cmp(&x.0).then_with(|| x.1.cmp(&y.1));
        if o != Ordering::Equal {
            return o;
        }
    }
    ta.len().cmp(&tb.len())
}

fn cmp_matrix(a: &Matrix, b: &Matrix) -> Ordering {
    for (x, y) in a.entries().zip(b.entries()) {
        let o = cmp_poly(x, y);
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Rescales rows and columns so that a spanning forest of the nonzero
/// pattern, chosen greedily in row-major order, has monic entries. The
/// result depends only on the diagonal-scaling orbit of `m`.
pub fn scale_canonically(m: &Matrix, f: &PrimeField) -> Matrix {
    let (r, c) = (m.rows(), m.cols());
    let mut parent: Vec<usize> = (0..r + c).collect();
    let mut forest: Vec<Vec<(usize, u32)>> = vec![Vec::new(); r + c];
    for i in 0..r {
        for j in 0..c {
            let Some((_, lc)) = m.get(i, j).leading_term() else { continue };
            let (a, b) = (find(&mut parent, i), find(&mut parent, r + j));
            if a != b {
                parent[a] = b;
                forest[i].push((r + j, lc));
                forest[r + j].push((i, lc));
            }
        }
    }
    // Row node i gets scale s_i, column node j gets t_j with s_i·t_j·lc = 1 on forest edges.
    let mut scale: Vec<Option<u32>> = vec![None; r + c];
    for root in 0..r + c {
        if scale[root].is_some() {
            continue;
        }
        scale[root] = Some(1);
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            let su = scale[u].unwrap();
            for &(v, lc) in &forest[u] {
                if scale[v].is_none() {
                    scale[v] = Some(f.inv(f.mul(su, lc)).expect("nonzero"));
                    stack.push(v);
                }
            }
        }
    }
    let mut out = Matrix::zero(r, c);
    for i in 0..r {
        for j in 0..c {
            let e = m.get(i, j);
            if !e.is_zero() {
                let k = f.mul(scale[i].unwrap(), scale[r + j].unwrap());
                out.set(i, j, e.scale(k, f));
            }
        }
    }
    out
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn permuted(m: &Matrix, rows: &[usize], cols: &[usize]) -> Matrix {
    let mut out = Matrix::zero(m.rows(), m.cols());
    for (ni, &oi) in rows.iter().enumerate() {
        for (nj, &oj) in cols.iter().enumerate() {
            out.set(ni, nj, m.get(oi, oj).clone());
        }
    }
    out
}

/// The least matrix, in a fixed total order, among all row/column
/// permutations of `m` after canonical scaling. Returns `None` when the
/// matrix is too large for the exhaustive search.
pub fn canonical_form(m: &Matrix, f: &PrimeField) -> Option<Matrix> {
    let (r, c) = (m.rows(), m.cols());
    if factorial(r).saturating_mul(factorial(c)) > PERMUTATION_BUDGET {
        return None;
    }
    let mut best: Option<Matrix> = None;
    let mut rp: Vec<usize> = (0..r).collect();
    loop {
        let mut cp: Vec<usize> = (0..c).collect();
        loop {
            let cand = scale_canonically(&permuted(m, &rp, &cp), f);
            if best.as_ref().is_none_or(|b| cmp_matrix(&cand, b) == Ordering::Less) {
                best = Some(cand);
            }
            if !next_permutation(&mut cp) {
                break;
            }
        }
        if !next_permutation(&mut rp) {
            break;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Monomial;

    fn f() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    fn var(i: usize) -> Poly {
        Poly::term(Monomial::variable(i, &[1, 1, 1]), 1)
    }

    #[test]
    fn scaling_orbit_is_collapsed() {
        let fl = f();
        let m = Matrix::from_rows(vec![vec![var(0), var(1)], vec![var(2), var(0).scale(5, &fl)]]);
        let mut n = m.clone();
        for j in 0..2 {
            n.set(0, j, m.get(0, j).scale(7, &fl));
        }
        for i in 0..2 {
            n.set(i, 1, n.get(i, 1).scale(fl.neg(1), &fl));
        }
        assert_eq!(scale_canonically(&m, &fl), scale_canonically(&n, &fl));
    }

    #[test]
    fn transpose_of_symmetric_pattern_matches() {
        let fl = f();
        let m = Matrix::from_rows(vec![vec![var(0), var(1).neg(&fl)], vec![var(1), var(0)]]);
        let a = canonical_form(&m, &fl).unwrap();
        let b = canonical_form(&m.transpose(), &fl).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn different_patterns_differ() {
        let fl = f();
        let m = Matrix::from_rows(vec![vec![var(0), Poly::zero()], vec![Poly::zero(), var(1)]]);
        let n = Matrix::from_rows(vec![vec![var(0), var(1)], vec![Poly::zero(), var(1)]]);
        assert_ne!(canonical_form(&m, &fl), canonical_form(&n, &fl));
    }

    #[test]
    fn permutations_enumerate_all() {
        let mut p = vec![0, 1, 2];
        let mut n = 1;
        while next_permutation(&mut p) {
            n += 1;
        }
        assert_eq!(n, 6);
    }
}
