//! Exponent vectors with a cached weighted degree and the local
//! (anti-graded, reverse lexicographic) monomial order.

use std::cmp::Ordering;
use std::fmt;

/// Maximum number of ring variables.
pub const MAX_VARS: usize = 8;

/// A monomial `x^a` with its weighted degree `Σ wᵢ·aᵢ` cached.
///
/// The weighted degree is computed once from the ring's weight vector; all
/// products and quotients update it additively, so two monomials created
/// with the same weights always compare consistently.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    wdeg: u32,
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn from_exponents(exps: &[u16], weights: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS && exps.len() <= weights.len());
        let mut e = [0u16; MAX_VARS];
        let mut wdeg = 0u32;
        for (i, &a) in exps.iter().enumerate() {
            e[i] = a;
            wdeg += weights[i] * a as u32;
        }
        Monomial { wdeg, exps: e }
    }

    pub fn variable(i: usize, weights: &[u32]) -> Self {
        let mut e = [0u16; MAX_VARS];
        e[i] = 1;
        Monomial { wdeg: weights[i], exps: e }
    }

    #[inline]
    pub fn wdeg(&self) -> u32 {
        self.wdeg
    }

    #[inline]
    pub fn exponents(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    /// Ordinary (unweighted) total degree.
    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&a| a as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&a| a == 0)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.exps;
        for (a, b) in e.iter_mut().zip(other.exps.iter()) {
            *a += *b;
        }
        Monomial { wdeg: self.wdeg + other.wdeg, exps: e }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.wdeg <= other.wdeg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut e = other.exps;
        for (a, b) in e.iter_mut().zip(self.exps.iter()) {
            *a -= *b;
        }
        Monomial { wdeg: other.wdeg - self.wdeg, exps: e }
    }

    pub fn lcm(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        let mut e = [0u16; MAX_VARS];
        let mut wdeg = 0;
        for i in 0..MAX_VARS {
            e[i] = self.exps[i].max(other.exps[i]);
            if e[i] > 0 {
                wdeg += weights[i] * e[i] as u32;
            }
        }
        Monomial { wdeg, exps: e }
    }

    /// If the monomial is a pure power `x_i^a` with `a > 0`, returns `(i, a)`.
    pub fn pure_power(&self) -> Option<(usize, u16)> {
        let mut found = None;
        for (i, &a) in self.exps.iter().enumerate() {
            if a > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, a));
            }
        }
        found
    }
}

impl Ord for Monomial {
    /// Local order: lower weighted degree is larger; ties are broken
    /// reverse lexicographically (the monomial whose last differing
    /// exponent is smaller is larger).
    fn cmp(&self, other: &Self) -> Ordering {
        match other.wdeg.cmp(&self.wdeg) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..MAX_VARS).rev() {
            match other.exps[i].cmp(&self.exps[i]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&a| a != 0).map_or(0, |p| p + 1);
        write!(f, "m{:?}", &self.exps[..last])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const W: [u32; 3] = [2, 2, 1];

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e, &W)
    }

    #[test]
    fn one_is_the_largest_monomial() {
        for e in [[1, 0, 0], [0, 0, 1], [3, 1, 2]] {
            assert!(Monomial::one() > m(&e));
        }
    }

    #[test]
    fn ties_break_reverse_lexicographically() {
        // x^2, y^2, z^4 all have weight 4.
        assert!(m(&[2, 0, 0]) > m(&[0, 2, 0]));
        assert!(m(&[0, 2, 0]) > m(&[0, 0, 4]));
        assert!(m(&[1, 0, 0]) > m(&[0, 0, 3]));
    }

    #[test]
    fn order_is_multiplicative() {
        let a = m(&[1, 2, 0]);
        let b = m(&[0, 1, 3]);
        let t = m(&[2, 0, 1]);
        assert_eq!(a.cmp(&b), a.mul(&t).cmp(&b.mul(&t)));
    }

    #[test]
    fn division_and_lcm() {
        let a = m(&[1, 2, 0]);
        let b = m(&[2, 1, 1]);
        let l = a.lcm(&b, &W);
        assert_eq!(l, m(&[2, 2, 1]));
        assert!(a.divides(&l) && b.divides(&l));
        assert_eq!(a.quotient_of(&l), m(&[1, 0, 1]));
        assert_eq!(m(&[0, 0, 5]).pure_power(), Some((2, 5)));
        assert_eq!(a.pure_power(), None);
    }
}
