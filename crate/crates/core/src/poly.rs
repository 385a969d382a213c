//! Sparse polynomials over a prime field, sorted by the local order.

use std::collections::BTreeMap;
use std::fmt;

use crate::field::PrimeField;
use crate::monomial::Monomial;

/// A polynomial stored as strictly decreasing `(monomial, coefficient)` pairs,
/// so the first term is the leading term in the local order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, u32)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: u32) -> Self {
        Poly::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: u32) -> Self {
        if c == 0 {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, combining like monomials.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, u32)>, f: &PrimeField) -> Self {
        let mut acc: BTreeMap<Monomial, u32> = BTreeMap::new();
        for (m, c) in terms {
            let e = acc.entry(m).or_insert(0);
            *e = f.add(*e, c);
        }
        Poly { terms: acc.into_iter().rev().filter(|&(_, c)| c != 0).collect() }
    }

    /// Assumes `terms` is already strictly decreasing with nonzero coefficients.
    pub(crate) fn from_sorted(terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<(Monomial, u32)> {
        self.terms.first().copied()
    }

    pub fn constant_term(&self) -> u32 {
        match self.terms.first() {
            Some((m, c)) if m.is_one() => *c,
            _ => 0,
        }
    }

    /// A polynomial is a unit of the local ring iff its constant term is nonzero.
    pub fn is_unit(&self) -> bool {
        self.constant_term() != 0
    }

    /// Smallest weighted degree of a term (the order of the polynomial).
    pub fn order(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.wdeg())
    }

    pub fn max_wdeg(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.wdeg()).max()
    }

    pub fn neg(&self, f: &PrimeField) -> Poly {
        Poly { terms: self.terms.iter().map(|&(m, c)| (m, f.neg(c))).collect() }
    }

    pub fn scale(&self, c: u32, f: &PrimeField) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|&(m, a)| (m, f.mul(a, c))).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: u32, f: &PrimeField) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|&(t, a)| (t.mul(m), f.mul(a, c))).collect() }
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, other: &Poly, c: u32, f: &PrimeField) -> Poly {
        if c == 0 || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0, f.mul(b[j].1, c)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = f.add(a[i].1, f.mul(b[j].1, c));
                    if s != 0 {
                        out.push((a[i].0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(m, x)| (m, f.mul(x, c))));
        Poly { terms: out }
    }

    pub fn add(&self, other: &Poly, f: &PrimeField) -> Poly {
        self.add_scaled(other, 1, f)
    }

    pub fn sub(&self, other: &Poly, f: &PrimeField) -> Poly {
        self.add_scaled(other, f.neg(1), f)
    }

    pub fn mul(&self, other: &Poly, f: &PrimeField) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut acc: BTreeMap<Monomial, u32> = BTreeMap::new();
        for &(a, x) in &self.terms {
            for &(b, y) in &other.terms {
                let e = acc.entry(a.mul(&b)).or_insert(0);
                *e = f.add(*e, f.mul(x, y));
            }
        }
        Poly { terms: acc.into_iter().rev().filter(|&(_, c)| c != 0).collect() }
    }

    pub fn pow(&self, mut e: u32, f: &PrimeField) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::constant(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, f);
            }
        }
        acc
    }

    /// Drops every term of weighted degree at least `bound`.
    pub fn truncate_wdeg(&mut self, bound: u32) {
        self.terms.retain(|(m, _)| m.wdeg() < bound);
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self, f: &PrimeField) -> Poly {
        match self.terms.first() {
            None => Poly::zero(),
            Some(&(_, c)) => self.scale(f.inv(c).expect("nonzero"), f),
        }
    }

    /// Renders with the given variable names, coefficients as symmetric residues.
    pub fn display<'a>(&'a self, names: &'a [String], f: &'a PrimeField) -> PolyDisplay<'a> {
        PolyDisplay { p: self, names, f }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.terms.iter()).finish()
    }
}

pub struct PolyDisplay<'a> {
    p: &'a Poly,
    names: &'a [String],
    f: &'a PrimeField,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(out, "0");
        }
        // Display highest degree first, which reads more naturally.
        for (k, (m, c)) in self.p.terms.iter().rev().enumerate() {
            let s = self.f.to_signed(*c);
            let mag = s.unsigned_abs();
            if k == 0 {
                if s < 0 {
                    write!(out, "-")?;
                }
            } else if s < 0 {
                write!(out, " - ")?;
            } else {
                write!(out, " + ")?;
            }
            let mut factors = Vec::new();
            for (i, &a) in m.exponents().iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let name = self.names.get(i).map(String::as_str).unwrap_or("?");
                if a == 1 {
                    factors.push(name.to_string());
                } else {
                    factors.push(format!("{name}^{a}"));
                }
            }
            if factors.is_empty() {
                write!(out, "{mag}")?;
            } else {
                if mag != 1 {
                    write!(out, "{mag}*")?;
                }
                write!(out, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const W: [u32; 2] = [1, 1];

    fn f() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    fn var(i: usize) -> Poly {
        Poly::term(Monomial::variable(i, &W), 1)
    }

    fn poly_strategy() -> impl Strategy<Value = Poly> {
        prop::collection::vec(((0u16..4, 0u16..4), 0u32..101), 0..6).prop_map(|ts| {
            Poly::from_terms(ts.into_iter().map(|((a, b), c)| (Monomial::from_exponents(&[a, b], &W), c)), &f())
        })
    }

    #[test]
    fn leading_term_is_lowest_degree() {
        let fl = f();
        let p = var(0).pow(3, &fl).add(&var(1), &fl);
        assert_eq!(p.leading_term().unwrap().0, Monomial::variable(1, &W));
    }

    #[test]
    fn units_have_constant_terms() {
        let fl = f();
        assert!(Poly::constant(3).add(&var(0), &fl).is_unit());
        assert!(!var(0).is_unit());
    }

    #[test]
    fn display_uses_signed_coefficients() {
        let fl = f();
        let names = vec!["x".to_string(), "y".to_string()];
        let p = var(0).pow(2, &fl).sub(&var(1).scale(2, &fl), &fl);
        assert_eq!(p.display(&names, &fl).to_string(), "x^2 - 2*y");
    }

    proptest! {
        #[test]
        fn ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
            let fl = f();
            prop_assert_eq!(a.mul(&b, &fl), b.mul(&a, &fl));
            prop_assert_eq!(a.mul(&b.add(&c, &fl), &fl), a.mul(&b, &fl).add(&a.mul(&c, &fl), &fl));
            prop_assert!(a.sub(&a, &fl).is_zero());
            prop_assert_eq!(a.add(&b, &fl).sub(&b, &fl), a);
        }
    }
}
