//! Prime field arithmetic with a runtime modulus.
//!
//! Elements are plain `u32` residues; the [`PrimeField`] value carries the
//! modulus and performs every operation, so rings built over different
//! characteristics never share state.

use crate::error::AlgebraError;

/// Default characteristic used throughout the engine.
pub const DEFAULT_PRIME: u32 = 32003;

/// The field `Z/pZ` for a prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, AlgebraError> {
        if !is_prime(p) || p >= (1 << 31) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Reduces a signed integer into `[0, p)`.
    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let (mut t, mut new_t) = (0i64, 1i64);
        let (mut r, mut new_r) = (self.p as i64, a as i64);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        Some(self.from_i64(t))
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32, AlgebraError> {
        let bi = self.inv(b).ok_or(AlgebraError::DivisionByZero)?;
        Ok(self.mul(a, bi))
    }

    /// Symmetric representative in `(-p/2, p/2]`, used for printing.
    pub fn to_signed(&self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

/// Deterministic trial division; moduli are at most 31 bits.
pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n as u64 {
        if (n as u64).is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_composite_modulus() {
        assert!(PrimeField::new(32004).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(2).is_ok());
    }

    #[test]
    fn division_by_zero_is_rejected() {
        let f = PrimeField::default();
        assert_eq!(f.div(3, 0), Err(AlgebraError::DivisionByZero));
        assert_eq!(f.inv(0), None);
    }

    #[test]
    fn signed_representatives() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.to_signed(6), -1);
        assert_eq!(f.to_signed(3), 3);
        assert_eq!(f.from_i64(-1), 6);
    }

    proptest! {
        #[test]
        fn inverse_roundtrip(a in 1u32..32003) {
            let f = PrimeField::default();
            let ai = f.inv(a).unwrap();
            prop_assert_eq!(f.mul(a, ai), 1);
            prop_assert_eq!(f.pow(a, 32002), 1);
        }

        #[test]
        fn add_sub_inverse(a in 0u32..32003, b in 0u32..32003) {
            let f = PrimeField::default();
            prop_assert_eq!(f.sub(f.add(a, b), b), a);
            prop_assert_eq!(f.add(a, f.neg(a)), 0);
        }
    }
}
