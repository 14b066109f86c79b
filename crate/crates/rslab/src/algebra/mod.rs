//! Exact arithmetic over prime fields F_p, dense univariate polynomials, and
//! extension fields F_p[x]/(h(x)).
//!
//! Ground fields are restricted to prime order: every claim exercised at
//! desk scale has a prime-q instance, and this keeps elements machine-word
//! sized. Group orders, exponents and binomials go through `BigUint`.

mod ext;
mod factorpoly;
mod poly;

pub use ext::{ext_field_make, ExtElem, ExtField};
pub use factorpoly::{irreducible_test, linear_split, random_irreducible};
pub use poly::{interpolate, Poly};

/// All distinct roots of a nonzero polynomial in its prime field.
pub fn roots_of(f: &Poly) -> Result<Vec<u64>> {
    factorpoly::distinct_roots(f)
}

use crate::error::{Error, Result};

/// A prime field F_p. Construction validates primality by trial division.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !crate::arith::is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, value: u64) -> FieldElem {
        FieldElem {
            value: value % self.p,
            p: self.p,
        }
    }

    /// Signed constructor: maps negative residues into [0, p).
    pub fn elem_i64(&self, value: i64) -> FieldElem {
        let p = self.p as i64;
        FieldElem {
            value: value.rem_euclid(p) as u64,
            p: self.p,
        }
    }

    pub fn zero(&self) -> FieldElem {
        self.elem(0)
    }

    pub fn one(&self) -> FieldElem {
        self.elem(1)
    }

    /// All field elements in ascending residue order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        let p = self.p;
        (0..p).map(move |v| FieldElem { value: v, p })
    }
}

/// An element of F_p. Carries its modulus so cross-field mixing is detected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem {
    value: u64,
    p: u64,
}

/// The checked binary operations of `field_arith`. `Pow` reads the second
/// operand's residue as the exponent; arbitrary-precision exponents go
/// through `FieldElem::pow` directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl FieldElem {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &FieldElem) -> Result<()> {
        if self.p != other.p {
            return Err(Error::MixedFields {
                left: self.p,
                right: other.p,
            });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &FieldElem) -> Result<FieldElem> {
        self.same_field(rhs)?;
        let mut v = self.value + rhs.value;
        if v >= self.p {
            v -= self.p;
        }
        Ok(FieldElem { value: v, p: self.p })
    }

    pub fn sub(&self, rhs: &FieldElem) -> Result<FieldElem> {
        self.same_field(rhs)?;
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + self.p - rhs.value
        };
        Ok(FieldElem { value: v, p: self.p })
    }

    pub fn mul(&self, rhs: &FieldElem) -> Result<FieldElem> {
        self.same_field(rhs)?;
        Ok(FieldElem {
            value: ((self.value as u128 * rhs.value as u128) % self.p as u128) as u64,
            p: self.p,
        })
    }

    pub fn div(&self, rhs: &FieldElem) -> Result<FieldElem> {
        self.same_field(rhs)?;
        let inv = rhs.inverse()?;
        self.mul(&inv)
    }

    pub fn neg(&self) -> FieldElem {
        FieldElem {
            value: if self.value == 0 { 0 } else { self.p - self.value },
            p: self.p,
        }
    }

    pub fn inverse(&self) -> Result<FieldElem> {
        if self.value == 0 {
            return Err(Error::DivisionByZero { p: self.p });
        }
        // Extended Euclid on (value, p).
        let (mut r0, mut r1) = (self.value as i128, self.p as i128);
        let (mut s0, mut s1) = (1i128, 0i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        let v = s0.rem_euclid(self.p as i128) as u64;
        Ok(FieldElem { value: v, p: self.p })
    }

    /// Exponentiation with an arbitrary-precision exponent.
    pub fn pow(&self, exp: &num_bigint::BigUint) -> FieldElem {
        use num_traits::Zero;
        let mut acc = FieldElem { value: 1 % self.p, p: self.p };
        if exp.is_zero() {
            return acc;
        }
        let mut base = *self;
        for i in 0..exp.bits() {
            if exp.bit(i) {
                acc = acc.mul(&base).unwrap();
            }
            base = base.mul(&base).unwrap();
        }
        acc
    }

    pub fn pow_u64(&self, exp: u64) -> FieldElem {
        self.pow(&num_bigint::BigUint::from(exp))
    }
}

impl std::fmt::Display for FieldElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Checked arithmetic dispatch over F_p, the one-stop contract surface.
/// `Div` by zero and mixed-field inputs are reported as errors.
pub fn field_arith(a: &FieldElem, b: &FieldElem, op: FieldOp) -> Result<FieldElem> {
    match op {
        FieldOp::Add => a.add(b),
        FieldOp::Sub => a.sub(b),
        FieldOp::Mul => a.mul(b),
        FieldOp::Div => a.div(b),
        FieldOp::Pow => {
            a.same_field(b)?;
            Ok(a.pow_u64(b.value()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use rand::{Rng, SeedableRng};

    #[test]
    fn construction_rejects_composite() {
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(91).is_err()); // 7 * 13
        assert!(PrimeField::new(5).is_ok());
    }

    #[test]
    fn worked_values() {
        let f5 = PrimeField::new(5).unwrap();
        let f7 = PrimeField::new(7).unwrap();
        // div(1, 2) = 3 in F_5 since 2*3 = 6 = 1.
        assert_eq!(field_arith(&f5.elem(1), &f5.elem(2), FieldOp::Div).unwrap(), f5.elem(3));
        // 2^4 = 1 in F_5, through both surfaces.
        assert_eq!(f5.elem(2).pow_u64(4), f5.one());
        assert_eq!(field_arith(&f5.elem(2), &f5.elem(4), FieldOp::Pow).unwrap(), f5.one());
        // 3*5 = 15 = 1 in F_7.
        assert_eq!(field_arith(&f7.elem(3), &f7.elem(5), FieldOp::Mul).unwrap(), f7.elem(1));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let f5 = PrimeField::new(5).unwrap();
        assert!(matches!(
            field_arith(&f5.elem(1), &f5.zero(), FieldOp::Div),
            Err(crate::error::Error::DivisionByZero { p: 5 })
        ));
    }

    #[test]
    fn mixed_fields_are_an_error() {
        let f5 = PrimeField::new(5).unwrap();
        let f7 = PrimeField::new(7).unwrap();
        assert!(matches!(
            field_arith(&f5.elem(1), &f7.elem(1), FieldOp::Add),
            Err(crate::error::Error::MixedFields { left: 5, right: 7 })
        ));
    }

    #[test]
    fn field_axioms_random_sample() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(7);
        for p in [2u64, 3, 5, 7, 11, 101, 257] {
            let f = PrimeField::new(p).unwrap();
            for _ in 0..1000 {
                let a = f.elem(rng.gen_range(0..p));
                let b = f.elem(rng.gen_range(0..p));
                let c = f.elem(rng.gen_range(0..p));
                let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
                let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
                assert_eq!(ab_c, a_bc);
                let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
                let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
                if !a.is_zero() {
                    assert_eq!(a.mul(&a.inverse().unwrap()).unwrap(), f.one());
                }
            }
        }
    }

    #[test]
    fn pow_big_exponent_matches_fermat() {
        let f = PrimeField::new(257).unwrap();
        let e = BigUint::from(256u32).pow(5); // multiple of p-1
        for v in 1..257u64 {
            assert_eq!(f.elem(v).pow(&e), f.one());
        }
    }
}
