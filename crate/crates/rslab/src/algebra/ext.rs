//! Extension fields F_p[x]/(h(x)) with a distinguished generator
//! alpha = x mod h(x).
//!
//! `ExtField` owns the modulus and acts as the arithmetic context; `ExtElem`
//! is plain data (the residue coefficients), so elements hash and order
//! cheaply for use as table keys. All operations are pure.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::algebra::factorpoly::find_nontrivial_factor;
use crate::algebra::{Poly, PrimeField};
use crate::error::{Error, Result};

/// F_q[x]/(h(x)) for prime q and monic irreducible h(x) of degree h >= 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtField {
    base: PrimeField,
    modulus: Poly,
    h: usize,
    order: BigUint,
}

/// A residue polynomial of degree < h, the canonical representative of an
/// element of F_{q^h}. Belongs to the `ExtField` that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExtElem {
    /// Ascending-degree coefficients, fixed length h.
    coeffs: Vec<u64>,
}

/// Validates and builds F_q[x]/(h(x)). Rejects composite q; rejects a
/// reducible modulus with an explicit nontrivial factor as the witness.
pub fn ext_field_make(p: u64, modulus: &Poly) -> Result<ExtField> {
    let base = PrimeField::new(p)?;
    if modulus.p() != p {
        return Err(Error::MixedFields { left: modulus.p(), right: p });
    }
    let deg = modulus
        .degree()
        .ok_or_else(|| Error::Usage("modulus must be nonzero".into()))?;
    if deg < 2 {
        return Err(Error::Usage(format!(
            "modulus degree must be >= 2, got {deg}"
        )));
    }
    if !modulus.is_monic() {
        return Err(Error::Usage("modulus must be monic".into()));
    }
    if let Some(factor) = find_nontrivial_factor(modulus)? {
        return Err(Error::ReducibleModulus {
            modulus: modulus.render(),
            factor: factor.render(),
        });
    }
    let order = BigUint::from(p).pow(deg as u32) - BigUint::one();
    Ok(ExtField {
        base,
        modulus: modulus.clone(),
        h: deg,
        order,
    })
}

impl ExtField {
    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    pub fn q(&self) -> u64 {
        self.base.p()
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// Extension degree h.
    pub fn degree(&self) -> usize {
        self.h
    }

    /// Multiplicative group order N = q^h - 1.
    pub fn group_order(&self) -> &BigUint {
        &self.order
    }

    /// Field size q^h when it fits a u128 (used for dense-table guards).
    pub fn size_u128(&self) -> Option<u128> {
        (&self.order + BigUint::one()).to_u128()
    }

    pub fn zero(&self) -> ExtElem {
        ExtElem { coeffs: vec![0; self.h] }
    }

    pub fn one(&self) -> ExtElem {
        let mut c = vec![0; self.h];
        c[0] = 1;
        ExtElem { coeffs: c }
    }

    /// The distinguished generator alpha = x mod h(x).
    pub fn alpha(&self) -> ExtElem {
        let mut c = vec![0; self.h];
        c[1] = 1;
        ExtElem { coeffs: c }
    }

    /// Embed a base-field residue.
    pub fn from_base(&self, v: u64) -> ExtElem {
        let mut c = vec![0; self.h];
        c[0] = v % self.q();
        ExtElem { coeffs: c }
    }

    /// Reduce an arbitrary polynomial over F_q into the field.
    pub fn from_poly(&self, f: &Poly) -> ExtElem {
        let r = f.rem(&self.modulus).expect("modulus nonzero");
        let mut c = vec![0u64; self.h];
        for (i, slot) in c.iter_mut().enumerate() {
            *slot = r.coeff(i);
        }
        ExtElem { coeffs: c }
    }

    /// alpha - a, the factor-base element attached to a in F_q.
    pub fn alpha_minus(&self, a: u64) -> ExtElem {
        let q = self.q();
        let mut c = vec![0; self.h];
        c[0] = (q - a % q) % q;
        c[1] = 1;
        ExtElem { coeffs: c }
    }

    pub fn to_poly(&self, e: &ExtElem) -> Poly {
        Poly::new(self.q(), e.coeffs.clone())
    }

    pub fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let q = self.q();
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % q)
            .collect();
        ExtElem { coeffs }
    }

    pub fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let q = self.q();
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + q - y) % q)
            .collect();
        ExtElem { coeffs }
    }

    pub fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        // Schoolbook product then reduction; h stays small at desk scale.
        let q = self.q() as u128;
        let mut prod = vec![0u128; 2 * self.h - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % q;
            }
        }
        let poly = Poly::new(self.q(), prod.into_iter().map(|v| v as u64).collect());
        self.from_poly(&poly)
    }

    pub fn inv(&self, a: &ExtElem) -> Result<ExtElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero { p: self.q() });
        }
        // N - 1 exponent route would work; extended Euclid is cheaper.
        let a_poly = self.to_poly(a);
        let (g, s) = poly_half_ext_gcd(&a_poly, &self.modulus)?;
        if g.degree() != Some(0) {
            return Err(Error::Internal(format!(
                "gcd({}, modulus) not constant in a field",
                a_poly.render()
            )));
        }
        let c_inv = PrimeField::new(self.q())?.elem(g.coeff(0)).inverse()?;
        Ok(self.from_poly(&s.scale(c_inv.value())))
    }

    pub fn div(&self, a: &ExtElem, b: &ExtElem) -> Result<ExtElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &ExtElem, e: &BigUint) -> ExtElem {
        use num_traits::Zero;
        let mut acc = self.one();
        if e.is_zero() {
            return acc;
        }
        let mut base = a.clone();
        for i in 0..e.bits() {
            if e.bit(i) {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
        }
        acc
    }

    pub fn pow_u64(&self, a: &ExtElem, e: u64) -> ExtElem {
        self.pow(a, &BigUint::from(e))
    }

    /// Multiplicative order of a nonzero element (divides N; computed by
    /// stripping prime factors of N).
    pub fn element_order(&self, a: &ExtElem) -> Result<BigUint> {
        if a.is_zero() {
            return Err(Error::DivisionByZero { p: self.q() });
        }
        let n = self
            .order
            .to_u64()
            .ok_or_else(|| Error::GuardExceeded {
                what: "element_order",
                needed: self.order.to_string(),
                limit: u64::MAX.to_string(),
            })?;
        let mut ord = n;
        for (p, _) in crate::arith::factorize_u64(n) {
            while ord % p == 0 && self.pow(a, &BigUint::from(ord / p)).is_one() {
                ord /= p;
            }
        }
        Ok(BigUint::from(ord))
    }

    /// True iff a generates the whole multiplicative group.
    pub fn is_primitive(&self, a: &ExtElem) -> Result<bool> {
        if a.is_zero() {
            return Ok(false);
        }
        let n = self
            .order
            .to_u64()
            .ok_or_else(|| Error::GuardExceeded {
                what: "is_primitive",
                needed: self.order.to_string(),
                limit: u64::MAX.to_string(),
            })?;
        for (p, _) in crate::arith::factorize_u64(n) {
            if self.pow(a, &BigUint::from(n / p)).is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Dense index of an element: sum of coeff_i * q^i. Requires q^h <= usize.
    pub fn elem_index(&self, a: &ExtElem) -> usize {
        let q = self.q() as usize;
        let mut idx = 0usize;
        for &c in a.coeffs.iter().rev() {
            idx = idx * q + c as usize;
        }
        idx
    }

    /// Inverse of `elem_index`.
    pub fn elem_from_index(&self, mut idx: usize) -> ExtElem {
        let q = self.q() as usize;
        let mut c = vec![0u64; self.h];
        for slot in c.iter_mut() {
            *slot = (idx % q) as u64;
            idx /= q;
        }
        ExtElem { coeffs: c }
    }

    /// All q^h elements in index order. Only for fields small enough to scan.
    pub fn elements(&self) -> impl Iterator<Item = ExtElem> + '_ {
        let size = self.size_u128().and_then(|s| usize::try_from(s).ok()).unwrap_or(usize::MAX);
        (0..size).map(move |i| self.elem_from_index(i))
    }
}

impl ExtElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Text form shared with the CLI: residue polynomial coefficients.
    pub fn render(&self) -> String {
        let mut c = self.coeffs.clone();
        while c.last() == Some(&0) {
            c.pop();
        }
        if c.is_empty() {
            return "0".into();
        }
        c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Extended Euclid returning (gcd, s) with s*a = gcd (mod m).
fn poly_half_ext_gcd(a: &Poly, m: &Poly) -> Result<(Poly, Poly)> {
    let p = a.p();
    let (mut r0, mut r1) = (a.clone(), m.clone());
    let (mut s0, mut s1) = (Poly::one(p), Poly::zero(p));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1)?;
        let s = s0.sub(&q.mul(&s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    Ok((r0, s0))
}
