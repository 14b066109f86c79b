//! Dense univariate polynomials over F_p.
//!
//! Coefficients are ascending-degree residues with no trailing zeros; the
//! zero polynomial has an empty coefficient vector and `degree() == None`
//! (the "minus infinity" sentinel). Degrees in this crate stay small enough
//! that schoolbook multiplication is the right tool.

use crate::algebra::{FieldElem, PrimeField};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    /// Ascending degree, normalized: empty iff zero, last entry nonzero.
    coeffs: Vec<u64>,
    p: u64,
}

impl Poly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Poly {
        let mut c: Vec<u64> = coeffs.into_iter().map(|v| v % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { coeffs: c, p }
    }

    pub fn from_elems(field: &PrimeField, coeffs: &[FieldElem]) -> Poly {
        Poly::new(field.p(), coeffs.iter().map(|e| e.value()).collect())
    }

    pub fn zero(p: u64) -> Poly {
        Poly { coeffs: vec![], p }
    }

    pub fn one(p: u64) -> Poly {
        Poly::new(p, vec![1])
    }

    pub fn constant(p: u64, c: u64) -> Poly {
        Poly::new(p, vec![c])
    }

    /// The monomial x.
    pub fn x(p: u64) -> Poly {
        Poly::new(p, vec![0, 1])
    }

    /// x^n.
    pub fn x_pow(p: u64, n: usize) -> Poly {
        let mut c = vec![0u64; n + 1];
        c[n] = 1;
        Poly::new(p, c)
    }

    /// x - a.
    pub fn linear_root(p: u64, a: u64) -> Poly {
        Poly::new(p, vec![(p - a % p) % p, 1])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// None encodes degree(0) = -infinity.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn leading_coeff(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == 1
    }

    fn fe(&self, v: u64) -> FieldElem {
        PrimeField::new(self.p).expect("modulus validated at construction").elem(v)
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.p, rhs.p);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (self.coeff(i) + rhs.coeff(i)) % self.p;
        }
        Poly::new(self.p, out)
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.p, rhs.p);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (self.coeff(i) + self.p - rhs.coeff(i)) % self.p;
        }
        Poly::new(self.p, out)
    }

    pub fn neg(&self) -> Poly {
        Poly::zero(self.p).sub(self)
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.p, rhs.p);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.p);
        }
        let mut out = vec![0u128; self.coeffs.len() + rhs.coeffs.len() - 1];
        let p = self.p as u128;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % p;
            }
        }
        Poly::new(self.p, out.into_iter().map(|v| v as u64).collect())
    }

    pub fn scale(&self, c: u64) -> Poly {
        let c = c % self.p;
        Poly::new(
            self.p,
            self.coeffs
                .iter()
                .map(|&a| ((a as u128 * c as u128) % self.p as u128) as u64)
                .collect(),
        )
    }

    /// Euclidean division: self = q * d + r with deg r < deg d.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        debug_assert_eq!(self.p, d.p);
        if d.is_zero() {
            return Err(Error::DivisionByZero { p: self.p });
        }
        let dd = d.degree().unwrap();
        let lead_inv = self.fe(d.leading_coeff()).inverse()?.value();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; self.coeffs.len().saturating_sub(dd)];
        let p = self.p as u128;
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = (rem[rem.len() - 1] as u128 * lead_inv as u128) % p;
            if factor != 0 {
                quot[k] = factor as u64;
                for (j, &dc) in d.coeffs.iter().enumerate() {
                    let t = (factor * dc as u128) % p;
                    let idx = k + j;
                    rem[idx] = ((rem[idx] as u128 + p - t) % p) as u64;
                }
            }
            rem.pop();
        }
        Ok((Poly::new(self.p, quot), Poly::new(self.p, rem)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.div_rem(d)?.1)
    }

    /// Monic gcd.
    pub fn gcd(&self, rhs: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let inv = self.fe(a.leading_coeff()).inverse().unwrap().value();
        a.scale(inv)
    }

    /// self^e mod m by square-and-multiply.
    pub fn pow_mod(&self, e: &num_bigint::BigUint, m: &Poly) -> Result<Poly> {
        use num_traits::Zero;
        let mut acc = Poly::one(self.p).rem(m)?;
        if e.is_zero() {
            return Ok(acc);
        }
        let mut base = self.rem(m)?;
        for i in 0..e.bits() {
            if e.bit(i) {
                acc = acc.mul(&base).rem(m)?;
            }
            base = base.mul(&base).rem(m)?;
        }
        Ok(acc)
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(self.p);
        }
        let out: Vec<u64> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| ((i as u128 % self.p as u128) * c as u128 % self.p as u128) as u64)
            .collect();
        Poly::new(self.p, out)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: FieldElem) -> FieldElem {
        debug_assert_eq!(self.p, x.p());
        let p = self.p as u128;
        let xv = x.value() as u128;
        let mut acc = 0u128;
        for &c in self.coeffs.iter().rev() {
            acc = (acc * xv + c as u128) % p;
        }
        self.fe(acc as u64)
    }

    pub fn eval_u64(&self, x: u64) -> u64 {
        let f = PrimeField::new(self.p).unwrap();
        self.eval(f.elem(x)).value()
    }

    /// Parse the crate's text format: comma-separated decimal coefficients,
    /// ascending degree ("1,0,2" = 1 + 2x^2).
    pub fn parse(p: u64, s: &str) -> Result<Poly> {
        let mut coeffs = Vec::new();
        for part in s.split(',') {
            let t = part.trim();
            let v: u64 = t
                .parse()
                .map_err(|_| Error::Usage(format!("bad coefficient {t:?} in polynomial {s:?}")))?;
            coeffs.push(v);
        }
        Ok(Poly::new(p, coeffs))
    }

    /// Render in the same text format. The zero polynomial renders as "0".
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c == 1 => write!(f, "x")?,
                1 => write!(f, "{c}x")?,
                _ if c == 1 => write!(f, "x^{i}")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Lagrange interpolation: the unique polynomial of degree < #points through
/// the given points. Repeated x-coordinates are rejected.
pub fn interpolate(field: &PrimeField, points: &[(FieldElem, FieldElem)]) -> Result<Poly> {
    let p = field.p();
    for (i, (xi, _)) in points.iter().enumerate() {
        for (xj, _) in points.iter().skip(i + 1) {
            if xi == xj {
                return Err(Error::RepeatedX { x: xi.value() });
            }
        }
    }
    let mut acc = Poly::zero(p);
    for (i, (xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = Poly::constant(p, 1);
        let mut denom = field.one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(&Poly::linear_root(p, xj.value()));
            denom = denom.mul(&xi.sub(xj)?)?;
        }
        let scale = yi.div(&denom)?;
        acc = acc.add(&basis.scale(scale.value()));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn normalization_and_degree() {
        let f = Poly::new(5, vec![1, 2, 0, 0]);
        assert_eq!(f.degree(), Some(1));
        assert_eq!(Poly::zero(5).degree(), None);
        assert_eq!(Poly::new(5, vec![0, 0]).degree(), None);
        assert!(Poly::new(5, vec![3, 0, 1]).is_monic());
    }

    #[test]
    fn div_rem_identity() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(3);
        for p in [2u64, 5, 7, 257] {
            for _ in 0..200 {
                let a = Poly::new(p, (0..rng.gen_range(0..8)).map(|_| rng.gen_range(0..p)).collect());
                let b = Poly::new(p, (0..rng.gen_range(1..5)).map(|_| rng.gen_range(0..p)).collect());
                if b.is_zero() {
                    continue;
                }
                let (q, r) = a.div_rem(&b).unwrap();
                assert_eq!(q.mul(&b).add(&r), a);
                if !r.is_zero() {
                    assert!(r.degree().unwrap() < b.degree().unwrap());
                }
            }
        }
    }

    #[test]
    fn worked_division_example() {
        // x^3 + 2x^2 + 2x = (x+2)(x^2+2) + 1 over F_5
        let p = 5;
        let big = Poly::new(p, vec![0, 2, 2, 1]);
        let h = Poly::new(p, vec![2, 0, 1]);
        let (q, r) = big.div_rem(&h).unwrap();
        assert_eq!(q, Poly::new(p, vec![2, 1]));
        assert_eq!(r, Poly::constant(p, 1));
    }

    #[test]
    fn interpolate_line_and_constant() {
        let f5 = PrimeField::new(5).unwrap();
        // {(0,1),(1,2)} -> x + 1
        let line = interpolate(&f5, &[(f5.elem(0), f5.elem(1)), (f5.elem(1), f5.elem(2))]).unwrap();
        assert_eq!(line, Poly::new(5, vec![1, 1]));
        for c in 0..5 {
            let k = interpolate(&f5, &[(f5.elem(0), f5.elem(c))]).unwrap();
            assert_eq!(k, Poly::constant(5, c));
        }
    }

    #[test]
    fn interpolate_rejects_repeated_x() {
        let f5 = PrimeField::new(5).unwrap();
        let r = interpolate(&f5, &[(f5.elem(2), f5.elem(1)), (f5.elem(2), f5.elem(3))]);
        assert!(matches!(r, Err(Error::RepeatedX { x: 2 })));
    }

    #[test]
    fn interpolate_evaluate_roundtrip() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(11);
        let f7 = PrimeField::new(7).unwrap();
        for _ in 0..100 {
            // 4 random points with distinct x over F_7
            let mut xs: Vec<u64> = (0..7).collect();
            for i in (1..xs.len()).rev() {
                xs.swap(i, rng.gen_range(0..=i));
            }
            let pts: Vec<_> = xs[..4]
                .iter()
                .map(|&x| (f7.elem(x), f7.elem(rng.gen_range(0..7))))
                .collect();
            let poly = interpolate(&f7, &pts).unwrap();
            assert!(poly.degree().map_or(0, |d| d + 1) <= 4);
            for (x, y) in &pts {
                assert_eq!(poly.eval(*x), *y);
            }
        }
    }

    #[test]
    fn interpolation_inverts_evaluation_on_low_degree() {
        // interpolate . evaluate = identity for degree < #points
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(5);
        let f = PrimeField::new(11).unwrap();
        for _ in 0..100 {
            let deg = rng.gen_range(0..5usize);
            let poly = Poly::new(11, (0..=deg).map(|_| rng.gen_range(0..11)).collect());
            let pts: Vec<_> = (0..deg as u64 + 1)
                .map(|x| (f.elem(x), poly.eval(f.elem(x))))
                .collect();
            assert_eq!(interpolate(&f, &pts).unwrap(), poly);
        }
    }

    #[test]
    fn parse_render_roundtrip() {
        let f = Poly::parse(5, "1,0,2").unwrap();
        assert_eq!(f, Poly::new(5, vec![1, 0, 2]));
        assert_eq!(f.render(), "1,0,2");
        assert_eq!(Poly::zero(5).render(), "0");
        assert_eq!(Poly::parse(5, "0").unwrap(), Poly::zero(5));
        assert!(Poly::parse(5, "1,x").is_err());
    }
}
