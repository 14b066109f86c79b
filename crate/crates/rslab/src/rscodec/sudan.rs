//! Multiplicity-1 Sudan list decoding: bivariate interpolation followed by
//! exact y-root extraction (Roth-Ruckenstein recursion).
//!
//! Completeness bound: with agreement t = n - radius, the decoder finds every
//! message iff the number of monomials x^i y^j with i + j(k-1) <= t - 1
//! (y-degree capped at n when k = 1) exceeds n. That is exactly the room
//! needed for a nonzero interpolation polynomial Q with Q(x_r, y_r) = 0
//! whose weighted degree stays below the agreement, forcing Q(x, f(x)) = 0
//! for every message f that close. Outside the bound the call errors and the
//! caller must fall back to the brute-force oracle.
//!
//! Candidate roots are verified by substitution, then by an explicit
//! distance check, before they are returned.

use std::collections::BTreeSet;

use crate::algebra::Poly;
use crate::error::{Error, Result};
use crate::rscodec::{check_word, distance_to_codeword, gauss, padded_coeffs, RSParams, Word};

/// True iff the decoder is complete for this agreement (see module docs).
pub fn sudan_supported(n: usize, k: usize, agreement: i64) -> bool {
    if agreement < 1 || agreement as usize > n {
        return false;
    }
    let d = agreement as usize - 1;
    monomial_count(n, k, d) > n
}

fn monomial_count(n: usize, k: usize, d: usize) -> usize {
    if k == 1 {
        (d + 1) * (n + 1)
    } else {
        let lcap = d / (k - 1);
        (0..=lcap).map(|j| d - j * (k - 1) + 1).sum()
    }
}

fn monomials(n: usize, k: usize, d: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let lcap = if k == 1 { n } else { d / (k - 1) };
    for j in 0..=lcap {
        let imax = if k == 1 { d } else { d - j * (k - 1) };
        for i in 0..=imax {
            out.push((i, j));
        }
    }
    out
}

/// Q(x, y) stored as coefficients of powers of y.
#[derive(Clone)]
struct BiPoly {
    ys: Vec<Poly>,
    p: u64,
}

impl BiPoly {
    fn is_zero(&self) -> bool {
        self.ys.iter().all(|f| f.is_zero())
    }

    /// Divide out the largest common power of x.
    fn strip_x(&mut self) {
        let mut v = usize::MAX;
        for f in &self.ys {
            if f.is_zero() {
                continue;
            }
            let val = f.coeffs().iter().position(|&c| c != 0).unwrap();
            v = v.min(val);
        }
        if v == usize::MAX || v == 0 {
            return;
        }
        for f in self.ys.iter_mut() {
            if f.is_zero() {
                continue;
            }
            *f = Poly::new(self.p, f.coeffs()[v..].to_vec());
        }
    }

    /// Q(0, y) as a univariate polynomial in y.
    fn at_x0(&self) -> Poly {
        Poly::new(self.p, self.ys.iter().map(|f| f.coeff(0)).collect())
    }

    /// Q(x, x*y + gamma), same y-degree bound.
    fn shift(&self, gamma: u64) -> BiPoly {
        let p = self.p;
        let deg_y = self.ys.len();
        let binom = pascal_mod(deg_y, p);
        let mut out = vec![Poly::zero(p); deg_y];
        for (j, qj) in self.ys.iter().enumerate() {
            if qj.is_zero() {
                continue;
            }
            // (x*y + gamma)^j = sum_t C(j,t) gamma^(j-t) x^t y^t
            let mut gpow = vec![1u64; j + 1];
            for t in 1..=j {
                gpow[t] = (gpow[t - 1] as u128 * gamma as u128 % p as u128) as u64;
            }
            for t in 0..=j {
                let c = (binom[j][t] as u128 * gpow[j - t] as u128 % p as u128) as u64;
                if c == 0 {
                    continue;
                }
                // qj * c * x^t added to the y^t slot
                let mut shifted = vec![0u64; t];
                shifted.extend(qj.scale(c).coeffs());
                out[t] = out[t].add(&Poly::new(p, shifted));
            }
        }
        BiPoly { ys: out, p }
    }

    /// Q(x, f(x)).
    fn eval_at_poly(&self, f: &Poly) -> Poly {
        let p = self.p;
        let mut acc = Poly::zero(p);
        let mut fpow = Poly::one(p);
        for qj in &self.ys {
            acc = acc.add(&qj.mul(&fpow));
            fpow = fpow.mul(f);
        }
        acc
    }
}

fn pascal_mod(rows: usize, p: u64) -> Vec<Vec<u64>> {
    let mut b = vec![vec![0u64; rows + 1]; rows + 1];
    for j in 0..=rows {
        b[j][0] = 1;
        for t in 1..=j {
            b[j][t] = (b[j - 1][t - 1] + b[j - 1][t]) % p;
        }
    }
    b
}

/// All y-roots of Q of degree < k, by coefficient-at-a-time recursion.
fn y_roots(q: &BiPoly, k: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(k);
    rr_recurse(q.clone(), k, &mut prefix, &mut out);
    out
}

fn rr_recurse(mut q: BiPoly, k: usize, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if q.is_zero() {
        return;
    }
    q.strip_x();
    let r = q.at_x0();
    if r.is_zero() {
        return;
    }
    let roots = crate::algebra::roots_of(&r).expect("nonzero input");
    for gamma in roots {
        prefix.push(gamma);
        if prefix.len() == k {
            out.push(prefix.clone());
        } else {
            rr_recurse(q.shift(gamma), k, prefix, out);
        }
        prefix.pop();
    }
}

/// Sudan list decoding at multiplicity 1. Errors when the radius exceeds the
/// documented completeness bound; within the bound the output equals the
/// brute-force list.
pub fn sudan_list_decode(params: &RSParams, r: &Word, radius: usize) -> Result<Vec<Poly>> {
    check_word(params, r)?;
    let n = params.n();
    let k = params.k();
    let p = params.p();
    let agreement = n as i64 - radius as i64;
    if !sudan_supported(n, k, agreement) {
        return Err(Error::RadiusUnsupported {
            n,
            k,
            radius,
            agreement,
        });
    }
    let d = agreement as usize - 1;
    let mono = monomials(n, k, d);

    // One homogeneous constraint per point: sum c_(i,j) x^i y^j = 0.
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
    for (&x, &y) in params.s().iter().zip(r.symbols()) {
        let mut row = Vec::with_capacity(mono.len());
        for &(i, j) in &mono {
            let xi = powmod(x, i as u64, p);
            let yj = powmod(y, j as u64, p);
            row.push((xi as u128 * yj as u128 % p as u128) as u64);
        }
        rows.push(row);
    }
    let coeffs = gauss::kernel_vector(&rows, mono.len(), p).ok_or_else(|| {
        Error::Internal("interpolation system with more unknowns than equations had no kernel".into())
    })?;

    let deg_y = mono.iter().map(|&(_, j)| j).max().unwrap_or(0);
    let mut ys = vec![Poly::zero(p); deg_y + 1];
    for (&(i, j), &c) in mono.iter().zip(&coeffs) {
        if c == 0 {
            continue;
        }
        let mut mono_poly = vec![0u64; i + 1];
        mono_poly[i] = c;
        ys[j] = ys[j].add(&Poly::new(p, mono_poly));
    }
    let q = BiPoly { ys, p };
    debug_assert!(!q.is_zero());

    let mut found: BTreeSet<Vec<u64>> = BTreeSet::new();
    for cand in y_roots(&q, k.max(1)) {
        let f = Poly::new(p, cand);
        // verify by substitution, then by distance, before accepting
        if !q.eval_at_poly(&f).is_zero() {
            continue;
        }
        if distance_to_codeword(params, &f, r)? <= radius {
            found.insert(padded_coeffs(&f, k));
        }
    }
    Ok(found.into_iter().map(|c| Poly::new(p, c)).collect())
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}
