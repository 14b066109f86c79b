//! Irreducibility testing, random irreducibles, root extraction, and the
//! distinct-linear-factor splitter.
//!
//! The irreducibility test is the Frobenius-gcd criterion, run as a factor
//! search so a reducible input always yields an explicit witness factor.
//! Everything here is exact; randomness only affects running time of the
//! equal-degree splits.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::algebra::{Poly, PrimeField};
use crate::error::{Error, Result};

/// Scan roots directly below this field size, otherwise use equal-degree
/// splitting.
const ROOT_SCAN_LIMIT: u64 = 1 << 14;

/// Exact irreducibility over F_p. Degree 0 (units) and the zero polynomial
/// are not irreducible; leading units are normalized away.
pub fn irreducible_test(f: &Poly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::Usage("irreducibility of the zero polynomial".into()));
    }
    if f.degree() == Some(0) {
        return Ok(false);
    }
    Ok(find_nontrivial_factor(&monicize(f)?)?.is_none())
}

/// Monic irreducible of exact degree h, deterministic for a given seed.
pub fn random_irreducible(p: u64, h: usize, seed: u64) -> Result<Poly> {
    PrimeField::new(p)?;
    if h < 1 {
        return Err(Error::Usage("degree must be >= 1".into()));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    loop {
        let mut coeffs: Vec<u64> = (0..h).map(|_| rng.gen_range(0..p)).collect();
        coeffs.push(1);
        let cand = Poly::new(p, coeffs);
        if irreducible_test(&cand)? {
            return Ok(cand);
        }
    }
}

/// Returns the root set A iff P = prod_{a in A} (x - a) with pairwise
/// distinct roots; absence (None) covers both non-splitting and repeated
/// roots. P must be monic of degree >= 1.
pub fn linear_split(poly: &Poly) -> Result<Option<BTreeSet<u64>>> {
    let deg = match poly.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::Usage("linear_split needs degree >= 1".into())),
    };
    if !poly.is_monic() {
        return Err(Error::Usage("linear_split needs a monic input".into()));
    }
    let p = poly.p();
    // P splits into distinct linear factors iff P divides x^p - x,
    // i.e. x^p = x (mod P).
    let xp = Poly::x(p).pow_mod(&BigUint::from(p), poly)?;
    if xp != Poly::x(p).rem(poly)? {
        return Ok(None);
    }
    let roots = distinct_roots(poly)?;
    debug_assert_eq!(roots.len(), deg);
    Ok(Some(roots.into_iter().collect()))
}

/// All distinct roots of f in F_p (multiplicities ignored).
pub(crate) fn distinct_roots(f: &Poly) -> Result<Vec<u64>> {
    let p = f.p();
    if f.is_zero() {
        return Err(Error::Usage("root extraction from the zero polynomial".into()));
    }
    if f.degree() == Some(0) {
        return Ok(vec![]);
    }
    if p <= ROOT_SCAN_LIMIT {
        let mut roots = Vec::new();
        for a in 0..p {
            if f.eval_u64(a) == 0 {
                roots.push(a);
            }
        }
        return Ok(roots);
    }
    // Strip to the distinct-linear part, then split it recursively.
    let f = monicize(f)?;
    let xp = Poly::x(p).pow_mod(&BigUint::from(p), &f)?;
    let lin = f.gcd(&xp.sub(&Poly::x(p)));
    let mut roots = Vec::new();
    let mut rng = ChaCha12Rng::seed_from_u64(0x720075);
    split_linear_product(&lin, &mut roots, &mut rng)?;
    roots.sort_unstable();
    Ok(roots)
}

/// g is a monic product of distinct linear factors; appends its roots.
fn split_linear_product(g: &Poly, roots: &mut Vec<u64>, rng: &mut ChaCha12Rng) -> Result<()> {
    let p = g.p();
    match g.degree() {
        None | Some(0) => Ok(()),
        Some(1) => {
            // monic x + c0 -> root -c0
            roots.push((p - g.coeff(0)) % p);
            Ok(())
        }
        Some(_) => {
            // Cantor-Zassenhaus: gcd((x+d)^((p-1)/2) - 1, g) splits g with
            // probability >= 1/2 per random shift d. p is odd here (p = 2
            // falls under the scan limit).
            loop {
                let delta = rng.gen_range(0..p);
                let shifted = Poly::new(p, vec![delta, 1]);
                let w = shifted.pow_mod(&BigUint::from((p - 1) / 2), g)?;
                let d = g.gcd(&w.sub(&Poly::one(p)));
                if let Some(dd) = d.degree() {
                    if dd > 0 && dd < g.degree().unwrap() {
                        let (quot, rem) = g.div_rem(&d)?;
                        debug_assert!(rem.is_zero());
                        split_linear_product(&d, roots, rng)?;
                        split_linear_product(&quot, roots, rng)?;
                        return Ok(());
                    }
                }
            }
        }
    }
}

/// Finds a nontrivial monic factor of monic f, or None when f is
/// irreducible. Exact: squarefree reduction, then distinct-degree gcds up to
/// deg/2, then equal-degree splitting when a stratum covers all of f.
pub(crate) fn find_nontrivial_factor(f: &Poly) -> Result<Option<Poly>> {
    let p = f.p();
    let m = f.degree().expect("nonzero input");
    if m <= 1 {
        return Ok(None);
    }

    let deriv = f.derivative();
    if deriv.is_zero() {
        // f(x) = g(x^p) = g(x)^p over F_p; g is a proper factor.
        let mut g_coeffs = Vec::new();
        let mut i = 0;
        while i <= m {
            g_coeffs.push(f.coeff(i));
            i += p as usize;
        }
        return Ok(Some(Poly::new(p, g_coeffs)));
    }
    let d = f.gcd(&deriv);
    if let Some(dd) = d.degree() {
        if dd > 0 && dd < m {
            return Ok(Some(d));
        }
    }

    // f squarefree from here. Walk x^(p^d) mod f.
    let mut w = Poly::x(p).rem(f)?;
    for d in 1..=m / 2 {
        w = w.pow_mod(&BigUint::from(p), f)?;
        let g = f.gcd(&w.sub(&Poly::x(p)));
        match g.degree() {
            None | Some(0) => continue,
            Some(gd) if gd < m => return Ok(Some(g)),
            Some(_) => {
                // Every irreducible factor has degree exactly d (smaller
                // degrees were excluded at earlier strata); split one off.
                return Ok(Some(equal_degree_split(f, d)?));
            }
        }
    }
    Ok(None)
}

/// Splits monic squarefree f whose irreducible factors all have degree d
/// (with at least two of them); returns one proper factor.
fn equal_degree_split(f: &Poly, d: usize) -> Result<Poly> {
    let p = f.p();
    let m = f.degree().unwrap();
    let mut rng = ChaCha12Rng::seed_from_u64(0xed5);
    loop {
        let u = Poly::new(p, (0..m).map(|_| rng.gen_range(0..p)).collect());
        if u.degree().is_none() {
            continue;
        }
        let g0 = f.gcd(&u);
        if let Some(gd) = g0.degree() {
            if gd > 0 && gd < m {
                return Ok(g0);
            }
        }
        let candidate = if p == 2 {
            // Trace map into F_2: T(u) = u + u^2 + ... + u^(2^(d-1)).
            let mut acc = u.clone().rem(f)?;
            let mut term = u.clone().rem(f)?;
            for _ in 1..d {
                term = term.mul(&term).rem(f)?;
                acc = acc.add(&term);
            }
            acc
        } else {
            // u^((p^d - 1)/2) - 1 vanishes on about half the factors.
            let e = (BigUint::from(p).pow(d as u32) - BigUint::from(1u32)) / BigUint::from(2u32);
            u.pow_mod(&e, f)?.sub(&Poly::one(p))
        };
        let g = f.gcd(&candidate);
        if let Some(gd) = g.degree() {
            if gd > 0 && gd < m {
                return Ok(g);
            }
        }
    }
}

fn monicize(f: &Poly) -> Result<Poly> {
    if f.is_monic() {
        return Ok(f.clone());
    }
    let inv = PrimeField::new(f.p())?.elem(f.leading_coeff()).inverse()?;
    Ok(f.scale(inv.value()))
}
