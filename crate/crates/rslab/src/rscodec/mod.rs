//! Reed-Solomon encoding and the three decoders used as reduction oracles:
//! exhaustive list decoding (the ground-truth oracle), Berlekamp-Welch
//! unique decoding, and a multiplicity-1 Sudan list decoder.
//!
//! Decoder outputs are always returned in canonical order (lexicographic on
//! coefficient sequences padded to length k) so runs are reproducible, and
//! every decoder re-verifies its outputs by a distance check.

mod bw;
pub(crate) mod gauss;
mod sudan;

pub use bw::bw_decode;
pub use sudan::{sudan_list_decode, sudan_supported};

use crate::algebra::{Poly, PrimeField};
use crate::arith::guard_limit;
use crate::error::{Error, Result};

/// Default ceiling on q^k for exhaustive message enumeration.
pub const BRUTE_FORCE_GUARD: u128 = 100_000_000;

/// An [n, k]_q Reed-Solomon code over an explicit evaluation set S.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RSParams {
    field: PrimeField,
    s: Vec<u64>,
    k: usize,
}

impl RSParams {
    pub fn new(p: u64, s: Vec<u64>, k: usize) -> Result<RSParams> {
        let field = PrimeField::new(p)?;
        if s.is_empty() {
            return Err(Error::Usage("evaluation set must be nonempty".into()));
        }
        for &a in &s {
            if a >= p {
                return Err(Error::Usage(format!("evaluation point {a} not a residue mod {p}")));
            }
        }
        let mut sorted = s.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Usage("evaluation points must be pairwise distinct".into()));
        }
        if k < 1 || k > s.len() {
            return Err(Error::Usage(format!("dimension k={k} outside 1..={}", s.len())));
        }
        Ok(RSParams { field, s, k })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn s(&self) -> &[u64] {
        &self.s
    }

    pub fn n(&self) -> usize {
        self.s.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Minimum distance n - k + 1.
    pub fn min_distance(&self) -> usize {
        self.n() - self.k + 1
    }

    /// Unique-decoding radius floor((n-k)/2).
    pub fn unique_radius(&self) -> usize {
        (self.n() - self.k) / 2
    }
}

/// A length-n word, position-aligned with the evaluation set of its code.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    symbols: Vec<u64>,
    p: u64,
}

impl Word {
    pub fn new(p: u64, symbols: Vec<u64>) -> Word {
        Word {
            symbols: symbols.into_iter().map(|v| v % p).collect(),
            p,
        }
    }

    pub fn symbols(&self) -> &[u64] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn hamming_distance(&self, other: &Word) -> usize {
        debug_assert_eq!(self.symbols.len(), other.symbols.len());
        self.symbols
            .iter()
            .zip(&other.symbols)
            .filter(|(a, b)| a != b)
            .count()
    }

    pub fn parse(p: u64, s: &str) -> Result<Word> {
        let mut symbols = Vec::new();
        for part in s.split(',') {
            let t = part.trim();
            let v: u64 = t
                .parse()
                .map_err(|_| Error::Usage(format!("bad symbol {t:?} in word {s:?}")))?;
            symbols.push(v % p);
        }
        Ok(Word { symbols, p })
    }

    pub fn render(&self) -> String {
        self.symbols
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

pub(crate) fn check_word(params: &RSParams, w: &Word) -> Result<()> {
    if w.len() != params.n() {
        return Err(Error::Usage(format!(
            "word length {} does not match n={}",
            w.len(),
            params.n()
        )));
    }
    Ok(())
}

/// Evaluate the message polynomial on S. Messages must have degree < k.
pub fn rs_encode(params: &RSParams, m: &Poly) -> Result<Word> {
    if let Some(d) = m.degree() {
        if d >= params.k {
            return Err(Error::DegreeBound {
                degree: d.to_string(),
                bound: params.k,
            });
        }
    }
    let symbols = params.s.iter().map(|&a| m.eval_u64(a)).collect();
    Ok(Word {
        symbols,
        p: params.p(),
    })
}

/// Distance from a word to the codeword of message m.
pub fn distance_to_codeword(params: &RSParams, m: &Poly, r: &Word) -> Result<usize> {
    check_word(params, r)?;
    let mut d = 0;
    for (&a, &y) in params.s.iter().zip(r.symbols()) {
        if m.eval_u64(a) != y {
            d += 1;
        }
    }
    Ok(d)
}

/// Messages of degree < k in canonical (lexicographic) coefficient order.
pub(crate) fn messages_lex(params: &RSParams) -> impl Iterator<Item = Poly> + '_ {
    let p = params.p();
    let k = params.k;
    let total = (p as u128).pow(k as u32);
    (0..total).map(move |idx| {
        // most-significant digit is c_0 so the stream is lex on (c_0,...,c_{k-1})
        let mut coeffs = vec![0u64; k];
        let mut v = idx;
        for i in (0..k).rev() {
            coeffs[i] = (v % p as u128) as u64;
            v /= p as u128;
        }
        Poly::new(p, coeffs)
    })
}

/// Pad coefficients to length k for canonical ordering keys.
pub(crate) fn padded_coeffs(m: &Poly, k: usize) -> Vec<u64> {
    let mut c = m.coeffs().to_vec();
    c.resize(k, 0);
    c
}

/// The ground-truth list decoder: enumerates all q^k messages and returns
/// exactly those within the radius. Guarded by q^k <= 10^8 by default.
pub fn list_decode_bruteforce(params: &RSParams, r: &Word, radius: usize) -> Result<Vec<Poly>> {
    list_decode_bruteforce_with_guard(params, r, radius, guard_limit(BRUTE_FORCE_GUARD))
}

pub fn list_decode_bruteforce_with_guard(
    params: &RSParams,
    r: &Word,
    radius: usize,
    guard: u128,
) -> Result<Vec<Poly>> {
    check_word(params, r)?;
    let space = (params.p() as u128).saturating_pow(params.k as u32);
    if space > guard {
        return Err(Error::GuardExceeded {
            what: "brute-force message enumeration",
            needed: space.to_string(),
            limit: guard.to_string(),
        });
    }
    let mut out = Vec::new();
    for m in messages_lex(params) {
        if distance_to_codeword(params, &m, r)? <= radius {
            out.push(m);
        }
    }
    // already lex-ordered by construction
    Ok(out)
}
