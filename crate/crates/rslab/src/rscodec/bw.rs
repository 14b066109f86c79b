//! Berlekamp-Welch unique decoding.
//!
//! Solves for an error locator E (monic, degree e0 = floor((n-k)/2)) and
//! N = m*E (degree <= e0 + k - 1) satisfying y_i * E(x_i) = N(x_i) at every
//! position. Any solution of the linear system yields the same ratio N/E, so
//! one particular solution plus exact division recovers the message; a final
//! distance check makes the decoder unconditionally sound.

use crate::algebra::Poly;
use crate::error::Result;
use crate::rscodec::{check_word, distance_to_codeword, gauss, RSParams, Word};

/// Returns the unique message within floor((n-k)/2) of r, if one exists.
pub fn bw_decode(params: &RSParams, r: &Word) -> Result<Option<Poly>> {
    check_word(params, r)?;
    let p = params.p();
    let n = params.n();
    let k = params.k();
    let e0 = params.unique_radius();

    // Unknowns: E_0..E_{e0-1} (E is monic of degree e0), N_0..N_{e0+k-1}.
    let n_unknowns = e0 + e0 + k;
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
    let mut rhs: Vec<u64> = Vec::with_capacity(n);
    for (&a, &y) in params.s().iter().zip(r.symbols()) {
        let mut row = vec![0u64; n_unknowns];
        // y * sum E_j a^j  -  sum N_j a^j  =  -y * a^e0
        let mut apow = 1u64;
        for item in row.iter_mut().take(e0) {
            *item = mulmod(y, apow, p);
            apow = mulmod(apow, a, p);
        }
        // apow is now a^e0
        let lead = mulmod(y, apow, p);
        rhs.push((p - lead) % p);
        let mut apow_n = 1u64;
        for item in row.iter_mut().skip(e0).take(e0 + k) {
            *item = (p - apow_n % p) % p;
            apow_n = mulmod(apow_n, a, p);
        }
        rows.push(row);
    }

    let Some(x) = gauss::solve_particular(&rows, &rhs, p) else {
        return Ok(None);
    };
    let mut e_coeffs = x[..e0].to_vec();
    e_coeffs.push(1); // monic
    let locator = Poly::new(p, e_coeffs);
    let numerator = Poly::new(p, x[e0..].to_vec());

    let (m, rem) = numerator.div_rem(&locator)?;
    if !rem.is_zero() {
        return Ok(None);
    }
    if m.degree().map_or(false, |d| d >= k) {
        return Ok(None);
    }
    if distance_to_codeword(params, &m, r)? > e0 {
        return Ok(None);
    }
    Ok(Some(m))
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rscodec::{list_decode_bruteforce, rs_encode};
    use rand::{Rng, SeedableRng};

    fn full_params(p: u64, k: usize) -> RSParams {
        RSParams::new(p, (0..p).collect(), k).unwrap()
    }

    #[test]
    fn zero_errors_roundtrip() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(1);
        let params = full_params(7, 3);
        for _ in 0..100 {
            let m = Poly::new(7, (0..3).map(|_| rng.gen_range(0..7)).collect());
            let r = rs_encode(&params, &m).unwrap();
            assert_eq!(bw_decode(&params, &r).unwrap(), Some(m));
        }
    }

    #[test]
    fn single_corruption_worked_example() {
        // F_5, n=5, k=2: one corrupted symbol of encode(x+1) is repaired
        let params = full_params(5, 2);
        let m = Poly::new(5, vec![1, 1]);
        let clean = rs_encode(&params, &m).unwrap();
        for pos in 0..5 {
            for delta in 1..5 {
                let mut symbols = clean.symbols().to_vec();
                symbols[pos] = (symbols[pos] + delta) % 5;
                let r = Word::new(5, symbols);
                assert_eq!(bw_decode(&params, &r).unwrap(), Some(m.clone()));
            }
        }
    }

    #[test]
    fn far_word_returns_absent() {
        // construct a word with no codeword within the unique radius by
        // brute-force census
        let params = full_params(5, 2);
        let radius = params.unique_radius();
        let mut found = None;
        'outer: for idx in 0..5u64.pow(5) {
            let mut v = idx;
            let mut symbols = vec![0u64; 5];
            for s in symbols.iter_mut() {
                *s = v % 5;
                v /= 5;
            }
            let w = Word::new(5, symbols);
            if list_decode_bruteforce(&params, &w, radius).unwrap().is_empty() {
                found = Some(w);
                break 'outer;
            }
        }
        let w = found.expect("a deep hole exists for [5,2]_5");
        assert_eq!(bw_decode(&params, &w).unwrap(), None);
    }

    #[test]
    fn randomized_agreement_with_oracle() {
        // bw(encode(m) + e) = m whenever weight(e) <= floor((n-k)/2)
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(2);
        for _ in 0..1000 {
            let p = [5u64, 7, 11][rng.gen_range(0..3)];
            let k = rng.gen_range(1..=3usize);
            let params = full_params(p, k);
            let m = Poly::new(p, (0..k).map(|_| rng.gen_range(0..p)).collect());
            let mut symbols = rs_encode(&params, &m).unwrap().symbols().to_vec();
            let errs = rng.gen_range(0..=params.unique_radius());
            let mut positions: Vec<usize> = (0..params.n()).collect();
            for i in (1..positions.len()).rev() {
                positions.swap(i, rng.gen_range(0..=i));
            }
            for &pos in &positions[..errs] {
                symbols[pos] = (symbols[pos] + rng.gen_range(1..p)) % p;
            }
            let r = Word::new(p, symbols);
            assert_eq!(bw_decode(&params, &r).unwrap(), Some(m));
        }
    }
}
