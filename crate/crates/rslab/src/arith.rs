//! Exact integer helpers shared across the crate: primality, factoring,
//! binomial coefficients, and float views of big integers.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Deterministic primality test by trial division. Desk scale: intended for
/// moduli up to ~2^40; cost is O(sqrt(n)).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    if n % 3 == 0 {
        return n == 3;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Exact binomial coefficient C(n, g).
pub fn binomial(n: u64, g: u64) -> BigUint {
    if g > n {
        return BigUint::zero();
    }
    let g = g.min(n - g);
    let mut acc = BigUint::one();
    for i in 0..g {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Exact factorial n!.
pub fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// log2 of a positive big integer, accurate to ~1e-15 relative.
pub fn log2_biguint(x: &BigUint) -> f64 {
    assert!(!x.is_zero(), "log2 of zero");
    let bits = x.bits();
    if bits <= 53 {
        return (x.to_u64().unwrap() as f64).log2();
    }
    // Take the top 64 bits for the mantissa.
    let shift = bits - 53;
    let top = (x >> shift).to_u64().unwrap();
    (top as f64).log2() + shift as f64
}

/// Smallest integer s with s*s >= n.
pub fn ceil_sqrt(n: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    let s = n.sqrt();
    if &(&s * &s) == n {
        s
    } else {
        s + 1u32
    }
}

/// Factor n into prime powers, ascending by prime. Trial division up to 10^6
/// then Pollard's rho (Brent variant) for the remaining cofactor.
/// Only supports n < 2^64; desk-scale group orders stay well below that.
pub fn factorize_u64(n: u64) -> Vec<(u64, u32)> {
    let mut n = n;
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in [2u64, 3, 5] {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    let mut d = 7u64;
    let mut inc = [4u64, 2, 4, 2, 4, 6, 2, 6].iter().cycle();
    while d <= 1_000_000 && d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += inc.next().unwrap();
    }
    if n > 1 {
        let mut stack = vec![n];
        let mut primes: Vec<u64> = Vec::new();
        while let Some(m) = stack.pop() {
            if m == 1 {
                continue;
            }
            if is_prime_u64(m) || m < 1_000_000_000_000 && miller_rabin_u64(m) {
                primes.push(m);
                continue;
            }
            let f = pollard_rho(m);
            stack.push(f);
            stack.push(m / f);
        }
        primes.sort_unstable();
        let mut i = 0;
        while i < primes.len() {
            let p = primes[i];
            let mut e = 0;
            while i < primes.len() && primes[i] == p {
                e += 1;
                i += 1;
            }
            out.push((p, e));
        }
    }
    out.sort_unstable_by_key(|&(p, _)| p);
    out
}

fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_u64(acc, b, m);
        }
        b = mulmod_u64(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for n < 3.3 * 10^24 using the standard base set;
/// n here is < 2^64 so the first seven bases suffice.
fn miller_rabin_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent-cycle Pollard rho; returns a nontrivial factor of composite n.
fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mulmod_u64(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Reads `RSLAB_GUARD_OVERRIDE`; when set, every enumeration guard becomes
/// max(default, override).
pub fn guard_limit(default: u128) -> u128 {
    match std::env::var("RSLAB_GUARD_OVERRIDE") {
        Ok(v) => match v.trim().parse::<u128>() {
            Ok(x) => default.max(x),
            Err(_) => default,
        },
        Err(_) => default,
    }
}
