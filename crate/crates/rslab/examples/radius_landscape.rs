//! The decoding-radius landscape of an [n, k]_q Reed-Solomon code:
//! the pigeonhole codeword-count bound C(n,g)/q^(g-k), its threshold
//! g-hat(n,k,q), and the gap separating g-hat from the sqrt(nk) horizon
//! where list decoders are known to work.
//!
//! Run with: cargo run --release --example radius_landscape

use rslab::radius::{ghat, isqrt_u64, jh_exact_cmp, jh_log2, lemma1_part2_probe, Cmp1};

fn main() {
    println!("=== The radius landscape of [10, 2]_11 ===\n");

    let (n, k, q) = (10u64, 2u64, 11u64);
    println!("g : log2( C(n,g) / q^(g-k) )   exact side");
    for g in k..=n {
        let approx = jh_log2(n, k, g, q).unwrap();
        let exact = jh_exact_cmp(n, k, g, q).unwrap();
        let side = match exact {
            Cmp1::GT1 => "ball with >1 codeword guaranteed",
            Cmp1::EQ1 => "exactly 1 on average",
            Cmp1::LT1 => "bound silent below 1",
        };
        println!("{g:2} : {approx:+9.4}                  {side}");
    }

    let r = ghat(n, k, q).unwrap();
    println!("\ng-hat(10, 2, 11) = {}", r.ghat);
    println!(
        "  boundary: C(n,{}) / q^{} = {}/{} >= 1 > {}/{} = C(n,{}) / q^{}",
        r.ghat - 1,
        r.ghat - 1 - k,
        r.ratio_below.numer(),
        r.ratio_below.denom(),
        r.ratio_at_ghat.numer(),
        r.ratio_at_ghat.denom(),
        r.ghat,
        r.ghat - k,
    );
    println!(
        "  hardness radius n - g-hat = {}; decoders reach n - sqrt(nk) ~ {:.2}",
        n - r.ghat,
        n as f64 - (n as f64 * k as f64).sqrt()
    );

    println!("\n=== The gap: g-hat never escapes sqrt(nk) + 1 (q > n) ===\n");
    for (n, k, q) in [(16u64, 4u64, 17u64), (32, 8, 37), (64, 16, 67), (64, 32, 101)] {
        let r = ghat(n, k, q).unwrap();
        let bound = isqrt_u64(n * k) + 1;
        println!(
            "  n={n:2} k={k:2} q={q:3}: g-hat = {:2} <= floor(sqrt(nk)) + 1 = {bound:2}, gap to k: {}",
            r.ghat,
            r.ghat - k
        );
        assert!(r.ghat <= bound);
    }

    println!("\n=== The equality edge at q = n ===\n");
    println!("C(n, n-1) = n = n^1 makes the comparison land exactly on 1:");
    for n in [3u64, 4, 5, 6] {
        let cmp = jh_exact_cmp(n, n - 2, n - 1, n).unwrap();
        println!("  n={n}: C({n},{}) vs {n}^1 -> {:?}", n - 1, cmp);
        assert_eq!(cmp, Cmp1::EQ1);
    }
    println!("so at q = n the threshold can sit one step past the sqrt bound:");
    let r = ghat(4, 2, 4).unwrap();
    println!(
        "  g-hat(4, 2, 4) = {} while floor(sqrt(8)) + 1 = {}",
        r.ghat,
        isqrt_u64(8) + 1
    );

    println!("\n=== The exponential decay probe (asymptotic, rate 1/2, c1 = 1/4) ===\n");
    println!("(1/n) log2( C(n,g)/n^(g-k) ) at g = k + (n-k)/4:");
    let mut n = 40u64;
    while n <= 2560 {
        let v = lemma1_part2_probe(n, n / 2, 0.25).unwrap();
        println!("  n={n:5}: {v:+.5} {}", if v < 0.0 { "(past the crossover)" } else { "" });
        n *= 2;
    }
    println!("\nThe probe starts positive and crosses zero near n ~ 200:");
    println!("the 2^(-c2 n) bound is real but kicks in only past the crossover.");
}
