//! The bridge between subsets and decoding: psi(A) = prod (x - a) mod h(x)
//! sends g-subsets of S to field elements, and the codewords within
//! distance n - g of the derived received word correspond one-to-one to the
//! psi-fiber of the target element.
//!
//! Everything here is the worked q = 5, h(x) = x^2 + 2, S = F_5, g = 3
//! instance, finished by the exhaustive fiber-by-fiber bijection check.
//!
//! Run with: cargo run --release --example psi_correspondence

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rslab::algebra::{ext_field_make, Poly};
use rslab::reduction::{
    build_received_word, psi_census, psi_map, relation_from_codeword, InstanceSpec,
};
use rslab::rscodec::list_decode_bruteforce;

fn main() {
    let field = ext_field_make(5, &Poly::new(5, vec![2, 0, 1])).unwrap();
    println!("F_25 = F_5[x]/(x^2 + 2), alpha = x mod h(x)\n");

    println!("=== psi on small subsets ===\n");
    for subset in [vec![0u64], vec![0, 1], vec![0, 1, 2]] {
        let a: BTreeSet<u64> = subset.iter().copied().collect();
        let e = psi_map(&field, &a);
        println!("  psi({subset:?}) = {}", field.to_poly(&e));
    }
    println!("\nso f(alpha) = 1 has {{0,1,2}} in its fiber.\n");

    println!("=== The decoding instance for f = 1, g = 3 ===\n");
    let spec = InstanceSpec::new(field.clone(), (0..5).collect(), 3, Poly::constant(5, 1)).unwrap();
    let word = build_received_word(&spec);
    println!(
        "received word ( -f(a)/h(a) - a^(g-h) )_a = ({})",
        word.render()
    );
    println!(
        "code [n, g-h]_q = [{}, {}]_5, radius n - g = {}",
        spec.n(),
        spec.dimension(),
        spec.radius()
    );

    let list = list_decode_bruteforce(&spec.code_params(), &word, spec.radius()).unwrap();
    println!("\ncodewords within radius {}:", spec.radius());
    for m in &list {
        let rel = relation_from_codeword(&spec, m, &BigUint::from(0u32))
            .unwrap()
            .expect("in-radius codewords pull back to subsets");
        println!(
            "  m = {:<5} -> t = m + x -> f + t*h splits over A = {:?}",
            m.render(),
            rel.subset
        );
    }

    println!("\n=== The census: every fiber, exactly ===\n");
    let census = psi_census(&field, &[0, 1, 2, 3, 4], 3).unwrap();
    println!(
        "sum of fiber sizes = {} = C(5,3); support = {} of 25 elements; max fiber = {}",
        census.total(),
        census.support_size(),
        census.max_count()
    );
    println!("pigeonhole floor: C(5,3)/5^2 = 10/25, so some fiber holds >= 1\n");

    let mut verified = 0u32;
    for f_elem in field.elements() {
        let f_poly = field.to_poly(&f_elem);
        let spec = InstanceSpec::new(field.clone(), (0..5).collect(), 3, f_poly).unwrap();
        let word = build_received_word(&spec);
        let list = list_decode_bruteforce(&spec.code_params(), &word, spec.radius()).unwrap();
        assert_eq!(list.len() as u128, census.get(&f_elem));
        let mut seen = BTreeSet::new();
        for m in &list {
            let rel = relation_from_codeword(&spec, m, &BigUint::from(0u32))
                .unwrap()
                .expect("pullback is total on the in-radius list");
            assert!(seen.insert(rel.subset), "pullback must be injective");
        }
        verified += 1;
    }
    println!("checked all {verified} fibers of F_25: list size = fiber size,");
    println!("and the pullback m -> A is a bijection on every one of them.");
}
