//! The two instruments behind the group-size / list-size duality: the order
//! of the subgroup generated by {alpha - a : a in S}, measured two
//! independent ways, next to the census of the heaviest psi fiber (the
//! densest decoding ball).
//!
//! Run with: cargo run --release --example group_order_duality

use rslab::algebra::{ext_field_make, random_irreducible};
use rslab::products::{group_order, GroupOrderMethod};
use rslab::reduction::psi_census;

fn main() {
    let field = ext_field_make(5, &random_irreducible(5, 2, 8).unwrap()).unwrap();
    println!(
        "F_25 = F_5[x]/({}), N = {}\n",
        field.modulus(),
        field.group_order()
    );

    println!("=== Group order as S grows (both methods must agree) ===\n");
    let mut prev_order = None;
    for end in 0..=5u64 {
        let s: Vec<u64> = (0..end).collect();
        let closure = group_order(&field, &s, GroupOrderMethod::Closure).unwrap();
        let dlog = group_order(&field, &s, GroupOrderMethod::DlogGcd).unwrap();
        assert_eq!(closure.order, dlog.order);
        println!(
            "  S = {:?}: |<alpha - S>| = {} (closure = dlog-gcd)",
            s, closure.order
        );
        if let Some(prev) = prev_order {
            // monotone: a larger S generates a supergroup
            assert!((&closure.order % &prev) == 0u32.into());
        }
        prev_order = Some(closure.order);
    }

    println!("\n=== The other side of the duality: ball density ===\n");
    let census = psi_census(&field, &[0, 1, 2, 3, 4], 3).unwrap();
    println!(
        "psi census at g = 3: C(5,3) = {} subsets spread over {} elements",
        census.total(),
        census.support_size()
    );
    println!("heaviest fiber (= most codewords in one radius-(n-g) ball): {}", census.max_count());

    println!("\nLarge generated group <-> spread-out fibers; tiny group <-> heavy");
    println!("fibers. These are the two exact meters for watching that trade-off");
    println!("at desk scale; neither side is asserted, both are measured.");

    println!("\n=== A subgroup example where S generates a proper part ===\n");
    // alpha - 0 alone can generate a proper subgroup
    let field4 = ext_field_make(2, &rslab::algebra::Poly::new(2, vec![1, 1, 1])).unwrap();
    let r = group_order(&field4, &[0], GroupOrderMethod::Closure).unwrap();
    println!(
        "  F_4, S = {{0}}: |<alpha>| = {} = N, alpha is primitive here",
        r.order
    );
    let r = group_order(&field4, &[], GroupOrderMethod::DlogGcd).unwrap();
    println!("  F_4, S = {{}}: trivial group, order {}", r.order);
}
