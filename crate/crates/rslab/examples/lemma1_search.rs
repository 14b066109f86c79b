//! Exhaustive search for integral triples (n, g, h) satisfying both
//!     C(n, g) > n^(h-c)   and   g^2 > n (g - h)
//! over the box h < 88, n < 15664. At offset c = 0 the box is empty; that
//! emptiness is what separates the g-hat threshold from sqrt(nk).
//!
//! The scan prunes the n-range through the second inequality, pre-filters
//! the first with floating logs, and settles everything inside the float
//! margin with exact big integers.
//!
//! Run with: cargo run --release --example lemma1_search

use rslab::radius::{lemma1_is_solution, lemma1_search_threaded};

fn main() {
    println!("=== The paper box: h < 88, n < 15664, offset c = 0 ===\n");
    let report = lemma1_search_threaded(88, 15664, 0, 4).unwrap();
    println!("candidates scanned : {}", report.candidates_scanned);
    println!("exact fallbacks    : {}", report.exact_fallbacks);
    println!("solutions          : {}", report.solutions.len());
    assert!(report.solutions.is_empty());

    println!("\nEvery fallback is a triple that lands exactly on the boundary:");
    let nm = &report.near_misses;
    println!("near-misses: {} triples, all resolved exactly", nm.len());
    let all_family = nm.iter().all(|m| m.h == 1 && m.n == m.g + 1 && !m.holds_exactly);
    println!(
        "all of the form (n, g, h) = (g+1, g, 1)? {all_family}  [C(g+1, g) = g+1 = n^1 exactly]"
    );
    println!("first three: {:?}", &nm[..3.min(nm.len())]);
    println!("\nSo the strict inequality (1) is tight along an infinite family;");
    println!("with >= instead of > the box would contain {} solutions.", nm.len());

    println!("\n=== Single-triple probes ===\n");
    for (n, g, h) in [(10u64, 5u64, 1u64), (100, 50, 3), (20, 19, 1)] {
        let is = lemma1_is_solution(n, g, h, 0).unwrap();
        println!("  (n={n}, g={g}, h={h}) solution at c=0? {is}");
    }

    println!("\n=== The generalized inequalities: offset c > 0 on a small box ===\n");
    for c in 1..=3 {
        let r = lemma1_search_threaded(6, 120, c, 1).unwrap();
        println!(
            "  c={c}: {} solutions in h < 6, n < 120 (finitely many, as claimed)",
            r.solutions.len()
        );
        if let Some(first) = r.solutions.first() {
            println!("       first: {first:?}");
        }
    }
}
