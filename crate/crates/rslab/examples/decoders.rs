//! The three decoders side by side: Berlekamp-Welch unique decoding, the
//! exhaustive list oracle, and multiplicity-1 Sudan list decoding with its
//! completeness bound.
//!
//! Run with: cargo run --release --example decoders

use rslab::algebra::Poly;
use rslab::rscodec::{
    bw_decode, list_decode_bruteforce, rs_encode, sudan_list_decode, sudan_supported, RSParams,
    Word,
};

fn main() {
    println!("=== [5, 2]_5: encode, corrupt, repair ===\n");
    let params = RSParams::new(5, (0..5).collect(), 2).unwrap();
    let message = Poly::new(5, vec![1, 1]); // 1 + x
    let clean = rs_encode(&params, &message).unwrap();
    println!("message  m = {message}");
    println!("codeword   = ({})", clean.render());

    let mut symbols = clean.symbols().to_vec();
    symbols[3] = (symbols[3] + 2) % 5;
    let received = Word::new(5, symbols);
    println!("received   = ({})  (one symbol corrupted)", received.render());
    println!(
        "unique radius floor((n-k)/2) = {}, BW repairs: {}",
        params.unique_radius(),
        bw_decode(&params, &received).unwrap().unwrap()
    );

    println!("\n=== Listing beyond the unique radius: [7, 2]_7 at radius 3 ===\n");
    let params7 = RSParams::new(7, (0..7).collect(), 2).unwrap();
    let word = Word::new(7, vec![0, 1, 2, 3, 1, 1, 1]);
    println!("received = ({})", word.render());
    let brute = list_decode_bruteforce(&params7, &word, 3).unwrap();
    println!("\nbrute-force oracle (all 49 messages):");
    for m in &brute {
        println!("  {m}");
    }
    let sudan = sudan_list_decode(&params7, &word, 3).unwrap();
    println!("\nSudan (interpolation + y-roots):");
    for m in &sudan {
        println!("  {m}");
    }
    assert_eq!(brute, sudan);
    println!("\nidentical lists, as the completeness bound promises:");
    println!(
        "  radius 3 -> agreement 4, and sudan_supported(7, 2, 4) = {}",
        sudan_supported(7, 2, 4)
    );

    println!("\n=== The bound is a contract, not a suggestion ===\n");
    println!(
        "radius 4 -> agreement 3, sudan_supported(7, 2, 3) = {}",
        sudan_supported(7, 2, 3)
    );
    match sudan_list_decode(&params7, &word, 4) {
        Err(e) => println!("sudan at radius 4 refuses: {e}"),
        Ok(_) => unreachable!("must refuse past the bound"),
    }
    let full = list_decode_bruteforce(&params7, &word, 4).unwrap();
    println!("the brute-force oracle still answers: {} codewords in the ball", full.len());
}
