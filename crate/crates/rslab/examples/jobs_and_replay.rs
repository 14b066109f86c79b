//! Jobs, reports, and replay determinism: every command is a JobSpec, every
//! run a RunReport, and a seeded run replays byte-identically.
//!
//! Run with: cargo run --release --example jobs_and_replay

use rslab::cli::{dispatch, JobSpec, OutputMode};

fn job_from_json(text: &str) -> JobSpec {
    serde_json::from_str(text).unwrap()
}

fn main() {
    println!("=== A job is a flat JSON object ===\n");
    let job = job_from_json(r#"{ "command": "ghat", "n": 10, "k": 2, "q": 11 }"#);
    println!("parsed: {job:?}\n");
    let report = dispatch(&job).unwrap();
    println!("g-hat = {}", report.results["ghat"]);
    println!(
        "exact boundary ratio at the threshold: {}/{}",
        report.results["ratio_at_ghat"][0], report.results["ratio_at_ghat"][1]
    );

    println!("\n=== Round-trip is a fixpoint ===\n");
    let serialized = serde_json::to_string(&job).unwrap();
    println!("re-serialized: {serialized}");
    let again: JobSpec = serde_json::from_str(&serialized).unwrap();
    assert_eq!(job, again);
    println!("parse(serialize(parse(x))) == parse(x) holds\n");

    println!("=== Seeded replay: byte-identical results ===\n");
    let dlog = JobSpec {
        command: "dlog".into(),
        params: [
            ("q", "7"),
            ("h-poly", "1,0,1"),
            ("base", "3,1"),
            ("target", "5,2"),
            ("variant", "list"),
            ("g", "4"),
            ("decoder", "brute"),
            ("max-trials", "4000"),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect(),
        seed: Some(7),
        output: OutputMode::Json,
    };
    match dispatch(&dlog) {
        Ok(first) => {
            let second = dispatch(&dlog).unwrap();
            let a = serde_json::to_string(&first.results).unwrap();
            let b = serde_json::to_string(&second.results).unwrap();
            println!("run 1 exponent: {}", first.results["exponent"]);
            println!("run 2 exponent: {}", second.results["exponent"]);
            println!("results byte-identical: {}", a == b);
            assert_eq!(a, b);
        }
        Err(e) => println!("(this base happens to be invalid here: {e})"),
    }

    println!("\n=== Errors carry machine-readable categories ===\n");
    for bad in [
        // missing parameter: usage, exit 2
        r#"{ "command": "ghat", "n": 10, "k": 2 }"#,
        // C(101, 40) blows the census guard: guard, exit 3
        r#"{ "command": "census", "q": 101, "h-poly": "99,0,1", "g": 40 }"#,
        // unknown command: usage, exit 2
        r#"{ "command": "frobnicate" }"#,
    ] {
        let job = job_from_json(bad);
        match dispatch(&job) {
            Err(e) => println!("  {:<12} -> exit {}: {e}", e.category().as_str(), e.category().exit_code()),
            Ok(_) => println!("  (accepted)"),
        }
    }
}
