//! All ten acceptance criteria, one PASS/FAIL line each. Criteria 1-9 run
//! through the library; criterion 10 runs `kloc verify --seed 0` twice and
//! compares the reports byte for byte.

use std::process::Command;
use std::time::Instant;

use kloc::verify::{run_criterion, CRITERIA};
use kloc::Caps;

fn verify_output() -> (bool, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_kloc"))
        .args(["verify", "--seed", "0"])
        .output()
        .expect("kloc runs");
    (out.status.success(), out.stdout)
}

fn main() {
    let caps = Caps::default();
    let mut failed = Vec::new();
    for id in 1..=9u8 {
        let start = Instant::now();
        let checks = run_criterion(id, 0, &caps).expect("criterion exists");
        let bad: Vec<_> = checks.iter().filter(|c| !c.pass).collect();
        let verdict = if bad.is_empty() && !checks.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        println!(
            "{verdict} criterion {id}: {} ({} checks, {:.2}s)",
            CRITERIA[id as usize - 1],
            checks.len(),
            start.elapsed().as_secs_f64()
        );
        for c in bad.iter().take(5) {
            println!("    {}: expected {}, got {}", c.name, c.expected, c.actual);
        }
        if verdict == "FAIL" {
            failed.push(id);
        }
    }

    let start = Instant::now();
    let (ok_a, first) = verify_output();
    let (ok_b, second) = verify_output();
    let identical = !first.is_empty() && first == second;
    let verdict = if identical && ok_a && ok_b { "PASS" } else { "FAIL" };
    println!(
        "{verdict} criterion 10: {} ({} bytes, exit ok: {}, {:.2}s)",
        CRITERIA[9],
        first.len(),
        ok_a && ok_b,
        start.elapsed().as_secs_f64()
    );
    if verdict == "FAIL" {
        failed.push(10);
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
