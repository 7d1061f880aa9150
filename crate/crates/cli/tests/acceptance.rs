//! The ten acceptance criteria, run one after another so that wall times are
//! not distorted by sibling tests. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any check or time limit is missed.

use cli::verify::{criterion, COUNT};

const SEED: u64 = 0;

fn main() {
    let mut failed = Vec::new();
    for n in 1..=COUNT {
        let c = criterion(n, SEED);
        println!("{}", c.line(true));
        if !c.passed() {
            failed.push(n);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {COUNT} criteria pass");
    } else {
        println!("acceptance: criteria {failed:?} FAIL");
        std::process::exit(1);
    }
}
