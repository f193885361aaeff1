//! Running CLI jobs in-process, with an on-disk algebra cache.

use clap::Parser;
use parabolic::cli::{run, JobSpec};

fn main() {
    let cache = std::env::temp_dir().join("parabolic-example-cache");
    let cache = cache.to_string_lossy();
    for args in [
        vec!["signature", "--p", "3", "--q", "1", "--g", "4"],
        vec!["invsum", "--pmax", "9"],
        vec!["frobenius", "--p", "7", "--q", "3", "--cache-dir", &cache],
    ] {
        let job = JobSpec::parse_from(std::iter::once("parabolic").chain(args.iter().copied()));
        let (outcome, bytes) = run(&job);
        println!("$ parabolic {} -> exit {}", args.join(" "), outcome.code);
        print!("{}", String::from_utf8_lossy(&bytes));
    }
}
