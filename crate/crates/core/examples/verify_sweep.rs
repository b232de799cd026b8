//! Build and verify every standard sequence of one shape.
//!
//! cargo run --release --example verify_sweep -- 5 3 2 [jobs]

use painleve_rational::chains::sweep;
use painleve_rational::cycles::enumerate_sequences;

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (p, k, bound) = match args[..] {
        [p, k, b, ..] => (p, k as u32, b as i64),
        _ => (5, 3, 1),
    };
    let jobs = args.get(3).copied().unwrap_or(1);
    let seqs: Vec<_> = enumerate_sequences(p, k, bound).expect("valid shape").collect();
    let s = sweep(&seqs, jobs).expect("thread pool");
    println!(
        "p={p} k={k} bound={bound}: {} sequences, {} failures, {:.2}s wall on {} threads",
        s.instances,
        s.failures.len(),
        s.wall_seconds,
        s.threads
    );
    for f in &s.failures {
        println!("  {}: {}", f.sequence, f.reason);
    }
}
