//! Signature counts and sequence enumeration.

use painleve_rational::cycles::{enumerate_sequences, fibonacci, signature_count};

fn main() {
    for p in (1..=13).step_by(2) {
        let counts: Vec<u64> = (1..=p).step_by(2).map(|k| signature_count(p, k)).collect();
        println!("p={p}: {counts:?} total {} F_{p}={}", counts.iter().sum::<u64>(), fibonacci(p));
    }
    let seqs: Vec<_> = enumerate_sequences(3, 3, 1).expect("shape").collect();
    println!("p=3 k=3 values <= 1: {} standard sequences", seqs.len());
    for s in seqs.iter().take(5) {
        println!("  {s}");
    }
}
