//! Seed solutions for every odd-part composition of 3 and 5.

use painleve_rational::chains::{build_chain, rat_string, to_painleve};
use painleve_rational::cycles::{build_cycle, odd_compositions};
use painleve_rational::weyl::{seed_sequence, seed_solution, SeedSignature};

fn main() {
    for p in [3, 5] {
        for k in (1..=p).step_by(2) {
            for parts in odd_compositions(p, k) {
                let sig = SeedSignature::new(parts).expect("odd parts");
                let seq = seed_sequence(&sig);
                let f = seed_solution(&sig).expect("seed");
                let built = to_painleve(&build_chain(&build_cycle(&seq).expect("cycle")).expect("chain")).expect("painleve");
                let fs: Vec<_> = f.rational_f().expect("rational").iter().map(|x| x.to_string()).collect();
                let alpha: Vec<_> = f.alpha.iter().map(rat_string).collect();
                println!("{sig} {seq}: f = ({} | {}) two paths agree: {}", fs.join(", "), alpha.join(", "), built == f);
            }
        }
    }
}
