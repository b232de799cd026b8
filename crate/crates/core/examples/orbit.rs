//! Seed and group word reaching a sequence, replayed.

use painleve_rational::cycles::parse_bracketed;
use painleve_rational::weyl::orbit_report;

fn main() {
    for text in ["4[2],3[1],1[2],2[2],0[0]", "2[0],3[1],0[2]"] {
        let seq = parse_bracketed(text, 3).expect("sequence");
        let r = orbit_report(&seq).expect("orbit");
        println!("{seq}: seed {} word {} replay {} ok={}", r.seed, r.word, r.replay, r.replay_ok);
    }
}
