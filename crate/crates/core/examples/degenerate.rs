//! Degenerate sequences: witnesses, reduction and isotropy.

use painleve_rational::chains::{build_from_sequence, to_painleve};
use painleve_rational::cycles::{degeneracies, parse_bracketed, reduce_degenerate, Degeneracy};
use painleve_rational::weyl::isotropy_check;

fn main() {
    for text in ["0[0],1[1],1[0],1[0],0[2]", "0[0],1[0],1[1],1[0],0[2]"] {
        let seq = parse_bracketed(text, 3).expect("sequence");
        let f = to_painleve(&build_from_sequence(&seq).expect("chain")).expect("painleve");
        let fs: Vec<_> = f.rational_f().expect("rational").iter().map(|x| x.to_string()).collect();
        println!("{seq} mu {:?}", seq.mu());
        println!("  f = ({})", fs.join(", "));
        for d in degeneracies(&seq) {
            let (i, j) = match d {
                Degeneracy::ConsecutiveRepeat { i, j } | Degeneracy::NonConsecutiveRepeat { i, j } => (i, j),
                Degeneracy::WrapAround => continue,
            };
            let r = reduce_degenerate(&seq, i, j).expect("pair");
            let g = to_painleve(&build_from_sequence(&r).expect("chain")).expect("painleve");
            let gs: Vec<_> = g.rational_f().expect("rational").iter().map(|x| x.to_string()).collect();
            println!("  {d:?}: reduces to {r} with f = ({})", gs.join(", "));
        }
        match isotropy_check(&seq).expect("isotropy") {
            Some(w) => println!("  fixed by {w}"),
            None => println!("  no isotropy word"),
        }
    }
}
