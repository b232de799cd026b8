//! s0 and s4 on the (1,3,1) seed, on sequences, cycles and solutions.

use painleve_rational::chains::{build_chain, rat_string, to_painleve};
use painleve_rational::cycles::{build_cycle, parse_bracketed};
use painleve_rational::weyl::{act_on_cycle, act_s, backlund, backlund_painleve, Generator};

fn main() {
    let seed = parse_bracketed("0[0],0[1],0[1],0[1],0[2]", 3).expect("seed");
    let cycle = build_cycle(&seed).expect("cycle");
    let chain = build_chain(&cycle).expect("chain");
    let f = to_painleve(&chain).expect("painleve");
    for i in [0, 4] {
        let g = Generator::S(i);
        let moved = act_s(i, &seed).expect("action");
        let c = act_on_cycle(g, &cycle).expect("cycle action");
        let direct = build_chain(&c).expect("chain");
        let b = backlund(g, &chain).expect("backlund");
        let fb = backlund_painleve(g, &f).expect("backlund");
        let fs: Vec<_> = fb.rational_f().expect("rational").iter().map(|x| x.to_string()).collect();
        let alpha: Vec<_> = fb.alpha.iter().map(rat_string).collect();
        println!("{g}: {seed} -> {moved}, flips {:?}", c.mu);
        println!("  f = ({} | {})", fs.join(", "), alpha.join(", "));
        println!("  backlund matches rebuilt chain: {}", b.same_solution(&direct));
    }
}
