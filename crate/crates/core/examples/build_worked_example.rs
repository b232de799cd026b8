//! The (5,3) worked example: cycle, parameters, Wronskian labels, chain and A4 system.

use painleve_rational::chains::{build_chain, rat_string, to_painleve, verify_chain, verify_painleve};
use painleve_rational::cycles::{build_cycle, parse_bracketed};
use painleve_rational::hermite::wronskian_label;

fn main() {
    let seq = parse_bracketed("4[2],3[1],1[2],2[2],0[0]", 3).expect("valid sequence");
    let cycle = build_cycle(&seq).expect("oddly coloured");
    println!("sequence {seq}");
    println!("mu    {:?}", cycle.mu);
    println!("sigma {:?}", cycle.sigma);
    for (i, m) in cycle.diagrams[..cycle.p()].iter().enumerate() {
        println!("M{i} -> {}", wronskian_label(m));
    }
    let chain = build_chain(&cycle).expect("chain");
    let a: Vec<_> = chain.a().iter().map(rat_string).collect();
    println!("a     {}", a.join(" "));
    for (i, w) in chain.w().iter().enumerate() {
        println!("w{i} = {w}");
    }
    let f = to_painleve(&chain).expect("painleve");
    let alpha: Vec<_> = f.alpha.iter().map(rat_string).collect();
    println!("alpha {}", alpha.join(" "));
    println!("chain ok: {}", verify_chain(&chain).is_ok());
    println!("painleve ok: {}", verify_painleve(&f).is_ok());
}
