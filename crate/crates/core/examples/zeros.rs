//! Zeros of generalized Hermite polynomials and of a τ-function, as CSV.
//!
//! cargo run --example zeros -- 3 4

use painleve_rational::cycles::{build_cycle, parse_bracketed};
use painleve_rational::hermite::{generalized_hermite, tau, wronskian_label};
use painleve_rational::numerics::{complex_roots, roots_of_int, zeros_csv};

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (m, n) = match args[..] {
        [m, n, ..] => (m, n),
        _ => (3, 3),
    };
    let roots = complex_roots(&generalized_hermite(m, n), 256).expect("roots");
    println!("H_{{{m},{n}}}: {} roots, residual bound {:e}", roots.roots.len(), roots.residual_bound);
    print!("{}", zeros_csv(&roots));
    let c = build_cycle(&parse_bracketed("4[2],3[1],1[2],2[2],0[0]", 3).expect("sequence")).expect("cycle");
    let t = tau(&c.diagrams[0]);
    let roots = roots_of_int(&t.primitive, 256).expect("roots");
    println!("{}: {} roots", wronskian_label(&c.diagrams[0]), roots.roots.len());
}
