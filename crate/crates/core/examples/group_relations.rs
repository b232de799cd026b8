//! Group relations on random sequences.

use painleve_rational::weyl::verify_group_relations;

fn main() {
    for n in [1, 2] {
        for k in [1, 3, 5] {
            match verify_group_relations(n, k, 100, 1) {
                Ok(rep) => {
                    let (literal, core): (Vec<_>, Vec<_>) = rep.failures().partition(|c| c.name.ends_with("literal"));
                    println!("n={n} k={k}: {} checks, {} failures, literal (s_i s_i+1)^(2n+1) failures {}", rep.checks.len(), core.len(), literal.len());
                }
                Err(e) => println!("n={n} k={k}: {e}"),
            }
        }
    }
}
