//! Translation invariance of rescaled pseudo-Wronskians.

use painleve_rational::hermite::{pseudo_wronskian, rescaled};
use painleve_rational::maya::MayaDiagram;

fn main() {
    let m = MayaDiagram::from_parts([-3, -1].into_iter().collect(), [0, 2, 5].into_iter().collect());
    let base = rescaled(&m);
    for k in -3..=3 {
        let t = m.translate(k);
        println!("k={k:+} index {} degree {:?} same: {}", t.index(), pseudo_wronskian(&t).poly.degree(), rescaled(&t) == base);
    }
}
