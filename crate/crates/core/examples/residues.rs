//! Riccati identities of eigenfunctions and pole residues of a chain.

use painleve_rational::chains::{build_from_sequence, residue_properties, verify_riccati};
use painleve_rational::cycles::parse_bracketed;
use painleve_rational::maya::MayaDiagram;

fn main() {
    let m = MayaDiagram::from_members([1, 2, 4, 7, 8, 11]);
    for pos in -3..=3 {
        println!("riccati at flip {pos}: {}", verify_riccati(&m, pos).is_ok());
    }
    let chain = build_from_sequence(&parse_bracketed("4[2],3[1],1[2],2[2],0[0]", 3).expect("sequence")).expect("chain");
    let r = residue_properties(&chain, 1e-8).expect("residues");
    for p in &r.poles {
        println!("pole {:+.6} {:+.6}i residues {:?} err {:.1e}", p.location[0], p.location[1], p.residues, p.integrality_error);
    }
    println!("residue properties ok: {}", r.report.is_ok());
}
