//! Rational solutions of odd-cyclic dressing chains and A2n Painlevé systems,
//! built from Maya cycles and verified in exact arithmetic.

pub mod exactalg;
pub mod maya;
pub mod hermite;
pub mod cycles;
pub mod numerics;
pub mod chains;
pub mod weyl;
pub mod cli;
