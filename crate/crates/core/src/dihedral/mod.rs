//! Dihedral Artin groups and the complexes `X_n` built from them.

mod audit;
mod garside;
mod xn;

pub use audit::*;
pub use garside::*;
pub use xn::*;
