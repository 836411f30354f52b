//! Fixtures shared by the benchmarks.

use gamma2_core::arc::{LatticeSumSpec, PreparedLattice};
use rug::Float;

pub fn lattice(k: usize, n_max: u64) -> PreparedLattice {
    PreparedLattice::new(LatticeSumSpec::new(k, n_max, 128).expect("valid spec"))
        .expect("valid lattice")
}

pub fn angle(theta: f64) -> Float {
    Float::with_val(128, theta)
}
