// The lattice `v^⊥ / Zv` for an isotropic Mukai vector, its algebraic class
// `(0, h, 2s)` and the image of the transcendental lattice.

use latfm::fm_count::PolarizationDegree;
use latfm::mukai::{embed_polarized, MukaiVector};

pub fn run_example() -> latfm::Result<()> {
    let d = PolarizationDegree::new(15)?;
    let polarized = embed_polarized(d);
    for (r, s) in [(1, 15), (3, 5)] {
        let v = MukaiVector::new(r, 1, s, d);
        let shadow = polarized.shadow(&v)?;
        let sum = shadow.summary();
        println!(
            "{v}: rank {} det {} even {} signature {}  ns^2 = {}  T = ns^perp: {}  T ≅ h^perp: {}",
            sum.rank,
            sum.determinant,
            sum.even,
            sum.signature,
            sum.ns_square,
            sum.complement_matches,
            sum.gram_matches
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> latfm::Result<()> {
    run_example()
}
