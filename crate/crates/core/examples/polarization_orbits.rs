// Primitive vectors of square `2d` in the hyperbolic plane up to `O(U)`.

use latfm::fm_count::{fm_count_rho1, PolarizationDegree};
use latfm::rank2::polarization_orbits_in_u;

pub fn run_example() -> latfm::Result<()> {
    for d in [1u64, 15, 30] {
        let deg = PolarizationDegree::new(d)?;
        let o = polarization_orbits_in_u(deg)?;
        println!("d = {d}: {} orbits (2^(p(d)-1) = {})", o.count, fm_count_rho1(deg));
        for (rep, orbit) in o.representatives.iter().zip(&o.orbits) {
            println!("  {rep:?}: {orbit:?}");
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> latfm::Result<()> {
    run_example()
}
