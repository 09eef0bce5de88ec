// Three rank-2 lattices `L_{i², 83}` with isomorphic discriminant forms that
// are pairwise non-isometric, with the hypotheses showing their
// complements in the K3 and abelian lattices are isometric.

use latfm::fm_count::PolarizationDegree;
use latfm::rank2::{build_family, disc_groups_isomorphic, isometry_necessary_conditions, Ambient};

pub fn run_example() -> latfm::Result<()> {
    let w = disc_groups_isomorphic(1, 3, 4, 3)?.expect("1·2² ≡ 4 mod 9");
    let c = isometry_necessary_conditions(1, 4, 17)?;
    println!("L_{{1,3}} vs L_{{4,3}}: alpha = {}; L_{{1,17}} vs L_{{4,17}}: a2 = {}, b2 = {}", w.alpha, c.a2, c.b2);

    for ambient in [Ambient::K3, Ambient::Abelian] {
        let f = build_family(3, PolarizationDegree::new(1)?, ambient)?;
        println!("{ambient:?}: n = {}", f.n);
        for m in &f.members {
            println!("  L_{{{},{}}} gram {}", m.d(), m.n(), m.lattice().gram());
        }
        for ((w, c), a) in f.witnesses.iter().zip(&f.certificates).zip(&f.attestations) {
            println!(
                "  pair {}-{}: alpha {}, certificate verified {}, complements rank {} {} l = {}",
                w.i,
                w.j,
                w.witness.alpha,
                c.certificate.verify(),
                a.attestation.rank,
                a.attestation.signature,
                a.attestation.ell
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> latfm::Result<()> {
    run_example()
}
