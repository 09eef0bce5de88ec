// Discriminant groups and forms of a few lattices, and the anti-isometry
// between `A_V` and `A_{V^⊥}` for a primitive `V` in the K3 lattice.

use latfm::finite_form::{discriminant_module, gamma_complement_map};
use latfm::lattice::{ints, Lattice};

pub fn run_example() -> latfm::Result<()> {
    let lattices = [
        ("L_{1,3}", Lattice::from_i64_rows(&[[2, 3], [3, 0]])?),
        ("<12>", Lattice::rank_one(12)?),
        ("A2(2)", Lattice::from_i64_rows(&[[4, -2], [-2, 4]])?),
        ("E8", Lattice::e8()),
    ];
    for (name, l) in &lattices {
        let a = discriminant_module(l)?;
        let q: Vec<String> = a.q_values().iter().map(|x| x.to_string()).collect();
        println!(
            "{name:8} det {:>3}  signature {}  A = {:?}  q = [{}]",
            l.determinant(),
            l.signature(),
            a.factors().iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            q.join(", ")
        );
    }

    // h = e + 3f spans a primitive <6> inside the K3 lattice
    let k3 = Lattice::k3();
    let mut h = ints(&[1, 3]);
    h.resize(22, 0.into());
    let v = k3.sublattice(&[h])?;
    let gamma = gamma_complement_map(&k3, &v)?;
    println!(
        "gamma: A_<6> (q = {}) -> A_(h^perp) (q = {}), image of the generator {:?}",
        gamma.source.q_values()[0],
        gamma.target.q_values()[0],
        gamma.map.images()[0].iter().map(|x| x.to_string()).collect::<Vec<_>>()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> latfm::Result<()> {
    run_example()
}
