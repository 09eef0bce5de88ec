// Building lattices, taking sublattices and orthogonal complements, and
// reading them from JSON.

use latfm::json::parse_lattice;
use latfm::lattice::{ints, Lattice};

pub fn run_example() -> latfm::Result<()> {
    let k3 = Lattice::k3();
    println!(
        "K3 lattice: rank {}, det {}, even {}, signature {}",
        k3.rank(),
        k3.determinant(),
        k3.is_even(),
        k3.signature()
    );

    let uu = Lattice::hyperbolic_plane().direct_sum(&Lattice::hyperbolic_plane());
    let s = uu.sublattice(&[ints(&[1, 1, 0, 0]), ints(&[0, 5, 1, 0])])?;
    let t = s.orthogonal_complement();
    println!("S in U+U: gram {}, primitive {}", s.induced_gram(), s.is_primitive());
    println!("S^perp:   gram {}", t.induced_gram());

    let l = parse_lattice(r#"{"rank": 2, "gram": [[2, 3], [3, 0]]}"#)?;
    println!("parsed: {l}  serialized: {}", serde_json::to_string(&l).expect("serializable"));
    Ok(())
}

#[allow(dead_code)]
fn main() -> latfm::Result<()> {
    run_example()
}
