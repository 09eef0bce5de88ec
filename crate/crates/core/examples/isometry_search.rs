// The bounded isometry oracle and its three outcomes.

use latfm::lattice::Lattice;
use latfm::oracle::{find_isometry_bounded, IsometrySearch, SearchBudget};

pub fn run_example() -> latfm::Result<()> {
    let budget = SearchBudget::default();
    let cases = [
        ("L_{1,5} vs L_{6,5}", [[2, 5], [5, 0]], [[12, 5], [5, 0]]),
        ("L_{1,5} vs L_{2,5}", [[2, 5], [5, 0]], [[4, 5], [5, 0]]),
        ("L_{1,5} vs L_{1,7}", [[2, 5], [5, 0]], [[2, 7], [7, 0]]),
    ];
    for (name, a, b) in cases {
        let (a, b) = (Lattice::from_i64_rows(&a)?, Lattice::from_i64_rows(&b)?);
        match find_isometry_bounded(&a, &b, budget)? {
            IsometrySearch::Found(w) => println!("{name}: isometric via {}", w.matrix()),
            IsometrySearch::NotIsometric(why) => println!("{name}: not isometric ({why:?})"),
            IsometrySearch::NotFoundWithinBounds => {
                println!("{name}: nothing with entries <= {}", budget.entry_bound)
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> latfm::Result<()> {
    run_example()
}
