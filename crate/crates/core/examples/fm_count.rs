// Fourier–Mukai partner counts for Picard number one, by the closed form
// and by counting double cosets, plus a genus sum over a rank-2 lattice.

use latfm::fm_count::{
    distinct_prime_count, fm_count_genus_sum, fm_count_rho1, fm_count_rho1_via_cosets, HodgeActionImage,
    PolarizationDegree,
};
use latfm::lattice::Lattice;
use latfm::oracle::SearchBudget;

pub fn run_example() -> latfm::Result<()> {
    println!("{:>5} {:>4} {:>6} {:>8}", "2d", "p(d)", "|FM|", "cosets");
    for d in [1u64, 2, 6, 12, 15, 30, 105, 210] {
        let deg = PolarizationDegree::new(d)?;
        println!(
            "{:>5} {:>4} {:>6} {:>8}",
            deg.degree(),
            distinct_prime_count(d),
            fm_count_rho1(deg),
            fm_count_rho1_via_cosets(deg)?
        );
    }

    let l13 = Lattice::from_i64_rows(&[[2, 3], [3, 0]])?;
    let sum = fm_count_genus_sum(&[l13], &HodgeActionImage::plus_minus_identity(), SearchBudget::new(10, 1_000_000)?)?;
    println!(
        "genus {{L_{{1,3}}}}: |O(A)| = {}, image of O(L) has {} elements, count {} (entry bound {})",
        sum.terms[0].automorphisms, sum.terms[0].lattice_image, sum.total, sum.budget.entry_bound
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> latfm::Result<()> {
    run_example()
}
