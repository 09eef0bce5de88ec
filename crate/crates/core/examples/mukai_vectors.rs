// Isotropic Mukai vectors `(r, h, s)` with `rs = d`, one per split of the
// prime-power blocks of `d`, and their classes under `r ↔ s`.

use latfm::fm_count::PolarizationDegree;
use latfm::mukai::{distinct_classes, embed_polarized, mukai_pairing, mukai_partitions};

pub fn run_example() -> latfm::Result<()> {
    let d = PolarizationDegree::new(30)?;
    let polarized = embed_polarized(d);
    let parts = mukai_partitions(d);
    println!("blocks of d = 30: {:?}", parts[0].0.blocks);
    for (p, v) in &parts {
        let x = polarized.embed(v)?;
        println!("  I = {:?}  J = {:?}  v = {v}  v.v = {}", p.i, p.j, mukai_pairing(&x, &x)?);
    }
    let vectors: Vec<_> = parts.iter().map(|(_, v)| *v).collect();
    for c in distinct_classes(&vectors) {
        println!("class of {}: {} members", c.representative, c.members.len());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> latfm::Result<()> {
    run_example()
}
