//! Packing a lopsided complete bipartite host with a bipartite pattern whose
//! colourings have different class sizes.
//!
//! ```bash
//! cargo run --example bipartite_shift
//! ```

use chromapack::graph::GraphExpr;
use chromapack::packer::{Packer, Stage};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = "K_{1,2}uK_{1,4}".parse::<GraphExpr>()?.build()?;
    let packer = Packer::new(&h)?;
    let s = packer.shift_solution();
    println!("differences {:?}, coefficients {:?}, gcd {}", s.differences, s.coefficients, s.gcd);
    let plan = packer.pack_bipartite_shift(48, 1)?;
    packer.verify(&plan)?;
    for stage in [Stage::Equalize, Stage::Parity, Stage::Mirrored] {
        println!("{stage:?}: {} copies", plan.copies_in(stage));
    }
    println!("{}", plan.to_json());
    Ok(())
}
