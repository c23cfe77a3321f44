//! Splitting copies of a disconnected bipartite pattern across two disjoint
//! cliques of unequal order.
//!
//! ```bash
//! cargo run --example two_cliques
//! ```

use chromapack::graph::GraphExpr;
use chromapack::packer::Packer;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = "K_{1,2}uK_{1,1}".parse::<GraphExpr>()?.build()?;
    let packer = Packer::new(&h)?;
    let split = packer.clique_split_solution();
    println!("component orders {:?}, coefficients {:?}", split.orders, split.coefficients);
    let plan = packer.pack_two_cliques(15, 1)?;
    packer.verify(&plan)?;
    for p in &plan.placements {
        println!("{:?} -> cliques {:?} x{}", p.sizes, p.assignment, p.count);
    }
    Ok(())
}
