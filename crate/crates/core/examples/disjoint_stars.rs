//! Greedy disjoint stars against the guaranteed count.
//!
//! ```bash
//! cargo run --example disjoint_stars
//! ```

use chromapack::graph::GraphExpr;
use chromapack::oracle::{greedy_disjoint_stars, guaranteed_star_count};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = "K_{6,6}".parse::<GraphExpr>()?.build()?;
    for i in 1..=3 {
        let stars = greedy_disjoint_stars(&g, i)?;
        println!("i={i}: {} stars (guaranteed {})", stars.len(), guaranteed_star_count(&g, i));
        for s in &stars {
            println!("  {} -> {:?}", s.center, s.leaves);
        }
    }
    Ok(())
}
