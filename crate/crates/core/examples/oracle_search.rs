//! Exact perfect-packing search, cross-checked against a brute-force
//! reference on a small host.
//!
//! ```bash
//! cargo run --example oracle_search
//! ```

use chromapack::graph::{Graph, GraphExpr};
use chromapack::oracle::{has_perfect_packing, orbits, verify_packing, Decision, Mode, SearchOptions};
use chromapack::reference;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = "C_4".parse::<GraphExpr>()?.build()?;
    println!("orbits of C_4: {:?}", orbits(&h));
    let host = Graph::complete_multipartite(&[4, 4])?;
    match has_perfect_packing(&host, &h, Mode::Find, &SearchOptions::default())? {
        Decision::Yes(Some(p)) => {
            verify_packing(&host, &h, &p)?;
            print!("{p}");
        }
        other => println!("{other:?}"),
    }
    let lopsided = Graph::complete_multipartite(&[5, 3])?;
    let fast = has_perfect_packing(&lopsided, &h, Mode::Decide, &SearchOptions::default())?;
    println!("K_{{5,3}}: search {:?}, reference {}", fast, reference::has_perfect_packing(&lopsided, &h));
    Ok(())
}
