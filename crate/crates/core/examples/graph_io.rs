//! Generator expressions, graph6 and edge lists.
//!
//! ```bash
//! cargo run --example graph_io
//! ```

use chromapack::graph::{parse_graph, Graph, GraphExpr, GraphFormat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = "star(2)+cycle(6)".parse::<GraphExpr>()?.build()?;
    let g6 = g.to_graph6()?;
    println!("graph6: {g6}");
    println!("digest: {}", g.digest());
    let edges = g.to_edge_list();
    print!("{edges}");
    let back = parse_graph(edges.as_bytes(), GraphFormat::EdgeList)?;
    assert_eq!(back, Graph::from_graph6(g6.as_bytes())?);
    println!("round trip ok");
    Ok(())
}
