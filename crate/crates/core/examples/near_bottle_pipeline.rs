//! Full pipeline on a host close to the bottle shape of C_5: divisibility,
//! approach and trim, then a vertex-level packing that is verified directly.
//!
//! ```bash
//! cargo run --example near_bottle_pipeline
//! ```

use chromapack::graph::GraphExpr;
use num_rational::Ratio;
use chromapack::oracle::verify_packing;
use chromapack::packer::{HostSpec, NearBottleOptions, Packer};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = "C_5".parse::<GraphExpr>()?.build()?;
    let packer = Packer::new(&h)?;
    let host = HostSpec::multipartite(vec![400, 396, 204]);
    let opts = NearBottleOptions {
        d: Ratio::new(1, 200),
        ..NearBottleOptions::default()
    };
    let (plan, stats) = packer.pack_near_bottle(&host, &opts)?;
    packer.verify(&plan)?;
    for line in &plan.meta.lemma_trace {
        println!("{line}");
    }
    println!("{} copies in {} placements", plan.copy_count(), plan.placements.len());
    println!("stage bounds hold: {}", stats.bounds_hold(packer.profile().ell, h.vertex_count()));

    let packing = packer.realize(&plan);
    verify_packing(&host.materialize(), &h, &packing)?;
    println!("vertex-level packing verified");
    Ok(())
}
